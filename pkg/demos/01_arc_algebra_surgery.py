"""A guided tour of the arc algebra: weights, basis diagrams, and the
surgery product, ending with a panel-by-panel trace of one multiplication.

Run with:  python3 demos/01_arc_algebra_surgery.py
"""

from arckit import (
    AlgebraElement,
    OrientedCircleDiagram,
    Weight,
    basis,
    idempotent,
    multiply,
    surgery_trace,
    weights_in_block,
)

M, N = 2, 1

print(f"=== The block ({M}|{N}): weights and basis diagrams ===\n")
ws = weights_in_block(M, N)
print(f"Weights ({len(ws)} of them, {N} '^' and {M} 'v' each):")
print("  " + "  ".join(str(w) for w in ws))

diagrams = basis(M, N)
print(f"\nThe arc algebra has dimension {len(diagrams)}; its basis consists of")
print("oriented circle diagrams (cup diagram | weight | cap diagram):")
for d in diagrams:
    print(f"  {d}   (degree {d.degree})")

print("\n=== Idempotents and a product ===\n")
lam = ws[0]
e = idempotent(lam)
print(f"The idempotent at {lam}: {e}")
print(f"e * e == e: {multiply(e, e) == e}")

x = AlgebraElement.from_diagram(diagrams[2])
y = AlgebraElement.from_diagram(diagrams[1])
print(f"\nx = {x}")
print(f"y = {y}")
print(f"x * y = {multiply(x, y)}   (the two degree-1 arcs close a circle)")
print(f"y * x = {multiply(y, x)}   (this order kills the product)")

print("\n=== A surgery trace on the (3|2) block ===\n")
x = OrientedCircleDiagram.parse(
    "cups=(0,3);(1,2) rays=4 | vv^^v | cups=(1,2);(3,4) rays=0"
)
y = OrientedCircleDiagram.parse(
    "cups=(1,2);(3,4) rays=0 | vv^^v | cups=(0,3);(1,2) rays=4"
)
print(f"x = {x}")
print(f"y = {y}")
panels = surgery_trace(x, y)
print(f"\nThe product is computed in {len(panels) - 1} steps:")
for i, panel in enumerate(panels):
    note = panel.annotation or "initial stack"
    print(f"  panel {i}: {note}")
    print(f"    bottom weight: {''.join(panel.bottom_labels)}")
    print(f"    circles/lines: {panel.component_types}")

print("\nThe same trace renders to SVG via the command line:")
print("  arckit render -m 3 -n 2 --product '<x>' '<y>' -o trace.svg")
