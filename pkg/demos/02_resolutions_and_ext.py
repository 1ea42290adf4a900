"""From combinatorics to homological algebra: Kazhdan-Lusztig polynomials,
linear projective resolutions of cell modules, and Ext dimensions checked
against the Shelton recursion.

Run with:  python3 demos/02_resolutions_and_ext.py
"""

from arckit import (
    Weight,
    ext_dims,
    kl_poly_closed,
    kl_poly_recursive,
    resolve_cone,
    resolve_generic,
    shelton_dims,
    verify_resolution,
    weights_in_block,
)

print("=== The worked Kazhdan-Lusztig example ===\n")
lam = Weight.parse("vvvv^^")
mu = Weight.parse("v^vv^v")
print(f"lambda = {lam}, mu = {mu}  (block (4|2))")
print(f"closed definition:    p = {kl_poly_closed(lam, mu)}")
print(f"recursive definition: p = {kl_poly_recursive(lam, mu)}")

print("\n=== Linear projective resolutions ===\n")
lam = Weight.parse("vv^^")
c = resolve_cone(lam)
print(f"Resolution of the cell module M({lam}) on the (2|2) block,")
print(f"computed by the mapping-cone construction ({len(c)} terms):")
for i, comp in enumerate(c.components):
    terms = " + ".join(f"P({w})<{s}>" for w, s in comp)
    print(f"  degree {i}:  {terms}")
issues = verify_resolution(c, lam)
print(f"d^2 = 0 and exactness verified: {'yes' if not issues else issues}")

g = resolve_generic(lam)
same = all(
    sorted((str(w), s) for w, s in a) == sorted((str(w), s) for w, s in b)
    for a, b in zip(c.components, g.components)
)
print(f"The generic (Groebner-style lifting) construction gives the same")
print(f"terms in every degree: {same}")

print("\n=== Ext dimensions against the Shelton recursion ===\n")
ws = weights_in_block(2, 2)
print("dim Ext^k(M(lambda), M(mu)) for all pairs, k listed as k:dim")
header = "lambda \\ mu  " + "  ".join(f"{w}" for w in ws)
print(header)
for lam in ws:
    row = []
    for mu in ws:
        dims = ext_dims(lam, mu)
        shelton = {k: v for k, v in shelton_dims(lam, mu).items() if v}
        assert dims == shelton
        row.append(",".join(f"{k}:{v}" for k, v in sorted(dims.items())) or "-")
    print(f"{lam}         " + "  ".join(f"{cell:>4}" for cell in row))
print("\nEvery entry agrees with the Shelton recursion (asserted above).")
