"""Independent oracles used by the tests.

``hom_cohomology`` computes the cohomology dimensions of the hom complex
between two explicit projective complexes directly with sparse linear
algebra, without going through the Ext-algebra machinery, so it can serve
as a cross-check for resolutions produced by either construction.
"""

from fractions import Fraction

from arckit import SparseMatrix, rank
from arckit.arcalg import AlgebraElement, hom_basis, multiply


def _hom_space(C, D, k):
    out = []
    for p, comp in enumerate(C.components):
        q = p - k
        if not 0 <= q < len(D.components):
            continue
        for s, (nu, _) in enumerate(comp):
            for t, (nu2, _) in enumerate(D.components[q]):
                for diagram in hom_basis(nu, nu2):
                    out.append((p, s, t, diagram))
    return out


def _dmatrix(C, D, k, dom, cod):
    index = {v: i for i, v in enumerate(cod)}
    entries: dict[tuple[int, int], Fraction] = {}

    def add(row, col, value):
        entries[(row, col)] = entries.get((row, col), Fraction(0)) + value

    for col, (p, s, t, diagram) in enumerate(dom):
        u = AlgebraElement.from_diagram(diagram)
        q = p - k
        if 1 <= q < len(D.components):
            for (t2, u2), d_entry in D.differentials[q - 1].items():
                if t2 == t:
                    for dgm, c in multiply(u, d_entry):
                        add(index[(p, s, u2, dgm)], col, c)
        if p + 1 < len(C.components):
            sign = Fraction((-1) ** (k + 1))
            for (s2, s0), d_entry in C.differentials[p].items():
                if s0 == s:
                    for dgm, c in multiply(d_entry, u):
                        add(index[(p + 1, s2, t, dgm)], col, sign * c)
    entries = {key: v for key, v in entries.items() if v}
    return SparseMatrix(len(cod), len(dom), entries)


def hom_cohomology(C, D) -> dict[int, int]:
    """{k: dim H^k(hom(C, D))} with zero entries omitted."""
    kmin = -(len(D.components) - 1)
    kmax = len(C.components) - 1
    spaces = {k: _hom_space(C, D, k) for k in range(kmin - 1, kmax + 2)}
    dims = {}
    for k in range(kmin, kmax + 1):
        d_k = _dmatrix(C, D, k, spaces[k], spaces[k + 1])
        d_prev = _dmatrix(C, D, k - 1, spaces[k - 1], spaces[k])
        h = (len(spaces[k]) - rank(d_k)) - rank(d_prev)
        if h:
            dims[k] = h
    return dims
