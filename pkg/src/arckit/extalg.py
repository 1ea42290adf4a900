"""The dg algebra hom(P_•, P_•), its cohomology Ext(⊕M(λ), ⊕M(λ)), and
the closed dimension recursion.

Conventions
-----------
A :class:`HomElement` of bidegree (k, j) collects, for each homological
degree p, a matrix of algebra elements from component p of the source
resolution to component p−k of the target resolution shifted by ⟨j⟩.
Resolutions are linear (component p sits in internal shift p), so every
entry is homogeneous of internal degree k−j.

The differential is d(f) = f∘d_target − (−1)^k d_source∘f, so degree-k
cocycles are chain maps that commute (k even) or anticommute (k odd) with
the differentials.  Composition is written left to right: (f·g)(x) =
g(f(x)), realized on entries by the surgery product.

Canonical representatives carry the labels Id, F, Ftilde, G, K, J (and
the nullhomotopic products A, B with their homotopies); their component
formulas are hard-coded for n ≤ 2.  The independent dimension oracle
``shelton_dims`` recurses on weights alone and never touches resolutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arcalg import AlgebraElement, hom_basis, idempotent, multiply
from .diagrams import Weight, bruhat_leq, length, weights_in_block
from .exact import SparseMatrix, kernel_basis, rank, solve
from .resolve import ProjectiveComplex, _ab_type, resolve_cone

__all__ = [
    "HomElement",
    "ExtClass",
    "resolution",
    "hom_differential",
    "hom_space",
    "ext_dims",
    "shelton_dims",
    "ext_basis",
    "canonical_class",
    "homotopy_element",
    "nullhomotopic_element",
    "compose",
    "decompose",
    "find_homotopy",
    "end_quiver",
    "ext_quiver",
    "hom_windows_ok",
    "identity_element",
]


@lru_cache(maxsize=None)
def resolution(lam: Weight) -> ProjectiveComplex:
    """The (cached, sign-normalized for n ≤ 2) linear resolution of M(λ)."""
    return resolve_cone(lam)


# ---------------------------------------------------------------------------
# hom elements
# ---------------------------------------------------------------------------


@dataclass
class HomElement:
    """A homogeneous element of hom^k(P_•(source), P_•(target)⟨j⟩).

    ``entries[p][(s, t)]`` is the block from summand s of component p of
    the source to summand t of component p−k of the target, an element of
    e_ν K e_ν' acting by right multiplication.
    """

    source: Weight
    target: Weight
    k: int
    j: int
    entries: dict[int, dict[tuple[int, int], AlgebraElement]] = field(
        default_factory=dict
    )

    def entry(self, p: int, s: int, t: int) -> AlgebraElement:
        return self.entries.get(p, {}).get((s, t), AlgebraElement())

    def is_zero(self) -> bool:
        return all(
            u.is_zero() for block in self.entries.values() for u in block.values()
        )

    def _clean(self) -> "HomElement":
        entries = {}
        for p, block in self.entries.items():
            kept = {key: u for key, u in block.items() if not u.is_zero()}
            if kept:
                entries[p] = kept
        return HomElement(self.source, self.target, self.k, self.j, entries)

    def __add__(self, other: "HomElement") -> "HomElement":
        if (self.source, self.target, self.k, self.j) != (
            other.source,
            other.target,
            other.k,
            other.j,
        ):
            raise ValueError("hom elements from different bigraded pieces")
        entries: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
        for term in (self, other):
            for p, block in term.entries.items():
                out = entries.setdefault(p, {})
                for key, u in block.items():
                    out[key] = out.get(key, AlgebraElement()) + u
        return HomElement(self.source, self.target, self.k, self.j, entries)._clean()

    def __rmul__(self, scalar) -> "HomElement":
        scalar = Fraction(scalar)
        entries = {
            p: {key: scalar * u for key, u in block.items()}
            for p, block in self.entries.items()
        }
        return HomElement(self.source, self.target, self.k, self.j, entries)._clean()

    def __sub__(self, other: "HomElement") -> "HomElement":
        return self + (-1) * other

    def check(self) -> None:
        """Assert every entry sits in the right graded hom piece."""
        src, tgt = resolution(self.source), resolution(self.target)
        for p, block in self.entries.items():
            q = p - self.k
            for (s, t), u in block.items():
                _, a = src.components[p][s]
                _, b = tgt.components[q][t]
                want = a - b - self.j
                for diagram, _ in u:
                    if diagram.degree != want:
                        raise AssertionError(
                            f"entry at p={p} has degree {diagram.degree}, "
                            f"expected {want}"
                        )


def zero_hom(lam: Weight, mu: Weight, k: int, j: int) -> HomElement:
    return HomElement(lam, mu, k, j, {})


def identity_element(lam: Weight) -> HomElement:
    """The identity chain map of P_•(λ)."""
    c = resolution(lam)
    entries = {
        p: {(s, s): idempotent(nu) for s, (nu, _) in enumerate(comp)}
        for p, comp in enumerate(c.components)
    }
    return HomElement(lam, lam, 0, 0, entries)


def hom_differential(f: HomElement) -> HomElement:
    """d(f) = f∘d_target − (−1)^k d_source∘f, of bidegree (k+1, j)."""
    src, tgt = resolution(f.source), resolution(f.target)
    sign = Fraction((-1) ** f.k)
    entries: dict[int, dict[tuple[int, int], AlgebraElement]] = {}

    def add(p, s, u, element):
        if element.is_zero():
            return
        block = entries.setdefault(p, {})
        block[(s, u)] = block.get((s, u), AlgebraElement()) + element

    for p, block in f.entries.items():
        q = p - f.k
        # f then the target differential d_q : C_q → C_{q-1}
        if 1 <= q < len(tgt):
            for (s, t), u in block.items():
                for (t2, u2), d_entry in tgt.differentials[q - 1].items():
                    if t2 == t:
                        add(p, s, u2, multiply(u, d_entry))
        # the source differential d_{p+1} then f
        if p + 1 < len(src):
            for (s2, s), d_entry in src.differentials[p].items():
                for (t0, t), u in block.items():
                    if t0 == s:
                        add(p + 1, s2, t, -sign * multiply(d_entry, u))
    return HomElement(f.source, f.target, f.k + 1, f.j, entries)._clean()


def compose(f, g) -> HomElement:
    """The left-to-right product f·g (apply f first), bidegrees add."""
    f = f.element if isinstance(f, ExtClass) else f
    g = g.element if isinstance(g, ExtClass) else g
    if f.target != g.source:
        raise ValueError("target of the first factor must be source of the second")
    entries: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
    for p, block in f.entries.items():
        q = p - f.k
        gblock = g.entries.get(q)
        if not gblock:
            continue
        out = entries.setdefault(p, {})
        for (s, t), u in block.items():
            for (t0, v), w in gblock.items():
                if t0 == t:
                    product = multiply(u, w)
                    if not product.is_zero():
                        out[(s, v)] = out.get((s, v), AlgebraElement()) + product
    return HomElement(f.source, g.target, f.k + g.k, f.j + g.j, entries)._clean()


# ---------------------------------------------------------------------------
# the hom complex as a vector space
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def hom_space(lam: Weight, mu: Weight, k: int) -> tuple:
    """Ordered basis of hom^k(P_•(λ), P_•(μ)): vectors (p, s, t, diagram, j)."""
    src, tgt = resolution(lam), resolution(mu)
    out = []
    for p, comp in enumerate(src.components):
        q = p - k
        if not 0 <= q < len(tgt):
            continue
        for s, (nu, a) in enumerate(comp):
            for t, (nu2, b) in enumerate(tgt.components[q]):
                for diagram in hom_basis(nu, nu2):
                    j = a - b - diagram.degree
                    out.append((p, s, t, diagram, j))
    return tuple(out)


def basis_hom_element(lam: Weight, mu: Weight, k: int, vector) -> HomElement:
    p, s, t, diagram, j = vector
    return HomElement(
        lam, mu, k, j, {p: {(s, t): AlgebraElement.from_diagram(diagram)}}
    )


def vectorize(f: HomElement, basis: tuple) -> list[Fraction]:
    index = {(p, s, t, d): i for i, (p, s, t, d, _) in enumerate(basis)}
    out = [Fraction(0)] * len(basis)
    for p, block in f.entries.items():
        for (s, t), u in block.items():
            for diagram, coeff in u:
                where = index.get((p, s, t, diagram))
                if where is None:
                    raise ValueError("element does not lie in the given hom space")
                out[where] += coeff
    return out


@lru_cache(maxsize=None)
def _differential_matrix(lam: Weight, mu: Weight, k: int) -> SparseMatrix:
    """Matrix of d: hom^k → hom^{k+1} in the canonical bases (columns are
    hom^k basis vectors)."""
    dom = hom_space(lam, mu, k)
    cod = hom_space(lam, mu, k + 1)
    entries: dict[tuple[int, int], Fraction] = {}
    for col, vector in enumerate(dom):
        image = hom_differential(basis_hom_element(lam, mu, k, vector))
        for row, coeff in enumerate(vectorize(image, cod)):
            if coeff:
                entries[(row, col)] = coeff
    return SparseMatrix(len(cod), len(dom), entries)


def _k_range(lam: Weight, mu: Weight) -> range:
    return range(-(len(resolution(mu)) - 1), len(resolution(lam)))


def ext_dims(lam: Weight, mu: Weight, bigraded: bool = False) -> dict:
    """Exact cohomology dimensions of hom(P_•(λ), P_•(μ)) by rank counts.

    Returns {k: dim} (or {(k, j): dim} when ``bigraded``), zeros omitted.
    """
    if lam.block != mu.block:
        raise ValueError("weights from different blocks")
    out: dict = {}
    for k in _k_range(lam, mu):
        space = hom_space(lam, mu, k)
        if not space:
            continue
        r_k = rank(_differential_matrix(lam, mu, k))
        r_prev = rank(_differential_matrix(lam, mu, k - 1))
        total = len(space) - r_k - r_prev
        if not total:
            continue
        if not bigraded:
            out[k] = total
            continue
        # the differential preserves j, so split the count per shift
        for j in sorted({v[4] for v in space}):
            sub = [v for v in space if v[4] == j]
            rj = rank(_restrict_matrix(lam, mu, k, j))
            rj_prev = rank(_restrict_matrix(lam, mu, k - 1, j))
            d = len(sub) - rj - rj_prev
            if d:
                out[(k, j)] = d
    return out


def _restrict_matrix(lam: Weight, mu: Weight, k: int, j: int) -> SparseMatrix:
    dom = hom_space(lam, mu, k)
    cod = hom_space(lam, mu, k + 1)
    cols = [i for i, v in enumerate(dom) if v[4] == j]
    rows = [i for i, v in enumerate(cod) if v[4] == j]
    full = _differential_matrix(lam, mu, k)
    entries = {}
    for rr, row in enumerate(rows):
        for cc, col in enumerate(cols):
            value = full[row, col]
            if value:
                entries[(rr, cc)] = value
    return SparseMatrix(len(rows), len(cols), entries)


# ---------------------------------------------------------------------------
# the closed dimension recursion
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _shelton(lam: Weight, mu: Weight, k: int, index: int | None) -> int:
    """E^k(λ, μ), by the recursion on a 'v^' pair of λ.

    ``index`` overrides the canonical choice (the smallest admissible
    position); the result is independent of it.
    """
    if lam == mu:
        return 1 if k == 0 else 0
    if not bruhat_leq(lam, mu):
        return 0
    if k < 0 or k > length(lam) - length(mu):
        return 0
    candidates = [i for i in range(lam.size - 1) if lam.has_down_up_at(i)]
    i = candidates[0] if index is None else index
    if i not in candidates:
        raise ValueError(f"λ has no 'v^' pair at position {i}")
    ls = lam.swap(i)
    if mu.has_down_up_at(i):
        return _shelton(ls, mu.swap(i), k, None)
    if mu[i] == mu[i + 1]:
        return _shelton(ls, mu, k - 1, None)
    # μ carries '^v' at (i, i+1)
    ms = mu.swap(i)
    if bruhat_leq(ls, ms) and ls != ms:
        return (
            _shelton(ls, mu, k - 1, None)
            - _shelton(ls, mu, k + 1, None)
            + _shelton(ls, ms, k, None)
        )
    return _shelton(ls, mu, k - 1, None) + _shelton(ls, mu, k, None)


def shelton_dims(lam: Weight, mu: Weight, index: int | None = None) -> dict[int, int]:
    """dim Ext^k(M(λ), M(μ)) for all k, by the weight recursion alone."""
    if lam.block != mu.block:
        raise ValueError("weights from different blocks")
    out = {}
    for k in range(0, length(lam) - length(mu) + 1):
        value = _shelton(lam, mu, k, index)
        if value < 0:
            raise AssertionError("dimension recursion produced a negative count")
        if value:
            out[k] = value
    return out


# ---------------------------------------------------------------------------
# canonical representatives
# ---------------------------------------------------------------------------


@dataclass
class ExtClass:
    """A labelled cohomology class with its canonical cocycle representative."""

    label: str
    source: Weight
    target: Weight
    element: HomElement

    @property
    def k(self) -> int:
        return self.element.k

    @property
    def j(self) -> int:
        return self.element.j


def _canonical_entry(nu: Weight, nu2: Weight, degree: int) -> AlgebraElement:
    """The canonical degree-d element of e_ν K e_ν'.

    Degree 0 demands ν = ν' (the idempotent).  Between distinct weights
    every graded piece is at most one-dimensional, so the basis diagram of
    the requested degree is unique; equal weights in positive degree are
    resolved as a composition through the neighbour (s|s−1).
    """
    if degree == 0:
        if nu != nu2:
            raise AssertionError("degree-0 entries exist only between equal weights")
        return idempotent(nu)
    if nu == nu2:
        if degree != 2:
            raise AssertionError("equal-weight entries only occur in degree 0 or 2")
        s, t = nu.to_kl()
        if t != s - 2:
            raise AssertionError("the composed loop is only used at (s|s-2)")
        mid = Weight.from_kl(nu.block[0], s, s - 1)
        return multiply(
            _canonical_entry(nu, mid, 1), _canonical_entry(mid, nu, 1)
        )
    found = [d for d in hom_basis(nu, nu2) if d.degree == degree]
    if len(found) > 1:
        raise AssertionError(
            f"expected at most one degree-{degree} diagram from {nu} to {nu2}, "
            f"found {len(found)}"
        )
    if not found:
        return AlgebraElement()
    return AlgebraElement.from_diagram(found[0])


def _build_by_rules(lam: Weight, mu: Weight, k: int, j: int, rules) -> HomElement:
    """Assemble a hom element from per-summand component rules.

    ``rules(S, T, typ)`` yields (S2, T2, typ2, sign_exponent) targets in
    the (s|t)/type coordinates of the two resolutions; components whose
    target summand does not occur are genuinely zero and are skipped.
    """
    src, tgt = resolution(lam), resolution(mu)
    m = lam.block[0]
    degree = k - j
    entries: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
    for p, comp in enumerate(src.components):
        q = p - k
        if not 0 <= q < len(tgt):
            continue
        index = {}
        for t, (nu2, _) in enumerate(tgt.components[q]):
            index[(nu2.to_kl(), _ab_type(mu, nu2, q))] = t
        block: dict[tuple[int, int], AlgebraElement] = {}
        for s, (nu, _) in enumerate(comp):
            S, T = nu.to_kl()
            typ = _ab_type(lam, nu, p)
            for S2, T2, typ2, exponent in rules(S, T, typ):
                if not 0 <= T2 < S2:
                    continue
                t = index.get(((S2, T2), typ2))
                if t is None:
                    continue
                nu2 = tgt.components[q][t][0]
                value = Fraction((-1) ** exponent) * _canonical_entry(
                    nu, nu2, degree
                )
                block[(s, t)] = block.get((s, t), AlgebraElement()) + value
        if block:
            entries[p] = block
    return HomElement(lam, mu, k, j, entries)._clean()


def _build_n1(lam: Weight, mu: Weight, label: str) -> HomElement:
    """The n=1 canonical elements on the line resolutions."""
    jj, ll = lam.to_j(), mu.to_j()
    src, tgt = resolution(lam), resolution(mu)
    if label == "Id":
        k = j = jj - ll
        drop = 0
    elif label == "F":
        k, j = jj - ll - 1, jj - ll - 2
        drop = 1
    else:
        raise ValueError(f"unknown n=1 label {label!r}")
    entries = {}
    for p, comp in enumerate(src.components):
        q = p - k
        if not 0 <= q < len(tgt):
            continue
        nu = comp[0][0]
        nu2 = tgt.components[q][0][0]
        if nu2.to_j() != nu.to_j() - drop:
            continue
        entries[p] = {(0, 0): _canonical_entry(nu, nu2, drop)}
    return HomElement(lam, mu, k, j, entries)._clean()


def _sigma(lam: Weight, mu: Weight) -> int:
    return sum(lam.to_kl()) - sum(mu.to_kl())


def _n2_rules(label: str, lam: Weight, mu: Weight):
    """Component formulas of the n=2 elements, in (s|t)/type coordinates."""
    N, M = lam.to_kl()
    K, L = mu.to_kl()

    def rules_id(S, T, typ):
        if typ == "A":
            yield S, T, "A", (N + K) * (L + T)
        else:
            yield S, T, "B", (N + K) * (L + S)

    def rules_a(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield S, T - 2, "A", (N + K) * (L + T)
            if S == T + 2:
                yield S - 1, T - 1, "A", (N + K) * (L + T) + K + T
        else:
            if S == T + 3:
                yield S - 1, S - 2, "A", (N + K) * (L + S)
            if S == T + 2:
                yield S - 1, S - 3, "B", (N + K) * (L + S) + K + S + 1
                yield S, S - 2, "A", (N + K) * (L + S)

    def rules_b(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield S - 1, T - 2, "A", (N + K + 1) * (L + T)
        else:
            if S == T + 2:
                yield S - 1, S - 2, "A", (N + K + 1) * (L + S)

    def rules_hf(S, T, typ):
        if typ == "B":
            yield S, T, "A", (S + T) * (K + S) + (N + K + 1) * (L + S + 1) + N + M + 1

    def rules_hj(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield T, T - 2, "A", (N + K) * (L + T + 1)
        else:
            yield S, T - 1, "A", (N + K) * (L + T) + (S + T + 1) * (N + S)

    def rules_ha(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield T, T - 2, "A", (N + K) * (L + T + 1) + N + L + 1
        else:
            if S == T + 2:
                yield S - 1, S - 2, "A", (N + K) * (L + S - 2) + K + L

    def rules_hb(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield S - 2, S - 3, "A", (N + K + 1) * (L + S) + N + L + 1

    table = {
        "Id": rules_id,
        "A": rules_a,
        "B": rules_b,
        "H(F-Ftilde)": rules_hf,
        "H(J)": rules_hj,
        "H(A)": rules_ha,
        "H(B)": rules_hb,
    }
    return table[label]


def _special_rules(label: str, lam: Weight):
    """Component formulas of the one-step generators: F drops the inner
    label by one, F̃ the outer, and G, K run from (m+1|m) to (m−1|m−2)."""
    n, m_ = lam.to_kl()

    def rules_f(S, T, typ):
        if typ == "A":
            yield S, T - 1, "A", 0
            if S == T + 2:
                yield S - 1, T, "A", n + T
            if S == T + 1:
                yield T, T - 2, "B", n + T
        else:
            yield S - 1, T, "B", 0
            if S == T + 2:
                yield S, S - 1, "A", 0

    def rules_ftilde(S, T, typ):
        if typ == "A":
            yield S - 1, T, "A", 0
            if S == T + 1:
                yield T, T - 2, "B", 0
        else:
            yield S, T - 1, "B", 0

    def rules_g(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield S - 1, S - 3, "A", 1
        else:
            if S < m_:
                yield S - 1, T, "A", (m_ + T) * (m_ + S + 1) + S + T
                yield S, T - 1, "A", (m_ + T) * (m_ + S) + S + T
            elif S == m_:
                yield m_ - 1, T, "A", 0

    def rules_k(S, T, typ):
        if typ == "A":
            if S == T + 1:
                yield S - 2, S - 3, "A", m_ + S + 1
        else:
            yield S - 1, T - 1, "A", (m_ + S) * (m_ + T + 1)

    return {"F": rules_f, "Ftilde": rules_ftilde, "G": rules_g, "K": rules_k}[label]


def _special(label: str, lam: Weight, mu: Weight) -> HomElement:
    dk, dj = _N2_BIGRADE[label]
    sigma = _sigma(lam, mu)
    return _build_by_rules(lam, mu, sigma + dk, sigma + dj, _special_rules(label, lam))


_N2_BIGRADE = {
    # label -> (k − Σ, j − Σ)
    "Id": (0, 0),
    "F": (-1, -2),
    "Ftilde": (-1, -2),
    "G": (-3, -4),
    "K": (-4, -6),
    "J": (-2, -4),
    "A": (-2, -4),
    "B": (-3, -6),
    "H(F-Ftilde)": (-2, -2),
    "H(J)": (-3, -4),
    "H(A)": (-3, -4),
    "H(B)": (-4, -6),
}


def construct_element(label: str, lam: Weight, mu: Weight) -> HomElement:
    """The canonical hom element with the given label, built from its
    component formulas (n ≤ 2)."""
    if lam.block != mu.block:
        raise ValueError("weights from different blocks")
    n = lam.n
    if n == 1:
        return _build_n1(lam, mu, label)
    if n != 2:
        raise ValueError("labelled elements exist only for n ≤ 2")
    m = lam.block[0]
    K, L = mu.to_kl()
    if label == "H(F-Ftilde)" and lam.to_kl() != (K + 1, K):
        # reduce to the one-step homotopy through (k+1|k); the sign makes
        # d(H) = F - (-1)^(n+l) Ftilde come out right after the Id-composite
        N, M = lam.to_kl()
        mid = Weight.from_kl(m, K + 1, K)
        e = (N + K + 1) * (K + L + 1)
        return (-1) ** e * compose(
            construct_element("Id", lam, mid),
            construct_element("H(F-Ftilde)", mid, mu),
        )
    if label == "F":
        mid = Weight.from_kl(m, K, L + 1)
        return compose(construct_element("Id", lam, mid), _special("F", mid, mu))
    if label == "Ftilde":
        mid = Weight.from_kl(m, K + 1, L)
        return compose(
            construct_element("Id", lam, mid), _special("Ftilde", mid, mu)
        )
    if label in ("G", "K"):
        top = Weight.from_kl(m, K + 2, K + 1)
        bottom = Weight.from_kl(m, K, K - 1)
        step = compose(construct_element("Id", lam, top), _special(label, top, bottom))
        return compose(step, construct_element("Id", bottom, mu))
    if label == "J":
        mid = Weight.from_kl(m, K + 1, L)
        return compose(
            construct_element("F", lam, mid), construct_element("Ftilde", mid, mu)
        )
    if label == "B":
        mid = Weight.from_kl(m, K + 1, L)
        return compose(
            construct_element("A", lam, mid), construct_element("Ftilde", mid, mu)
        )
    dk, dj = _N2_BIGRADE[label]
    sigma = _sigma(lam, mu)
    return _build_by_rules(lam, mu, sigma + dk, sigma + dj, _n2_rules(label, lam, mu))


def canonical_class(label: str, lam: Weight, mu: Weight) -> ExtClass:
    element = construct_element(label, lam, mu)
    if lam.n == 2:
        _assert_window(element)
    return ExtClass(label, lam, mu, element)


def homotopy_element(label: str, lam: Weight, mu: Weight) -> HomElement:
    """The explicit homotopies H(F−F̃), H(J), H(A), H(B) (n = 2)."""
    if label not in {"H(F-Ftilde)", "H(J)", "H(A)", "H(B)"}:
        raise ValueError(f"unknown homotopy label {label!r}")
    return construct_element(label, lam, mu)


def nullhomotopic_element(label: str, lam: Weight, mu: Weight) -> HomElement:
    """The nullhomotopic product families A and B (n = 2)."""
    if label not in {"A", "B"}:
        raise ValueError(f"unknown nullhomotopic label {label!r}")
    return construct_element(label, lam, mu)


def _assert_window(f: HomElement) -> None:
    """Bigrade window for nonzero degree-0 chain maps between linear n=2
    resolutions: k−j ∈ {0,…,4} with k ≥ σ − w(k−j), w = (2,3,4,3,2)."""
    if f.is_zero():
        return
    sigma = _sigma(f.source, f.target)
    gap = f.k - f.j
    widths = {0: 2, 1: 3, 2: 4, 3: 3, 4: 2}
    if gap not in widths or f.k < sigma - widths[gap]:
        raise AssertionError(
            f"bigrade (k={f.k}, j={f.j}) falls outside the admissible window"
        )


def hom_windows_ok(lam: Weight, mu: Weight) -> bool:
    """Every nonzero graded piece of hom(P_•(λ), P_•(μ)) sits in one of
    the five admissible (k, j) windows (n = 2)."""
    sigma = _sigma(lam, mu)
    widths = {0: 2, 1: 3, 2: 4, 3: 3, 4: 2}
    for k in _k_range(lam, mu):
        for _, _, _, _, j in hom_space(lam, mu, k):
            gap = k - j
            if gap not in widths or k < sigma - widths[gap]:
                return False
    return True


# ---------------------------------------------------------------------------
# bases of the Ext spaces
# ---------------------------------------------------------------------------


def _n2_candidate_labels(lam: Weight, mu: Weight) -> list[str]:
    N, M = lam.to_kl()
    K, L = mu.to_kl()
    out = []
    if K <= N and L <= M:
        out.append("Id")
    f_ok = L < M and K <= N and L + 1 < K
    ftilde_ok = L <= M and K < N
    if f_ok:
        out.append("F")
    if ftilde_ok and (M < K or not f_ok):
        out.append("Ftilde")
    if M < K and K < N and L < M:
        out.append("J")
    if K < M:
        out.append("G")
        out.append("K")
    return out


def ext_basis(lam: Weight, mu: Weight, method: str = "auto") -> list[ExtClass]:
    """A basis of Ext(M(λ), M(μ)) by cocycle representatives.

    For n ≤ 2 (and method != "generic") the labelled canonical elements
    are used and verified: each must be a cocycle, jointly independent
    modulo coboundaries, and their count per degree must equal the closed
    dimension recursion — any mismatch is a hard failure.
    """
    if lam.block != mu.block:
        raise ValueError("weights from different blocks")
    n = lam.n
    expected = shelton_dims(lam, mu)
    if method == "generic" or (method == "auto" and n > 2):
        classes = _generic_basis(lam, mu)
    else:
        classes = _labelled_basis(lam, mu)
    got: dict[int, int] = {}
    for c in classes:
        got[c.k] = got.get(c.k, 0) + 1
    if got != expected:
        raise ArithmeticError(
            f"basis dimensions {got} disagree with the recursion {expected} "
            f"for ({lam}, {mu})"
        )
    return classes


def _labelled_basis(lam: Weight, mu: Weight) -> list[ExtClass]:
    if not bruhat_leq(lam, mu):
        return []
    if lam == mu:
        return [ExtClass("Id", lam, mu, identity_element(lam))]
    if lam.n == 1:
        jj, ll = lam.to_j(), mu.to_j()
        labels = ["F", "Id"] if jj > ll else ["Id"]
        classes = [canonical_class(label, lam, mu) for label in labels]
    else:
        classes = [
            canonical_class(label, lam, mu)
            for label in _n2_candidate_labels(lam, mu)
        ]
    classes = [c for c in classes if not c.element.is_zero()]
    for c in classes:
        if not hom_differential(c.element).is_zero():
            raise ArithmeticError(f"canonical {c.label} representative is not a cocycle")
    _assert_independent(lam, mu, classes)
    return sorted(classes, key=lambda c: (c.k, c.label))


def _assert_independent(lam: Weight, mu: Weight, classes: list[ExtClass]) -> None:
    by_k: dict[int, list[ExtClass]] = {}
    for c in classes:
        by_k.setdefault(c.k, []).append(c)
    for k, group in by_k.items():
        space = hom_space(lam, mu, k)
        boundary = _differential_matrix(lam, mu, k - 1)
        columns = [
            [boundary[r, c] for r in range(boundary.rows)]
            for c in range(boundary.cols)
        ]
        base_rank = rank(_from_columns(columns, len(space)))
        vectors = columns + [vectorize(c.element, space) for c in group]
        total = rank(_from_columns(vectors, len(space)))
        if total != base_rank + len(group):
            raise ArithmeticError(
                f"canonical degree-{k} representatives are dependent modulo "
                f"coboundaries for ({lam}, {mu})"
            )


def _from_columns(columns: list[list[Fraction]], rows: int) -> SparseMatrix:
    entries = {}
    for c, column in enumerate(columns):
        for r, value in enumerate(column):
            if value:
                entries[(r, c)] = value
    return SparseMatrix(rows, len(columns), entries)


def _generic_basis(lam: Weight, mu: Weight) -> list[ExtClass]:
    """Echelon-canonical cocycle representatives, deterministic in the
    fixed hom-space basis order."""
    out = []
    for k in _k_range(lam, mu):
        space = hom_space(lam, mu, k)
        if not space:
            continue
        d = _differential_matrix(lam, mu, k)
        prev = _differential_matrix(lam, mu, k - 1)
        kernel = _kernel_columns(d)
        chosen: list[list[Fraction]] = [
            [prev[r, c] for r in range(prev.rows)] for c in range(prev.cols)
        ]
        current = rank(_from_columns(chosen, len(space)))
        for vec in kernel:
            trial = rank(_from_columns(chosen + [vec], len(space)))
            if trial > current:
                chosen.append(vec)
                current = trial
                total = None
                for i, coeff in enumerate(vec):
                    if coeff:
                        term = coeff * basis_hom_element(lam, mu, k, space[i])
                        total = term if total is None else total + term
                out.append(ExtClass("generic", lam, mu, total))
    return out


def _kernel_columns(matrix: SparseMatrix) -> list[list[Fraction]]:
    return kernel_basis(matrix)


# ---------------------------------------------------------------------------
# homotopies and decomposition
# ---------------------------------------------------------------------------


def find_homotopy(f: HomElement) -> HomElement | None:
    """H with d(H) = f, by a deterministic solve, or None if f is not a
    coboundary.  f = 0 yields the zero homotopy."""
    if f.is_zero():
        return zero_hom(f.source, f.target, f.k - 1, f.j)
    lam, mu, k = f.source, f.target, f.k
    space = hom_space(lam, mu, k)
    dom = hom_space(lam, mu, k - 1)
    matrix = _differential_matrix(lam, mu, k - 1)
    target = vectorize(f, space)
    solution = solve(matrix, target)
    if solution is None:
        return None
    result = zero_hom(lam, mu, k - 1, f.j)
    for i, coeff in enumerate(solution):
        if coeff:
            result = result + coeff * basis_hom_element(lam, mu, k - 1, dom[i])
    return result


def decompose(f: HomElement, classes: list[ExtClass] | None = None):
    """Write the cocycle f as Σ cᵢ·bᵢ + d(H) over the basis classes.

    Returns (coefficients keyed by class label with bigrade, H).  Raises
    if f is not a cocycle in the span.
    """
    lam, mu, k = f.source, f.target, f.k
    if classes is None:
        classes = [c for c in ext_basis(lam, mu) if c.k == k]
    else:
        classes = [c for c in classes if c.k == k]
    space = hom_space(lam, mu, k)
    dom = hom_space(lam, mu, k - 1)
    boundary = _differential_matrix(lam, mu, k - 1)
    columns = [vectorize(c.element, space) for c in classes]
    columns += [
        [boundary[r, c] for r in range(boundary.rows)] for c in range(boundary.cols)
    ]
    matrix = _from_columns(columns, len(space))
    solution = solve(matrix, vectorize(f, space))
    if solution is None:
        raise ArithmeticError("element does not decompose over the basis")
    coeffs = {
        (c.label, c.k, c.j): solution[i]
        for i, c in enumerate(classes)
        if solution[i]
    }
    witness = zero_hom(lam, mu, k - 1, f.j)
    for i, coeff in enumerate(solution[len(classes):]):
        if coeff:
            witness = witness + coeff * basis_hom_element(lam, mu, k - 1, dom[i])
    return coeffs, witness


# ---------------------------------------------------------------------------
# quivers
# ---------------------------------------------------------------------------


def end_quiver(m: int, n: int) -> dict:
    """Quiver with relations of the basic algebra K_m^n itself.

    Arrows are the degree-1 basis diagrams of e_λ K e_μ (at most one per
    ordered pair); relations are the kernel vectors of the multiplication
    from paths of length two into degree 2.
    """
    vertices = weights_in_block(m, n)
    arrows = []
    for lam in vertices:
        for mu in vertices:
            if lam == mu:
                continue
            degree_one = [d for d in hom_basis(lam, mu) if d.degree == 1]
            if len(degree_one) > 1:
                raise AssertionError("more than one degree-1 arrow between weights")
            if degree_one:
                arrows.append((lam, mu))
    arrow_set = set(arrows)
    relations = []
    for lam in vertices:
        for mu in vertices:
            paths = [
                (lam, nu, mu)
                for (a, nu) in arrows
                if a == lam and (nu, mu) in arrow_set
            ]
            if not paths:
                continue
            degree_two = sorted(
                (d for d in hom_basis(lam, mu) if d.degree == 2), key=str
            )
            index = {d: i for i, d in enumerate(degree_two)}
            entries: dict[tuple[int, int], Fraction] = {}
            for col, (_, nu, _) in enumerate(paths):
                product = multiply(
                    _canonical_entry(lam, nu, 1), _canonical_entry(nu, mu, 1)
                )
                for diagram, coeff in product:
                    if diagram.degree == 2:
                        entries[(index[diagram], col)] = (
                            entries.get((index[diagram], col), Fraction(0)) + coeff
                        )
            matrix = SparseMatrix(len(degree_two), len(paths), entries)
            for vec in kernel_basis(matrix):
                relations.append(
                    [(coeff, paths[i]) for i, coeff in enumerate(vec) if coeff]
                )
    return {"vertices": vertices, "arrows": arrows, "relations": relations}


def ext_quiver(m: int, n: int) -> dict:
    """Quiver presentation of Ext(⊕M(λ), ⊕M(λ)).

    Generators are the basis classes that never appear in the span of
    products of two non-identity classes; relations record, for every
    composable pair of generators, the decomposition of their product
    over the basis (empty coefficients = a zero relation).
    """
    vertices = weights_in_block(m, n)
    bases: dict[tuple[Weight, Weight], list[ExtClass]] = {}
    for lam in vertices:
        for mu in vertices:
            bases[(lam, mu)] = [] if lam == mu else ext_basis(lam, mu)
    spanned: dict[tuple[Weight, Weight], set] = {}
    for (lam, nu), first in bases.items():
        for (nu2, mu), second in bases.items():
            if nu2 != nu or not first or not second:
                continue
            for f in first:
                for g in second:
                    coeffs, _ = decompose(compose(f, g), bases[(lam, mu)])
                    spanned.setdefault((lam, mu), set()).update(coeffs)
    generators = [
        c
        for pair, classes in bases.items()
        for c in classes
        if (c.label, c.k, c.j) not in spanned.get(pair, set())
    ]
    relations = []
    for f in generators:
        for g in generators:
            if f.target != g.source:
                continue
            coeffs, _ = decompose(
                compose(f, g), bases[(f.source, g.target)]
            )
            relations.append(
                (
                    (f.label, f.source, f.target),
                    (g.label, g.source, g.target),
                    coeffs,
                )
            )
    return {
        "vertices": vertices,
        "generators": [
            (c.label, c.source, c.target, c.k, c.j) for c in generators
        ],
        "relations": relations,
    }
