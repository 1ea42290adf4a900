"""Exact arithmetic and sparse linear algebra over Q.

Everything downstream (surgery products, resolutions, Ext computations)
reduces to exact rational linear algebra, so this module fixes once and for
all the deterministic conventions used everywhere:

* coefficients are ``fractions.Fraction`` (arbitrary precision, always
  reduced, positive denominator);
* Gaussian elimination scans columns left to right and rows top to bottom,
  so the pivot order is the input order;
* when a solve has free variables they are set to 0, and kernel bases are
  the standard "one free variable = 1" vectors of the reduced echelon form.

These conventions make every derived artifact (cached resolutions, chosen
cocycle representatives, homotopies) reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = ["Rational", "QPoly", "SparseMatrix", "rank", "kernel_basis", "solve"]

#: The coefficient field.  All structure constants in scope are integers, so
#: Q gives the same dimensions as C while staying exact.
Rational = Fraction


class QPoly:
    """A polynomial in q with integer coefficients and exponents >= 0.

    Stored sparsely as ``{exponent: coefficient}`` with no zero
    coefficients.  Supports ring arithmetic, evaluation, and a canonical
    string form like ``q^4 + q^2``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if coeffs:
            for e, c in coeffs.items():
                if c == 0:
                    continue
                if e < 0:
                    raise ValueError(f"negative exponent {e} not supported")
                clean[int(e)] = clean.get(int(e), 0) + int(c)
                if clean[int(e)] == 0:
                    del clean[int(e)]
        self._coeffs = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "QPoly":
        return QPoly()

    @staticmethod
    def one() -> "QPoly":
        return QPoly({0: 1})

    @staticmethod
    def q_power(e: int, coeff: int = 1) -> "QPoly":
        return QPoly({e: coeff})

    # -- inspection ----------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coeff(self, e: int) -> int:
        return self._coeffs.get(e, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        """Largest exponent with nonzero coefficient (-1 for the zero poly)."""
        return max(self._coeffs) if self._coeffs else -1

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def __call__(self, value: int = 1) -> int:
        return sum(c * value**e for e, c in self._coeffs.items())

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "QPoly") -> "QPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return QPoly(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) - c
        return QPoly(out)

    def __mul__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            return QPoly({e: c * other for e, c in self._coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def __neg__(self) -> "QPoly":
        return self * -1

    def shift(self, e: int) -> "QPoly":
        """Multiply by q^e (e may be negative if no exponent drops below 0)."""
        return QPoly({k + e: c for k, c in self._coeffs.items()})

    # -- equality / hashing / display -----------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly({0: other})
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"QPoly({self._coeffs!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                base = "q" if e == 1 else f"q^{e}"
                term = base if abs(c) == 1 else f"{abs(c)}*{base}"
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class SparseMatrix:
    """An immutable sparse matrix over Q.

    ``entries`` maps ``(row, col)`` to a nonzero Fraction.  Rows and
    columns are 0-indexed.
    """

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of range")
            v = Fraction(v)
            if v != 0:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_rows(rows: Sequence[Sequence[Fraction | int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {
            (i, j): Fraction(v)
            for i, row in enumerate(rows)
            for j, v in enumerate(row)
            if v != 0
        }
        return SparseMatrix(nrows, ncols, entries)

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, {(i, i): Fraction(1) for i in range(n)})

    @staticmethod
    def zeros(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix(rows, cols, {})

    # -- access --------------------------------------------------------
    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SparseMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (other * -1)

    def __mul__(self, scalar: Fraction | int) -> "SparseMatrix":
        return SparseMatrix(
            self.rows, self.cols, {k: v * scalar for k, v in self.entries.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[Fraction | int]) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * Fraction(vec[c])
        return out


def _rref(
    matrix: SparseMatrix,
) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (dense) with the deterministic pivot rule.

    Returns the RREF rows and the list of pivot column indices, in order.
    Columns are scanned left to right; within a column the first row (top
    to bottom) with a nonzero entry is the pivot row.
    """
    m = matrix.dense()
    nrows, ncols = matrix.rows, matrix.cols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        sel = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over Q."""
    _, pivots = _rref(matrix)
    return len(pivots)


def kernel_basis(matrix: SparseMatrix) -> list[list[Fraction]]:
    """Deterministic basis of the null space.

    One vector per free column, in increasing column order: the free
    variable is set to 1, other free variables to 0, pivot variables
    back-substituted from the RREF.
    """
    m, pivots = _rref(matrix)
    pivot_set = set(pivots)
    free_cols = [c for c in range(matrix.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * matrix.cols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def solve(
    matrix: SparseMatrix, rhs: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """One solution of ``matrix @ x = rhs`` or None if inconsistent.

    Deterministic: free variables are set to 0, so the answer is the
    echelon-canonical solution.
    """
    if len(rhs) != matrix.rows:
        raise ValueError("rhs length does not match row count")
    aug = SparseMatrix(
        matrix.rows,
        matrix.cols + 1,
        {
            **{k: v for k, v in matrix.entries.items()},
            **{
                (r, matrix.cols): Fraction(v)
                for r, v in enumerate(rhs)
                if v != 0
            },
        },
    )
    m, pivots = _rref(aug)
    if matrix.cols in pivots:
        return None  # a pivot in the rhs column means 0 = 1 somewhere
    x = [Fraction(0)] * matrix.cols
    for i, pc in enumerate(pivots):
        x[pc] = m[i][matrix.cols]
    return x
