"""Exact rational matrices, polynomial matrices and pencils.

`RatMatrix` holds Fraction entries; determinants run through fraction-free
Bareiss elimination on an integer model of the matrix.  `PolyMatrix` holds
`Poly` entries; its determinant is computed by evaluating at enough integer
points and interpolating, which is exact in rational arithmetic and avoids
intermediate polynomial blow-up.  A `Pencil` packages a matrix couple (A, B)
with its orientation: "sA-B" (generalized/frequency form, determinant in s)
or "A-sB" (characteristic-matrix form such as A - xI).

Indices are 0-based throughout the code; serialized documents use 1-based
indices (see `secular.io`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm as int_lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PreconditionError
from .polynomials import Poly, _lagrange

__all__ = [
    "RatMatrix",
    "PolyMatrix",
    "Pencil",
    "det_rational",
    "det_pencil",
    "minor",
    "adjugate_pencil",
    "transpose_check",
    "ADJUGATE_SIZE_CAP",
]

# Entrywise adjugates compute n^2 minors; keep that at desk scale.
ADJUGATE_SIZE_CAP = 8

Vector = tuple[Fraction, ...]


def _as_fraction_rows(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        data = _as_fraction_rows(rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise PreconditionError("ragged matrix rows")
        return cls(len(data), ncols, tuple(v for r in data for v in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        return cls.from_rows([[v] for v in values])

    # -- access --------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[float(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    # -- arithmetic ------------------------------------------------------------

    def map(self, fn: Callable[[Fraction], Fraction]) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(fn(v) for v in self.entries))

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return self.map(lambda v: c * v)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError("matrix shape mismatch in addition")
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise PreconditionError("matrix shape mismatch in product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append(
                [
                    sum((ri[k] * other.entry(k, j) for k in range(self.cols)),
                        Fraction(0))
                    for j in range(other.cols)
                ]
            )
        return RatMatrix.from_rows(out)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def apply(self, vec: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise PreconditionError("vector length mismatch")
        v = [Fraction(x) for x in vec]
        return tuple(
            sum((self.entry(i, k) * v[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    # -- elimination-based queries ----------------------------------------------

    def det(self) -> Fraction:
        return det_rational(self)

    def submatrix(self, keep_rows: Sequence[int], keep_cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[self.entry(i, j) for j in keep_cols] for i in keep_rows]
        )

    def leading_principal_minors(self) -> list[Fraction]:
        """Determinants of the leading k x k blocks, k = 1..n."""
        if not self.is_square:
            raise PreconditionError("leading minors of a non-square matrix")
        idx = list(range(self.rows))
        return [
            det_rational(self.submatrix(idx[: k + 1], idx[: k + 1]))
            for k in range(self.rows)
        ]

    def is_positive_definite(self) -> bool:
        """Sylvester criterion; matrix must be symmetric."""
        return self.is_symmetric() and all(d > 0 for d in self.leading_principal_minors())

    def rank(self) -> int:
        reduced, pivots = _rref(self.to_rows())
        return len(pivots)

    def nullspace(self) -> list[Vector]:
        """Exact basis of the right nullspace, one vector per free column.

        Deterministic: free columns in increasing order, each basis vector
        has a 1 in its free coordinate.
        """
        reduced, pivots = _rref(self.to_rows())
        pivot_of_col = {c: r for r, c in enumerate(pivots)}
        basis = []
        for j in range(self.cols):
            if j in pivot_of_col:
                continue
            v = [Fraction(0)] * self.cols
            v[j] = Fraction(1)
            for c, r in pivot_of_col.items():
                v[c] = -reduced[r][j]
            basis.append(tuple(v))
        return basis

    def adjugate(self) -> "RatMatrix":
        """Transposed cofactor matrix: self @ adj = det * I."""
        if not self.is_square:
            raise PreconditionError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return RatMatrix.from_rows([[1]])
        idx = list(range(n))
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                sub = self.submatrix(
                    [r for r in idx if r != i], [c for c in idx if c != j]
                )
                sign = -1 if (i + j) % 2 else 1
                out[j][i] = sign * det_rational(sub)
        return RatMatrix.from_rows(out)

    def inverse(self) -> "RatMatrix":
        d = self.det()
        if d == 0:
            raise PreconditionError("inverse of a singular matrix")
        return self.adjugate().scale(Fraction(1) / d)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _bareiss_int_det(m: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_rational(M: RatMatrix) -> Fraction:
    """Exact determinant via Bareiss elimination on an integer model."""
    if not M.is_square:
        raise PreconditionError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows: list[list[int]] = []
    for i in range(n):
        row = M.row(i)
        mult = int_lcm(*(v.denominator for v in row)) if row else 1
        scale *= mult
        int_rows.append([int(v * mult) for v in row])
    return Fraction(_bareiss_int_det(int_rows), 1) / scale


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix of dense rational polynomials."""

    rows: int
    cols: int
    entries: tuple[Poly, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise PreconditionError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(p for r in rows for p in r))

    @classmethod
    def from_constant(cls, M: RatMatrix) -> "PolyMatrix":
        return cls(M.rows, M.cols, tuple(Poly([v]) for v in M.entries))

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def evaluate(self, x) -> RatMatrix:
        return RatMatrix(
            self.rows, self.cols, tuple(p.evaluate(Fraction(x)) for p in self.entries)
        )

    def evaluate_float(self, x: float) -> np.ndarray:
        return np.array(
            [
                [float(self.entry(i, j).evaluate(Fraction(x))) for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def submatrix(self, keep_rows: Sequence[int], keep_cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [[self.entry(i, j) for j in keep_cols] for i in keep_rows]
        )

    def degree_bound(self) -> int:
        """Upper bound for deg(det): sum over rows of the max entry degree."""
        total = 0
        for i in range(self.rows):
            d = max(self.entry(i, j).degree() for j in range(self.cols))
            if d < 0:
                return 0  # a zero row forces a zero determinant
            total += d
        return total

    def det(self) -> Poly:
        return det_pencil(self)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise PreconditionError("matrix shape mismatch in product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly()
                for k in range(self.cols):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                row.append(acc)
            out.append(row)
        return PolyMatrix.from_rows(out)


def det_pencil(P: PolyMatrix) -> Poly:
    """Exact determinant polynomial by evaluation/interpolation.

    Evaluates at the integers 0..D (D = degree bound) and interpolates;
    exactness of rational arithmetic makes conditioning a non-issue.
    """
    if not P.is_square:
        raise PreconditionError("determinant of a non-square matrix")
    if P.rows == 0:
        return Poly([1])
    bound = P.degree_bound()
    points = [Fraction(k) for k in range(bound + 1)]
    values = [det_rational(P.evaluate(x)) for x in points]
    return _lagrange(points, values)


def minor(P: PolyMatrix, drop_rows: Sequence[int], drop_cols: Sequence[int]) -> Poly:
    """Determinant of the submatrix left after deleting the given rows and
    columns (0-based, unsigned)."""
    drop_r, drop_c = set(drop_rows), set(drop_cols)
    if len(drop_r) != len(drop_rows) or len(drop_c) != len(drop_cols):
        raise PreconditionError("duplicate indices in minor")
    if any(i < 0 or i >= P.rows for i in drop_r) or any(
        j < 0 or j >= P.cols for j in drop_c
    ):
        raise PreconditionError("minor index out of range")
    if len(drop_r) != len(drop_c):
        raise PreconditionError("minor must drop as many rows as columns")
    keep_r = [i for i in range(P.rows) if i not in drop_r]
    keep_c = [j for j in range(P.cols) if j not in drop_c]
    if len(keep_r) != len(keep_c):
        raise PreconditionError("remaining matrix is not square")
    return det_pencil(P.submatrix(keep_r, keep_c))


def adjugate_pencil(P: PolyMatrix) -> PolyMatrix:
    """Adjugate (transposed cofactors) with the standard (-1)^(i+j) signs,
    so that P @ adj(P) = det(P) * I as a polynomial identity."""
    if not P.is_square:
        raise PreconditionError("adjugate of a non-square matrix")
    n = P.rows
    if n > ADJUGATE_SIZE_CAP:
        raise PreconditionError(
            f"adjugate size {n} exceeds cost guard {ADJUGATE_SIZE_CAP}"
        )
    if n == 1:
        return PolyMatrix.from_rows([[Poly([1])]])
    out = [[Poly()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = minor(P, [i], [j])
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof
    return PolyMatrix.from_rows(out)


ORIENTATIONS = ("sA-B", "A-sB")


@dataclass(frozen=True)
class Pencil:
    """Square matrix couple (A, B) with an orientation convention.

    "sA-B": characteristic matrix s*A - B (frequency pencils det(K*A - B),
    Weierstrass pairs det(s*Phi - Psi), similarity pencils det(s*I - M)).
    "A-sB": characteristic matrix A - s*B (classical A - xI with B = I).
    """

    A: RatMatrix
    B: RatMatrix
    orientation: str = "sA-B"

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise PreconditionError(f"unknown pencil orientation {self.orientation!r}")
        if not (self.A.is_square and self.B.is_square):
            raise PreconditionError("pencil matrices must be square")
        if self.A.rows != self.B.rows:
            raise PreconditionError("pencil matrices must have equal size")

    @classmethod
    def similarity(cls, M: RatMatrix) -> "Pencil":
        """The pencil s*I - M whose roots are the eigenvalues of M."""
        return cls(RatMatrix.identity(M.rows), M, "sA-B")

    @classmethod
    def classical(cls, M: RatMatrix) -> "Pencil":
        """The pencil M - s*I (characteristic-matrix convention)."""
        return cls(M, RatMatrix.identity(M.rows), "A-sB")

    @property
    def size(self) -> int:
        return self.A.rows

    def is_symmetric(self) -> bool:
        return self.A.is_symmetric() and self.B.is_symmetric()

    def leading(self) -> RatMatrix:
        """The matrix multiplying the pencil variable."""
        return self.A if self.orientation == "sA-B" else self.B

    def char_matrix(self) -> PolyMatrix:
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                a, b = self.A.entry(i, j), self.B.entry(i, j)
                if self.orientation == "sA-B":
                    row.append(Poly([-b, a]))
                else:
                    row.append(Poly([a, -b]))
            rows.append(row)
        return PolyMatrix.from_rows(rows)

    def char_poly(self) -> Poly:
        return det_pencil(self.char_matrix())

    def evaluate(self, s) -> RatMatrix:
        """The characteristic matrix at a rational point."""
        s = Fraction(s)
        if self.orientation == "sA-B":
            return self.A.scale(s) - self.B
        return self.A - self.B.scale(s)

    def transposed(self) -> "Pencil":
        return Pencil(self.A.transpose(), self.B.transpose(), self.orientation)


def transpose_check(P: Pencil) -> bool:
    """det of a pencil equals det of its entrywise transpose; exposed as a
    self-test of the determinant machinery."""
    return P.char_poly() == P.transposed().char_poly()
