"""Minor-GCD chains, invariant factors, elementary divisors, the
diagonalizability criterion, and quadratic-form inertia.

The chain Delta_1 | Delta_2 | ... | Delta_n collects the monic GCDs of all
k x k minors of a polynomial matrix, computed by literal exhaustive
enumeration (desk scale; guarded).  Quotients of consecutive entries give the
invariant factors, whose irreducible-power parts are the elementary divisors;
a matrix is diagonalizable exactly when all of those are simple, equivalently
when every invariant factor is square-free.

Inertia of a symmetric rational matrix is read off the sign permanences of
the leading-principal-minor sequence (determinant down to 1) whenever that
sequence has no zero; otherwise an exact symmetric congruence elimination
with the classic off-diagonal pivot trick takes over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, PreconditionError
from .matrices import Pencil, PolyMatrix, RatMatrix, det_pencil
from .polynomials import Poly, kronecker_factor, poly_gcd, squarefree_decompose
from .realroots import RealRoot, refine_root, sturm_isolate

__all__ = [
    "MinorGcdChain",
    "InvariantFactors",
    "ElementaryDivisors",
    "InertiaReport",
    "DiagonalizabilityWitness",
    "minor_gcd_chain",
    "invariant_factors",
    "elementary_divisors",
    "is_diagonalizable",
    "inertia",
    "darboux_signature_steps",
    "MINOR_CHAIN_SIZE_CAP",
]

MINOR_CHAIN_SIZE_CAP = 6


@dataclass(frozen=True)
class MinorGcdChain:
    """Monic GCDs Delta_1 .. Delta_n of the k x k minors (Delta_0 = 1)."""

    deltas: tuple[Poly, ...]

    def __iter__(self):
        return iter(self.deltas)


@dataclass(frozen=True)
class InvariantFactors:
    """Quotients i_k = Delta_k / Delta_(k-1); each divides the next."""

    factors: tuple[Poly, ...]

    def __iter__(self):
        return iter(self.factors)


@dataclass(frozen=True)
class ElementaryDivisors:
    """Irreducible-power parts of the invariant factors, flattened."""

    divisors: tuple[tuple[Poly, int], ...]


@dataclass(frozen=True)
class DiagonalizabilityWitness:
    """Per multiple root evidence for the minor-divisibility criterion.

    Each record is (square-free factor of the characteristic polynomial,
    multiplicity mu, whether the factor^(mu-1) divides every (n-1)-minor).
    """

    records: tuple[tuple[Poly, int, bool], ...]


@dataclass(frozen=True)
class InertiaReport:
    positives: int
    negatives: int
    zeros: int
    minor_sequence: tuple[Fraction, ...]
    method: str  # "minor-formula" | "congruence-fallback"

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.positives, self.negatives, self.zeros)


def _all_minors(P: PolyMatrix, k: int) -> list[Poly]:
    idx = range(P.rows)
    out = []
    for rows in itertools.combinations(idx, k):
        for cols in itertools.combinations(idx, k):
            out.append(det_pencil(P.submatrix(rows, cols)))
    return out


def minor_gcd_chain(P: PolyMatrix) -> MinorGcdChain:
    """Delta_k = monic gcd of all k x k minors, by brute-force enumeration.

    Rejects singular pencils (determinant identically zero): their completion
    is out of scope here.
    """
    if not P.is_square:
        raise PreconditionError("minor chain of a non-square matrix")
    n = P.rows
    if n > MINOR_CHAIN_SIZE_CAP:
        raise PreconditionError(
            f"minor enumeration size {n} exceeds cost guard {MINOR_CHAIN_SIZE_CAP}"
        )
    full = det_pencil(P)
    if full.is_zero():
        raise PreconditionError(
            "singular pencil (determinant identically zero): Kronecker's"
            " singular case is out of scope"
        )
    deltas = []
    for k in range(1, n):
        g = Poly()
        for m in _all_minors(P, k):
            if m.is_zero():
                continue
            g = m.monic() if g.is_zero() else poly_gcd(g, m)
            if g.degree() == 0:
                break
        deltas.append(g.monic())
    deltas.append(full.monic())
    return MinorGcdChain(tuple(deltas))


def invariant_factors(chain: MinorGcdChain) -> InvariantFactors:
    """i_k = Delta_k / Delta_(k-1), verifying both divisibility chains."""
    factors = []
    prev = Poly([1])
    for delta in chain.deltas:
        quo, rem = divmod(delta, prev)
        if not rem.is_zero():
            raise InternalError("minor-GCD chain is not a divisibility chain")
        factors.append(quo.monic())
        prev = delta
    for a, b in zip(factors, factors[1:]):
        if not a.divides(b):
            raise InternalError("invariant factors do not divide in sequence")
    return InvariantFactors(tuple(factors))


def elementary_divisors(inv: InvariantFactors) -> ElementaryDivisors:
    """Split every invariant factor into irreducible powers."""
    out: list[tuple[Poly, int]] = []
    for f in inv.factors:
        if f.degree() <= 0:
            continue
        out.extend(kronecker_factor(f))
    return ElementaryDivisors(tuple(out))


def _char_pencil_shape_ok(P: PolyMatrix) -> bool:
    """Accept only the lambda*I - A shape (monic degree-1 diagonal, constant
    off-diagonal)."""
    for i in range(P.rows):
        for j in range(P.cols):
            p = P.entry(i, j)
            if i == j:
                if p.degree() != 1 or p.leading() != 1:
                    return False
            elif p.degree() > 0:
                return False
    return True


def is_diagonalizable(
    P: Pencil | PolyMatrix | RatMatrix,
) -> tuple[bool, DiagonalizabilityWitness]:
    """Whether all elementary divisors are simple, with minor-level evidence.

    Accepts a matrix M (treated as lambda*I - M), a similarity pencil, or a
    polynomial matrix already in that shape.  The verdict is computed as
    square-freeness of every invariant factor, which is equivalent to all
    elementary-divisor exponents being 1.  The witness reports, per multiple
    root (grouped by square-free factor, multiplicity mu), whether the factor
    to the power mu-1 divides every (n-1) x (n-1) minor.
    """
    if isinstance(P, RatMatrix):
        P = Pencil.similarity(P)
    if isinstance(P, Pencil):
        if P.orientation != "sA-B" or P.A != RatMatrix.identity(P.size):
            raise PreconditionError(
                "diagonalizability test expects the pencil lambda*I - A"
            )
        P = P.char_matrix()
    if not _char_pencil_shape_ok(P):
        raise PreconditionError(
            "diagonalizability test expects the pencil lambda*I - A"
        )
    chain = minor_gcd_chain(P)
    inv = invariant_factors(chain)
    verdict = all(
        poly_gcd(f, f.derivative()).degree() == 0
        for f in inv.factors
        if f.degree() > 0
    )
    # evidence in Jordan's multiple-root formulation
    n = P.rows
    records = []
    charpoly = chain.deltas[-1]
    sub_gcd = chain.deltas[-2] if n >= 2 else Poly([1])
    for factor, mult in squarefree_decompose(charpoly):
        if mult < 2:
            continue
        annihilates = (factor ** (mult - 1)).divides(sub_gcd)
        records.append((factor, mult, annihilates))
    return verdict, DiagonalizabilityWitness(tuple(records))


def _congruence_diagonal(M: RatMatrix) -> list[Fraction]:
    """Diagonal of an exact symmetric congruence reduction of M.

    Pivot search: the current diagonal entry, else a later nonzero diagonal
    entry (symmetric swap), else the 2 x 2 off-diagonal trick of adding one
    row/column pair into another.
    """
    n = M.rows
    a = M.to_rows()

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_into(i, j):
        # row_i += row_j, col_i += col_j
        a[i] = [x + y for x, y in zip(a[i], a[j])]
        for row in a:
            row[i] = row[i] + row[j]

    diag: list[Fraction] = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((t for t in range(k + 1, n) if a[t][t] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((t for t in range(k + 1, n) if a[k][t] != 0), None)
                if j is not None:
                    add_into(k, j)
        pivot = a[k][k]
        diag.append(pivot)
        if pivot == 0:
            continue
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / pivot
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] = row[i] - f * row[k]
    return diag


def inertia(M: RatMatrix, method: str = "auto") -> InertiaReport:
    """Signature (positives, negatives, zeros) of a symmetric rational form.

    method "auto" uses the permanence count of the leading-principal-minor
    sequence (determinant, ..., 1) when no leading minor vanishes, falling
    back to exact congruence elimination otherwise; "congruence" forces the
    fallback path (used by tests to compare both routes).
    """
    if not M.is_symmetric():
        raise PreconditionError("inertia requires a symmetric matrix")
    n = M.rows
    leading = M.leading_principal_minors()
    # Darboux orientation: determinant first, down to the empty minor 1
    sequence = tuple(leading[::-1]) + (Fraction(1),)
    if method not in ("auto", "congruence"):
        raise PreconditionError(f"unknown inertia method {method!r}")
    if method == "auto" and all(d != 0 for d in leading):
        positives = sum(
            1 for x, y in zip(sequence, sequence[1:]) if (x > 0) == (y > 0)
        )
        return InertiaReport(positives, n - positives, 0, sequence, "minor-formula")
    diag = _congruence_diagonal(M)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return InertiaReport(pos, neg, n - pos - neg, sequence, "congruence-fallback")


def darboux_signature_steps(M: RatMatrix) -> list[tuple[RealRoot, int]]:
    """Jumps of the positive-square count of M - lambda*I at its eigenvalues.

    Returns (root, jump) pairs in increasing root order; for symmetric M each
    jump is -multiplicity.
    """
    if not M.is_symmetric():
        raise PreconditionError("signature steps require a symmetric matrix")
    n = M.rows
    charpoly = Pencil.similarity(M).char_poly()
    roots = sturm_isolate(charpoly)
    if not roots:
        return []
    # rational sample points strictly between consecutive roots
    roots = _separate(roots)
    samples = [roots[0].lo - 1]
    for left, right in zip(roots, roots[1:]):
        samples.append((left.hi + right.lo) / 2)
    samples.append(roots[-1].hi + 1)
    counts = [
        inertia(M - RatMatrix.identity(n).scale(lam)).positives for lam in samples
    ]
    return [
        (root, counts[i + 1] - counts[i]) for i, root in enumerate(roots)
    ]


def _separate(roots: list[RealRoot]) -> list[RealRoot]:
    """Refine isolating intervals until they are pairwise disjoint with
    rational gaps between consecutive roots."""
    out = list(roots)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i].hi > out[i + 1].lo:
                width = max(out[i].width(), out[i + 1].width()) / 4
                if width == 0:
                    raise InternalError("coincident distinct roots")
                out[i] = refine_root(out[i], width)
                out[i + 1] = refine_root(out[i + 1], width)
                changed = True
    return out
