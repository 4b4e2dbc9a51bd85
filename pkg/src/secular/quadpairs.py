"""Simultaneous reduction of a pair of quadratic forms (the definite case).

Given symmetric Phi (definite, det != 0) and symmetric Psi, the determinant
f(s) = det(s*Phi - Psi) has only real roots s_1..s_m with multiplicities
lambda_mu summing to n, and there are unique symmetric PSD pieces theta_mu of
rank lambda_mu with

    Phi = sum theta_mu          Psi = sum s_mu * theta_mu.

The pieces are residues: with adj(s*Phi - Psi) = (s - s_mu)^(lambda_mu - 1) * G(s)
and f(s) = (s - s_mu)^lambda_mu * h(s), the matrix R_mu = G(s_mu) / h(s_mu) is
the residue of the pencil inverse at s_mu and theta_mu = Phi @ R_mu @ Phi.
The construction never branches on the multiplicity: the divisibility of
every adjugate entry by (s - s_mu)^(lambda_mu - 1) -- checkable exactly, see
`remarkable_circumstance_check` -- is what keeps the residues finite.

Exact path requires rational roots; otherwise residues are evaluated at
refined root approximations in floating point (tolerance 1e-9).  Negative
definite Phi is handled by negating both forms, running the positive path
and negating the pieces back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import PathUnavailableError, PreconditionError
from .invariants import inertia
from .matrices import Pencil, PolyMatrix, RatMatrix, adjugate_pencil
from .polynomials import Poly, squarefree_decompose
from .realroots import RealRoot, refine_root
from .spectral import FLOAT_ROOT_WIDTH, char_roots

__all__ = [
    "QuadraticPair",
    "ThetaComponent",
    "ThetaDecomposition",
    "CircumstanceReport",
    "TheoremReport",
    "remarkable_circumstance_check",
    "theta_components",
    "verify_theorem",
    "FLOAT_RESIDUAL_TOL",
]

FLOAT_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class QuadraticPair:
    """Symmetric couple (Phi, Psi) with Phi definite."""

    phi: RatMatrix
    psi: RatMatrix
    definiteness: str  # "positive" | "negative"

    @classmethod
    def checked(cls, phi: RatMatrix, psi: RatMatrix) -> "QuadraticPair":
        if not (phi.is_symmetric() and psi.is_symmetric()):
            raise PreconditionError("both forms must be symmetric")
        if phi.rows != psi.rows:
            raise PreconditionError("forms must have the same size")
        minors = phi.leading_principal_minors()
        if minors[-1] == 0:
            raise PreconditionError("Phi must have nonzero determinant")
        if all(d > 0 for d in minors):
            kind = "positive"
        elif all((d > 0) == (k % 2 == 1) for k, d in enumerate(minors)):
            kind = "negative"
        else:
            raise PreconditionError(
                "Phi must be definite (positive or negative); indefinite"
                " leading form rejected"
            )
        return cls(phi, psi, kind)

    @property
    def size(self) -> int:
        return self.phi.rows

    def pencil(self) -> Pencil:
        return Pencil(self.phi, self.psi, "sA-B")


@dataclass(frozen=True)
class ThetaComponent:
    root: RealRoot
    multiplicity: int
    theta: RatMatrix | tuple  # exact matrix, or row tuples of floats

    def theta_numpy(self) -> np.ndarray:
        if isinstance(self.theta, RatMatrix):
            return self.theta.to_numpy()
        return np.array(self.theta)


@dataclass(frozen=True)
class ThetaDecomposition:
    components: tuple[ThetaComponent, ...]
    path: str  # "exact" | "float"
    size: int


@dataclass(frozen=True)
class CircumstanceReport:
    """Divisibility evidence per root group of the characteristic
    determinant: (square-free factor, multiplicity, every adjugate entry
    divisible by factor^(multiplicity-1))."""

    records: tuple[tuple[Poly, int, bool], ...]
    ok: bool


@dataclass(frozen=True)
class TheoremReport:
    ok: bool
    phi_residual: Fraction | float
    psi_residual: Fraction | float
    ranks_ok: bool
    semidefinite_ok: bool
    multiplicity_total_ok: bool
    path: str


def remarkable_circumstance_check(pair: QuadraticPair) -> CircumstanceReport:
    """Exact divisibility of every adjugate entry of s*Phi - Psi by
    (s - s_mu)^(lambda_mu - 1), grouped by square-free factor so that
    irrational roots are covered jointly."""
    pencil = pair.pencil()
    f = pencil.char_poly()
    if f.is_zero():
        raise PreconditionError("singular pencil")
    adj = adjugate_pencil(pencil.char_matrix())
    records = []
    for factor, mult in squarefree_decompose(f):
        if mult == 1:
            records.append((factor, 1, True))
            continue
        power = factor ** (mult - 1)
        ok = all(power.divides(entry) for entry in adj.entries)
        records.append((factor, mult, ok))
    return CircumstanceReport(tuple(records), all(r[2] for r in records))


def _exact_residue(
    adj: PolyMatrix, f: Poly, root: Fraction, mult: int, n: int
) -> RatMatrix:
    """R = G(root)/h(root) with G, h obtained by exact deflation."""
    lin = Poly([-root, 1])
    shift = lin ** (mult - 1)
    g_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            quo, rem = divmod(adj.entry(i, j), shift)
            if not rem.is_zero():
                raise PreconditionError(
                    "adjugate entry not divisible to the expected order; the"
                    " leading form is not definite"
                )
            row.append(quo.evaluate(root))
        g_rows.append(row)
    h, rem = divmod(f, lin**mult)
    if not rem.is_zero():
        raise PreconditionError("root multiplicity mismatch during deflation")
    hval = h.evaluate(root)
    return RatMatrix.from_rows(g_rows).scale(Fraction(1) / hval)


def _float_residue(adj: PolyMatrix, f: Poly, root: RealRoot, mult: int, n: int):
    """Residue at a refined approximation: G(s) = adj^(mult-1)(s)/(mult-1)!
    and h(s) = f^(mult)(s)/mult! evaluated at the interval midpoint."""
    s = refine_root(root, FLOAT_ROOT_WIDTH).approx()
    h = float(f.derivative(mult).evaluate(s)) / factorial(mult)
    G = np.array(
        [
            [
                float(adj.entry(i, j).derivative(mult - 1).evaluate(s))
                / factorial(mult - 1)
                for j in range(n)
            ]
            for i in range(n)
        ]
    )
    return G / h


def theta_components(pair: QuadraticPair, path: str = "auto") -> ThetaDecomposition:
    """The pieces (root, multiplicity, theta) with Phi = sum(theta) and
    Psi = sum(root * theta); theta = Phi @ R @ Phi for the residue R of the
    pencil inverse at the root."""
    if path not in ("auto", "exact", "float"):
        raise PreconditionError(f"unknown arithmetic path {path!r}")
    if pair.definiteness == "negative":
        flipped = QuadraticPair(-pair.phi, -pair.psi, "positive")
        dec = theta_components(flipped, path)
        comps = tuple(
            ThetaComponent(
                c.root,
                c.multiplicity,
                -c.theta
                if isinstance(c.theta, RatMatrix)
                else tuple(tuple(-x for x in row) for row in c.theta),
            )
            for c in dec.components
        )
        return ThetaDecomposition(comps, dec.path, dec.size)

    pencil = pair.pencil()
    n = pair.size
    roots = char_roots(pencil)
    if sum(r.multiplicity for r in roots) != n:
        raise PreconditionError("characteristic roots are not all real")
    all_exact = all(r.is_exact for r in roots)
    if path == "exact" and not all_exact:
        raise PathUnavailableError(
            "exact path requested but the characteristic roots are irrational"
        )
    mode = "exact" if (all_exact and path != "float") else "float"
    f = pencil.char_poly()
    adj = adjugate_pencil(pencil.char_matrix())
    comps = []
    if mode == "exact":
        for root in roots:
            R = _exact_residue(adj, f, root.value, root.multiplicity, n)
            theta = pair.phi @ R @ pair.phi
            comps.append(ThetaComponent(root, root.multiplicity, theta))
        sum_theta = RatMatrix.zeros(n, n)
        sum_s_theta = RatMatrix.zeros(n, n)
        for c in comps:
            sum_theta = sum_theta + c.theta
            sum_s_theta = sum_s_theta + c.theta.scale(c.root.value)
        if sum_theta != pair.phi or sum_s_theta != pair.psi:
            raise PreconditionError(
                "residue components do not reassemble the pair; the leading"
                " form is not definite"
            )
    else:
        phi_f = pair.phi.to_numpy()
        for root in roots:
            R = _float_residue(adj, f, root, root.multiplicity, n)
            theta = phi_f @ R @ phi_f
            theta = (theta + theta.T) / 2
            comps.append(
                ThetaComponent(
                    root,
                    root.multiplicity,
                    tuple(tuple(float(x) for x in row) for row in theta),
                )
            )
        sum_theta = sum(c.theta_numpy() for c in comps)
        sum_s_theta = sum(c.root.as_float() * c.theta_numpy() for c in comps)
        scale = max(1.0, float(np.max(np.abs(phi_f))))
        if (
            np.max(np.abs(sum_theta - phi_f)) > FLOAT_RESIDUAL_TOL * scale
            or np.max(np.abs(sum_s_theta - pair.psi.to_numpy()))
            > FLOAT_RESIDUAL_TOL * max(1.0, float(np.max(np.abs(pair.psi.to_numpy()))))
        ):
            raise PreconditionError(
                "residue components do not reassemble the pair within"
                " tolerance"
            )
    return ThetaDecomposition(tuple(comps), mode, n)


def _exact_rank(M: RatMatrix) -> int:
    return M.rank()


def verify_theorem(
    dec: ThetaDecomposition,
    pair: QuadraticPair,
    tolerance: float = FLOAT_RESIDUAL_TOL,
) -> TheoremReport:
    """Re-check the two sum identities, per-component rank = multiplicity,
    semidefiniteness of each (sign-adjusted) piece and the multiplicity
    count.  Exact path: exact equalities; floating path: residuals against
    `tolerance` (default 1e-9) in max norm."""
    n = dec.size
    sign = 1 if pair.definiteness == "positive" else -1
    mult_ok = sum(c.multiplicity for c in dec.components) == n
    if dec.path == "exact":
        sum_theta = RatMatrix.zeros(n, n)
        sum_s_theta = RatMatrix.zeros(n, n)
        ranks_ok = True
        semidef_ok = True
        for c in dec.components:
            assert isinstance(c.theta, RatMatrix)
            sum_theta = sum_theta + c.theta
            sum_s_theta = sum_s_theta + c.theta.scale(c.root.value)
            ranks_ok &= _exact_rank(c.theta) == c.multiplicity
            rep = inertia(c.theta.scale(sign))
            semidef_ok &= rep.negatives == 0
        phi_res = max(
            (abs(v) for v in (sum_theta - pair.phi).entries), default=Fraction(0)
        )
        psi_res = max(
            (abs(v) for v in (sum_s_theta - pair.psi).entries), default=Fraction(0)
        )
        ok = phi_res == 0 and psi_res == 0 and ranks_ok and semidef_ok and mult_ok
        return TheoremReport(ok, phi_res, psi_res, ranks_ok, semidef_ok, mult_ok, "exact")
    sum_theta = np.zeros((n, n))
    sum_s_theta = np.zeros((n, n))
    ranks_ok = True
    semidef_ok = True
    for c in dec.components:
        T = c.theta_numpy()
        sum_theta += T
        sum_s_theta += c.root.as_float() * T
        eigs = np.linalg.eigvalsh(sign * T)
        scale = max(1.0, float(np.max(np.abs(T))))
        semidef_ok &= bool(eigs.min() >= -tolerance * scale)
        rank = int(np.sum(np.abs(eigs) > 1e-7 * scale))
        ranks_ok &= rank == c.multiplicity
    phi_res = float(np.max(np.abs(sum_theta - pair.phi.to_numpy())))
    psi_res = float(np.max(np.abs(sum_s_theta - pair.psi.to_numpy())))
    ok = (
        phi_res <= tolerance
        and psi_res <= tolerance
        and ranks_ok
        and semidef_ok
        and mult_ok
    )
    return TheoremReport(ok, phi_res, psi_res, ranks_ok, semidef_ok, mult_ok, "float")
