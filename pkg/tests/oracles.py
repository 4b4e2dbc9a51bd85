"""Independent reference computations used to pin expected test values.

Everything here deliberately avoids the code paths it checks: determinants
by cofactor expansion instead of interpolation/Bareiss, the matrix
exponential by a scaled-and-squared Taylor series instead of spectral
projectors, root brackets by plain bisection instead of Sturm machinery, and
ODE residuals by central finite differences instead of symbolic derivatives.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from secular.matrices import PolyMatrix, RatMatrix
from secular.polynomials import Poly


def cofactor_det_poly(P: PolyMatrix) -> Poly:
    """Determinant by first-row cofactor expansion."""
    n = P.rows
    if n == 1:
        return P.entry(0, 0)
    total = Poly()
    rows = list(range(1, n))
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        term = P.entry(0, j) * cofactor_det_poly(P.submatrix(rows, cols))
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_det_rat(M: RatMatrix) -> Fraction:
    n = M.rows
    if n == 1:
        return M.entry(0, 0)
    total = Fraction(0)
    rows = list(range(1, n))
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        term = M.entry(0, j) * cofactor_det_rat(M.submatrix(rows, cols))
        total += term if j % 2 == 0 else -term
    return total


def bisect_bracket(p: Poly, lo: Fraction, hi: Fraction, width: Fraction):
    """Plain sign-change bisection; (lo, hi) must bracket a single root."""
    lo, hi = Fraction(lo), Fraction(hi)
    assert (p.evaluate(lo) > 0) != (p.evaluate(hi) > 0)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = p.evaluate(mid)
        if v == 0:
            return mid, mid
        if (p.evaluate(lo) > 0) != (v > 0):
            hi = mid
        else:
            lo = mid
    return lo, hi


def expm_taylor(M: np.ndarray, t: float, terms: int = 40) -> np.ndarray:
    """Scaling-and-squaring truncated series for exp(M t)."""
    A = np.array(M, dtype=float) * t
    squarings = 0
    while np.max(np.abs(A)) > 0.5:
        A = A / 2
        squarings += 1
    out = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, terms):
        term = term @ A / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def ode_residual(evaluate, M: np.ndarray, times, h: float = 1e-4) -> float:
    """Max relative residual of d/dt x = M x by central differences."""
    worst = 0.0
    scale = max(
        1e-12, max(float(np.max(np.abs(evaluate(float(t))))) for t in times)
    )
    for t in times:
        t = float(t)
        deriv = (evaluate(t + h) - evaluate(t - h)) / (2 * h)
        res = deriv - M @ evaluate(t)
        worst = max(worst, float(np.max(np.abs(res))) / scale)
    return worst


def second_order_residual(solution, model, times, h: float = 1e-4) -> float:
    """Max relative residual of A y'' + B y = 0 by central differences."""
    A = model.mass.to_numpy()
    B = model.stiffness.to_numpy()
    worst = 0.0
    scale = max(
        1e-12,
        max(float(np.max(np.abs(solution.evaluate(float(t))))) for t in times),
    )
    for t in times:
        t = float(t)
        ypp = (
            solution.evaluate(t + h)
            - 2 * solution.evaluate(t)
            + solution.evaluate(t - h)
        ) / (h * h)
        res = A @ ypp + B @ solution.evaluate(t)
        worst = max(worst, float(np.max(np.abs(res))) / scale)
    return worst


def cayley_orthogonal(skew_rows) -> RatMatrix:
    """Rational orthogonal matrix (I - S)(I + S)^-1 from a rational skew S."""
    S = RatMatrix.from_rows(skew_rows)
    n = S.rows
    eye = RatMatrix.identity(n)
    return (eye - S) @ (eye + S).inverse()
