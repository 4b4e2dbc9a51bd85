"""Exact dense univariate polynomials over the rationals.

A polynomial is a tuple of `fractions.Fraction` coefficients stored lowest
degree first; the zero polynomial is the empty tuple.  All arithmetic is
exact, which makes divisibility tests and polynomial identities fully
reliable -- the substrate every other module builds on.

Beyond ring arithmetic the module provides:

* monic GCD (Euclid over Q),
* Yun square-free decomposition,
* factorisation into irreducibles over Q by Kronecker's
  evaluation/interpolation scheme (guarded by a degree cap, since the
  divisor-combination search is combinatorial).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .errors import PreconditionError

__all__ = [
    "Poly",
    "ZERO",
    "ONE",
    "X",
    "poly_gcd",
    "squarefree_decompose",
    "kronecker_factor",
    "KRONECKER_DEGREE_CAP",
]

# Evaluation/interpolation factoring is combinatorial in the degree; keep it
# at desk scale.
KRONECKER_DEGREE_CAP = 12


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    Immutable; trailing zero coefficients are trimmed on construction, so the
    leading coefficient is nonzero unless the polynomial is zero (empty).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int | str] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([Fraction(c)])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [Fraction(c)])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Poly":
        p = ONE
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # -- basic queries -----------------------------------------------------

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * a for a in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact euclidean division; deg(remainder) < deg(divisor)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ZERO, self
        quo = [Fraction(0)] * (dq + 1)
        dlc = other.leading()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] / dlc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True iff self divides other exactly (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- calculus / evaluation ----------------------------------------------

    def evaluate(self, x):
        """Horner evaluation; works for Fraction, float and complex x."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly([k * c for k, c in enumerate(p.coeffs)][1:])
        return p

    # -- normal forms ---------------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def is_scalar_multiple_of(self, other: "Poly") -> bool:
        """True iff the two polynomials agree up to a nonzero scalar."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    def integer_primitive(self) -> tuple[Fraction, "Poly"]:
        """Write self = content * primitive with integer primitive part.

        The primitive part has coprime integer coefficients and positive
        leading coefficient; content carries the sign.
        """
        if self.is_zero():
            return Fraction(0), ZERO
        denom = 1
        for c in self.coeffs:
            denom = denom * c.denominator // int_gcd(denom, c.denominator)
        ints = [c.numerator * (denom // c.denominator) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, denom), Poly([v // g for v in ints])

    # -- presentation ---------------------------------------------------------

    def to_string(self, var: str = "x") -> str:
        """Deterministic human-readable rendering, highest degree first."""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = _frac_str(mag)
            else:
                head = "" if mag == 1 else _frac_str(mag) + "*"
                body = head + (var if k == 1 else f"{var}^{k}")
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor over Q.

    gcd(p, 0) is monic(p); gcd(0, 0) is rejected.
    """
    if p.is_zero() and q.is_zero():
        raise PreconditionError("gcd(0, 0) is undefined")
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition: monic(p) = product of factor**exponent with the
    factors monic, square-free and pairwise coprime.

    Factors are returned in increasing exponent order; exponent-k factors of
    degree zero are omitted.
    """
    if p.is_zero():
        raise PreconditionError("square-free decomposition of the zero polynomial")
    p = p.monic()
    if p.degree() == 0:
        return []
    out: list[tuple[Poly, int]] = []
    g = poly_gcd(p, p.derivative())
    if g.degree() == 0:
        return [(p, 1)]
    w = p // g
    y = p.derivative() // g
    k = 1
    while w.degree() > 0:
        z = y - w.derivative()
        f = poly_gcd(w, z) if not z.is_zero() else w.monic()
        if f.degree() > 0:
            out.append((f.monic(), k))
        w = w // f
        y = z // f
        k += 1
    return out


def expand_factors(factors: Iterable[tuple[Poly, int]]) -> Poly:
    """Multiply a (factor, exponent) list back out."""
    p = ONE
    for f, e in factors:
        p = p * f**e
    return p


def _divisors(n: int) -> list[int]:
    """Positive divisors of |n|, n nonzero."""
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _interp_points(count: int) -> list[int]:
    """0, 1, -1, 2, -2, ... (count of them)."""
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts


def _lagrange(points: Sequence[Fraction], values: Sequence[Fraction]) -> Poly:
    """Interpolating polynomial through (points[i], values[i])."""
    total = ZERO
    for i, (xi, vi) in enumerate(zip(points, values)):
        if vi == 0:
            continue
        term = Poly.const(vi)
        for j, xj in enumerate(points):
            if j == i:
                continue
            term = term * Poly([-xj, 1]).scale(Fraction(1, xi - xj))
        total = total + term
    return total


def _kronecker_split_squarefree(f: Poly) -> list[Poly]:
    """Irreducible monic factors of a square-free monic polynomial.

    Searches divisors d = 1 .. deg/2 by evaluating an integer model of f at
    small integer points, enumerating divisor tuples of the values and
    interpolating trial factors.  A polynomial surviving the whole search is
    irreducible over Q.
    """
    if f.degree() <= 1:
        return [f.monic()]
    _, fz = f.integer_primitive()
    n = fz.degree()
    for d in range(1, n // 2 + 1):
        points = [Fraction(x) for x in _interp_points(d + 1)]
        values = [fz.evaluate(x) for x in points]
        for x, v in zip(points, values):
            if v == 0:
                lin = Poly([-x, 1])
                return sorted(
                    _kronecker_split_squarefree((fz // lin).monic()) + [lin],
                    key=_poly_sort_key,
                )
        divisor_sets = []
        for i, v in enumerate(values):
            ds = _divisors(v.numerator)
            if i == 0:
                # q and -q divide together; fixing q(x0) > 0 keeps one of them
                divisor_sets.append([Fraction(x) for x in ds])
            else:
                divisor_sets.append([Fraction(s * x) for x in ds for s in (1, -1)])
        for combo in itertools.product(*divisor_sets):
            cand = _lagrange(points, list(combo))
            if cand.degree() < 1 or cand.degree() > d:
                continue
            if any(c.denominator != 1 for c in cand.coeffs):
                continue
            quo, rem = divmod(fz, cand)
            if rem.is_zero():
                return sorted(
                    _kronecker_split_squarefree(cand.monic())
                    + _kronecker_split_squarefree(quo.monic()),
                    key=_poly_sort_key,
                )
    return [f.monic()]


def _poly_sort_key(p: Poly):
    return (p.degree(), p.coeffs)


def kronecker_factor(
    p: Poly, degree_cap: int = KRONECKER_DEGREE_CAP
) -> list[tuple[Poly, int]]:
    """Complete factorisation of p into monic irreducibles over Q.

    Returns (irreducible, exponent) pairs whose product is monic(p); the pairs
    are sorted by (degree, coefficients).  Degrees above `degree_cap` are
    rejected up front as a cost guard.
    """
    if p.is_zero():
        raise PreconditionError("factorisation of the zero polynomial")
    if p.degree() > degree_cap:
        raise PreconditionError(
            f"degree {p.degree()} exceeds factorisation cap {degree_cap}"
        )
    out: list[tuple[Poly, int]] = []
    for part, exp in squarefree_decompose(p):
        for irr in _kronecker_split_squarefree(part):
            out.append((irr, exp))
    return sorted(out, key=lambda fe: _poly_sort_key(fe[0]))
