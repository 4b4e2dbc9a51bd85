"""Small-oscillation models and their closed-form solutions.

Models are stored as a symmetric couple (A, B) for A y'' + B y = 0 with A the
kinetic/mass matrix; the frequency equation is det(K*A - B) = 0 with K the
squared angular frequency.  (Exponential-ansatz texts write the same roots as
rho^2 = -K; the sign convention here is applied uniformly.)

Solvers:

* `solve_modal` -- superposition of modes E sin(omega t + eps) * shape fitted
  to initial conditions by A-orthogonal projection; zero-frequency roots
  become flagged drift terms E + V t.
* `solve_jordan` -- first-order systems dx/dt = M x through the generalized
  eigenstructure (iterated nullspaces); solution entries are e^(sigma t)
  times a polynomial of degree < chain length.
* `expm_projectors` -- exp(M t) from the spectral projectors obtained by
  Bezout partial fractions of the characteristic factorisation.
* `scalar_residue_solve` -- scalar constant-coefficient ODEs via residues of
  e^(r x)/F(r); multiple roots contribute x^k e^(r x) automatically.

`classify_stability` reports the historical root-nature trichotomy alongside
the corrected symmetry/definiteness rule, flagging disagreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import InternalError, PathUnavailableError, PreconditionError
from .matrices import Pencil, RatMatrix
from .polynomials import Poly
from .realroots import RealRoot, root_sign, sturm_isolate
from .spectral import spectral_decompose

__all__ = [
    "MechModel",
    "InitialConditions",
    "Mode",
    "DriftMode",
    "ModalSolution",
    "JordanBlock",
    "JordanSolution",
    "ScalarTerm",
    "ScalarSolution",
    "StabilityVerdict",
    "Trajectory",
    "build_model",
    "loaded_string_frequency_series",
    "frequency_poly_in_rho",
    "solve_modal",
    "solve_jordan",
    "spectral_projectors",
    "expm_projectors",
    "scalar_residue_solve",
    "classify_stability",
    "sample_trajectory",
    "time_grid",
    "MODEL_KINDS",
]

MODEL_KINDS = (
    "loaded-string",
    "dalembert-two-mass",
    "yvon-villarceau-2dof",
    "coupled-springs",
    "custom",
)


@dataclass(frozen=True)
class MechModel:
    """An oscillation scenario: A y'' + B y = 0 with symmetric A, B."""

    kind: str
    parameters: tuple[tuple[str, Fraction], ...]
    mass: RatMatrix
    stiffness: RatMatrix

    @property
    def size(self) -> int:
        return self.mass.rows

    def pencil(self) -> Pencil:
        """Frequency pencil: det(K*A - B) = 0, K = omega^2."""
        return Pencil(self.mass, self.stiffness, "sA-B")

    def parameter(self, name: str) -> Fraction:
        for k, v in self.parameters:
            if k == name:
                return v
        raise KeyError(name)


@dataclass(frozen=True)
class InitialConditions:
    positions: tuple[Fraction, ...]
    velocities: tuple[Fraction, ...]

    @classmethod
    def of(cls, positions, velocities) -> "InitialConditions":
        return cls(
            tuple(Fraction(x) for x in positions),
            tuple(Fraction(x) for x in velocities),
        )

    @property
    def size(self) -> int:
        return len(self.positions)


def _param(params: dict, name: str, default=None) -> Fraction:
    if name in params:
        return Fraction(params[name])
    if default is None:
        raise PreconditionError(f"missing model parameter {name!r}")
    return Fraction(default)


def _require_positive(**named) -> None:
    for name, value in named.items():
        if value <= 0:
            raise PreconditionError(f"model parameter {name!r} must be positive")


def build_model(kind: str, parameters: dict | None = None,
                mass: RatMatrix | None = None,
                stiffness: RatMatrix | None = None) -> MechModel:
    """Construct a named oscillation scenario.

    loaded-string: hanging string fixed at the top, n equal unit masses at
      spacing a, unit gravity; coordinates are transverse displacements
      numbered from the lowest mass.
    dalembert-two-mass: the equal-mass, equal-length double pendulum, time
      unit T; the second equation is scaled by 1/2 so the couple is
      symmetric.
    yvon-villarceau-2dof: the 2-degree system g u'' + a s'' + c u = 0,
      f s'' + a u'' + c s = 0.
    coupled-springs: two equal masses m tied to walls by springs k0 and to
      each other by k.
    custom: explicit symmetric matrices (mass, stiffness).
    """
    params = dict(parameters or {})
    if kind == "loaded-string":
        n = int(_param(params, "n"))
        a = _param(params, "a", 1)
        if n < 1:
            raise PreconditionError("loaded string needs at least one mass")
        _require_positive(a=a)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            rows[k][k] = Fraction(2 * k + 1, 1) / a
            if k + 1 < n:
                rows[k][k + 1] = Fraction(-(k + 1), 1) / a
                rows[k + 1][k] = Fraction(-(k + 1), 1) / a
        A = RatMatrix.identity(n)
        B = RatMatrix.from_rows(rows)
        used = {"n": Fraction(n), "a": a}
    elif kind == "dalembert-two-mass":
        T = _param(params, "T", 1)
        _require_positive(T=T)
        c = Fraction(2) / (T * T)
        A = RatMatrix.diagonal([1, Fraction(1, 2)])
        B = RatMatrix.from_rows([[2 * c, -c], [-c, c]])
        used = {"T": T}
    elif kind == "yvon-villarceau-2dof":
        g = _param(params, "g")
        f = _param(params, "f")
        a = _param(params, "a", 0)
        c = _param(params, "c")
        _require_positive(g=g, f=f, c=c)
        A = RatMatrix.from_rows([[g, a], [a, f]])
        B = RatMatrix.diagonal([c, c])
        used = {"g": g, "f": f, "a": a, "c": c}
    elif kind == "coupled-springs":
        m = _param(params, "m", 1)
        k = _param(params, "k", 1)
        k0 = _param(params, "k0", 1)
        _require_positive(m=m, k=k, k0=k0)
        A = RatMatrix.diagonal([m, m])
        B = RatMatrix.from_rows([[k0 + k, -k], [-k, k0 + k]])
        used = {"m": m, "k": k, "k0": k0}
    elif kind == "custom":
        if mass is None or stiffness is None:
            raise PreconditionError("custom model needs explicit matrices")
        A, B = mass, stiffness
        used = {key: Fraction(v) for key, v in params.items()}
    else:
        raise PreconditionError(f"unknown model kind {kind!r}")
    if not (A.is_symmetric() and B.is_symmetric()):
        raise PreconditionError("model matrices must be symmetric")
    return MechModel(kind, tuple(sorted(used.items())), A, B)


def loaded_string_frequency_series(n: int, a) -> Poly:
    """The classical frequency series for the hanging string of n equal
    masses, as a polynomial in rho: sum_j C(n, j) a^j rho^(2j) / j!.

    The determinant of the string's frequency pencil, rewritten in rho via
    K = -rho^2, equals this series up to a nonzero rational scalar.
    """
    a = Fraction(a)
    coeffs = [Fraction(0)] * (2 * n + 1)
    for j in range(n + 1):
        coeffs[2 * j] = Fraction(math.comb(n, j)) * a**j / factorial(j)
    return Poly(coeffs)


def frequency_poly_in_rho(model: MechModel) -> Poly:
    """det(K*A - B) rewritten as a polynomial in rho via K = -rho^2."""
    q = model.pencil().char_poly()
    coeffs = [Fraction(0)] * (2 * q.degree() + 1)
    for j in range(q.degree() + 1):
        coeffs[2 * j] = q[j] * (-1) ** j
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# modal solution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mode:
    """One oscillatory mode E sin(omega t + phase) * shape."""

    k_root: RealRoot  # root K = omega^2 of the frequency equation
    omega: float
    shape: tuple
    sq_norm: Fraction | float  # shape^T A shape
    amplitude: float
    phase: float  # in [0, 2*pi)

    def shape_floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.shape])


@dataclass(frozen=True)
class DriftMode:
    """Zero-frequency (rigid) mode: (offset + rate*t) * shape."""

    shape: tuple
    sq_norm: Fraction | float
    offset: float
    rate: float

    def shape_floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.shape])


@dataclass(frozen=True)
class ModalSolution:
    model: MechModel
    modes: tuple[Mode, ...]
    drifts: tuple[DriftMode, ...]
    path: str  # arithmetic path of the mode shapes

    @property
    def has_drift(self) -> bool:
        return bool(self.drifts)

    def evaluate(self, t: float) -> np.ndarray:
        y = np.zeros(self.model.size)
        for m in self.modes:
            y += m.amplitude * math.sin(m.omega * t + m.phase) * m.shape_floats()
        for d in self.drifts:
            y += (d.offset + d.rate * t) * d.shape_floats()
        return y

    def derivative(self, t: float) -> np.ndarray:
        v = np.zeros(self.model.size)
        for m in self.modes:
            v += (
                m.amplitude * m.omega * math.cos(m.omega * t + m.phase)
            ) * m.shape_floats()
        for d in self.drifts:
            v += d.rate * d.shape_floats()
        return v

    def energy(self, t: float) -> float:
        """(1/2)(y'^T A y' + y^T B y); constant along the motion."""
        y, v = self.evaluate(t), self.derivative(t)
        A = self.model.mass.to_numpy()
        B = self.model.stiffness.to_numpy()
        return 0.5 * float(v @ A @ v + y @ B @ y)

    def amplitude_bound(self, t_max: float = 0.0) -> float:
        """Explicit sup-norm bound: sum |E| * ||shape||_inf, plus drift
        growth up to t_max."""
        bound = sum(
            abs(m.amplitude) * float(np.max(np.abs(m.shape_floats())))
            for m in self.modes
        )
        bound += sum(
            (abs(d.offset) + abs(d.rate) * t_max)
            * float(np.max(np.abs(d.shape_floats())))
            for d in self.drifts
        )
        return float(bound)

    def min_omega(self) -> float:
        return min((m.omega for m in self.modes), default=0.0)


def solve_modal(
    model: MechModel, ic: InitialConditions, path: str = "auto"
) -> ModalSolution:
    """Fit the mode superposition to initial positions and velocities.

    Requires a symmetric couple with positive definite A and real
    non-negative frequency roots; K = 0 roots produce flagged drift terms.
    Projections p = v^T A Y / v^T A v and q = v^T A V / v^T A v give
    amplitude E = sqrt(p^2 + (q/omega)^2) and phase atan2(p, q/omega).
    """
    if ic.size != model.size or len(ic.velocities) != model.size:
        raise PreconditionError("initial conditions have the wrong dimension")
    if not model.mass.is_positive_definite():
        raise PreconditionError(
            "modal solution needs a positive definite kinetic matrix"
        )
    dec = spectral_decompose(model.pencil(), path=path)
    for root in dec.roots:
        if root_sign(root) < 0:
            raise PreconditionError(
                "negative squared frequency: the equilibrium is not"
                " oscillatory (see the stability classifier)"
            )
    exact = dec.path == "exact"
    A = model.mass
    Af = A.to_numpy()
    Y = np.array([float(x) for x in ic.positions])
    V = np.array([float(x) for x in ic.velocities])
    modes: list[Mode] = []
    drifts: list[DriftMode] = []
    for root, vectors, norms in zip(dec.roots, dec.vectors, dec.sq_norms):
        for v, nv in zip(vectors, norms):
            if exact:
                p = _project_exact(A, v, ic.positions, nv)
                q = _project_exact(A, v, ic.velocities, nv)
                p, q = float(p), float(q)
            else:
                vf = np.array(v)
                p = float(vf @ Af @ Y) / float(nv)
                q = float(vf @ Af @ V) / float(nv)
            if root_sign(root) == 0:
                drifts.append(DriftMode(v, nv, p, q))
                continue
            omega = math.sqrt(root.as_float())
            amplitude = math.hypot(p, q / omega)
            phase = math.atan2(p, q / omega) % (2 * math.pi)
            modes.append(Mode(root, omega, v, nv, amplitude, phase))
    return ModalSolution(model, tuple(modes), tuple(drifts), dec.path)


def _project_exact(A: RatMatrix, v, target, sq_norm: Fraction) -> Fraction:
    Av = A.apply(target)
    num = sum((Fraction(x) * y for x, y in zip(v, Av)), Fraction(0))
    return num / sq_norm


# ---------------------------------------------------------------------------
# first-order systems: generalized eigenstructure, projectors, exponential
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanBlock:
    """Solution slice e^(sigma t) * (cos/sin carrier) * psi(t).

    sigma = sigma_re + i*sigma_im; for real sigma the sin coefficients are
    empty.  cos_coeffs[k] (and sin_coeffs[k]) are the vector coefficients of
    t^k; the factorials are already folded in.
    """

    sigma_re: Fraction | float
    sigma_im: float
    chain_length: int
    cos_coeffs: tuple[tuple, ...]
    sin_coeffs: tuple[tuple, ...] = ()

    def psi_degree(self) -> int:
        """Largest power of t with a nonzero coefficient (-1 if none)."""
        deg = -1
        for k, c in enumerate(self.cos_coeffs):
            if any(x != 0 for x in c):
                deg = k
        for k, c in enumerate(self.sin_coeffs):
            if any(x != 0 for x in c):
                deg = max(deg, k)
        return deg

    def evaluate(self, t: float, n: int) -> np.ndarray:
        out = np.zeros(n)
        carrier = math.exp(float(self.sigma_re) * t)
        cos_t = math.cos(self.sigma_im * t) if self.sigma_im else 1.0
        sin_t = math.sin(self.sigma_im * t) if self.sigma_im else 0.0
        poly_cos = np.zeros(n)
        tk = 1.0
        for c in self.cos_coeffs:
            poly_cos += tk * np.array([float(x) for x in c])
            tk *= t
        out += carrier * cos_t * poly_cos
        if self.sin_coeffs:
            poly_sin = np.zeros(n)
            tk = 1.0
            for c in self.sin_coeffs:
                poly_sin += tk * np.array([float(x) for x in c])
                tk *= t
            out += carrier * sin_t * poly_sin
        return out


@dataclass(frozen=True)
class JordanSolution:
    matrix: RatMatrix
    blocks: tuple[JordanBlock, ...]
    path: str

    @property
    def size(self) -> int:
        return self.matrix.rows

    def evaluate(self, t: float) -> np.ndarray:
        out = np.zeros(self.size)
        for b in self.blocks:
            out += b.evaluate(t, self.size)
        return out

    def verify_exact(self) -> bool:
        """Exact residual check sigma*psi + psi' = M psi per real block."""
        if self.path != "exact":
            raise PreconditionError("exact verification needs the exact path")
        for b in self.blocks:
            coeffs = [list(c) for c in b.cos_coeffs]
            deg = len(coeffs) - 1
            for k in range(deg + 1):
                lhs = [Fraction(b.sigma_re) * x for x in coeffs[k]]
                if k + 1 <= deg:
                    lhs = [
                        l + Fraction(k + 1) * x for l, x in zip(lhs, coeffs[k + 1])
                    ]
                rhs = self.matrix.apply(coeffs[k])
                if tuple(lhs) != tuple(rhs):
                    return False
        return True


def _matrix_power_apply(M: RatMatrix, k: int, v) -> tuple:
    out = tuple(Fraction(x) for x in v)
    for _ in range(k):
        out = M.apply(out)
    return out


def _rational_eigenvalues(M: RatMatrix) -> list[RealRoot]:
    charpoly = Pencil.similarity(M).char_poly()
    return sturm_isolate(charpoly)


def spectral_projectors(
    M: RatMatrix,
) -> list[tuple[Fraction, int, int, RatMatrix]]:
    """Exact spectral projectors of a matrix with rational eigenvalues.

    Returns (eigenvalue, algebraic multiplicity, chain length, projector).
    The projectors come from the Bezout identity behind the partial-fraction
    split of 1/charpoly: with F = prod (x - sigma_i)^(m_i), write
    1 = sum N_i * F/(x - sigma_i)^(m_i); then p_i = (N_i * F_i)(M).  Chain
    lengths are read off iterated nullspaces of (M - sigma*I)^k.
    """
    n = M.rows
    roots = _rational_eigenvalues(M)
    if sum(r.multiplicity for r in roots) != n or any(
        not r.is_exact for r in roots
    ):
        raise PathUnavailableError(
            "spectral projectors need all-rational eigenvalues; use the"
            " floating Jordan path instead"
        )
    charpoly = Pencil.similarity(M).char_poly()
    projectors = []
    ident = RatMatrix.identity(n)
    for root in roots:
        sigma, m = root.value, root.multiplicity
        lin_pow = Poly([-sigma, 1]) ** m
        cofactor = charpoly // lin_pow
        # N = cofactor^{-1} mod (x - sigma)^m via extended Euclid
        N = _invert_mod(cofactor, lin_pow)
        proj_poly = (N * cofactor) % charpoly
        P = _poly_of_matrix(proj_poly, M)
        # chain length via iterated nullspaces of (M - sigma I)^k
        shifted = M - ident.scale(sigma)
        power = ident
        chain = m
        for k in range(1, m + 1):
            power = power @ shifted
            if n - power.rank() == m:
                chain = k
                break
        projectors.append((sigma, m, chain, P))
    return projectors


def _invert_mod(a: Poly, modulus: Poly) -> Poly:
    """a^{-1} mod modulus for coprime arguments (extended Euclid)."""
    r0, r1 = modulus, a % modulus
    s0, s1 = Poly(), Poly([1])
    while not r1.is_zero():
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0.degree() != 0:
        raise InternalError("arguments not coprime in modular inverse")
    return (s0.scale(Fraction(1) / r0.leading())) % modulus


def _poly_of_matrix(p: Poly, M: RatMatrix) -> RatMatrix:
    n = M.rows
    out = RatMatrix.zeros(n, n)
    power = RatMatrix.identity(n)
    for k, c in enumerate(p.coeffs):
        if k:
            power = power @ M
        if c:
            out = out + power.scale(c)
    return out


def solve_jordan(M: RatMatrix, ic, path: str = "auto") -> JordanSolution:
    """General solution of dx/dt = M x fitted to x(0).

    Exact path (rational eigenvalues): per eigenvalue sigma with chain length
    r, the block is e^(sigma t) * sum_k (M - sigma I)^k p_sigma x0 t^k / k!,
    k < r.  Floating path: eigen-decomposition with complex pairs combined
    into real sin/cos blocks; defective floating matrices are rejected, the
    exact path handles those.
    """
    if not M.is_square:
        raise PreconditionError("system matrix must be square")
    if path not in ("auto", "exact", "float"):
        raise PreconditionError(f"unknown arithmetic path {path!r}")
    n = M.rows
    x0 = tuple(Fraction(v) for v in ic)
    if len(x0) != n:
        raise PreconditionError("initial vector has the wrong dimension")
    use_exact = path != "float"
    projectors = None
    if use_exact:
        try:
            projectors = spectral_projectors(M)
        except PathUnavailableError:
            if path == "exact":
                raise
            projectors = None
    if projectors is not None:
        blocks = []
        for sigma, _m, chain, P in projectors:
            px = P.apply(x0)
            coeffs = []
            for k in range(chain):
                ck = _matrix_power_apply(M - RatMatrix.identity(n).scale(sigma), k, px)
                coeffs.append(tuple(c / factorial(k) for c in ck))
            blocks.append(JordanBlock(sigma, 0.0, chain, tuple(coeffs)))
        return JordanSolution(M, tuple(blocks), "exact")
    # floating path
    Mf = M.to_numpy()
    eigvals, eigvecs = np.linalg.eig(Mf)
    if np.linalg.cond(eigvecs) > 1e8:
        raise PathUnavailableError(
            "defective (or nearly defective) matrix on the floating path;"
            " the exact path is required for non-diagonalizable systems"
        )
    c = np.linalg.solve(eigvecs, np.array([float(v) for v in x0], dtype=complex))
    blocks = []
    used = [False] * n
    order = sorted(range(n), key=lambda i: (eigvals[i].real, abs(eigvals[i].imag)))
    for i in order:
        if used[i]:
            continue
        lam = eigvals[i]
        vec = c[i] * eigvecs[:, i]
        if abs(lam.imag) < 1e-12:
            used[i] = True
            blocks.append(
                JordanBlock(
                    float(lam.real), 0.0, 1, (tuple(float(x.real) for x in vec),)
                )
            )
            continue
        # complex pair: find the conjugate partner
        j = next(
            k
            for k in range(n)
            if not used[k] and k != i and abs(eigvals[k] - lam.conjugate()) < 1e-8
        )
        used[i] = used[j] = True
        b = abs(lam.imag)
        if lam.imag < 0:
            vec = (c[j] * eigvecs[:, j])
        cos_part = tuple(float(2 * x.real) for x in vec)
        sin_part = tuple(float(-2 * x.imag) for x in vec)
        blocks.append(
            JordanBlock(float(lam.real), float(b), 1, (cos_part,), (sin_part,))
        )
    return JordanSolution(M, tuple(blocks), "float")


def expm_projectors(M: RatMatrix, t: float) -> np.ndarray:
    """exp(M t) assembled from exact spectral projectors.

    exp(M t) = sum_i e^(sigma_i t) (sum_{k < r_i} (M - sigma_i I)^k t^k / k!) p_i.
    The projector algebra (p_i^2 = p_i, sum p_i = I) is exact; only the final
    scalar exponentials are floating point.  Irrational eigenvalues are
    rejected toward the floating Jordan path.
    """
    n = M.rows
    out = np.zeros((n, n))
    ident = RatMatrix.identity(n)
    for sigma, _m, chain, P in spectral_projectors(M):
        shifted = M - ident.scale(sigma)
        term = P
        acc = term.to_numpy()
        tk = 1.0
        for k in range(1, chain):
            term = shifted @ term
            tk *= t / k
            acc = acc + term.to_numpy() * tk
        out += math.exp(float(sigma) * t) * acc
    return out


# ---------------------------------------------------------------------------
# scalar ODEs via residues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarTerm:
    """coefficient terms x^power e^(alpha x) (c_cos cos(beta x) + c_sin sin(beta x))."""

    alpha: float
    beta: float
    power: int
    cos_coeff: float
    sin_coeff: float

    def evaluate(self, x: float) -> float:
        osc = self.cos_coeff * math.cos(self.beta * x) + self.sin_coeff * math.sin(
            self.beta * x
        )
        return x**self.power * math.exp(self.alpha * x) * osc


@dataclass(frozen=True)
class ScalarSolution:
    terms: tuple[ScalarTerm, ...]

    def evaluate(self, x: float) -> float:
        return sum(term.evaluate(x) for term in self.terms)


def scalar_residue_solve(F: Poly, ic) -> ScalarSolution:
    """Solve F(d/dx) y = 0 with y(0), y'(0), ... given.

    The basis solutions are the residue contributions of e^(r x)/F(r): each
    root r of multiplicity m contributes x^k e^(r x), k < m, with complex
    pairs folded into real sin/cos terms.  Coefficients are fitted to the
    initial data by solving the derivative system at x = 0.
    """
    if F.is_zero() or F.degree() < 1:
        raise PreconditionError("degenerate characteristic polynomial")
    ic = [float(v) for v in ic]
    n = F.degree()
    if len(ic) != n:
        raise PreconditionError("need exactly deg(F) initial values")
    # enumerate roots: exact multiplicity structure, floating values
    from .polynomials import squarefree_decompose

    basis: list[tuple[complex, int, str]] = []  # (root, power, "re"|"im"|"real")
    for part, mult in squarefree_decompose(F):
        coeffs = [float(c) for c in part.coeffs]
        roots = np.roots(coeffs[::-1]) if part.degree() >= 1 else []
        handled = set()
        for r in sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
            if abs(r.imag) < 1e-9:
                r = complex(r.real, 0.0)
                for k in range(mult):
                    basis.append((r, k, "real"))
            else:
                key = (round(r.real, 9), round(abs(r.imag), 9))
                if key in handled:
                    continue
                handled.add(key)
                r = complex(r.real, abs(r.imag))
                for k in range(mult):
                    basis.append((r, k, "re"))
                    basis.append((r, k, "im"))
    if len(basis) != n:
        raise InternalError("basis enumeration does not match the degree")
    # derivative of x^k e^(rx) at 0 of order j is C(j, k) k! r^(j-k)
    system = np.zeros((n, n))
    for col, (r, k, part) in enumerate(basis):
        for j in range(n):
            if j < k:
                continue
            val = math.comb(j, k) * factorial(k) * r ** (j - k)
            if part in ("real", "re"):
                system[j, col] = val.real
            else:
                # d/dx commutes with Im: derivatives of Im[x^k e^(rx)]
                system[j, col] = val.imag
    coeffs = np.linalg.solve(system, np.array(ic))
    terms = []
    for (r, k, part), c in zip(basis, coeffs):
        if abs(c) < 1e-14:
            continue
        if part == "real":
            terms.append(ScalarTerm(float(r.real), 0.0, k, float(c), 0.0))
        elif part == "re":
            terms.append(ScalarTerm(float(r.real), float(r.imag), k, float(c), 0.0))
        else:
            terms.append(ScalarTerm(float(r.real), float(r.imag), k, 0.0, float(c)))
    return ScalarSolution(tuple(terms))


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityVerdict:
    historical: str  # "stable" | "unstable" | "conditional"
    historical_rule: str
    corrected: str  # "stable" | "unstable"
    corrected_rule: str
    agreement: bool


_HISTORICAL_RULES = {
    "stable": (
        "lagrange-1766 case 1: all characteristic roots real, negative and"
        " unequal, so the equilibrium is stable for any initial disturbance"
    ),
    "unstable": (
        "lagrange-1766 case 2: roots all real positive, all imaginary, or a"
        " mix of positive and imaginary, so the equilibrium has no stability"
    ),
    "conditional": (
        "lagrange-1766 case 3: roots partly real negative unequal and partly"
        " equal, positive or imaginary, so only a restricted, conditional"
        " stability"
    ),
}


def classify_stability(model: MechModel) -> StabilityVerdict:
    """Dual report: the historical root-nature trichotomy next to the
    corrected symmetry/definiteness rule.

    The historical cases are stated for the exponential-ansatz roots
    rho^2 = -K: case 1 (stable) needs every K real, positive and simple;
    case 2 (no stability) is the all-bad mix with no good root at all;
    everything else -- including repeated or zero K -- is case 3
    (conditional).  The corrected rule: stable iff the couple is symmetric,
    A positive definite and B positive semidefinite, regardless of root
    multiplicity.
    """
    pencil = model.pencil()
    charpoly = pencil.char_poly()
    if charpoly.is_zero():
        raise PreconditionError("singular frequency pencil")
    roots = sturm_isolate(charpoly)
    n_complex = charpoly.degree() - sum(r.multiplicity for r in roots)

    positive_simple = sum(
        1 for r in roots if root_sign(r) > 0 and r.multiplicity == 1
    )
    positive_multiple = sum(
        1 for r in roots if root_sign(r) > 0 and r.multiplicity > 1
    )
    zero = sum(1 for r in roots if root_sign(r) == 0)
    negative = sum(1 for r in roots if root_sign(r) < 0)

    if n_complex == 0 and zero == 0 and negative == 0 and positive_multiple == 0:
        historical = "stable"
    elif positive_simple == 0 and positive_multiple == 0 and zero == 0:
        historical = "unstable"
    else:
        historical = "conditional"

    from .invariants import inertia

    symmetric = pencil.is_symmetric()
    a_pd = model.mass.is_positive_definite()
    b_psd = symmetric and inertia(model.stiffness).negatives == 0
    corrected = "stable" if (symmetric and a_pd and b_psd) else "unstable"
    corrected_rule = (
        "weierstrass-1858: a symmetric couple with positive definite kinetic"
        " matrix and positive semidefinite stiffness stays bounded whether or"
        " not the characteristic roots are distinct"
        if corrected == "stable"
        else "weierstrass-1858: symmetry/definiteness condition violated;"
        " some solution grows without bound"
    )
    return StabilityVerdict(
        historical,
        _HISTORICAL_RULES[historical],
        corrected,
        corrected_rule,
        historical == corrected,
    )


# ---------------------------------------------------------------------------
# trajectory sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    times: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]  # one row per time
    sup_norm: float


def time_grid(t_max: float, steps: int) -> tuple[float, ...]:
    if steps < 1 or t_max < 0:
        raise PreconditionError("grid needs t_max >= 0 and steps >= 1")
    return tuple(t_max * k / steps for k in range(steps + 1))


def sample_trajectory(solution, times) -> Trajectory:
    """Evaluate a closed-form solution on a time grid, reporting the grid
    sup-norm used by the stability checks."""
    rows = []
    sup = 0.0
    for t in times:
        y = solution.evaluate(float(t))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        sup = max(sup, float(np.max(np.abs(y))) if y.size else 0.0)
        rows.append(tuple(float(v) for v in y))
    return Trajectory(tuple(float(t) for t in times), tuple(rows), sup)
