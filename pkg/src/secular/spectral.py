"""Characteristic roots and eigenvectors of matrix pencils.

The exact path evaluates the characteristic matrix at a rational root and
reads eigenvectors off the adjugate (first non-null column) or off an exact
nullspace.  Isolated irrational roots route to a floating path: the interval
is refined to width 10^-30, the characteristic matrix is evaluated at the
midpoint, and nullspaces are taken with a relative singular-value threshold
of 10^-10.

For a symmetric pencil whose leading matrix is definite, every root is real
and vectors of distinct roots are orthogonal in both matrices of the couple;
`cauchy_orthogonality` re-verifies that identity on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InternalError, PathUnavailableError, PreconditionError
from .matrices import Pencil, RatMatrix
from .polynomials import Poly
from .realroots import RealRoot, refine_root, sturm_isolate

__all__ = [
    "SpectralDecomposition",
    "OrthogonalityReport",
    "QFactor",
    "char_roots",
    "adjugate_eigenvector",
    "nullspace_at_root",
    "cauchy_orthogonality",
    "q_factor",
    "spectral_decompose",
    "FLOAT_ROOT_WIDTH",
    "FLOAT_NULL_THRESHOLD",
]

FLOAT_ROOT_WIDTH = Fraction(1, 10**30)
FLOAT_NULL_THRESHOLD = 1e-10


@dataclass(frozen=True)
class SpectralDecomposition:
    """Roots with per-root vector systems.

    Exact-path vectors are unnormalized Fraction tuples with their squared
    norms (in the weight matrix) recorded; floating-path vectors are
    unit-norm float tuples.
    """

    roots: tuple[RealRoot, ...]
    vectors: tuple[tuple[tuple, ...], ...]  # per root, a tuple of column vectors
    sq_norms: tuple[tuple, ...]  # per root, squared weight-norms of the vectors
    orthonormal: bool
    path: str  # "exact" | "float"

    def all_vectors(self):
        for root, vecs in zip(self.roots, self.vectors):
            for v in vecs:
                yield root, v


@dataclass(frozen=True)
class OrthogonalityReport:
    pairs_checked: int
    max_violation: Fraction | float
    ok: bool


@dataclass(frozen=True)
class QFactor:
    """Deflated characteristic value at a simple root.

    deflated_value = (P / (x - root))(root) = P'(root); the overall scale
    convention is fixed to 1.
    """

    root: RealRoot
    deflated_value: Fraction | float
    scale: int = 1


def char_roots(pencil: Pencil, target_width=FLOAT_ROOT_WIDTH) -> list[RealRoot]:
    """All real characteristic roots with multiplicities, sorted.

    Rejects singular pencils.  When the pencil is symmetric with a definite
    leading matrix, every root must be real; a shortfall in total
    multiplicity would contradict that theorem and raises InternalError.
    """
    charpoly = pencil.char_poly()
    if charpoly.is_zero():
        raise PreconditionError(
            "singular pencil (determinant identically zero)"
        )
    roots = sturm_isolate(charpoly, target_width)
    if pencil.is_symmetric() and _is_definite(pencil.leading()):
        if sum(r.multiplicity for r in roots) != charpoly.degree():
            raise InternalError(
                "symmetric definite pencil produced complex roots; this"
                " contradicts the real-root theorem and signals a bug"
            )
    return roots


def _is_definite(M: RatMatrix) -> bool:
    if not M.is_symmetric():
        return False
    minors = M.leading_principal_minors()
    pos = all(d > 0 for d in minors)
    neg = all((d > 0) == (k % 2 == 1) for k, d in enumerate(minors))
    return pos or neg


def _root_point(root: RealRoot) -> Fraction:
    """Rational evaluation point: the root itself, or a refined midpoint."""
    if root.is_exact:
        return root.value
    return refine_root(root, FLOAT_ROOT_WIDTH).approx()


def _decide_path(root: RealRoot, path: str) -> str:
    if path not in ("auto", "exact", "float"):
        raise PreconditionError(f"unknown arithmetic path {path!r}")
    if path == "exact" and not root.is_exact:
        raise PathUnavailableError(
            "exact path requested but the root is irrational; use the"
            " floating path"
        )
    if path == "auto":
        return "exact" if root.is_exact else "float"
    return path


def _sign_normalize(vec: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next((v for v in vec if v != 0), None)
    if lead is not None and lead < 0:
        return tuple(-v for v in vec)
    return vec


def adjugate_eigenvector(pencil: Pencil, root: RealRoot, path: str = "auto"):
    """Eigenvector as the first non-null column of the adjugate of the
    characteristic matrix at the root.

    Exact path: satisfies (characteristic matrix)(root) @ v = 0 exactly; the
    vector is sign-normalized (first nonzero entry positive).  An all-zero
    adjugate means the root has higher geometric multiplicity; use
    `nullspace_at_root` then.
    """
    mode = _decide_path(root, path)
    if mode == "exact":
        M0 = pencil.evaluate(root.value)
        adj = M0.adjugate()
        for j in range(adj.cols):
            col = adj.col(j)
            if any(v != 0 for v in col):
                return _sign_normalize(col)
        raise PreconditionError(
            "adjugate vanishes at this root (geometric multiplicity > 1);"
            " use nullspace_at_root"
        )
    M0 = pencil.evaluate(_root_point(root)).to_numpy()
    n = M0.shape[0]
    # float adjugate through cofactors of the evaluated matrix
    adj = np.zeros((n, n))
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            sub = M0[np.ix_([r for r in idx if r != i], [c for c in idx if c != j])]
            adj[j, i] = (-1) ** (i + j) * (np.linalg.det(sub) if n > 1 else 1.0)
    scale = np.max(np.abs(adj))
    if scale == 0:
        raise PreconditionError(
            "adjugate vanishes at this root (geometric multiplicity > 1);"
            " use nullspace_at_root"
        )
    for j in range(n):
        col = adj[:, j]
        if np.max(np.abs(col)) > FLOAT_NULL_THRESHOLD * scale:
            col = col / np.linalg.norm(col)
            lead = col[np.argmax(np.abs(col) > FLOAT_NULL_THRESHOLD)]
            if lead < 0:
                col = -col
            return tuple(float(x) for x in col)
    raise PreconditionError("adjugate numerically vanishes at this root")


def _float_nullspace(M: np.ndarray, threshold: float = FLOAT_NULL_THRESHOLD):
    _, s, vh = np.linalg.svd(M)
    cutoff = threshold * (s[0] if s.size and s[0] > 0 else 1.0)
    basis = []
    for k in range(M.shape[1]):
        sv = s[k] if k < s.size else 0.0
        if sv <= cutoff:
            v = vh[k]
            lead = v[int(np.argmax(np.abs(v) > 1e-12))]
            if lead < 0:
                v = -v
            basis.append(tuple(float(x) for x in v))
    return basis


def nullspace_at_root(pencil: Pencil, root: RealRoot, path: str = "auto"):
    """Exact (or floating) basis of the nullspace of the characteristic
    matrix at a root; its size is the geometric multiplicity."""
    mode = _decide_path(root, path)
    if mode == "exact":
        M0 = pencil.evaluate(root.value)
        return [_sign_normalize(v) for v in M0.nullspace()]
    M0 = pencil.evaluate(_root_point(root)).to_numpy()
    return _float_nullspace(M0)


def cauchy_orthogonality(dec: SpectralDecomposition, B: RatMatrix) -> OrthogonalityReport:
    """Verify v_i^T B v_j = 0 across vectors of distinct roots.

    On the exact path any nonzero product is reported as a failure; on the
    floating path the largest magnitude is reported against a 1e-9 gate.
    """
    exact = dec.path == "exact"
    worst: Fraction | float = Fraction(0) if exact else 0.0
    pairs = 0
    groups = list(zip(dec.roots, dec.vectors))
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            for v in groups[a][1]:
                for w in groups[b][1]:
                    pairs += 1
                    if exact:
                        val = abs(_bilinear(B, v, w))
                        worst = max(worst, val)
                    else:
                        Bf = B.to_numpy()
                        val = abs(float(np.array(v) @ Bf @ np.array(w)))
                        worst = max(worst, val)
    ok = (worst == 0) if exact else (worst <= 1e-9)
    return OrthogonalityReport(pairs, worst, ok)


def _bilinear(B: RatMatrix, v, w) -> Fraction:
    return sum(
        (Fraction(v[i]) * B.entry(i, j) * Fraction(w[j])
         for i in range(B.rows) for j in range(B.cols)),
        Fraction(0),
    )


def q_factor(p: Poly, root: RealRoot) -> QFactor:
    """Deflate the characteristic polynomial by its simple root.

    Returns (p / (x - root))(root), cross-checked against the derivative
    shortcut p'(root); multiple roots must go through the Jordan-form path.
    """
    if root.multiplicity != 1:
        raise PreconditionError(
            "q-factor deflation needs a simple root; multiple roots are"
            " handled by the Jordan-form solver"
        )
    if root.is_exact:
        quotient, rem = divmod(p, Poly([-root.value, 1]))
        if not rem.is_zero():
            raise PreconditionError("the given value is not a root")
        value = quotient.evaluate(root.value)
        if value != p.derivative().evaluate(root.value):
            raise InternalError("deflation disagrees with the derivative shortcut")
        return QFactor(root, value)
    x = _root_point(root)
    return QFactor(root, float(p.derivative().evaluate(x)))


def _gram_schmidt_exact(vectors, W: RatMatrix):
    """W-orthogonalize exact vectors (no normalization); returns vectors with
    their squared W-norms."""
    out = []
    norms = []
    for v in vectors:
        v = list(Fraction(x) for x in v)
        for u, nu in zip(out, norms):
            c = _bilinear(W, u, v) / nu
            if c:
                v = [a - c * b for a, b in zip(v, u)]
        v = _sign_normalize(tuple(v))
        nv = _bilinear(W, v, v)
        if nv == 0:
            raise InternalError("degenerate weight norm during orthogonalization")
        out.append(tuple(v))
        norms.append(nv)
    return out, norms


def _gram_schmidt_float(vectors, W: np.ndarray):
    out = []
    for v in vectors:
        v = np.array(v, dtype=float)
        for u in out:
            v = v - (u @ W @ v) / (u @ W @ u) * u
        v = v / np.sqrt(abs(v @ W @ v))
        out.append(v)
    return [tuple(float(x) for x in v) for v in out], [1.0] * len(out)


def spectral_decompose(pencil: Pencil, path: str = "auto") -> SpectralDecomposition:
    """Full per-root vector systems for a symmetric pencil.

    Vectors within a repeated root are orthogonalized in the leading matrix
    of the pencil; across distinct roots that orthogonality holds
    automatically for symmetric pencils.
    """
    roots = char_roots(pencil)
    if path == "exact" and any(not r.is_exact for r in roots):
        raise PathUnavailableError(
            "exact decomposition requested but some characteristic roots are"
            " irrational"
        )
    mode = "exact" if (path != "float" and all(r.is_exact for r in roots)) else "float"
    W = pencil.leading()
    vectors = []
    norms = []
    for root in roots:
        basis = nullspace_at_root(pencil, root, path=mode)
        if mode == "exact":
            vs, ns = _gram_schmidt_exact(basis, W)
        else:
            vs, ns = _gram_schmidt_float(basis, W.to_numpy())
        vectors.append(tuple(vs))
        norms.append(tuple(ns))
    return SpectralDecomposition(
        roots=tuple(roots),
        vectors=tuple(vectors),
        sq_norms=tuple(norms),
        orthonormal=(mode == "float"),
        path=mode,
    )
