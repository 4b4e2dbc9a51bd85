import random
from fractions import Fraction

import numpy as np
import pytest

from secular.errors import PathUnavailableError, PreconditionError
from secular.invariants import inertia
from secular.matrices import RatMatrix
from secular.polynomials import Poly
from secular.quadpairs import (
    QuadraticPair,
    ThetaComponent,
    ThetaDecomposition,
    remarkable_circumstance_check,
    theta_components,
    verify_theorem,
)


def pair_of(phi_rows, psi_rows) -> QuadraticPair:
    return QuadraticPair.checked(
        RatMatrix.from_rows(phi_rows), RatMatrix.from_rows(psi_rows)
    )


def planted_pair(rng: random.Random, n: int, spectrum) -> tuple[QuadraticPair, dict]:
    """Construct (Phi, Psi) with known components.

    Phi = L^T L + I for a random integer L; a random basis is
    Phi-orthogonalized exactly, each direction w contributes the rank-one
    piece Phi w w^T Phi / (w^T Phi w), and Psi plants `spectrum` on those
    pieces.  Ground truth: theta at root s = sum of pieces with spectrum s.
    """
    while True:
        L = RatMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        )
        phi = L.transpose() @ L + RatMatrix.identity(n)
        basis = []
        candidate = [
            [Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)
        ]
        ok = True
        for raw in candidate:
            v = list(raw)
            for u in basis:
                num = _phi_dot(phi, u, v)
                den = _phi_dot(phi, u, u)
                c = num / den
                v = [a - c * b for a, b in zip(v, u)]
            if all(x == 0 for x in v):
                ok = False
                break
            basis.append(tuple(v))
        if ok:
            break
    pieces = []
    for w in basis:
        pw = phi.apply(w)
        norm = _phi_dot(phi, w, w)
        piece = RatMatrix.from_rows(
            [[pw[i] * pw[j] / norm for j in range(n)] for i in range(n)]
        )
        pieces.append(piece)
    psi = RatMatrix.zeros(n, n)
    truth: dict[Fraction, RatMatrix] = {}
    for s, piece in zip(spectrum, pieces):
        s = Fraction(s)
        psi = psi + piece.scale(s)
        truth[s] = truth.get(s, RatMatrix.zeros(n, n)) + piece
    return QuadraticPair.checked(phi, psi), truth


def _phi_dot(phi: RatMatrix, u, v) -> Fraction:
    pu = phi.apply(v)
    return sum((Fraction(a) * b for a, b in zip(u, pu)), Fraction(0))


class TestCircumstance:
    def test_identity_pair_double_root(self):
        report = remarkable_circumstance_check(
            pair_of([[1, 0], [0, 1]], [[1, 0], [0, 1]])
        )
        assert report.ok
        assert report.records[0][1] == 2

    def test_planted_double_root_diag(self):
        report = remarkable_circumstance_check(
            pair_of(
                [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                [[2, 0, 0], [0, 2, 0], [0, 0, 5]],
            )
        )
        assert report.ok
        mults = sorted(m for _, m, _ in report.records)
        assert mults == [1, 2]

    def test_random_planted_double(self):
        rng = random.Random(42)
        pair, _ = planted_pair(rng, 3, [2, 2, 5])
        assert remarkable_circumstance_check(pair).ok


class TestThetaComponents:
    def test_diagonal_split(self):
        dec = theta_components(pair_of([[1, 0], [0, 1]], [[3, 0], [0, 7]]))
        assert dec.path == "exact"
        thetas = {c.root.value: c.theta for c in dec.components}
        assert thetas[3] == RatMatrix.diagonal([1, 0])
        assert thetas[7] == RatMatrix.diagonal([0, 1])

    def test_multiple_root_without_branching(self):
        dec = theta_components(pair_of([[1, 0], [0, 1]], [[1, 0], [0, 1]]))
        assert len(dec.components) == 1
        c = dec.components[0]
        assert c.multiplicity == 2
        assert c.theta == RatMatrix.identity(2)

    def test_two_by_two_derived(self):
        pair = pair_of([[2, 1], [1, 2]], [[1, 0], [0, 1]])
        dec = theta_components(pair)
        assert [c.root.value for c in dec.components] == [Fraction(1, 3), 1]
        t1, t2 = (c.theta for c in dec.components)
        half = Fraction(1, 2)
        assert t1 == RatMatrix.from_rows([[3 * half, 3 * half], [3 * half, 3 * half]])
        assert t2 == RatMatrix.from_rows([[half, -half], [-half, half]])
        assert t1 + t2 == pair.phi
        assert t1.scale(Fraction(1, 3)) + t2 == pair.psi

    def test_scalar_pair(self):
        dec = theta_components(pair_of([[5]], [[3]]))
        assert dec.components[0].theta == RatMatrix.from_rows([[5]])
        assert dec.components[0].root.value == Fraction(3, 5)

    def test_planted_ground_truth(self):
        rng = random.Random(7)
        for spectrum in ([1, 2, 3], [2, 2, 5], [4, 4, 4]):
            pair, truth = planted_pair(rng, 3, spectrum)
            dec = theta_components(pair)
            assert dec.path == "exact"
            got = {c.root.value: c.theta for c in dec.components}
            assert got == truth

    def test_partial_fraction_completeness(self):
        rng = random.Random(19)
        pair, _ = planted_pair(rng, 3, [1, 2, 2])
        dec = theta_components(pair)
        phi_inv = pair.phi.inverse()
        sum_r = RatMatrix.zeros(3, 3)
        sum_sr = RatMatrix.zeros(3, 3)
        for c in dec.components:
            R = phi_inv @ c.theta @ phi_inv
            # residues kill the pencil at their root
            M0 = pair.phi.scale(c.root.value) - pair.psi
            assert M0 @ R == RatMatrix.zeros(3, 3)
            sum_r = sum_r + R
            sum_sr = sum_sr + R.scale(c.root.value)
        assert sum_r == phi_inv
        assert sum_sr == phi_inv @ pair.psi @ phi_inv

    def test_negative_definite_phi(self):
        pair = QuadraticPair.checked(
            RatMatrix.diagonal([-1, -2]), RatMatrix.diagonal([-3, -8])
        )
        assert pair.definiteness == "negative"
        dec = theta_components(pair)
        total = RatMatrix.zeros(2, 2)
        for c in dec.components:
            total = total + c.theta
            rep = inertia(-c.theta)
            assert rep.negatives == 0  # -theta is PSD for negative phi
        assert total == pair.phi
        assert [c.root.value for c in dec.components] == [3, 4]

    def test_indefinite_phi_rejected(self):
        # det(s*Phi - Psi) = -s^2 - 1 has complex roots; the pair is refused
        # up front rather than silently computed
        phi = RatMatrix.diagonal([1, -1])
        psi = RatMatrix.from_rows([[0, 1], [1, 0]])
        from secular.matrices import Pencil

        assert Pencil(phi, psi, "sA-B").char_poly() == Poly([-1, 0, -1])
        with pytest.raises(PreconditionError, match="definite"):
            QuadraticPair.checked(phi, psi)
        with pytest.raises(PreconditionError, match="definite"):
            QuadraticPair.checked(RatMatrix.diagonal([1, -1]), RatMatrix.identity(2))

    def test_exact_path_unavailable_for_irrational_roots(self):
        pair = pair_of([[1, 0], [0, 1]], [[1, 1], [1, 2]])
        with pytest.raises(PathUnavailableError):
            theta_components(pair, path="exact")
        dec = theta_components(pair)
        assert dec.path == "float"
        report = verify_theorem(dec, pair)
        assert report.ok

    def test_negative_definite_float_path(self):
        # negative phi with irrational pencil roots goes through negation
        # plus the floating residue path
        pair = QuadraticPair.checked(
            RatMatrix.diagonal([-1, -1]), RatMatrix.from_rows([[-1, -1], [-1, -2]])
        )
        assert pair.definiteness == "negative"
        dec = theta_components(pair)
        assert dec.path == "float"
        report = verify_theorem(dec, pair)
        assert report.ok

    def test_float_path_multiplicity_robust(self):
        # a double root and its 1e-6 perturbation give nearby decompositions
        rng = random.Random(99)
        pair_double, _ = planted_pair(rng, 3, [2, 2, 5])
        eps = Fraction(1, 10**6)
        rng = random.Random(99)  # same construction, perturbed spectrum
        pair_near, _ = planted_pair(rng, 3, [2, 2 + eps, 5])
        dec_double = theta_components(pair_double, path="float")
        dec_near = theta_components(pair_near, path="float")
        merged = np.zeros((3, 3))
        for c in dec_near.components:
            if abs(c.root.as_float() - 2) < 1e-3:
                merged += c.theta_numpy()
        target = next(
            c.theta_numpy()
            for c in dec_double.components
            if abs(c.root.as_float() - 2) < 1e-3
        )
        assert np.max(np.abs(merged - target)) < 1e-4


class TestVerifyTheorem:
    def test_examples_pass(self):
        for phi, psi in (
            ([[1, 0], [0, 1]], [[3, 0], [0, 7]]),
            ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
            ([[2, 1], [1, 2]], [[1, 0], [0, 1]]),
        ):
            pair = pair_of(phi, psi)
            report = verify_theorem(theta_components(pair), pair)
            assert report.ok

    def test_tampered_decomposition_fails(self):
        pair = pair_of([[2, 1], [1, 2]], [[1, 0], [0, 1]])
        dec = theta_components(pair)
        first = dec.components[0]
        tampered = ThetaDecomposition(
            (
                ThetaComponent(first.root, first.multiplicity, first.theta.scale(2)),
            )
            + dec.components[1:],
            dec.path,
            dec.size,
        )
        report = verify_theorem(tampered, pair)
        assert not report.ok
        assert report.phi_residual > 0
