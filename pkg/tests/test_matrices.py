import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secular.errors import PreconditionError
from secular.matrices import (
    Pencil,
    PolyMatrix,
    RatMatrix,
    adjugate_pencil,
    det_pencil,
    det_rational,
    minor,
    transpose_check,
)
from secular.polynomials import Poly

from oracles import cofactor_det_poly, cofactor_det_rat

NOTE23 = RatMatrix.from_rows([[1, -1, 0], [-1, 2, 1], [0, 1, 1]])


def random_poly_matrix(rng, n, degree=1, span=4):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            row.append(Poly([rng.randint(-span, span) for _ in range(degree + 1)]))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


class TestRationalDet:
    def test_identity(self):
        assert det_rational(RatMatrix.identity(3)) == 1

    def test_two_by_two(self):
        assert det_rational(RatMatrix.from_rows([[1, 2], [2, 1]])) == -3

    def test_singular_symmetric(self):
        assert det_rational(NOTE23) == 0

    def test_non_square_rejected(self):
        with pytest.raises(PreconditionError):
            det_rational(RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))

    @given(
        st.lists(
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                     min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        )
    )
    @settings(max_examples=50)
    def test_matches_cofactor_oracle(self, rows):
        M = RatMatrix.from_rows(rows)
        assert det_rational(M) == cofactor_det_rat(M)


class TestPencilDet:
    def test_note23_classical(self):
        p = Pencil.classical(NOTE23).char_poly()
        assert p == Poly([0, -3, 4, -1])

    def test_repeated_identity(self):
        p = Pencil.similarity(RatMatrix.identity(2)).char_poly()
        assert p == Poly([1, -2, 1])

    def test_two_form_pencil(self):
        phi = RatMatrix.from_rows([[2, 1], [1, 2]])
        p = Pencil(phi, RatMatrix.identity(2), "sA-B").char_poly()
        assert p == Poly([1, -4, 3])

    def test_interpolation_matches_cofactor_oracle(self):
        rng = random.Random(7)
        for n in (2, 3, 4):
            P = random_poly_matrix(rng, n)
            assert det_pencil(P) == cofactor_det_poly(P)

    def test_zero_row_shortcut(self):
        P = PolyMatrix.from_rows([[Poly(), Poly()], [Poly([1]), Poly([1])]])
        assert det_pencil(P).is_zero()

    def test_higher_degree_entries(self):
        rng = random.Random(31)
        P = random_poly_matrix(rng, 3, degree=2)
        assert det_pencil(P) == cofactor_det_poly(P)
        Q = PolyMatrix.from_rows(
            [[Poly([0, 0, 1]), Poly([1])], [Poly([-1]), Poly([2, 3])]]
        )
        # det = x^2(3x + 2) + 1
        assert det_pencil(Q) == Poly([1, 0, 2, 3])


class TestMinor:
    def setup_method(self):
        self.P = Pencil.classical(NOTE23).char_matrix()

    def test_drop_first_row_col(self):
        # (1-x)(2-x) - 1 = x^2 - 3x + 1
        assert minor(self.P, [0], [0]) == Poly([1, -3, 1])

    def test_corner_constant(self):
        assert minor(self.P, [0], [2]) == Poly([-1])

    def test_single_entry(self):
        got = minor(self.P, [0, 1], [1, 2])
        assert got == self.P.entry(2, 0)

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            minor(self.P, [3], [0])


class TestAdjugate:
    def test_diag_pencil(self):
        P = Pencil.similarity(RatMatrix.identity(2)).char_matrix()
        adj = adjugate_pencil(P)
        assert adj.entry(0, 0) == Poly([-1, 1])
        assert adj.entry(1, 1) == Poly([-1, 1])
        assert adj.entry(0, 1).is_zero() and adj.entry(1, 0).is_zero()

    def test_note23_top_left(self):
        adj = adjugate_pencil(Pencil.classical(NOTE23).char_matrix())
        # first column evaluated at a root is an eigenvector
        assert adj.entry(0, 0) == Poly([1, -3, 1])
        assert adj.entry(1, 0) == Poly([1, -1])
        assert adj.entry(2, 0) == Poly([-1])

    def test_identity_on_random_pencils(self):
        rng = random.Random(23)
        for n in (2, 3, 4):
            P = random_poly_matrix(rng, n)
            adj = adjugate_pencil(P)
            prod = P.mul(adj)
            d = det_pencil(P)
            for i in range(n):
                for j in range(n):
                    expected = d if i == j else Poly()
                    assert prod.entry(i, j) == expected

    def test_symmetric_pencil_symmetric_adjugate(self):
        phi = RatMatrix.from_rows([[2, 1], [1, 2]])
        P = Pencil(phi, RatMatrix.identity(2), "sA-B").char_matrix()
        assert adjugate_pencil(P).is_symmetric()

    def test_size_guard(self):
        big = PolyMatrix.from_constant(RatMatrix.identity(9))
        with pytest.raises(PreconditionError):
            adjugate_pencil(big)


class TestTranspose:
    def test_random_pencil(self):
        rng = random.Random(5)
        for _ in range(5):
            A = RatMatrix.from_rows(
                [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            )
            B = RatMatrix.from_rows(
                [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            )
            assert transpose_check(Pencil(A, B, "sA-B"))

    def test_symmetric_and_note23(self):
        assert transpose_check(Pencil.classical(NOTE23))
        phi = RatMatrix.from_rows([[2, 1], [1, 2]])
        assert transpose_check(Pencil(phi, RatMatrix.identity(2), "sA-B"))


class TestRatMatrixAlgebra:
    def test_nullspace_rank(self):
        # det(NOTE23) = 0: one-dimensional kernel along (1, 1, -1)
        basis = NOTE23.nullspace()
        assert len(basis) == 1
        assert NOTE23.apply(basis[0]) == (0, 0, 0)
        assert NOTE23.rank() == 2

    def test_adjugate_identity(self):
        M = RatMatrix.from_rows([[1, 2], [3, 4]])
        prod = M @ M.adjugate()
        assert prod == RatMatrix.diagonal([-2, -2])

    def test_inverse(self):
        M = RatMatrix.from_rows([[1, 2], [3, 4]])
        assert M @ M.inverse() == RatMatrix.identity(2)

    def test_leading_principal_minors(self):
        assert NOTE23.leading_principal_minors() == [1, 1, 0]
