"""Exact integer/rational linear algebra primitives."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmag.matrices import (
    IntegerMatrix,
    MatrixError,
    NonSquareError,
    SingularMatrixError,
    cramer_solve,
    determinant,
    determinant_cofactor,
    format_matrix,
    format_rational,
    infinity_norm,
    nullspace_basis,
    parse_matrix,
    primitive_vector,
    rank,
    solve_unique,
)

small_entries = st.integers(min_value=-9, max_value=9)


def square(rows):
    return IntegerMatrix.from_rows(rows)


class TestDeterminant:
    def test_known_values(self):
        assert determinant(square([[5, 2], [2, 4]])) == 16
        assert determinant(square([[1]])) == 1
        assert determinant(square([[1, 2], [3, 4]])) == -2
        assert determinant(square([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])) == 4
        assert determinant(square([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0

    def test_identity_and_swap(self):
        ident = square([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert determinant(ident) == 1
        swapped = square([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert determinant(swapped) == -1

    def test_cofactor_matches_bareiss_randomized(self):
        rng = random.Random(20260823)
        for _ in range(400):
            n = rng.randint(1, 6)
            m = square([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
            assert determinant(m) == determinant_cofactor(m)

    def test_transpose_invariance(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(1, 5)
            m = square([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
            assert determinant(m) == determinant(m.transpose())

    def test_nonsquare_rejected(self):
        with pytest.raises(NonSquareError):
            determinant(IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))

    def test_big_integer_exactness(self):
        # diag(10^20, 10^20) would overflow any fixed-width arithmetic
        big = 10**20
        m = square([[big, 1], [0, big]])
        assert determinant(m) == big * big


class TestRank:
    def test_known_values(self):
        assert rank(IntegerMatrix.from_rows([[1, 2], [2, 4]])) == 1
        assert rank(IntegerMatrix.from_rows([[1, 1, 1]])) == 1
        assert rank(IntegerMatrix.from_rows([[1, 0], [0, 1]])) == 2
        assert rank(IntegerMatrix.from_rows([[0, 0], [0, 0]])) == 0

    def test_rank_transpose_and_scaling(self):
        rng = random.Random(11)
        for _ in range(200):
            m_, n_ = rng.randint(1, 4), rng.randint(1, 5)
            a = IntegerMatrix.from_rows(
                [[rng.randint(-4, 4) for _ in range(n_)] for _ in range(m_)]
            )
            r = rank(a)
            assert r == rank(a.transpose())
            doubled = IntegerMatrix.from_rows([[2 * v for v in row] for row in a.entries])
            assert rank(doubled) == r
            assert r <= min(m_, n_)

    def test_rank_plus_nullity(self):
        rng = random.Random(13)
        for _ in range(200):
            m_, n_ = rng.randint(1, 4), rng.randint(1, 6)
            a = IntegerMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(n_)] for _ in range(m_)]
            )
            assert rank(a) + len(nullspace_basis(a)) == n_


class TestNullspace:
    def test_basis_vectors_are_null_and_primitive(self):
        rng = random.Random(17)
        for _ in range(200):
            m_, n_ = rng.randint(1, 3), rng.randint(2, 6)
            a = IntegerMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(n_)] for _ in range(m_)]
            )
            for v in nullspace_basis(a):
                assert all(val == 0 for val in a.apply(v))
                assert primitive_vector(v) == v

    def test_full_rank_trivial(self):
        assert nullspace_basis(IntegerMatrix.from_rows([[1, 0], [0, 1]])) == []


class TestPrimitiveVector:
    def test_examples(self):
        assert primitive_vector([Fraction(1, 2), 3, -6]) == (1, 6, -12)
        assert primitive_vector([-2, 4, -6]) == (1, -2, 3)
        assert primitive_vector([0, -3, 0, 6]) == (0, 1, 0, -2)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            primitive_vector([0, 0])

    @given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6))
    @settings(max_examples=200, deadline=None)
    def test_properties(self, xs):
        if all(v == 0 for v in xs):
            return
        p = primitive_vector(xs)
        # integer, content 1, canonical sign, parallel to the input
        import math

        assert all(isinstance(v, int) for v in p)
        assert math.gcd(*(abs(v) for v in p)) == 1
        first = next(v for v in p if v != 0)
        assert first > 0
        # cross-ratios agree: xs[i] * p[j] == xs[j] * p[i]
        for i in range(len(xs)):
            for j in range(len(xs)):
                assert Fraction(xs[i]) * p[j] == Fraction(xs[j]) * p[i]


class TestSolvers:
    def test_unique_solution(self):
        a = square([[2, 1], [1, 3]])
        x = solve_unique(a, [5, 10])
        assert x == (Fraction(1), Fraction(3))
        assert cramer_solve(a, [5, 10]) == x

    def test_agreement_randomized(self):
        rng = random.Random(23)
        done = 0
        while done < 150:
            n = rng.randint(1, 5)
            a = square([[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)])
            if determinant(a) == 0:
                continue
            b = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            x = solve_unique(a, b)
            assert cramer_solve(a, b) == x
            assert list(a.apply(x)) == [Fraction(v) for v in b]
            done += 1

    def test_singular_rejected(self):
        a = square([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError):
            solve_unique(a, [1, 1])
        with pytest.raises(SingularMatrixError):
            cramer_solve(a, [1, 1])


class TestTextFormat:
    def test_parse_basic(self):
        a = parse_matrix("2 3\n1 -2 3\n0 5 -6\n")
        assert a.entries == ((1, -2, 3), (0, 5, -6))

    def test_comments_and_unicode_minus(self):
        a = parse_matrix("# chain\n1 2\n3 −4\n")
        assert a.entries == ((3, -4),)

    def test_round_trip(self):
        rng = random.Random(29)
        for _ in range(50):
            m_, n_ = rng.randint(1, 4), rng.randint(1, 4)
            a = IntegerMatrix.from_rows(
                [[rng.randint(-99, 99) for _ in range(n_)] for _ in range(m_)]
            )
            assert parse_matrix(format_matrix(a)) == a

    def test_bad_input(self):
        for text in ["", "2 2\n1 2\n", "1 2\n1 2 3\n", "1 1\nx\n"]:
            with pytest.raises(MatrixError):
                parse_matrix(text)

    def test_format_rational(self):
        assert format_rational(Fraction(3, 2)) == "3/2"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(7) == "7"


class TestMatrixOps:
    def test_delete_row_col_and_gram(self):
        a = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
        assert a.delete_row_col(0, 1).entries == ((4, 6), (7, 10))
        g = IntegerMatrix.from_rows([[1, 0, 1], [0, 2, 0]]).gram()
        assert g.entries == ((2, 0), (0, 4))

    def test_replace_column(self):
        a = IntegerMatrix.from_rows([[1, 2], [3, 4]])
        assert a.replace_column(1, [9, 8]).entries == ((1, 9), (3, 8))

    def test_infinity_norm(self):
        assert infinity_norm(IntegerMatrix.from_rows([[1, -2], [3, 1]])) == 4
        assert infinity_norm(IntegerMatrix.from_rows([[0, 0]])) == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            IntegerMatrix.from_rows([])
        with pytest.raises(ValueError):
            IntegerMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(ValueError):
            IntegerMatrix.from_rows([[1.5]])
