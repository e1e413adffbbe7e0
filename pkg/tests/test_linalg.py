import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exatlas.linalg import (
    DimensionError,
    PrimeDivisorError,
    RationalMatrix,
    integer_rows,
    is_negative_definite,
    is_positive_definite,
    is_probable_prime,
    ldl_pivots,
    nullspace_basis,
    nullspace_of_rows,
    principal_minor_signs,
    rank,
    rank_modular_probe,
    rational_reconstruct,
)

PRIME31 = 2**31 - 1  # Mersenne prime, comfortably above 2**30


def mat(rows):
    return RationalMatrix.from_rows(rows)


class TestRationalMatrix:
    def test_shape_validation(self):
        with pytest.raises(DimensionError):
            RationalMatrix(2, 2, (1, 2, 3))
        with pytest.raises(DimensionError):
            mat([[1, 2], [3]])

    def test_entry_and_row(self):
        m = mat([[1, Fraction(1, 2)], [3, 4]])
        assert m.entry(0, 1) == Fraction(1, 2)
        assert m.row(1) == (3, 4)
        assert m.column(0) == (1, 3)

    def test_matmul_and_transpose(self):
        a = mat([[1, 2], [3, 4]])
        b = mat([[0, 1], [1, 0]])
        assert (a @ b) == mat([[2, 1], [4, 3]])
        assert a.transpose() == mat([[1, 3], [2, 4]])

    def test_add_sub_scale(self):
        a = mat([[1, 2], [3, 4]])
        assert (a + a) == a.scale(2)
        assert (a - a).is_zero()
        with pytest.raises(DimensionError):
            a + mat([[1, 2, 3]])

    def test_identity_matvec(self):
        i3 = RationalMatrix.identity(3)
        assert i3.matvec((5, Fraction(1, 3), -2)) == (5, Fraction(1, 3), -2)

    def test_hash_eq(self):
        assert mat([[1]]) == mat([[Fraction(1)]])
        assert hash(mat([[1]])) == hash(mat([[Fraction(1)]]))


class TestRank:
    def test_identity(self):
        assert rank(RationalMatrix.identity(3)) == 3

    def test_all_ones(self):
        assert rank(mat([[1, 1], [1, 1]])) == 1

    def test_rational_entries(self):
        assert rank(mat([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])) == 1

    def test_empty_matrix_rejected(self):
        with pytest.raises(DimensionError):
            rank(RationalMatrix(0, 0, ()))


class TestNullspace:
    def test_identity_empty(self):
        assert nullspace_basis(RationalMatrix.identity(3)) == []

    def test_sign_difference(self):
        basis = nullspace_basis(mat([[1, -1]]))
        assert basis == [(Fraction(1), Fraction(1))]

    def test_vectors_satisfy_system(self):
        rng = random.Random(5)
        rows = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(3)]
        m = mat(rows)
        for v in nullspace_basis(m):
            assert all(s == 0 for s in m.matvec(v))

    def test_free_column_pattern(self):
        m = mat([[1, 2, 3], [0, 0, 1]])
        (v,) = nullspace_basis(m)
        assert v == (Fraction(-2), Fraction(1), Fraction(0))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=4, max_size=4),
        min_size=1,
        max_size=5,
    )
)
def test_rank_plus_nullity(rows):
    m = mat(rows)
    assert rank(m) + len(nullspace_basis(m)) == m.cols


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
        min_size=2,
        max_size=5,
    ),
    st.randoms(use_true_random=False),
)
def test_rank_invariant_under_row_ops(rows, rnd):
    m = mat(rows)
    r = rank(m)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    scaled = []
    for row in shuffled:
        s = Fraction(rnd.choice([1, 2, 3, -1, -5]), rnd.choice([1, 2, 7]))
        scaled.append([s * v for v in row])
    assert rank(mat(scaled)) == r


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4),
        min_size=1,
        max_size=4,
    )
)
def test_modular_probe_bounds_rank(rows):
    m = mat(rows)
    assert rank_modular_probe(m, PRIME31) <= rank(m)


class TestModularProbe:
    def test_identity(self):
        assert rank_modular_probe(RationalMatrix.identity(3), PRIME31) == 3

    def test_sign_difference(self):
        assert rank_modular_probe(mat([[1, -1]]), PRIME31) == 1

    def test_prime_divides_denominator(self):
        m = mat([[Fraction(1, PRIME31)]])
        with pytest.raises(PrimeDivisorError):
            rank_modular_probe(m, PRIME31)

    def test_prime_validation(self):
        with pytest.raises(ValueError):
            rank_modular_probe(mat([[1]]), 97)  # too small
        with pytest.raises(ValueError):
            rank_modular_probe(mat([[1]]), 2**31 - 2)  # not prime

    def test_probe_can_undershoot(self):
        # the single entry vanishes mod p, so the probe sees rank 0
        m = mat([[PRIME31]])
        assert rank_modular_probe(m, PRIME31) == 0
        assert rank(m) == 1


class TestModularNullspacePath:
    def test_tall_system_matches_exact(self):
        # replicate a small system until it crosses the modular threshold
        rng = random.Random(11)
        base = [[rng.randint(-3, 3) for _ in range(9)] for _ in range(12)]
        tall = [list(r) for r in base * 120]  # 1440 rows
        sparse = integer_rows(mat(tall))
        assert len(sparse) > 1000
        got, rank_got = nullspace_of_rows(sparse, 9)
        want, rank_want = nullspace_of_rows(integer_rows(mat(base)), 9, force_exact=True)
        assert rank_got == rank_want
        assert got == want

    def test_half_integer_entries(self):
        rng = random.Random(13)
        base = [
            [Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(7)]
            for _ in range(6)
        ]
        tall = base * 200
        got, r1 = nullspace_of_rows(integer_rows(mat(tall)), 7)
        want, r2 = nullspace_of_rows(integer_rows(mat(base)), 7, force_exact=True)
        assert (got, r1) == (want, r2)


class TestRationalReconstruction:
    @pytest.mark.parametrize(
        "value",
        [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-3, 7),
         Fraction(355, 113), Fraction(-1000, 3)],
    )
    def test_round_trip(self, value):
        p = PRIME31
        residue = value.numerator * pow(value.denominator, p - 2, p) % p
        assert rational_reconstruct(residue, p) == value

    def test_unreconstructible(self):
        # a residue corresponding to a huge numerator/denominator pair
        p = PRIME31
        assert rational_reconstruct(123456789, p) != Fraction(123456789)


class TestPrimality:
    def test_known_primes(self):
        assert is_probable_prime(2)
        assert is_probable_prime(PRIME31)
        assert not is_probable_prime(2**31 - 3)
        assert not is_probable_prime(1)
        # strong pseudoprime to several bases
        assert not is_probable_prime(3215031751)


class TestDefiniteness:
    def test_negative_definite(self):
        m = mat([[-2, 1], [1, -2]])
        assert is_negative_definite(m)
        assert principal_minor_signs(m) == [-1, 1]

    def test_positive_definite(self):
        assert is_positive_definite(RationalMatrix.identity(4))

    def test_indefinite(self):
        m = mat([[1, 0], [0, -1]])
        assert not is_negative_definite(m)
        assert not is_positive_definite(m)

    def test_singular_not_definite(self):
        m = mat([[0, 0], [0, -1]])
        assert not is_negative_definite(m)

    def test_empty_form_vacuously_definite(self):
        empty = RationalMatrix(0, 0, ())
        assert is_negative_definite(empty)
        assert is_positive_definite(empty)

    def test_requires_symmetry(self):
        with pytest.raises(DimensionError):
            ldl_pivots(mat([[1, 2], [3, 4]]))
