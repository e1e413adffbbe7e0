import random

import numpy as np
import pytest

from exatlas.algebras import DEFAULT_SEED, complex_algebra, octonions, quaternions, real_algebra
from exatlas.jordan import jordan_algebra
from exatlas.lie import (
    InvalidInvolutionError,
    Involution,
    LieAlgebraBasis,
    bracket,
    cartan_split,
    derivation_algebra,
    diagonal_sign_involution,
    doubled_half_reflection,
    flat_rank,
    generic_rank,
    induced_involution,
    killing_form,
    leibniz_constraint_matrix,
    named_derivation_algebra,
)
from exatlas.linalg import (
    ComputationCancelled,
    DimensionError,
    RationalMatrix,
    is_negative_definite,
    nullspace_basis,
    rank,
    rank_modular_probe,
)


def leibniz_defect_oracle(algebra, d_matrix, x_coords, y_coords):
    """Independent check of D(xy) = D(x)y + xD(y) via element arithmetic."""
    x = algebra.element(x_coords)
    y = algebra.element(y_coords)
    dx = algebra.element(d_matrix.matvec(x_coords))
    dy = algebra.element(d_matrix.matvec(y_coords))
    lhs = algebra.element(d_matrix.matvec((x * y).coeffs))
    rhs = dx * y + x * dy
    return lhs - rhs


class TestDerivationDimensions:
    def test_complex_has_no_derivations(self):
        assert derivation_algebra(complex_algebra()).dim == 0

    def test_reals_have_no_derivations(self):
        assert derivation_algebra(real_algebra()).dim == 0

    def test_quaternions(self, der_h):
        assert der_h.dim == 3

    def test_octonions(self, der_o):
        assert der_o.dim == 14

    def test_j3r(self):
        assert named_derivation_algebra("j3r").dim == 3

    def test_j3c(self):
        assert named_derivation_algebra("j3c").dim == 8

    def test_j3h(self):
        assert named_derivation_algebra("j3h").dim == 21

    def test_j3o(self, der_j3o):
        assert der_j3o.dim == 52


class TestDerivationCertificates:
    def test_leibniz_oracle_on_octonion_derivations(self, der_o):
        rng = random.Random(DEFAULT_SEED)
        o = octonions()
        for d_matrix in der_o.basis[:4]:
            for _ in range(10):
                x = tuple(rng.randint(-5, 5) for _ in range(8))
                y = tuple(rng.randint(-5, 5) for _ in range(8))
                assert leibniz_defect_oracle(o, d_matrix, x, y).is_zero()

    def test_leibniz_oracle_on_j3o_derivations(self, der_j3o, j3o):
        rng = random.Random(DEFAULT_SEED)
        for d_matrix in der_j3o.basis[:3]:
            for _ in range(5):
                x = tuple(rng.randint(-3, 3) for _ in range(27))
                y = tuple(rng.randint(-3, 3) for _ in range(27))
                assert leibniz_defect_oracle(j3o, d_matrix, x, y).is_zero()

    def test_derivations_kill_the_unit(self, der_o, der_j3o, j3o):
        for d_matrix in der_o.basis:
            assert not any(d_matrix.matvec(octonions().unit_coords))
        for d_matrix in der_j3o.basis:
            assert not any(d_matrix.matvec(j3o.unit_coords))

    def test_basis_is_canonical_echelon(self, der_o):
        flat = [
            [m.entry(i, j) for i in range(8) for j in range(8)] for m in der_o.basis
        ]
        for t, fc in enumerate(der_o.free_coords):
            for s in range(len(flat)):
                assert flat[s][fc] == (1 if s == t else 0)

    def test_constraint_matrix_shape_and_rank(self, der_h):
        m = leibniz_constraint_matrix(quaternions())
        assert m.shape == (40, 16)
        assert rank(m) == 16 - 3

    def test_j3o_constraint_matrix_rank(self, j3o):
        m = leibniz_constraint_matrix(j3o)
        assert m.shape == (10206, 729)
        assert rank(m) == 729 - 52
        assert rank_modular_probe(m, 2**31 - 1) == 677
        assert len(nullspace_basis(m)) == 52


class TestBracket:
    def test_self_bracket_vanishes(self, der_o):
        d = der_o.basis[0]
        assert bracket(d, d).is_zero()

    def test_shape_mismatch(self, der_o, der_h):
        with pytest.raises(DimensionError):
            bracket(der_o.basis[0], der_h.basis[0])

    def test_closure_coordinates_exact(self, der_o):
        b = bracket(der_o.basis[0], der_o.basis[1])
        coords = der_o.coords_of(b)
        assert coords == der_o.bracket_in_basis(0, 1)

    def test_structure_constants_antisymmetric(self, der_o):
        d = der_o.dim
        for a in range(d):
            for b in range(a, d):
                ab = der_o.bracket_in_basis(a, b)
                ba = der_o.bracket_in_basis(b, a)
                assert all(u == -v for u, v in zip(ab, ba))

    def test_jacobi_identity(self, der_o):
        rng = random.Random(DEFAULT_SEED)
        picks = [tuple(rng.randrange(der_o.dim) for _ in range(3)) for _ in range(10)]
        for a, b, c in picks:
            x, y, z = (der_o.basis[t] for t in (a, b, c))
            total = (
                bracket(x, bracket(y, z))
                + bracket(y, bracket(z, x))
                + bracket(z, bracket(x, y))
            )
            assert total.is_zero()

    def test_coords_of_rejects_outsiders(self, der_o):
        with pytest.raises(ValueError):
            der_o.coords_of(RationalMatrix.identity(8))


class TestKillingForm:
    def test_symmetric(self, der_o):
        assert killing_form(der_o).is_symmetric()

    def test_so3_negative_definite(self, der_h):
        assert is_negative_definite(killing_form(der_h))

    def test_g2_negative_definite_full_rank(self, der_o):
        kf = killing_form(der_o)
        assert is_negative_definite(kf)
        assert rank(kf) == 14

    def test_trivial_algebra_vacuous(self):
        kf = killing_form(derivation_algebra(complex_algebra()))
        assert kf.shape == (0, 0)
        assert is_negative_definite(kf)

    def test_j3_cases_negative_definite(self, der_j3o):
        for name in ("j3r", "j3c", "j3h"):
            assert is_negative_definite(killing_form(named_derivation_algebra(name)))
        assert is_negative_definite(killing_form(der_j3o))


class TestInducedInvolution:
    def test_identity_automorphism(self, der_o):
        theta = induced_involution(octonions(), RationalMatrix.identity(8), der_o)
        assert theta == RationalMatrix.identity(14)

    def test_quaternion_fixing_reflection(self, der_o):
        sigma = doubled_half_reflection(octonions())
        theta = induced_involution(octonions(), sigma, der_o)
        assert theta @ theta == RationalMatrix.identity(14)
        fixed = nullspace_basis(theta - RationalMatrix.identity(14))
        assert len(fixed) == 6

    def test_non_automorphism_rejected(self, der_o):
        bad = RationalMatrix(
            8, 8,
            ((1 if i == j else 0) if i < 7 else (-1 if i == j else 0)
             for i in range(8) for j in range(8)),
        )
        # negating only e7 breaks e.g. e1 * e6 = e7
        with pytest.raises(InvalidInvolutionError):
            induced_involution(octonions(), bad, der_o)

    def test_non_involution_rejected(self, der_o):
        scale = RationalMatrix(8, 8, (2 if i == j else 0 for i in range(8) for j in range(8)))
        with pytest.raises(InvalidInvolutionError):
            induced_involution(octonions(), scale, der_o)

    def test_certified_involution_accepted(self, der_o):
        sigma = Involution.certify(octonions(), doubled_half_reflection(octonions()))
        theta = induced_involution(octonions(), sigma, der_o)
        assert theta @ theta == RationalMatrix.identity(14)

    def test_certify_rejects_bad_maps(self):
        shear = RationalMatrix.from_rows(
            [[1, 1] + [0] * 6] + [[1 if i == j else 0 for j in range(8)] for i in range(1, 8)]
        )
        with pytest.raises(InvalidInvolutionError):
            Involution.certify(octonions(), shear)

    def test_certified_for_wrong_algebra_rejected(self, der_o):
        sigma = Involution.certify(quaternions(), doubled_half_reflection(quaternions()))
        with pytest.raises(InvalidInvolutionError):
            induced_involution(octonions(), sigma, der_o)

    def test_j3o_diagonal_conjugation(self, der_j3o, j3o):
        sigma = diagonal_sign_involution(j3o, (-1, 1, 1))
        theta = induced_involution(j3o, sigma, der_j3o)
        fixed = nullspace_basis(theta - RationalMatrix.identity(52))
        assert len(fixed) == 36


class TestCartanSplit:
    def test_identity_gives_trivial_split(self, der_o):
        pair = cartan_split(der_o, RationalMatrix.identity(14))
        assert pair.dims == (14, 0)

    def test_g2_split(self, der_o):
        sigma = doubled_half_reflection(octonions())
        theta = induced_involution(octonions(), sigma, der_o)
        pair = cartan_split(der_o, theta)
        assert pair.dims == (6, 8)
        assert pair.pp_spans_k
        assert pair.kp_spans_p

    def test_f4_split(self, der_j3o, j3o):
        sigma = diagonal_sign_involution(j3o, (-1, 1, 1))
        theta = induced_involution(j3o, sigma, der_j3o)
        pair = cartan_split(der_j3o, theta)
        assert pair.dims == (36, 16)
        assert pair.pp_spans_k
        assert pair.kp_spans_p

    def test_swap_map_rejected(self, der_h):
        # exchanging two so(3) basis vectors is involutive but not an automorphism
        swap = RationalMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        with pytest.raises(InvalidInvolutionError):
            cartan_split(der_h, swap)

    def test_non_involutive_rejected(self, der_h):
        shear = RationalMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        with pytest.raises(InvalidInvolutionError):
            cartan_split(der_h, shear)


def _abelian_lie(dim: int) -> LieAlgebraBasis:
    """Commuting diagonal matrices: every bracket vanishes."""
    basis = tuple(
        RationalMatrix(dim, dim, (1 if (i == j == t) else 0 for i in range(dim) for j in range(dim)))
        for t in range(dim)
    )
    d_int = np.zeros((dim, dim, dim), dtype=np.int64)
    for t in range(dim):
        d_int[t, t, t] = 1
    return LieAlgebraBasis(
        algebra=None,
        ambient_dim=dim,
        basis=basis,
        free_coords=tuple(t * dim + t for t in range(dim)),
        _d_int=d_int,
        _d_scale=1,
        _f_int=np.zeros((dim, dim, dim), dtype=np.int64),
        _f_scale=1,
    )


class TestGenericRank:
    def test_abelian_everything_central(self):
        assert generic_rank(_abelian_lie(2)) == 2

    def test_so3_rank_one(self, der_h):
        assert generic_rank(der_h) == 1

    def test_so3_rank_via_explicit_kernel(self, der_h):
        # oracle: kernel of the ad matrix of a fixed generic element
        coords = (1, 2, 3)
        ad = der_h.ad_matrix(coords)
        assert len(nullspace_basis(ad)) == 1

    def test_g2_rank_two(self, der_o):
        assert generic_rank(der_o) == 2

    def test_f4_rank_four(self, der_j3o):
        assert generic_rank(der_j3o) == 4

    def test_more_trials_never_increase(self, der_o):
        few = generic_rank(der_o, trials=1, rng=random.Random(3))
        many = generic_rank(der_o, trials=5, rng=random.Random(3))
        assert many <= few

    def test_trials_validated(self, der_o):
        with pytest.raises(ValueError):
            generic_rank(der_o, trials=0)


class TestFlatRank:
    def test_g2_space_rank_two(self, der_o):
        sigma = doubled_half_reflection(octonions())
        pair = cartan_split(der_o, induced_involution(octonions(), sigma, der_o))
        assert flat_rank(pair) == 2

    def test_f4_space_rank_one(self, der_j3o, j3o):
        sigma = diagonal_sign_involution(j3o, (-1, 1, 1))
        pair = cartan_split(der_j3o, induced_involution(j3o, sigma, der_j3o))
        assert flat_rank(pair) == 1


class TestCancellation:
    def test_cancel_token_interrupts(self):
        fresh = jordan_algebra(quaternions())
        with pytest.raises(ComputationCancelled):
            derivation_algebra(fresh, cancel=lambda: True)
