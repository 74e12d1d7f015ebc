import cmath
import math
import warnings

import numpy as np
import pytest

from majorana_pairs import (
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    RandomSource,
    SeriesTruncation,
    anticomm_series,
    canonical_pair,
    conjugation_identities,
    determinant,
    exp_involution,
    exp_kron_pair,
    exp_nilpotent,
    exp_product,
    expm_oracle,
    kron,
    nilpotent,
    random_pair,
)
from majorana_pairs.closed_form import anticomm_series_info, conjugate
from majorana_pairs.errors import DimensionMismatch, NotInvolution, TruncationNotConverged
from majorana_pairs.matrix_core import identity

from conftest import random_complex, rel_err

LN2_MATRIX = np.array([[5 / 4, 3 / 4], [3 / 4, 5 / 4]])


class TestExpInvolution:
    def test_zero(self):
        assert np.array_equal(exp_involution(SIGMA_1, 0), identity(2))

    def test_ln2(self):
        assert np.allclose(exp_involution(SIGMA_1, math.log(2)), LN2_MATRIX, rtol=0, atol=1e-15)

    @pytest.mark.parametrize("seed", [1, 2])
    def test_i_pi_is_minus_identity(self, seed):
        p = random_pair(4, RandomSource(seed))
        e = exp_involution(p.a, 1j * math.pi)
        assert np.linalg.norm(e + identity(4)) <= 1e-14
        assert rel_err(e, expm_oracle(1j * math.pi * p.a)) <= 1e-12

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            exp_involution(2 * SIGMA_1, 1)

    def test_group_law(self):
        a = random_pair(4, RandomSource(5)).a
        z1, z2 = 0.7 - 1.1j, -2.0 + 0.4j
        lhs = exp_involution(a, z1) @ exp_involution(a, z2)
        assert rel_err(lhs, exp_involution(a, z1 + z2)) <= 1e-12


class TestExpProduct:
    def test_zero(self, sigma_pair):
        assert np.array_equal(exp_product(sigma_pair, 0), identity(2))

    def test_half_pi(self, sigma_pair):
        # AB = sigma_1 (-sigma_2) = -i sigma_3
        assert np.allclose(exp_product(sigma_pair, math.pi / 2), np.diag([-1j, 1j]), rtol=0, atol=1e-15)

    def test_det_is_one(self):
        p = random_pair(6, RandomSource(4))
        assert abs(determinant(exp_product(p, 1)) - 1) <= 1e-10

    def test_periodicity(self):
        p = random_pair(4, RandomSource(6))
        assert np.linalg.norm(exp_product(p, 2 * math.pi) - identity(4)) <= 1e-11
        assert np.linalg.norm(exp_product(p, math.pi) + identity(4)) <= 1e-11

    def test_matches_oracle(self, sigma_pair):
        z = 1.3 - 0.8j
        ab = sigma_pair.a @ sigma_pair.b
        assert rel_err(exp_product(sigma_pair, z), expm_oracle(z * ab)) <= 1e-12


class TestExpKronPair:
    def test_zero(self, sigma_pair):
        assert np.array_equal(exp_kron_pair(sigma_pair, 0), identity(4))

    def test_z_one(self, sigma_pair):
        expected = math.cosh(1) * identity(4) + math.sinh(1) * kron(SIGMA_1, -SIGMA_2)
        assert np.allclose(exp_kron_pair(sigma_pair, 1), expected, rtol=0, atol=1e-15)
        assert rel_err(expected, expm_oracle(kron(SIGMA_1, -SIGMA_2))) <= 1e-12

    def test_kron_square_is_identity(self, sigma_pair):
        k = kron(sigma_pair.a, sigma_pair.b)
        assert np.array_equal(k @ k, identity(4))


class TestExpNilpotent:
    def test_zero(self, sigma_pair):
        assert np.array_equal(exp_nilpotent(sigma_pair, 0), identity(2))

    def test_one(self, sigma_pair):
        assert np.array_equal(exp_nilpotent(sigma_pair, 1), np.array([[1, 0], [2, 1]]))

    @pytest.mark.parametrize("n", [2, 4])
    def test_large_z(self, n):
        p = random_pair(n, RandomSource(50 + n))
        z = 50
        assert rel_err(exp_nilpotent(p, z), expm_oracle(z * nilpotent(p))) <= 1e-12


class TestAnticommSeries:
    def test_zero_x(self):
        assert np.array_equal(anticomm_series(np.zeros((2, 2)), SIGMA_1), SIGMA_1)

    def test_certified_pair_returns_b(self):
        p = canonical_pair(4)
        assert np.array_equal(anticomm_series(p.a, p.b), p.b)
        q = random_pair(4, RandomSource(1))
        assert np.linalg.norm(anticomm_series(q.a, q.b) - q.b) <= 1e-14

    def test_sigma3_half(self):
        x = SIGMA_3 / 2
        ref = expm_oracle(x) @ SIGMA_1 @ expm_oracle(x)
        assert rel_err(anticomm_series(x, SIGMA_1), ref) <= 1e-12

    def test_commuting_case(self):
        # X and Y commute: e^X Y e^X = Y e^{2X}
        x = np.diag([0.3, -0.2, 0.1j])
        y = np.diag([1.0, 2.0, -1.0])
        assert rel_err(anticomm_series(x, y), y @ expm_oracle(2 * x)) <= 1e-13

    def test_truncation_flag(self):
        x = 3 * SIGMA_1
        with pytest.warns(TruncationNotConverged):
            info = anticomm_series_info(x, SIGMA_1, SeriesTruncation(max_terms=3))
        assert not info.converged and info.terms == 3

    def test_converged_no_warning(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            info = anticomm_series_info(SIGMA_1 / 2, SIGMA_1)
        assert info.converged and info.terms < 40

    def test_truncation_validation(self):
        with pytest.raises(ValueError):
            SeriesTruncation(max_terms=0)
        with pytest.raises(ValueError):
            SeriesTruncation(term_tol=0)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            anticomm_series(SIGMA_1, identity(3))


class TestConjugation:
    def test_sigma_pair(self, sigma_pair):
        assert conjugation_identities(sigma_pair).max() <= 1e-12

    def test_canonical_8(self):
        assert conjugation_identities(canonical_pair(8)).max() <= 1e-11

    def test_broken_pair(self, sigma_pair):
        res = conjugation_identities((sigma_pair.a, identity(2)))
        assert min(res) > 1

    @pytest.mark.parametrize("side", ["right", "left"])
    def test_two_sided_series(self, side):
        gen = np.random.default_rng(2)
        x = random_pair(4, RandomSource(12)).a
        y = random_complex(gen, (4, 4))
        ref = expm_oracle(x) @ y @ expm_oracle(-x)
        assert rel_err(conjugate(x, y, side), ref) <= 1e-11

    def test_general_x_goes_to_oracle(self):
        x = np.array([[0.1, 0.2], [0.0, -0.3]])
        y = SIGMA_2
        ref = expm_oracle(x) @ y @ expm_oracle(-x)
        assert rel_err(conjugate(x, y), ref) <= 1e-14

    def test_bad_side(self):
        with pytest.raises(ValueError):
            conjugate(SIGMA_1, SIGMA_2, side="middle")


def test_cmath_scalars():
    assert cmath.cosh(math.log(2)) == pytest.approx(5 / 4)
    assert cmath.sinh(math.log(2)) == pytest.approx(3 / 4)
