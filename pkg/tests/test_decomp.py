"""Tests for GTD / GMD, generalized singular values and joint triangularization."""

import numpy as np
import pytest
import scipy.stats

from jointri.errors import DimensionMismatch, InvalidDimensions, NotMajorized, RankDeficient
from jointri.decomp import (
    gmd,
    gsv,
    gsvd_triangular,
    gtd,
    individually_weyl,
    joint_equal_ratio,
    joint_triangularize,
    joint_triangularize_square,
)
from jointri.majorize import geometric_mean_vector
from jointri.matcore import lower_mass, svd


def _feasible_target(sigma, rng, weight):
    """Log-domain blend of sigma with its geometric mean, shuffled; always majorized."""
    logs = np.log(sigma)
    t = np.exp(weight * logs + (1 - weight) * logs.mean())
    return rng.permutation(t)


class TestGsv:
    def test_identity_second(self):
        assert np.allclose(gsv(np.diag([2.0, 1.0]), np.eye(2)).values, [2, 1])

    def test_derived_pair(self):
        assert np.allclose(gsv(np.diag([1.0, 10.0]), np.diag([2.0, 2.0])).values, [5, 0.5])

    def test_equal_matrices(self, crandn):
        a = crandn(3, 3)
        mu = gsv(a, a)
        assert np.allclose(mu.values, 1.0)
        assert mu.zero_count == 0 and mu.infinite_count == 0
        assert len(mu) == 3

    def test_square_matches_singular_values_of_quotient(self, crandn):
        a1, a2 = crandn(3, 3), crandn(3, 3)
        expected = np.linalg.svd(a1 @ np.linalg.inv(a2), compute_uv=False)
        assert np.allclose(gsv(a1, a2).values, expected, rtol=1e-9)

    def test_unitary_invariance(self, crandn, rng):
        a1, a2 = crandn(5, 3), crandn(4, 3)
        q1 = scipy.stats.unitary_group.rvs(5, random_state=rng)
        q2 = scipy.stats.unitary_group.rvs(4, random_state=rng)
        assert np.allclose(gsv(q1 @ a1, q2 @ a2).values, gsv(a1, a2).values, rtol=1e-9)

    def test_zero_padding_of_second(self, crandn):
        a = crandn(3, 2)
        stacked = np.vstack([a, np.zeros((2, 2))])
        assert np.allclose(gsv(a, stacked).values, 1.0)

    def test_column_mismatch(self, crandn):
        with pytest.raises(DimensionMismatch):
            gsv(crandn(3, 2), crandn(3, 3))

    def test_rank_deficient(self, crandn):
        with pytest.raises(RankDeficient):
            gsv(crandn(3, 2), np.ones((3, 2)))

    def test_geometric_mean(self):
        mu = gsv(np.diag([4.0, 1.0]), np.eye(2))
        assert np.isclose(mu.geometric_mean, 2.0)


class TestGtd:
    def test_geometric_mean_target(self):
        a = np.diag([4.0, 1.0])
        fac = gtd(a, [2, 2])
        assert np.allclose(fac.diagonal, [2, 2])
        assert fac.check(a, [2, 2]).passed

    def test_already_conforming(self):
        a = np.diag([4.0, 1.0])
        fac = gtd(a, [4, 1])
        assert np.allclose(np.abs(fac.t), a, atol=1e-12)

    def test_reversed_order(self):
        a = np.diag([4.0, 1.0])
        fac = gtd(a, [1, 4])
        assert np.allclose(fac.diagonal, [1, 4])
        assert fac.check(a, [1, 4]).passed

    def test_infeasible_reports_prefix(self):
        with pytest.raises(NotMajorized) as info:
            gtd(np.diag([4.0, 1.0]), [8, 0.5])
        assert info.value.prefix_index == 1

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatch):
            gtd(np.eye(2), [1, 1, 1])

    def test_wide_rejected(self, crandn):
        with pytest.raises(InvalidDimensions):
            gtd(crandn(2, 3), [1, 1, 1])

    def test_svd_limit_is_diagonal(self, crandn):
        a = crandn(4, 3)
        sigma = svd(a).sigma[:3]
        fac = gtd(a, sigma)
        off = fac.t[:3, :3] - np.diag(np.diagonal(fac.t[:3, :3]))
        assert np.linalg.norm(off) < 1e-9 * np.linalg.norm(fac.t)

    def test_determinant_conserved(self, crandn, rng):
        a = crandn(5, 4)
        sigma = svd(a).sigma[:4]
        fac = gtd(a, _feasible_target(sigma, rng, 0.4))
        assert np.isclose(np.prod(fac.diagonal), np.prod(sigma), rtol=1e-9)

    def test_random_targets_any_order(self, crandn, rng):
        for _ in range(200):
            m = int(rng.integers(2, 7))
            n = int(rng.integers(1, m + 1))
            a = crandn(m, n)
            target = _feasible_target(svd(a).sigma[:n], rng, rng.uniform(0, 1))
            fac = gtd(a, target)
            report = fac.check(a, target)
            assert report.passed, report.summary()


class TestGmd:
    def test_diag_4_1(self):
        assert np.allclose(gmd(np.diag([4.0, 1.0])).diagonal, [2, 2])

    def test_diag_8_1_1(self):
        assert np.allclose(gmd(np.diag([8.0, 1.0, 1.0])).diagonal, [2, 2, 2])

    def test_unitary_input(self, rng):
        q = scipy.stats.unitary_group.rvs(4, random_state=rng)
        assert np.allclose(gmd(q).diagonal, 1.0)


class TestJointSquare:
    def test_identity_pair(self):
        a1, a2 = np.diag([2.0, 1.0]), np.eye(2)
        r = [np.sqrt(2), np.sqrt(2)]
        jt = joint_triangularize_square(a1, a2, r)
        assert np.allclose(jt.ratio, r)
        assert jt.check(a1, a2, r).passed

    def test_equal_matrices(self, crandn):
        a = crandn(3, 3)
        jt = joint_triangularize_square(a, a, [1, 1, 1])
        assert np.allclose(jt.t1, jt.t2, atol=1e-9)

    def test_infeasible(self):
        with pytest.raises(NotMajorized) as info:
            joint_triangularize_square(np.diag([2.0, 1.0]), np.eye(2), [4, 0.5])
        assert info.value.prefix_index == 1

    def test_tall_rejected(self, crandn):
        with pytest.raises(InvalidDimensions):
            joint_triangularize_square(crandn(3, 2), crandn(3, 2), [1, 1])


class TestJointTriangularize:
    def test_tall_pair(self, crandn):
        a1, a2 = crandn(4, 2), crandn(3, 2)
        r = geometric_mean_vector(gsv(a1, a2).values)
        jt = joint_triangularize(a1, a2, r)
        assert jt.t1.shape == (4, 2) and jt.t2.shape == (3, 2)
        assert jt.check(a1, a2, r).passed

    def test_user_factors(self, crandn):
        a1, a2 = crandn(3, 2), crandn(2, 2)
        jt = joint_equal_ratio(a1, a2)
        f = jt.user_factors(2)
        assert np.allclose(f.reconstruct(), a2)
        with pytest.raises(ValueError):
            jt.user_factors(3)

    def test_gsv_of_factors_match(self, crandn):
        a1, a2 = crandn(5, 3), crandn(4, 3)
        jt = joint_equal_ratio(a1, a2)
        assert np.allclose(gsv(jt.t1, jt.t2).values, gsv(a1, a2).values, rtol=1e-8)

    def test_soundness_sweep(self, crandn, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 5))
            m1 = int(rng.integers(n, 9))
            m2 = int(rng.integers(n, 9))
            a1, a2 = crandn(m1, n), crandn(m2, n)
            mu = gsv(a1, a2).values
            r = geometric_mean_vector(mu)
            jt = joint_triangularize(a1, a2, r)
            report = jt.check(a1, a2, r)
            assert report.passed, report.summary()
            assert np.isclose(np.prod(jt.ratio), np.prod(mu), rtol=1e-8)
            assert individually_weyl(jt, a1, a2)

    def test_converse(self, crandn, rng):
        for _ in range(500):
            n = int(rng.integers(2, 5))
            a1, a2 = crandn(n + 1, n), crandn(n, n)
            mu = gsv(a1, a2).values
            r = mu.copy()
            r[0] *= 1.5
            r[-1] /= 1.5
            with pytest.raises(NotMajorized):
                joint_triangularize(a1, a2, rng.permutation(r))

    def test_custom_ratio_order_is_kept(self, crandn, rng):
        a1, a2 = crandn(4, 3), crandn(3, 3)
        mu = gsv(a1, a2).values
        r = _feasible_target(mu, rng, 0.5)
        jt = joint_triangularize(a1, a2, r)
        assert np.allclose(jt.ratio, r, rtol=1e-9)


class TestEqualRatio:
    def test_identity_pair(self):
        jt = joint_equal_ratio(np.diag([2.0, 1.0]), np.eye(2))
        assert np.allclose(jt.ratio, np.sqrt(2))

    def test_equal_matrices(self, crandn):
        a = crandn(3, 2)
        assert np.allclose(joint_equal_ratio(a, a).ratio, 1.0)

    def test_diagonal_dominance(self, crandn, rng):
        for _ in range(100):
            a1, a2 = crandn(4, 3), crandn(4, 3)
            d1 = np.linalg.slogdet(a1.conj().T @ a1)[1]
            d2 = np.linalg.slogdet(a2.conj().T @ a2)[1]
            if d1 < d2:
                a1, a2 = a2, a1
            jt = joint_equal_ratio(a1, a2)
            assert np.all(jt.diagonal(1) >= jt.diagonal(2) * (1 - 1e-9))


class TestGsvdTriangular:
    def test_identity_pair(self):
        jt = gsvd_triangular(np.diag([2.0, 1.0]), np.eye(2))
        assert np.allclose(jt.ratio, [2, 1])

    def test_equal_matrices(self, crandn):
        a = crandn(2, 2)
        assert np.allclose(gsvd_triangular(a, a).ratio, 1.0)

    def test_ratio_is_gsv(self, crandn, rng):
        for _ in range(200):
            n = int(rng.integers(1, 4))
            a1, a2 = crandn(n + int(rng.integers(0, 3)), n), crandn(n, n)
            jt = gsvd_triangular(a1, a2)
            mu = gsv(a1, a2).values
            assert np.allclose(np.sort(jt.ratio), np.sort(mu), rtol=1e-8)
            assert lower_mass(jt.t1) < 1e-9 * np.linalg.norm(jt.t1)
