"""Tests for the dense linear-algebra kernels."""

import numpy as np
import pytest

from jointri.errors import InvalidDimensions, NonFiniteEntries, RankDeficient
from jointri.matcore import (
    absorb_row_phases,
    adjoint,
    as_matrix,
    embed_unitary,
    generalized_diag,
    hermitian_sqrt,
    is_proper,
    is_unitary,
    lower_mass,
    qr,
    relative_residual,
    rq,
    square_part,
    svd,
)


class TestInputGate:
    def test_rejects_vector(self):
        with pytest.raises(InvalidDimensions):
            as_matrix([1.0, 2.0])

    def test_rejects_empty(self):
        with pytest.raises(InvalidDimensions):
            as_matrix(np.zeros((0, 3)))

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteEntries):
            as_matrix([[1.0, np.nan]])

    def test_copies_input(self):
        a = np.eye(2)
        b = as_matrix(a)
        b[0, 0] = 5
        assert a[0, 0] == 1.0

    def test_generalized_diag_shape(self):
        d = generalized_diag([3, 4], (3, 2))
        assert d.shape == (3, 2)
        assert d[0, 0] == 3 and d[1, 1] == 4 and d[2, 1] == 0

    def test_square_part(self, crandn):
        a = crandn(5, 3)
        assert np.array_equal(square_part(a), a[:3])
        with pytest.raises(InvalidDimensions):
            square_part(crandn(2, 3))

    def test_is_proper(self, crandn):
        assert is_proper(crandn(4, 2))
        assert not is_proper(crandn(2, 4))
        assert not is_proper(np.ones((3, 2)))


class TestQr:
    def test_reconstructs_tall(self, crandn):
        a = crandn(5, 3)
        f = qr(a)
        assert relative_residual(a, f.reconstruct()) < 1e-12
        assert is_unitary(f.q)
        assert lower_mass(f.r) < 1e-12

    def test_diagonal_real_nonnegative(self, crandn):
        f = qr(crandn(4, 4))
        d = np.diagonal(f.r)
        assert np.all(np.abs(np.imag(d)) < 1e-14)
        assert np.all(np.real(d) >= 0)


class TestRq:
    def test_square(self, crandn):
        a = crandn(4, 4)
        t, q = rq(a)
        assert np.linalg.norm(a - t @ adjoint(q)) < 1e-12 * np.linalg.norm(a)
        assert is_unitary(q)
        assert lower_mass(t) == 0.0
        assert np.all(np.real(np.diagonal(t)) > 0)
        assert np.all(np.imag(np.diagonal(t)) == 0)

    def test_wide_rejected(self, crandn):
        with pytest.raises(InvalidDimensions):
            rq(crandn(2, 3))

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            rq(np.array([[1.0, 2.0], [2.0, 4.0]]))


class TestSvd:
    def test_sorted_and_reconstructs(self, crandn):
        a = crandn(4, 3)
        f = svd(a)
        assert np.all(np.diff(f.sigma) <= 0)
        assert relative_residual(a, f.reconstruct()) < 1e-12


class TestHelpers:
    def test_embed_unitary(self, crandn):
        u = qr(crandn(2, 2)).q
        e = embed_unitary(u, 4)
        assert e.shape == (4, 4)
        assert is_unitary(e)
        assert np.allclose(e[2:, 2:], np.eye(2))
        with pytest.raises(InvalidDimensions):
            embed_unitary(u, 1)

    def test_absorb_row_phases_keeps_product(self, crandn):
        u = qr(crandn(3, 3)).q
        t = np.triu(crandn(3, 3))
        u2, t2 = absorb_row_phases(u, t)
        assert np.allclose(u @ t, u2 @ t2)
        assert np.all(np.real(np.diagonal(t2)) >= 0)
        assert is_unitary(u2)

    def test_hermitian_sqrt(self, random_psd):
        c = random_psd(3, power=2.0)
        s = hermitian_sqrt(c)
        assert np.allclose(s @ adjoint(s), c, atol=1e-12)
        assert np.allclose(s, adjoint(s))

    def test_hermitian_sqrt_clips_roundoff(self):
        c = np.diag([1.0, -1e-15])
        s = hermitian_sqrt(c)
        assert np.all(np.isfinite(s))
        assert abs(s[1, 1]) < 1e-12

    def test_is_unitary_non_square(self):
        assert not is_unitary(np.ones((2, 3)))
