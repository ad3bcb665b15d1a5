"""
Matrix Core
============
Dense complex linear-algebra kernels the rest of the package builds on.

Factorizations delegate to LAPACK through numpy/scipy and then apply a final
phase pass so every triangular or diagonal factor carries a real,
non-negative diagonal. The discarded phases are absorbed into the adjacent
unitary factor, so reconstruction is unaffected.

All functions are pure: inputs are never modified in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from jointri.errors import InvalidDimensions, NonFiniteEntries, RankDeficient


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

RANK_TOL = 1e-12
UNITARY_TOL = 1e-10


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def as_matrix(a) -> np.ndarray:
    """
    Coerce ``a`` to a finite complex 2-D array.

    Scalars and 1-D inputs are rejected rather than reshaped: a matrix must
    say how many rows and columns it has.
    """
    arr = np.array(a, dtype=np.complex128, copy=True)
    if arr.ndim != 2:
        raise InvalidDimensions(f"Expected a 2-D matrix, got {arr.ndim}-D input.")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InvalidDimensions(f"Matrix has a zero dimension: {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntries("Matrix contains NaN or Inf entries.")
    return arr


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def generalized_diag(values, shape: tuple[int, int]) -> np.ndarray:
    """m x n matrix with ``values`` on its main diagonal and zeros elsewhere."""
    out = np.zeros(shape, dtype=np.complex128)
    k = min(shape[0], shape[1], len(values))
    out[np.arange(k), np.arange(k)] = np.asarray(values)[:k]
    return out


def square_part(a: np.ndarray) -> np.ndarray:
    """First n rows of an m x n matrix with m >= n."""
    m, n = a.shape
    if m < n:
        raise InvalidDimensions(f"Square part needs rows >= cols, got {m}x{n}.")
    return a[:n, :]


def embed_unitary(u: np.ndarray, m: int) -> np.ndarray:
    """Block-diagonal ``diag(u, I_{m-k})`` for a k x k unitary ``u``."""
    k = u.shape[0]
    if m < k:
        raise InvalidDimensions(f"Cannot embed a {k}x{k} block into size {m}.")
    if m == k:
        return u.copy()
    return scipy.linalg.block_diag(u, np.eye(m - k, dtype=np.complex128))


def relative_residual(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_F / ||a||_F, with an absolute fallback for a zero ``a``."""
    scale = np.linalg.norm(a)
    diff = np.linalg.norm(a - b)
    return float(diff / scale) if scale > 0 else float(diff)


def lower_mass(t: np.ndarray) -> float:
    """Frobenius norm of the strictly lower-triangular part."""
    return float(np.linalg.norm(np.tril(t, -1)))


def is_proper(a: np.ndarray, rank_tol: float = RANK_TOL) -> bool:
    """Full column rank with at least as many rows as columns."""
    m, n = a.shape
    if m < n:
        return False
    s = np.linalg.svd(a, compute_uv=False)
    return bool(s[-1] > rank_tol * max(1.0, s[0]))


# ---------------------------------------------------------------------------
# Factor models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QrFactors:
    """a = q @ r with q unitary (m x m) and r generalized upper-triangular."""
    q: np.ndarray
    r: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.q @ self.r


@dataclass(frozen=True)
class SvdFactors:
    """a = u @ diag(sigma) @ v^H with sigma non-increasing."""
    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        shape = (self.u.shape[0], self.v.shape[0])
        return self.u @ generalized_diag(self.sigma, shape) @ adjoint(self.v)


# ---------------------------------------------------------------------------
# Phase normalization
# ---------------------------------------------------------------------------

def _unit_phases(d: np.ndarray) -> np.ndarray:
    mag = np.abs(d)
    safe = np.where(mag > 0, mag, 1.0)
    return np.where(mag > 0, d / safe, 1.0)


def absorb_row_phases(u: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Make diag(t) real and non-negative for the product ``u @ t``.

    Row j of ``t`` is scaled by conj(phase_j) and column j of ``u`` by
    phase_j, which leaves ``u @ t`` unchanged.
    """
    u = u.copy()
    t = t.copy()
    k = min(t.shape)
    ph = _unit_phases(np.diagonal(t)[:k].copy())
    t[:k, :] *= np.conj(ph)[:, None]
    u[:, :k] *= ph[None, :]
    idx = np.arange(k)
    t[idx, idx] = np.abs(t[idx, idx])
    return u, t


# ---------------------------------------------------------------------------
# Factorizations
# ---------------------------------------------------------------------------

def qr(a) -> QrFactors:
    """Householder QR with a real non-negative diagonal on ``r``."""
    a = as_matrix(a)
    q, r = scipy.linalg.qr(a)
    q, r = absorb_row_phases(q, np.triu(r))
    return QrFactors(q=q, r=r)


def rq(a, rank_tol: float = RANK_TOL) -> tuple[np.ndarray, np.ndarray]:
    """
    RQ decomposition written as ``a = t @ q^H``.

    For square input ``t`` is upper-triangular with a positive real diagonal
    and ``q`` is unitary. Tall input (rows > cols) yields the trapezoidal
    factor anchored at the bottom-right corner, as LAPACK defines it.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        raise InvalidDimensions(f"RQ needs rows >= cols, got {m}x{n}.")
    t, q_right = scipy.linalg.rq(a)
    offset = m - n
    d = t[offset + np.arange(n), np.arange(n)].copy()
    ph = _unit_phases(d)
    # a = t q_right = (t conj(D)) (D q_right), with D = diag(phases)
    t = t * np.conj(ph)[None, :]
    q_right = q_right * ph[:, None]
    t[offset + np.arange(n), np.arange(n)] = np.abs(d)
    scale = max(1.0, float(np.max(np.abs(d)))) if n else 1.0
    if np.min(np.abs(d)) <= rank_tol * scale:
        raise RankDeficient("RQ input is rank deficient.")
    if offset == 0:
        t = np.triu(t)
    return t, adjoint(q_right)


def svd(a) -> SvdFactors:
    """Full SVD; ``sigma`` is sorted non-increasingly by LAPACK."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    return SvdFactors(u=u, sigma=s, v=adjoint(vh))


def is_unitary(a, tol: float = UNITARY_TOL) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    gap = adjoint(a) @ a - np.eye(a.shape[0])
    return bool(np.linalg.norm(gap) <= tol)


def unitarity_gap(a: np.ndarray) -> float:
    return float(np.linalg.norm(adjoint(a) @ a - np.eye(a.shape[1])))


def hermitian_sqrt(c) -> np.ndarray:
    """
    Hermitian PSD square root S with c = S S^H.

    Negative eigenvalues (round-off on a PSD input) are clipped to zero.
    """
    c = as_matrix(c)
    if c.shape[0] != c.shape[1]:
        raise InvalidDimensions(f"Square root needs a square matrix, got {c.shape}.")
    herm = 0.5 * (c + adjoint(c))
    w, v = np.linalg.eigh(herm)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)[None, :]) @ adjoint(v)
