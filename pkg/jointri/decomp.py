"""
Triangular Decompositions
==========================
Unitary triangularizations with a prescribed diagonal, and the joint
version for matrix pairs with a prescribed diagonal *ratio*.

  gtd        -- A = U T V^H with diag(T) = t, exists iff sigma(A) majorizes t
  gmd        -- gtd with the constant geometric-mean diagonal (always exists)
  gsv        -- generalized singular values of a pair
  joint_*    -- A_i = U_i T_i V^H with diag(T_1) / diag(T_2) = r,
                exists iff gsv(A_1, A_2) majorizes r

The diagonal is shaped by a chain of 2x2 rotation pairs starting from the
SVD. At step k the two current diagonal entries that most tightly straddle
the target t_k are moved next to each other; one left and one right rotation
then fix the leading entry at t_k while keeping the trailing block diagonal.

The joint square case runs the GTD on B = A_1 A_2^{-1} and then RQ-factors
U_i^H A_i. Both RQ factors share the same right unitary because a unitary
matrix that is also upper-triangular with a positive diagonal is the
identity. Tall pairs are reduced to the square case through their QR
factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from jointri.checks import CheckReport
from jointri.errors import (
    DimensionMismatch,
    InvalidDimensions,
    InvariantViolation,
    NotMajorized,
    RankDeficient,
)
from jointri.majorize import (
    MAJORIZATION_TOL,
    as_positive_vector,
    geometric_mean_vector,
    majorizes,
    project_product,
    violated_prefix,
)
from jointri.matcore import (
    RANK_TOL,
    absorb_row_phases,
    adjoint,
    as_matrix,
    embed_unitary,
    lower_mass,
    qr,
    relative_residual,
    rq,
    square_part,
    svd,
    unitarity_gap,
)


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

RECON_TOL = 1e-9
UNITARY_TOL = 1e-10
RATIO_TOL = 1e-9
# diagonal entries this close (relative) to a target are taken as-is
EXACT_MATCH_TOL = 1e-12
# residue RQ leaves below the diagonal of the second factor
SHARED_V_TOL = 1e-8


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GsvSpectrum:
    """Generalized singular values, non-increasing."""
    values: np.ndarray
    zero_count: int = 0
    infinite_count: int = 0

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def log_product(self) -> float:
        return float(np.sum(np.log(self.values)))

    @property
    def geometric_mean(self) -> float:
        return float(np.exp(self.log_product / self.values.size))

    def to_dict(self) -> dict:
        return {
            "values": self.values,
            "zero_count": self.zero_count,
            "infinite_count": self.infinite_count,
        }


@dataclass(frozen=True)
class GtdFactors:
    """A = u @ t @ v^H with t generalized upper-triangular."""
    u: np.ndarray
    t: np.ndarray
    v: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        n = self.t.shape[1]
        return np.real(np.diagonal(self.t)[:n]).copy()

    def reconstruct(self) -> np.ndarray:
        return self.u @ self.t @ adjoint(self.v)

    def check(
        self,
        a,
        target=None,
        recon_tol: float = RECON_TOL,
        unitary_tol: float = UNITARY_TOL,
        diag_tol: float = RATIO_TOL,
    ) -> CheckReport:
        a = as_matrix(a)
        report = CheckReport(subject="triangularization")
        report.require("RECON", relative_residual(a, self.reconstruct()), recon_tol,
                       "relative reconstruction residual")
        report.require("UNIT-U", unitarity_gap(self.u), unitary_tol, "U unitarity gap")
        report.require("UNIT-V", unitarity_gap(self.v), unitary_tol, "V unitarity gap")
        scale = max(1.0, float(np.linalg.norm(self.t)))
        report.require("LOWER-T", lower_mass(self.t) / scale, recon_tol,
                       "mass below the diagonal of T")
        if target is not None:
            t = as_positive_vector(target)
            gap = float(np.max(np.abs(self.diagonal - t) / t))
            report.require("DIAG", gap, diag_tol, "relative error of diag(T)")
        return report


@dataclass(frozen=True)
class JointTriangularization:
    """A_1 = u1 t1 v^H and A_2 = u2 t2 v^H with a shared right unitary."""
    u1: np.ndarray
    u2: np.ndarray
    v: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    ratio: np.ndarray

    def user_factors(self, i: int) -> GtdFactors:
        if i == 1:
            return GtdFactors(u=self.u1, t=self.t1, v=self.v)
        if i == 2:
            return GtdFactors(u=self.u2, t=self.t2, v=self.v)
        raise ValueError(f"Factor index must be 1 or 2, got {i}.")

    def diagonal(self, i: int) -> np.ndarray:
        return self.user_factors(i).diagonal

    def check(
        self,
        a1,
        a2,
        requested=None,
        recon_tol: float = RECON_TOL,
        unitary_tol: float = UNITARY_TOL,
        ratio_tol: float = RATIO_TOL,
    ) -> CheckReport:
        report = CheckReport(subject="joint triangularization")
        for i, a in ((1, a1), (2, a2)):
            f = self.user_factors(i)
            a = as_matrix(a)
            report.require(f"RECON-{i}", relative_residual(a, f.reconstruct()), recon_tol,
                           f"relative reconstruction residual of A{i}")
            report.require(f"UNIT-U{i}", unitarity_gap(f.u), unitary_tol,
                           f"U{i} unitarity gap")
            scale = max(1.0, float(np.linalg.norm(f.t)))
            report.require(f"LOWER-T{i}", lower_mass(f.t) / scale, recon_tol,
                           f"mass below the diagonal of T{i}")
        report.require("UNIT-V", unitarity_gap(self.v), unitary_tol, "V unitarity gap")
        if requested is not None:
            r = as_positive_vector(requested)
            gap = float(np.max(np.abs(self.ratio - r) / r))
            report.require("RATIO", gap, ratio_tol, "relative error of the diagonal ratio")
        return report


# ---------------------------------------------------------------------------
# Input gates
# ---------------------------------------------------------------------------

def _require_proper(a: np.ndarray, name: str, rank_tol: float) -> None:
    m, n = a.shape
    if m < n:
        raise InvalidDimensions(f"{name} must have rows >= cols, got {m}x{n}.")
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= rank_tol * max(1.0, s[0]):
        raise RankDeficient(f"{name} is not full column rank.")


def _require_shared_columns(a1: np.ndarray, a2: np.ndarray) -> None:
    if a1.shape[1] != a2.shape[1]:
        raise DimensionMismatch(
            f"Pair must share a column count, got {a1.shape[1]} and {a2.shape[1]}."
        )


# ---------------------------------------------------------------------------
# Generalized singular values
# ---------------------------------------------------------------------------

def gsv(a1, a2, rank_tol: float = RANK_TOL) -> GsvSpectrum:
    """
    Roots a > 0 of det(A1^H A1 - a^2 A2^H A2) = 0, sorted non-increasingly.

    With A2 = Q R the pencil reduces to the singular values of A1 [R]^{-1}.
    """
    a1 = as_matrix(a1)
    a2 = as_matrix(a2)
    _require_shared_columns(a1, a2)
    _require_proper(a1, "A1", rank_tol)
    _require_proper(a2, "A2", rank_tol)
    r2 = square_part(qr(a2).r)
    # x r2 = a1  <=>  r2^T x^T = a1^T
    x = scipy.linalg.solve_triangular(r2.T, a1.T, lower=True).T
    values = np.sort(np.linalg.svd(x, compute_uv=False))[::-1]
    return GsvSpectrum(values=values)


# ---------------------------------------------------------------------------
# Diagonal shaping
# ---------------------------------------------------------------------------

def _swap(r: np.ndarray, left: np.ndarray, right: np.ndarray, i: int, j: int) -> None:
    if i == j:
        return
    r[[i, j], :] = r[[j, i], :]
    r[:, [i, j]] = r[:, [j, i]]
    left[:, [i, j]] = left[:, [j, i]]
    right[:, [i, j]] = right[:, [j, i]]


def _straddling_pair(d: np.ndarray, target: float) -> tuple[int, int | None, float]:
    """
    Pick the entries that most tightly straddle ``target``.

    Returns (p, q, target) with d[p] >= target >= d[q]; q is None when d[p]
    already equals the target. Round-off that leaves no straddling pair
    clips the target onto the nearest available entry.
    """
    above = np.flatnonzero(d >= target)
    if above.size:
        p = int(above[np.argmin(d[above])])
    else:
        p = int(np.argmax(d))
        target = float(d[p])
    if abs(d[p] - target) <= EXACT_MATCH_TOL * target:
        return p, None, float(d[p])
    below = [i for i in range(d.size) if i != p and d[i] <= target]
    if not below:
        return p, None, float(d[p])
    q = max(below, key=lambda i: d[i])
    return p, q, target


def _shaping_rotations(d1: float, d2: float, target: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Real rotations g1, g2 with g1^T diag(d1, d2) g2 upper-triangular and a
    leading entry equal to ``target`` (d1 >= target >= d2).
    """
    c2 = (target * target - d2 * d2) / (d1 * d1 - d2 * d2)
    c2 = min(1.0, max(0.0, c2))
    c = np.sqrt(c2)
    s = np.sqrt(1.0 - c2)
    t_eff = np.sqrt(c2 * d1 * d1 + (1.0 - c2) * d2 * d2)
    g2 = np.array([[c, -s], [s, c]])
    g1 = np.array([[c * d1, -s * d2], [s * d2, c * d1]]) / t_eff
    return g1, g2


def _shape_diagonal(sigma: np.ndarray, targets: np.ndarray) -> tuple[np.ndarray, ...]:
    """
    diag(sigma) = left @ r @ right^H with diag(r) = targets.

    ``targets`` must be majorized by ``sigma`` and share its product.
    """
    n = sigma.size
    r = np.diag(sigma).astype(np.complex128)
    left = np.eye(n, dtype=np.complex128)
    right = np.eye(n, dtype=np.complex128)
    for k in range(n - 1):
        d = np.real(np.diagonal(r))[k:].copy()
        p, q, target = _straddling_pair(d, float(targets[k]))
        p += k
        _swap(r, left, right, k, p)
        if q is None:
            continue
        q += k
        if q == k:
            q = p
        _swap(r, left, right, k + 1, q)
        d1 = float(np.real(r[k, k]))
        d2 = float(np.real(r[k + 1, k + 1]))
        if d1 - d2 <= EXACT_MATCH_TOL * d1:
            continue
        g1, g2 = _shaping_rotations(d1, d2, target)
        r[k:k + 2, :] = g1.T @ r[k:k + 2, :]
        r[:, k:k + 2] = r[:, k:k + 2] @ g2
        left[:, k:k + 2] = left[:, k:k + 2] @ g1
        right[:, k:k + 2] = right[:, k:k + 2] @ g2
        r[k + 1, k] = 0.0
    return np.triu(r), left, right


# ---------------------------------------------------------------------------
# GTD / GMD
# ---------------------------------------------------------------------------

def gtd(a, t, tol: float = MAJORIZATION_TOL, rank_tol: float = RANK_TOL) -> GtdFactors:
    """Unitary triangularization A = U T V^H with diag(T) = t."""
    a = as_matrix(a)
    m, n = a.shape
    _require_proper(a, "A", rank_tol)
    t = as_positive_vector(t)
    if t.size != n:
        raise DimensionMismatch(f"Diagonal needs {n} entries, got {t.size}.")
    f = svd(a)
    sigma = f.sigma[:n]
    k = violated_prefix(sigma, t, tol)
    if k is not None:
        raise NotMajorized(
            f"Singular values do not majorize the requested diagonal (prefix {k}).",
            prefix_index=k,
        )
    r, left, right = _shape_diagonal(sigma, project_product(t, sigma))
    t_full = np.zeros((m, n), dtype=np.complex128)
    t_full[:n, :] = r
    return GtdFactors(u=f.u @ embed_unitary(left, m), t=t_full, v=f.v @ right)


def gmd(a, rank_tol: float = RANK_TOL) -> GtdFactors:
    """GTD with every diagonal entry at the geometric mean of sigma(A)."""
    a = as_matrix(a)
    _require_proper(a, "A", rank_tol)
    sigma = svd(a).sigma[: a.shape[1]]
    return gtd(a, geometric_mean_vector(sigma), rank_tol=rank_tol)


# ---------------------------------------------------------------------------
# Joint triangularization
# ---------------------------------------------------------------------------

def _realized_ratio(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    n = t1.shape[1]
    return np.real(np.diagonal(t1)[:n]) / np.real(np.diagonal(t2)[:n])


def joint_triangularize_square(
    a1,
    a2,
    r,
    tol: float = MAJORIZATION_TOL,
    rank_tol: float = RANK_TOL,
) -> JointTriangularization:
    """Joint triangularization of two non-singular n x n matrices."""
    a1 = as_matrix(a1)
    a2 = as_matrix(a2)
    n = a1.shape[0]
    if a1.shape != (n, n) or a2.shape != (n, n):
        raise InvalidDimensions(
            f"Square routine needs two n x n matrices, got {a1.shape} and {a2.shape}."
        )
    _require_proper(a1, "A1", rank_tol)
    _require_proper(a2, "A2", rank_tol)
    r = as_positive_vector(r)
    if r.size != n:
        raise DimensionMismatch(f"Ratio vector needs {n} entries, got {r.size}.")

    b = scipy.linalg.solve(a2.T, a1.T).T
    mu = svd(b).sigma
    k = violated_prefix(mu, r, tol)
    if k is not None:
        raise NotMajorized(
            f"Generalized singular values do not majorize the ratio vector (prefix {k}).",
            prefix_index=k,
        )
    fac = gtd(b, r, tol=tol, rank_tol=rank_tol)
    u1, u2 = fac.u, fac.v

    t1, v = rq(adjoint(u1) @ a1, rank_tol=rank_tol)
    t2_raw = adjoint(u2) @ a2 @ v
    residue = lower_mass(t2_raw) / max(1.0, float(np.linalg.norm(t2_raw)))
    if residue > SHARED_V_TOL:
        raise InvariantViolation(
            f"Second factor is not triangular in the shared basis (residue {residue:.2e})."
        )
    u2, t2 = absorb_row_phases(u2, np.triu(t2_raw))
    return JointTriangularization(
        u1=u1, u2=u2, v=v, t1=t1, t2=t2, ratio=_realized_ratio(t1, t2)
    )


def joint_triangularize(
    a1,
    a2,
    r,
    tol: float = MAJORIZATION_TOL,
    rank_tol: float = RANK_TOL,
) -> JointTriangularization:
    """
    Joint triangularization of a proper-dimension pair m1 x n, m2 x n.

    Each matrix is QR-factored, the square parts are jointly triangularized,
    and the square unitaries are embedded back as diag(U~_i, I).
    """
    a1 = as_matrix(a1)
    a2 = as_matrix(a2)
    _require_shared_columns(a1, a2)
    _require_proper(a1, "A1", rank_tol)
    _require_proper(a2, "A2", rank_tol)
    (m1, n), m2 = a1.shape, a2.shape[0]

    f1 = qr(a1)
    f2 = qr(a2)
    sq = joint_triangularize_square(
        square_part(f1.r), square_part(f2.r), r, tol=tol, rank_tol=rank_tol
    )
    t1 = np.zeros((m1, n), dtype=np.complex128)
    t2 = np.zeros((m2, n), dtype=np.complex128)
    t1[:n, :] = sq.t1
    t2[:n, :] = sq.t2
    return JointTriangularization(
        u1=f1.q @ embed_unitary(sq.u1, m1),
        u2=f2.q @ embed_unitary(sq.u2, m2),
        v=sq.v,
        t1=t1,
        t2=t2,
        ratio=sq.ratio,
    )


def joint_equal_ratio(a1, a2, rank_tol: float = RANK_TOL) -> JointTriangularization:
    """Joint triangularization with a constant ratio at the GSV geometric mean."""
    mu = gsv(a1, a2, rank_tol=rank_tol)
    return joint_triangularize(a1, a2, geometric_mean_vector(mu.values), rank_tol=rank_tol)


def gsvd_triangular(a1, a2, rank_tol: float = RANK_TOL) -> JointTriangularization:
    """Triangular GSVD: the ratio vector is the GSV vector itself."""
    mu = gsv(a1, a2, rank_tol=rank_tol)
    return joint_triangularize(a1, a2, mu.values, rank_tol=rank_tol)


def individually_weyl(jt: JointTriangularization, a1, a2, tol: float = MAJORIZATION_TOL) -> bool:
    """Both triangular factors satisfy Weyl's condition against their own matrix."""
    ok = True
    for i, a in ((1, a1), (2, a2)):
        sigma = svd(a).sigma[: jt.v.shape[0]]
        ok = ok and majorizes(sigma, jt.diagonal(i), tol)
    return ok
