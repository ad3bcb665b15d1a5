"""
Point-to-Point MIMO Link
=========================
Rate evaluation for y = H x + z with unit-variance white noise.

  mutual_information -- log2 det(I + H C H^H)
  augment            -- G = [H C^{1/2}; I], always of proper dimensions
  build_sic_scheme   -- receiver front end W, equivalent channel T~ and
                        per-stream SINRs from any triangularization of G
  simulate_sic       -- genie-aided Monte Carlo of the same receiver
  block_rates        -- per-block rates of a block-triangular factor
  water_filling      -- single-user capacity-achieving covariance

Triangularizing G instead of F = H C^{1/2} keeps the rate decomposition
exact at every SNR: log2 det(G^H G) = sum_j log2 T_jj^2, and each stream
rate R_j equals log2(1 + S_j) under successive cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from jointri.checks import CheckReport
from jointri.decomp import GtdFactors
from jointri.errors import (
    DimensionMismatch,
    InconsistentFactors,
    InvalidBlockSpec,
    InvalidCovariance,
    InvalidDimensions,
)
from jointri.matcore import adjoint, as_matrix, hermitian_sqrt, relative_residual


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-12
TRACE_SLACK = 1e-9
PROPOSITION_TOL = 1e-8
FACTOR_TOL = 1e-9
# SINR denominators below this are treated as a dead stream (S_j = 0)
DEAD_STREAM_TOL = 1e-15
BLOCK_TOL = 1e-9


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Channel:
    """Channel matrix H (N_r x N_t); noise is white with unit variance."""
    h: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", as_matrix(self.h))

    @property
    def n_r(self) -> int:
        return self.h.shape[0]

    @property
    def n_t(self) -> int:
        return self.h.shape[1]


@dataclass(frozen=True)
class InputCovariance:
    """Hermitian PSD transmit covariance with trace at most ``power``."""
    c: np.ndarray
    power: float

    def __post_init__(self) -> None:
        c = as_matrix(self.c)
        if c.shape[0] != c.shape[1]:
            raise InvalidDimensions(f"Covariance must be square, got {c.shape}.")
        if np.linalg.norm(c - adjoint(c)) > HERMITIAN_TOL * max(1.0, np.linalg.norm(c)):
            raise InvalidCovariance("Covariance is not Hermitian.")
        c = 0.5 * (c + adjoint(c))
        if np.min(np.linalg.eigvalsh(c)) < -PSD_TOL * max(1.0, np.linalg.norm(c)):
            raise InvalidCovariance("Covariance is not positive semi-definite.")
        power = float(self.power)
        if power < 0:
            raise InvalidCovariance(f"Power budget must be non-negative, got {power}.")
        if np.real(np.trace(c)) > power * (1 + TRACE_SLACK) + PSD_TOL:
            raise InvalidCovariance(
                f"Covariance trace {np.real(np.trace(c)):.6g} exceeds the budget {power:.6g}."
            )
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "power", power)

    @classmethod
    def scaled_identity(cls, n_t: int, power: float) -> InputCovariance:
        return cls(c=np.eye(n_t) * (power / n_t), power=power)

    @classmethod
    def diagonal(cls, values, power: float | None = None) -> InputCovariance:
        values = np.asarray(values, dtype=float)
        return cls(c=np.diag(values), power=float(np.sum(values)) if power is None else power)

    @property
    def n_t(self) -> int:
        return self.c.shape[0]

    @property
    def sqrt(self) -> np.ndarray:
        return hermitian_sqrt(self.c)


@dataclass(frozen=True)
class SicScheme:
    """Precoder, receiver front end and per-stream figures of one link."""
    v: np.ndarray
    w: np.ndarray
    t_tilde: np.ndarray
    c_ztilde: np.ndarray
    rates: np.ndarray
    sinrs: np.ndarray

    @property
    def sum_rate(self) -> float:
        return float(np.sum(self.rates))

    def proposition_gap(self) -> float:
        """max_j |log2(1 + S_j) - R_j| in bits."""
        return float(np.max(np.abs(np.log2(1.0 + self.sinrs) - self.rates)))

    def check(self, ch: Channel, cx: InputCovariance, tol: float = PROPOSITION_TOL) -> CheckReport:
        report = CheckReport(subject="SIC scheme")
        report.require("PROP-SINR", self.proposition_gap(), tol,
                       "max |log2(1+S_j) - R_j| (bits)")
        report.require("SUM-RATE", abs(self.sum_rate - mutual_information(ch, cx)), tol,
                       "|sum R_j - I(H, C)| (bits)")
        return report

    def to_dict(self) -> dict:
        return {"rates": self.rates, "sinrs": self.sinrs, "sum_rate": self.sum_rate}


@dataclass(frozen=True)
class SicSimulation:
    """Empirical per-stream SINRs with delta-method standard errors."""
    sinrs: np.ndarray
    standard_errors: np.ndarray
    num_symbols: int
    seed: int

    def within(self, analytic, sigmas: float = 3.0) -> bool:
        analytic = np.asarray(analytic, dtype=float)
        return bool(np.all(np.abs(self.sinrs - analytic) <= sigmas * self.standard_errors + 1e-12))


# ---------------------------------------------------------------------------
# Mutual information and augmentation
# ---------------------------------------------------------------------------

def _require_compatible(ch: Channel, cx: InputCovariance) -> None:
    if ch.n_t != cx.n_t:
        raise DimensionMismatch(
            f"Channel has {ch.n_t} transmit antennas but the covariance is {cx.n_t}x{cx.n_t}."
        )


def mutual_information(ch: Channel, cx: InputCovariance) -> float:
    """I(H, C) = log2 det(I + H C H^H), bits per channel use."""
    _require_compatible(ch, cx)
    f = ch.h @ cx.sqrt
    # Sylvester: det(I + F F^H) = det(I + F^H F); use the smaller side
    gram = adjoint(f) @ f if ch.n_t <= ch.n_r else f @ adjoint(f)
    _, logdet = np.linalg.slogdet(np.eye(gram.shape[0]) + gram)
    return max(0.0, float(logdet) / np.log(2.0))


def augment(ch: Channel, cx: InputCovariance) -> np.ndarray:
    """G = [H C^{1/2}; I_{N_t}]."""
    _require_compatible(ch, cx)
    return np.vstack([ch.h @ cx.sqrt, np.eye(ch.n_t, dtype=np.complex128)])


def pad_virtual_antennas(
    ch: Channel, cx: InputCovariance, extra: int
) -> tuple[Channel, InputCovariance]:
    """Append ``extra`` zero-gain transmit antennas that receive no power."""
    _require_compatible(ch, cx)
    h = np.hstack([ch.h, np.zeros((ch.n_r, extra), dtype=np.complex128)])
    c = np.zeros((cx.n_t + extra, cx.n_t + extra), dtype=np.complex128)
    c[: cx.n_t, : cx.n_t] = cx.c
    return Channel(h), InputCovariance(c, cx.power)


# ---------------------------------------------------------------------------
# SIC scheme
# ---------------------------------------------------------------------------

def sic_sinrs(t_tilde: np.ndarray, c_ztilde: np.ndarray) -> np.ndarray:
    """S_j = |T~_jj|^2 / (C_z~;jj + sum_{l<j} |T~_jl|^2)."""
    n = t_tilde.shape[1]
    out = np.zeros(n)
    for j in range(n):
        signal = abs(t_tilde[j, j]) ** 2
        denom = float(np.real(c_ztilde[j, j])) + float(np.sum(np.abs(t_tilde[j, :j]) ** 2))
        out[j] = signal / denom if denom > DEAD_STREAM_TOL else 0.0
    return out


def build_sic_scheme(
    ch: Channel,
    cx: InputCovariance,
    decomposition: GtdFactors,
    factor_tol: float = FACTOR_TOL,
) -> SicScheme:
    """
    Receiver front end and equivalent channel from G = U T V^H.

    W is the upper-left N_r x N_t block of U; the equivalent channel is
    T~ = W^H F V and the equivalent noise z~ = W^H z has covariance W^H W.
    """
    g = augment(ch, cx)
    n_r, n_t = ch.n_r, ch.n_t
    u, t, v = decomposition.u, decomposition.t, decomposition.v
    if u.shape != (n_r + n_t, n_r + n_t) or t.shape != g.shape or v.shape != (n_t, n_t):
        raise InconsistentFactors(
            f"Factor shapes {u.shape}, {t.shape}, {v.shape} do not match G {g.shape}."
        )
    residual = relative_residual(g, decomposition.reconstruct())
    if residual > factor_tol:
        raise InconsistentFactors(f"Factors do not reproduce G (residual {residual:.2e}).")
    diag = np.real(np.diagonal(t)[:n_t])
    if np.any(diag <= 0):
        raise InconsistentFactors("Triangular factor needs a positive diagonal.")

    f = g[:n_r, :]
    w = u[:n_r, :n_t]
    t_tilde = adjoint(w) @ f @ v
    c_ztilde = adjoint(w) @ w
    rates = np.log2(diag ** 2)
    return SicScheme(
        v=v,
        w=w,
        t_tilde=t_tilde,
        c_ztilde=c_ztilde,
        rates=rates,
        sinrs=sic_sinrs(t_tilde, c_ztilde),
    )


def simulate_sic(
    scheme: SicScheme,
    ch: Channel,
    cx: InputCovariance,
    num_symbols: int,
    seed: int = 0,
    batch_size: int = 100_000,
) -> SicSimulation:
    """
    Monte Carlo estimate of the per-stream SINRs.

    Streams carry unit-variance circular Gaussian symbols, x = C^{1/2} V x~,
    and past symbols are cancelled with their true values.
    """
    if num_symbols < 1:
        raise ValueError("num_symbols must be at least 1.")
    _require_compatible(ch, cx)
    rng = np.random.default_rng(seed)
    n_t, n_r = ch.n_t, ch.n_r
    precoder = cx.sqrt @ scheme.v
    wh = adjoint(scheme.w)
    t_tilde = scheme.t_tilde
    upper = np.triu(t_tilde, 1)

    # per stream: sums of a, b, a^2, b^2, a*b with a = signal power, b = residual power
    acc = np.zeros((5, n_t))
    done = 0
    while done < num_symbols:
        m = min(batch_size, num_symbols - done)
        x_t = (rng.standard_normal((n_t, m)) + 1j * rng.standard_normal((n_t, m))) / np.sqrt(2)
        z = (rng.standard_normal((n_r, m)) + 1j * rng.standard_normal((n_r, m))) / np.sqrt(2)
        y_t = wh @ (ch.h @ (precoder @ x_t) + z)
        y_prime = y_t - upper @ x_t
        wanted = np.diagonal(t_tilde)[:, None] * x_t
        a = np.abs(wanted) ** 2
        b = np.abs(y_prime - wanted) ** 2
        acc += np.stack([a.sum(1), b.sum(1), (a * a).sum(1), (b * b).sum(1), (a * b).sum(1)])
        done += m

    n = float(num_symbols)
    mean_a, mean_b = acc[0] / n, acc[1] / n
    var_a = acc[2] / n - mean_a ** 2
    var_b = acc[3] / n - mean_b ** 2
    cov_ab = acc[4] / n - mean_a * mean_b
    live = mean_b > DEAD_STREAM_TOL
    safe_b = np.where(live, mean_b, 1.0)
    sinrs = np.where(live, mean_a / safe_b, 0.0)
    var_ratio = (
        var_a / safe_b ** 2
        - 2.0 * mean_a * cov_ab / safe_b ** 3
        + mean_a ** 2 * var_b / safe_b ** 4
    ) / n
    errors = np.where(live, np.sqrt(np.clip(var_ratio, 0.0, None)), 0.0)
    return SicSimulation(sinrs=sinrs, standard_errors=errors, num_symbols=num_symbols, seed=seed)


# ---------------------------------------------------------------------------
# Block SIC
# ---------------------------------------------------------------------------

def block_rates(t, sizes, tol: float = BLOCK_TOL) -> np.ndarray:
    """R_k = log2 det(T_kk T_kk^H) for each diagonal block of a block-triangular T."""
    t = as_matrix(t)
    sizes = [int(s) for s in sizes]
    n = t.shape[1]
    if not sizes or any(s <= 0 for s in sizes) or sum(sizes) != n:
        raise InvalidBlockSpec(f"Block sizes {sizes} do not partition {n} columns.")
    edges = np.concatenate([[0], np.cumsum(sizes)])
    scale = max(1.0, float(np.linalg.norm(t)))
    rates = []
    for k in range(len(sizes)):
        lo, hi = edges[k], edges[k + 1]
        if np.linalg.norm(t[hi:, lo:hi]) > tol * scale:
            raise InvalidBlockSpec(f"Block column {k + 1} has mass below its diagonal block.")
        _, logdet = np.linalg.slogdet(t[lo:hi, lo:hi])
        rates.append(2.0 * float(logdet) / np.log(2.0))
    return np.array(rates)


# ---------------------------------------------------------------------------
# Single-user capacity
# ---------------------------------------------------------------------------

def water_filling(ch: Channel, power: float) -> InputCovariance:
    """Capacity-achieving covariance: water-filling over the eigenmodes of H^H H."""
    if power < 0:
        raise InvalidCovariance(f"Power budget must be non-negative, got {power}.")
    gains, modes = np.linalg.eigh(adjoint(ch.h) @ ch.h)
    order = np.argsort(gains)[::-1]
    gains, modes = np.clip(gains[order], 0.0, None), modes[:, order]
    alloc = np.zeros_like(gains)
    active = int(np.sum(gains > 0))
    while active > 0 and power > 0:
        inv = 1.0 / gains[:active]
        level = (power + np.sum(inv)) / active
        if level - inv[-1] >= 0:
            alloc[:active] = level - inv
            break
        active -= 1
    c = (modes * alloc[None, :]) @ adjoint(modes)
    return InputCovariance(c=c, power=power)


def capacity(ch: Channel, power: float) -> float:
    return mutual_information(ch, water_filling(ch, power))
