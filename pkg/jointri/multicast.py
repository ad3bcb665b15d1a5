"""
Two-User Multicast
===================
Common-message transmission to two receivers that share the transmitter.

The multicast rate for a covariance C is the compound mutual information
min_i I(H_i, C). Both augmented channels are jointly triangularized with a
constant diagonal ratio, so one set of per-stream codebooks serves both
users: the worse user decodes every stream at exactly its codebook rate and
the better user sees a SINR at least as large on every stream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from jointri.checks import CheckReport
from jointri.decomp import JointTriangularization, joint_equal_ratio, joint_triangularize
from jointri.errors import DimensionMismatch, InvalidCovariance
from jointri.matcore import adjoint, hermitian_sqrt
from jointri.mimolink import (
    Channel,
    InputCovariance,
    SicScheme,
    augment,
    build_sic_scheme,
    mutual_information,
    sic_sinrs,
    water_filling,
)


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

MULTICAST_TOL = 1e-8
# both users count as active when their MIs differ by less than this
ACTIVE_TOL = 1e-9
# a water-filling covariance is a certificate when the other user clears it by this
CERTIFICATE_SLACK = 1e-12


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChannelPair:
    h1: Channel
    h2: Channel

    def __post_init__(self) -> None:
        h1 = self.h1 if isinstance(self.h1, Channel) else Channel(self.h1)
        h2 = self.h2 if isinstance(self.h2, Channel) else Channel(self.h2)
        if h1.n_t != h2.n_t:
            raise DimensionMismatch(
                f"Users see {h1.n_t} and {h2.n_t} transmit antennas; they must agree."
            )
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)

    @property
    def n_t(self) -> int:
        return self.h1.n_t

    def channel(self, i: int) -> Channel:
        if i not in (1, 2):
            raise ValueError(f"User index must be 1 or 2, got {i}.")
        return self.h1 if i == 1 else self.h2

    def swapped(self) -> ChannelPair:
        return ChannelPair(h1=self.h2, h2=self.h1)

    def mutual_informations(self, cx: InputCovariance) -> tuple[float, float]:
        return mutual_information(self.h1, cx), mutual_information(self.h2, cx)


@dataclass(frozen=True)
class OptimizerOptions:
    iterations: int = 2000
    patience: int = 200
    grid_points: int = 201
    active_tolerance: float = ACTIVE_TOL


@dataclass(frozen=True)
class CovarianceSolution:
    """
    Best covariance found by the max-min search.

    ``certificate`` names the candidate that produced it; a water-filling
    certificate means the objective equals a single-user capacity and is
    therefore globally optimal.
    """
    covariance: InputCovariance
    objective: float
    converged: bool
    iterations: int
    certificate: str

    def to_dict(self) -> dict:
        return {
            "covariance": self.covariance.c,
            "objective": self.objective,
            "converged": self.converged,
            "iterations": self.iterations,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class MulticastScheme:
    """
    Shared precoder and per-user SIC receivers for a common message.

    ``schemes`` and every per-user field are in the caller's user order.
    ``decomposition`` is in (better, worse) order.
    """
    pair: ChannelPair
    covariance: InputCovariance
    decomposition: JointTriangularization
    v: np.ndarray
    schemes: tuple[SicScheme, SicScheme]
    common_rates: np.ndarray
    total_rate: float
    users_swapped: bool

    @property
    def better_user(self) -> int:
        return 2 if self.users_swapped else 1

    @property
    def worse_user(self) -> int:
        return 3 - self.better_user

    def scheme(self, i: int) -> SicScheme:
        if i not in (1, 2):
            raise ValueError(f"User index must be 1 or 2, got {i}.")
        return self.schemes[i - 1]

    def to_dict(self) -> dict:
        return {
            "better_user": self.better_user,
            "common_rates": self.common_rates,
            "total_rate": self.total_rate,
            "ratio": self.decomposition.ratio,
            "sinrs_user1": self.schemes[0].sinrs,
            "sinrs_user2": self.schemes[1].sinrs,
        }


@dataclass(frozen=True)
class StreamRow:
    index: int
    rate: float
    sinr_better: float
    sinr_worse: float

    @property
    def dominance_gap(self) -> float:
        """How far the better user's SINR falls short of the worse user's."""
        return max(0.0, self.sinr_worse - self.sinr_better)

    @property
    def equality_gap(self) -> float:
        return abs(float(np.log2(1.0 + self.sinr_worse)) - self.rate)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "rate": self.rate,
            "sinr_better": self.sinr_better,
            "sinr_worse": self.sinr_worse,
        }


@dataclass
class MulticastReport:
    streams: list[StreamRow] = field(default_factory=list)
    report: CheckReport = field(default_factory=lambda: CheckReport(subject="multicast scheme"))
    failing_stream: int | None = None

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failing_stream": self.failing_stream,
            "streams": [s.to_dict() for s in self.streams],
            "checks": self.report.to_dict(),
        }


# ---------------------------------------------------------------------------
# Compound mutual information
# ---------------------------------------------------------------------------

def compound_mi(pair: ChannelPair, cx: InputCovariance) -> float:
    """min_i I(H_i, C), the common rate both users can decode."""
    return min(pair.mutual_informations(cx))


def _mi_gradient(ch: Channel, c: np.ndarray) -> np.ndarray:
    """d I(H, C) / dC = H^H (I + H C H^H)^{-1} H / ln 2."""
    h = ch.h
    k = np.eye(ch.n_r) + h @ c @ adjoint(h)
    g = adjoint(h) @ np.linalg.solve(k, h) / np.log(2.0)
    return 0.5 * (g + adjoint(g))


def _project_simplex(values: np.ndarray, total: float) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum(x) <= total}."""
    clipped = np.clip(values, 0.0, None)
    if clipped.sum() <= total:
        return clipped
    u = np.sort(values)[::-1]
    css = np.cumsum(u) - total
    idx = np.arange(1, u.size + 1)
    rho = int(np.nonzero(u - css / idx > 0)[0][-1])
    theta = css[rho] / (rho + 1)
    return np.clip(values - theta, 0.0, None)


def project_covariance(c: np.ndarray, power: float) -> np.ndarray:
    """Nearest Hermitian PSD matrix with trace at most ``power``."""
    herm = 0.5 * (c + adjoint(c))
    w, v = np.linalg.eigh(herm)
    w = _project_simplex(w, power)
    return (v * w[None, :]) @ adjoint(v)


def _objective(pair: ChannelPair, c: np.ndarray, power: float) -> float:
    return compound_mi(pair, InputCovariance(c, power))


# ---------------------------------------------------------------------------
# Covariance search
# ---------------------------------------------------------------------------

def _water_filling_candidates(pair: ChannelPair, power: float):
    for i in (1, 2):
        wf = water_filling(pair.channel(i), power)
        own = mutual_information(pair.channel(i), wf)
        other = mutual_information(pair.channel(3 - i), wf)
        yield wf, min(own, other), other >= own - CERTIFICATE_SLACK, f"water-filling user {i}"


def _diagonal_candidates(pair: ChannelPair, power: float, opts: OptimizerOptions):
    n_t = pair.n_t
    if n_t == 2:
        def neg(gamma: float) -> float:
            cx = InputCovariance.diagonal([gamma * power, (1.0 - gamma) * power], power)
            return -compound_mi(pair, cx)

        res = scipy.optimize.minimize_scalar(
            neg, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12}
        )
        grid = np.linspace(0.0, 1.0, opts.grid_points)
        best = min(np.append(grid, res.x), key=neg)
        yield InputCovariance.diagonal([best * power, (1.0 - best) * power], power)
    elif n_t == 3:
        steps = max(2, int(np.sqrt(opts.grid_points)) * 2)
        for a, b in itertools.product(range(steps + 1), repeat=2):
            if a + b <= steps:
                w = np.array([a, b, steps - a - b], dtype=float) / steps
                yield InputCovariance.diagonal(w * power, power)


def optimize_covariance(
    pair: ChannelPair,
    power: float,
    opts: OptimizerOptions | None = None,
) -> CovarianceSolution:
    """
    Maximise min_i I(H_i, C) over Hermitian PSD C with trace(C) <= power.

    The objective is concave; the search combines closed-form candidates
    with projected supergradient ascent (step p / sqrt(k) along the
    normalised supergradient of the active user).
    """
    if power < 0:
        raise InvalidCovariance(f"Power budget must be non-negative, got {power}.")
    opts = opts or OptimizerOptions()
    n_t = pair.n_t
    start = InputCovariance.scaled_identity(n_t, power)
    best_c, best_val, label = start.c, compound_mi(pair, start), "scaled identity"
    if power == 0:
        return CovarianceSolution(start, best_val, True, 0, label)

    for wf, value, certified, name in _water_filling_candidates(pair, power):
        if certified:
            return CovarianceSolution(wf, value, True, 0, name)
        if value > best_val:
            best_c, best_val, label = wf.c, value, name

    for cand in _diagonal_candidates(pair, power, opts):
        value = compound_mi(pair, cand)
        if value > best_val:
            best_c, best_val, label = cand.c, value, "diagonal refinement"

    c = best_c.copy()
    stale = 0
    converged = False
    k = 0
    for k in range(1, opts.iterations + 1):
        i1 = mutual_information(pair.h1, InputCovariance(c, power))
        i2 = mutual_information(pair.h2, InputCovariance(c, power))
        if abs(i1 - i2) <= opts.active_tolerance:
            g = 0.5 * (_mi_gradient(pair.h1, c) + _mi_gradient(pair.h2, c))
        else:
            g = _mi_gradient(pair.h1 if i1 < i2 else pair.h2, c)
        norm = np.linalg.norm(g)
        if norm == 0:
            converged = True
            break
        c = project_covariance(c + (power / np.sqrt(k)) * g / norm, power)
        value = _objective(pair, c, power)
        if value > best_val + 1e-15:
            best_c, best_val, label = c.copy(), value, "projected supergradient"
            stale = 0
        else:
            stale += 1
            if stale >= opts.patience:
                converged = True
                break
    return CovarianceSolution(
        covariance=InputCovariance(best_c, power),
        objective=best_val,
        converged=converged,
        iterations=k,
        certificate=label,
    )


def weighted_sum_covariance(
    pair: ChannelPair,
    power: float,
    weight: float,
    opts: OptimizerOptions | None = None,
) -> CovarianceSolution:
    """Maximise w I(H_1, C) + (1 - w) I(H_2, C) by projected gradient ascent."""
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"Weight must lie in [0, 1], got {weight}.")
    opts = opts or OptimizerOptions()
    if weight in (0.0, 1.0) or power == 0:
        i = 1 if weight == 1.0 else 2
        wf = water_filling(pair.channel(i), power)
        return CovarianceSolution(wf, mutual_information(pair.channel(i), wf), True, 0,
                                  f"water-filling user {i}")

    def value_of(c: np.ndarray) -> float:
        i1, i2 = pair.mutual_informations(InputCovariance(c, power))
        return weight * i1 + (1.0 - weight) * i2

    c = InputCovariance.scaled_identity(pair.n_t, power).c
    best_c, best_val = c, value_of(c)
    stale = 0
    converged = False
    k = 0
    for k in range(1, opts.iterations + 1):
        g = weight * _mi_gradient(pair.h1, c) + (1.0 - weight) * _mi_gradient(pair.h2, c)
        norm = np.linalg.norm(g)
        if norm == 0:
            converged = True
            break
        c = project_covariance(c + (power / np.sqrt(k)) * g / norm, power)
        value = value_of(c)
        if value > best_val + 1e-15:
            best_c, best_val, stale = c.copy(), value, 0
        else:
            stale += 1
            if stale >= opts.patience:
                converged = True
                break
    return CovarianceSolution(InputCovariance(best_c, power), best_val, converged, k,
                              "projected gradient")


# ---------------------------------------------------------------------------
# Scheme construction
# ---------------------------------------------------------------------------

def build_multicast_scheme(
    pair: ChannelPair,
    cx: InputCovariance,
    ratio=None,
) -> MulticastScheme:
    """
    Equal-ratio joint scheme for a common message.

    Users are internally ordered so the first has the larger mutual
    information. ``ratio`` overrides the uniform ratio; it must keep every
    entry at least one for the dominance property to hold.
    """
    i1, i2 = pair.mutual_informations(cx)
    swapped = i1 < i2
    better, worse = (pair.h2, pair.h1) if swapped else (pair.h1, pair.h2)
    g_better = augment(better, cx)
    g_worse = augment(worse, cx)
    if ratio is None:
        jt = joint_equal_ratio(g_better, g_worse)
    else:
        jt = joint_triangularize(g_better, g_worse, ratio)

    s_better = build_sic_scheme(better, cx, jt.user_factors(1))
    s_worse = build_sic_scheme(worse, cx, jt.user_factors(2))
    schemes = (s_worse, s_better) if swapped else (s_better, s_worse)
    return MulticastScheme(
        pair=pair,
        covariance=cx,
        decomposition=jt,
        v=jt.v,
        schemes=schemes,
        common_rates=s_worse.rates.copy(),
        total_rate=float(np.sum(s_worse.rates)),
        users_swapped=swapped,
    )


def _sinrs_for(ch: Channel, cx: InputCovariance, w: np.ndarray, v: np.ndarray) -> np.ndarray:
    f = ch.h @ hermitian_sqrt(cx.c)
    return sic_sinrs(adjoint(w) @ f @ v, adjoint(w) @ w)


def verify_multicast(scheme: MulticastScheme, tol: float = MULTICAST_TOL) -> MulticastReport:
    """
    Recompute both users' SINRs through the scheme's precoder and check the
    dominance and equality properties stream by stream.
    """
    pair, cx = scheme.pair, scheme.covariance
    b, w = scheme.better_user, scheme.worse_user
    sinr_b = _sinrs_for(pair.channel(b), cx, scheme.scheme(b).w, scheme.v)
    sinr_w = _sinrs_for(pair.channel(w), cx, scheme.scheme(w).w, scheme.v)

    out = MulticastReport()
    worst, worst_gap = None, 0.0
    for j, rate in enumerate(scheme.common_rates):
        row = StreamRow(index=j + 1, rate=float(rate),
                        sinr_better=float(sinr_b[j]), sinr_worse=float(sinr_w[j]))
        out.streams.append(row)
        gap = max(row.dominance_gap, row.equality_gap)
        if gap > tol and gap > worst_gap:
            worst, worst_gap = row.index, gap

    dominance = max(r.dominance_gap for r in out.streams)
    equality = max(r.equality_gap for r in out.streams)
    out.report.require("DOMINANCE", dominance, tol, "max S_worse - S_better over streams")
    out.report.require("EQUALITY", equality, tol, "max |log2(1+S_worse) - R_j| (bits)")
    achieved = float(np.sum(np.log2(1.0 + sinr_w)))
    out.report.require("COMMON-RATE", abs(achieved - compound_mi(pair, cx)), tol,
                       "|sum log2(1+S_worse) - min_i I(H_i, C)| (bits)")
    out.failing_stream = worst
    return out
