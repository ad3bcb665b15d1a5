"""
Source Multicasting
====================
Signal-to-distortion analysis for sending one Gaussian source to two
receivers over a shared MIMO transmitter.

  sdr_outer_bound       -- SDR_i <= 2^{I(H_i, C)} swept over covariances
  hda_feasible          -- product condition on the augmented-pair GSVs
  hda_scheme            -- hybrid digital-analog construction that meets the
                           outer bound for both users at once
  two_band_bound        -- closed form for diagonal 2x2 channels
  baselines             -- separation and naive hybrid comparison curves
  lemma1_check          -- mixed GSVs survive the augmentation

The hybrid scheme jointly triangularizes the augmented pair with ratio
(prod mu, 1, ..., 1). Streams 2..N_t then have equal gains for both users
and carry the digital quantization index; stream 1 carries the analog
quantization error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.stats

from jointri.checks import CheckReport
from jointri.decomp import GsvSpectrum, JointTriangularization, gsv, joint_triangularize
from jointri.errors import InvalidCovariance, InvalidDimensions, InvariantViolation, NotFeasible
from jointri.majorize import MAJORIZATION_TOL
from jointri.matcore import adjoint
from jointri.mimolink import Channel, InputCovariance, augment
from jointri.multicast import (
    ChannelPair,
    OptimizerOptions,
    compound_mi,
    weighted_sum_covariance,
)


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

MIXED_TOL = 1e-12
IDENTITY_TOL = 1e-8
POLYNOMIAL_TOL = 1e-9
FRONTIER_TOL = 1e-12
OUTER_BOUND_WEIGHTS = 21
HULL_SAMPLES = 5


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SdrPoint:
    """Linear SDR pair; ``param`` records the covariance or gamma behind it."""
    sdr1: float
    sdr2: float
    param: float | str | None = None
    label: str = ""

    def __post_init__(self) -> None:
        for name in ("sdr1", "sdr2"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 1.0 - FRONTIER_TOL:
                raise ValueError(f"{name} must be a finite value >= 1, got {value}.")
            object.__setattr__(self, name, max(1.0, value))

    @property
    def sdr1_db(self) -> float:
        return 10.0 * float(np.log10(self.sdr1))

    @property
    def sdr2_db(self) -> float:
        return 10.0 * float(np.log10(self.sdr2))

    @property
    def log2(self) -> tuple[float, float]:
        return float(np.log2(self.sdr1)), float(np.log2(self.sdr2))

    def to_dict(self) -> dict:
        return {"sdr1": self.sdr1, "sdr2": self.sdr2, "param": self.param, "label": self.label}


@dataclass(frozen=True)
class SdrCurve:
    label: str
    points: tuple[SdrPoint, ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    def frontier(self) -> SdrCurve:
        """Pareto-optimal points, ordered by increasing SDR_1."""
        ordered = sorted(self.points, key=lambda p: (-p.sdr1, -p.sdr2))
        kept: list[SdrPoint] = []
        best2 = -np.inf
        for p in ordered:
            if p.sdr2 > best2 * (1 + FRONTIER_TOL):
                kept.append(p)
                best2 = p.sdr2
        return SdrCurve(label=self.label, points=tuple(reversed(kept)))

    def rows(self) -> list[dict]:
        return [
            {"gamma": p.param, "sdr1_db": p.sdr1_db, "sdr2_db": p.sdr2_db,
             "scheme": p.label or self.label}
            for p in self.points
        ]

    def to_dict(self) -> dict:
        return {"label": self.label, "points": [p.to_dict() for p in self.points]}


@dataclass(frozen=True)
class TwoBandChannel:
    """Diagonal two-input two-output channel: band gains alpha_i and beta_i."""
    alpha1: complex
    beta1: complex
    alpha2: complex
    beta2: complex
    power: float = 1.0

    def __post_init__(self) -> None:
        gains = np.array([self.alpha1, self.beta1, self.alpha2, self.beta2], dtype=complex)
        if not np.all(np.isfinite(gains)):
            raise ValueError("Band gains must be finite.")
        if self.power < 0:
            raise ValueError(f"Power must be non-negative, got {self.power}.")

    def pair(self) -> ChannelPair:
        return ChannelPair(
            Channel(np.diag([self.alpha1, self.beta1])),
            Channel(np.diag([self.alpha2, self.beta2])),
        )

    def covariance(self, gamma: float) -> InputCovariance:
        """gamma of the power on the alpha band, the rest on the beta band."""
        if not 0.0 <= gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
        return InputCovariance.diagonal(
            [gamma * self.power, (1.0 - gamma) * self.power], self.power
        )

    def band_snrs(self, gamma: float) -> tuple[np.ndarray, np.ndarray]:
        """Per-user SNRs on the alpha band and on the beta band."""
        a = np.abs([self.alpha1, self.alpha2]) ** 2 * gamma * self.power
        b = np.abs([self.beta1, self.beta2]) ** 2 * (1.0 - gamma) * self.power
        return a, b

    def sdr(self, gamma: float) -> SdrPoint:
        a, b = self.band_snrs(gamma)
        s = (1.0 + a) * (1.0 + b)
        return SdrPoint(s[0], s[1], param=float(gamma), label="outer bound")

    def mutual_informations(self, gamma: float) -> tuple[float, float]:
        return self.pair().mutual_informations(self.covariance(gamma))


@dataclass(frozen=True)
class HdaScheme:
    """
    Hybrid digital-analog construction for one covariance.

    ``analog_snrs`` and ``point`` are in the caller's user order;
    ``decomposition`` is in the order that satisfied the feasibility test.
    """
    decomposition: JointTriangularization
    digital_rate: float
    analog_snrs: tuple[float, float]
    swapped: bool
    identity_gap: float
    point: SdrPoint

    def check(self, tol: float = IDENTITY_TOL) -> CheckReport:
        report = CheckReport(subject="hybrid digital-analog scheme")
        report.require("HDA-IDENTITY", self.identity_gap, tol,
                       "max |log2 SDR_i - I(H_i, C)| (bits)")
        return report

    def to_dict(self) -> dict:
        return {
            "digital_rate": self.digital_rate,
            "analog_snrs": list(self.analog_snrs),
            "swapped": self.swapped,
            "identity_gap": self.identity_gap,
            "sdr": self.point.to_dict(),
        }


@dataclass(frozen=True)
class Baselines:
    separation: SdrCurve
    naive_hda: SdrCurve


# ---------------------------------------------------------------------------
# Outer bound
# ---------------------------------------------------------------------------

def _bound_point(pair: ChannelPair, cx: InputCovariance, param=None) -> SdrPoint:
    i1, i2 = pair.mutual_informations(cx)
    return SdrPoint(2.0 ** i1, 2.0 ** i2, param=param, label="outer bound")


def default_covariance_family(
    pair: ChannelPair,
    power: float,
    weights: int = OUTER_BOUND_WEIGHTS,
    opts: OptimizerOptions | None = None,
) -> list[tuple[str, InputCovariance]]:
    """Scaled identity plus weighted-sum maximisers over a weight grid."""
    family = [("identity", InputCovariance.scaled_identity(pair.n_t, power))]
    for w in np.linspace(0.0, 1.0, weights):
        sol = weighted_sum_covariance(pair, power, float(w), opts)
        family.append((f"w={w:.4f}", sol.covariance))
    return family


def sdr_outer_bound(
    pair: ChannelPair,
    power: float,
    covariances: Iterable[InputCovariance] | None = None,
    opts: OptimizerOptions | None = None,
) -> SdrCurve:
    """Pareto frontier of (2^{I(H_1,C)}, 2^{I(H_2,C)}) over a covariance family."""
    if power < 0:
        raise InvalidCovariance(f"Power budget must be non-negative, got {power}.")
    if power == 0:
        return SdrCurve(label="outer bound", points=(SdrPoint(1.0, 1.0, param=0.0,
                                                              label="outer bound"),))
    if covariances is None:
        family = default_covariance_family(pair, power, opts=opts)
    else:
        family = [(None, c) for c in covariances]
    points = tuple(_bound_point(pair, cx, param) for param, cx in family)
    return SdrCurve(label="outer bound", points=points).frontier()


# ---------------------------------------------------------------------------
# Hybrid digital-analog feasibility and construction
# ---------------------------------------------------------------------------

def hda_condition(mu, tol: float = MAJORIZATION_TOL) -> bool:
    """prod_j mu_j <= 1 <= prod_{j<N_t} mu_j, tested on logarithms."""
    values = mu.values if isinstance(mu, GsvSpectrum) else np.asarray(mu, dtype=float)
    logs = np.sort(np.log(values))[::-1]
    slack = tol * max(1.0, float(np.sum(np.abs(logs))))
    return bool(np.sum(logs) <= slack and np.sum(logs[:-1]) >= -slack)


def _augmented_gsv(pair: ChannelPair, cx: InputCovariance) -> np.ndarray:
    return gsv(augment(pair.h1, cx), augment(pair.h2, cx)).values


def hda_feasible(
    pair: ChannelPair,
    cx: InputCovariance,
    allow_swap: bool = True,
    tol: float = MAJORIZATION_TOL,
) -> bool:
    mu = _augmented_gsv(pair, cx)
    if hda_condition(mu, tol):
        return True
    return allow_swap and hda_condition(1.0 / mu, tol)


def hda_scheme(
    pair: ChannelPair,
    cx: InputCovariance,
    allow_swap: bool = True,
    tol: float = MAJORIZATION_TOL,
) -> HdaScheme:
    """Build the hybrid scheme; raises NotFeasible when the GSV condition fails."""
    mu = _augmented_gsv(pair, cx)
    if hda_condition(mu, tol):
        swapped = False
    elif allow_swap and hda_condition(1.0 / mu, tol):
        swapped, mu = True, np.sort(1.0 / mu)[::-1]
    else:
        raise NotFeasible(
            "Augmented generalized singular values fail the hybrid product condition "
            f"(mu = {np.array2string(mu, precision=6)})."
        )
    first, second = (pair.h2, pair.h1) if swapped else (pair.h1, pair.h2)
    ratio = np.ones(pair.n_t)
    ratio[0] = float(np.exp(np.sum(np.log(mu))))
    jt = joint_triangularize(augment(first, cx), augment(second, cx), ratio, tol=tol)

    d1, d2 = jt.diagonal(1), jt.diagonal(2)
    digital = float(np.sum(np.log2(d2[1:] ** 2)))
    snr_first = float(d1[0] ** 2 - 1.0)
    snr_second = float(d2[0] ** 2 - 1.0)
    snrs = (snr_second, snr_first) if swapped else (snr_first, snr_second)
    sdr = tuple(max(1.0, (1.0 + s) * 2.0 ** digital) for s in snrs)

    mis = pair.mutual_informations(cx)
    gap = max(abs(float(np.log2(s)) - i) for s, i in zip(sdr, mis))
    return HdaScheme(
        decomposition=jt,
        digital_rate=digital,
        analog_snrs=snrs,
        swapped=swapped,
        identity_gap=gap,
        point=SdrPoint(sdr[0], sdr[1], label="hybrid digital-analog"),
    )


def hda_achievable_point(pair: ChannelPair, cx: InputCovariance) -> SdrPoint:
    return hda_scheme(pair, cx).point


def proposition2_sdr(h1: complex, h2: complex, p: float, r_digital: float) -> SdrPoint:
    """Optimal SDRs for scalar channels plus a common digital side rate r_digital."""
    if p < 0 or r_digital < 0:
        raise ValueError("Power and digital rate must be non-negative.")
    scale = 2.0 ** r_digital
    return SdrPoint(
        (1.0 + abs(h1) ** 2 * p) * scale,
        (1.0 + abs(h2) ** 2 * p) * scale,
        label="scalar hybrid",
    )


# ---------------------------------------------------------------------------
# Mixed generalized singular values
# ---------------------------------------------------------------------------

def is_mixed(mu, tol: float = MIXED_TOL) -> bool:
    """One GSV at least one and the other at most one (closed comparison)."""
    values = mu.values if isinstance(mu, GsvSpectrum) else np.asarray(mu, dtype=float)
    if values.size != 2:
        raise InvalidDimensions(f"Mixed test needs exactly two GSVs, got {values.size}.")
    hi, lo = sorted(values, reverse=True)
    return bool(hi >= 1.0 - tol and lo <= 1.0 + tol)


def lemma1_polynomials(h1, h2, c) -> tuple[float, float]:
    """
    det(F_1^H F_1 - F_2^H F_2) and det(G_1^H G_1 - G_2^H G_2) for the
    channel products F_i = H_i C^{1/2} and their augmentations G_i.
    """
    ch1, ch2 = Channel(h1), Channel(h2)
    cx = c if isinstance(c, InputCovariance) else InputCovariance(c, float(np.real(np.trace(c))))
    g1, g2 = augment(ch1, cx), augment(ch2, cx)
    n = ch1.n_t
    f1, f2 = g1[:-n, :], g2[:-n, :]
    p1 = np.linalg.det(adjoint(f1) @ f1 - adjoint(f2) @ f2)
    q1 = np.linalg.det(adjoint(g1) @ g1 - adjoint(g2) @ g2)
    return float(np.real(p1)), float(np.real(q1))


def _polynomial_scale(h1, h2, c) -> float:
    cx = c if isinstance(c, InputCovariance) else InputCovariance(c, float(np.real(np.trace(c))))
    sq = cx.sqrt
    f1 = np.asarray(h1, dtype=complex) @ sq
    f2 = np.asarray(h2, dtype=complex) @ sq
    return float(
        (np.linalg.norm(adjoint(f1) @ f1) + np.linalg.norm(adjoint(f2) @ f2)) ** 2
    )


def lemma1_check(h1, h2, c, tol: float = MIXED_TOL) -> bool:
    """
    Mixed gsv(H_1, H_2) implies mixed gsv(G_1, G_2), together with the
    equality of the two determinant polynomials at one.
    """
    h1 = np.asarray(h1, dtype=complex)
    h2 = np.asarray(h2, dtype=complex)
    if h1.ndim != 2 or h1.shape[1] != 2 or h2.ndim != 2 or h2.shape[1] != 2:
        raise InvalidDimensions("Mixed-GSV check needs two-column channel matrices.")
    p1, q1 = lemma1_polynomials(h1, h2, c)
    scale = max(1.0, _polynomial_scale(h1, h2, c))
    if abs(p1 - q1) > POLYNOMIAL_TOL * scale:
        return False
    if not is_mixed(gsv(h1, h2), tol):
        return True
    cx = c if isinstance(c, InputCovariance) else InputCovariance(c, float(np.real(np.trace(c))))
    return is_mixed(_augmented_gsv(ChannelPair(Channel(h1), Channel(h2)), cx), tol)


def sample_mixed_pair(
    rng: np.random.Generator, n_r: int = 2
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Random two-column pair with mixed GSVs plus a random full-rank covariance.

    H_i = Q_i diag(d_i) X with d_1 / d_2 = (mu_hi, mu_lo), mu_hi >= 1 >= mu_lo.
    """
    if n_r < 2:
        raise InvalidDimensions(f"Need at least two receive antennas, got {n_r}.")
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q1 = scipy.stats.unitary_group.rvs(n_r, random_state=rng)[:, :2]
    q2 = scipy.stats.unitary_group.rvs(n_r, random_state=rng)[:, :2]
    d1 = rng.uniform(0.5, 2.0, 2)
    mu = np.array([rng.uniform(1.0, 4.0), 1.0 / rng.uniform(1.0, 4.0)])
    h1 = q1 @ np.diag(d1) @ x
    h2 = q2 @ np.diag(d1 / mu) @ x
    w = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    c = w @ adjoint(w) + 0.1 * np.eye(2)
    return h1, h2, c / np.real(np.trace(c))


def mixed_pair_corollary(pair: ChannelPair, cx: InputCovariance) -> bool:
    """
    For two transmit antennas with mixed gsv(H_1, H_2), every covariance
    gives an HDA-feasible augmented pair. Returns whether the hypothesis
    holds; raises InvariantViolation if it holds but the conclusion fails.
    """
    if pair.n_t != 2:
        raise InvalidDimensions(f"Corollary covers two transmit antennas, got {pair.n_t}.")
    if not is_mixed(gsv(pair.h1.h, pair.h2.h)):
        return False
    if not hda_feasible(pair, cx, allow_swap=True):
        raise InvariantViolation("Mixed channel pair produced an infeasible augmented pair.")
    return True


# ---------------------------------------------------------------------------
# Two-band special case
# ---------------------------------------------------------------------------

def _check_grid(gamma_grid) -> np.ndarray:
    grid = np.asarray(gamma_grid, dtype=float).reshape(-1)
    if grid.size == 0 or np.any(grid < 0) or np.any(grid > 1):
        raise ValueError("gamma grid must be non-empty and lie within [0, 1].")
    return grid


def two_band_bound(ch: TwoBandChannel, gamma_grid) -> SdrCurve:
    """SDR_i = (1 + |alpha_i|^2 gamma P)(1 + |beta_i|^2 (1 - gamma) P) per gamma."""
    grid = _check_grid(gamma_grid)
    return SdrCurve(label="outer bound", points=tuple(ch.sdr(float(g)) for g in grid))


def two_band_antidegraded(ch: TwoBandChannel) -> bool:
    """Neither user has the better gain on both bands."""
    a1, a2 = abs(ch.alpha1) ** 2, abs(ch.alpha2) ** 2
    b1, b2 = abs(ch.beta1) ** 2, abs(ch.beta2) ** 2
    return bool((a1 >= a2 and b1 <= b2) or (a1 <= a2 and b1 >= b2))


def _naive_hda_point(ch: TwoBandChannel, gamma: float) -> SdrPoint:
    a, b = ch.band_snrs(gamma)
    best = None
    for digital, analog in ((a, b), (b, a)):
        scale = 1.0 + float(np.min(digital))
        sdr = (1.0 + analog) * scale
        if best is None or np.sum(np.log2(sdr)) > np.sum(np.log2(best)):
            best = sdr
    return SdrPoint(best[0], best[1], param=float(gamma), label="naive hda")


def _separation_points(ch: TwoBandChannel, gamma: float, samples: int) -> list[SdrPoint]:
    cx = ch.covariance(gamma)
    pair = ch.pair()
    i1, i2 = pair.mutual_informations(cx)
    m = compound_mi(pair, cx)
    vertices = [(i1, 0.0), (m, m), (0.0, i2)]
    rates = [vertices[0]]
    for (x0, y0), (x1, y1) in zip(vertices[:-1], vertices[1:]):
        for lam in np.linspace(0.0, 1.0, samples + 2)[1:]:
            rates.append(((1 - lam) * x0 + lam * x1, (1 - lam) * y0 + lam * y1))
    return [SdrPoint(2.0 ** r1, 2.0 ** r2, param=float(gamma), label="separation")
            for r1, r2 in rates]


def baselines(ch: TwoBandChannel, gamma_grid, samples: int = HULL_SAMPLES) -> Baselines:
    """
    Comparison curves per gamma.

    naive_hda: one band digital at the worse user's rate, the other analog;
    the assignment with the larger sum of log-SDRs is kept.
    separation: time sharing, in the rate domain, between the common
    multicast point and each single-user corner.
    """
    grid = _check_grid(gamma_grid)
    naive = tuple(_naive_hda_point(ch, float(g)) for g in grid)
    sep: list[SdrPoint] = []
    for g in grid:
        sep.extend(_separation_points(ch, float(g), samples))
    return Baselines(
        separation=SdrCurve(label="separation", points=tuple(sep)),
        naive_hda=SdrCurve(label="naive hda", points=naive),
    )


def hda_frontier(ch: TwoBandChannel, gamma_grid) -> SdrCurve:
    """Hybrid scheme evaluated at every gamma; raises NotFeasible on failure."""
    grid = _check_grid(gamma_grid)
    pair = ch.pair()
    points = []
    for g in grid:
        pt = hda_scheme(pair, ch.covariance(float(g))).point
        points.append(SdrPoint(pt.sdr1, pt.sdr2, param=float(g), label="hybrid digital-analog"))
    return SdrCurve(label="hybrid digital-analog", points=tuple(points))


@dataclass
class Fig4Sweep:
    """Outer bound, baselines and hybrid points for one two-band channel."""
    channel: TwoBandChannel
    gamma_grid: np.ndarray
    bound: SdrCurve
    separation: SdrCurve
    naive_hda: SdrCurve
    hda: SdrCurve
    report: CheckReport = field(default_factory=lambda: CheckReport(subject="two-band sweep"))

    def curves(self) -> list[SdrCurve]:
        return [self.bound, self.separation, self.naive_hda, self.hda]


def two_band_sweep(ch: TwoBandChannel, gamma_grid, tol: float = IDENTITY_TOL) -> Fig4Sweep:
    grid = _check_grid(gamma_grid)
    bound = two_band_bound(ch, grid)
    base = baselines(ch, grid)
    hda = hda_frontier(ch, grid)
    sweep = Fig4Sweep(ch, grid, bound, base.separation, base.naive_hda, hda)

    def excess(point: SdrPoint, ref: SdrPoint) -> float:
        return max(point.log2[0] - ref.log2[0], point.log2[1] - ref.log2[1], 0.0)

    by_gamma = {p.param: p for p in bound.points}
    hda_gap = max(
        max(abs(a - b) for a, b in zip(h.log2, by_gamma[h.param].log2)) for h in hda.points
    )
    inside = max(excess(p, by_gamma[p.param]) for p in base.separation.points + base.naive_hda.points)
    sweep.report.require("HDA-BOUND", hda_gap, tol, "max |log2 SDR_hda - log2 SDR_bound| (bits)")
    sweep.report.require("BASELINE-INSIDE", inside, tol, "max baseline excess over bound (bits)")
    return sweep
