"""
jointri - CLI Interface
========================
Main entry point for the joint triangularization toolkit.

Commands:
  gtd         - Triangularize one matrix with a prescribed diagonal
  gmd         - Geometric mean decomposition of one matrix
  gsv         - Generalized singular values of a pair
  joint       - Joint triangularization of a pair with a ratio vector
  multicast   - Common-message scheme for two receivers
  rates       - Per-stream SIC rates and SINRs of one link, with Monte Carlo
  sdr-region  - SDR outer bound and hybrid achievable points of a pair
  fig4        - Two-band sweep: outer bound, baselines and hybrid scheme
  lemma1      - Monte Carlo check that mixed GSVs survive augmentation
  policy      - Display the active tolerance profile
  run         - Any of the above selected with --cmd

Exit status: 0 success, 1 invariant violation, 2 unreadable input or
configuration, 3 infeasible request (majorization or hybrid condition).

Results go to stdout or --out; status panels go to stderr.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import click
import numpy as np
from rich.console import Console
from rich.panel import Panel

from jointri._icons import ICON_FAIL, ICON_PASS, ICON_WARN
from jointri.audit_logger import AuditLogger
from jointri.checks import CheckReport
from jointri.decomp import (
    gmd,
    gsv,
    gtd,
    joint_triangularize,
)
from jointri.errors import (
    ConfigError,
    DimensionMismatch,
    InconsistentFactors,
    InvalidBlockSpec,
    InvalidCovariance,
    InvalidDimensions,
    InvariantViolation,
    MatrixParseError,
    NonFiniteEntries,
    NotFeasible,
    NotMajorized,
    RankDeficient,
)
from jointri.exporter import CSV_COLUMNS, render_csv, render_json, write_output
from jointri.jscc import (
    SdrCurve,
    SdrPoint,
    default_covariance_family,
    hda_feasible,
    hda_scheme,
    is_mixed,
    lemma1_check,
    lemma1_polynomials,
    mixed_pair_corollary,
    sample_mixed_pair,
    two_band_antidegraded,
    two_band_sweep,
)
from jointri.loader import SCENARIOS_DIR, load_matrix, load_scenario, scenario_channel
from jointri.majorize import geometric_mean_vector
from jointri.mimolink import (
    Channel,
    InputCovariance,
    augment,
    build_sic_scheme,
    simulate_sic,
    water_filling,
)
from jointri.multicast import (
    ChannelPair,
    build_multicast_scheme,
    optimize_covariance,
    verify_multicast,
)
from jointri.tolerance_policy import ToleranceProfile

console = Console(stderr=True)

VERSION = "1.0.0"

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3

FIG4_DEFAULT = {"alpha1": 1.0, "beta1": 10.0, "alpha2": 2.0, "beta2": 2.0, "power": 1.0}
SDR_REGION_WEIGHTS = 21
LEMMA1_TRIALS = 1000

_INPUT_ERRORS = (
    ConfigError,
    MatrixParseError,
    InvalidDimensions,
    NonFiniteEntries,
    DimensionMismatch,
    RankDeficient,
    InvalidBlockSpec,
    InvalidCovariance,
    InconsistentFactors,
)

_COUNT_MINIMUMS = {"gamma_points": 2, "weights": 1, "symbols": 1, "trials": 1}


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    output_path: str | None = None
    output_format: str = "json"
    seed: int = 0
    gamma_points: int | None = None
    weights: int | None = None
    power: float | None = None
    diag: str | None = None
    ratio: str | None = None
    scenario: str | None = None
    symbols: int | None = None
    trials: int | None = None
    cov: str | None = None
    tolerance_overrides: dict[str, Any] = field(default_factory=dict)
    audit_dir: str | None = None
    profile_path: str | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(
                f"Unknown command '{self.command}'. Known: {', '.join(sorted(COMMANDS))}"
            )
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"Unknown output format '{self.output_format}'.")
        for name, minimum in _COUNT_MINIMUMS.items():
            value = getattr(self, name)
            if value is not None and int(value) < minimum:
                flag = name.replace("_", "-")
                raise ConfigError(f"--{flag} must be at least {minimum}, got {value}.")


@dataclass
class Outcome:
    payload: dict[str, Any]
    report: CheckReport
    rows: list[dict[str, Any]] | None = None
    columns: tuple[str, ...] = CSV_COLUMNS


@dataclass
class RunResult:
    exit_code: int
    text: str
    report: CheckReport | None = None
    error: str | None = None


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _parse_vector(text: str | None, name: str) -> np.ndarray | None:
    if text is None:
        return None
    try:
        values = [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"--{name} must be a list of numbers, got '{text}'.") from exc
    if not values:
        raise ConfigError(f"--{name} is empty.")
    return np.array(values)


def _matrices(config: RunConfig, count: int) -> list[np.ndarray]:
    if len(config.inputs) != count:
        raise ConfigError(
            f"'{config.command}' needs {count} --in matrix file(s), got {len(config.inputs)}."
        )
    return [load_matrix(p) for p in config.inputs]


def _covariance(config: RunConfig, n_t: int, power: float) -> InputCovariance | None:
    if config.cov is None:
        return None
    c = load_matrix(config.cov)
    if c.shape != (n_t, n_t):
        raise DimensionMismatch(f"Covariance must be {n_t}x{n_t}, got {c.shape}.")
    try:
        return InputCovariance(c, max(power, float(np.real(np.trace(c)))))
    except InvalidCovariance as exc:
        raise InvalidCovariance(f"Covariance file {config.cov}: {exc}") from exc


def _power(config: RunConfig, default: float = 1.0) -> float:
    power = default if config.power is None else float(config.power)
    if power < 0:
        raise ConfigError(f"--power must be non-negative, got {power}.")
    return power


def _curve_rows(curves: list[SdrCurve]) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for curve in curves:
        rows.extend(curve.rows())
    return rows


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _cmd_gtd(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    (a,) = _matrices(config, 1)
    target = _parse_vector(config.diag, "diag")
    if target is None:
        raise ConfigError("'gtd' needs --diag.")
    fac = gtd(a, target, tol=profile.majorization, rank_tol=profile.rank)
    report = fac.check(a, target, profile.reconstruction, profile.unitarity, profile.ratio)
    payload = {"diagonal": fac.diagonal, "t": fac.t, "u": fac.u, "v": fac.v}
    return Outcome(payload, report)


def _cmd_gmd(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    (a,) = _matrices(config, 1)
    fac = gmd(a, rank_tol=profile.rank)
    target = geometric_mean_vector(np.linalg.svd(a, compute_uv=False)[: a.shape[1]])
    report = fac.check(a, target, profile.reconstruction, profile.unitarity, profile.ratio)
    payload = {"diagonal": fac.diagonal, "t": fac.t, "u": fac.u, "v": fac.v}
    return Outcome(payload, report)


def _cmd_gsv(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    a1, a2 = _matrices(config, 2)
    mu = gsv(a1, a2, rank_tol=profile.rank)
    _, ld1 = np.linalg.slogdet(a1.conj().T @ a1)
    _, ld2 = np.linalg.slogdet(a2.conj().T @ a2)
    report = CheckReport(subject="generalized singular values")
    gap = abs(2.0 * mu.log_product - (ld1 - ld2)) / max(1.0, abs(ld1) + abs(ld2))
    report.require("DET-PRODUCT", gap, profile.feasibility,
                   "|log prod mu^2 - log det(A1^H A1)/det(A2^H A2)| (relative)")
    payload = {**mu.to_dict(), "geometric_mean": mu.geometric_mean}
    if len(mu) == 2:
        payload["mixed"] = is_mixed(mu, profile.mixed_boundary)
    return Outcome(payload, report)


def _cmd_joint(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    a1, a2 = _matrices(config, 2)
    ratio = _parse_vector(config.ratio, "ratio")
    if ratio is None:
        ratio = geometric_mean_vector(gsv(a1, a2, rank_tol=profile.rank).values)
    jt = joint_triangularize(a1, a2, ratio, tol=profile.majorization, rank_tol=profile.rank)
    report = jt.check(a1, a2, ratio, profile.reconstruction, profile.unitarity, profile.ratio)
    payload = {
        "requested_ratio": ratio,
        "ratio": jt.ratio,
        "diagonal_1": jt.diagonal(1),
        "diagonal_2": jt.diagonal(2),
        "t1": jt.t1,
        "t2": jt.t2,
        "v": jt.v,
    }
    return Outcome(payload, report)


def _cmd_multicast(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    h1, h2 = _matrices(config, 2)
    pair = ChannelPair(Channel(h1), Channel(h2))
    power = _power(config)
    cx = _covariance(config, pair.n_t, power)
    solution = None
    if cx is None:
        solution = optimize_covariance(pair, power, profile.optimizer)
        cx = solution.covariance
    scheme = build_multicast_scheme(pair, cx)
    verdict = verify_multicast(scheme, profile.feasibility)
    report = verdict.report
    if solution is not None and not solution.converged:
        report.warn("OPTIMIZER", f"covariance search stopped after {solution.iterations} "
                                 "iterations without meeting its stopping rule")
    payload = {
        "scheme": scheme.to_dict(),
        "verification": verdict.to_dict(),
        "covariance": cx.c,
    }
    if solution is not None:
        payload["optimizer"] = solution.to_dict()
    rows = [dict(r.to_dict()) for r in verdict.streams]
    return Outcome(payload, report, rows, ("index", "rate", "sinr_better", "sinr_worse"))


def _cmd_rates(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    (h,) = _matrices(config, 1)
    ch = Channel(h)
    power = _power(config)
    cx = _covariance(config, ch.n_t, power) or water_filling(ch, power)
    scheme = build_sic_scheme(ch, cx, gmd(augment(ch, cx), rank_tol=profile.rank))
    report = scheme.check(ch, cx, profile.proposition)
    symbols = config.symbols or profile.symbols
    sim = simulate_sic(scheme, ch, cx, symbols, seed=config.seed, batch_size=profile.batch_size)
    if not sim.within(scheme.sinrs):
        report.warn("MONTE-CARLO", "empirical SINR outside 3 standard errors of the analytic value")
    payload = {
        "scheme": scheme.to_dict(),
        "covariance": cx.c,
        "simulation": {
            "sinrs": sim.sinrs,
            "standard_errors": sim.standard_errors,
            "num_symbols": sim.num_symbols,
            "seed": sim.seed,
        },
    }
    rows = [
        {"stream": j + 1, "rate": scheme.rates[j], "sinr": scheme.sinrs[j],
         "sinr_empirical": sim.sinrs[j], "standard_error": sim.standard_errors[j]}
        for j in range(ch.n_t)
    ]
    return Outcome(payload, report, rows,
                   ("stream", "rate", "sinr", "sinr_empirical", "standard_error"))


def _cmd_sdr_region(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    h1, h2 = _matrices(config, 2)
    pair = ChannelPair(Channel(h1), Channel(h2))
    power = _power(config)
    weights = config.weights or SDR_REGION_WEIGHTS
    family = default_covariance_family(pair, power, weights, profile.optimizer)
    report = CheckReport(subject="SDR region")

    bound_points, hda_points = [], []
    worst_gap = 0.0
    for param, cx in family:
        i1, i2 = pair.mutual_informations(cx)
        bound_points.append(SdrPoint(2.0 ** i1, 2.0 ** i2, param=param, label="outer bound"))
        if hda_feasible(pair, cx, tol=profile.majorization):
            hda = hda_scheme(pair, cx, tol=profile.majorization)
            worst_gap = max(worst_gap, hda.identity_gap)
            hda_points.append(SdrPoint(hda.point.sdr1, hda.point.sdr2, param=param,
                                       label="hybrid digital-analog"))
    report.require("HDA-IDENTITY", worst_gap, profile.feasibility,
                   "max |log2 SDR_i - I(H_i, C)| over feasible covariances (bits)")
    if len(hda_points) < len(family):
        report.warn("HDA-COVERAGE", f"{len(family) - len(hda_points)} of {len(family)} "
                                    "covariances fail the hybrid condition")
    bound = SdrCurve("outer bound", tuple(bound_points)).frontier()
    hda_curve = SdrCurve("hybrid digital-analog", tuple(hda_points)).frontier()

    corollary = None
    if pair.n_t == 2:
        try:
            corollary = mixed_pair_corollary(pair, family[0][1])
        except (RankDeficient, InvalidDimensions):
            corollary = None
    payload = {
        "outer_bound": bound,
        "hybrid": hda_curve,
        "mixed_channel_corollary": corollary,
    }
    return Outcome(payload, report, _curve_rows([bound, hda_curve]))


def _cmd_fig4(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    if config.scenario is not None:
        scenario = load_scenario(config.scenario)
    else:
        scenario = dict(FIG4_DEFAULT)
    if config.power is not None:
        scenario["power"] = _power(config)
    channel = scenario_channel(scenario)
    points = config.gamma_points or scenario.get("gamma_points") or profile.gamma_points
    grid = np.linspace(0.0, 1.0, int(points))
    try:
        sweep = two_band_sweep(channel, grid, profile.feasibility)
    except NotFeasible as exc:
        raise InvariantViolation(f"hybrid scheme failed on the sweep: {exc}") from exc
    payload = {
        "channel": {k: scenario[k] for k in ("alpha1", "beta1", "alpha2", "beta2", "power")},
        "gamma_points": len(grid),
        "antidegraded": two_band_antidegraded(channel),
        "separation_construction": "rate-domain time sharing of multicast and single-user points",
        "curves": {c.label: c for c in sweep.curves()},
    }
    return Outcome(payload, sweep.report, _curve_rows(sweep.curves()))


def _cmd_lemma1(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    trials = config.trials or LEMMA1_TRIALS
    rng = np.random.default_rng(config.seed)
    failures = 0
    worst_poly = 0.0
    for _ in range(trials):
        h1, h2, c = sample_mixed_pair(rng)
        if not lemma1_check(h1, h2, c, profile.mixed_boundary):
            failures += 1
        p1, q1 = lemma1_polynomials(h1, h2, c)
        worst_poly = max(worst_poly, abs(p1 - q1) / max(1.0, abs(p1)))
    report = CheckReport(subject="mixed GSVs under augmentation")
    report.require("LEMMA1-FAILURES", float(failures), 0.0, "trials where the property failed")
    report.require("POLY-IDENTITY", worst_poly, 1e-9,
                   "max relative gap between the determinant polynomials at one")
    payload = {"trials": trials, "failures": failures, "seed": config.seed,
               "max_polynomial_gap": worst_poly}
    return Outcome(payload, report)


def _cmd_policy(config: RunConfig, profile: ToleranceProfile) -> Outcome:
    report = CheckReport(subject="tolerance profile")
    return Outcome({"profile": profile.snapshot()}, report)


COMMANDS: dict[str, Callable[[RunConfig, ToleranceProfile], Outcome]] = {
    "gtd": _cmd_gtd,
    "gmd": _cmd_gmd,
    "gsv": _cmd_gsv,
    "joint": _cmd_joint,
    "multicast": _cmd_multicast,
    "rates": _cmd_rates,
    "sdr-region": _cmd_sdr_region,
    "fig4": _cmd_fig4,
    "lemma1": _cmd_lemma1,
    "policy": _cmd_policy,
}


# ---------------------------------------------------------------------------
# Pure entry point
# ---------------------------------------------------------------------------

def _error_text(config: RunConfig, exc: Exception, digits: int) -> str:
    payload: dict[str, Any] = {
        "command": config.command,
        "error": type(exc).__name__,
        "message": str(exc),
    }
    if isinstance(exc, NotMajorized):
        payload["prefix_index"] = exc.prefix_index
    return render_json(payload, digits)


def _render(config: RunConfig, outcome: Outcome, digits: int) -> str:
    if config.output_format == "csv":
        if outcome.rows is None:
            raise ConfigError(f"'{config.command}' has no tabular output; use --format json.")
        return render_csv(outcome.rows, outcome.columns, digits)
    return render_json(
        {"command": config.command, "result": outcome.payload, "checks": outcome.report},
        digits,
    )


def run(config: RunConfig) -> RunResult:
    """Execute one command without touching stdout or the process exit status."""
    profile = None
    digits = 12
    try:
        base = ToleranceProfile.load(config.profile_path)
        profile = base.with_overrides(config.tolerance_overrides)
        digits = profile.significant_digits
        outcome = COMMANDS[config.command](config, profile)
        text = _render(config, outcome, digits)
        code = EXIT_OK if outcome.report.passed else EXIT_INVARIANT
        result = RunResult(code, text, outcome.report)
    except (NotMajorized, NotFeasible) as exc:
        result = RunResult(EXIT_INFEASIBLE, _error_text(config, exc, digits), error=str(exc))
    except InvariantViolation as exc:
        result = RunResult(EXIT_INVARIANT, _error_text(config, exc, digits), error=str(exc))
    except _INPUT_ERRORS as exc:
        result = RunResult(EXIT_INPUT, _error_text(config, exc, digits), error=str(exc))

    if config.output_path and result.report is not None:
        write_output(result.text, config.output_path)
    if config.audit_dir or (profile is not None and profile.should_audit()):
        _audit(config, profile, result)
    return result


def _audit(config: RunConfig, profile: ToleranceProfile | None, result: RunResult) -> Path:
    logger = AuditLogger(Path(config.audit_dir) if config.audit_dir else None)
    inputs = list(config.inputs) + [p for p in (config.cov, config.scenario) if p]
    options = {
        "format": config.output_format,
        "gamma_points": config.gamma_points,
        "weights": config.weights,
        "power": config.power,
        "diag": config.diag,
        "ratio": config.ratio,
        "symbols": config.symbols,
        "trials": config.trials,
        "tolerance_overrides": config.tolerance_overrides,
    }
    return logger.log_run(
        operation=config.command,
        input_files=inputs,
        options=options,
        profile_snapshot=profile.snapshot() if profile is not None else None,
        seed=config.seed,
        checks=result.report.to_dict() if result.report is not None else None,
        exit_code=result.exit_code,
        output_file=config.output_path,
        error=result.error,
    )


# ---------------------------------------------------------------------------
# CLI Group
# ---------------------------------------------------------------------------

def _show(config: RunConfig, result: RunResult) -> None:
    console.print()
    if result.error is not None:
        console.print(Panel(result.error, title=f"{ICON_FAIL} {config.command} failed "
                                                f"(exit {result.exit_code})",
                            border_style="red"))
    elif result.report is not None:
        ok = result.report.passed
        warned = bool(result.report.warnings)
        icon = ICON_PASS if ok and not warned else (ICON_WARN if ok else ICON_FAIL)
        style = "green" if ok and not warned else ("yellow" if ok else "red")
        console.print(Panel(result.report.summary(), title=f"{icon} {config.command}",
                            border_style=style))
    if config.output_path and result.exit_code in (EXIT_OK, EXIT_INVARIANT):
        console.print(f"[green]{ICON_PASS}[/green] Written: {config.output_path}")


def _execute(**kwargs: Any) -> None:
    overrides = {"recon": kwargs.pop("tol_recon", None)}
    try:
        config = RunConfig(tolerance_overrides={k: v for k, v in overrides.items()
                                                if v is not None}, **kwargs)
    except ConfigError as exc:
        console.print(f"[red]{ICON_FAIL} {exc}[/red]")
        sys.exit(EXIT_INPUT)
    result = run(config)
    _show(config, result)
    if not config.output_path or result.exit_code not in (EXIT_OK, EXIT_INVARIANT):
        click.echo(result.text, nl=False)
    sys.exit(result.exit_code)


def _common_options(func: Callable) -> Callable:
    options = [
        click.option("--in", "inputs", multiple=True, type=click.Path(),
                     help="Matrix file (repeat for pairs)."),
        click.option("--out", "output_path", default=None, type=click.Path(),
                     help="Write the result here instead of stdout."),
        click.option("--format", "output_format", default="json",
                     type=click.Choice(["json", "csv"])),
        click.option("--seed", default=0, show_default=True, type=int),
        click.option("--gamma-points", default=None, type=int,
                     help="Points of the gamma grid for fig4; rows carry gamma in the "
                          "'gamma' column."),
        click.option("--power", default=None, type=float),
        click.option("--tol-recon", default=None, type=float,
                     help="Override the reconstruction tolerance."),
        click.option("--audit-dir", default=None, type=click.Path(),
                     help="Write an audit record for this run."),
        click.option("--profile", "profile_path", default=None, type=click.Path(),
                     help="Tolerance profile YAML."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.version_option(VERSION, prog_name="jointri")
def main():
    """jointri - joint unitary triangularization, SIC multicast and hybrid SDR analysis."""
    pass


@main.command("gtd")
@_common_options
@click.option("--diag", required=True, help="Target diagonal, e.g. '2,2'.")
def gtd_cmd(**kwargs):
    """Triangularize a matrix with a prescribed diagonal."""
    _execute(command="gtd", **kwargs)


@main.command("gmd")
@_common_options
def gmd_cmd(**kwargs):
    """Geometric mean decomposition."""
    _execute(command="gmd", **kwargs)


@main.command("gsv")
@_common_options
def gsv_cmd(**kwargs):
    """Generalized singular values of a pair."""
    _execute(command="gsv", **kwargs)


@main.command("joint")
@_common_options
@click.option("--ratio", default=None, help="Diagonal ratio vector; default equal ratio.")
def joint_cmd(**kwargs):
    """Joint triangularization of a pair."""
    _execute(command="joint", **kwargs)


@main.command("multicast")
@_common_options
@click.option("--cov", default=None, type=click.Path(), help="Input covariance matrix file.")
def multicast_cmd(**kwargs):
    """Common-message scheme for two receivers."""
    _execute(command="multicast", **kwargs)


@main.command("rates")
@_common_options
@click.option("--cov", default=None, type=click.Path(), help="Input covariance matrix file.")
@click.option("--symbols", default=None, type=int, help="Monte Carlo symbols.")
def rates_cmd(**kwargs):
    """Per-stream SIC rates and SINRs of a link."""
    _execute(command="rates", **kwargs)


@main.command("sdr-region")
@_common_options
@click.option("--weights", default=None, type=int,
              help=f"Weighted-sum covariances in the family (default {SDR_REGION_WEIGHTS}). "
                   "The 'gamma' column holds the covariance id.")
def sdr_region_cmd(**kwargs):
    """SDR outer bound and hybrid achievable points of a pair."""
    _execute(command="sdr-region", **kwargs)


@main.command("fig4")
@_common_options
@click.option("--scenario", default=None, type=click.Path(),
              help=f"Two-band scenario YAML (see {SCENARIOS_DIR.name}/).")
def fig4_cmd(**kwargs):
    """Two-band sweep: outer bound, baselines and hybrid scheme."""
    _execute(command="fig4", **kwargs)


@main.command("lemma1")
@_common_options
@click.option("--trials", default=None, type=int)
def lemma1_cmd(**kwargs):
    """Monte Carlo check that mixed GSVs survive augmentation."""
    _execute(command="lemma1", **kwargs)


@main.command("run")
@_common_options
@click.option("--cmd", "command", required=True, type=click.Choice(sorted(COMMANDS)))
@click.option("--diag", default=None)
@click.option("--ratio", default=None)
@click.option("--cov", default=None, type=click.Path())
@click.option("--scenario", default=None, type=click.Path())
@click.option("--symbols", default=None, type=int)
@click.option("--trials", default=None, type=int)
@click.option("--weights", default=None, type=int)
def run_cmd(**kwargs):
    """Run any command selected with --cmd."""
    _execute(**kwargs)


@main.command("policy")
@click.option("--profile", "profile_path", default=None, type=click.Path())
def policy_cmd(profile_path: str | None):
    """Display the active tolerance profile."""
    try:
        profile = ToleranceProfile.load(profile_path)
    except ConfigError as exc:
        console.print(f"[red]{ICON_FAIL} {exc}[/red]")
        sys.exit(EXIT_INPUT)
    console.print()
    console.print(Panel(
        profile.summary(),
        title=f"TOLERANCE PROFILE v{profile.version}",
        border_style="blue",
    ))


if __name__ == "__main__":
    main()
