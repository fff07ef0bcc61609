"""Config-driven experiment drivers and their CSV/JSON output.

Five experiments: convergence-rate sweeps with rescaled-error collapse,
a consistency comparison against the randomized range-finder baseline,
a battery of Monte-Carlo theory checks emitted as a JSON report, the
sensor-network cost/accuracy sweep, and low-rank truncation studies.

Every row of output is reproducible bitwise (except wall-clock timings) from
the master seed: row r of an experiment uses the stream
``RngStream(master_seed, r)``, with fixed child slots for the covariance,
the data, and the projections.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .baselines import hmt_estimate, sample_covariance
from .errors import CheckFailedError, ConfigError
from .estimator import (
    estimate,
    expected_observed_cov,
    debias,
    rank_truncate,
    subspace_error,
    subspace_estimate,
)
from .linalg import SymMatrix, inf_norm, spectral_norm, sym_eig, top_k_projector
from .sampling import (
    GaussianSpec,
    RngStream,
    beta_moment,
    compress,
    sample_gaussian,
    sample_random_basis,
)
from .simnet import Protocol, sweep_tradeoff
from .theory import (
    frob_projection_moment,
    gaussian_tail_bounds,
    mc_kl_contraction,
    rescale_error,
)

try:
    from importlib.metadata import version as _pkg_version

    VERSION = _pkg_version("covest")
except Exception:  # pragma: no cover - metadata missing in odd installs
    VERSION = "unknown"

EXPERIMENTS = ("rates", "compare_hmt", "theory_checks", "network_sweep", "lowrank")
SIGMA_KINDS = ("identity", "random_psd", "spiked", "rank_k")
NORM_TARGETS = ("spectral", "inf")
ERROR_TARGETS = ("population", "sample")
RESCALE_VARIANTS = ("d3_text", "d2_caption")
TRUNCATE_ORDERS = ("signed", "magnitude")


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated settings for one experiment run."""

    experiment: str
    d: tuple[int, ...]
    m: tuple[int, ...]
    n_grid: tuple[int, ...]
    trials: int
    master_seed: int
    sigma_kind: str
    k: int
    norm_target: str
    error_target: str
    rescale_variant: str
    protocol: str
    oversample: int
    reps: int
    threads: int
    out: str


_DEFAULTS: dict[str, dict[str, Any]] = {
    "rates": {
        "d": (16, 32),
        "m": (1, 2, 4),
        "n_grid": (100, 562, 3162, 17783, 100000),
        "trials": 20,
        "sigma_kind": "identity",
    },
    "compare_hmt": {
        "d": (40,),
        "m": (5,),
        "n_grid": (1000, 10000, 100000),
        "trials": 10,
        "sigma_kind": "random_psd",
    },
    "theory_checks": {
        "d": (8,),
        "m": (2,),
        "n_grid": (1000,),
        "trials": 1,
        "sigma_kind": "identity",
        "reps": 20000,
        "out": "theory_checks.json",
    },
    "network_sweep": {
        "d": (8,),
        "m": (1, 2, 4, 8),
        "n_grid": (2000,),
        "trials": 10,
        "sigma_kind": "random_psd",
    },
    "lowrank": {
        "d": (8,),
        "m": (1, 2, 4),
        "n_grid": (500, 2000),
        "trials": 20,
        "sigma_kind": "rank_k",
    },
}

_COMMON_DEFAULTS: dict[str, Any] = {
    "trials": 20,
    "master_seed": 20240,
    "sigma_kind": "identity",
    "k": 2,
    "norm_target": "spectral",
    "error_target": "population",
    "rescale_variant": "d3_text",
    "protocol": "synchronized_seed",
    "oversample": 0,
    "reps": 20000,
    "threads": 1,
}


def _as_int(value: Any, name: str, problems: list[str]) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        problems.append(f"{name}: expected an integer, got {value!r}")
        return 0
    return value


def _as_int_tuple(value: Any, name: str, problems: list[str]) -> tuple[int, ...]:
    items = value if isinstance(value, (list, tuple)) else [value]
    out = []
    for item in items:
        out.append(_as_int(item, name, problems))
    if not out:
        problems.append(f"{name}: grid must be non-empty")
    return tuple(out)


def _as_choice(value: Any, name: str, choices: tuple[str, ...], problems: list[str]) -> str:
    if value not in choices:
        problems.append(f"{name}: expected one of {choices}, got {value!r}")
        return choices[0]
    return str(value)


def make_config(experiment: str, settings: dict[str, Any] | None = None) -> ExperimentConfig:
    """Resolve defaults, apply overrides, and validate.

    ``settings`` holds raw values as they would appear in a TOML file; unknown
    keys and type or range violations are all collected and reported together
    in a single ConfigError.
    """
    problems: list[str] = []
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"experiment: expected one of {EXPERIMENTS}, got {experiment!r}")
    merged: dict[str, Any] = dict(_COMMON_DEFAULTS)
    merged.update(_DEFAULTS[experiment])
    merged.setdefault("out", f"{experiment}.csv")
    known = {f.name for f in fields(ExperimentConfig)}
    for key, value in (settings or {}).items():
        if key == "experiment":
            if value != experiment:
                problems.append(
                    f"experiment: config file says {value!r} but {experiment!r} was requested"
                )
            continue
        if key not in known:
            problems.append(f"unknown config key {key!r}")
            continue
        merged[key] = value
    if problems:
        raise ConfigError("; ".join(problems))

    d = _as_int_tuple(merged["d"], "d", problems)
    m = _as_int_tuple(merged["m"], "m", problems)
    n_grid = _as_int_tuple(merged["n_grid"], "n_grid", problems)
    trials = _as_int(merged["trials"], "trials", problems)
    master_seed = _as_int(merged["master_seed"], "master_seed", problems)
    k = _as_int(merged["k"], "k", problems)
    oversample = _as_int(merged["oversample"], "oversample", problems)
    reps = _as_int(merged["reps"], "reps", problems)
    threads = _as_int(merged["threads"], "threads", problems)
    sigma_kind = _as_choice(merged["sigma_kind"], "sigma_kind", SIGMA_KINDS, problems)
    norm_target = _as_choice(merged["norm_target"], "norm_target", NORM_TARGETS, problems)
    error_target = _as_choice(merged["error_target"], "error_target", ERROR_TARGETS, problems)
    rescale_variant = _as_choice(
        merged["rescale_variant"], "rescale_variant", RESCALE_VARIANTS, problems
    )
    protocol = _as_choice(
        merged["protocol"], "protocol", tuple(p.value for p in Protocol), problems
    )
    out = merged["out"]
    if not isinstance(out, str) or not out:
        problems.append(f"out: expected a non-empty path string, got {out!r}")
        out = "out.csv"
    if problems:
        raise ConfigError("; ".join(problems))

    if any(v < 1 for v in d):
        problems.append("d: dimensions must be >= 1")
    if any(v < 1 for v in m):
        problems.append("m: widths must be >= 1")
    if any(v < 1 for v in n_grid):
        problems.append("n_grid: sample counts must be >= 1")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        problems.append("n_grid: must be strictly increasing")
    if trials < 1:
        problems.append("trials: must be >= 1")
    if k < 1:
        problems.append("k: must be >= 1")
    if oversample < 0:
        problems.append("oversample: must be >= 0")
    if reps < 1:
        problems.append("reps: must be >= 1")
    if threads < 1:
        problems.append("threads: must be >= 1")
    if not any(mm <= dd for mm in m for dd in d):
        problems.append("m: no width fits inside any configured dimension")
    if problems:
        raise ConfigError("; ".join(problems))

    return ExperimentConfig(
        experiment=experiment,
        d=d,
        m=m,
        n_grid=n_grid,
        trials=trials,
        master_seed=master_seed,
        sigma_kind=sigma_kind,
        k=k,
        norm_target=norm_target,
        error_target=error_target,
        rescale_variant=rescale_variant,
        protocol=protocol,
        oversample=oversample,
        reps=reps,
        threads=threads,
        out=out,
    )


def load_config(experiment: str, path: str | None = None, **overrides: Any) -> ExperimentConfig:
    """Build a config from an optional TOML file plus keyword overrides."""
    settings: dict[str, Any] = {}
    if path is not None:
        try:
            import tomllib
        except ModuleNotFoundError:  # pragma: no cover - python < 3.11
            import tomli as tomllib
        try:
            with open(path, "rb") as fh:
                settings = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config file is not valid TOML: {exc}")
    settings.update({k: v for k, v in overrides.items() if v is not None})
    return make_config(experiment, settings)


@dataclass(frozen=True)
class ResultRow:
    """One experiment measurement; the CSV schema in declared field order."""

    experiment: str
    d: int
    m: int
    n: int
    trial: int
    seed: int
    method: str
    err_inf: float
    err_spec: float
    err_inf_rescaled: float
    err_spec_rescaled: float
    subspace_err: float | None
    wall_ms: float


RESULT_FIELDS = tuple(f.name for f in fields(ResultRow))


def make_sigma(
    kind: str, d: int, k: int, norm_target: str, rng: RngStream
) -> SymMatrix:
    """Draw a population covariance of the requested kind, normalized to unit norm.

    ``identity`` needs no normalization; ``random_psd`` rotates uniform[0.1, 1]
    eigenvalues by a Haar frame; ``spiked`` places k eigenvalues in [1.5, 2]
    over a [0, 1] tail so a visible eigengap survives normalization;
    ``rank_k`` keeps k eigenvalues in [0.5, 1] and zeroes the rest.
    """
    if kind == "identity":
        return SymMatrix(np.eye(d))
    gen = rng.child(1).generator()
    if kind == "random_psd":
        evals = gen.uniform(0.1, 1.0, d)
    elif kind == "spiked":
        if k >= d:
            raise ConfigError("spiked covariance needs k < d")
        evals = np.concatenate([gen.uniform(1.5, 2.0, k), gen.uniform(0.0, 1.0, d - k)])
    elif kind == "rank_k":
        if k > d:
            raise ConfigError("rank_k covariance needs k <= d")
        evals = np.concatenate([gen.uniform(0.5, 1.0, k), np.zeros(d - k)])
    else:
        raise ConfigError(f"unknown sigma_kind {kind!r}")
    evals = -np.sort(-evals)
    q = sample_random_basis(d, d, rng.child(0)).columns
    sigma = SymMatrix((q * evals) @ q.T)
    norm = spectral_norm(sigma) if norm_target == "spectral" else inf_norm(sigma)
    return SymMatrix(sigma.entries / norm)


def _error_pair(est_matrix: SymMatrix, target: np.ndarray) -> tuple[float, float]:
    diff = est_matrix.entries - target
    return inf_norm(diff), spectral_norm(diff)


def _rescaled(err_inf: float, err_spec: float, n: int, m: int, d: int, variant: str):
    return (
        rescale_error(err_inf, n, m, d, "inf"),
        rescale_error(err_spec, n, m, d, "spectral", variant),
    )


def _run_tasks(tasks: list[Callable[[], Any]], threads: int) -> list[Any]:
    if threads <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda task: task(), tasks))


def _grid(config: ExperimentConfig) -> list[tuple[int, int, int]]:
    return [
        (d, m, n)
        for d in sorted(config.d)
        for m in sorted(config.m)
        if m <= d
        for n in config.n_grid
    ]


def run_rates(config: ExperimentConfig) -> list[ResultRow]:
    """Rate experiment: fresh covariance and data per row, errors raw and rescaled."""
    combos = _grid(config)

    def task_for(index: int, combo: tuple[int, int, int], trial: int) -> Callable[[], ResultRow]:
        d, m, n = combo

        def run() -> ResultRow:
            t0 = time.perf_counter()
            stream = RngStream(config.master_seed, index)
            sigma = make_sigma(config.sigma_kind, d, config.k, config.norm_target, stream.child(0))
            x = sample_gaussian(GaussianSpec(sigma), n, stream.child(1))
            est = estimate(compress(x, m, stream.child(2)))
            target = sigma.entries if config.error_target == "population" else sample_covariance(x).entries
            err_inf, err_spec = _error_pair(est.matrix, target)
            r_inf, r_spec = _rescaled(err_inf, err_spec, n, m, d, config.rescale_variant)
            wall = (time.perf_counter() - t0) * 1e3
            return ResultRow(
                "rates", d, m, n, trial, index, "debiased",
                err_inf, err_spec, r_inf, r_spec, None, wall,
            )

        return run

    tasks = [
        task_for(ci * config.trials + t, combo, t)
        for ci, combo in enumerate(combos)
        for t in range(config.trials)
    ]
    return _run_tasks(tasks, config.threads)


def run_compare_hmt(config: ExperimentConfig) -> list[ResultRow]:
    """Paired comparison: compressed estimator and the range-finder baseline
    see the same data in every trial."""
    combos = _grid(config)

    def task_for(index: int, combo: tuple[int, int, int], trial: int) -> Callable[[], list[ResultRow]]:
        d, m, n = combo

        def run() -> list[ResultRow]:
            stream = RngStream(config.master_seed, index)
            sigma = make_sigma(config.sigma_kind, d, config.k, config.norm_target, stream.child(0))
            x = sample_gaussian(GaussianSpec(sigma), n, stream.child(1))
            target = sigma.entries if config.error_target == "population" else sample_covariance(x).entries
            rows = []
            for method, runner in (
                ("debiased", lambda: estimate(compress(x, m, stream.child(2)))),
                ("hmt", lambda: hmt_estimate(x, m, stream.child(3), config.oversample)),
            ):
                t0 = time.perf_counter()
                est = runner()
                err_inf, err_spec = _error_pair(est.matrix, target)
                r_inf, r_spec = _rescaled(err_inf, err_spec, n, m, d, config.rescale_variant)
                wall = (time.perf_counter() - t0) * 1e3
                rows.append(
                    ResultRow(
                        "compare_hmt", d, m, n, trial, index, method,
                        err_inf, err_spec, r_inf, r_spec, None, wall,
                    )
                )
            return rows

        return run

    tasks = [
        task_for(ci * config.trials + t, combo, t)
        for ci, combo in enumerate(combos)
        for t in range(config.trials)
    ]
    return [row for pair in _run_tasks(tasks, config.threads) for row in pair]


def run_lowrank(config: ExperimentConfig) -> list[ResultRow]:
    """Low-rank study: full and rank-truncated estimates against a rank-k
    covariance, with the 2x truncation inequality asserted on every row."""
    if config.sigma_kind not in ("rank_k", "spiked"):
        raise ConfigError("lowrank requires sigma_kind rank_k or spiked")
    if any(config.k > dd for dd in config.d):
        raise ConfigError("k: must be <= every configured d")
    combos = _grid(config)

    def task_for(index: int, combo: tuple[int, int, int], trial: int) -> Callable[[], list[ResultRow]]:
        d, m, n = combo

        def run() -> list[ResultRow]:
            t0 = time.perf_counter()
            stream = RngStream(config.master_seed, index)
            sigma = make_sigma(config.sigma_kind, d, config.k, config.norm_target, stream.child(0))
            x = sample_gaussian(GaussianSpec(sigma), n, stream.child(1))
            est = estimate(compress(x, m, stream.child(2)))
            est_k = rank_truncate(est, config.k)
            target = sigma.entries if config.error_target == "population" else sample_covariance(x).entries
            err_inf, err_spec = _error_pair(est.matrix, target)
            errk_inf, errk_spec = _error_pair(est_k.matrix, target)
            if errk_spec > 2.0 * err_spec + 1e-10:
                raise CheckFailedError(
                    f"rank-{config.k} truncation violated the 2x bound at row {index}: "
                    f"{errk_spec} > 2 * {err_spec}"
                )
            sub_err = subspace_error(
                subspace_estimate(est, config.k),
                top_k_projector(sym_eig(sigma), config.k),
            )
            wall = (time.perf_counter() - t0) * 1e3 / 2.0
            rows = []
            for method, (ei, es) in (
                ("debiased", (err_inf, err_spec)),
                (f"truncated({config.k})", (errk_inf, errk_spec)),
            ):
                r_inf, r_spec = _rescaled(ei, es, n, m, d, config.rescale_variant)
                rows.append(
                    ResultRow(
                        "lowrank", d, m, n, trial, index, method,
                        ei, es, r_inf, r_spec, sub_err, wall,
                    )
                )
            return rows

        return run

    tasks = [
        task_for(ci * config.trials + t, combo, t)
        for ci, combo in enumerate(combos)
        for t in range(config.trials)
    ]
    return [row for pair in _run_tasks(tasks, config.threads) for row in pair]


def run_network_sweep(config: ExperimentConfig) -> tuple[list[ResultRow], list[dict[str, Any]]]:
    """Cost/accuracy sweep; returns per-trial rows plus the aggregated table."""
    protocol = Protocol(config.protocol)
    rows: list[ResultRow] = []
    tables: list[dict[str, Any]] = []
    block = 0
    for d in sorted(config.d):
        m_grid = tuple(m for m in sorted(config.m) if m <= d)
        if not m_grid:
            continue
        for n in config.n_grid:
            root = RngStream(config.master_seed, block)
            sigma = make_sigma(config.sigma_kind, d, config.k, config.norm_target, root.child(0))
            t0 = time.perf_counter()
            sweep = sweep_tradeoff(
                GaussianSpec(sigma), d, n, m_grid, config.trials, root.child(1), protocol
            )
            wall = (time.perf_counter() - t0) * 1e3 / (len(m_grid) * config.trials)
            for row in sweep:
                tables.append(
                    {
                        "d": d,
                        "n": n,
                        "m": row.m,
                        "mean_err_inf": row.mean_err_inf,
                        "mean_err_spec": row.mean_err_spec,
                        "scalar_measurements": row.ledger.scalar_measurements,
                        "scalars_transmitted": row.ledger.scalars_transmitted,
                        "messages": row.ledger.messages,
                    }
                )
                for trial, (ei, es) in enumerate(zip(row.trial_errs_inf, row.trial_errs_spec)):
                    r_inf, r_spec = _rescaled(ei, es, n, row.m, d, config.rescale_variant)
                    rows.append(
                        ResultRow(
                            "network_sweep", d, row.m, n, trial, block, protocol.value,
                            ei, es, r_inf, r_spec, None, wall,
                        )
                    )
            block += 1
    return rows, tables


def _check(name: str, passed: bool, seed: int, **detail: Any) -> dict[str, Any]:
    return {"name": name, "passed": bool(passed), "seed": seed, **detail}


def run_theory_checks(config: ExperimentConfig) -> dict[str, Any]:
    """Monte-Carlo verification battery; returns the JSON-ready report.

    Every check derives its streams from the master seed and records the
    estimate, the tolerance it was held to, and the verdict. Reduced-rep runs
    stay valid because tolerances scale with the rep count.
    """
    seed = config.master_seed
    reps = config.reps
    checks: list[dict[str, Any]] = []

    # Exact inversion of the expected observed matrix, random PSD inputs.
    worst = 0.0
    rng = RngStream(seed, 1)
    for i in range(50):
        gen = rng.child(i).generator()
        d = int(gen.integers(2, 33))
        m = int(gen.integers(1, d + 1))
        g = gen.standard_normal((d, d))
        sigma = SymMatrix(g @ g.T / d)
        recovered = debias(expected_observed_cov(sigma, m), m)
        worst = max(worst, float(np.max(np.abs(recovered.entries - sigma.entries))))
    checks.append(_check("debias_inversion", worst <= 1e-12, 1, max_residual=worst, tolerance=1e-12))

    # Redraw-mean of the estimator vs the sample covariance of a fixed X.
    from .mc import mc_estimate_mean  # local import: mc depends on estimator

    x = sample_gaussian(GaussianSpec(SymMatrix(np.eye(6))), 4, RngStream(seed, 2))
    target = sample_covariance(x).entries
    worst_sigmas = 0.0
    for m in (1, 2):
        mean, se = mc_estimate_mean(x, m, reps, RngStream(seed, 3).child(m))
        worst_sigmas = max(worst_sigmas, float(np.max(np.abs(mean - target) / se)))
    checks.append(
        _check("estimator_unbiasedness_mc", worst_sigmas <= 3.0, 3, max_sigmas=worst_sigmas, tolerance=3.0)
    )

    # Projection length law: KS distance against the exact Beta CDF.
    from .mc import ks_distance_beta

    ks_reps = min(reps * 5, 100000)
    worst_ks = 0.0
    threshold = 1.63 / np.sqrt(ks_reps)
    for pair_index, (d, m) in enumerate(((4, 1), (4, 2), (8, 1), (8, 4))):
        ks = ks_distance_beta(d, m, ks_reps, RngStream(seed, 4).child(pair_index))
        worst_ks = max(worst_ks, ks)
    checks.append(
        _check("projection_beta_ks", worst_ks <= threshold, 4, max_ks=worst_ks, tolerance=threshold)
    )

    # KL contraction against the closed-form budget.
    kl_reps = min(reps, 20000)
    worst_ratio = 0.0
    for gi, (d, m, ratio) in enumerate(
        (d, m, r) for d in (4, 8) for m in (1, 2) for r in (0.5, 1.0)
    ):
        est = mc_kl_contraction(d, m, ratio, 1.0, kl_reps, RngStream(seed, 5).child(gi))
        budget = 1.05 * 1.5 * ratio**2 * m**2 / d**2
        worst_ratio = max(worst_ratio, est / budget)
        if est > budget:
            break
    checks.append(
        _check("kl_contraction_grid", worst_ratio <= 1.0, 5, worst_fraction_of_budget=worst_ratio)
    )

    # Zero spike must give exactly zero divergence.
    kl_zero = mc_kl_contraction(8, 2, 0.0, 1.0, 200, RngStream(seed, 6))
    checks.append(_check("kl_zero_gamma", kl_zero == 0.0, 6, estimate=kl_zero))

    # Fourth moment of the projection length vs the exact Beta moment.
    frob_ok = True
    worst_frob = 0.0
    for pi, (d, m) in enumerate(((2, 1), (8, 2))):
        est = frob_projection_moment(d, m, reps, RngStream(seed, 7).child(pi))
        exact = beta_moment(m, d, 2)
        fourth = beta_moment(m, d, 4)
        se = float(np.sqrt(max(fourth - exact**2, 1e-30) / reps))
        sigmas = abs(est - exact) / se
        worst_frob = max(worst_frob, sigmas)
        frob_ok = frob_ok and sigmas <= 3.0 and est <= 3.0 * m * m / (d * d)
    checks.append(_check("frob_projection_moment", frob_ok, 7, max_sigmas=worst_frob, tolerance=3.0))

    # Empirical violation frequency of the Gaussian max-entry threshold.
    tail_trials = 1000
    sigma_i = SymMatrix(np.eye(10))
    tails = gaussian_tail_bounds(sigma_i, 1000, 0.05)
    spec_i = GaussianSpec(sigma_i)
    viol_inf = 0
    viol_col = 0
    tail_rng = RngStream(seed, 8)
    for t in range(tail_trials):
        xt = sample_gaussian(spec_i, 1000, tail_rng.child(t)).columns
        if float(np.max(np.abs(xt))) > tails.data_inf:
            viol_inf += 1
        if float(np.sqrt(np.max(np.sum(xt * xt, axis=0)))) > tails.data_two_inf:
            viol_col += 1
    tol = 0.05 + 3.0 * np.sqrt(0.05 * 0.95 / tail_trials)
    frac = max(viol_inf, viol_col) / tail_trials
    checks.append(
        _check("gaussian_tail_frequency", frac <= tol, 8, violation_fraction=frac, tolerance=tol)
    )

    # Rank-k truncation can at most double the spectral error.
    trunc_rng = RngStream(seed, 9)
    violations = 0
    for i in range(100):
        stream = trunc_rng.child(i)
        sigma = make_sigma("rank_k", 8, 2, "spectral", stream.child(0))
        x = sample_gaussian(GaussianSpec(sigma), 200, stream.child(1))
        est = estimate(compress(x, 2, stream.child(2)))
        est_k = rank_truncate(est, 2)
        full = spectral_norm(SymMatrix(est.matrix.entries - sigma.entries))
        trunc = spectral_norm(SymMatrix(est_k.matrix.entries - sigma.entries))
        if trunc > 2.0 * full + 1e-10:
            violations += 1
    checks.append(_check("lowrank_truncation_2x", violations == 0, 9, violations=violations))

    report = {
        "experiment": "theory_checks",
        "version": VERSION,
        "config": asdict(config),
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    return report


def write_rows(path: str | Path, rows: list[ResultRow]) -> None:
    """RFC-4180 CSV with the ResultRow schema; None becomes an empty field."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_FIELDS)
        for row in rows:
            record = asdict(row)
            writer.writerow(
                ["" if record[name] is None else record[name] for name in RESULT_FIELDS]
            )


def write_sidecar(csv_path: str | Path, config: ExperimentConfig, extras: dict[str, Any] | None = None) -> Path:
    """JSON sidecar next to the CSV with the resolved config and version."""
    side = Path(csv_path).with_suffix(".json")
    payload: dict[str, Any] = {
        "version": VERSION,
        "numpy_version": np.__version__,
        "config": asdict(config),
    }
    if extras:
        payload.update(extras)
    side.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return side


def run_experiment(config: ExperimentConfig) -> list[Path]:
    """Dispatch one experiment and write its outputs; returns written paths."""
    out = Path(config.out)
    if config.experiment == "theory_checks":
        report = run_theory_checks(config)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        if not report["all_passed"]:
            failed = [c["name"] for c in report["checks"] if not c["passed"]]
            raise CheckFailedError(f"theory checks failed: {', '.join(failed)}")
        return [out]
    if config.experiment == "rates":
        rows: list[ResultRow] = run_rates(config)
        extras = None
    elif config.experiment == "compare_hmt":
        rows = run_compare_hmt(config)
        extras = None
    elif config.experiment == "lowrank":
        rows = run_lowrank(config)
        extras = None
    else:
        rows, tables = run_network_sweep(config)
        extras = {"sweep_table": tables}
    write_rows(out, rows)
    side = write_sidecar(out, config, extras)
    return [out, side]
