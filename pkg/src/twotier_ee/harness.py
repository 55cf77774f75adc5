"""Experiment orchestration: seeded drops, sweeps, and CSV emission.

Seeding discipline: drop d of a run with master seed s draws its scenario
from a child seed derived from (s, d), and each algorithm consumes a
separate stream derived from (child, algorithm code).  Two consequences
the tests rely on: different algorithms see identical channel drops
(paired comparisons), and sweeping a parameter reuses the same child seeds
at every sweep value (common random numbers).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .baselines import brute_force_global, brute_force_group, ngt_best_response
from .config import NetworkConfig
from .egt import new_games, run_algorithm1
from .linklevel import compute_link_metrics, sample_link_context

__all__ = [
    "ALGORITHMS", "SWEEP_PARAMETERS", "ExperimentSpec", "SweepSpec", "RunRecord",
    "SweepRow", "jain_index", "child_seed", "scenario_rng", "algorithm_rng",
    "run_drops", "sweep", "emit_results", "parse_results", "emit_sweep",
    "trace_path_for",
]

ALGORITHMS = ("egt", "ngt", "brute-group", "brute-global")
SWEEP_PARAMETERS = ("noise_psd_dbm_per_hz", "n_users_per_cell", "n_small_cells")

# stream separators so one child seed feeds independent per-algorithm draws
_ALGO_CODE = {"egt": 1, "ngt": 2, "brute-group": 3, "brute-global": 4}

_BASE_HEADER = ("seed,algorithm,K,N,n_users,noise_dbm,network_ee,jain,"
                "iterations,evaluations,converged")
_TRACE_HEADER = "drop,game,iteration,avg_payoff"


def jain_index(values) -> float:
    """Fairness of an allocation: (sum v)^2 / (n * sum v^2), in (1/n, 1]."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("jain index of an empty list is undefined")
    if np.any(v < 0):
        raise ValueError("jain index requires nonnegative values")
    denom = float(v.size * np.sum(v * v))
    if denom == 0.0:
        raise ValueError("jain index of an all-zero list is undefined")
    return float(np.sum(v)) ** 2 / denom


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter and the values to visit."""

    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(
                f"cannot sweep {self.parameter!r}; choose from {SWEEP_PARAMETERS}"
            )
        if not self.values:
            raise ValueError("sweep needs at least one value")
        object.__setattr__(self, "values", tuple(self.values))


@dataclass
class ExperimentSpec:
    """Everything needed to run one batch of seeded drops."""

    config: NetworkConfig
    algorithm: str = "egt"
    n_drops: int = 1
    sweep: SweepSpec = None
    output_path: str = None
    max_iterations: int = 64

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if self.n_drops < 1:
            raise ValueError("n_drops must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.sweep is not None:
            for v in self.sweep.values:
                # raises early if a value breaks a config invariant
                config_for_value(self.config, self.sweep.parameter, v)


def config_for_value(config: NetworkConfig, parameter: str, value) -> NetworkConfig:
    """Base config with one swept field replaced (validated on construction)."""
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"cannot sweep {parameter!r}")
    if parameter in ("n_users_per_cell", "n_small_cells"):
        value = int(value)
    else:
        value = float(value)
    return dataclasses.replace(config, **{parameter: value})


def child_seed(rng_seed: int, drop: int) -> int:
    """Deterministic per-drop seed; the one stored in result rows."""
    ss = np.random.SeedSequence((rng_seed, drop))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def scenario_rng(seed: int) -> np.random.Generator:
    """Stream that samples the drop itself (topology, fading, channels)."""
    return np.random.default_rng(seed)


def algorithm_rng(seed: int, algorithm: str) -> np.random.Generator:
    """Algorithm-private stream, so shared drops stay shared across algorithms."""
    return np.random.default_rng((seed, _ALGO_CODE[algorithm]))


@dataclass
class RunRecord:
    """One drop's outcome, carrying enough context to serialize standalone."""

    drop: int
    seed: int
    algorithm: str
    n_small_cells: int
    n_subcarriers: int
    n_users: int
    noise_dbm: float
    network_ee: float
    cell_ee: list                     # index k = total EE of cell k
    jain: float
    iterations: int
    evaluations: int
    converged: bool
    traces: dict = field(default_factory=dict)   # subcarrier -> avg-payoff list
    error: str = None                 # set when the drop aborted


def _error_record(drop: int, seed: int, spec_algorithm: str,
                  config: NetworkConfig, message: str) -> RunRecord:
    nan = float("nan")
    return RunRecord(
        drop=drop, seed=seed, algorithm=spec_algorithm,
        n_small_cells=config.n_small_cells, n_subcarriers=config.n_subcarriers,
        n_users=config.n_users_per_cell, noise_dbm=config.noise_psd_dbm_per_hz,
        network_ee=nan, cell_ee=[nan] * config.n_cells, jain=nan,
        iterations=0, evaluations=0, converged=False, error=message,
    )


def _run_one(config: NetworkConfig, algorithm: str, drop: int, seed: int,
             max_iterations: int) -> RunRecord:
    context = sample_link_context(config, scenario_rng(seed))
    rng = algorithm_rng(seed, algorithm)
    traces = {}
    if algorithm == "egt":
        result = run_algorithm1(new_games(context, rng), context, rng,
                                max_iterations=max_iterations)
        profile = result.profile
        iterations = result.iterations
        evaluations = result.evaluations
        converged = result.converged
        traces = result.traces
    elif algorithm == "ngt":
        result = ngt_best_response(context, rng, max_rounds=max_iterations)
        profile = result.profile
        iterations = result.rounds
        evaluations = result.evaluations
        converged = result.converged
    elif algorithm == "brute-group":
        profile = {}
        evaluations = 0
        for sc in context.topology.occupied_subcarriers():
            part = brute_force_group(sc, context)
            profile.update(part.profile)
            evaluations += part.evaluations
        iterations = 0
        converged = True
    else:  # brute-global
        result = brute_force_global(context)
        profile = result.profile
        iterations = 0
        evaluations = result.evaluations
        converged = True
    metrics = compute_link_metrics(context, profile)
    cell_ee = [metrics.cell_ee(k) for k in range(config.n_cells)]
    return RunRecord(
        drop=drop, seed=seed, algorithm=algorithm,
        n_small_cells=config.n_small_cells, n_subcarriers=config.n_subcarriers,
        n_users=config.n_users_per_cell, noise_dbm=config.noise_psd_dbm_per_hz,
        network_ee=metrics.network_ee, cell_ee=cell_ee,
        jain=jain_index(cell_ee), iterations=iterations,
        evaluations=evaluations, converged=converged, traces=traces,
    )


def run_drops(spec: ExperimentSpec, config: NetworkConfig = None) -> list:
    """Run every drop of the spec; a failed drop yields an error record.

    `config` overrides the spec's base config (the sweep path uses this to
    substitute per-value configs while keeping the same child seeds).
    """
    config = config if config is not None else spec.config
    records = []
    for drop in range(spec.n_drops):
        seed = child_seed(config.rng_seed, drop)
        try:
            records.append(_run_one(config, spec.algorithm, drop, seed,
                                    spec.max_iterations))
        except Exception as exc:  # noqa: BLE001 - error records, not batch aborts
            records.append(_error_record(drop, seed, spec.algorithm, config, str(exc)))
    return records


@dataclass
class SweepRow:
    """Aggregate over all drops at one sweep value."""

    parameter: str
    value: float
    n_drops: int
    mean_network_ee: float
    ee_ci95: float
    mean_jain: float
    jain_ci95: float


def _mean_ci(values: list) -> tuple:
    v = np.asarray(values, dtype=float)
    v = v[~np.isnan(v)]
    if v.size == 0:
        return float("nan"), float("nan")
    mean = float(np.mean(v))
    if v.size == 1:
        return mean, float("nan")
    half = 1.96 * float(np.std(v, ddof=1)) / math.sqrt(v.size)
    return mean, half


def sweep(spec: ExperimentSpec) -> list:
    """One SweepRow per sweep value, all values sharing child seeds."""
    if spec.sweep is None:
        raise ValueError("spec has no sweep section")
    rows = []
    for value in spec.sweep.values:
        config = config_for_value(spec.config, spec.sweep.parameter, value)
        records = run_drops(spec, config=config)
        ee_mean, ee_ci = _mean_ci([r.network_ee for r in records])
        jain_mean, jain_ci = _mean_ci([r.jain for r in records])
        rows.append(SweepRow(
            parameter=spec.sweep.parameter, value=float(value),
            n_drops=len(records), mean_network_ee=ee_mean, ee_ci95=ee_ci,
            mean_jain=jain_mean, jain_ci95=jain_ci,
        ))
    return rows


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def trace_path_for(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + "_trace" + (path.suffix or ".csv"))


def emit_results(records: list, path) -> Path:
    """Write one CSV row per record plus a companion per-iteration trace file.

    Column layout is fixed: the base columns, then cell_ee_0..cell_ee_K.
    Returns the trace file's path.
    """
    path = Path(path)
    records = sorted(records, key=lambda r: (r.drop, r.algorithm))
    lines = []
    if records:
        n_cells = len(records[0].cell_ee)
        if any(len(r.cell_ee) != n_cells for r in records):
            raise ValueError("records with different cell counts cannot share a table")
        header = _BASE_HEADER + "".join(f",cell_ee_{k}" for k in range(n_cells))
    else:
        header = _BASE_HEADER
    lines.append(header)
    for r in records:
        cells = "".join("," + _fmt(v) for v in r.cell_ee)
        lines.append(
            f"{r.seed},{r.algorithm},{r.n_small_cells},{r.n_subcarriers},"
            f"{r.n_users},{_fmt(r.noise_dbm)},{_fmt(r.network_ee)},{_fmt(r.jain)},"
            f"{r.iterations},{r.evaluations},{'true' if r.converged else 'false'}"
            + cells
        )
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc

    trace_path = trace_path_for(path)
    trace_lines = [_TRACE_HEADER]
    for r in records:
        for sc in sorted(r.traces):
            for it, avg in enumerate(r.traces[sc], start=1):
                trace_lines.append(f"{r.drop},{sc},{it},{_fmt(avg)}")
    try:
        trace_path.write_text("\n".join(trace_lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write traces to {trace_path}: {exc}") from exc
    return trace_path


def parse_results(path) -> list:
    """Read back a results CSV written by emit_results.

    Traces live in the companion file and are not reloaded; parsed records
    carry drop=-1 because the drop index is not part of the row schema.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty results file")
    header = lines[0].split(",")
    base = _BASE_HEADER.split(",")
    if header[: len(base)] != base:
        raise ValueError(f"{path}: unexpected header {lines[0]!r}")
    n_cells = len(header) - len(base)
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, "
                             f"got {len(parts)}")
        records.append(RunRecord(
            drop=-1,
            seed=int(parts[0]),
            algorithm=parts[1],
            n_small_cells=int(parts[2]),
            n_subcarriers=int(parts[3]),
            n_users=int(parts[4]),
            noise_dbm=float(parts[5]),
            network_ee=float(parts[6]),
            jain=float(parts[7]),
            iterations=int(parts[8]),
            evaluations=int(parts[9]),
            converged=parts[10] == "true",
            cell_ee=[float(p) for p in parts[11:]],
        ))
    if records and n_cells and any(len(r.cell_ee) != n_cells for r in records):
        raise ValueError(f"{path}: inconsistent cell_ee column count")
    return records


def emit_sweep(rows: list, path) -> None:
    """Write the sweep summary table."""
    path = Path(path)
    lines = ["parameter,value,n_drops,mean_network_ee,ee_ci95,mean_jain,jain_ci95"]
    for r in rows:
        lines.append(
            f"{r.parameter},{_fmt(r.value)},{r.n_drops},{_fmt(r.mean_network_ee)},"
            f"{_fmt(r.ee_ci95)},{_fmt(r.mean_jain)},{_fmt(r.jain_ci95)}"
        )
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep table to {path}: {exc}") from exc
