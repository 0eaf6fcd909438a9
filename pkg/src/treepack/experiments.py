"""Monte Carlo campaigns over seeded random graphs.

Four campaign kinds share one engine. "equality" measures how often the
packing number sigma matches the minimum degree delta near the connectivity
threshold; "dense" measures how often sigma falls strictly below delta when
p = min(1, 51 log n / n); "hitting" compares the process hitting times for
minimum degree k and for k disjoint spanning trees; "structure" tracks the
degree-split and expansion facts the sparse regime relies on.

Every trial is a pure function of a seed derived from (master seed,
experiment id, n, cell index, trial index), so campaigns are reproducible
down to the byte in records.csv. Trials may run in worker processes; the
engine walks cells in a fixed order and preserves trial order within each
cell, so the concurrent and sequential paths emit identical rows. Wall-clock
timings go to a separate timings.csv, never into records.csv.

Summary rows are recomputed from the records, never accumulated on the
side, and carry a 95% normal-approximation halfwidth for the headline
fraction. p rules: "th1" is a three-point near-threshold grid between
1.1 log n / n and (log n + log log n)/n (the latter is the larger of the
two at any feasible n); "th2" is min(1, 51 log n / n); "logn:<c>" is
min(1, c log n / n); anything else parses as comma-separated explicit
values used for every n.
"""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from .graph import min_degree
from .packing import max_packing, packing_number
from .randgraph import hitting_time_min_degree, hitting_time_packing, sample_gnp, sample_process
from .reporting import emit_csv, emit_json, emit_svg_plot
from .rng import check_seed, derive_seed
from .structure import check_small_separation, min_expansion_ratio, small_count_check

EXPERIMENT_KINDS = ("equality", "dense", "hitting", "structure")

EXPANSION_MAX_SIZE = 16
EXPANSION_BUDGET = 100

SIGMA_RECORD_FIELDS = (
    "n", "p", "p_index", "trial", "seed", "edges", "delta", "sigma",
    "equality", "strict", "catlin",
)
HITTING_RECORD_FIELDS = (
    "n", "k", "k_index", "trial", "seed", "tau_delta", "tau_sigma", "equality",
)
STRUCTURE_RECORD_FIELDS = (
    "n", "p", "p_index", "trial", "seed", "edges", "delta", "small_count",
    "small_ok", "separation_ok", "delta_le_log30", "expansion_min",
    "expansion_gt_log10", "expansion_ge_delta",
)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_values: tuple[int, ...]
    p_rule: str = "th1"
    trials: int = 50
    master_seed: int = 0
    k_values: tuple[int, ...] = ()
    out_dir: str | None = None
    sequential: bool = False


@dataclass(frozen=True)
class TrialRecord:
    n: int
    p: float
    p_index: int
    trial: int
    seed: int
    edges: int
    delta: int
    sigma: int
    equality: bool
    strict: bool
    catlin: bool
    elapsed: float


@dataclass(frozen=True)
class HittingRecord:
    n: int
    k: int
    k_index: int
    trial: int
    seed: int
    tau_delta: int
    tau_sigma: int
    equality: bool
    elapsed: float


@dataclass(frozen=True)
class StructureRecord:
    n: int
    p: float
    p_index: int
    trial: int
    seed: int
    edges: int
    delta: int
    small_count: int
    small_ok: bool
    separation_ok: bool
    delta_le_log30: bool
    expansion_min: float
    expansion_gt_log10: bool
    expansion_ge_delta: bool
    elapsed: float


@dataclass(frozen=True)
class SummaryRow:
    n: int
    p: float
    trials: int
    fraction_equality: float
    fraction_strict: float
    fraction_catlin: float
    mean_delta: float
    mean_sigma: float
    ci_halfwidth: float


@dataclass(frozen=True)
class HittingSummaryRow:
    n: int
    k: int
    trials: int
    fraction_equality: float
    mean_tau_delta: float
    mean_tau_sigma: float
    ci_halfwidth: float


@dataclass(frozen=True)
class StructureSummaryRow:
    n: int
    p: float
    trials: int
    fraction_separation: float
    fraction_small_ok: float
    fraction_delta_le_log30: float
    fraction_expansion_gt_log10: float
    fraction_expansion_ge_delta: float
    mean_delta: float
    ci_halfwidth: float


def p_grid(rule: str, n: int) -> list[float]:
    """p values a rule yields for one n, all validated to lie in (0, 1]."""
    log_n = math.log(n)
    if rule == "th1":
        edge_a = 1.1 * log_n / n
        edge_b = (log_n + math.log(log_n)) / n
        lo, hi = min(edge_a, edge_b), max(edge_a, edge_b)
        values = [lo, (lo + hi) / 2, hi]
    elif rule == "th2":
        values = [min(1.0, 51 * log_n / n)]
    elif rule.startswith("logn:"):
        factor = float(rule.split(":", 1)[1])
        values = [min(1.0, factor * log_n / n)]
    else:
        values = [float(part) for part in rule.split(",")]
    for p in values:
        if not 0 < p <= 1:
            raise ValueError(f"p rule {rule!r} yields infeasible p={p} at n={n}")
    return values


def validate_config(cfg: ExperimentConfig) -> None:
    if cfg.experiment not in EXPERIMENT_KINDS:
        raise ValueError(f"unknown experiment {cfg.experiment!r}")
    if not cfg.n_values:
        raise ValueError("config needs at least one n")
    for n in cfg.n_values:
        if n < 4:
            raise ValueError(f"n must be at least 4, got {n}")
    if cfg.trials < 1:
        raise ValueError(f"trials must be positive, got {cfg.trials}")
    check_seed(cfg.master_seed)
    if cfg.experiment == "hitting":
        if not cfg.k_values:
            raise ValueError("hitting experiment needs a k list")
        for n in cfg.n_values:
            for k in cfg.k_values:
                if not 1 <= k <= n // 2:
                    raise ValueError(f"k={k} outside [1, {n // 2}] for n={n}")
    else:
        for n in cfg.n_values:
            p_grid(cfg.p_rule, n)


def _sigma_trial(args: tuple) -> TrialRecord:
    n, p, p_index, trial, seed, descent = args
    start = time.perf_counter()
    graph = sample_gnp(n, p, seed)
    delta = min_degree(graph)
    sigma = packing_number(graph) if descent else max_packing(graph).sigma
    elapsed = time.perf_counter() - start
    return TrialRecord(
        n=n, p=p, p_index=p_index, trial=trial, seed=seed,
        edges=graph.m, delta=delta, sigma=sigma,
        equality=sigma == delta, strict=sigma < delta,
        catlin=sigma == graph.m // (n - 1), elapsed=elapsed,
    )


def _hitting_trial(args: tuple) -> HittingRecord:
    n, k, k_index, trial, seed = args
    start = time.perf_counter()
    perm = sample_process(n, seed)
    tau_delta = hitting_time_min_degree(perm, k)
    tau_sigma = hitting_time_packing(perm, k)
    # k <= n/2 guarantees both properties arrive by the complete graph.
    assert tau_delta is not None and tau_sigma is not None
    elapsed = time.perf_counter() - start
    return HittingRecord(
        n=n, k=k, k_index=k_index, trial=trial, seed=seed,
        tau_delta=tau_delta, tau_sigma=tau_sigma,
        equality=tau_sigma == tau_delta, elapsed=elapsed,
    )


def _structure_trial(args: tuple) -> StructureRecord:
    n, p, p_index, trial, seed = args
    start = time.perf_counter()
    graph = sample_gnp(n, p, seed)
    delta = min_degree(graph)
    small_ok, small_count = small_count_check(graph)
    separation_ok = check_small_separation(graph).ok
    expansion_seed = derive_seed(seed, "expansion", n, p_index, trial)
    report = min_expansion_ratio(
        graph,
        max_size=min(EXPANSION_MAX_SIZE, n // 2),
        large_only=True,
        budget=EXPANSION_BUDGET,
        seed=expansion_seed,
    )
    log_n = math.log(n)
    elapsed = time.perf_counter() - start
    return StructureRecord(
        n=n, p=p, p_index=p_index, trial=trial, seed=seed,
        edges=graph.m, delta=delta,
        small_count=small_count, small_ok=small_ok,
        separation_ok=separation_ok,
        delta_le_log30=delta <= log_n / 30,
        expansion_min=report.min_ratio,
        expansion_gt_log10=report.min_ratio > log_n / 10,
        expansion_ge_delta=report.min_ratio >= delta,
        elapsed=elapsed,
    )


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _record_row(record, field_names) -> list[str]:
    return [_format_value(getattr(record, name)) for name in field_names]


class _Sink:
    """Incremental per-cell writer for records.csv and timings.csv."""

    def __init__(self, out_dir: str | None, field_names):
        self.field_names = field_names
        self._records = None
        self._timings = None
        if out_dir is None:
            return
        os.makedirs(out_dir, exist_ok=True)
        self._records = open(os.path.join(out_dir, "records.csv"), "w", newline="")
        self._rec_writer = csv.writer(self._records, lineterminator="\n")
        self._rec_writer.writerow(field_names)
        self._timings = open(os.path.join(out_dir, "timings.csv"), "w", newline="")
        self._time_writer = csv.writer(self._timings, lineterminator="\n")
        self._time_writer.writerow(["n", "cell", "trial", "elapsed"])

    def flush_cell(self, cell_label: str, records) -> None:
        if self._records is None:
            return
        for record in records:
            self._rec_writer.writerow(_record_row(record, self.field_names))
            self._time_writer.writerow(
                [record.n, cell_label, record.trial, f"{record.elapsed:.6f}"]
            )
        self._records.flush()
        self._timings.flush()

    def close(self) -> None:
        if self._records is not None:
            self._records.close()
            self._timings.close()


def _execute_cells(cfg: ExperimentConfig, cells, worker):
    """Yield (cell_key, records) in cell order, trials in index order."""
    if cfg.sequential:
        for key, argset in cells:
            yield key, [worker(args) for args in argset]
        return
    workers = os.cpu_count() or 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for key, argset in cells:
            chunk = max(1, len(argset) // (4 * workers))
            yield key, list(pool.map(worker, argset, chunksize=chunk))


def _halfwidth(fraction: float, trials: int) -> float:
    return 1.96 * math.sqrt(fraction * (1 - fraction) / trials)


def _fraction(records, predicate) -> float:
    return sum(1 for r in records if predicate(r)) / len(records)


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values)


def _emit_summary(cfg, row_type, rows, series, ylabel, title) -> None:
    if cfg.out_dir is None:
        return
    names = [f.name for f in fields(row_type)]
    emit_csv(
        os.path.join(cfg.out_dir, "summary.csv"),
        names,
        [[_format_value(getattr(row, name)) for name in names] for row in rows],
    )
    emit_json(os.path.join(cfg.out_dir, "summary.json"), [asdict(row) for row in rows])
    emit_svg_plot(
        os.path.join(cfg.out_dir, "plot.svg"),
        title=title,
        xlabel="n",
        ylabel=ylabel,
        series=series,
    )


def _sigma_campaign(cfg: ExperimentConfig, descent: bool) -> list[SummaryRow]:
    validate_config(cfg)
    cells = []
    for n in sorted(cfg.n_values):
        for p_index, p in enumerate(p_grid(cfg.p_rule, n)):
            argset = [
                (n, p, p_index, t,
                 derive_seed(cfg.master_seed, cfg.experiment, n, p_index, t),
                 descent)
                for t in range(cfg.trials)
            ]
            cells.append(((n, p_index, p), argset))
    sink = _Sink(cfg.out_dir, SIGMA_RECORD_FIELDS)
    rows = []
    points: dict[int, list[tuple[float, float]]] = {}
    try:
        for (n, p_index, p), records in _execute_cells(cfg, cells, _sigma_trial):
            sink.flush_cell(f"p{p_index}", records)
            headline = _fraction(
                records, (lambda r: r.strict) if descent else (lambda r: r.equality)
            )
            row = SummaryRow(
                n=n, p=p, trials=len(records),
                fraction_equality=_fraction(records, lambda r: r.equality),
                fraction_strict=_fraction(records, lambda r: r.strict),
                fraction_catlin=_fraction(records, lambda r: r.catlin),
                mean_delta=_mean(r.delta for r in records),
                mean_sigma=_mean(r.sigma for r in records),
                ci_halfwidth=_halfwidth(headline, len(records)),
            )
            rows.append(row)
            points.setdefault(p_index, []).append(
                (n, row.fraction_strict if descent else row.fraction_equality)
            )
    finally:
        sink.close()
    grid_size = len(points)
    series = [
        (f"p rule {cfg.p_rule}" if grid_size == 1 else f"{cfg.p_rule}[{i}]", pts)
        for i, pts in sorted(points.items())
    ]
    ylabel = "fraction sigma < delta" if descent else "fraction sigma = delta"
    _emit_summary(cfg, SummaryRow, rows, series, ylabel, f"{cfg.experiment} campaign")
    return rows


def run_equality_experiment(cfg: ExperimentConfig) -> list[SummaryRow]:
    """Per (n, p) cell: fraction of samples with sigma = delta."""
    return _sigma_campaign(cfg, descent=False)


def run_dense_experiment(cfg: ExperimentConfig) -> list[SummaryRow]:
    """Per (n, p) cell: fractions with sigma < delta and the Catlin identity."""
    return _sigma_campaign(cfg, descent=True)


def run_hitting_experiment(cfg: ExperimentConfig) -> list[HittingSummaryRow]:
    """Per (n, k) cell: fraction of processes with matching hitting times."""
    validate_config(cfg)
    cells = []
    for n in sorted(cfg.n_values):
        for k_index, k in enumerate(cfg.k_values):
            argset = [
                (n, k, k_index, t,
                 derive_seed(cfg.master_seed, cfg.experiment, n, k_index, t))
                for t in range(cfg.trials)
            ]
            cells.append(((n, k_index, k), argset))
    sink = _Sink(cfg.out_dir, HITTING_RECORD_FIELDS)
    rows = []
    points: dict[int, tuple[int, list[tuple[float, float]]]] = {}
    try:
        for (n, k_index, k), records in _execute_cells(cfg, cells, _hitting_trial):
            sink.flush_cell(f"k{k}", records)
            fraction = _fraction(records, lambda r: r.equality)
            rows.append(HittingSummaryRow(
                n=n, k=k, trials=len(records),
                fraction_equality=fraction,
                mean_tau_delta=_mean(r.tau_delta for r in records),
                mean_tau_sigma=_mean(r.tau_sigma for r in records),
                ci_halfwidth=_halfwidth(fraction, len(records)),
            ))
            points.setdefault(k_index, (k, []))[1].append((n, fraction))
    finally:
        sink.close()
    series = [(f"k={k}", pts) for _, (k, pts) in sorted(points.items())]
    _emit_summary(
        cfg, HittingSummaryRow, rows, series,
        "fraction tau_sigma = tau_delta", "hitting-time campaign",
    )
    return rows


def run_structure_experiment(cfg: ExperimentConfig) -> list[StructureSummaryRow]:
    """Per (n, p) cell: frequencies of the sparse-regime structural facts."""
    validate_config(cfg)
    cells = []
    for n in sorted(cfg.n_values):
        for p_index, p in enumerate(p_grid(cfg.p_rule, n)):
            argset = [
                (n, p, p_index, t,
                 derive_seed(cfg.master_seed, cfg.experiment, n, p_index, t))
                for t in range(cfg.trials)
            ]
            cells.append(((n, p_index, p), argset))
    sink = _Sink(cfg.out_dir, STRUCTURE_RECORD_FIELDS)
    rows = []
    points: dict[int, list[tuple[float, float]]] = {}
    try:
        for (n, p_index, p), records in _execute_cells(cfg, cells, _structure_trial):
            sink.flush_cell(f"p{p_index}", records)
            fraction = _fraction(records, lambda r: r.separation_ok)
            rows.append(StructureSummaryRow(
                n=n, p=p, trials=len(records),
                fraction_separation=fraction,
                fraction_small_ok=_fraction(records, lambda r: r.small_ok),
                fraction_delta_le_log30=_fraction(records, lambda r: r.delta_le_log30),
                fraction_expansion_gt_log10=_fraction(
                    records, lambda r: r.expansion_gt_log10
                ),
                fraction_expansion_ge_delta=_fraction(
                    records, lambda r: r.expansion_ge_delta
                ),
                mean_delta=_mean(r.delta for r in records),
                ci_halfwidth=_halfwidth(fraction, len(records)),
            ))
            points.setdefault(p_index, []).append((n, fraction))
    finally:
        sink.close()
    grid_size = len(points)
    series = [
        (f"p rule {cfg.p_rule}" if grid_size == 1 else f"{cfg.p_rule}[{i}]", pts)
        for i, pts in sorted(points.items())
    ]
    _emit_summary(
        cfg, StructureSummaryRow, rows, series,
        "fraction separation holds", "structure campaign",
    )
    return rows


RUNNERS = {
    "equality": run_equality_experiment,
    "dense": run_dense_experiment,
    "hitting": run_hitting_experiment,
    "structure": run_structure_experiment,
}


def load_config_file(path: str) -> dict[str, str]:
    """Flat key = value lines; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value, got {raw!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.replace(",", " ").split())


def build_config(
    experiment: str,
    file_values: dict[str, str] | None = None,
    n_values: tuple[int, ...] | None = None,
    p_rule: str | None = None,
    trials: int | None = None,
    master_seed: int | None = None,
    k_values: tuple[int, ...] | None = None,
    out_dir: str | None = None,
    sequential: bool | None = None,
) -> ExperimentConfig:
    """Merge config-file values with overriding CLI arguments."""
    raw = dict(file_values or {})
    known = {"experiment", "n", "p", "trials", "seed", "k", "out", "sequential"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if n_values is None and "n" in raw:
        n_values = _parse_int_list(raw["n"])
    if n_values is None:
        raise ValueError("no n values given (config key 'n' or --n)")
    if p_rule is None:
        p_rule = raw.get("p", "th2" if experiment == "dense" else "th1")
    if trials is None:
        trials = int(raw["trials"]) if "trials" in raw else 50
    if master_seed is None:
        master_seed = int(raw["seed"]) if "seed" in raw else 0
    if k_values is None and "k" in raw:
        k_values = _parse_int_list(raw["k"])
    if out_dir is None:
        out_dir = raw.get("out")
    if sequential is None:
        sequential = raw.get("sequential", "false").lower() in ("1", "true", "yes")
    cfg = ExperimentConfig(
        experiment=experiment,
        n_values=tuple(n_values),
        p_rule=p_rule,
        trials=trials,
        master_seed=master_seed,
        k_values=tuple(k_values or ()),
        out_dir=out_dir,
        sequential=sequential,
    )
    validate_config(cfg)
    return cfg
