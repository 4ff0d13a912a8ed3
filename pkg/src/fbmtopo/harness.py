"""Monte Carlo parameter sweep over (H, D, tau, q) with seeded realizations.

Each cell realization derives its seeds from
SeedSequence(master_seed, spawn_key=(h_index, D, tau, q_index, r)), so any
single row is reproducible in isolation and the sweep parallelizes without
changing results. Failed realizations are recorded with a categorical reason
and never abort the sweep. Output files are byte-deterministic for a fixed
config (wall times are kept in memory only, not written).
"""

import dataclasses
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .embedding import delay_embed, rescale_unit
from .errors import DomainError, FbmTopoError
from .fbm import DEFAULT_METHOD, METHODS, generate_fbm, inject_irregularity
from .measures import TopologicalSummary, betti_curve, summarize
from .persistence import compute_h0, compute_h1
from .rips import distance_matrix, enumerate_cliques

MEASURE_NAMES = TopologicalSummary.MEASURE_NAMES

SCALE_PRESETS = {
    "desk": {"n_points": 256, "realizations": 100},
    "paper": {"n_points": 1024, "realizations": 1000},
}


@dataclass
class ExperimentConfig:
    """Axes and knobs of one sweep; defaults match the full-scale study."""

    hurst_list: tuple = tuple(round(0.1 * k, 1) for k in range(1, 10))
    dims: tuple = tuple(range(2, 11))
    taus: tuple = (1, 10, 100, 1000)
    qs: tuple = tuple(round(0.01 * k, 2) for k in range(10))
    n_points: int = 1024
    realizations: int = 1000
    epsilon_max_factor: float = 0.2
    master_seed: int = 0
    output_dir: str = "results"
    grid_resolution: int = 64
    method: str = DEFAULT_METHOD

    def validate(self):
        for h in self.hurst_list:
            if not 0.0 < h < 1.0:
                raise DomainError(f"hurst {h} outside (0, 1)")
        for d in self.dims:
            if d < 1:
                raise DomainError(f"dim {d} < 1")
        for t in self.taus:
            if t < 0:
                raise DomainError(f"tau {t} < 0")
        for q in self.qs:
            if not 0.0 <= q < 1.0:
                raise DomainError(f"q {q} outside [0, 1)")
        if self.n_points < 2:
            raise DomainError("n_points must be >= 2")
        if self.realizations < 1:
            raise DomainError("realizations must be >= 1")
        if self.epsilon_max_factor <= 0:
            raise DomainError("epsilon_max_factor must be positive")
        if self.grid_resolution < 2:
            raise DomainError("grid_resolution must be >= 2")
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")

    def cells(self):
        """Iterate (h_index, hurst, dim, tau, q_index, q) over the grid."""
        for h_idx, hurst in enumerate(self.hurst_list):
            for dim in self.dims:
                for tau in self.taus:
                    for q_idx, q in enumerate(self.qs):
                        yield h_idx, hurst, dim, tau, q_idx, q


_LIST_FIELDS = {"hurst_list", "dims", "taus", "qs"}
_INT_FIELDS = {"n_points", "realizations", "master_seed", "grid_resolution"}
_FLOAT_FIELDS = {"epsilon_max_factor"}


def load_config(path):
    """Parse a flat `key = value` config file; unknown keys are rejected.

    List-valued fields take comma-separated entries. Lines starting with #
    and blank lines are ignored.
    """
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    overrides = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in known:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                if key in _LIST_FIELDS:
                    parts = [p.strip() for p in value.split(",") if p.strip()]
                    if key in ("dims", "taus"):
                        overrides[key] = tuple(int(p) for p in parts)
                    else:
                        overrides[key] = tuple(float(p) for p in parts)
                elif key in _INT_FIELDS:
                    overrides[key] = int(value)
                elif key in _FLOAT_FIELDS:
                    overrides[key] = float(value)
                else:
                    overrides[key] = value
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: bad value for {key}: {exc}")
    config = ExperimentConfig(**overrides)
    config.validate()
    return config


@dataclass
class ResultRow:
    """One (cell, realization) outcome; measures are None on failure."""

    hurst: float
    dim: int
    tau: int
    q: float
    realization: int
    seed: int
    summary: TopologicalSummary
    n_cloud: int
    wall_time: float
    status: str = "ok"

    @property
    def ok(self):
        return self.status == "ok"


@dataclass
class ResultTable:
    config: ExperimentConfig
    rows: list
    curve_means: dict = field(default_factory=dict)
    # curve_means maps (hurst, dim, tau, q) -> (eta grid, mean beta0, mean beta1)


def run_realization(config, h_idx, hurst, dim, tau, q_idx, q, r):
    """One full pipeline pass; returns (ResultRow, curve0 or None, curve1 or None)."""
    ss = np.random.SeedSequence(
        entropy=config.master_seed, spawn_key=(h_idx, dim, tau, q_idx, r)
    )
    seed_gen, seed_mask = (int(s) for s in ss.generate_state(2, np.uint64))
    n = config.n_points
    t_len = n + (dim - 1) * tau
    eps_max = config.epsilon_max_factor * math.sqrt(dim)
    started = time.perf_counter()
    try:
        series = generate_fbm(hurst, t_len, seed_gen, config.method)
        if q > 0:
            series = inject_irregularity(series, q, seed_mask)
        series = rescale_unit(series)
        cloud = delay_embed(series, dim, tau)
        sd = distance_matrix(cloud, eps_max)
        filt = enumerate_cliques(sd)
        d0 = compute_h0(sd)
        d1 = compute_h1(filt)
        summary = summarize(
            d0, d1, n, hurst=hurst, dim=dim, delay=tau, q=q, seed=seed_gen
        )
        grid = np.linspace(0.0, n * eps_max, config.grid_resolution)
        c0 = betti_curve(d0, grid, n_nominal=n)
        c1 = betti_curve(d1, grid, n_nominal=n)
        row = ResultRow(
            hurst=hurst, dim=dim, tau=tau, q=q, realization=r, seed=seed_gen,
            summary=summary, n_cloud=sd.n_points,
            wall_time=time.perf_counter() - started,
        )
        return row, c0.values, c1.values
    except FbmTopoError as exc:
        row = ResultRow(
            hurst=hurst, dim=dim, tau=tau, q=q, realization=r, seed=seed_gen,
            summary=None, n_cloud=0,
            wall_time=time.perf_counter() - started,
            status=f"{type(exc).__name__}: {exc}",
        )
        return row, None, None


def _job(args):
    return run_realization(*args)


def run_experiment(config, workers=1, progress=None):
    """Run the full sweep; returns a ResultTable with per-cell mean curves."""
    config.validate()
    jobs = []
    for h_idx, hurst, dim, tau, q_idx, q in config.cells():
        for r in range(config.realizations):
            jobs.append((config, h_idx, hurst, dim, tau, q_idx, q, r))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_job, jobs, chunksize=8))
    else:
        outcomes = []
        for k, job in enumerate(jobs):
            outcomes.append(_job(job))
            if progress is not None and (k + 1) % progress == 0:
                print(f"  {k + 1}/{len(jobs)} realizations done", flush=True)
    rows = []
    sums = {}
    for row, c0, c1 in outcomes:
        rows.append(row)
        if c0 is None:
            continue
        key = (row.hurst, row.dim, row.tau, row.q)
        if key not in sums:
            sums[key] = [np.zeros_like(c0), np.zeros_like(c1), 0]
        sums[key][0] += c0
        sums[key][1] += c1
        sums[key][2] += 1
    curve_means = {}
    for (hurst, dim, tau, q), (s0, s1, count) in sums.items():
        eps_max = config.epsilon_max_factor * math.sqrt(dim)
        grid = np.linspace(0.0, config.n_points * eps_max, config.grid_resolution)
        curve_means[(hurst, dim, tau, q)] = (grid, s0 / count, s1 / count)
    return ResultTable(config=config, rows=rows, curve_means=curve_means)


@dataclass
class AggregateRow:
    """Per-cell mean / standard error of each measure over successful rows.

    stats maps measure name -> (mean, se, n_used); mean and se are None when
    no (or only one, for se) values were present. Absent counts stay in
    memory; the CSV carries mean/se pairs only.
    """

    hurst: float
    dim: int
    tau: int
    q: float
    count: int
    stats: dict


def aggregate(table):
    """Collapse a ResultTable into one AggregateRow per cell."""
    cells = {}
    for row in table.rows:
        key = (row.hurst, row.dim, row.tau, row.q)
        cells.setdefault(key, []).append(row)
    out = []
    for h_idx, hurst, dim, tau, q_idx, q in table.config.cells():
        key = (hurst, dim, tau, q)
        rows = cells.get(key, [])
        good = [r for r in rows if r.ok]
        stats = {}
        for name in MEASURE_NAMES:
            values = [
                r.summary.measures()[name]
                for r in good
                if r.summary.measures()[name] is not None
            ]
            if not values:
                stats[name] = (None, None, 0)
            elif len(values) == 1:
                stats[name] = (float(values[0]), None, 1)
            else:
                arr = np.asarray(values, dtype=np.float64)
                se = arr.std(ddof=1) / math.sqrt(len(arr))
                stats[name] = (float(arr.mean()), float(se), len(arr))
        out.append(
            AggregateRow(hurst=hurst, dim=dim, tau=tau, q=q, count=len(good), stats=stats)
        )
    return out


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return "%.12g" % value


def emit_outputs(table, agg_rows, out_dir):
    """Write results.csv, aggregate.csv, betti_curves.csv and manifest.json."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    results_path = os.path.join(out_dir, "results.csv")
    with open(results_path, "w", newline="\n") as fh:
        header = ["H", "D", "tau", "q", "realization", "seed"]
        header += list(MEASURE_NAMES) + ["n_cloud", "status"]
        fh.write(",".join(header) + "\n")
        for row in table.rows:
            fields = [
                _fmt(row.hurst), _fmt(row.dim), _fmt(row.tau), _fmt(row.q),
                _fmt(row.realization), str(row.seed),
            ]
            if row.summary is None:
                fields += [""] * len(MEASURE_NAMES)
            else:
                measures = row.summary.measures()
                fields += [_fmt(measures[name]) for name in MEASURE_NAMES]
            fields += [_fmt(row.n_cloud), row.status]
            fh.write(",".join(fields) + "\n")
    agg_path = os.path.join(out_dir, "aggregate.csv")
    with open(agg_path, "w", newline="\n") as fh:
        header = ["H", "D", "tau", "q", "count"]
        for name in MEASURE_NAMES:
            header += [f"{name}_mean", f"{name}_se"]
        fh.write(",".join(header) + "\n")
        for row in agg_rows:
            fields = [_fmt(row.hurst), _fmt(row.dim), _fmt(row.tau), _fmt(row.q),
                      _fmt(row.count)]
            for name in MEASURE_NAMES:
                mean, se, _n = row.stats[name]
                fields += [_fmt(mean), _fmt(se)]
            fh.write(",".join(fields) + "\n")
    curves_path = os.path.join(out_dir, "betti_curves.csv")
    with open(curves_path, "w", newline="\n") as fh:
        fh.write("H,D,tau,q,eta,betti0,betti1\n")
        for key in sorted(table.curve_means):
            hurst, dim, tau, q = key
            grid, b0, b1 = table.curve_means[key]
            for g, v0, v1 in zip(grid, b0, b1):
                fh.write(
                    ",".join(
                        [_fmt(hurst), _fmt(dim), _fmt(tau), _fmt(q),
                         _fmt(g), _fmt(v0), _fmt(v1)]
                    )
                    + "\n"
                )
    manifest_path = os.path.join(out_dir, "manifest.json")
    import numba
    import scipy

    manifest = {
        "config": dataclasses.asdict(table.config),
        "master_seed": table.config.master_seed,
        "rows_total": len(table.rows),
        "rows_ok": sum(1 for r in table.rows if r.ok),
        "versions": {
            "fbmtopo": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "numba": numba.__version__,
        },
    }
    with open(manifest_path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return results_path, agg_path, curves_path, manifest_path
