"""Command line entry points.

Subcommands:
  generate    write one fBm series to CSV
  analyze     read a series CSV, compute diagrams and the summary JSON
  experiment  run the full parameter sweep and write result tables

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""

import argparse
import json
import math
import sys

import numpy as np

from .embedding import delay_embed, rescale_unit
from .errors import DomainError, FbmTopoError, SizeError
from .fbm import DEFAULT_METHOD, METHODS, TimeSeries, generate_fbm, inject_irregularity
from .harness import (
    SCALE_PRESETS,
    ExperimentConfig,
    aggregate,
    emit_outputs,
    load_config,
    run_experiment,
)
from .measures import summarize
from .persistence import compute_h0, compute_h1
from .rips import distance_matrix, enumerate_cliques


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; those are config errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_parser():
    parser = _Parser(prog="fbmtopo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write one fBm series to CSV")
    gen.add_argument("--hurst", type=float, required=True)
    gen.add_argument("--length", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--method", choices=METHODS, default=DEFAULT_METHOD)
    gen.add_argument("--q", type=float, default=0.0,
                     help="fraction of samples to mask (default 0)")
    gen.add_argument("--mask-seed", type=int, default=None,
                     help="seed for the missing-sample positions (default: --seed + 1)")
    gen.add_argument("--out", default="-", help="output CSV path, '-' for stdout")

    ana = sub.add_parser("analyze", help="diagrams + summary for one series file")
    ana.add_argument("series", help="CSV written by `generate`")
    ana.add_argument("--dim", type=int, required=True)
    ana.add_argument("--tau", type=int, required=True)
    ana.add_argument("--eps-factor", type=float, default=0.2,
                     help="epsilon_max = factor * sqrt(dim) (default 0.2)")
    ana.add_argument("--out", default="-", help="output JSON path, '-' for stdout")

    exp = sub.add_parser("experiment", help="run the full parameter sweep")
    exp.add_argument("--config", default=None, help="key=value config file")
    exp.add_argument("--out", default=None, help="output directory")
    exp.add_argument("--workers", type=int, default=1)
    exp.add_argument("--scale", choices=sorted(SCALE_PRESETS), default=None,
                     help="preset overriding n_points and realizations")
    return parser


def _write_series_csv(series, q, path):
    lines = [f"# hurst={series.hurst} seed={series.seed} method={series.method} q={q}"]
    lines.append("index,value,mask")
    for t in range(len(series)):
        lines.append(f"{t},{float(series.values[t])!r},{int(series.mask[t])}")
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _read_series_csv(path):
    meta = {"hurst": 0.5, "seed": 0, "method": DEFAULT_METHOD}
    values = []
    mask = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        key, _, val = token.partition("=")
                        if key in ("hurst",):
                            meta[key] = float(val)
                        elif key in ("seed",):
                            meta[key] = int(val)
                        elif key in ("method",):
                            meta[key] = val
                continue
            if line.startswith("index,"):
                continue
            parts = line.split(",")
            values.append(float(parts[1]))
            mask.append(bool(int(parts[2])) if len(parts) > 2 else True)
    if not values:
        raise DomainError(f"no samples found in {path}")
    return TimeSeries(
        values=np.array(values),
        mask=np.array(mask, dtype=bool),
        hurst=meta["hurst"],
        seed=meta["seed"],
        method=meta["method"],
    )


def _cmd_generate(args):
    series = generate_fbm(args.hurst, args.length, args.seed, args.method)
    if args.q > 0:
        mask_seed = args.seed + 1 if args.mask_seed is None else args.mask_seed
        series = inject_irregularity(series, args.q, mask_seed)
    _write_series_csv(series, args.q, args.out)
    return 0


def _cmd_analyze(args):
    series = _read_series_csv(args.series)
    if args.dim < 1 or args.tau < 0 or args.eps_factor <= 0:
        raise DomainError("need dim >= 1, tau >= 0 and a positive eps factor")
    n_nominal = len(series) - (args.dim - 1) * args.tau
    series = rescale_unit(series)
    cloud = delay_embed(series, args.dim, args.tau)
    eps_max = args.eps_factor * math.sqrt(args.dim)
    sd = distance_matrix(cloud, eps_max)
    filt = enumerate_cliques(sd)
    d0 = compute_h0(sd)
    d1 = compute_h1(filt)
    summary = summarize(d0, d1, n_nominal, hurst=series.hurst, dim=args.dim,
                        delay=args.tau, seed=series.seed)
    payload = {
        "n_nominal": n_nominal,
        "n_cloud": sd.n_points,
        "epsilon_max": eps_max,
        "measures": summary.measures(),
        "diagram_sizes": {"d0": d0.n_pairs, "d1": d1.n_pairs},
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return 0


def _cmd_experiment(args):
    if args.config is not None:
        config = load_config(args.config)
    else:
        config = ExperimentConfig()
    if args.scale is not None:
        for key, value in SCALE_PRESETS[args.scale].items():
            setattr(config, key, value)
    if args.out is not None:
        config.output_dir = args.out
    config.validate()
    table = run_experiment(config, workers=args.workers, progress=200)
    agg = aggregate(table)
    paths = emit_outputs(table, agg, config.output_dir)
    ok = sum(1 for r in table.rows if r.ok)
    print(f"{ok}/{len(table.rows)} realizations succeeded")
    for path in paths:
        print(f"wrote {path}")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "analyze": _cmd_analyze,
        "experiment": _cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, SizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FbmTopoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
