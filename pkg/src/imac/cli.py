"""Command-line front end.

Subcommands::

    imac classify     --p1 --p2 --h1 --h2
    imac bounds       --p1 --p2 --h1 --h2 [--grid 201 --refine 200]
    imac region       --p1 --p2 --h1 --h2 --which outer|mses12|mses21|ivs|product
    imac sweep-power  [--h1 0.3 --h2 0.15 --start 0.1 --stop 50 --num 100 --spacing log]
    imac gap-grid     [--p1 5 --p2 5 --start 0 --stop 1 --num 21 --bands]
    imac regime-grid  [--p1 1 --p2 1 --num 101]

Exit status: 0 on success, 2 on usage or validation errors, 1 otherwise.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import OptimizerSettings, bounds
from .channel import ImacChannel
from .regimes import RegimeError, classify, exact_sum_capacity
from .regions import achievable_product_region, ivs_region, mses_region, outer_bound

GAP_BANDS = (0.1, 0.2, 0.4, 0.8, 1.6)


def fmt(x) -> str:
    """Shortest round-trip text of ``x`` rounded to 9 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    return repr(float(f"{float(x):.9g}"))


@dataclass(frozen=True)
class SweepConfig:
    start: float
    stop: float
    num: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.num < 2:
            raise ValueError(f"num must be >= 2, got {self.num}")
        if not self.start < self.stop:
            raise ValueError(f"start must be < stop, got {self.start} >= {self.stop}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("log spacing needs start > 0")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.num)
        return np.linspace(self.start, self.stop, self.num)


def _channel(args) -> ImacChannel:
    return ImacChannel(args.p1, args.p2, args.h1, args.h2)


def _opts(args) -> OptimizerSettings:
    return OptimizerSettings(grid=args.grid, refine=args.refine)


def cmd_classify(args) -> dict:
    ch = _channel(args)
    out = classify(ch).to_json()
    exact = exact_sum_capacity(ch)
    out["exact_sum_capacity"] = (
        None if exact is None else {"bits": float(fmt(exact[0])), "source": exact[1]}
    )
    return out


def cmd_bounds(args) -> dict:
    return bounds(_channel(args), _opts(args)).to_json()


def cmd_region(args) -> list[dict]:
    ch = _channel(args)
    build = {
        "outer": outer_bound,
        "mses12": lambda c: mses_region(c, (1, 2)),
        "mses21": lambda c: mses_region(c, (2, 1)),
        "ivs": ivs_region,
        "product": achievable_product_region,
    }[args.which]
    return build(ch).to_json()


def cmd_sweep_power(args) -> tuple[list[str], list[list]]:
    cfg = SweepConfig(args.start, args.stop, args.num, args.spacing)
    rows = []
    for p in cfg.points():
        b = bounds(ImacChannel(p, p, args.h1, args.h2), _opts(args))
        rows.append([p, b.lower, b.upper, b.upper - b.lower])
    return ["P", "lower_bits", "upper_bits", "gap_bits"], rows


def band_label(gap: float) -> str:
    for level in GAP_BANDS:
        if gap < level:
            return f"<{level:g}"
    return f">={GAP_BANDS[-1]:g}"


def cmd_gap_grid(args) -> tuple[list[str], list[list]]:
    cfg = SweepConfig(args.start, args.stop, args.num, "linear")
    header = ["h1", "h2", "gap_bits"] + (["band"] if args.bands else [])
    rows = []
    for h1 in cfg.points():
        for h2 in cfg.points():
            gap = bounds(ImacChannel(args.p1, args.p2, h1, h2), _opts(args)).gap
            rows.append([h1, h2, gap] + ([band_label(gap)] if args.bands else []))
    return header, rows


def regime_axis_stop(p1: float, p2: float) -> float:
    return 1.25 * (p1 + p2) * (1 + p1 + p2)


def cmd_regime_grid(args) -> tuple[list[str], list[list]]:
    """Flags on a grid of interference powers ``x = h1^2 p1``, ``y = h2^2 p2``."""
    stop = args.stop if args.stop is not None else regime_axis_stop(args.p1, args.p2)
    cfg = SweepConfig(args.start, stop, args.num, "linear")
    rows = []
    for x in cfg.points():
        for y in cfg.points():
            r = classify(ImacChannel(args.p1, args.p2, math.sqrt(x / args.p1), math.sqrt(y / args.p2)))
            rows.append([x, y, r.mses12, r.mses21, r.ivs, r.vsc])
    return ["x", "y", "mses12", "mses21", "ivs", "vsc"], rows


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, str):
        return v
    return float(fmt(v))


def render_table(header: Sequence[str], rows: Sequence[Sequence], form: str) -> str:
    if form == "json":
        records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _flatten(prefix: str, obj, out: dict):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out[prefix] = "" if obj is None else obj


def render_record(obj, form: str) -> str:
    if form == "json":
        return json.dumps(obj, indent=2) + "\n"
    if isinstance(obj, list):
        header = ["mask", "rhs_bits"]
        rows = [[" ".join(str(u) for u in c["mask"]), c["rhs_bits"]] for c in obj]
        return render_table(header, rows, "csv")
    flat: dict = {}
    _flatten("", obj, flat)
    return render_table(list(flat), [list(flat.values())], "csv")


def _add_channel_flags(p, defaults=(None, None, None, None)):
    for name, default in zip(("p1", "p2", "h1", "h2"), defaults):
        p.add_argument(f"--{name}", type=float, default=default, required=default is None)


def _add_output_flags(p, form):
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default=form)


def _add_optimizer_flags(p):
    p.add_argument("--grid", type=int, default=201, help="coarse grid points per axis")
    p.add_argument("--refine", type=int, default=200, help="simplex refinement iterations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imac", description="Interfering Gaussian MAC capacity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="interference regime flags and margins")
    _add_channel_flags(p)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_classify, kind="record")

    p = sub.add_parser("bounds", help="sum-capacity lower/upper bounds")
    _add_channel_flags(p)
    _add_optimizer_flags(p)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_bounds, kind="record")

    p = sub.add_parser("region", help="rate polytope as JSON constraints")
    _add_channel_flags(p)
    p.add_argument("--which", choices=("outer", "mses12", "mses21", "ivs", "product"), default="outer")
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_region, kind="record")

    p = sub.add_parser("sweep-power", help="bounds versus P with p1 = p2 = P")
    p.add_argument("--h1", type=float, default=0.3)
    p.add_argument("--h2", type=float, default=0.15)
    p.add_argument("--start", type=float, default=0.1)
    p.add_argument("--stop", type=float, default=50.0)
    p.add_argument("--num", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "log"), default="log")
    _add_optimizer_flags(p)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_sweep_power, kind="table")

    p = sub.add_parser("gap-grid", help="bound gap over (h1, h2)")
    p.add_argument("--p1", type=float, default=5.0)
    p.add_argument("--p2", type=float, default=5.0)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--num", type=int, default=21)
    p.add_argument("--bands", action="store_true", help="add a band column with levels " + ", ".join(map(str, GAP_BANDS)))
    _add_optimizer_flags(p)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_gap_grid, kind="table")

    p = sub.add_parser("regime-grid", help="regime flags over (h1^2 p1, h2^2 p2)")
    p.add_argument("--p1", type=float, default=1.0)
    p.add_argument("--p2", type=float, default=1.0)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=None, help="axis end (default 1.25 (p1+p2)(1+p1+p2))")
    p.add_argument("--num", type=int, default=101)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_regime_grid, kind="table")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except RegimeError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        parser.error(str(exc))
    if args.kind == "table":
        text = render_table(*result, args.format)
    else:
        text = render_record(result, args.format)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"imac: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
