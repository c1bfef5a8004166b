"""Command-line interface.

Subcommands:

  measures   skewness report for a data file or a distribution spec
  ci-curve   expectile-skewness confidence/symmetry-band curve over alpha
  sfunc      skewness-function curve with confidence/symmetry bands over t
  order      skewness-order diagnostics between two distribution specs
  theory     population skewness curves over a parameter grid
  simulate   Monte Carlo estimator comparison from a JSON config

Distributions are written inline as family:key=value,key=value, for
example gamma:shape=0.1,scale=1 or normal:mean=2,sd=1.  Data files hold
one real per line; '#' starts a comment and blank lines are ignored.

Tabular output is CSV (12 significant digits) or JSON (--format json).
With --out the table is written to that file and, unless --no-figure is
given, a PNG rendering of the same report is saved next to it.  A
relative --out is resolved against $EXSKEW_OUT_DIR when that is set.

Exit codes: 0 success, 1 usage or input parse errors, 2 degenerate
input (for example a constant sample).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .distributions import DistributionSpec, Sample, from_params
from .errors import DegenerateInputError
from .inference import s2_curve, sfunc_curve, write_curve_csv
from .orders import convex_transform_order, expectile_order, mean_mad_order
from .simulate import ExperimentConfig, run, theory_curves, write_theory_csv
from .skewness import build_report, write_report_csv, write_report_json

__all__ = ["main", "parse_dist_spec", "parse_grid"]

_DEFAULT_ALPHAS = "0.05:0.45:0.05"
_DEFAULT_TS = "0.25:3:0.25"


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1 (2 means degenerate input)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_dist_spec(text: str) -> DistributionSpec:
    """Parse family:key=value,key=value into a DistributionSpec."""
    family, _, rest = text.partition(":")
    family = family.strip()
    params: dict[str, float] = {}
    if rest.strip():
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"distribution spec {text!r}: expected key=value, got {item!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ValueError(
                    f"distribution spec {text!r}: {key.strip()!r} has non-numeric value {value!r}"
                ) from None
    return from_params(family, params)


def parse_grid(text: str) -> list[float]:
    """Parse lo:hi:step into an inclusive grid (hi included up to rounding)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid {text!r}: expected lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"grid {text!r}: non-numeric bound or step") from None
    if step <= 0.0 or hi < lo:
        raise ValueError(f"grid {text!r}: need step > 0 and hi >= lo")
    count = int(round((hi - lo) / step)) + 1
    grid = [lo + k * step for k in range(count)]
    return [g for g in grid if g <= hi + 1e-12 * max(1.0, abs(hi))]


def _check_level(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must lie strictly inside (0, 1), got {level:g}")
    return level


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get("EXSKEW_OUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


def _emit(args, write_table, render_figure) -> None:
    """Write the delimited table to --out or stdout; render the figure beside it."""
    out = _resolve_out(args.out)
    if out is None:
        write_table(sys.stdout)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        write_table(fh)
    if render_figure is not None and not args.no_figure:
        render_figure(_figure_path(out))


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="tabular output format (default csv)")
    p.add_argument("--out", metavar="PATH",
                   help="write output to PATH (default stdout); relative paths "
                        "resolve against $EXSKEW_OUT_DIR")
    p.add_argument("--no-figure", action="store_true",
                   help="do not render a PNG next to --out")


def _load_sample(path: str) -> Sample:
    samp = Sample.from_file(path)
    if samp.is_degenerate():
        raise DegenerateInputError(f"{path}: sample is constant (no dispersion)")
    return samp


def _cmd_measures(args) -> int:
    if (args.input is None) == (args.dist is None):
        raise ValueError("measures: provide exactly one input source (--input or --dist)")
    if args.input is not None:
        source = _load_sample(args.input)
        source_id = args.input
    else:
        source = parse_dist_spec(args.dist)
        source_id = source.label
    alphas = parse_grid(args.alpha_grid) if args.alpha_grid else [args.alpha]
    ts = parse_grid(args.t_grid)
    for a in alphas:
        if not 0.0 < a < 0.5:
            raise ValueError(f"measures: alpha must lie strictly inside (0, 1/2), got {a:g}")
    report = build_report(source, alphas, ts, source_id)

    def write_table(fh):
        if args.format == "json":
            write_report_json(report, fh)
        else:
            write_report_csv(report, fh)

    def render(path):
        from .plots import save_measures_figure

        save_measures_figure(report, path)

    _emit(args, write_table, render)
    return 0


def _curve_command(args, kind: str) -> int:
    samp = _load_sample(args.input)
    level = _check_level(args.level)
    if kind == "s2":
        grid = parse_grid(args.alpha_grid)
        for a in grid:
            if not 0.0 < a < 0.5:
                raise ValueError(f"ci-curve: alpha must lie strictly inside (0, 1/2), got {a:g}")
        points = s2_curve(samp, grid, level)
        xlabel, title = "alpha", f"expectile skewness, n={samp.n}"
    else:
        grid = parse_grid(args.t_grid)
        for t in grid:
            if not t > 0.0:
                raise ValueError(f"sfunc: t must be positive, got {t:g}")
        points = sfunc_curve(samp, grid, level)
        xlabel, title = "t", f"skewness function, n={samp.n}"

    def write_table(fh):
        if args.format == "json":
            json.dump([p.__dict__ for p in points], fh, indent=2)
            fh.write("\n")
        else:
            write_curve_csv(points, fh)

    def render(path):
        from .plots import save_curve_figure

        save_curve_figure(points, path, xlabel, title)

    _emit(args, write_table, render)
    return 0


def _cmd_order(args) -> int:
    f_dist = parse_dist_spec(args.dist_f)
    g_dist = parse_dist_spec(args.dist_g)
    checks = {
        "convex": convex_transform_order,
        "mean-mad": mean_mad_order,
        "expectile": expectile_order,
    }
    selected = list(checks) if args.order == "all" else [args.order]
    verdicts = {name: checks[name](f_dist, g_dist, args.grid_size) for name in selected}

    def write_table(fh):
        if args.format == "json":
            json.dump({name: {"relation": v.relation.value, "witnesses": v.witnesses[:3]}
                       for name, v in verdicts.items()}, fh, indent=2)
            fh.write("\n")
        else:
            for name, v in verdicts.items():
                line = f"{name}: {v.relation.value}"
                if v.witnesses:
                    shown = ", ".join(f"{w:.6g}" for w in v.witnesses[:3])
                    line += f" (witnesses: {shown})"
                fh.write(line + "\n")

    def render(path):
        from .plots import save_order_figure

        save_order_figure(verdicts, path)

    _emit(args, write_table, render)
    return 0


def _cmd_theory(args) -> int:
    params = parse_grid(args.param_grid)
    alphas = parse_grid(args.alpha_grid)
    for a in alphas:
        if not 0.0 < a < 0.5:
            raise ValueError(f"theory: alpha must lie strictly inside (0, 1/2), got {a:g}")
    points = theory_curves(args.family, params, alphas)

    def write_table(fh):
        if args.format == "json":
            json.dump([p.__dict__ for p in points], fh, indent=2)
            fh.write("\n")
        else:
            write_theory_csv(points, fh)

    def render(path):
        from .plots import save_theory_figure

        save_theory_figure(points, path)

    _emit(args, write_table, render)
    return 0


def _cmd_simulate(args) -> int:
    config = ExperimentConfig.from_json_file(args.config)
    if args.seed is not None:
        config = ExperimentConfig(config.distribution, config.measures,
                                  config.sample_sizes, config.replications, args.seed)
    table = run(config)

    def write_table(fh):
        if args.format == "json":
            json.dump(table.to_json_dict(), fh, indent=2)
            fh.write("\n")
        else:
            table.to_csv(fh)

    def render(path):
        from .plots import save_simulation_figure

        save_simulation_figure(table, path)

    _emit(args, write_table, render)
    if not table.valid:
        print("warning: failure rate above 1% in at least one cell; "
              "table marked not valid", file=sys.stderr)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="exskew",
                     description="Expectile-based skewness measures and diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", parents=[], help="skewness report for a sample or family",
                       description="Evaluate every skewness measure for one input source.")
    p.add_argument("--input", metavar="FILE", help="data file, one real per line")
    p.add_argument("--dist", metavar="SPEC", help="inline distribution, family:key=value,...")
    p.add_argument("--alpha", type=float, default=0.25, help="single level (default 0.25)")
    p.add_argument("--alpha-grid", metavar="LO:HI:STEP", help="level grid, overrides --alpha")
    p.add_argument("--t-grid", metavar="LO:HI:STEP", default=_DEFAULT_TS,
                   help=f"skewness-function grid (default {_DEFAULT_TS})")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("ci-curve", help="expectile-skewness CI curve over alpha")
    p.add_argument("--input", metavar="FILE", required=True)
    p.add_argument("--alpha-grid", metavar="LO:HI:STEP", default=_DEFAULT_ALPHAS)
    p.add_argument("--level", type=float, default=0.95)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _curve_command(a, "s2"))

    p = sub.add_parser("sfunc", help="skewness-function CI curve over t")
    p.add_argument("--input", metavar="FILE", required=True)
    p.add_argument("--t-grid", metavar="LO:HI:STEP", default=_DEFAULT_TS)
    p.add_argument("--level", type=float, default=0.95)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _curve_command(a, "sfunc"))

    p = sub.add_parser("order", help="skewness-order diagnostics between two families")
    p.add_argument("dist_f", metavar="SPEC_F", help="reference distribution")
    p.add_argument("dist_g", metavar="SPEC_G", help="candidate more-skewed distribution")
    p.add_argument("--order", choices=("convex", "mean-mad", "expectile", "all"),
                   default="all")
    p.add_argument("--grid-size", type=int, default=2001)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("theory", help="population skewness curves over a parameter grid")
    p.add_argument("--family", required=True, choices=("gamma", "lognormal", "exponential"))
    p.add_argument("--param-grid", metavar="LO:HI:STEP", required=True)
    p.add_argument("--alpha-grid", metavar="LO:HI:STEP", default=_DEFAULT_ALPHAS)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("simulate", help="Monte Carlo estimator comparison")
    p.add_argument("config", metavar="CONFIG_JSON")
    p.add_argument("--seed", type=int, help="override the config's master seed")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateInputError as exc:
        print(f"exskew: degenerate input: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"exskew: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
