"""Command-line front end.

    nikolskii <command> [options]         # or: nikolskii --cmd <command>

Commands: constants, lemmas, bari, nikolskii, sharpness, all.  A JSON
config file supplies defaults; flags override it.  Exit codes: 0 all
checks passed, 1 at least one inequality violation, 2 usage or config
error (in which case no report is written).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .figures import render_figures
from .report import COMMANDS, ConfigError, RunConfig, run_command, write_report

_PAIR_KEYS = ("alpha_beta", "p_q")
_INT_KEYS = ("n",)


def _parse_number(text: str) -> float:
    text = text.strip()
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def parse_grid(spec: str) -> dict:
    """Shorthand grids: "alpha=0,0.5;mu=0,1;n=1,4" with pair-valued keys
    written as "alpha_beta=-0.5:-0.5,0:0" and "p_q=1:2,2:inf"."""
    grid: dict[str, list] = {}
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ConfigError(f"grid chunk {chunk!r} is not KEY=VALUES")
        key, _, values = chunk.partition("=")
        key = key.strip()
        try:
            if key in _PAIR_KEYS:
                grid[key] = [
                    [_parse_number(a) for a in pair.split(":")]
                    for pair in values.split(",")
                ]
            elif key in _INT_KEYS:
                grid[key] = [int(v) for v in values.split(",")]
            else:
                grid[key] = [_parse_number(v) for v in values.split(",")]
        except ValueError as exc:
            raise ConfigError(f"cannot parse grid values for {key!r}: {exc}") from exc
    if not grid:
        raise ConfigError("empty grid specification")
    return grid


def parse_tolerances(items: list[str]) -> dict:
    tols = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"tolerance {item!r} is not NAME=VALUE")
        name, _, value = item.partition("=")
        try:
            tols[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"cannot parse tolerance {item!r}: {exc}") from exc
    return tols


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nikolskii",
        description="verify the weighted polynomial norm inequalities and "
        "write deterministic reports",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS,
                        help="what to run (alternatively --cmd)")
    parser.add_argument("--cmd", choices=COMMANDS, help="command, flag form")
    parser.add_argument("--config", help="JSON config file with defaults")
    parser.add_argument("--seed", type=int, help="master seed (default 0)")
    parser.add_argument("--out", help="report path (default nikolskii-<command>.<format>)")
    parser.add_argument("--format", choices=("json", "csv"), help="report format")
    parser.add_argument("--trials", type=int, help="trial count for the random suites")
    parser.add_argument("--segments-per-combo", type=int,
                        help="segment candidates per (alpha, mu) combo")
    parser.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="tolerance override (ratio_rel, ratio_abs, lemma_rel)")
    parser.add_argument("--grid", help="parameter grid shorthand, see parse_grid")
    parser.add_argument("--degrees", help="comma-separated degrees for sharpness")
    parser.add_argument("--restarts", type=int, help="search restarts for sharpness")
    parser.add_argument("--budget", type=int, help="search evaluation budget")
    figures = parser.add_mutually_exclusive_group()
    figures.add_argument("--figures", dest="figures", action="store_true",
                         default=None, help="render PNG figures (default)")
    figures.add_argument("--no-figures", dest="figures", action="store_false",
                         help="suppress figure rendering")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command and args.cmd and args.command != args.cmd:
            raise ConfigError(
                f"conflicting commands {args.command!r} and --cmd {args.cmd!r}"
            )
        overrides = {
            "seed": args.seed,
            "out": args.out,
            "fmt": args.format,
            "trials": args.trials,
            "segments_per_combo": args.segments_per_combo,
            "restarts": args.restarts,
            "budget": args.budget,
            "figures": args.figures,
        }
        if args.tol:
            overrides["tolerances"] = parse_tolerances(args.tol)
        if args.grid:
            overrides["grid"] = parse_grid(args.grid)
        if args.degrees:
            try:
                overrides["degrees"] = [int(v) for v in args.degrees.split(",")]
            except ValueError as exc:
                raise ConfigError(f"cannot parse --degrees: {exc}") from exc
        config = RunConfig.from_sources(args.command or args.cmd, args.config, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    envelope = run_command(config)
    out_path = config.out or f"nikolskii-{config.command}.{config.fmt}"
    written = write_report(envelope, out_path, config.fmt)
    if config.figures:
        written.extend(render_figures(envelope, os.path.splitext(out_path)[0]))

    summary = envelope.summary
    print(
        f"{config.command}: total={summary['total']} passed={summary['passed']} "
        f"failed={summary['failed']} skipped={summary['skipped']} "
        f"wall={envelope.wall_time_s:.2f}s"
    )
    for path in written:
        print(f"  wrote {path}")
    return 1 if envelope.failed else 0


if __name__ == "__main__":
    sys.exit(main())
