"""Command-line front end: ``wgorder {check,reproduce,verify,sample,check-majorize}``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import load_system
from .errors import ConfigError, GenerationExhaustedError, WGOrderError
from .grid import DEFAULT_POINTS, DEFAULT_Y_MAX, DEFAULT_Y_MIN, REPRODUCTION_POINTS, Grid
from .majorization import cone_membership, majorizes
from .orderlab import Relation, Status, check
from .presets import PRESETS, evaluate_panels, get_preset
from .systems import min_sample
from .theorems import Theorem, verify_theorem

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INCONCLUSIVE = 2
EXIT_CONFIG = 3
EXIT_USAGE = 4

EXIT_CODES = """\
exit codes:
  0  order holds / majorization holds / every trial passed / command succeeded
  1  order fails / majorization fails / a theorem trial failed / a panel
     contradicts its expected classification
  2  inconclusive (saturation, zero density, hypothesis generation exhausted)
  3  configuration error (missing file, malformed JSON, invalid field)
  4  usage error (bad arguments)
"""

_STATUS_EXIT = {Status.HOLDS: EXIT_OK, Status.FAILS: EXIT_FAILS, Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _fmt(v: float) -> str:
    return repr(float(v))


def _grid(args) -> Grid:
    try:
        return Grid.uniform(args.grid_points, args.y_min, args.y_max)
    except WGOrderError as exc:
        raise UsageError(str(exc)) from None


def _write(path: str | Path | None, text: str) -> None:
    if path is None:
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")


def _csv_header(meta: dict) -> list[str]:
    return [f"# {k}={json.dumps(v, sort_keys=True, separators=(',', ':'))}" for k, v in meta.items()]


# -- subcommands ---------------------------------------------------------------


def cmd_check(args) -> int:
    grid = _grid(args)
    a, b = load_system(args.config_a), load_system(args.config_b)
    verdict = check(args.relation, a, b, grid)
    print(f"{verdict.relation.value}: {verdict.status.value}")
    if verdict.witness is not None:
        x, lhs, rhs = verdict.witness
        print(f"witness: x={_fmt(x)} lhs={_fmt(lhs)} rhs={_fmt(rhs)}")
    if verdict.detail:
        print(f"detail: {verdict.detail}")
    report = {
        "command": "check",
        "seed": args.seed,
        "grid": grid.to_dict(),
        "a": a.to_dict(),
        "b": b.to_dict(),
        "verdict": verdict.to_dict(),
    }
    _write(args.out, _dumps(report))
    return _STATUS_EXIT[verdict.status]


def cmd_reproduce(args) -> int:
    preset = get_preset(args.preset)
    grid = _grid(args)
    outdir = Path(args.out or f"reproduce-{preset.name}")
    results = evaluate_panels(preset, grid)
    meta = {"preset": preset.name, "seed": args.seed, "grid": grid.to_dict(), "config": preset.to_dict()}
    summary = {**meta, "panels": {}}
    for r in results:
        lines = _csv_header({**meta, "panel": r.panel.name, "value": r.panel.label})
        lines.append("y,x,value")
        lines += [f"{_fmt(y)},{_fmt(x)},{_fmt(v)}" for y, x, v in zip(r.y, r.x, r.values)]
        _write(outdir / f"{r.panel.name}.csv", "\n".join(lines) + "\n")
        summary["panels"][r.panel.name] = {
            "label": r.panel.label,
            "expected": r.panel.expected.value,
            "observed": r.report.trend.value,
            "witness": list(r.report.witness) if r.report.witness is not None else None,
            "matches": r.matches,
        }
        wit = f" witness x_up={_fmt(r.report.witness[0])} x_down={_fmt(r.report.witness[1])}" if r.report.witness else ""
        flag = "ok" if r.matches else "MISMATCH"
        print(f"{r.panel.name}: expected {r.panel.expected.value}, observed {r.report.trend.value}{wit} [{flag}]")
    summary["all_match"] = all(r.matches for r in results)
    _write(outdir / "summary.json", _dumps(summary))
    print(f"wrote {len(results)} CSV files and summary.json to {outdir}")
    return EXIT_OK if summary["all_match"] else EXIT_FAILS


def cmd_verify(args) -> int:
    theorem = Theorem.parse(args.theorem)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    grid = _grid(args)
    try:
        report = verify_theorem(theorem, args.seed, args.trials, grid=grid)
    except GenerationExhaustedError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    sys.stdout.write(report.to_text())
    _write(args.out, report.to_json())
    if report.failures:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


def cmd_sample(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    system = load_system(args.config)
    canonical = json.dumps(system.to_dict(), sort_keys=True, separators=(",", ":"))
    draws = min_sample(system, args.seed, args.count)
    lines = _csv_header(
        {
            "seed": args.seed,
            "count": args.count,
            "spec_sha256": hashlib.sha256(canonical.encode()).hexdigest(),
            "config": system.to_dict(),
        }
    )
    lines.append("draw,value,atom")
    lines += [f"{i},{_fmt(v)},{int(at)}" for i, (v, at) in enumerate(zip(draws.values, draws.atom))]
    text = "\n".join(lines) + "\n"
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.count} draws to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_majorize(args) -> int:
    if not args.y:
        raise UsageError("usage: check-majorize x1 x2 ... -- y1 y2 ...")
    x, y = np.array(args.x), np.array(args.y)
    try:
        result = majorizes(x, y)
    except WGOrderError as exc:
        raise UsageError(str(exc)) from None
    print(f"x majorizes y: {'yes' if result else 'no'}")
    print(f"cone(x): {cone_membership(x).value}  cone(y): {cone_membership(y).value}")
    report = {"command": "check-majorize", "x": x.tolist(), "y": y.tolist(), "majorizes": result}
    _write(args.out, _dumps(report))
    return EXIT_OK if result else EXIT_FAILS


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def grid_flags(points: int) -> argparse.ArgumentParser:
        p = _Parser(add_help=False)
        g = p.add_argument_group("grid (x = -ln y, y evenly spaced)")
        g.add_argument("--grid-points", type=int, default=points, help=f"number of y points (default {points})")
        g.add_argument("--y-min", type=float, default=DEFAULT_Y_MIN, help=f"default {DEFAULT_Y_MIN}")
        g.add_argument("--y-max", type=float, default=DEFAULT_Y_MAX, help=f"default {DEFAULT_Y_MAX}")
        return p

    parser = _Parser(
        prog="wgorder",
        description="Stochastic orders of Weibull-G series-system minima.",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser(
        "check", parents=[grid_flags(DEFAULT_POINTS)], help="check a <= b in an order", epilog=EXIT_CODES, formatter_class=fmt
    )
    p.add_argument("relation", choices=[r.value for r in Relation])
    p.add_argument("config_a", help="system JSON for a")
    p.add_argument("config_b", help="system JSON for b")
    p.add_argument("--seed", type=int, default=0, help="recorded in the report")
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "reproduce",
        parents=[grid_flags(REPRODUCTION_POINTS)],
        help="write counterexample figure data",
        epilog=EXIT_CODES,
        formatter_class=fmt,
    )
    p.add_argument("preset", choices=sorted(PRESETS))
    p.add_argument("--seed", type=int, default=0, help="recorded in every file")
    p.add_argument("--out", help="output directory (default reproduce-<preset>)")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser(
        "verify", parents=[grid_flags(DEFAULT_POINTS)], help="randomised theorem check", epilog=EXIT_CODES, formatter_class=fmt
    )
    p.add_argument("theorem", type=str.upper, choices=[t.value for t in Theorem], metavar="{t3.1..t3.7}")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="Monte Carlo draws of a system minimum", epilog=EXIT_CODES, formatter_class=fmt)
    p.add_argument("config", help="system JSON")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "check-majorize",
        usage="wgorder check-majorize [--out OUT] x [x ...] -- y [y ...]",
        help="does x majorize y",
        epilog=EXIT_CODES,
        formatter_class=fmt,
    )
    p.add_argument("x", type=float, nargs="+")
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_check_majorize, y=None)
    return parser


def _split_majorize(argv: list[str]) -> tuple[list[str], list[str] | None]:
    if argv and argv[0] == "check-majorize" and "--" in argv:
        i = argv.index("--")
        return argv[:i], argv[i + 1 :]
    return argv, None


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv, y_part = _split_majorize(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if y_part is not None:
        try:
            args.y = [float(v) for v in y_part]
        except ValueError as exc:
            print(f"wgorder: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wgorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"wgorder: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"wgorder: I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
