"""Command-line interface: ``fusscatalan <command> ...``.

Every command prints one JSON envelope on stdout,
``{"schema_version", "command", "params", "result", "warnings"}``, with keys
in a fixed order and floats written with 17 significant digits. Density
grids are written as CSV (``phi,x,density``). Exit codes: 0 success,
1 numerical failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import math
import sys
import warnings
from typing import Any, Sequence

import numpy as np

from . import batteries
from .classify import classify
from .combinatorics import (
    FCParams,
    free_cumulants,
    fuss_catalan_integer,
    moments,
)
from .density import DensityGrid, density_at, density_grid
from .errors import DomainError, NumericalError
from .unimodal import mode_scan, phase_transition_scan, solve_r0_mu2
from .numerics import RootConfig

SCHEMA_VERSION = "1"
CSV_HEADER = "phi,x,density"


# ---------------------------------------------------------------------------
# Serialization


def format_float(v: float) -> str:
    return format(v, ".17g")


def _plain(obj: Any) -> Any:
    """Convert dataclasses, enums, tuples and numpy scalars to JSON-ready values."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, bool)) or v is None for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj: Any, indent: int = 2) -> str:
    return _emit(_plain(obj), indent, 0)


def envelope(command: str, params: dict, result: Any, warning_list: Sequence[str]) -> str:
    return to_json(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "result": result,
            "warnings": list(warning_list),
        }
    )


def grid_to_csv(grid: DensityGrid) -> str:
    lines = [CSV_HEADER]
    for s in grid.samples:
        lines.append(f"{format_float(s.phi)},{format_float(s.x)},{format_float(s.w)}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[tuple[float, float, float]]:
    lines = text.strip("\n").split("\n")
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {lines[0]!r}")
    rows = []
    for line in lines[1:]:
        a, b, c = line.split(",")
        rows.append((float(a), float(b), float(c)))
    return rows


# ---------------------------------------------------------------------------
# Commands


def _params(args) -> FCParams:
    return FCParams(args.p, args.r)


def _is_int(v: float) -> bool:
    return float(v).is_integer()


def cmd_numbers(args):
    params = _params(args)
    if args.n < 0:
        raise DomainError("--n must be >= 0")
    if _is_int(params.p) and _is_int(params.r):
        values = [fuss_catalan_integer(int(params.p), int(params.r), k) for k in range(args.n + 1)]
    else:
        values = list(moments(params, args.n).values)
    return {"p": params.p, "r": params.r, "n": args.n}, values


def cmd_cumulants(args):
    params = _params(args)
    if args.n < 1:
        raise DomainError("--n must be >= 1")
    q = params.p - params.r
    if _is_int(q) and _is_int(params.r):
        values = [fuss_catalan_integer(int(q), int(params.r), k) for k in range(1, args.n + 1)]
    else:
        values = list(free_cumulants(params, args.n).values)
    return {"p": params.p, "r": params.r, "n": args.n}, values


def cmd_density(args):
    params = _params(args)
    echo = {"p": params.p, "r": params.r}
    if args.x is not None:
        echo["x"] = args.x
        return echo, {"x": args.x, "density": density_at(params, args.x)}
    echo["grid"] = args.grid
    fmt = args.format or "csv"
    echo["format"] = fmt
    grid = density_grid(params, args.grid)
    if fmt == "json":
        return echo, {"samples": list(grid.samples)}
    text = grid_to_csv(grid)
    if args.out is None:
        return echo, text
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    echo["out"] = args.out
    return echo, {"rows": len(grid), "trapezoid_mass": grid.trapezoid_mass()}


def cmd_classify(args):
    params = _params(args)
    if not 1 <= args.hankel_size <= 8:
        raise DomainError("--hankel-size must lie in 1..8")
    report = classify(params, args.hankel_size)
    result = _plain(report)
    result["params"] = {"p": params.p, "r": params.r}
    return {"p": params.p, "r": params.r, "hankel_size": args.hankel_size}, result


def cmd_modes(args):
    params = _params(args)
    report = mode_scan(params, args.grid)
    result = _plain(report)
    result["params"] = {"p": params.p, "r": params.r}
    return {"p": params.p, "r": params.r, "grid": args.grid}, result


def cmd_transition(args):
    p = args.p
    echo = {"p": p, "method": args.method, "tol": args.tol}
    if args.method == "a-root":
        if p != 2.0:
            raise DomainError("the a-root method is only available for p = 2")
        res = solve_r0_mu2(RootConfig(x_tol=args.tol))
        return echo, res
    if not p > 1.0:
        raise DomainError("--p must be > 1 for the scan method")
    r_lo = args.r_lo if args.r_lo is not None else p - 1.0
    r_hi = args.r_hi if args.r_hi is not None else p - 0.05
    echo["r_lo"], echo["r_hi"] = r_lo, r_hi
    res = phase_transition_scan(p, r_lo, r_hi, tol=args.tol)
    return echo, res


def cmd_verify(args):
    names = list(batteries.SUITES) if args.suite == "all" else [args.suite]
    results = [batteries.run_suite(name) for name in names]
    passed = all(r.passed for r in results)
    return {"suite": args.suite}, {"passed": passed, "suites": results}


COMMANDS = {
    "numbers": cmd_numbers,
    "cumulants": cmd_cumulants,
    "density": cmd_density,
    "classify": cmd_classify,
    "modes": cmd_modes,
    "transition": cmd_transition,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusscatalan",
        description="Fuss-Catalan distributions: moments, densities, free "
        "infinite divisibility and unimodality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pr(sp, need_r=True):
        sp.add_argument("--p", type=float, required=True)
        if need_r:
            sp.add_argument("--r", type=float, required=True)

    sp = sub.add_parser("numbers", help="Fuss-Catalan numbers A_0..A_n")
    pr(sp)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("cumulants", help="free cumulants r_1..r_n")
    pr(sp)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("density", help="density at a point or on a grid")
    pr(sp)
    where = sp.add_mutually_exclusive_group(required=True)
    where.add_argument("--x", type=float)
    where.add_argument("--grid", type=int)
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--out", help="write the CSV grid to this file")

    sp = sub.add_parser("classify", help="FID / FSD / free regular / free L1")
    pr(sp)
    sp.add_argument("--hankel-size", type=int, default=6)

    sp = sub.add_parser("modes", help="mode count of the density")
    pr(sp)
    sp.add_argument("--grid", type=int, default=20000)

    sp = sub.add_parser("transition", help="unimodality threshold r0(p)")
    pr(sp, need_r=False)
    sp.add_argument("--method", choices=("a-root", "scan"), default="a-root")
    sp.add_argument("--tol", type=float, default=1e-5)
    sp.add_argument("--r-lo", type=float)
    sp.add_argument("--r-hi", type=float)

    sp = sub.add_parser("verify", help="run verification batteries")
    sp.add_argument(
        "--suite",
        required=True,
        choices=(*batteries.SUITES, "all"),
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "density" and args.x is not None and args.format == "csv":
        parser.error("--format csv needs --grid")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            echo, result = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"fusscatalan {args.command}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"fusscatalan {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    messages = [str(w.message) for w in caught]
    if isinstance(result, str):
        sys.stdout.write(result)
        for m in messages:
            print(f"warning: {m}", file=sys.stderr)
        return 0
    sys.stdout.write(envelope(args.command, echo, result, messages) + "\n")
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
