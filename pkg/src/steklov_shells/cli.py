"""Command-line front end.

Exit codes: 0 success, 1 bad arguments or violated preconditions, 2 when
``verify`` finds a failing check.  Floats are printed with 17 significant
digits, so output is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .model_spaces import DomainError, parse_space
from .mps2d import MpsConfig, NoMinimumError, solve_eccentric
from .quadrature import DEFAULT, Quadrature1D
from .radial import mode_ordering_check, sigma1_concentric
from .shell_functionals import (
    CSV_FIELDS,
    ShellGeometry,
    default_d_grid,
    newton_shell_residual,
    sweep,
)
from .verify import format_report, run_checks

__all__ = ["emit_records", "main", "run"]

_BOOL_FLAGS = {"json", "fast"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def emit_records(records, format: str, sink) -> None:
    """Write sweep records to ``sink`` as ``"csv"`` (header + rows) or a ``"json"`` array."""
    if not records:
        raise DomainError("no records to emit")
    if format not in ("csv", "json"):
        raise DomainError(f"format must be csv or json, got {format!r}")
    rows = [r.as_row() for r in records]
    if format == "json":
        # json prints floats with repr, which round-trips exactly
        sink.write(json.dumps(rows, indent=1) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in CSV_FIELDS])
    sink.write(buf.getvalue())


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise DomainError(f"cannot write {out}: {exc.strerror}") from exc


def _read_config(path: str) -> list[str]:
    """Turn a key=value file into flag tokens placed before the real flags."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    tokens = []
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if key in _BOOL_FLAGS:
            if value.lower() in ("1", "true", "yes"):
                tokens.append(flag)
            elif value.lower() not in ("0", "false", "no"):
                raise UsageError(f"{path}:{num}: {key} must be true or false")
        else:
            tokens += [flag, value]
    return tokens


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _d_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="steklov-shells",
                     description="First mixed Steklov-Dirichlet eigenvalues of geodesic shells.")
    parser.add_argument("--config", help="key=value file whose keys mirror flag names")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, shell=True):
        p.add_argument("--config", help=argparse.SUPPRESS)
        p.add_argument("--tol", type=float, default=None, help="relative quadrature tolerance")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if shell:
            p.add_argument("--space", required=True, help="euclidean, sphere, rp, cp, hp, op2, rh, ch, hh, oh2")
            p.add_argument("--dim", type=int, default=None, help="real dimension m, or rank n for rp/cp/hp/rh/ch/hh")
            p.add_argument("--r1", type=float, required=True)
            p.add_argument("--r2", type=float, required=True)

    p = sub.add_parser("sigma1", help="first eigenvalue of the concentric shell")
    common(p)

    p = sub.add_parser("modes", help="eigenvalues of the spherical-harmonic modes as CSV l,sigma")
    common(p)
    p.add_argument("--lmax", type=int, default=5)
    p.add_argument("--step", type=float, default=None, help="RK4 step (default (R2-R1)/4096)")

    p = sub.add_parser("sweep", help="Rayleigh-quotient functionals over displacements")
    common(p)
    p.add_argument("--d", type=_d_list, default=None, help="comma-separated displacements")
    p.add_argument("--steps", type=_positive_int, default=17, help="uniform grid size when --d is absent")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=_positive_int, default=1)

    p = sub.add_parser("newton", help="shell-theorem residual for a point at distance x")
    common(p, shell=False)
    p.add_argument("--space", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--x", type=float, required=True)

    p = sub.add_parser("mps", help="eccentric planar annulus by particular solutions")
    common(p, shell=False)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--basis", type=int, default=24)
    p.add_argument("--scan", type=int, default=200)
    p.add_argument("--trace", default=None, help="write the sigma scan as CSV")

    p = sub.add_parser("verify", help="run the full property suite")
    common(p, shell=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fast", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=_positive_int, default=1)
    return parser


def _expand_config(argv: list[str]) -> list[str]:
    if "--config" not in argv and not any(a.startswith("--config=") for a in argv):
        return argv
    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    rest = [a for i, a in enumerate(argv)
            if not (a == "--config" or a.startswith("--config=")
                    or (i > 0 and argv[i - 1] == "--config"))]
    if not rest:
        raise UsageError("missing subcommand")
    # config flags go right after the subcommand so later command-line flags win
    return [rest[0], *_read_config(known.config), *rest[1:]]


def _quad(args) -> Quadrature1D:
    if args.tol is None:
        return DEFAULT
    return Quadrature1D(rel_tol=args.tol, abs_tol=min(DEFAULT.abs_tol, args.tol))


def _cmd_sigma1(args):
    space = parse_space(args.space, args.dim)
    _write(fmt(sigma1_concentric(space, args.r1, args.r2, _quad(args))) + "\n", args.out)
    return 0


def _cmd_modes(args):
    space = parse_space(args.space, args.dim)
    if args.lmax < 0:
        raise DomainError("--lmax must be non-negative")
    table, ordered = mode_ordering_check(space, args.r1, args.r2, args.lmax, args.step)
    lines = ["l,sigma"] + [f"{l},{fmt(s)}" for l, s in table]
    _write("\n".join(lines) + "\n", args.out)
    print(f"mode 0 strictly smallest: {fmt(ordered)}", file=sys.stderr)
    return 0


def _cmd_sweep(args):
    space = parse_space(args.space, args.dim)
    base = ShellGeometry(space, args.r1, args.r2)
    d_values = args.d if args.d is not None else default_d_grid(args.r1, args.r2, args.steps)
    for d in d_values:
        base.at(d)
    result = sweep(base, d_values, _quad(args), args.threads)
    for d, reason in result.failures:
        print(f"d={fmt(d)} failed: {reason}", file=sys.stderr)
    if not result.records:
        raise DomainError("every displacement failed")
    buf = io.StringIO()
    emit_records(result.records, "json" if args.json else "csv", buf)
    _write(buf.getvalue(), args.out)
    for name, status in result.flags().items():
        print(f"{name}: {status}", file=sys.stderr)
    return 0


def _cmd_newton(args):
    space = parse_space(args.space, args.dim)
    _write(fmt(newton_shell_residual(space, args.r2, args.x, _quad(args))) + "\n", args.out)
    return 0


def _cmd_mps(args):
    cfg = MpsConfig(basis_order=args.basis, scan_points=args.scan)
    try:
        result = solve_eccentric(args.r1, args.r2, args.d, cfg)
        trace = result.scan_trace
    except NoMinimumError as exc:
        if args.trace:
            _write_trace(exc.trace, args.trace)
        raise DomainError(str(exc)) from exc
    if args.trace:
        _write_trace(trace, args.trace)
    _write(fmt(result.sigma) + "\n", args.out)
    return 0


def _write_trace(trace, path):
    _write("sigma,min_singular_value\n" + "".join(f"{fmt(s)},{fmt(v)}\n" for s, v in trace), path)


def _cmd_verify(args):
    results = run_checks(args.seed, args.fast, _quad(args), args.threads)
    if args.json:
        text = json.dumps([r.as_dict() for r in results], indent=1) + "\n"
    else:
        text = format_report(results)
    _write(text, args.out)
    return 0 if all(r.passed for r in results) else 2


_COMMANDS = {
    "sigma1": _cmd_sigma1, "modes": _cmd_modes, "sweep": _cmd_sweep,
    "newton": _cmd_newton, "mps": _cmd_mps, "verify": _cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_config(argv))
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (DomainError, ArithmeticError) as exc:
        print(f"steklov-shells: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
