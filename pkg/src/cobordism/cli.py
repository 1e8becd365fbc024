"""Command-line front end.

Every command prints exact, canonically ordered text.  ``--json-like``
switches to one ``key = value`` record per line for scripts.  The default
truncation degree comes from ``COBORDISM_DEGREE`` (8 when unset).

Exit status: 0 success, 1 domain or validation failure, 2 parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import fgl as fgl_mod
from . import hopf, quantization, report, toric
from .expr import ExprSyntaxError, parse_class
from .models import chern_coordinates

DEGREE_ENV = "COBORDISM_DEGREE"
DEFAULT_DEGREE = 8
COMMANDS = ("coords", "decompose-cpn", "fgl", "cartier-check", "basis", "hbar", "index",
            "exp-hbar-check", "toric", "report")


class UsageError(Exception):
    """Bad command line or configuration; reported with exit status 2."""


class DomainError(Exception):
    """A computation ran but its result is a failure; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


HIDDEN = object()  # marks records shown only with --json-like


class Output:
    """Records ``(key, value)`` plus the line shown in plain mode (the value by default)."""

    def __init__(self):
        self.records: list[tuple[str, str, object]] = []

    def add(self, key: str, value, plain=None) -> None:
        self.records.append((key, str(value), plain))

    def render(self, json_like: bool) -> str:
        lines = []
        for key, value, plain in self.records:
            if json_like:
                lines.append(f"{key} = {value}")
            elif plain is HIDDEN:
                continue
            else:
                lines.append(value if plain is None else plain)
        return "\n".join(lines) + ("\n" if lines else "")


def default_degree() -> int:
    raw = os.environ.get(DEGREE_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{DEGREE_ENV} must be an integer, got {raw!r}")
    if value < 2:
        raise UsageError(f"{DEGREE_ENV} must be at least 2")
    return value


# -- commands ------------------------------------------------------------------------

def _check(out: Output, result) -> None:
    out.add(result.name, "PASS" if result.passed else "FAIL", str(result))
    if not result.passed:
        raise DomainError(str(result))


def cmd_coords(args, out: Output) -> None:
    vector = chern_coordinates(parse_class(args.expr), args.convention)
    out.add("coords", vector)


def cmd_decompose(args, out: Output) -> None:
    d = hopf.decompose_cpn(args.n)
    out.add("k", d.k, f"k={d.k}; {d}")
    out.add("identity", d, HIDDEN)
    out.add("residual", d.residual(), HIDDEN)


def cmd_fgl(args, out: Output) -> None:
    N = args.degree or default_degree()
    law = fgl_mod.fgl(N)
    for (i, j), poly in sorted(law.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        if i and j:
            out.add(f"a[{i},{j}]", poly, f"a[{i},{j}] = {poly}")
    if args.report == "integrality":
        rep = fgl_mod.integrality_report(N, strict=False)
        for (i, j), _, vec in rep.entries:
            out.add(f"coords a[{i},{j}]", vec, f"coords a[{i},{j}] = {vec}")
        status = "PASS" if rep.passed else "FAIL"
        out.add("integrality", status, f"integrality through degree {N}: {status}")
        if not rep.passed:
            raise DomainError("non-integral coefficient coordinates")


def cmd_cartier(args, out: Output) -> None:
    _check(out, hopf.cartier_check(args.degree or default_degree()))


def cmd_basis(args, out: Output) -> None:
    if args.b is not None:
        cls = hopf.b_class(args.b)
    else:
        cls = hopf.beta_class(args.beta)
    out.add(cls.label, cls.combination, f"{cls.label} = {cls.combination}")
    out.add(f"coords {cls.label}", cls.vector, f"coords {cls.label} = {cls.vector}")


def cmd_hbar(args, out: Output) -> None:
    out.add("hbar", quantization.hbar(parse_class(args.manifold)))


def cmd_index(args, out: Output) -> None:
    x = parse_class(args.manifold)
    if args.twist is not None:
        out.add(f"index[{args.twist}]", quantization.twisted_index(x, args.twist))
        return
    poly = quantization.index_polynomial(x)
    out.add("index", quantization.format_polynomial(poly))


def cmd_exp_hbar(args, out: Output) -> None:
    _check(out, quantization.exp_hbar_check(args.dim))


def cmd_toric(args, out: Output) -> None:
    try:
        polytope = toric.load_polytope(args.file)
    except OSError as exc:
        raise DomainError(f"cannot read {args.file}: {exc.strerror}")
    if args.exhaustive:
        out.add("exhaustive", toric.exhaustive_numbers(polytope))
    elif args.ray is not None:
        out.add(f"ray[{args.ray}]", toric.ray(polytope, args.ray))
    else:
        out.add("class", toric.to_class(polytope))


def cmd_report(args, out: Output) -> None:
    rep = report.build_report()
    out.add("discrepancies", len(rep), f"{len(rep)} discrepancies")
    for i, f in enumerate(rep.findings, start=1):
        out.add(f"finding[{i}].location", f.location, f"[{i}] {f.location}")
        out.add(f"finding[{i}].printed", f.printed, f"  printed: {f.printed}")
        out.add(f"finding[{i}].engine", f.engine, f"  engine:  {f.engine}")
        out.add(f"finding[{i}].oracle", f.oracle, f"  oracle:  {f.oracle}")
    for i, a in enumerate(rep.agreements, start=1):
        out.add(f"agreement[{i}]", a, f"agrees: {a}")


# -- argument parsing ----------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json-like", action="store_true", default=argparse.SUPPRESS,
                        help="print key = value records")

    parser = _Parser(prog="cobordism", description="Exact computations in symplectic bordism.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coords", parents=[common], help="characteristic-number coordinates")
    p.add_argument("expr", help='class expression, e.g. "CP(2) - X^2"')
    p.add_argument("--convention", choices=("tangent", "normal", "chern"), default="tangent")
    p.set_defaults(handler=cmd_coords)

    p = sub.add_parser("decompose-cpn", parents=[common], help="write CP_n via symplectic classes")
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("fgl", parents=[common], help="formal group law coefficients")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--report", choices=("integrality",))
    p.set_defaults(handler=cmd_fgl)

    p = sub.add_parser("cartier-check", parents=[common], help="verify b(u)b(v) = b(F(u,v))")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(handler=cmd_cartier)

    p = sub.add_parser("basis", parents=[common], help="dual basis classes b_N or beta_N")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--b", type=_natural)
    group.add_argument("--beta", type=_natural)
    p.set_defaults(handler=cmd_basis)

    p = sub.add_parser("hbar", parents=[common], help="the hbar functional")
    p.add_argument("--manifold", required=True)
    p.set_defaults(handler=cmd_hbar)

    p = sub.add_parser("index", parents=[common], help="twisted signature index")
    p.add_argument("--manifold", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--twist", type=int)
    group.add_argument("--poly", action="store_true")
    p.set_defaults(handler=cmd_index)

    p = sub.add_parser("exp-hbar-check", parents=[common], help="verify Exp(hbar) = q")
    p.add_argument("--dim", type=_natural, default=6)
    p.set_defaults(handler=cmd_exp_hbar)

    p = sub.add_parser("toric", parents=[common], help="classes of symplectic toric manifolds")
    p.add_argument("--file", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--class", dest="show_class", action="store_true")
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--ray", type=int)
    p.set_defaults(handler=cmd_toric)

    p = sub.add_parser("report", parents=[common], help="compare with published tables")
    p.set_defaults(handler=cmd_report)
    return parser


def execute(argv: Sequence[str]) -> tuple[str, str, int]:
    """Run a command line; returns ``(stdout, stderr, exit status)``."""
    out = Output()
    json_like = False
    try:
        args = build_parser().parse_args(list(argv))
        json_like = getattr(args, "json_like", False)
        args.json_like = json_like
        args.handler(args, out)
    except (UsageError, ExprSyntaxError, toric.PolytopeParseError) as exc:
        detail = exc.caret() if isinstance(exc, ExprSyntaxError) else ""
        message = f"parse error: {exc}" + (f"\n{detail}" if detail else "")
        return out.render(json_like), message + "\n", 2
    except toric.PolytopeValidationError as exc:
        return out.render(json_like), f"validation error: {exc}\n", 1
    except DomainError as exc:
        return out.render(json_like), f"error: {exc}\n", 1
    except (ValueError, ArithmeticError, KeyError) as exc:
        return out.render(json_like), f"error: {exc}\n", 1
    return out.render(json_like), "", 0


def run(command: str, args: Sequence[str] = ()) -> tuple[str, int]:
    """Library entry point: output text (stdout then stderr) and exit status."""
    stdout, stderr, code = execute([command, *args])
    return stdout + stderr, code


def main(argv: Sequence[str] | None = None) -> int:
    stdout, stderr, code = execute(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
