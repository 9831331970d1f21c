"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse error, 3 pipeline failure,
4 verification failure (including a solution count that differs from the
expected one).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from .einstein import (
    SPACES,
    MetricParams,
    einstein_elimination_polynomial,
    format_system,
    get_space,
    run_pipeline,
    verify_solution,
)
from .groebner import EliminationError, GroebnerBudgetExceeded, ShapeError, groebner_basis
from .polyring import MonomialOrder, PolynomialParseError, parse_polynomials, to_fraction
from .randers import (
    InadmissibleError,
    TangentVector,
    einstein_randers_family,
    eval_randers,
    is_riemannian,
)
from .realroots import UnivariatePoly, format_decimal, format_scientific, isolate_roots, refine_root
from .report import RunReport

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PIPELINE, EXIT_VERIFY = 0, 1, 2, 3, 4
DEFAULT_DIGITS = 12
SPACE_CHOICES = [s.cli_name for s in SPACES.values()]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _digits(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("digits must be at least 1")
    return n


def _eps_for(digits: int) -> Fraction:
    # certified error well below half a unit in the last printed place
    return Fraction(1, 10 ** (digits + 3))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="e6randers", description="Einstein and Einstein-Randers metrics on E6/A4 and E6/A1.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run the full pipeline and print the positive Einstein metrics")
    s.add_argument("space", choices=SPACE_CHOICES)
    s.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    s.add_argument("--json", action="store_true", help="emit the JSON report")
    s.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")

    d = sub.add_parser("derive-system", help="print the Einstein polynomial system")
    d.add_argument("space", choices=SPACE_CHOICES)

    g = sub.add_parser("groebner", help="reduced Groebner basis of the polynomials in a file")
    g.add_argument("file", help="one polynomial per line; '-' reads stdin")
    g.add_argument("--order", help="e.g. lex:z,u2,x1,x2 (default: lex in order of first appearance)")

    r = sub.add_parser("roots", help="isolate and refine the real roots of a univariate polynomial")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--space", choices=SPACE_CHOICES, help="use the space's elimination polynomial")
    src.add_argument("--poly", help="polynomial text, e.g. 'x^2 - 2'")
    src.add_argument("--file", help="file holding one univariate polynomial")
    r.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)

    v = sub.add_parser("verify", help="Ricci residual of a metric (u0 = 1 unless given)")
    v.add_argument("space", choices=SPACE_CHOICES)
    v.add_argument("--params", required=True, help="e.g. u2=0.1141921856,x1=1.2006785414,x2=0.6513015810")
    v.add_argument("--tol", default="1e-8")
    v.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)

    n = sub.add_parser("randers", help="Einstein-Randers metric from navigation data")
    n.add_argument("space", choices=SPACE_CHOICES)
    n.add_argument("--solution", type=int, default=0)
    n.add_argument("--w0", default="0")
    n.add_argument("--y", dest="y_spec", help="tangent vector, e.g. 'h0:1' or 'h0:1;m1:0,2'")
    n.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    return p


# ---------------------------------------------------------------- commands


def cmd_solve(args, out) -> int:
    space = get_space(args.space)
    eps = _eps_for(args.digits)
    t0 = time.perf_counter()
    result = run_pipeline(space, eps)
    elapsed = time.perf_counter() - t0
    timings = {"pipeline_seconds": round(elapsed, 3)} if args.timings else None
    report = RunReport.from_pipeline(result, args.digits, eps, timings)
    if args.json:
        out.write(report.to_json())
    else:
        out.write(_solve_text(report))
    if not result.expected_count_found:
        print(
            f"verification failure: found {report.found_solutions} positive solutions, "
            f"expected {report.expected_solutions}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    return EXIT_OK


def _solve_text(report: RunReport) -> str:
    lines = [f"space: {report.space}"]
    lines.append("system:")
    lines += [f"  {p}" for p in report.system]
    ep = report.elimination_polynomial
    lines.append(f"elimination polynomial (degree {ep['degree']} in {ep['variable']}):")
    lines.append(f"  {ep['text']}")
    lines.append(f"real roots: {', '.join(b['value'] for b in report.root_boxes)}")
    lines.append(f"positive solutions with u0 = 1 (ascending x2): {report.found_solutions}")
    for s in report.solutions:
        params = " ".join(f"{k}={v}" for k, v in s["params"].items() if k != "u0")
        worst = max(s["errors"].values(), key=Fraction)
        lines.append(f"  [{s['index']}] {params} K={s['einstein_constant']} err<={worst}")
    return "\n".join(lines) + "\n"


def cmd_derive_system(args, out) -> int:
    out.write(format_system(args.space))
    return EXIT_OK


def cmd_groebner(args, out) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    order = MonomialOrder.parse(args.order) if args.order else None
    ring = order.precedence if order else None
    polys = parse_polynomials(text, ring)
    if not polys:
        raise UsageError("no polynomials in input")
    if order is None:
        order = MonomialOrder(polys[0].ring)
    else:
        used = set().union(*(p.variables() for p in polys))
        unused = [v for v in order.precedence if v not in used]
        if unused:
            raise UsageError(f"order references unknown variables {unused}")
    G = groebner_basis([p for p in polys if not p.is_zero()], order)
    for g in G:
        out.write(g.format(order) + "\n")
    return EXIT_OK


def cmd_roots(args, out) -> int:
    if args.space:
        poly = einstein_elimination_polynomial(args.space)
    else:
        text = args.poly if args.poly is not None else Path(args.file).read_text()
        polys = parse_polynomials(text)
        if len(polys) != 1:
            raise UsageError(f"expected one polynomial, got {len(polys)}")
        poly = polys[0]
    if len(poly.variables()) > 1:
        raise UsageError(f"not univariate: {poly.variables()}")
    up = UnivariatePoly.from_polynomial(poly)
    eps = _eps_for(args.digits)
    boxes = [refine_root(up, b, eps) for b in isolate_roots(up)]
    out.write(f"polynomial: {poly.format()}\n")
    out.write(f"distinct real roots: {len(boxes)}\n")
    for b in boxes:
        out.write(f"  {format_decimal(b.value_estimate, args.digits)}  err<={format_scientific(b.error_bound)}\n")
    return EXIT_OK


def _parse_assignments(text: str) -> dict[str, Fraction]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"expected name=value, got {part!r}")
        try:
            out[name.strip()] = to_fraction(value)
        except ValueError:
            raise UsageError(f"bad number {value!r}") from None
    return out


def cmd_verify(args, out) -> int:
    space = get_space(args.space)
    try:
        params = MetricParams.from_mapping(space, _parse_assignments(args.params))
        tol = to_fraction(args.tol)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rep = verify_solution(space, params, tol)
    out.write(f"max residual: {format_scientific(rep.max_residual)}\n")
    out.write(f"einstein constant: {format_decimal(rep.einstein_constant, args.digits)}\n")
    for label, v in rep.components.as_dict().items():
        out.write(f"  r[{label}] = {format_decimal(v, args.digits)}\n")
    out.write(f"{'pass' if rep.passed else 'FAIL'} (tol {args.tol})\n")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def parse_y_spec(space, spec: str) -> TangentVector:
    comps = {}
    for chunk in spec.split(";"):
        if not chunk.strip():
            continue
        label, sep, values = chunk.partition(":")
        if not sep:
            raise UsageError(f"expected block:values, got {chunk!r}")
        try:
            comps[label.strip()] = [to_fraction(v) for v in values.split(",")]
        except ValueError:
            raise UsageError(f"bad number in {chunk!r}") from None
    try:
        return TangentVector.from_blocks(space, comps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_randers(args, out) -> int:
    space = get_space(args.space)
    try:
        w0 = to_fraction(args.w0)
    except ValueError:
        raise UsageError(f"bad w0 {args.w0!r}") from None
    try:
        nav = einstein_randers_family(space, args.solution, w0)
    except InadmissibleError as exc:
        print(f"inadmissible navigation data: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    d = args.digits
    out.write(f"space: {space.name}  solution: {args.solution}  w0: {args.w0}\n")
    out.write(f"lambda: {format_decimal(nav.lam, d)}\n")
    out.write("admissible: yes\n")
    out.write(f"{'Riemannian' if is_riemannian(nav) else 'non-Riemannian'}\n")
    out.write(f"einstein constant: {format_decimal(nav.einstein_constant, d)}\n")
    if args.y_spec:
        y = parse_y_spec(space, args.y_spec)
        fp, fm = eval_randers(nav, y), eval_randers(nav, -y)
        out.write(f"F(y): {format_decimal(Fraction(fp.F_value), d)}\n")
        out.write(f"F(-y): {format_decimal(Fraction(fm.F_value), d)}\n")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "derive-system": cmd_derive_system,
    "groebner": cmd_groebner,
    "roots": cmd_roots,
    "verify": cmd_verify,
    "randers": cmd_randers,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolynomialParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GroebnerBudgetExceeded, ShapeError, EliminationError) as exc:
        print(f"pipeline failure: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
