"""Command line: ``substral check | generate | tile | expand``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .coincidence import AnalysisConfig, theorem_certify
from .field import FieldElement, NumberField
from .generators import (
    arnoux_rauzy,
    beta_field,
    beta_orbit,
    beta_substitution,
    brun,
    greedy_expansion,
    jacobi_perron,
)
from .polynomial import format_polynomial, parse_polynomial
from .report import TOOL, certification_document, dumps
from .substitution import (
    SubstitutionError,
    admissible_seed,
    format_substitution,
    parse_substitution,
    read_provenance,
)
from .tiling import FixedTiling, TileSet, render_patch

INPUT_ERROR = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which the check command reserves for NOT_PDS
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_fraction(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def field_literal(text: str, field: NumberField) -> FieldElement:
    """A rational or a polynomial in ``x`` (standing for beta), e.g. ``x - 1/2``."""
    try:
        return field.rational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return field.from_polynomial(parse_polynomial(text, variables=("x",)))


# -- commands ------------------------------------------------------------------


def cmd_check(args) -> int:
    text = _read(args.input)
    phi = parse_substitution(text)
    config = AnalysisConfig(n_max=args.nmax, samples=args.samples, cap=args.cap,
                            window=args.window, tolerance=args.tolerance)
    report = theorem_certify(phi, config)
    doc = certification_document(report, source=args.input, provenance=read_provenance(text))
    _write(dumps(doc), args.out)
    if args.out not in (None, "-"):
        print(f"{report.verdict.kind.value}: {report.verdict.reason}", file=sys.stderr)
    return report.verdict.exit_code


def _generate(args):
    if args.kind == "beta":
        if not args.minpoly:
            raise UsageError("generate beta needs --minpoly")
        field = beta_field(args.minpoly)
        parry = beta_orbit(field)
        phi = beta_substitution(parry)
        prov = {"generator": "beta", "minpoly": format_polynomial(field.min_poly),
                "digits": ",".join(map(str, parry.digits))}
    elif args.kind == "ar":
        if args.d is None or not args.word:
            raise UsageError("generate ar needs --d and --word")
        phi = arnoux_rauzy(args.d, _word(args.word))
        prov = {"generator": "arnoux-rauzy", "d": args.d, "word": args.word}
    elif args.kind == "brun":
        if not args.word:
            raise UsageError("generate brun needs --word")
        phi = brun(_word(args.word))
        prov = {"generator": "brun", "word": args.word}
    else:
        if not args.pairs:
            raise UsageError("generate jp needs --pairs")
        phi = jacobi_perron(_pairs(args.pairs))
        prov = {"generator": "jacobi-perron", "pairs": args.pairs}
    prov["tool"] = f"{TOOL} {__version__}"
    return phi, prov


def _word(text):
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad word {text!r}") from None


def _pairs(text):
    # "0,1 1,2" or "0,1;1,2"
    chunks = text.replace(";", " ").split()
    out = []
    for c in chunks:
        try:
            a, b = (int(v) for v in c.split(","))
        except ValueError:
            raise UsageError(f"bad pair {c!r}; expected a,b") from None
        out.append((a, b))
    return out


def cmd_generate(args) -> int:
    phi, prov = _generate(args)
    text = format_substitution(phi, prov)
    _write(text, args.out)
    if args.report:
        stub = {
            "tool": {"name": TOOL, "version": __version__},
            "input": {"substitution": format_substitution(phi).splitlines(),
                      "provenance": {k: str(v) for k, v in sorted(prov.items())}},
        }
        _write(dumps(stub), args.report)
    return 0


def cmd_tile(args) -> int:
    phi = parse_substitution(_read(args.input))
    ts = TileSet.from_substitution(phi)
    k, a, b = admissible_seed(phi)
    tiling = FixedTiling(ts, k, a, b)
    radius = field_literal(args.radius, ts.field)
    patch = tiling.window(radius)
    _write(render_patch(patch, "text") + "\n", args.out)
    if args.svg:
        _write(render_patch(patch, "svg"), args.svg)
    return 0


def cmd_expand(args) -> int:
    field = beta_field(args.minpoly)
    x = field_literal(args.x, field)
    g = greedy_expansion(x, field, args.last)
    digits = g.digits
    sep = "," if max(digits, default=0) > 9 else ""
    lines = [sep.join(map(str, digits)),
             f"beta: {format_polynomial(field.min_poly)} ~ {field.gen.decimal(20)}",
             f"x: {x.decimal(20)}",
             f"leading index: {g.start}"]
    # greedy_expansion already asserted these; print them as the certificate
    for m in range(g.start, g.last + 1):
        gap = x - g.partial_sum(m)
        lines.append(f"M={m}: 0 <= x - S_M = {gap.decimal(20)} < beta^{-m} OK")
    _write("\n".join(lines) + "\n", args.out)
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Pure discrete spectrum checks for substitution tilings.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="certify a substitution file and write a JSON report")
    p.add_argument("--input", required=True, help="substitution file, or - for stdin")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--nmax", type=_positive_int, default=24, help="inflation depth for coincidence probes")
    p.add_argument("--samples", type=_positive_int, default=64, help="probe grid size")
    p.add_argument("--cap", type=_positive_int, default=10_000, help="overlap class cap")
    p.add_argument("--window", type=_positive_int, default=8, help="return vector window, in longest tiles")
    p.add_argument("--tolerance", type=_positive_fraction, default=Fraction(1, 10**9),
                   help="Pisot borderline tolerance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write a substitution from one of the example families")
    p.add_argument("kind", choices=("beta", "ar", "brun", "jp"))
    p.add_argument("--minpoly", help="minimal polynomial of beta, e.g. 'x^3-x-1'")
    p.add_argument("--d", type=_positive_int, help="alphabet size for ar")
    p.add_argument("--word", help="word such as 123 or 1,2,3")
    p.add_argument("--pairs", help="Jacobi-Perron pairs a,b separated by spaces or ;")
    p.add_argument("--out", help="substitution file (default stdout)")
    p.add_argument("--report", help="also write a JSON report stub")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("tile", help="render a window of the fixed tiling")
    p.add_argument("--input", required=True)
    p.add_argument("--radius", default="5", help="window radius, a rational or polynomial in x = lambda")
    p.add_argument("--out")
    p.add_argument("--svg", help="also write an SVG rendering here")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("expand", help="greedy beta-expansion digits")
    p.add_argument("--minpoly", required=True)
    p.add_argument("--x", required=True, help="x >= 0, a rational or polynomial in x = beta")
    p.add_argument("--last", type=int, default=0, help="index M of the last digit")
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SubstitutionError, UsageError, ValueError, ArithmeticError, OSError) as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
