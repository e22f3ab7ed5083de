"""Command-line surface for the verification engine.

Subcommands: ``verify`` (replay a congruence certificate), ``formcheck``
(numeric battery against a coefficient file), ``decompose`` (write a
Gamma0(13) matrix as a word in the generators), ``density`` (realize a
target as a power-lattice value), ``asym`` (pole/vanishing verdict of the
averaged stretch sum), ``eta`` (print an eta-product coefficient file).

Exit codes: 0 all requested checks passed, 1 a verification failed,
2 input or usage error.  Reports go to stdout, diagnostics to stderr.
The environment variable HECKE_PREC overrides --prec for formcheck.
"""

from __future__ import annotations

import argparse
import ast
import os
import sys
from fractions import Fraction
from typing import List, Optional

from mpmath import mp

from .certificate import CertificateError, certificate_from_json, verify_certificate
from .gamma0 import DecompositionError, decompose
from .level13 import blowup_check, load_shipped_certificate
from .numeric import (ConfigurationError, DensityError, EvalConfig, FormData,
                      PrecisionError, density_search, run_formcheck)
from .qseries import eta_product, format_coefficient_file, parse_coefficient_file

PASS, FAIL, USAGE = 0, 1, 2


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return FAIL


def _usage(message: str) -> int:
    print(message, file=sys.stderr)
    return USAGE


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        if args.path is None:
            cert = load_shipped_certificate(args.context)
        else:
            with open(args.path, encoding="utf-8") as handle:
                cert = certificate_from_json(handle.read())
        report = verify_certificate(cert)
    except (OSError, CertificateError) as exc:
        return _usage(str(exc))
    text = report.render() + "\n"
    print(text, end="")
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            return _usage(str(exc))
    if report.ok:
        return PASS
    for line in report.diagnostics():
        print(line, file=sys.stderr)
    return FAIL


def cmd_formcheck(args: argparse.Namespace) -> int:
    try:
        with open(args.path, encoding="utf-8") as handle:
            parsed = parse_coefficient_file(handle.read())
    except (OSError, ValueError) as exc:
        return _usage(str(exc))
    for flag, header_value in (("k", parsed.weight), ("N", parsed.level),
                               ("eps", parsed.sign)):
        given = getattr(args, flag)
        if given is not None and given != header_value:
            return _usage(f"--{flag}={given} contradicts the file header "
                          f"({flag}={header_value})")
    prec = args.prec
    env = os.environ.get("HECKE_PREC")
    if env is not None:
        try:
            prec = int(env)
        except ValueError:
            return _usage(f"HECKE_PREC must be an integer, got {env!r}")
    try:
        form = FormData(parsed.series, parsed.weight, parsed.level, parsed.sign)
        floor = Fraction(3, 20) if form.level == 1 else Fraction(1, 52)
        cfg = EvalConfig(precision=prec, points=None, y_min=floor)
        report = run_formcheck(form, cfg,
                               residual_tol=Fraction(args.tol).limit_denominator(
                                   10 ** 30))
    except (ValueError, ConfigurationError, PrecisionError) as exc:
        return _usage(str(exc))
    print("\n".join(report.lines()))
    return PASS if report.ok else FAIL


def cmd_decompose(args: argparse.Namespace) -> int:
    try:
        rows = ast.literal_eval(args.matrix)
        entries = [int(x) for row in rows for x in row]
        if len(entries) != 4:
            raise ValueError("expected a 2x2 matrix")
    except (ValueError, TypeError, SyntaxError) as exc:
        return _usage(f"bad matrix {args.matrix!r}: {exc}")
    m = [entries[:2], entries[2:]]
    try:
        word = decompose(m)
    except ValueError:
        return _fail(f"{args.matrix} is not in Gamma0(13)")
    except DecompositionError as exc:
        return _fail(str(exc))
    print(str(word) or "1")
    return PASS


def cmd_density(args: argparse.Namespace) -> int:
    try:
        result = density_search(args.X, args.tol, args.bound)
    except ValueError as exc:
        return _usage(str(exc))
    except DensityError as exc:
        return _fail(str(exc))
    err = "0" if result.error == 0 else mp.nstr(result.error, 3)
    print(f"(m,n)=({result.m},{result.n}) err={err}")
    return PASS


def cmd_asym(args: argparse.Namespace) -> int:
    try:
        result = blowup_check(args.k)
    except ValueError as exc:
        return _usage(str(exc))
    if result.identically_zero:
        print("IDENTICALLY ZERO")
    elif result.leading_coeff_nonzero:
        print(f"POLE ORDER {result.pole_order} - NONZERO")
    else:
        print(f"POLE ORDER {result.pole_order}")
    return PASS


def cmd_eta(args: argparse.Namespace) -> int:
    try:
        pairs = []
        for chunk in args.factors.split(","):
            mult, _, power = chunk.partition(":")
            pairs.append((int(mult), int(power)))
        weight = Fraction(sum(r for _, r in pairs), 2)
        if weight.denominator != 1 or weight <= 0 or weight % 2:
            raise ValueError(f"the exponents give weight {weight}, "
                             f"which is not a positive even integer")
        series = eta_product(pairs, args.length)
        level = max((m for m, r in pairs if r != 0), default=1)
    except ValueError as exc:
        return _usage(f"bad eta product request: {exc}")
    try:
        print(format_coefficient_file(series, int(weight), level, 1), end="")
    except ValueError as exc:
        return _fail(str(exc))
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamma13",
        description="Exact and numeric verification for weight-k congruences "
                    "on Gamma0(13).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="replay a congruence certificate")
    p.add_argument("path", nargs="?", default=None,
                   help="certificate JSON (default: the bundled one)")
    p.add_argument("--context", choices=("f", "g"), default="f",
                   help="which bundled certificate to use (default: f)")
    p.add_argument("--report", default=None, metavar="PATH",
                   help="also write the report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("formcheck",
                       help="numeric battery against a coefficient file")
    p.add_argument("path", help="coefficient file ('# k=.. N=.. eps=..' header)")
    p.add_argument("--k", type=int, default=None,
                   help="expected weight (default: from the header)")
    p.add_argument("--N", type=int, default=None,
                   help="expected level (default: from the header)")
    p.add_argument("--eps", type=int, choices=(1, -1), default=None,
                   help="expected inversion sign (default: from the header)")
    p.add_argument("--prec", type=int, default=256,
                   help="working precision in bits (default: 256; "
                        "HECKE_PREC overrides)")
    p.add_argument("--tol", type=float, default=1e-15,
                   help="residual tolerance (default: 1e-15)")
    p.set_defaults(func=cmd_formcheck)

    p = sub.add_parser("decompose",
                       help="write a Gamma0(13) matrix as a generator word")
    p.add_argument("matrix", help="integer matrix, e.g. '[[1,1],[0,1]]'")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("density",
                       help="realize a target as a power-lattice value")
    p.add_argument("X", type=float, help="positive target")
    p.add_argument("tol", type=float, help="admissible absolute error")
    p.add_argument("--bound", type=int, default=10 ** 6,
                   help="cap on |m| and |n| (default: 1000000)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("asym",
                       help="pole/vanishing verdict of the averaged stretch sum")
    p.add_argument("k", type=int, help="nonzero even weight")
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("eta", help="print an eta-product coefficient file")
    p.add_argument("factors", help="comma-separated multiplier:exponent pairs, "
                                "e.g. '1:24'")
    p.add_argument("length", type=int, help="truncation length")
    p.set_defaults(func=cmd_eta)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else PASS
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
