"""Command-line front end.

Example::

    riemann-degree --f "z*conj(z)^4+z*conj(z)^2+3" --g "z^3*conj(z)+z"
    riemann-degree --f "z^3+conj(z)^3+z" --g 1 --method numeric --radius 1 --output json

Exit status: 0 on success, 1 on usage or parse errors, 2 when a hypothesis
of the degree formula fails or cannot be established.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from .degree import DegreeReport, MapSpec, degree_of
from .errors import (
    CommonZeroSuspected,
    DegreeError,
    LimitDoesNotExist,
    ParseError,
    TDominanceFailure,
    WindingError,
)
from .parser import parse_bipoly
from .verify import degree_via_area_integral
from .winding import WindingConfig

log = logging.getLogger("riemann_degree")

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2

_HYPOTHESES = [
    (CommonZeroSuspected, "f and g must have no common zeros"),
    (LimitDoesNotExist, "f/g must have a limit (finite or infinite) as |z| -> infinity"),
    (TDominanceFailure, "the top homogeneous part T must have no zeros on the unit circle "
                        "(supply --radius to use the winding-number route instead)"),
    (WindingError, "f must not vanish on the circle |z| = M"),
]


@dataclass
class CliConfig:
    f_expr: str
    g_expr: str
    method: str = "auto"
    radius: float | None = None
    check_common_zeros: bool = True
    oracle: bool = False
    oracle_grid: int = 400
    output: str = "text"
    exact: bool = False
    samples: int = 256
    max_depth: int = 30
    min_modulus: float = 1e-12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riemann-degree",
                description="Topological degree of the sphere map R = f/g, "
                            "for f and g polynomials in z and conj(z).")
    p.add_argument("--f", dest="f_expr", required=True, help="numerator, e.g. 'z^2*conj(z)+1'")
    p.add_argument("--g", dest="g_expr", required=True, help="denominator")
    p.add_argument("--method", choices=("auto", "theorem2", "numeric"), default="auto")
    p.add_argument("--radius", type=float, default=None,
                   help="circle radius M for the winding-number route")
    p.add_argument("--check-common-zeros", action=argparse.BooleanOptionalAction, default=True,
                   help="certify that f and g share no zero (default: on)")
    p.add_argument("--oracle", action="store_true",
                   help="also compute the area-integral degree as a cross-check")
    p.add_argument("--oracle-grid", type=int, default=400)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--exact", action="store_true",
                   help="keep coefficients as exact Gaussian rationals while parsing")
    p.add_argument("--samples", type=int, default=256, help="initial samples per loop")
    p.add_argument("--max-depth", type=int, default=30, help="bisection limit per arc")
    p.add_argument("--min-modulus", type=float, default=1e-12)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _pair(c) -> list[float] | None:
    if c is None:
        return None
    c = complex(c)
    return [c.real, c.imag]


def report_to_dict(report: DegreeReport) -> dict:
    diag = report.diagnostics
    return {
        "degree": report.degree,
        "method": report.method.value,
        "d": report.d,
        "M": report.M,
        "roots_inside": report.roots_inside,
        "tilde_T_coefficients": (
            None if report.tilde_T is None else [_pair(c) for c in report.tilde_T.coeffs]
        ),
        "diagnostics": {
            "min_T_on_circle": diag.min_T_on_circle,
            "refinement_depth": diag.winding_refinement_depth,
            "common_zero_certified": diag.common_zero_certified,
            "oracle_value": diag.oracle_value,
            "mobius_constant": _pair(diag.mobius_constant),
            "notes": list(diag.notes),
        },
    }


def format_text(report: DegreeReport) -> str:
    diag = report.diagnostics
    lines = [f"degree: {report.degree}", f"method: {report.method.value}"]
    if report.d is not None:
        lines.append(f"d: {report.d}")
    if report.M is not None:
        lines.append(f"M: {report.M:g}")
    if report.roots_inside is not None:
        lines.append(f"roots of T~ inside unit disk: {report.roots_inside}")
    if diag.min_T_on_circle is not None:
        lines.append(f"min |T| on unit circle >= {diag.min_T_on_circle:.6g}")
    if diag.mobius_constant is not None:
        lines.append(f"limit at infinity: {diag.mobius_constant}")
    cz = {True: "certified", False: "FAILED", None: "not certified"}[diag.common_zero_certified]
    lines.append(f"no common zeros: {cz}")
    if diag.oracle_value is not None:
        lines.append(f"area-integral oracle: {diag.oracle_value:.6f}")
    lines.extend(f"note: {n}" for n in diag.notes)
    return "\n".join(lines)


def _hypothesis_text(exc: Exception) -> str:
    for cls, text in _HYPOTHESES:
        if isinstance(exc, cls):
            return text
    return "the degree formula's hypotheses"


def run(config: CliConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        f = parse_bipoly(config.f_expr, exact=config.exact)
        g = parse_bipoly(config.g_expr, exact=config.exact)
        wcfg = WindingConfig(initial_samples=config.samples, min_modulus=config.min_modulus,
                             max_depth=config.max_depth)
        spec = MapSpec.polynomial(f, g, radius=config.radius)
    except (ParseError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    try:
        report = degree_of(spec, method=config.method,
                           check_common_zeros=config.check_common_zeros, config=wcfg)
        if config.check_common_zeros and report.diagnostics.common_zero_certified is None:
            report.diagnostics.notes.append("degree computed, no-common-zero hypothesis uncertified")
        if config.oracle:
            report.diagnostics.oracle_value = degree_via_area_integral(f, g, config.oracle_grid)
    except DegreeError as exc:
        hyp = _hypothesis_text(exc)
        print(f"hypothesis failed ({type(exc).__name__}): {hyp}\n  {exc}", file=err)
        if config.output == "json":
            json.dump({"error": type(exc).__name__, "hypothesis": hyp, "message": str(exc)},
                      out, indent=2)
            out.write("\n")
        return EXIT_HYPOTHESIS

    if config.output == "json":
        json.dump(report_to_dict(report), out, indent=2)
        out.write("\n")
    else:
        out.write(format_text(report) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = CliConfig(
        f_expr=args.f_expr, g_expr=args.g_expr, method=args.method, radius=args.radius,
        check_common_zeros=args.check_common_zeros, oracle=args.oracle,
        oracle_grid=args.oracle_grid, output=args.output, exact=args.exact,
        samples=args.samples, max_depth=args.max_depth, min_modulus=args.min_modulus,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
