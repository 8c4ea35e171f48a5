"""Command-line interface.

Subcommands: hamiltonian, spectrum, metric basis, metric verify,
positivity, continuum.  Exact couplings are written as "p/q" strings and
survive JSON round trips; floats are printed with 17 significant digits.
Exit codes: 0 success, 2 usage error, and for `metric verify` the number
of failed checks.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from .analysis import (
    positivity,
    positivity_closed_form,
    sample_positivity_region,
)
from .closedform import (
    assemble_theta,
    basis_family,
    entry_polynomial,
    incidence_family,
    intertwining_defect,
    occupancy_matrix,
    reflection_symmetry_holds,
)
from .continuum import (
    fit_loglog_slope,
    matching_residual,
    opaque_wall_check,
)
from .errors import ConstructionError, DegenerateSpectrumError, DimensionError, DomainError
from .exact import Matrix, rank
from .hamiltonian import HamiltonianSpec, build_hamiltonian, reality_scan
from .oracle import solve_metric_space, upper_triangle_vector


class UsageError(ValueError):
    """Invalid command-line arguments."""


def _fmt(value: float) -> str:
    return f"{float(value):.17g}"


def parse_scalar(text: str) -> Fraction | float:
    """Parse "p/q" or integer strings as exact Fractions, decimals as floats."""
    text = text.strip()
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid rational {text!r}") from exc
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError as exc:
        raise UsageError(f"invalid number {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"invalid number {text!r}")
    return value


def parse_exact_scalar(text: str) -> Fraction:
    value = parse_scalar(text)
    if isinstance(value, float):
        raise UsageError("this subcommand requires an exact coupling, e.g. 1/2 or 0")
    return Fraction(value)


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must be start:stop:count")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise UsageError(f"invalid grid {text!r}") from exc
    if count < 1:
        raise UsageError("grid count must be >= 1")
    if count == 1:
        if start != stop:
            raise UsageError("a single-point grid needs start == stop")
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"invalid list {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"invalid list {text!r}") from exc


def _scalar_json(value: Fraction | float) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    return value


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_hamiltonian(args: argparse.Namespace) -> int:
    lam = parse_scalar(args.lam)
    spec = HamiltonianSpec(args.n, lam)
    matrix = build_hamiltonian(spec)
    exact = spec.is_exact
    if args.format == "json":
        if exact:
            grid = [[str(Fraction(e)) for e in row] for row in matrix.entries]
        else:
            grid = [[float(e) for e in row] for row in matrix.entries]
        payload = {"n": spec.n, "lambda": _scalar_json(lam if not exact else Fraction(lam)), "matrix": grid}
        _emit(json.dumps(payload) + "\n", args.output)
    elif args.format == "csv":
        lines = []
        for row in matrix.entries:
            cells = [str(Fraction(e)) if exact else _fmt(e) for e in row]
            lines.append(",".join(cells))
        _emit("\n".join(lines) + "\n", args.output)
    else:
        lines = []
        for row in matrix.entries:
            cells = [str(Fraction(e)) if exact else _fmt(e) for e in row]
            lines.append("  ".join(f"{c:>10}" for c in cells))
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    grid = parse_grid(args.grid)
    reports = reality_scan(args.n, grid, tol=args.reality_tol)
    if args.format == "json":
        payload = [
            {
                "lambda": r.lam,
                "eigenvalues": [[v.real, v.imag] for v in r.eigenvalues],
                "max_imag": r.max_imag,
                "all_real": r.all_real,
            }
            for r in reports
        ]
        _emit(json.dumps(payload) + "\n", args.output)
        return 0
    header = ["lambda"] + [f"re_e_{i}" for i in range(1, args.n + 1)] + ["max_imag", "all_real"]
    lines = [",".join(header)]
    for r in reports:
        cells = [_fmt(r.lam)]
        cells += [_fmt(v.real) for v in r.eigenvalues]
        cells += [_fmt(r.max_imag), "true" if r.all_real else "false"]
        lines.append(",".join(cells))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _basis_entry_payload(n: int, element_j: int, i: int, k: int, degree: int, lam) -> dict:
    if i + k == n + 1:
        poly = entry_polynomial(degree)
    elif i + k < n + 1:
        poly = entry_polynomial(degree, "minus")
    else:
        poly = entry_polynomial(degree, "plus")
    payload = {"i": i, "k": k, "degree": degree, "coefficients": list(poly.coeffs)}
    if lam is not None:
        value = poly(lam)
        payload["value"] = str(value) if isinstance(value, (Fraction, int)) else float(value)
    return payload


def cmd_metric_basis(args: argparse.Namespace) -> int:
    lam = parse_scalar(args.lam) if args.lam is not None else None
    if isinstance(lam, int):
        lam = Fraction(lam)
    family = incidence_family(args.n)
    if args.j is not None:
        if not 1 <= args.j <= args.n:
            raise UsageError(f"--j must lie in 1..{args.n}")
        family = (family[args.j - 1],)
    elements = []
    for incidence in family:
        entries = [
            _basis_entry_payload(args.n, incidence.j, i, k, degree, lam)
            for (i, k), degree in sorted(incidence.degrees.items())
        ]
        elements.append({"j": incidence.j, "entries": entries})
    payload = {
        "n": args.n,
        "lambda": _scalar_json(lam) if lam is not None else None,
        "elements": elements,
    }
    _emit(json.dumps(payload) + "\n", args.output)
    return 0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: Any = None


def run_verification(n: int, lam: Fraction) -> list[CheckResult]:
    """The cross-validation battery behind `metric verify`."""
    checks: list[CheckResult] = []
    family = basis_family(n)

    identity_ok = all(
        all(p.is_zero for row in intertwining_defect(el).entries for p in row)
        for el in family
    )
    checks.append(CheckResult("closed_form_intertwining", identity_ok))

    space = solve_metric_space(HamiltonianSpec(n, lam))
    checks.append(CheckResult("oracle_dimension", space.dimension == n, space.dimension))

    stacked = [upper_triangle_vector(b) for b in space.basis]
    stacked += [upper_triangle_vector(el.evaluate(Fraction(lam))) for el in family]
    combined_rank = rank(Matrix.from_rows(stacked))
    checks.append(CheckResult("span_equivalence", combined_rank == n, combined_rank))

    reduction_ok = all(
        el.evaluate(0) == occupancy_matrix(n, el.j) for el in family
    )
    checks.append(CheckResult("lambda0_reduction", reduction_ok))

    symmetry_ok = all(reflection_symmetry_holds(el) for el in family)
    checks.append(CheckResult("reflection_symmetry", symmetry_ok))
    return checks


def cmd_metric_verify(args: argparse.Namespace) -> int:
    lam = parse_exact_scalar(args.lam)
    checks = run_verification(args.n, lam)
    failed = sum(0 if c.passed else 1 for c in checks)
    payload = {
        "n": args.n,
        "lambda": str(lam),
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ],
        "failed": failed,
    }
    _emit(json.dumps(payload) + "\n", args.output)
    return failed


def cmd_positivity(args: argparse.Namespace) -> int:
    lam = parse_scalar(args.lam)
    lam_float = float(lam)
    if args.alpha is not None and args.sample is not None:
        raise UsageError("choose either --alpha or --sample")
    if args.alpha is not None:
        alpha = parse_float_list(args.alpha)
        if len(alpha) != args.n:
            raise UsageError(f"--alpha needs exactly {args.n} values")
        theta = assemble_theta(args.n, lam_float, alpha)
        report = positivity(theta)
        closed_form: Optional[bool]
        try:
            closed_form = positivity_closed_form(args.n, lam_float, alpha)
        except DomainError:
            closed_form = None
        payload = {
            "n": args.n,
            "lambda": lam_float,
            "alpha": alpha,
            "positive": report.positive,
            "min_eigenvalue": report.min_eigenvalue,
            "eigenvalues": list(report.eigenvalues),
            "near_boundary": report.near_boundary,
            "closed_form_positive": closed_form,
        }
        _emit(json.dumps(payload) + "\n", args.output)
        return 0
    if args.sample is None:
        raise UsageError("need --alpha or --sample")
    if args.sample < 1:
        raise UsageError("--sample must be >= 1")
    result = sample_positivity_region(args.n, lam_float, args.seed, args.sample)
    header = (
        ["index"]
        + [f"alpha_{i}" for i in range(1, args.n + 1)]
        + [
            "min_eigenvalue",
            "positive",
            "closed_form_positive",
            "weights_positive",
            "near_boundary",
        ]
    )
    def tristate(value: Optional[bool]) -> str:
        if value is None:
            return ""
        return "true" if value else "false"

    lines = [",".join(header)]
    for idx, record in enumerate(result.records):
        cells = [str(idx)]
        cells += [_fmt(a) for a in record.alpha]
        cells += [
            _fmt(record.min_eigenvalue),
            "true" if record.positive else "false",
            tristate(record.closed_form_positive),
            tristate(record.weights_positive),
            "true" if record.near_boundary else "false",
        ]
        lines.append(",".join(cells))
    lines.append(f"# fraction_positive = {_fmt(result.fraction_positive)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_continuum(args: argparse.Namespace) -> int:
    lam = parse_scalar(args.lam)
    lam_float = float(lam)
    if lam_float == 0.0:
        raise UsageError("the opaque-wall sweep needs a nonzero coupling")
    if not -1.0 < lam_float < 1.0:
        raise UsageError("coupling must lie in (-1, 1)")
    sizes = parse_int_list(args.sizes)
    if len(sizes) < 2:
        raise UsageError("need at least two sizes")
    if sizes != sorted(set(sizes)):
        raise UsageError("sizes must be strictly increasing")
    for n in sizes:
        if n < 8 or n % 2 != 0:
            raise UsageError("sizes must be even and >= 8")
    residuals = [
        matching_residual(HamiltonianSpec(n, lam_float), args.state) for n in sizes
    ]
    wall = opaque_wall_check(lam_float, sizes)
    lines = ["size,h,residual,central_amplitude"]
    for n, residual, amplitude in zip(sizes, residuals, wall.amplitudes):
        h = 2.0 / (n + 1)
        lines.append(f"{n},{_fmt(h)},{_fmt(residual)},{_fmt(amplitude)}")
    slope = fit_loglog_slope(sizes, residuals)
    lines.append(f"# slope = {_fmt(slope)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metric-forge",
        description="Construct and verify the complete metric family of the "
        "one-coupling tridiagonal chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_h = sub.add_parser("hamiltonian", help="emit one family member")
    p_h.add_argument("--n", type=int, required=True)
    p_h.add_argument("--lambda", dest="lam", default="0")
    p_h.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p_h.add_argument("--output")
    p_h.set_defaults(func=cmd_hamiltonian)

    p_s = sub.add_parser("spectrum", help="eigenvalue sweep over a coupling grid")
    p_s.add_argument("--n", type=int, required=True)
    p_s.add_argument("--grid", required=True, help="start:stop:count, inclusive")
    p_s.add_argument("--reality-tol", type=float, default=1e-9)
    p_s.add_argument("--format", choices=("csv", "json"), default="csv")
    p_s.add_argument("--output")
    p_s.set_defaults(func=cmd_spectrum)

    p_m = sub.add_parser("metric", help="metric family construction and checks")
    msub = p_m.add_subparsers(dest="metric_command", required=True)

    p_mb = msub.add_parser("basis", help="emit the incidence/basis family")
    p_mb.add_argument("--n", type=int, required=True)
    p_mb.add_argument("--j", type=int, default=None)
    p_mb.add_argument("--lambda", dest="lam", default=None, help="numeric mode")
    p_mb.add_argument("--output")
    p_mb.set_defaults(func=cmd_metric_basis)

    p_mv = msub.add_parser("verify", help="cross-validate the closed form")
    p_mv.add_argument("--n", type=int, required=True)
    p_mv.add_argument("--lambda", dest="lam", required=True, help="exact p/q")
    p_mv.add_argument("--output")
    p_mv.set_defaults(func=cmd_metric_verify)

    p_p = sub.add_parser("positivity", help="positivity verdicts")
    p_p.add_argument("--n", type=int, required=True)
    p_p.add_argument("--lambda", dest="lam", required=True)
    p_p.add_argument("--alpha", default=None, help="comma-separated coefficients")
    p_p.add_argument("--sample", type=int, default=None)
    p_p.add_argument("--seed", type=int, default=0)
    p_p.add_argument("--output")
    p_p.set_defaults(func=cmd_positivity)

    p_c = sub.add_parser("continuum", help="matching and opaque-wall sweep")
    p_c.add_argument("--lambda", dest="lam", required=True)
    p_c.add_argument("--sizes", required=True, help="comma-separated even sizes")
    p_c.add_argument("--state", type=int, default=1)
    p_c.add_argument("--output")
    p_c.set_defaults(func=cmd_continuum)

    return parser


# options whose values may legitimately start with a minus sign
_VALUE_OPTIONS = ("--lambda", "--grid", "--alpha", "--sizes")


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            token in _VALUE_OPTIONS
            and nxt is not None
            and nxt.startswith("-")
            and not nxt.startswith("--")
        ):
            out.append(f"{token}={nxt}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(argv))
    try:
        return args.func(args)
    except (
        UsageError,
        DimensionError,
        DomainError,
        DegenerateSpectrumError,
        ConstructionError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
