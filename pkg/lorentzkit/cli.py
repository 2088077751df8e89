#!/usr/bin/env python

"""
lorentzkit/cli.py

Command-line entry point. Every subcommand builds a Report; stdout carries
the report (JSON by default, a table with --pretty) and the exit code is
0 when every check passes, 1 when a check fails and 2 on an error.
"""

import argparse
import math
import sys
from fractions import Fraction

from . import config
from .acceptance import run_suite
from .algebra import Poly, VarSpace, apply_diffop
from .delta import AcyclicityParams, ClassParams, DeltaExpansion, acyclicity_params, dual_norm, growth_sequence
from .errors import LorentzKitError, ParameterError
from .harmonic import harmonic_decompose, so3_project
from .logger import logger
from .lorentz import GeneratorSpec, fourier_intertwine_check, laplace3, rotation, verify_commutators
from .metrics import inc_command_error, record_report, start_metrics_server
from .parser import parse_expression
from .report import Report
from .spinor import (
    RepLabel,
    SpinorPoly,
    cg_covariant_degrees,
    cg_decompose,
    check_covariant_identities,
    covariance_check,
    covariant_poly,
    diagonal_count,
    extract_invariant,
    kernel_test,
    make_covariant,
    reflection_parity,
)
from .split import (
    boost_matrix,
    closed_form_boost_matrix,
    coefficient_bound_check,
    cokernel_2d,
    completion_report,
    constant_in_image_2d,
    inverse_bound_check,
)
from .taylor import jet_decompose

MOMENTUM = VarSpace.MOMENTUM


def _expect(value, kind, flag: str):
    if not isinstance(value, kind):
        raise ParameterError(f"[CLI] ERROR: {flag} must be a {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_poly(text: str, flag: str, varspace: VarSpace | None = None) -> Poly:
    return _expect(parse_expression(text, varspace), Poly, flag)


def _parse_delta(text: str, flag: str) -> DeltaExpansion:
    return _expect(parse_expression(text), DeltaExpansion, flag)


def _restrict_dim(P: Poly, dim: int) -> Poly:
    if not 1 <= dim <= 4:
        raise ParameterError(f"[CLI] ERROR: --dim must lie in 1..4, got {dim}")
    if any(any(k[dim:]) for k in P.terms):
        raise ParameterError(f"[CLI] ERROR: polynomial uses variables beyond index {dim - 1}")
    return Poly(dim, P.varspace, {k[:dim]: c for k, c in P.terms.items()})


def _from_split_report(command: str, inputs: dict, split_report) -> Report:
    report = Report(command, inputs)
    report.extend(split_report.checks)
    report.results = split_report.results()
    return report


# === COMMANDS ===

def cmd_solve_boost(args) -> Report:
    u = _parse_poly(args.u, "--u", MOMENTUM)
    return _from_split_report("solve-boost", {"n": args.n, "u": args.u}, coefficient_bound_check(u, args.n))


def cmd_split(args) -> Report:
    return completion_report(_parse_delta(args.plus, "--plus"), _parse_delta(args.minus, "--minus"))


def cmd_harmonic(args) -> Report:
    Q = _parse_poly(args.poly, "--poly", MOMENTUM)
    decomposition = harmonic_decompose(Q)
    report = Report("harmonic", {"poly": args.poly})
    report.results = {"parts": {str(k): str(h) for k, h in decomposition.parts}}
    report.add("reassembly equals input", Q, decomposition.reassemble())
    L = laplace3(MOMENTUM)
    for k, h in decomposition.parts:
        report.add(f"h_{k} is harmonic", Poly.zero(4, MOMENTUM), apply_diffop(L, h))
    return report


def cmd_project_so3(args) -> Report:
    P = _parse_poly(args.poly, "--poly", MOMENTUM)
    projection = so3_project(P)
    report = Report("project-so3", {"poly": args.poly})
    report.results = {"projection": str(projection)}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        report.add(f"M{i}{j} annihilates the projection", Poly.zero(4, MOMENTUM), apply_diffop(rotation(i, j, MOMENTUM), projection))
    report.add("projection is idempotent", projection, so3_project(projection))
    return report


def cmd_matrix(args) -> Report:
    A = boost_matrix(args.n)
    report = Report("matrix", {"n": args.n})
    report.results = {"matrix": A.to_strings()}
    report.add("matrix matches closed form", closed_form_boost_matrix(args.n), A)
    return report


def cmd_bounds(args) -> Report:
    report = Report("bounds", {"n_max": args.n_max})
    maxima = {}
    for n in range(1, args.n_max + 1):
        checked = inverse_bound_check(n)
        report.extend(checked.checks)
        maxima[str(n)] = str(checked.max_abs_entry)
    report.results = {"max_abs_entry": maxima}
    return report


def cmd_cokernel2d(args) -> Report:
    report = Report("cokernel2d", {"n_max": args.n_max})
    found = {}
    for n in range(args.n_max + 1):
        cokernel = cokernel_2d(n)
        found[str(n)] = [str(P) for P in cokernel]
        report.add(f"n={n}: cokernel dimension", 1 - n % 2, len(cokernel))
    report.results = {"cokernel": found}
    report.add("fourier(delta) is not in the image of N1", False, constant_in_image_2d())
    return report


def cmd_covariant(args) -> Report:
    cov = covariant_poly(args.s2, VarSpace.POSITION)
    report = Report("covariant", {"s2": args.s2})
    report.results = {"covariant": str(cov), "reflection_parity": reflection_parity(args.s2)}
    report.add("slot count (s2+1)^2", (args.s2 + 1) ** 2, cov.slot_count())
    report.add("coefficients homogeneous of degree s2", True, all(
        c.is_homogeneous() and c.degree() == args.s2 for c in cov.terms.values()
    ))
    return report


def cmd_kernel_check(args) -> Report:
    report = Report("kernel-check", {"s2": args.s2, "l_max": args.l_max})
    for l in range(args.l_max + 1):
        report.add(f"l={l}: (wb d~ w)^{args.s2} (p^2)^{l} vanishes", l <= args.s2 - 1, kernel_test(args.s2, l))
    return report


def cmd_cg(args) -> Report:
    rep = RepLabel(args.r2, args.s2)
    labels = cg_decompose(rep)
    degrees, parity = cg_covariant_degrees(rep)
    low = min(args.r2, args.s2)
    report = Report("cg", {"r2": args.r2, "s2": args.s2})
    report.results = {
        "representations": [str(label) for label in labels],
        "covariant_degrees": degrees,
        "parity": parity,
    }
    report.add("number of representations", (low + 1) ** 2, len(labels))
    report.add("diagonal count 2 min(r,s) + 1", low + 1, diagonal_count(labels))
    return report


def cmd_extract(args) -> Report:
    w = _expect(parse_expression(args.w), SpinorPoly, "--w")
    v, ambiguity = extract_invariant(w, args.s2)
    report = Report("extract", {"s2": args.s2, "w": args.w})
    report.results = {"v": str(v), "ambiguity_orders": ambiguity}
    report.add("make_covariant(v) reproduces w", w, make_covariant(v, args.s2))
    return report


def cmd_jet_decompose(args) -> Report:
    f = _restrict_dim(_parse_poly(args.poly, "--poly"), args.dim)
    result = jet_decompose(f, args.m)
    report = Report(args.command, {"m": args.m, "poly": args.poly, "dim": args.dim})
    report.results = {
        "parts": [str(part) for part in result.parts],
        "steps": [f"x{s.variable}: j={s.j}, {s.g_terms} term(s)" for s in result.steps],
    }
    report.add("sum x_i^(m+1) f_i = f", f, result.reconstruct())
    return report


def cmd_growth(args) -> Report:
    v = _parse_delta(args.coeffs, "--coeffs")
    m = growth_sequence(v, Fraction(args.beta), args.n_max)
    report = Report("growth", {"beta": args.beta, "coeffs": args.coeffs, "n_max": args.n_max})
    report.results = {"m_n": [f"{x:.6f}" for x in m]}
    report.add("sequence is finite", True, all(math.isfinite(x) for x in m))
    return report


def cmd_verify_all(args) -> Report:
    return run_suite(seed=args.seed, quick=args.quick)


def cmd_commutators(args) -> Report:
    return verify_commutators()


def cmd_intertwine(args) -> Report:
    v = _parse_delta(args.v, "--v")
    if args.boost is not None:
        spec = GeneratorSpec("boost", (args.boost,))
    elif args.rotation is not None:
        spec = GeneratorSpec("rotation", tuple(sorted(args.rotation)))
    else:
        raise ParameterError("[CLI] ERROR: intertwine needs --boost J or --rotation I J")
    return fourier_intertwine_check(v, spec)


def cmd_identities(args) -> Report:
    return check_covariant_identities()


def _scalar_entry(text: str):
    P = _parse_poly(text, "--a")
    if P.degree() > 0:
        raise ParameterError(f"[CLI] ERROR: matrix entry {text!r} is not a number")
    return P.coefficient((0, 0, 0, 0))


def cmd_covariance(args) -> Report:
    entries = [_scalar_entry(t) for t in args.a.split(",")]
    if len(entries) != 4:
        raise ParameterError(f"[CLI] ERROR: --a needs four entries a,b,c,d, got {len(entries)}")
    return covariance_check([entries[:2], entries[2:]])


def cmd_dual_norm(args) -> Report:
    kappa = tuple(int(k) for k in args.kappa.split(","))
    value = dual_norm(kappa, ClassParams(Fraction(args.beta), Fraction(args.B)))
    report = Report("dual-norm", {"kappa": args.kappa, "B": args.B, "beta": args.beta})
    report.results = {"value": str(value), "exact": isinstance(value, Fraction)}
    report.add("norm is positive", True, value > 0)
    return report


def cmd_acyclicity(args) -> Report:
    params = AcyclicityParams(
        Fraction(args.B0), Fraction(args.B1), Fraction(args.B), args.N1, Fraction(args.eps1)
    )
    witness = acyclicity_params(params)
    report = Report(
        "acyclicity",
        {"B0": args.B0, "B1": args.B1, "B": args.B, "N1": args.N1, "eps1": args.eps1},
    )
    report.results = {
        "A": f"{witness.A:.12g}",
        "A_exact": str(witness.A_exact) if witness.A_exact is not None else None,
        "eps": f"{witness.eps:.12g}",
        "N": witness.N,
    }
    report.add("0 < eps < 1", True, 0 < witness.eps < 1)
    report.add("N >= 0", True, witness.N >= 0)
    return report


COMMANDS = {
    "solve-boost": cmd_solve_boost,
    "split": cmd_split,
    "harmonic": cmd_harmonic,
    "project-so3": cmd_project_so3,
    "matrix": cmd_matrix,
    "bounds": cmd_bounds,
    "cokernel2d": cmd_cokernel2d,
    "covariant": cmd_covariant,
    "kernel-check": cmd_kernel_check,
    "cg": cmd_cg,
    "extract": cmd_extract,
    "lemma3": cmd_jet_decompose,
    "jet-decompose": cmd_jet_decompose,
    "growth": cmd_growth,
    "verify-all": cmd_verify_all,
    "commutators": cmd_commutators,
    "intertwine": cmd_intertwine,
    "identities": cmd_identities,
    "covariance": cmd_covariance,
    "dual-norm": cmd_dual_norm,
    "acyclicity": cmd_acyclicity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzkit",
        description="Exact checks and solvers for Lorentz-invariant delta expansions.",
    )
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="output", action="store_const", const="json", help="JSON report (default)")
    mode.add_argument("--pretty", dest="output", action="store_const", const="pretty", help="Tabular report")
    parser.add_argument("--seed", type=int, default=config.SEED, help=f"Random seed (default: {config.SEED})")
    parser.add_argument(
        "--metrics-port", type=int, default=config.METRICS_PORT, help="Serve Prometheus metrics on this port"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-boost", help="Solve N1 v = u inside F_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", required=True, help="Momentum polynomial in span G_n")

    p = sub.add_parser("split", help="Invariant completion of (v_plus, v_minus)")
    p.add_argument("--plus", required=True)
    p.add_argument("--minus", required=True)

    p = sub.add_parser("harmonic", help="Harmonic decomposition of a spatial polynomial")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("project-so3", help="SO(3)-invariant projection")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("matrix", help="Boost matrix from F_n to G_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("bounds", help="Inverse closed forms and 2^(n/2) bounds")
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("cokernel2d", help="Two-dimensional cokernel of N1")
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("covariant", help="(wb x~ w)^s2 expansion")
    p.add_argument("--s2", type=int, required=True)

    p = sub.add_parser("kernel-check", help="(wb d~ w)^s2 (p^2)^l vanishing pattern")
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--l-max", type=int, required=True)

    p = sub.add_parser("cg", help="Clebsch-Gordan series of (r,s) x (s,r)")
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)

    p = sub.add_parser("extract", help="Invariant v with make_covariant(v, s2) = w")
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("lemma3", aliases=["jet-decompose"], help="Decompose f = sum x_i^(m+1) f_i")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--dim", type=int, default=4, help="Number of variables (default: 4)")

    p = sub.add_parser("growth", help="Growth diagnostic m_n of a delta expansion")
    p.add_argument("--beta", required=True)
    p.add_argument("--coeffs", required=True, help="Delta expansion, e.g. 'd[1] + 1/2*d[2]'")
    p.add_argument("--n-max", type=int, default=None)

    p = sub.add_parser("verify-all", help="Run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="Reduced sample counts")

    sub.add_parser("commutators", help="Lorentz algebra commutators")

    p = sub.add_parser("intertwine", help="Fourier intertwining of a generator")
    p.add_argument("--v", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--boost", type=int, metavar="J")
    target.add_argument("--rotation", type=int, nargs=2, metavar=("I", "J"))

    sub.add_parser("identities", help="(wb d~ w) identities")

    p = sub.add_parser("covariance", help="SL(2,C) covariance of the degree-1 covariant")
    p.add_argument("--a", required=True, help="Entries a,b,c,d of A = [[a,b],[c,d]]")

    p = sub.add_parser("dual-norm", help="B^(-|k|) prod k_j^(-beta k_j)")
    p.add_argument("--kappa", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--beta", required=True)

    p = sub.add_parser("acyclicity", help="Interpolation parameters A, eps, N")
    p.add_argument("--B0", required=True)
    p.add_argument("--B1", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--N1", type=int, required=True)
    p.add_argument("--eps1", required=True)

    return parser


def run(command: str, args) -> Report:
    if command not in COMMANDS:
        raise ParameterError(f"[CLI] ERROR: unknown command {command!r}")
    return COMMANDS[command](args).finish()


def _inputs(args) -> dict:
    skip = {"command", "output", "metrics_port"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _print_report(report: Report, output: str):
    if output == "json":
        print(report.to_json())
        return
    status = "✅ PASS" if report.passed else "❌ FAIL"
    print("\n" + "=" * 50)
    print(f"📐 {report.command}: {status} ({len(report.checks)} checks, {report.elapsed_s:.2f}s)")
    print("=" * 50)
    for k, v in report.inputs.items():
        print(f"   - {k}: {v}")
    if report.checks:
        print()
        print(report.to_frame().to_string(index=False))
    for k, v in report.results.items():
        print(f"\n🔎 {k}: {v}")
    print("=" * 50 + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    output = args.output or config.OUTPUT_MODE
    if args.metrics_port:
        start_metrics_server(args.metrics_port)

    logger.info(f"[CLI] {args.command} started")
    try:
        report = run(args.command, args)
    except LorentzKitError as e:
        logger.error(f"[CLI] {args.command} failed: {e}")
        inc_command_error(args.command)
        report = Report(args.command, _inputs(args))
        report.results = {"error": type(e).__name__}
        report.add("completed without error", "no error", str(e), False)
        _print_report(report.finish(), output)
        return 2

    record_report(report)
    _print_report(report, output)
    if report.passed:
        logger.info(f"[CLI] {args.command} finished: {len(report.checks)} checks passed")
        return 0
    logger.error(f"[CLI] {args.command} finished: {len(report.failed)} of {len(report.checks)} checks failed")
    return 1


if __name__ == "__main__":
    sys.exit(main())
