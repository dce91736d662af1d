"""Command-line front-end.

Subcommands
    check     verify the self-adjointness criterion for a pair of matrix files
    canon     write the canonical factorization factors for a pair
    classify  report mixed / coupled / separated and the rank offset
    generate  synthesize a random self-adjoint pair to matrix files
    selftest  run the seeded invariant suite

Exit codes: 0 success, 1 criterion-failure verdict, 2 input/usage error,
3 numerical failure.  BC_CANON_TOL overrides the default reconstruction
tolerance; the --tol flag wins over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .errors import (
    BccanonError,
    ConvergenceFailure,
    InvalidTarget,
    NotSelfAdjoint,
    NotUnitary,
    ParseError,
    RankDeficient,
    UnsupportedOrder,
)
from .forms import (
    BoundaryPair,
    canonical_decompose,
    check_self_adjoint,
    construct_from_W,
    even_canonical_decompose,
    generate_random_pair,
)
from .linalg import DEFAULT_TOL, Tolerances, numerical_rank, row_space_angles
from .matio import (
    Report,
    dumps_deterministic,
    format_report,
    matrix_to_payload,
    parse_matrix_file,
    write_matrix_file,
)
from .selftest import run_selftest
from .structure import OrderSpec

EXIT_OK = 0
EXIT_CRITERION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_NUMERICAL_ERRORS = (NotSelfAdjoint, ConvergenceFailure, RankDeficient, NotUnitary)


def _resolve_tolerances(args) -> Tolerances:
    value = getattr(args, "tol", None)
    if value is None:
        env = os.environ.get("BC_CANON_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError as exc:
                raise ParseError(f"BC_CANON_TOL is not a float: {env!r}") from exc
    if value is None:
        return DEFAULT_TOL
    return Tolerances(residual_abs=value)


def _load_pair(path_a, path_b, tol) -> BoundaryPair:
    a = parse_matrix_file(path_a)
    b = parse_matrix_file(path_b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ParseError(f"A and B must be square and equal-sized, got {a.shape} and {b.shape}")
    return BoundaryPair.from_matrices(a, b)


def _cmd_check(args) -> tuple[Report, int]:
    tol = _resolve_tolerances(args)
    pair = _load_pair(args.A, args.B, tol)
    report = check_self_adjoint(pair, tol)
    out = Report(
        command="check",
        inputs=[args.A, args.B],
        verdict="self-adjoint" if report.ok else "not self-adjoint",
        metrics={
            "m": pair.spec.m,
            "rank(A:B)": report.rank_AB,
            "gram_residual": report.gram_residual,
            "rank_A": report.rank_A,
            "rank_B": report.rank_B,
        },
    )
    return out, EXIT_OK if report.ok else EXIT_CRITERION


def _write_factors(out_dir, factors, report: Report) -> None:
    os.makedirs(out_dir, exist_ok=True)
    manifest = {"command": report.command, "files": {}}
    embedded = {}
    for name, matrix in factors.items():
        filename = f"{name}.json"
        write_matrix_file(os.path.join(out_dir, filename), matrix)
        manifest["files"][name] = filename
        embedded[name] = matrix_to_payload(matrix)
    report.factors = embedded
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as handle:
        handle.write(dumps_deterministic(manifest))


def _cmd_canon(args) -> tuple[Report, int]:
    tol = _resolve_tolerances(args)
    pair = _load_pair(args.A, args.B, tol)
    out = Report(command="canon", inputs=[args.A, args.B], verdict="ok")
    if pair.spec.is_odd_order:
        form = canonical_decompose(pair, tol)
        normalized = construct_from_W(form.W, pair.spec, tol)
        residual = float(np.linalg.norm(form.reconstruct() - normalized.stacked()))
        angle = float(np.max(row_space_angles(form.reconstruct(), pair.stacked())))
        out.metrics = {
            "m": pair.spec.m,
            "n": pair.spec.n,
            "reconstruction_residual": residual,
            "row_space_angle_max": angle,
            "null_count": form.null_count,
            "rank_A": form.predicted_rank_A,
            "rank_B": form.predicted_rank_B,
            "r": form.r,
        }
        out.verdict = form.classification.value
        factors = {
            "Q1": form.Q1,
            "Q2": form.Q2,
            "Q3": form.Q3,
            "Q4": form.Q4,
            "core": form.core,
            "K": form.K,
            "W": form.W,
            "C_diag": form.cs.cos.reshape(1, -1),
            "S_diag": form.cs.sin.reshape(1, -1),
        }
    else:
        form = even_canonical_decompose(pair, tol)
        residual = float(np.linalg.norm(form.reconstruct() - pair.stacked()))
        out.metrics = {
            "m": pair.spec.m,
            "n": pair.spec.n,
            "reconstruction_residual": residual,
            "rank_S": form.rank_S,
        }
        out.verdict = form.classification.value
        factors = {
            "U": form.U,
            "middle": form.middle,
            "Z": form.Z,
            "W": form.W,
            "V1": form.V1,
            "U1": form.U1,
            "U2": form.U2,
            "V2": form.V2,
            "C_diag": form.cos.reshape(1, -1),
            "S_diag": form.sin.reshape(1, -1),
        }
    _write_factors(args.out, factors, out)
    return out, EXIT_OK


def _cmd_classify(args) -> tuple[Report, int]:
    tol = _resolve_tolerances(args)
    pair = _load_pair(args.A, args.B, tol)
    out = Report(command="classify", inputs=[args.A, args.B])
    if pair.spec.is_odd_order:
        form = canonical_decompose(pair, tol)
        out.verdict = form.classification.value
        out.metrics = {
            "m": pair.spec.m,
            "r": form.r,
            "rank_A": form.predicted_rank_A,
            "rank_B": form.predicted_rank_B,
            "null_count": form.null_count,
        }
    else:
        form = even_canonical_decompose(pair, tol)
        out.verdict = form.classification.value
        out.metrics = {
            "m": pair.spec.m,
            "rank_S": form.rank_S,
            "rank_A": numerical_rank(pair.A, tol),
            "rank_B": numerical_rank(pair.B, tol),
        }
    return out, EXIT_OK


def _cmd_generate(args) -> tuple[Report, int]:
    tol = _resolve_tolerances(args)
    try:
        spec = OrderSpec.from_order(args.order)
    except UnsupportedOrder as exc:
        raise ParseError(str(exc)) from exc
    try:
        pair = generate_random_pair(spec, args.seed, target_unit_cosines=args.unit_cosines, tol=tol)
    except InvalidTarget as exc:
        raise ParseError(str(exc)) from exc
    os.makedirs(args.out, exist_ok=True)
    path_a = os.path.join(args.out, "A.json")
    path_b = os.path.join(args.out, "B.json")
    write_matrix_file(path_a, pair.A)
    write_matrix_file(path_b, pair.B)
    report = check_self_adjoint(pair, tol)
    out = Report(
        command="generate",
        inputs=[path_a, path_b],
        verdict="ok",
        metrics={
            "m": spec.m,
            "n": spec.n,
            "seed": args.seed,
            "gram_residual": report.gram_residual,
            "rank_A": report.rank_A,
            "rank_B": report.rank_B,
        },
        factors={"A": matrix_to_payload(pair.A), "B": matrix_to_payload(pair.B)},
    )
    if args.unit_cosines is not None:
        out.metrics["unit_cosines"] = args.unit_cosines
    return out, EXIT_OK


def _cmd_selftest(args) -> tuple[Report, int]:
    tol = _resolve_tolerances(args)
    try:
        orders = tuple(int(tok) for tok in args.orders.split(",") if tok.strip())
    except ValueError as exc:
        raise ParseError(f"bad --orders value {args.orders!r}") from exc
    if not orders:
        raise ParseError("--orders must name at least one order")
    results = run_selftest(orders=orders, trials=args.trials, tol=tol)
    metrics = {}
    for res in results:
        metrics[res.name] = 1 if res.passed else 0
        metrics[f"{res.name}.worst"] = res.worst
    passed = sum(res.passed for res in results)
    metrics["checks_passed"] = passed
    metrics["checks_total"] = len(results)
    out = Report(
        command="selftest",
        inputs=[],
        verdict="pass" if passed == len(results) else "fail",
        metrics=metrics,
    )
    return out, EXIT_OK if passed == len(results) else EXIT_CRITERION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bccanon",
        description="Verify, canonicalize, classify and synthesize self-adjoint boundary-condition pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=None, help="reconstruction tolerance (residual_abs)")
        p.add_argument("--format", choices=("json", "text"), default="text", dest="fmt")

    p_check = sub.add_parser("check", help="verify the self-adjointness criterion")
    p_check.add_argument("A")
    p_check.add_argument("B")
    add_common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_canon = sub.add_parser("canon", help="write the canonical factorization")
    p_canon.add_argument("A")
    p_canon.add_argument("B")
    p_canon.add_argument("--out", default=".", help="directory for factor files")
    add_common(p_canon)
    p_canon.set_defaults(func=_cmd_canon)

    p_classify = sub.add_parser("classify", help="classify the boundary conditions")
    p_classify.add_argument("A")
    p_classify.add_argument("B")
    add_common(p_classify)
    p_classify.set_defaults(func=_cmd_classify)

    p_generate = sub.add_parser("generate", help="synthesize a random self-adjoint pair")
    p_generate.add_argument("--order", type=int, required=True, help="matrix size m")
    p_generate.add_argument("--seed", type=int, required=True)
    p_generate.add_argument("--unit-cosines", type=int, default=None, dest="unit_cosines")
    p_generate.add_argument("--out", default=".", help="directory for A.json and B.json")
    add_common(p_generate)
    p_generate.set_defaults(func=_cmd_generate)

    p_selftest = sub.add_parser("selftest", help="run the invariant suite")
    p_selftest.add_argument("--orders", default="3,5,7,9")
    p_selftest.add_argument("--trials", type=int, default=20)
    add_common(p_selftest)
    p_selftest.set_defaults(func=_cmd_selftest)

    return parser


def _run(argv) -> tuple[Report, int, str]:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "fmt", "text")
    try:
        report, code = args.func(args)
    except ParseError as exc:
        return Report(command=args.command, verdict=f"error: {exc}"), EXIT_USAGE, fmt
    except _NUMERICAL_ERRORS as exc:
        return Report(command=args.command, verdict=f"error: {exc}"), EXIT_NUMERICAL, fmt
    except BccanonError as exc:
        return Report(command=args.command, verdict=f"error: {exc}"), EXIT_USAGE, fmt
    return report, code, fmt


def run_command(argv) -> tuple[Report, int]:
    """Parse argv and execute; returns the report and the exit code."""
    report, code, _ = _run(argv)
    return report, code


def main(argv=None) -> int:
    try:
        report, code, fmt = _run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors already exit with 2
        return int(exc.code or 0)
    sys.stdout.write(format_report(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
