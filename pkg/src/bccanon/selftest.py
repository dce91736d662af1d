"""Seeded invariant suite behind the ``selftest`` CLI command.

Each check exercises one library invariant over a configurable number of
random trials per order and reports pass/fail with a worst-case metric.
Orders are matrix sizes m; odd m go through the odd-order pipeline and the
even-order extension is always probed at n = 1..3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csd import cs_decompose, cs_reconstruct
from .forms import (
    Classification,
    canonical_decompose,
    check_self_adjoint,
    construct_from_W,
    coupling_block_ranks,
    even_canonical_decompose,
    generate_random_pair,
    predicted_ranks,
    recover_W,
    BoundaryPair,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    haar_unitary,
    numerical_rank,
    random_unitary,
    row_space_angles,
    unitarity_residual,
)
from .structure import OrderSpec

__all__ = ["CheckResult", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""


def _odd_specs(orders):
    return [OrderSpec.from_order(m) for m in orders if m % 2 == 1]


def _random_conditioned(m: int, rng: np.random.Generator) -> np.ndarray:
    """Random invertible matrix with condition number below 100."""
    u = haar_unitary(m, rng)
    v = haar_unitary(m, rng)
    return u @ np.diag(rng.uniform(0.2, 2.0, m)).astype(complex) @ v


def _check_csd_round_trip(orders, trials, tol):
    worst_recon = worst_unit = worst_pyth = worst_cos = 0.0
    rng = np.random.default_rng(1914)
    for m in orders:
        if m % 2 == 0 or m < 3:
            continue
        n = (m - 1) // 2
        for partition in ((n + 1, n), (n, n + 1)):
            p, q = partition
            for _ in range(trials):
                w = haar_unitary(m, rng)
                f = cs_decompose(w, p, q, tol)
                worst_recon = max(worst_recon, float(np.linalg.norm(cs_reconstruct(f) - w)))
                for corner in (f.u1, f.u2, f.v1, f.v2):
                    worst_unit = max(worst_unit, unitarity_residual(corner))
                worst_pyth = max(worst_pyth, float(np.max(np.abs(f.cos**2 + f.sin**2 - 1.0))))
                sigma = np.linalg.svd(w[:p, :p], compute_uv=False)
                worst_cos = max(worst_cos, float(np.max(np.abs(np.sort(sigma)[::-1][max(p - q, 0):] - f.cos))))
    return [
        CheckResult("csd_round_trip", worst_recon < 1e-9, worst_recon, "|reconstruct(W) - W|_F"),
        CheckResult("csd_corner_unitarity", worst_unit < 1e-10, worst_unit, "max |U*U - I|"),
        CheckResult("csd_cos2_plus_sin2", worst_pyth < 1e-12, worst_pyth, "max |cos^2+sin^2-1|"),
        CheckResult("csd_cos_vs_block_svd", worst_cos < 1e-10, worst_cos, "cos vs W11 singular values"),
    ]


def _check_self_adjoint_closure(orders, trials, tol):
    worst = 0.0
    ok = True
    for spec in _odd_specs(orders):
        for t in range(trials):
            pair = construct_from_W(random_unitary(spec.m, 7000 + 13 * spec.m + t), spec, tol)
            report = check_self_adjoint(pair, tol)
            ok = ok and report.ok
            worst = max(worst, report.gram_residual)
    return [CheckResult("self_adjoint_closure", ok and worst < 1e-11, worst, "gram residual of constructed pairs")]


def _check_recover_round_trip(orders, trials, tol):
    worst_rt = worst_rowop = 0.0
    rng = np.random.default_rng(2718)
    for spec in _odd_specs(orders):
        for t in range(trials):
            w0 = haar_unitary(spec.m, rng)
            pair = construct_from_W(w0, spec, tol)
            worst_rt = max(worst_rt, float(np.linalg.norm(recover_W(pair, tol) - w0)))
            g = _random_conditioned(spec.m, rng)
            moved = BoundaryPair(A=g @ pair.A, B=g @ pair.B, spec=spec)
            worst_rowop = max(worst_rowop, float(np.linalg.norm(recover_W(moved, tol) - w0)))
    return [
        CheckResult("recover_round_trip", worst_rt < 1e-9, worst_rt, "|recover(construct(W)) - W|_F"),
        CheckResult("recover_row_op_invariance", worst_rowop < 1e-8, worst_rowop, "|recover(G pair) - W|_F"),
    ]


def _check_rank_agreement(orders, trials, tol):
    equal = bounds = formula = blocks = True
    for spec in _odd_specs(orders):
        n = spec.n
        for t in range(trials):
            k = t % (n + 1)
            pair = generate_random_pair(spec, 9000 + 17 * spec.m + t, target_unit_cosines=k, tol=tol)
            rank_a = numerical_rank(pair.A, tol)
            rank_b = numerical_rank(pair.B, tol)
            form = canonical_decompose(pair, tol)
            pa, pb, _ = predicted_ranks(form, tol)
            ba, bb = coupling_block_ranks(form.W, spec, tol)
            equal = equal and rank_a == rank_b
            bounds = bounds and (n + 1 <= rank_a <= 2 * n + 1)
            formula = formula and pa == rank_a and pb == rank_b and rank_a == spec.m - k
            blocks = blocks and ba == rank_a and bb == rank_b
    return [
        CheckResult("rank_equality", equal, 0.0, "rank A == rank B"),
        CheckResult("rank_bounds", bounds, 0.0, "n+1 <= rank A <= 2n+1"),
        CheckResult("rank_formula_vs_svd", formula, 0.0, "2n+1 - Null(I - K K*) == SVD rank"),
        CheckResult("rank_block_route", blocks, 0.0, "corner-block ranks agree"),
    ]


def _check_canonical_reconstruction(orders, trials, tol):
    worst_eq = worst_angle = 0.0
    rng = np.random.default_rng(3141)
    for spec in _odd_specs(orders):
        for t in range(trials):
            pair = construct_from_W(haar_unitary(spec.m, rng), spec, tol)
            g = _random_conditioned(spec.m, rng)
            moved = BoundaryPair(A=g @ pair.A, B=g @ pair.B, spec=spec)
            form = canonical_decompose(moved, tol)
            normalized = construct_from_W(form.W, spec, tol)
            worst_eq = max(
                worst_eq,
                float(np.linalg.norm(form.reconstruct() - normalized.stacked())),
            )
            worst_angle = max(
                worst_angle,
                float(np.max(row_space_angles(form.reconstruct(), moved.stacked()))),
            )
    return [
        CheckResult("canonical_reconstruction", worst_eq < 1e-9, worst_eq, "Q1 core Q2 vs normalized pair"),
        CheckResult("canonical_row_space", worst_angle < 1e-8, worst_angle, "max principal angle to input"),
    ]


def _check_classification(orders, trials, tol):
    ok = True
    for spec in _odd_specs(orders):
        n = spec.n
        for t in range(trials):
            k = t % (n + 1)
            pair = generate_random_pair(spec, 11000 + 19 * spec.m + t, target_unit_cosines=k, tol=tol)
            form = canonical_decompose(pair, tol)
            coupled = form.classification is Classification.COUPLED
            ok = ok and form.classification is not Classification.SEPARATED
            ok = ok and (coupled == (form.predicted_rank_A == 2 * n + 1))
            ok = ok and (coupled == (form.r == n))
    return [CheckResult("classification_dichotomy", ok, 0.0, "coupled iff full rank, never separated")]


def _check_even_order(trials, tol):
    worst_recon = 0.0
    trichotomy = support = True
    for n in (1, 2, 3):
        spec = OrderSpec.from_order(2 * n)
        for t in range(trials):
            k = t % (n + 1)
            pair = generate_random_pair(spec, 13000 + 23 * n + t, target_unit_cosines=k, tol=tol)
            form = even_canonical_decompose(pair, tol)
            worst_recon = max(worst_recon, float(np.linalg.norm(form.reconstruct() - pair.stacked())))
            expected = (
                Classification.SEPARATED
                if form.rank_S == 0
                else Classification.COUPLED
                if form.rank_S == n
                else Classification.MIXED
            )
            trichotomy = trichotomy and form.classification is expected and form.rank_S == n - k
            if form.classification is Classification.SEPARATED:
                rows = np.linalg.solve(form.U, pair.stacked())
                for row in rows:
                    support = support and min(
                        float(np.linalg.norm(row[: 2 * n])), float(np.linalg.norm(row[2 * n :]))
                    ) < 1e-9
    return [
        CheckResult("even_reconstruction", worst_recon < 1e-9, worst_recon, "U middle right vs pair"),
        CheckResult("even_trichotomy", trichotomy, 0.0, "classification matches rank(S)"),
        CheckResult("even_separated_support", support, 0.0, "separated rows live in one endpoint block"),
    ]


def run_selftest(orders=(3, 5, 7, 9), trials: int = 20, tol: Tolerances = DEFAULT_TOL):
    """Run every invariant check; returns a list of CheckResult."""
    results = []
    results += _check_csd_round_trip(orders, trials, tol)
    results += _check_self_adjoint_closure(orders, trials, tol)
    results += _check_recover_round_trip(orders, trials, tol)
    results += _check_rank_agreement(orders, trials, tol)
    results += _check_canonical_reconstruction(orders, trials, tol)
    results += _check_classification(orders, trials, tol)
    results += _check_even_order(trials, tol)
    return results
