"""Invariant suites run by ``weierstrass-entropy verify``.

Each suite is a function of ``(params, rng, options)`` that raises
``AssertionError`` on the first violated invariant.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds, empirical, kernel, operators, rkhs
from .kernel import WeierstrassParams


@dataclass(frozen=True)
class VerifyOptions:
    tol: float = kernel.DEFAULT_TOL
    perturb_gram: bool = False


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _random_function(params: WeierstrassParams, rng: np.random.Generator, order: int) -> rkhs.RkhsFunction:
    return rkhs.RkhsFunction(params, rng.standard_normal(order), rng.standard_normal(order))


def suite_kernel_core(params, rng, options):
    a = params.a
    tol = options.tol
    for _ in range(200):
        x = rng.uniform(-2.0, 2.0)
        n = int(rng.integers(1, 40))
        lo, hi = kernel.partial_sum(params, x, n), kernel.partial_sum(params, x, n + 20)
        assert abs(lo - hi) <= kernel.tail_bound(params, n), f"tail bound violated at x={x}, N={n}"
    xs = rng.uniform(-2.0, 2.0, 500)
    assert np.array_equal(kernel.eval_weierstrass(params, xs, tol), kernel.eval_weierstrass(params, -xs, tol)), "evenness"
    assert np.all(np.abs(kernel.eval_weierstrass(params, xs, tol)) <= 1.0 / (1.0 - a) + tol), "sup bound"
    assert abs(kernel.eval_weierstrass(params, 0.0, tol) - 1.0 / (1.0 - a)) <= tol, "w(0)"
    for _ in range(3):
        gram = kernel.gram_matrix(params, rng.uniform(-1.0, 1.0, 50), tol)
        if options.perturb_gram:
            gram = -gram
        assert np.array_equal(gram, gram.T), "gram symmetry"
        floor = -1e-8 * np.max(np.diag(gram))
        assert np.linalg.eigvalsh(gram).min() >= floor, "gram matrix not PSD"


def suite_rkhs_space(params, rng, options):
    pts = np.linspace(-1.0, 1.0, 101)
    for _ in range(20):
        f = _random_function(params, rng, 12)
        direct = rkhs.evaluate(f, pts)
        via_kernel = np.array([rkhs.rkhs_inner(f, rkhs.kernel_section(params, x, 12)) for x in pts])
        assert np.max(np.abs(direct - via_kernel)) <= 1e-12, "reproducing identity"
        assert math.isclose(rkhs.rkhs_norm(f) ** 2, float(f.cos_coeffs @ f.cos_coeffs + f.sin_coeffs @ f.sin_coeffs))
    for j in range(10):
        assert math.isclose(rkhs.rkhs_norm(rkhs.basis_function(params, j)), 1.0), "basis normalization"
    for _ in range(20):
        f, g = _random_function(params, rng, 4), _random_function(params, rng, 3)
        fg = rkhs.l2_inner(f, g)
        assert fg**2 <= rkhs.l2_inner(f, f) * rkhs.l2_inner(g, g) * (1 + 1e-12), "L2 Cauchy-Schwarz"
        assert abs(fg - rkhs.l2_inner_quadrature(f, g)) <= 1e-8, "L2 inner vs quadrature"
    f = _random_function(params, rng, 4)
    lower, upper = rkhs.sup_norm_bracket(f, 2001)
    fine = float(np.max(np.abs(rkhs.evaluate(f, np.linspace(-1.0, 1.0, 40001)))))
    assert lower <= fine <= upper, "sup-norm bracket"


def suite_operators(params, rng, options):
    a = params.a
    total = operators.embedding_norm_sq(params)
    assert math.isclose(total, 1.0 / (1.0 - a), rel_tol=1e-14)
    prev = math.inf
    for n in range(1, 30):
        split = operators.projection_split(params, n)
        assert math.isclose(split.head_norm_sq + split.tail_norm_sq, total, rel_tol=1e-14), "head + tail"
        assert split.mu < prev, "mu not decreasing"
        prev = split.mu
    for _ in range(20):
        f = _random_function(params, rng, 10)
        n = int(rng.integers(1, 12))
        head, tail = operators.apply_head_projection(f, n), operators.apply_tail_projection(f, n)
        assert abs(rkhs.rkhs_inner(head, tail)) <= 1e-15, "head/tail orthogonality"
        lhs = rkhs.rkhs_norm(f) ** 2
        assert math.isclose(lhs, rkhs.rkhs_norm(head) ** 2 + rkhs.rkhs_norm(tail) ** 2, rel_tol=1e-12), "Pythagoras"
    for n in (1, 3, 6):
        split = operators.projection_split(params, n)
        head, tail = operators.attained_norms(params, n)
        assert abs(head - math.sqrt(split.head_norm_sq)) <= 1e-3, "head norm attainment"
        assert abs(tail - split.mu) <= 1e-3, "tail norm attainment"


def suite_entropy_bounds(params, rng, options):
    low, high = bounds.envelope(params)
    assert math.isclose(2.0 * low, high, rel_tol=1e-15)
    for eps in np.geomspace(1.9 * math.sqrt(1.0 / (1.0 - params.a)), 1e-8, 40):
        n = bounds.choose_truncation(params, eps)
        assert operators.mu(params, n) <= eps / 2 < operators.mu(params, n - 1), f"sandwich at eps={eps}"
    for k in range(2, 9):
        eps = 10.0**-k
        lower, _ = bounds.lower_ln_cover(params, eps)
        assert lower <= bounds.upper_ln_cover(params, eps), f"lower > upper at eps={eps}"
    for eps in 10.0 ** rng.uniform(-8, -1, 20):
        narrow, _ = bounds.lower_ln_cover(params, eps)
        wide, _ = bounds.lower_ln_cover(params, eps, window=12)
        assert wide <= narrow, f"search window not optimal at eps={eps}"
    for n in range(1, 7):
        analytic, numeric = bounds.gram_det_certificate(params, n, "quadrature")
        assert abs(analytic - numeric) <= 1e-8 * analytic, f"gram determinant n={n}"
    deep = bounds.lower_ln_cover(params, 1e-8)[0] / math.log(1e8) ** 2
    assert deep >= 0.9 * low, "lower ratio at eps=1e-8"
    # the upper ratio carries O(1/ln(1/eps)) corrections; check convergence far out
    far = 1e-100
    assert bounds.upper_ln_cover(params, far) / math.log(1.0 / far) ** 2 <= 1.1 * high, "upper ratio at eps=1e-100"


def suite_entropy_empirical(params, rng, options):
    eps_list = [1.0, 0.5, 0.2]
    first = empirical.empirical_report(params, eps_list, 3, 300, 2001, seed=7)
    second = empirical.empirical_report(params, eps_list, 3, 300, 2001, seed=7)
    assert [r.as_row() for r in first] == [r.as_row() for r in second], "determinism"
    for row in first:
        assert row.empirical_lower_ln <= row.report.upper_ln_cover, f"packing exceeds upper bound at eps={row.report.eps}"
    for n in (1, 2):
        eps = operators.mu(params, n) + operators.mu(params, n - 1)
        cover = empirical.constructive_cover(params, eps)
        assert cover.order == n
        assert cover.tail_radius <= eps / 2
        assert cover.cover_size_ln <= cover.budget_ln, "net exceeds volumetric budget"
        result = empirical.coverage_check(params, cover, 20_000, seed=n)
        assert result.covered == result.samples, f"net misses samples at 2N={2 * n}"
    for eps in (0.5, 0.2, 0.1):
        cover = empirical.constructive_cover(params, eps)
        assert cover.cover_size_ln <= bounds.upper_ln_cover(params, eps), f"net larger than upper bound at {eps}"
        assert cover.cover_size_ln <= cover.budget_ln


SUITES: dict[str, Callable] = {
    "kernel_core": suite_kernel_core,
    "rkhs_space": suite_rkhs_space,
    "operators": suite_operators,
    "entropy_bounds": suite_entropy_bounds,
    "entropy_empirical": suite_entropy_empirical,
}


def run_suites(params: WeierstrassParams, seed: int = 0, options: VerifyOptions | None = None) -> list[SuiteResult]:
    options = options or VerifyOptions()
    results = []
    for name, suite in SUITES.items():
        rng = np.random.default_rng([seed, len(results)])
        start = time.perf_counter()
        try:
            suite(params, rng, options)
        except AssertionError as exc:
            results.append(SuiteResult(name, False, str(exc) or "assertion failed", time.perf_counter() - start))
        else:
            results.append(SuiteResult(name, True, "", time.perf_counter() - start))
    return results
