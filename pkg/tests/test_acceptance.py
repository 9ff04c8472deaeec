"""Acceptance criteria 1-8, each checked at its stated tolerance and runtime.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import csv
import io
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from weierstrass_entropy.bounds import envelope, gram_det_certificate, lower_ln_cover, upper_ln_cover
from weierstrass_entropy.cli import main
from weierstrass_entropy.empirical import constructive_cover, coverage_check
from weierstrass_entropy.kernel import gram_matrix, make_params, partial_sum, tail_bound
from weierstrass_entropy.operators import embedding_norm_sq, mu, projection_split
from weierstrass_entropy.rkhs import RkhsFunction, evaluate, kernel_section, rkhs_inner

from conftest import CRITERIA


def record(name, ok, detail):
    CRITERIA.append((name, bool(ok), detail))
    assert ok, f"{name}: {detail}"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def rel_err(value, exact):
    return abs(Fraction(value) - exact) / abs(exact)


def test_criterion_1_closed_forms():
    worst = Fraction(0)
    with Timer() as t:
        for a in (0.25, 0.5, 0.9):
            p = make_params(a, math.ceil(1 / a) + 1)
            fa = Fraction(a)
            worst = max(worst, rel_err(embedding_norm_sq(p), 1 / (1 - fa)))
            for n in (1, 3, 10):
                s = projection_split(p, n)
                worst = max(worst, rel_err(s.head_norm_sq, (1 - fa**n) / (1 - fa)))
                worst = max(worst, rel_err(s.tail_norm_sq, fa**n / (1 - fa)))
    ok = worst <= Fraction(1, 10**14) and t.seconds < 1.0
    record("1 closed-form norms", ok, f"max rel err {float(worst):.2e} (<= 1e-14), {t.seconds:.3f}s (< 1s)")


def test_criterion_2_gram_determinant():
    worst = 0.0
    with Timer() as t:
        for ab in ((0.5, 3), (0.9, 2)):
            p = make_params(*ab)
            for n in range(1, 7):
                for method in ("analytic", "quadrature"):
                    analytic, numeric = gram_det_certificate(p, n, method)
                    worst = max(worst, abs(numeric - analytic) / analytic)
    ok = worst <= 1e-8 and t.seconds < 10.0
    record("2 Gram determinant a^(n(n-1))", ok, f"max rel err {worst:.2e} (<= 1e-8), {t.seconds:.2f}s (< 10s)")


def test_criterion_3_reproducing_identity():
    rng = np.random.default_rng(3)
    p = make_params(0.5, 3)
    xs = np.linspace(-1.0, 1.0, 101)
    worst = 0.0
    with Timer() as t:
        sections = [kernel_section(p, x, 12) for x in xs]
        for _ in range(100):
            f = RkhsFunction(p, rng.standard_normal(12), rng.standard_normal(12))
            direct = evaluate(f, xs)
            via = np.array([rkhs_inner(f, s) for s in sections])
            worst = max(worst, float(np.max(np.abs(direct - via))))
    ok = worst <= 1e-12 and t.seconds < 5.0
    record("3 reproducing identity", ok, f"max |f(x) - <f, W(x,.)>| {worst:.2e} (<= 1e-12), {t.seconds:.2f}s (< 5s)")


def test_criterion_4_envelope_trend():
    p = make_params(0.5, 3)
    low, high = envelope(p)
    with Timer() as t:
        ks = range(2, 9)
        phi = [math.log(10.0**k) ** 2 for k in ks]
        upper = [upper_ln_cover(p, 10.0**-k) for k in ks]
        lower = [lower_ln_cover(p, 10.0**-k)[0] for k in ks]
    up_ratio = [u / f for u, f in zip(upper, phi)]
    lo_ratio = [v / f for v, f in zip(lower, phi)]
    part_i = all(v <= u for v, u in zip(lower, upper))
    part_ii = all(x > y for x, y in zip(up_ratio, up_ratio[1:])) and up_ratio[-1] <= 1.15 * high
    part_iii = all(x < y for x, y in zip(lo_ratio, lo_ratio[1:])) and lo_ratio[-1] >= 0.90 * low
    ok = part_i and part_ii and part_iii and t.seconds < 1.0
    detail = (
        f"(i) {'pass' if part_i else 'fail'}; "
        f"(ii) {'pass' if part_ii else 'fail'}: upper ratio at 1e-8 = {up_ratio[-1]:.4f} vs 1.15*4/ln2 = {1.15 * high:.4f}"
        f" (decreasing: {all(x > y for x, y in zip(up_ratio, up_ratio[1:]))}); "
        f"(iii) {'pass' if part_iii else 'fail'}: lower ratio at 1e-8 = {lo_ratio[-1]:.4f} vs 0.90*2/ln2 = {0.9 * low:.4f}; "
        f"{t.seconds:.3f}s (< 1s)"
    )
    record("4 envelope trend", ok, detail)


def test_criterion_5_constructive_cover():
    p = make_params(0.5, 3)
    notes = []
    ok = True
    with Timer() as t:
        for n in (1, 2):
            # the sandwich edge eps = 2 mu_N and an interior point
            for eps in (2.0 * mu(p, n), mu(p, n) + mu(p, n - 1)):
                cover = constructive_cover(p, eps)
                res = coverage_check(p, cover, 100_000, seed=n)
                ok &= cover.dimension == 2 * n and res.rate == 1.0
                notes.append(f"2N={cover.dimension} eps={eps:.4f} rate={res.rate:.5f}")
        for eps in (0.5, 0.2, 0.1):
            size, up = constructive_cover(p, eps).cover_size_ln, upper_ln_cover(p, eps)
            ok &= size <= up
            notes.append(f"eps={eps}: {size:.2f} <= {up:.2f}")
    ok &= t.seconds < 60.0
    record("5 constructive cover", ok, "; ".join(notes) + f"; {t.seconds:.1f}s (< 60s)")


def test_criterion_6_empirical_end_to_end(capsys):
    argv = ["empirical", "--a", "0.5", "--b", "3", "--trunc-N", "6", "--samples", "2000", "--seed", "0"]
    outputs, times = [], []
    for _ in range(2):
        with Timer() as t:
            code = main(argv)
        outputs.append(capsys.readouterr().out)
        times.append(t.seconds)
        assert code == 0
    rows = list(csv.DictReader(io.StringIO(outputs[0])))
    sound = all(float(r["empirical_lower_ln"]) <= float(r["upper_ln_cover"]) for r in rows)
    same = outputs[0] == outputs[1]
    ok = sound and same and len(rows) > 0 and max(times) < 120.0
    pairs = ", ".join(f"{float(r['empirical_lower_ln']):.2f}<={float(r['upper_ln_cover']):.2f}" for r in rows)
    record("6 empirical run", ok, f"{pairs}; byte-identical={same}; {max(times):.1f}s per run (< 120s)")


def test_criterion_7_psd():
    rng = np.random.default_rng(7)
    worst = math.inf
    with Timer() as t:
        for ab in ((0.5, 3), (0.9, 2)):
            p = make_params(*ab)
            for _ in range(50):
                g = gram_matrix(p, rng.uniform(-1.0, 1.0, 50))
                worst = min(worst, float(np.linalg.eigvalsh(g).min() / np.max(np.diag(g))))
    ok = worst >= -1e-8 and t.seconds < 30.0
    record("7 Gram PSD", ok, f"min eig / max diag {worst:.2e} (>= -1e-8), {t.seconds:.2f}s (< 30s)")


def test_criterion_8_truncation_soundness():
    rng = np.random.default_rng(8)
    worst = 0.0
    with Timer() as t:
        for ab in ((0.5, 3), (0.9, 2)):
            p = make_params(*ab)
            xs = rng.uniform(-1.0, 1.0, 1000)
            ns = rng.integers(1, 41, 1000)
            for x, n in zip(xs, ns):
                gap = abs(float(partial_sum(p, x, n) - partial_sum(p, x, n + 20)))
                worst = max(worst, gap / tail_bound(p, int(n)))
    ok = worst <= 1.0 and t.seconds < 5.0
    record("8 truncation soundness", ok, f"max gap / (a^N/(1-a)) {worst:.4f} (<= 1), {t.seconds:.2f}s (< 5s)")
