import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_entropy.bounds import upper_ln_cover
from weierstrass_entropy.empirical import (
    EMPIRICAL_COLUMNS,
    constructive_cover,
    cover_pitches,
    coverage_check,
    empirical_report,
    greedy_packing,
    lattice_cells_ln,
    lattice_cells_volume_ln,
    net_levels,
    pairwise_sup_distances,
    sample_unit_ball,
    unit_ball_coeffs,
)
from weierstrass_entropy.errors import DomainError, ParamMismatchError
from weierstrass_entropy.kernel import make_params
from weierstrass_entropy.operators import mu
from weierstrass_entropy.rkhs import RkhsFunction, basis_function, rkhs_norm, sup_norm_bracket


class TestSampling:
    def test_norms_and_shape(self, p53):
        fs = sample_unit_ball(p53, 3, 500, seed=1)
        assert len(fs) == 500 and all(f.order == 3 for f in fs)
        assert max(rkhs_norm(f) for f in fs) <= 1 + 1e-12

    def test_deterministic(self, p53):
        a = sample_unit_ball(p53, 2, 50, seed=7)
        b = sample_unit_ball(p53, 2, 50, seed=7)
        c = sample_unit_ball(p53, 2, 50, seed=8)
        assert all(np.array_equal(x.cos_coeffs, y.cos_coeffs) and np.array_equal(x.sin_coeffs, y.sin_coeffs) for x, y in zip(a, b))
        assert not np.array_equal(a[0].cos_coeffs, c[0].cos_coeffs)

    @pytest.mark.parametrize("order", [1, 2, 6])
    def test_second_moment(self, order):
        d = 2 * order
        r2 = (unit_ball_coeffs(d, 10_000, seed=0) ** 2).sum(axis=1)
        # r**2 = u**(2/d): mean d/(d+2), variance from E[r**4] = d/(d+4)
        sd = math.sqrt(d / (d + 4) - (d / (d + 2)) ** 2)
        assert abs(r2.mean() - d / (d + 2)) <= 3 * sd / math.sqrt(10_000)

    def test_direction_isotropic(self):
        x = unit_ball_coeffs(4, 20_000, seed=5)
        assert np.allclose(x.mean(axis=0), 0, atol=0.02)

    def test_bad_sizes(self):
        with pytest.raises(DomainError):
            unit_ball_coeffs(0, 5, 0)
        with pytest.raises(DomainError):
            unit_ball_coeffs(3, 0, 0)


class TestPairwise:
    def test_self_distance_zero(self, p53, backend):
        f = RkhsFunction(p53, [0.3, -0.2], [0.1, 0.4])
        lo, hi = pairwise_sup_distances([f, f], 501)
        assert np.array_equal(lo, np.zeros((2, 2))) and np.array_equal(hi, np.zeros((2, 2)))

    def test_psi0_against_negation(self, p53, backend):
        f = basis_function(p53, 0)
        lo, hi = pairwise_sup_distances([f, -f], 10001)
        assert lo[0, 1] == pytest.approx(2.0, abs=1e-15)
        assert lo[0, 1] <= 2.0 <= hi[0, 1]

    def test_matches_sup_norm_bracket(self, p92, rng, backend):
        fs = [RkhsFunction(p92, rng.normal(size=4), rng.normal(size=4)) for _ in range(6)]
        lo, hi = pairwise_sup_distances(fs, 777)
        for i, j in itertools.combinations(range(6), 2):
            ref = sup_norm_bracket(fs[i] - fs[j], 777)
            assert lo[i, j] == pytest.approx(ref[0], abs=1e-13)
            assert hi[i, j] == pytest.approx(ref[1], rel=1e-12)
        assert np.array_equal(lo, lo.T)

    def test_tightens_with_grid(self, p53, backend):
        fs = sample_unit_ball(p53, 3, 12, seed=2)
        prev = None
        for g in (251, 501, 1001, 2001):
            lo, hi = pairwise_sup_distances(fs, g)
            if prev is not None:
                assert np.all(hi - lo <= prev + 1e-15)
                assert np.all(hi <= prev_hi + 1e-12)
            prev, prev_hi = hi - lo, hi

    def test_mismatch(self, p53, p92):
        with pytest.raises(ParamMismatchError):
            pairwise_sup_distances([basis_function(p53, 0), basis_function(p92, 0)], 11)

    def test_workers_do_not_change_result(self, p53):
        fs = sample_unit_ball(p53, 2, 60, seed=0)
        one = pairwise_sup_distances(fs, 301, workers=1)
        three = pairwise_sup_distances(fs, 301, workers=3)
        assert np.array_equal(one[0], three[0]) and np.array_equal(one[1], three[1])


class TestGreedy:
    def test_single(self):
        assert greedy_packing([[0.0]], 123.0).cardinality == 1

    def test_two_points(self):
        d = [[0.0, 1.0], [1.0, 0.0]]
        assert greedy_packing(d, 0.4).cardinality == 2
        assert greedy_packing(d, 0.6).cardinality == 1
        # strict: distance exactly 2 eps is not enough
        assert greedy_packing(d, 0.5).cardinality == 1

    def test_farthest_first_tiebreak(self):
        # points on a line at 0, 1, 3, 3
        x = np.array([0.0, 1.0, 3.0, 3.0])
        d = np.abs(x[:, None] - x[None, :])
        res = greedy_packing(d, 0.4)
        assert res.center_indices == (0, 2, 1)

    def test_separation_respected(self, rng):
        pts = rng.uniform(size=(80, 2))
        d = np.max(np.abs(pts[:, None] - pts[None]), axis=-1)
        res = greedy_packing(d, 0.1)
        idx = np.array(res.center_indices)
        sub = d[np.ix_(idx, idx)]
        assert np.all(sub[~np.eye(idx.size, dtype=bool)] > 0.2)
        assert res.cardinality == len(res.center_indices)

    @given(st.integers(1, 40), st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_non_increasing_in_eps(self, n, seed):
        pts = np.random.default_rng(seed).uniform(size=(n, 3))
        d = np.max(np.abs(pts[:, None] - pts[None]), axis=-1)
        cards = [greedy_packing(d, e).cardinality for e in np.linspace(0.0, 0.6, 25)]
        assert all(x >= y for x, y in zip(cards, cards[1:]))

    def test_bad_shapes(self):
        with pytest.raises(DomainError):
            greedy_packing(np.zeros((2, 3)), 0.1)
        with pytest.raises(DomainError):
            greedy_packing([[0.0, 1.0], [2.0, 0.0]], 0.1)


class TestLatticeCount:
    def test_brute_force_small(self):
        # enumerate every grid cell meeting the unit disc
        for p in ([0.3, 0.45], [0.7, 0.2], [0.25, 0.25, 0.6]):
            p = np.asarray(p)
            spans = [np.arange(-math.floor(1 / q + 0.5), math.floor(1 / q + 0.5) + 1) for q in p]
            k = np.array(list(itertools.product(*spans)), dtype=float)
            exact = int(np.count_nonzero(net_levels(k, p) <= 1.0))
            ln, method = lattice_cells_ln(p)
            assert method == "quantized"
            assert math.log(exact) <= ln + 1e-12
            assert ln <= math.log(exact) + 0.05

    def test_volume_bound_dominates(self):
        p = np.array([0.2, 0.3, 0.25, 0.4])
        assert lattice_cells_ln(p)[0] <= lattice_cells_volume_ln(p)

    def test_large_counts_do_not_overflow(self):
        ln, _ = lattice_cells_ln(np.full(16, 1e-3))
        assert math.isfinite(ln) and ln > 100


class TestConstructiveCover:
    @pytest.mark.parametrize("eps", [2.5, 1.0, 0.5, 0.2, 0.1])
    def test_within_upper_bound(self, p53, eps):
        cover = constructive_cover(p53, eps)
        assert cover.cover_size_ln <= upper_ln_cover(p53, eps)
        assert cover.cover_size_ln <= cover.budget_ln
        assert cover.tail_radius <= eps / 2
        assert cover.dimension == 2 * cover.order

    def test_head_rounding_radius(self, p92):
        eps = 0.7
        cover = constructive_cover(p92, eps)
        n = cover.order
        w = np.sqrt(0.9) ** np.arange(n)
        p = np.asarray(cover.pitches)
        # worst-case sup error of rounding, per coefficient a**(n/2) * pitch / 2, added in quadrature over cos/sin
        worst = float(np.sum(w * np.hypot(p[:n], p[n:]) / 2))
        assert worst <= eps / 2 * (1 + 1e-12)

    def test_single_ball(self, p53):
        cover = constructive_cover(p53, 2 * math.sqrt(2))
        assert cover.cover_size_ln == 0.0 and cover.dimension == 0
        assert constructive_cover(p53, 10.0).cover_size_ln == 0.0

    def test_bad_eps(self, p53):
        with pytest.raises(DomainError):
            constructive_cover(p53, -1.0)

    def test_pitch_layout(self, p53):
        p = cover_pitches(p53, 0.4, 3)
        assert p.shape == (6,)
        assert np.array_equal(p[:3], p[3:])
        assert np.allclose(p[1:3] / p[:2], math.sqrt(2))

    @pytest.mark.parametrize("eps", [2.8, 2.4, 2.0])
    def test_coverage_n1(self, p53, eps):
        cover = constructive_cover(p53, eps)
        assert cover.order == 1
        res = coverage_check(p53, cover, 5000, seed=11)
        assert res.rate == 1.0 and res.worst_distance <= eps

    def test_coverage_n2(self, p92):
        eps = mu(p92, 2) + mu(p92, 1)
        cover = constructive_cover(p92, eps)
        assert cover.order == 2
        res = coverage_check(p92, cover, 5000, seed=12)
        assert res.rate == 1.0

    def test_coverage_counts_far_points(self, p53):
        # checking a too-coarse eps against a finer net's description must fail some samples
        cover = constructive_cover(p53, 2.0)
        shrunk = type(cover)(**{**cover.__dict__, "eps": 0.3})
        assert coverage_check(p53, shrunk, 2000, seed=0).rate < 1.0

    def test_zero_order_cover(self, p53):
        cover = constructive_cover(p53, 3.0)
        assert coverage_check(p53, cover, 1000, seed=0).rate == 1.0


class TestReport:
    def test_small_report(self, p53):
        rows = empirical_report(p53, [1.0, 0.5, 0.2], order=2, samples=150, grid_count=1001, seed=4)
        for r in rows:
            row = r.as_row()
            assert tuple(row) == EMPIRICAL_COLUMNS
            assert row["empirical_lower_ln"] <= row["upper_ln_cover"]
            assert row["cover_size_ln"] <= row["upper_ln_cover"]
            assert r.packing.cardinality >= 1
        cards = [r.packing.cardinality for r in rows]
        assert cards == sorted(cards)

    def test_reproducible(self, p53):
        a = [r.as_row() for r in empirical_report(p53, [0.5], 3, 100, 501, 9)]
        b = [r.as_row() for r in empirical_report(p53, [0.5], 3, 100, 501, 9)]
        assert a == b

    def test_degenerate_eps(self, p53):
        row = empirical_report(p53, [5.0], 2, 50, 201, 0)[0]
        assert row.packing.cardinality == 1 and row.empirical_lower_ln == 0.0

    def test_single_sample(self, p53):
        rows = empirical_report(p53, [1.0, 0.1], 3, 1, 201, 0)
        assert [r.packing.cardinality for r in rows] == [1, 1]

    def test_caps(self, p53):
        with pytest.raises(DomainError, match="2\\*N"):
            empirical_report(p53, [0.5], 9, 10, 101, 0)
        with pytest.raises(DomainError):
            empirical_report(p53, [0.5], 2, 0, 101, 0)
        with pytest.raises(DomainError):
            empirical_report(p53, [0.5], 2, 100_001, 101, 0)
