"""Empirical brackets for the covering numbers of ``I_W``.

Lower side: a greedy packing of sampled unit-ball functions whose certified
(grid) sup-distances exceed ``2 eps``; since ``M(2 eps) <= C(eps)`` its log
cardinality lower-bounds ``ln C(eps, I_W)``.

Upper side: an explicit net.  Head coefficients are rounded to a grid of
pitch ``delta``; the tail is covered by the zero function because its norm
is at most ``mu_N <= eps/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import gammaln

from . import _backend
from .bounds import BOUND_COLUMNS, BoundReport, bound_report, choose_truncation
from .errors import DomainError, ParamMismatchError
from .kernel import WeierstrassParams
from .operators import mu, projection_split
from .rkhs import RkhsFunction, basis_values, basis_weights, grid

EMPIRICAL_COLUMNS = BOUND_COLUMNS + ("empirical_lower_ln", "cover_size_ln", "samples", "grid_count", "seed")
MAX_DIMENSION = 16
MAX_SAMPLES = 100_000
LEVEL_RESOLUTION = 20_000
# quantized lattice counting while (cells per axis summed) x resolution stays below this
EXACT_COUNT_WORK = 200_000_000


@dataclass(frozen=True)
class PackingResult:
    center_indices: tuple[int, ...]
    separation: float
    cardinality: int


@dataclass(frozen=True)
class CoverDescription:
    """An explicit ``eps``-net for ``I_W(B_{H_W})`` in ``C(I)``.

    ``cover_size_ln`` is the natural log of (an upper bound on) the number of
    centres; ``net_spacing`` is the pitch of the lowest frequency and
    ``pitches`` lists all ``2N`` of them.
    ``budget_ln`` is the volumetric allowance ``2N ln(1 + 2 ||I_W P_U^N|| / (eps/2))``
    for covering the rank-``2N`` head at radius ``eps/2``.
    """

    eps: float
    order: int
    net_spacing: float
    pitches: tuple[float, ...]
    dimension: int
    cover_size_ln: float
    tail_radius: float
    head_radius: float
    budget_ln: float
    count_method: str


def unit_ball_coeffs(dimension: int, count: int, seed: int) -> np.ndarray:
    """``count`` points uniform in the Euclidean unit ball of ``R^dimension`` (rows)."""
    if dimension < 1 or count < 1:
        raise DomainError(f"dimension and count must be >= 1 (got {dimension}, {count})")
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal((count, dimension))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    radius = rng.random(count) ** (1.0 / dimension)
    return direction * radius[:, None]


def sample_unit_ball(params: WeierstrassParams, order: int, count: int, seed: int) -> list[RkhsFunction]:
    """Functions with ``order`` frequencies drawn uniformly from the RKHS unit ball (``2*order`` coefficients)."""
    coeffs = unit_ball_coeffs(2 * order, count, seed)
    return [RkhsFunction(params, row[:order], row[order:]) for row in coeffs]


def _stack(functions: list[RkhsFunction]) -> tuple[WeierstrassParams, np.ndarray, np.ndarray]:
    if not functions:
        raise DomainError("need at least one function")
    params = functions[0].params
    for f in functions:
        if f.params != params:
            raise ParamMismatchError(f"functions built from different parameters: {params} vs {f.params}")
    order = max(f.order for f in functions)
    cos = np.zeros((len(functions), order))
    sin = np.zeros((len(functions), order))
    for i, f in enumerate(functions):
        cos[i, : f.order] = f.cos_coeffs
        sin[i, : f.order] = f.sin_coeffs
    return params, cos, sin


def grid_values(params: WeierstrassParams, cos: np.ndarray, sin: np.ndarray, grid_count: int) -> np.ndarray:
    """Values of each coefficient row on the uniform grid, shape ``(rows, grid_count)``."""
    cos_w, sin_w = basis_values(params, grid(grid_count), cos.shape[1])
    return cos @ cos_w.T + sin @ sin_w.T


def _lipschitz_scale(params: WeierstrassParams, order: int) -> np.ndarray:
    n = np.arange(order, dtype=np.float64)
    return math.pi * basis_weights(params, order) * float(params.b) ** n


def pairwise_sup_distances(
    functions: list[RkhsFunction], grid_count: int, workers: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """``(lower, upper)`` brackets on ``||f_i - f_j||_inf`` for all pairs.

    ``lower`` is the grid maximum of ``|f_i - f_j|``; ``upper`` adds half a
    grid spacing times the derivative bound of ``f_i - f_j``.
    """
    params, cos, sin = _stack(functions)
    values = grid_values(params, cos, sin, grid_count)
    lower = _backend.pairwise_chebyshev(values, workers)
    scale = _lipschitz_scale(params, cos.shape[1])
    weighted = np.hstack([cos * scale, sin * scale])
    lipschitz = cdist(weighted, weighted, "cityblock")
    h = 2.0 / (grid_count - 1)
    return lower, lower + 0.5 * h * lipschitz


def greedy_packing(distance_lowers, eps: float) -> PackingResult:
    """Farthest-point-first selection of centres pairwise more than ``2 eps`` apart.

    Starts from index 0 and repeatedly adds the point farthest from the
    current centres while that distance exceeds ``2 eps``; ``argmax`` ties go
    to the smallest index.
    """
    dist = np.asarray(distance_lowers, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise DomainError(f"distance matrix must be square (got shape {dist.shape})")
    if not np.array_equal(dist, dist.T):
        raise DomainError("distance matrix must be symmetric")
    threshold = 2.0 * eps
    if dist.shape[0] == 0:
        return PackingResult((), threshold, 0)
    chosen = [0]
    nearest = dist[0].copy()
    nearest[0] = -np.inf
    while True:
        j = int(np.argmax(nearest))
        if not nearest[j] > threshold:
            break
        chosen.append(j)
        np.minimum(nearest, dist[j], out=nearest)
        nearest[chosen] = -np.inf
    return PackingResult(tuple(chosen), threshold, len(chosen))


def cover_pitches(params: WeierstrassParams, eps: float, order: int) -> np.ndarray:
    """Rounding pitch for each of the ``2 * order`` head coefficients (cosines then sines).

    Rounding moves coefficient ``n`` by at most half its pitch, changing the
    function by at most ``a**(n/2) pitch_n / sqrt(2)`` in sup norm.  Pitches
    ``kappa * a**(-n/2)`` minimize cell volume for a total ``eps/2``.
    """
    growth = params.a ** (-0.5 * np.arange(order, dtype=np.float64))
    kappa = 0.5 * eps * math.sqrt(2.0) / order
    return np.concatenate([kappa * growth, kappa * growth])


def net_levels(k: np.ndarray, pitches: np.ndarray) -> np.ndarray:
    """Squared distance from the origin to each grid cell ``pitches * k`` (rows of ``k``)."""
    gap = np.maximum(np.abs(k) - 0.5, 0.0) * pitches
    return (gap * gap).sum(axis=-1)


def lattice_cells_ln(pitches: np.ndarray, resolution: int = LEVEL_RESOLUTION) -> tuple[float, str]:
    """ln of an upper bound on the number of grid cells meeting the unit ball.

    Per-axis squared gaps are rounded down to multiples of ``1/resolution``
    and convolved, which counts a superset of the meeting cells.  When that
    is too expensive, meeting cells are bounded by volume instead: each lies
    in the ball of radius ``1 + |pitches|``.
    """
    pitches = np.asarray(pitches, dtype=np.float64)
    d = pitches.size
    if d == 0:
        return 0.0, "exact"
    spans = np.floor(1.0 / pitches + 0.5).astype(np.int64)
    if int(spans.sum()) * resolution <= EXACT_COUNT_WORK:
        counts = None
        log_scale = 0.0
        for pitch, span in zip(pitches, spans):
            levels = np.zeros(resolution + 1)
            levels[0] = 1.0
            k = np.arange(1, span + 1)
            gap = (pitch * (k - 0.5)) ** 2
            gap = gap[gap <= 1.0]
            np.add.at(levels, np.floor(gap * resolution).astype(np.int64), 2.0)
            if counts is None:
                counts = levels
                continue
            nxt = np.zeros_like(counts)
            for s in np.flatnonzero(levels):
                nxt[s:] += levels[s] * counts[: resolution + 1 - s]
            # renormalize so counts far beyond the float range stay representable
            top = nxt.max()
            log_scale += math.log(top)
            counts = nxt / top
        return float(log_scale + math.log(counts.sum())), "quantized"
    return lattice_cells_volume_ln(pitches), "volume"


def lattice_cells_volume_ln(pitches) -> float:
    pitches = np.asarray(pitches, dtype=np.float64)
    d = pitches.size
    log_ball = 0.5 * d * math.log(math.pi) - gammaln(0.5 * d + 1.0)
    diag = float(np.linalg.norm(pitches))
    return float(log_ball + d * math.log1p(diag) - np.log(pitches).sum())


def constructive_cover(params: WeierstrassParams, eps: float) -> CoverDescription:
    """Explicit net: rounded head coefficients for ``N = choose_truncation(eps)``, tail covered by zero."""
    try:
        order = choose_truncation(params, eps)
    except DomainError:
        if not eps >= 2.0 * mu(params, 0):
            raise
        # the whole image fits in the ball around 0
        return CoverDescription(eps, 0, math.inf, (), 0, 0.0, mu(params, 0), 0.0, 0.0, "exact")
    pitches = cover_pitches(params, eps, order)
    size_ln, method = lattice_cells_ln(pitches)
    head_norm = math.sqrt(projection_split(params, order).head_norm_sq)
    dim = 2 * order
    budget = dim * math.log1p(2.0 * head_norm / (0.5 * eps))
    return CoverDescription(
        eps, order, float(pitches[0]), tuple(pitches.tolist()), dim, size_ln, mu(params, order), 0.5 * eps, budget, method
    )


@dataclass(frozen=True)
class CoverageResult:
    samples: int
    covered: int
    worst_distance: float

    @property
    def rate(self) -> float:
        return self.covered / self.samples


def coverage_check(
    params: WeierstrassParams,
    cover: CoverDescription,
    samples: int,
    seed: int,
    grid_count: int = 2001,
    extra_terms: int = 8,
    chunk: int = 4096,
) -> CoverageResult:
    """Sample the unit ball with ``extra_terms`` tail frequencies and certify each lies within ``eps`` of the net.

    The distance to the rounded head is bracketed on the grid (upper end);
    the tail is bounded by Cauchy-Schwarz, ``||t|| (sum_{N<=n<M} a**n)**(1/2)``.
    """
    n = cover.order
    total = n + extra_terms
    coeffs = unit_ball_coeffs(2 * total, samples, seed)
    cos, sin = coeffs[:, :total], coeffs[:, total:]
    tail_norm = np.sqrt((cos[:, n:] ** 2 + sin[:, n:] ** 2).sum(axis=1))
    tail_gain = math.sqrt(float((params.a ** np.arange(n, total)).sum()))
    tail_sup = tail_norm * tail_gain
    if n == 0:
        head_sup = np.zeros(samples)
    else:
        head = np.hstack([cos[:, :n], sin[:, :n]])
        pitches = np.asarray(cover.pitches)
        k = np.rint(head / pitches)
        if np.any(net_levels(k, pitches) > 1.0):
            raise AssertionError("rounded centre fell outside the net")
        diff = head - k * pitches
        scale = _lipschitz_scale(params, n)
        lipschitz = np.abs(diff) @ np.concatenate([scale, scale])
        h = 2.0 / (grid_count - 1)
        head_sup = np.empty(samples)
        for s in range(0, samples, chunk):
            vals = grid_values(params, diff[s : s + chunk, :n], diff[s : s + chunk, n:], grid_count)
            head_sup[s : s + chunk] = np.abs(vals).max(axis=1)
        head_sup += 0.5 * h * lipschitz
    dist = head_sup + tail_sup
    return CoverageResult(samples, int(np.count_nonzero(dist <= cover.eps)), float(dist.max()))


@dataclass(frozen=True)
class EmpiricalRow:
    report: BoundReport
    empirical_lower_ln: float
    cover_size_ln: float
    packing: PackingResult
    samples: int
    grid_count: int
    seed: int

    def as_row(self) -> dict:
        row = self.report.as_row()
        row.update(
            empirical_lower_ln=self.empirical_lower_ln,
            cover_size_ln=self.cover_size_ln,
            samples=self.samples,
            grid_count=self.grid_count,
            seed=self.seed,
        )
        return row


def empirical_report(
    params: WeierstrassParams,
    eps_list,
    order: int,
    samples: int,
    grid_count: int,
    seed: int,
    workers: int = 1,
    tight: bool = False,
) -> list[EmpiricalRow]:
    """Analytic bounds next to packing (lower) and explicit-net (upper) estimates for each ``eps``."""
    if 2 * order > MAX_DIMENSION:
        raise DomainError(f"2*N = {2 * order} exceeds the cap {MAX_DIMENSION}; lower --trunc-N")
    if not 1 <= samples <= MAX_SAMPLES:
        raise DomainError(f"samples must be in [1, {MAX_SAMPLES}] (got {samples})")
    functions = sample_unit_ball(params, order, samples, seed)
    lower, _ = pairwise_sup_distances(functions, grid_count, workers)
    rows = []
    for eps in eps_list:
        packing = greedy_packing(lower, eps)
        cover = constructive_cover(params, eps)
        rows.append(
            EmpiricalRow(
                bound_report(params, eps, tight),
                math.log(packing.cardinality),
                cover.cover_size_ln,
                packing,
                samples,
                grid_count,
                seed,
            )
        )
    return rows
