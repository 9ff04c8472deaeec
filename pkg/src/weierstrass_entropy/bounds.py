"""Analytic bounds on the metric entropy ``ln C(eps, I_W)`` (all values in nats).

Upper bound: split ``I_W`` into the first ``N`` frequencies (rank ``2N``) and
a tail of norm ``mu_N <= eps/2``, then bound the finite-rank part
volumetrically.  Lower bound: the ``2n``-dimensional Gram determinant
``a**(n(n-1))`` of the basis in ``L2`` together with ``||L2 <- C|| = sqrt(2)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateError, DomainError
from .kernel import WeierstrassParams
from .rkhs import basis_function, basis_values, l2_inner, quadrature_rule

BOUND_COLUMNS = (
    "eps",
    "N_eps",
    "upper_ln_cover",
    "lower_ln_cover",
    "n_star",
    "envelope_low",
    "envelope_high",
    "phi",
    "upper_ratio",
    "lower_ratio",
)

_TINY = 1e-290


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (eps > 0.0) or not math.isfinite(eps):
        raise DomainError(f"eps must be a positive finite real (got {eps!r})")
    return eps


def tail_within(params: WeierstrassParams, order: int, half_eps: float) -> bool:
    """Whether ``mu_order <= half_eps``, compared on squares (in logs once powers underflow)."""
    a = params.a
    tail_sq = a**order / (1.0 - a)
    target = half_eps * half_eps
    if tail_sq > _TINY and target > _TINY:
        return tail_sq <= target
    return order * math.log(a) - math.log1p(-a) <= 2.0 * math.log(half_eps)


def choose_truncation(params: WeierstrassParams, eps: float) -> int:
    """The unique ``N >= 1`` with ``mu_N <= eps/2 < mu_{N-1}``."""
    eps = _check_eps(eps)
    half = 0.5 * eps
    if tail_within(params, 0, half):
        raise DomainError(
            f"eps={eps!r} >= 2*||I_W|| = {2.0 / math.sqrt(1.0 - params.a)!r}: "
            "no truncation sandwich exists (the cover is a single ball)"
        )
    a = params.a
    guess = (2.0 * math.log(half) + math.log1p(-a)) / math.log(a)
    n = max(1, math.ceil(guess))
    while not tail_within(params, n, half):
        n += 1
    while n > 1 and tail_within(params, n - 1, half):
        n -= 1
    return n


def upper_ln_cover(params: WeierstrassParams, eps: float, tight: bool = False) -> float:
    """``2N ln(1 + (4/eps) ||I_W||)`` with ``N = choose_truncation(eps)``.

    ``tight=True`` replaces ``||I_W||`` by the head norm ``((1 - a**N)/(1 - a))**(1/2)``.
    """
    n = choose_truncation(params, eps)
    a = params.a
    scale = (1.0 - a**n) / (1.0 - a) if tight else 1.0 / (1.0 - a)
    return 2.0 * n * math.log1p(4.0 / eps * math.sqrt(scale))


def lower_objective(params: WeierstrassParams, eps: float, n: int) -> float:
    """``ln(a**(n**2/2) / (2 eps**2)**n)``."""
    return 0.5 * n * n * math.log(params.a) - n * math.log(2.0 * eps * eps)


def lower_ln_cover(params: WeierstrassParams, eps: float, window: int = 2) -> tuple[float, int]:
    """Best Gram-determinant lower bound over ``n`` within ``window`` of ``ceil(beta)``.

    ``beta = 2 ln(sqrt(2) eps) / ln a``.  Returns ``(value, n_star)``; ties go
    to the smaller ``n``.  Raises :class:`DegenerateError` when the best
    value is not positive.
    """
    eps = _check_eps(eps)
    beta = 2.0 * math.log(math.sqrt(2.0) * eps) / math.log(params.a)
    centre = math.ceil(beta)
    best_n, best = None, -math.inf
    for n in range(max(1, centre - window), max(1, centre + window) + 1):
        value = lower_objective(params, eps, n)
        if value > best:
            best_n, best = n, value
    if not best > 0.0:
        raise DegenerateError(f"lower bound is non-informative at eps={eps!r} (best ln C >= {best!r})")
    return best, best_n


def l2_basis_gram(params: WeierstrassParams, n: int, method: str = "analytic") -> np.ndarray:
    """``<psi_j, psi_l>_2`` for ``j, l < 2n`` by the closed-form inner product or by quadrature."""
    if n < 1:
        raise DomainError(f"n must be >= 1 (got {n})")
    if method == "analytic":
        basis = [basis_function(params, j) for j in range(2 * n)]
        return np.array([[l2_inner(f, g) for g in basis] for f in basis])
    if method == "quadrature":
        nodes, weights = quadrature_rule(2.0 * math.pi * params.b ** (n - 1))
        cos_w, sin_w = basis_values(params, nodes, n)
        cols = np.empty((nodes.size, 2 * n))
        cols[:, 0::2] = cos_w
        cols[:, 1::2] = sin_w
        return cols.T @ (weights[:, None] * cols)
    raise ValueError(f"unknown method {method!r}")


def gram_det_certificate(params: WeierstrassParams, n: int, method: str = "analytic") -> tuple[float, float]:
    """``(a**(n(n-1)), det <psi_j, psi_l>_2)`` for the first ``2n`` basis functions."""
    analytic = params.a ** (n * (n - 1))
    numeric = float(np.linalg.det(l2_basis_gram(params, n, method)))
    return analytic, numeric


def envelope(params: WeierstrassParams) -> tuple[float, float]:
    """Asymptotic constants ``(2/ln(1/a), 4/ln(1/a))`` for ``ln C / ln(1/eps)**2``."""
    inv = -math.log(params.a)
    return 2.0 / inv, 4.0 / inv


@dataclass(frozen=True)
class BoundReport:
    eps: float
    N_eps: int
    upper_ln_cover: float
    lower_ln_cover: float | None
    n_star: int | None
    envelope_low: float
    envelope_high: float
    phi: float

    @property
    def upper_ratio(self) -> float | None:
        return self.upper_ln_cover / self.phi if self.phi > 0.0 else None

    @property
    def lower_ratio(self) -> float | None:
        if self.lower_ln_cover is None or self.phi == 0.0:
            return None
        return self.lower_ln_cover / self.phi

    def as_row(self) -> dict:
        row = asdict(self)
        row["upper_ratio"] = self.upper_ratio
        row["lower_ratio"] = self.lower_ratio
        return {key: row[key] for key in BOUND_COLUMNS}


def bound_report(params: WeierstrassParams, eps: float, tight: bool = False) -> BoundReport:
    """Both bounds at one ``eps``.

    Beyond the truncation sandwich (``eps >= 2 ||I_W||``) the whole image lies
    in one ball, so ``N_eps = 0`` and the upper bound is exactly 0.  A
    non-informative lower bound is reported as ``None``.
    """
    eps = _check_eps(eps)
    try:
        n_eps = choose_truncation(params, eps)
        upper = upper_ln_cover(params, eps, tight)
    except DomainError:
        n_eps, upper = 0, 0.0
    try:
        lower, n_star = lower_ln_cover(params, eps)
    except DegenerateError:
        lower, n_star = None, None
    low, high = envelope(params)
    return BoundReport(eps, n_eps, upper, lower, n_star, low, high, math.log(eps) ** 2)


def bound_table(params: WeierstrassParams, eps_list, tight: bool = False) -> list[BoundReport]:
    return [bound_report(params, eps, tight) for eps in eps_list]
