"""The Weierstrass function ``w(x) = sum_n a**n cos(b**n pi x)`` and the kernel ``W(x, y) = w(x - y)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

from . import _backend
from .errors import DomainError

DEFAULT_TOL = 1e-10
A_MAX = 0.999


@dataclass(frozen=True)
class WeierstrassParams:
    """Validated amplitude ratio ``a`` and integer frequency base ``b``.

    Construct through :func:`make_params`; the constructor itself re-checks
    the constraints so an invalid instance can never exist.
    """

    a: float
    b: int

    def __post_init__(self):
        problems = _violations(self.a, self.b)
        if problems:
            raise DomainError("invalid parameters: " + "; ".join(problems))

    @property
    def embedding_norm_sq(self) -> float:
        return 1.0 / (1.0 - self.a)


@dataclass(frozen=True)
class TruncationPlan:
    order: int
    tail_bound: float


def _violations(a, b) -> list[str]:
    problems = []
    try:
        a = float(a)
    except (TypeError, ValueError):
        return [f"a must be a real number (got {a!r})"]
    if not (0.0 < a < 1.0):
        problems.append(f"0 < a < 1 required (got a={a!r})")
    elif a > A_MAX:
        problems.append(f"a <= {A_MAX} required to keep truncation orders bounded (got a={a!r})")
    integral = isinstance(b, Integral) or (isinstance(b, float) and b.is_integer())
    if not integral:
        problems.append(f"b must be an integer (got b={b!r})")
    if 0.0 < a < 1.0 and integral and a * b < 1.0:
        problems.append(f"ab >= 1 violated (a*b={a * b!r})")
    if integral and b < 2:
        problems.append(f"b >= 2 required (got b={b!r})")
    return problems


def make_params(a: float, b: int) -> WeierstrassParams:
    """Validate ``(a, b)``: ``0 < a < 1``, integer ``b >= 2`` and ``a*b >= 1``.

    >>> make_params(0.5, 3)
    WeierstrassParams(a=0.5, b=3)
    """
    problems = _violations(a, b)
    if problems:
        raise DomainError("invalid parameters: " + "; ".join(problems))
    return WeierstrassParams(float(a), int(b))


def tail_bound(params: WeierstrassParams, order: int) -> float:
    """Geometric remainder ``a**order / (1 - a)`` of the series after ``order`` terms."""
    return params.a**order / (1.0 - params.a)


def truncation_order(params: WeierstrassParams, tol: float = DEFAULT_TOL) -> TruncationPlan:
    """Smallest ``N >= 1`` whose geometric tail ``a**N / (1 - a)`` is at most ``tol``."""
    if not (tol > 0.0) or not math.isfinite(tol):
        raise DomainError(f"tol must be a positive finite real (got {tol!r})")
    a = params.a
    # closed-form guess, then walk to the exact minimum
    guess = math.log(tol * (1.0 - a)) / math.log(a)
    n = max(1, math.floor(guess) - 1)
    while tail_bound(params, n) > tol:
        n += 1
    while n > 1 and tail_bound(params, n - 1) <= tol:
        n -= 1
    return TruncationPlan(n, tail_bound(params, n))


def partial_sum(params: WeierstrassParams, x, order: int) -> np.ndarray:
    """``sum_{n < order} a**n cos(b**n pi x)`` with exact reduction of the phase ``b**n x mod 2``.

    Accepts finite scalars or arrays; always returns an ndarray of ``np.shape(x)``.
    Evaluated at ``|x|`` so evenness holds term by term.
    """
    if order < 0:
        raise DomainError(f"order must be >= 0 (got {order})")
    arr = np.abs(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"x must be finite (got {x!r})")
    vals = _backend.cos_series(arr.ravel(), params.a, params.b, int(order))
    return np.asarray(vals).reshape(arr.shape)


def eval_weierstrass(params: WeierstrassParams, x, tol: float = DEFAULT_TOL):
    """Weierstrass function truncated so the result is within ``tol`` of the full series."""
    plan = truncation_order(params, tol)
    out = partial_sum(params, x, plan.order)
    return float(out) if out.ndim == 0 else out


def _check_interval(name: str, v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if not np.all(np.abs(arr) <= 1.0):
        raise DomainError(f"{name} must lie in I = [-1, 1] (got {v!r})")
    return arr


def eval_kernel(params: WeierstrassParams, x, y, tol: float = DEFAULT_TOL):
    """``W(x, y) = w(x - y)`` for ``x, y`` in ``[-1, 1]``."""
    xa = _check_interval("x", x)
    ya = _check_interval("y", y)
    return eval_weierstrass(params, xa - ya, tol)


def gram_matrix(params: WeierstrassParams, points, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Kernel matrix ``G[i, j] = W(x_i, x_j)``; duplicates allowed (the matrix is then singular)."""
    pts = _check_interval("points", np.asarray(points, dtype=np.float64).ravel())
    m = pts.size
    iu, ju = np.triu_indices(m)
    upper = eval_weierstrass(params, pts[iu] - pts[ju], tol)
    gram = np.empty((m, m))
    gram[iu, ju] = upper
    gram[ju, iu] = upper
    return gram
