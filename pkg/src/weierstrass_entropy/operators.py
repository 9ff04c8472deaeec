"""Norms of the embedding ``I_W: H_W -> C(I)`` and of its head/tail projections."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernel import WeierstrassParams, truncation_order
from .rkhs import RkhsFunction, evaluate, grid, kernel_section, rkhs_norm


@dataclass(frozen=True)
class ProjectionSplit:
    """Squared norms of ``I_W`` restricted to the first ``order`` frequencies and to the rest."""

    params: WeierstrassParams
    order: int
    head_norm_sq: float
    tail_norm_sq: float
    mu: float


def embedding_norm_sq(params: WeierstrassParams) -> float:
    return 1.0 / (1.0 - params.a)


def projection_split(params: WeierstrassParams, order: int) -> ProjectionSplit:
    if order < 1:
        raise DomainError(f"projection order must be >= 1 (got {order})")
    a = params.a
    tail = a**order / (1.0 - a)
    head = (1.0 - a**order) / (1.0 - a)
    return ProjectionSplit(params, order, head, tail, math.sqrt(tail))


def mu(params: WeierstrassParams, order: int) -> float:
    """Tail norm ``(a**N / (1 - a))**(1/2)``; ``order = 0`` gives ``||I_W||``."""
    if order < 0:
        raise DomainError(f"order must be >= 0 (got {order})")
    return math.sqrt(params.a**order / (1.0 - params.a))


def apply_head_projection(f: RkhsFunction, order: int) -> RkhsFunction:
    """Keep frequencies ``n < order`` (the table length is preserved)."""
    if order < 1:
        raise DomainError(f"projection order must be >= 1 (got {order})")
    c = f.cos_coeffs.copy()
    d = f.sin_coeffs.copy()
    c[order:] = 0.0
    d[order:] = 0.0
    return RkhsFunction(f.params, c, d)


def apply_tail_projection(f: RkhsFunction, order: int) -> RkhsFunction:
    """Keep frequencies ``n >= order``; the complement of :func:`apply_head_projection`."""
    if order < 1:
        raise DomainError(f"projection order must be >= 1 (got {order})")
    c = f.cos_coeffs.copy()
    d = f.sin_coeffs.copy()
    c[:order] = 0.0
    d[:order] = 0.0
    return RkhsFunction(f.params, c, d)


def extremal_head(params: WeierstrassParams, order: int) -> RkhsFunction:
    """Unit-norm maximizer of ``|f(0)|`` over the head subspace: the normalized kernel section at 0."""
    section = kernel_section(params, 0.0, order)
    return section / rkhs_norm(section)


def extremal_tail(params: WeierstrassParams, order: int, tol: float = 1e-10) -> RkhsFunction:
    """Unit-norm tail function with cosine coefficients ``~ a**(n/2)`` for ``order <= n < M``.

    ``M`` extends ``order`` by the truncation order for ``tol``, so the
    neglected tail of the tail is again geometric and below ``tol``.
    """
    if order < 1:
        raise DomainError(f"projection order must be >= 1 (got {order})")
    stop = order + truncation_order(params, tol).order
    n = np.arange(stop, dtype=np.float64)
    c = np.where(n >= order, np.sqrt(params.a) ** n, 0.0)
    c /= np.linalg.norm(c)
    return RkhsFunction(params, c, np.zeros(stop))


def attained_norms(params: WeierstrassParams, order: int, grid_count: int = 2001) -> tuple[float, float]:
    """Largest ``|f(x)|`` of the two extremal functions over ``x = 0`` plus a coarse sweep of ``I``.

    These lower-bound ``||I_W P_U||`` and ``||I_W P_V||`` and approach the
    closed forms of :func:`projection_split`.
    """
    pts = np.union1d(grid(grid_count), [0.0])
    head = float(np.max(np.abs(evaluate(extremal_head(params, order), pts))))
    tail = float(np.max(np.abs(evaluate(extremal_tail(params, order), pts))))
    return head, tail
