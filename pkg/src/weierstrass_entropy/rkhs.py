"""Elements of the RKHS of the Weierstrass kernel as finite coefficient tables.

A function is stored as ``(c_0..c_{N-1}, d_0..d_{N-1})`` against the
orthonormal system ``a**(n/2) cos(b**n pi x), a**(n/2) sin(b**n pi x)``.
The ``a**(n/2)`` weight is applied at evaluation time, so the RKHS norm is
the Euclidean norm of the table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _backend
from .errors import DomainError, ParamMismatchError
from .kernel import WeierstrassParams, _check_interval, make_params

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).ravel()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class RkhsFunction:
    params: WeierstrassParams
    cos_coeffs: np.ndarray = field(repr=False)
    sin_coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _frozen(self.cos_coeffs)
        d = _frozen(self.sin_coeffs)
        if c.size != d.size or c.size < 1:
            raise DomainError(
                f"cos/sin tables must have equal length >= 1 (got {c.size} and {d.size})"
            )
        object.__setattr__(self, "cos_coeffs", c)
        object.__setattr__(self, "sin_coeffs", d)

    @property
    def order(self) -> int:
        return self.cos_coeffs.size

    def padded(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """Coefficient tables zero-padded (or cut) to ``order`` terms."""
        c = np.zeros(order)
        d = np.zeros(order)
        m = min(order, self.order)
        c[:m] = self.cos_coeffs[:m]
        d[:m] = self.sin_coeffs[:m]
        return c, d

    def _combine(self, other: RkhsFunction, sign: float) -> RkhsFunction:
        _same_params(self, other)
        m = max(self.order, other.order)
        c1, d1 = self.padded(m)
        c2, d2 = other.padded(m)
        return RkhsFunction(self.params, c1 + sign * c2, d1 + sign * d2)

    def __add__(self, other: RkhsFunction) -> RkhsFunction:
        return self._combine(other, 1.0)

    def __sub__(self, other: RkhsFunction) -> RkhsFunction:
        return self._combine(other, -1.0)

    def __mul__(self, scalar: float) -> RkhsFunction:
        return RkhsFunction(self.params, scalar * self.cos_coeffs, scalar * self.sin_coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> RkhsFunction:
        return self * -1.0

    def __truediv__(self, scalar: float) -> RkhsFunction:
        return self * (1.0 / scalar)

    def __call__(self, x):
        return evaluate(self, x)

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": self.params.a,
            "b": self.params.b,
            "cos_coeffs": self.cos_coeffs.tolist(),
            "sin_coeffs": self.sin_coeffs.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RkhsFunction:
        params = make_params(data["a"], data["b"])
        return cls(params, data["cos_coeffs"], data["sin_coeffs"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> RkhsFunction:
        return cls.from_dict(json.loads(text))


def _same_params(f: RkhsFunction, g: RkhsFunction) -> None:
    if f.params != g.params:
        raise ParamMismatchError(f"functions built from different parameters: {f.params} vs {g.params}")


def zero_function(params: WeierstrassParams, order: int = 1) -> RkhsFunction:
    return RkhsFunction(params, np.zeros(order), np.zeros(order))


def basis_function(params: WeierstrassParams, j: int) -> RkhsFunction:
    """``psi_j``: cosine at frequency index ``j // 2`` for even ``j``, sine for odd ``j``."""
    if j < 0:
        raise DomainError(f"basis index must be >= 0 (got {j})")
    k = j // 2
    c = np.zeros(k + 1)
    d = np.zeros(k + 1)
    (c if j % 2 == 0 else d)[k] = 1.0
    return RkhsFunction(params, c, d)


def basis_weights(params: WeierstrassParams, order: int) -> np.ndarray:
    """``a**(n/2)`` for ``n < order``."""
    return np.sqrt(params.a) ** np.arange(order, dtype=np.float64)


def basis_values(params: WeierstrassParams, x, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Weighted basis on points: ``(a**(n/2) cos(b**n pi x), a**(n/2) sin(b**n pi x))``, each ``(len(x), order)``."""
    q = _backend.phase_table(np.asarray(x, dtype=np.float64).ravel(), params.b, order)
    w = basis_weights(params, order)
    return _backend.cospi(q) * w, _backend.sinpi(q) * w


def kernel_section(params: WeierstrassParams, x: float, order: int) -> RkhsFunction:
    """Coefficient table of ``W(x, .)`` truncated to ``order`` frequencies."""
    _check_interval("x", x)
    if order < 1:
        raise DomainError(f"order must be >= 1 (got {order})")
    cos_w, sin_w = basis_values(params, [float(x)], order)
    return RkhsFunction(params, cos_w[0], sin_w[0])


def rkhs_inner(f: RkhsFunction, g: RkhsFunction) -> float:
    _same_params(f, g)
    m = min(f.order, g.order)
    return float(f.cos_coeffs[:m] @ g.cos_coeffs[:m] + f.sin_coeffs[:m] @ g.sin_coeffs[:m])


def rkhs_norm(f: RkhsFunction) -> float:
    return math.sqrt(rkhs_inner(f, f))


def evaluate(f: RkhsFunction, x):
    """Point values ``sum_n a**(n/2) (c_n cos(b**n pi x) + d_n sin(b**n pi x))`` on ``x`` in ``[-1, 1]``."""
    arr = _check_interval("x", x)
    cos_w, sin_w = basis_values(f.params, arr, f.order)
    vals = (cos_w @ f.cos_coeffs + sin_w @ f.sin_coeffs).reshape(arr.shape)
    return float(vals) if vals.ndim == 0 else vals


def l2_inner(f: RkhsFunction, g: RkhsFunction) -> float:
    """Inner product in ``L2([-1, 1], dx)``; distinct frequencies are orthogonal and ``int cos**2 = 1``."""
    _same_params(f, g)
    m = min(f.order, g.order)
    w = f.params.a ** np.arange(m, dtype=np.float64)
    return float(w @ (f.cos_coeffs[:m] * g.cos_coeffs[:m] + f.sin_coeffs[:m] * g.sin_coeffs[:m]))


def quadrature_rule(max_frequency: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite 24-point Gauss-Legendre rule on ``[-1, 1]``, panels narrow enough for ``cos(max_frequency x)``."""
    panels = max(1, math.ceil(max_frequency / 6.0))
    edges = np.linspace(-1.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def l2_inner_quadrature(f: RkhsFunction, g: RkhsFunction) -> float:
    """``L2`` inner product by numerical quadrature of point values (cross-check of :func:`l2_inner`)."""
    _same_params(f, g)
    b = f.params.b
    omega = math.pi * (b ** (f.order - 1) + b ** (g.order - 1))
    nodes, weights = quadrature_rule(omega)
    return float(weights @ (evaluate(f, nodes) * evaluate(g, nodes)))


def derivative_bound(f: RkhsFunction) -> float:
    """Lipschitz constant ``pi sum_n a**(n/2) b**n (|c_n| + |d_n|)`` of the (smooth) truncated series."""
    n = np.arange(f.order, dtype=np.float64)
    scale = basis_weights(f.params, f.order) * float(f.params.b) ** n
    return float(math.pi * scale @ (np.abs(f.cos_coeffs) + np.abs(f.sin_coeffs)))


def grid(grid_count: int) -> np.ndarray:
    if grid_count < 2:
        raise DomainError(f"grid_count must be >= 2 (got {grid_count})")
    return np.linspace(-1.0, 1.0, grid_count)


def sup_norm_bracket(f: RkhsFunction, grid_count: int) -> tuple[float, float]:
    """Certified ``(lower, upper)`` bracket on ``sup_{[-1,1]} |f|``.

    ``lower`` is the maximum over a uniform grid; every point of ``I`` lies
    within half a spacing of the grid, so adding ``L h / 2`` with the
    derivative bound ``L`` gives the upper end.
    """
    pts = grid(grid_count)
    lower = float(np.max(np.abs(evaluate(f, pts))))
    h = 2.0 / (grid_count - 1)
    return lower, lower + 0.5 * h * derivative_bound(f)
