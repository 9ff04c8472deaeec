"""Exact phase reduction with Python integers.

Every finite double ``x`` equals ``M / 2**K`` for integers ``M`` and ``K >= 0``
(when ``|x| < 2**53``), so ``b**n * x mod 2`` is the rational
``(b**n * M mod 2**(K+1)) / 2**K`` and can be computed without rounding.
The compiled kernel and the numpy fallback use 64-bit modular arithmetic
for ``K <= 63`` and defer to this module for anything smaller.
"""

from __future__ import annotations

import math

MAX_MACHINE_SHIFT = 63


def dyadic(x: float) -> tuple[int, int]:
    """Return ``(M, K)`` with ``x == M / 2**K``, ``K >= 0`` and ``M`` odd unless ``K == 0``."""
    num, den = float(x).as_integer_ratio()
    shift = den.bit_length() - 1
    return num, shift


def centered_phase(residue: int, shift: int) -> float:
    """Map ``residue / 2**shift`` (in ``[0, 2)``) to the representative in ``(-1, 1]``."""
    half = 1 << shift
    if residue > half:
        residue -= half << 1
    return math.ldexp(float(residue), -shift)


def phases(x: float, b: int, order: int) -> list[float]:
    """Reduced phases ``q_n`` with ``b**n x == q_n (mod 2)`` and ``q_n in (-1, 1]``."""
    num, shift = dyadic(x)
    modulus = 1 << (shift + 1)
    r = num % modulus
    out = []
    for _ in range(order):
        out.append(centered_phase(r, shift))
        r = (r * b) % modulus
    return out


def cospi(q: float) -> float:
    """``cos(pi q)`` for ``q in [-1, 1]`` with exact zeros at ``q = +-1/2``."""
    t = abs(q)
    if t <= 0.25:
        return math.cos(math.pi * t)
    if t <= 0.75:
        return math.sin(math.pi * (0.5 - t))
    return -math.cos(math.pi * (1.0 - t))


def sinpi(q: float) -> float:
    """``sin(pi q)`` for ``q in [-1, 1]`` with exact zeros at ``q in {0, +-1}``."""
    t = abs(q)
    if t <= 0.25:
        s = math.sin(math.pi * t)
    elif t <= 0.75:
        s = math.cos(math.pi * (0.5 - t))
    else:
        s = math.sin(math.pi * (1.0 - t))
    return -s if q < 0 else s
