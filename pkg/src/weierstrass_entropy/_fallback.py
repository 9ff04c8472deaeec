"""Numpy implementations of the hot kernels.

Selected at import when the compiled extension is unavailable (or when
``WEIERSTRASS_ENTROPY_BACKEND=python``).  The phase table agrees with the
compiled kernel bit for bit; trigonometric values may differ by an ulp
because numpy and libm use different cos/sin implementations.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import pdist, squareform

from . import _exact

_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


def _decompose(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mant, expo = np.frexp(x)
    num = np.ldexp(mant, 53).astype(np.int64)
    shift = 53 - expo.astype(np.int64)
    nz = num != 0
    low = np.where(nz, num & -num, 1)
    tz = np.frexp(low.astype(np.float64))[1].astype(np.int64) - 1
    num = np.where(nz, num >> tz, 0)
    shift = np.where(nz, shift - tz, 0)
    neg = shift < 0
    if neg.any():
        num = np.where(neg, num << np.where(neg, -shift, 0), num)
        shift = np.where(neg, 0, shift)
    return num, shift


def cospi(q: np.ndarray) -> np.ndarray:
    t = np.abs(q)
    return np.where(
        t <= 0.25,
        np.cos(np.pi * t),
        np.where(t <= 0.75, np.sin(np.pi * (0.5 - t)), -np.cos(np.pi * (1.0 - t))),
    )


def sinpi(q: np.ndarray) -> np.ndarray:
    t = np.abs(q)
    s = np.where(
        t <= 0.25,
        np.sin(np.pi * t),
        np.where(t <= 0.75, np.cos(np.pi * (0.5 - t)), np.sin(np.pi * (1.0 - t))),
    )
    return np.where(q < 0, -s, s)


def phase_table(x, b: int, order: int) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty((x.size, order), dtype=np.float64)
    num, shift = _decompose(x)
    machine = shift <= _exact.MAX_MACHINE_SHIFT
    idx = np.flatnonzero(machine)
    if idx.size:
        k = shift[idx].astype(np.uint64)
        mask = np.where(
            k >= 63, _ALL_ONES, (np.uint64(1) << np.minimum(k + np.uint64(1), np.uint64(63))) - np.uint64(1)
        )
        half = np.uint64(1) << k
        r = num[idx].view(np.uint64) & mask
        neg_k = -shift[idx]
        bb = np.uint64(b)
        one = np.uint64(1)
        for n in range(order):
            up = r > half
            # mask - r + 1 == modulus - r, wrapping correctly when K == 63
            mag = np.where(up, mask - r + one, r).astype(np.float64)
            out[idx, n] = np.ldexp(np.where(up, -mag, mag), neg_k)
            r = np.multiply(r, bb) & mask
    for i in np.flatnonzero(~machine):
        out[i] = _exact.phases(float(x[i]), b, order)
    return out


def cos_series(x, a: float, b: int, order: int) -> np.ndarray:
    q = phase_table(x, b, order)
    weights = a ** np.arange(order, dtype=np.float64)
    vals = cospi(q) * weights
    acc = np.zeros(q.shape[0])
    for n in range(order):
        acc += vals[:, n]
    return acc


def pairwise_chebyshev(values, workers: int = 1) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.shape[0] < 2:
        return np.zeros((values.shape[0], values.shape[0]))
    return squareform(pdist(values, "chebyshev"))
