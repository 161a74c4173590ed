"""Scan-then-refine maximisation of scalar functions."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f: Callable[[float], float], a: float, b: float,
               tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section search for a maximum of ``f`` on ``[a, b]``.

    Assumes ``f`` is unimodal on the bracket.  Returns ``(x, f(x))``.
    """
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    fx = f(x)
    # the bracket midpoint can lose to an interior probe by rounding
    best = max((fx, x), (fc, c), (fd, d))
    return best[1], best[0]


def scan_argmax(values: np.ndarray) -> int:
    """Index of the largest value; ties resolve to the smallest index."""
    return int(np.argmax(values))
