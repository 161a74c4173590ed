r"""Sharp local constant for the Aharonov-Bohm field.

For a point flux ``2 pi alpha`` the diagonal of the spectral density is
governed by

.. math::
    F_\alpha(t) = \sum_{n\in\mathbb{Z}} J^2_{|n-\alpha|}(t),

and the local Riesz-mean ratio at radius ``s`` (in units of ``lam^-1/2``) is

.. math::
    S_\gamma(\alpha, s) = \int_0^1 (1-\mu)^\gamma F_\alpha(\sqrt\mu\, s)\,d\mu
                       = \frac{1}{s^2}\int_0^s 2t (1-t^2/s^2)^\gamma F_\alpha(t)\,dt .

``R_gamma(alpha) = (gamma + 1) sup_s S_gamma(alpha, s)``.

The ``t``-integral uses unit panels with 64 Gauss-Legendre nodes each, so
``F_alpha`` is evaluated on a fixed node set that is shared by every ``s``.
The final panel ending at ``t = s`` uses Gauss-Jacobi nodes with weight
``(s - t)^gamma`` when ``gamma`` is not an integer.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import BoundaryMaximumWarning, DomainError, PreconditionError
from .search import golden_max, scan_argmax
from .specfun import ladder_threshold, ladder_values

__all__ = [
    "ABConstant",
    "ABSeriesPoint",
    "ab_asymptotic",
    "ab_constant",
    "ab_series",
    "ab_series_many",
    "ab_series_point",
    "flux_density",
    "reduce_flux",
]

NODES_PER_PANEL = 64
MAX_S = 200.0
SCAN_STEP = 0.05
MIN_SCAN_END = 60.0

_GL_X, _GL_W = np.polynomial.legendre.leggauss(NODES_PER_PANEL)


def reduce_flux(flux: float) -> float:
    """Representative of ``flux`` in ``[0, 1/2]`` (integer shifts and ``a -> 1-a``)."""
    a = flux - math.floor(flux)
    if a > 0.5:
        a = 1.0 - a
    # below eps the flux cannot be told apart from an integer
    return 0.0 if a == 1.0 or 1.0 - a == 1.0 else a


def _truncation(t_max: float) -> int:
    return int(math.ceil(ladder_threshold(t_max)))


def flux_density(flux: float, t) -> np.ndarray:
    """``sum_n J_{|n - flux|}(t)^2`` evaluated at each ``t``."""
    a = reduce_flux(flux)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    m = _truncation(float(t.max()))
    if a == 0.0:
        v = ladder_values(0.0, t, m)
        return v[0] ** 2 + 2.0 * np.sum(v[1:] ** 2, axis=0)
    first = ladder_values(a, t, m)
    if a == 0.5:
        return 2.0 * np.sum(first**2, axis=0)
    second = ladder_values(1.0 - a, t, m)
    return np.sum(first**2, axis=0) + np.sum(second**2, axis=0)


@lru_cache(maxsize=64)
def _panel_density(a: float, panels: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights and ``F_a`` on the unit panels ``[k, k+1]``, ``k < panels``."""
    k = np.arange(panels)[:, None]
    nodes = (k + 0.5 * (_GL_X + 1.0)).ravel()
    weights = np.tile(0.5 * _GL_W, panels)
    if a == 0.0:
        dens = np.ones_like(nodes)
    else:
        dens = flux_density(a, nodes)
    for arr in (nodes, weights, dens):
        arr.setflags(write=False)
    return nodes, weights, dens


def _panels_for(s: float) -> int:
    # cache granularity: round the panel count up to a multiple of 16
    need = max(int(math.ceil(s)), 1)
    return 16 * int(math.ceil(need / 16))


@lru_cache(maxsize=32)
def _jacobi_rule(gamma: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(NODES_PER_PANEL, gamma, 0.0)
    return x, w


@dataclass(frozen=True)
class ABSeriesPoint:
    gamma: float
    flux: float
    s: float
    value: float
    truncation_order: int
    quadrature_nodes: int
    error_estimate: float


def _last_panel(gamma: float, s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Panel ``[ceil(s) - 1, s]`` in ``u = t/s``: nodes ``t``, nodes ``u`` and ``u``-weights.

    Working in ``u`` keeps tiny ``s`` free of overflow.
    """
    lo = float(max(int(math.ceil(s)) - 1, 0))
    u_lo = lo / s
    omega = 1.0 - u_lo
    if float(gamma).is_integer():
        u = u_lo + 0.5 * omega * (_GL_X + 1.0)
        w = 0.5 * omega * _GL_W
    else:
        xj, wj = _jacobi_rule(float(gamma))
        u = u_lo + 0.5 * omega * (xj + 1.0)
        w = (0.5 * omega) ** (gamma + 1.0) * wj
    return s * u, u, w


def _series_value(gamma: float, a: float, s: float,
                  cache: tuple[np.ndarray, np.ndarray, np.ndarray],
                  tail_u: np.ndarray, tail_w: np.ndarray, tail_f: np.ndarray) -> float:
    if s == 0.0:
        return 1.0 / (gamma + 1.0) if a == 0.0 else 0.0
    if a == 0.0:
        return 1.0 / (gamma + 1.0)
    nodes, weights, dens = cache
    n_full = max(int(math.ceil(s)) - 1, 0) * NODES_PER_PANEL
    total = 0.0
    if n_full:
        inv = 1.0 / (s * s)
        t = nodes[:n_full]
        g = 2.0 * t * inv
        if gamma != 0.0:
            g = g * (1.0 - t * t * inv) ** gamma
        total = float(np.dot(weights[:n_full] * g, dens[:n_full]))
    u = tail_u
    if float(gamma).is_integer():
        g = 2.0 * u * (1.0 - u * u) ** gamma
    else:
        # (1 - u^2)^g = (1 - u)^g (1 + u)^g; (1 - u)^g sits in the weights
        g = 2.0 * u * (1.0 + u) ** gamma
    return total + float(np.dot(tail_w * g, tail_f))


def ab_series_many(gamma: float, flux: float, s_values) -> np.ndarray:
    """:func:`ab_series` at every ``s`` in ``s_values``."""
    if not gamma > -1:
        raise DomainError(f"gamma must exceed -1, got {gamma}")
    s_values = np.atleast_1d(np.asarray(s_values, dtype=float))
    if np.any(s_values < 0) or np.any(s_values > MAX_S):
        raise DomainError(f"s must lie in [0, {MAX_S}]")
    a = reduce_flux(flux)
    gamma = float(gamma)
    if a == 0.0:
        return np.full(s_values.shape, 1.0 / (gamma + 1.0))
    cache = _panel_density(a, _panels_for(float(s_values.max())))
    live = s_values > 0
    tails = [_last_panel(gamma, float(s)) for s in s_values[live]]
    out = np.zeros(s_values.shape)
    if tails:
        all_t = np.concatenate([t for t, _, _ in tails])
        all_f = flux_density(a, all_t).reshape(len(tails), NODES_PER_PANEL)
        vals = [
            _series_value(gamma, a, float(s), cache, u, w, f)
            for s, (_, u, w), f in zip(s_values[live], tails, all_f)
        ]
        out[live] = vals
    return out


def ab_series(gamma: float, flux: float, s: float) -> float:
    """``sum_n int_0^1 (1-mu)^gamma J_{|n-alpha|}(sqrt(mu) s)^2 dmu``."""
    return float(ab_series_many(gamma, flux, [s])[0])


def ab_series_point(gamma: float, flux: float, s: float) -> ABSeriesPoint:
    """:func:`ab_series` together with its discretisation data."""
    value = ab_series(gamma, flux, s)
    a = reduce_flux(flux)
    order = _truncation(s)
    # tail proxy: squared ladder entries at the truncation order
    tail = 0.0
    if s > 0 and a != 0.0:
        edge = ladder_values(a, [s], order + 2)[-3:, 0]
        tail = float(2.0 * np.sum(edge**2))
    full = max(int(math.ceil(s)) - 1, 0)
    return ABSeriesPoint(float(gamma), float(flux), float(s), value, order,
                         (full + 1) * NODES_PER_PANEL, tail + 1e-13)


def ab_asymptotic(gamma: float, flux: float, s: float) -> float:
    """Two-term large-``s`` expansion of :func:`ab_series`."""
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    return 1.0 / (gamma + 1.0) - math.gamma(gamma + 1.0) * (
        math.sin(flux * math.pi) / math.pi
    ) * math.sin(2.0 * s - 0.5 * gamma * math.pi) / s ** (2.0 + gamma)


def _envelope(gamma: float, a: float, s: float) -> float:
    return 1.0 / (gamma + 1.0) + math.gamma(gamma + 1.0) * abs(
        math.sin(a * math.pi)) / (math.pi * s ** (2.0 + gamma))


@dataclass(frozen=True)
class ABConstant:
    gamma: float
    flux: float
    value: float
    argmax_s: float
    s_max: float
    truncation: int
    error_bound: float

    def as_dict(self) -> dict:
        return {
            "R": self.value,
            "argmax_s": self.argmax_s,
            "s_max": self.s_max,
            "truncation": self.truncation,
            "error_bound": self.error_bound,
        }


def ab_constant(gamma: float, flux: float) -> ABConstant:
    """``R_gamma(alpha) = (gamma + 1) sup_{s >= 0} ab_series(gamma, alpha, s)``.

    The supremum is located on a uniform ``s`` grid (step 0.05) that extends
    at least to 60 and further until the asymptotic envelope drops below
    the incumbent, then refined by golden-section search.  A warning is
    issued if the best grid point is the last one.
    """
    if gamma < 0:
        raise PreconditionError(f"ab_constant is validated for gamma >= 0, got {gamma}")
    a = reduce_flux(flux)
    if a == 0.0:
        return ABConstant(float(gamma), float(flux), 1.0, 0.0, 0.0, 0, 0.0)

    s_end = MIN_SCAN_END
    while True:
        grid = np.arange(0.0, s_end + 0.5 * SCAN_STEP, SCAN_STEP)
        vals = ab_series_many(gamma, a, grid)
        i = scan_argmax(vals)
        if _envelope(gamma, a, s_end) < vals[i] or s_end >= MAX_S:
            break
        s_end = min(2.0 * s_end, MAX_S)
    if i == grid.size - 1:
        warnings.warn(f"maximum of the series at scan boundary s={s_end}",
                      BoundaryMaximumWarning, stacklevel=2)
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    s_star, best = golden_max(lambda s: ab_series(gamma, a, s), lo, hi, tol=1e-8)
    point = ab_series_point(gamma, a, s_star)
    return ABConstant(float(gamma), float(flux), (gamma + 1.0) * best, float(s_star),
                      float(s_end), point.truncation_order,
                      (gamma + 1.0) * point.error_estimate)
