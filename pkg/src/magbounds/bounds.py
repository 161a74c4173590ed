"""Riesz means of computed spectra and verdicts for the eigenvalue inequalities.

Every check produces one :class:`BoundReport` per spectral parameter.
Upper-type bounds hold when ``lhs <= (1 + slack) rhs``; lower-type bounds
(Neumann reverse bound, eigenvalue-ratio bound) hold when
``lhs >= (1 - slack) rhs``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import (
    ell_const,
    excess_factor_discrete,
    lifting_factor,
    rho_hom,
    rho_nonsharp,
    semiclassical_constant,
)
from .eig import Spectrum
from .errors import PreconditionError
from .landau import landau_riesz_sum
from .lattice import LatticeDomain

__all__ = [
    "BoundReport",
    "INEQUALITY_IDS",
    "VALIDITY_FACTOR",
    "default_slack",
    "lambda_grid",
    "make_report",
    "riesz_mean",
    "select_rho",
    "validity_limit",
    "verify_bly",
    "verify_blyhommod",
    "verify_diamagdisc",
    "verify_homneu",
    "verify_lifting",
    "verify_magdomain",
    "weyl_scan",
]

VALIDITY_FACTOR = 0.2
INEQUALITY_IDS = ("bly", "blyhom", "blymagnonsharp", "polya", "blyhommod",
                  "homneu", "magdomain", "diamagdisc", "lifting")
TILING_SHAPES = ("square", "rectangle")

HOLDS, VIOLATED, INCONCLUSIVE = "holds", "violated", "inconclusive"


@dataclass(frozen=True)
class BoundReport:
    inequality_id: str
    lam: float
    lhs: float
    rhs: float
    ratio: float
    verdict: str
    slack_used: float
    direction: str = "upper"

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def as_dict(self) -> dict:
        return {
            "inequality_id": self.inequality_id,
            "lambda": self.lam,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "verdict": self.verdict,
            "slack_used": self.slack_used,
            "direction": self.direction,
        }


def make_report(inequality_id: str, lam: float, lhs: float, rhs: float,
                slack: float, direction: str = "upper") -> BoundReport:
    """Build a report; ``ratio = lhs / rhs`` with ``0/0 = 0`` and ``x/0 = inf``."""
    lhs, rhs = float(lhs), float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return BoundReport(inequality_id, float(lam), lhs, rhs, math.nan,
                           INCONCLUSIVE, slack, direction)
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else math.inf
    if direction == "upper":
        ok = ratio <= 1.0 + slack
    elif direction == "lower":
        ok = rhs <= 0 or ratio >= 1.0 - slack
    else:
        raise PreconditionError(f"direction must be 'upper' or 'lower', got {direction!r}")
    return BoundReport(inequality_id, float(lam), lhs, rhs, ratio,
                       HOLDS if ok else VIOLATED, float(slack), direction)


def _values(spec) -> np.ndarray:
    if isinstance(spec, Spectrum):
        return spec.values
    return np.sort(np.asarray(spec, dtype=float))


def riesz_mean(spec, lam: float, gamma: float) -> float:
    """``sum_{lam_j < lam} (lam - lam_j)^gamma``; ``gamma = 0`` counts."""
    if gamma < 0:
        raise PreconditionError(f"gamma must be >= 0, got {gamma}")
    v = _values(spec)
    below = v[v < lam]
    if gamma == 0:
        return float(below.size)
    return float(np.sum((lam - below) ** gamma))


def default_slack(B: float, h: float) -> float:
    """Discretisation slack ``0.02 + 4 B h^2``."""
    return 0.02 + 4.0 * B * h * h


def validity_limit(domain: LatticeDomain) -> float:
    """Largest spectral parameter ``0.2 / h^2`` where the stencil tracks ``|xi|^2``."""
    return VALIDITY_FACTOR / domain.spacing**2


def lambda_grid(domain: LatticeDomain, lo: float, num: int = 80) -> np.ndarray:
    """Uniform grid from ``lo`` up to the validity limit."""
    hi = validity_limit(domain)
    if not 0 < lo < hi:
        raise PreconditionError(f"grid start {lo} must lie in (0, {hi})")
    return np.linspace(lo, hi, num)


def _check_window(grid, domain: LatticeDomain) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    limit = validity_limit(domain)
    if grid.size == 0:
        raise PreconditionError("empty spectral grid")
    if grid.max() > limit * (1 + 1e-12):
        raise PreconditionError(
            f"grid reaches {grid.max():.6g}, beyond the validity limit {limit:.6g}")
    return grid


def select_rho(inequality_id: str, B: float, gamma: float) -> float:
    """Excess factor used by the Berezin-Li-Yau type checks.

    ``polya`` always uses 1, ``blyhom`` the sharp homogeneous value and
    ``blymagnonsharp`` the field-independent one.  ``bly`` picks 1 for the
    non-magnetic case with ``gamma >= 1``, the homogeneous value when
    ``B > 0`` and the field-independent value otherwise.
    """
    if inequality_id == "polya":
        return 1.0
    if inequality_id == "blyhom":
        return rho_hom(gamma)
    if inequality_id == "blymagnonsharp":
        return rho_nonsharp(gamma, 2)
    if inequality_id == "bly":
        if B > 0:
            return rho_hom(gamma)
        return 1.0 if gamma >= 1 else rho_nonsharp(gamma, 2)
    raise PreconditionError(f"no excess factor for inequality {inequality_id!r}")


def verify_bly(spec, domain: LatticeDomain, B: float, gamma: float, grid,
               slack: float | None = None, inequality_id: str = "bly",
               rho: float | None = None) -> list[BoundReport]:
    """``tr(H - lam)_-^g <= rho L_{g,2} lam^(g+1) |Omega|`` on a Dirichlet spectrum."""
    if domain.bc != "dirichlet":
        raise PreconditionError("Berezin-Li-Yau checks need a Dirichlet spectrum")
    grid = _check_window(grid, domain)
    if slack is None:
        slack = default_slack(B, domain.spacing)
    if rho is None:
        rho = select_rho(inequality_id, B, gamma)
    const = rho * semiclassical_constant(gamma, 2) * domain.area
    return [make_report(inequality_id, lam, riesz_mean(spec, lam, gamma),
                        const * lam ** (gamma + 1.0), slack) for lam in grid]


def verify_blyhommod(spec, domain: LatticeDomain, B: float, gamma: float, grid,
                     slack: float | None = None) -> list[BoundReport]:
    """Dirichlet sums against the Landau sums: ``lhs <= |Omega| landau_riesz_sum``.

    For ``gamma < 1`` only tiling shapes are admitted.
    """
    if domain.bc != "dirichlet":
        raise PreconditionError("needs a Dirichlet spectrum")
    if gamma < 1 and domain.shape not in TILING_SHAPES:
        raise PreconditionError(
            f"gamma={gamma} < 1 requires a tiling domain, got {domain.shape!r}")
    grid = _check_window(grid, domain)
    if slack is None:
        slack = default_slack(B, domain.spacing)
    return [make_report("blyhommod", lam, riesz_mean(spec, lam, gamma),
                        domain.area * landau_riesz_sum(B, lam, gamma), slack)
            for lam in grid]


def verify_homneu(spec, domain: LatticeDomain, B: float, gamma: float, grid,
                  slack: float | None = None) -> list[BoundReport]:
    """Neumann reverse bound ``lhs >= (1 - slack) |Omega| landau_riesz_sum``."""
    if domain.bc != "neumann":
        raise PreconditionError("needs a Neumann spectrum")
    grid = _check_window(grid, domain)
    if slack is None:
        slack = default_slack(B, domain.spacing)
    return [make_report("homneu", lam, riesz_mean(spec, lam, gamma),
                        domain.area * landau_riesz_sum(B, lam, gamma), slack, "lower")
            for lam in grid]


def verify_magdomain(spec, gamma: float, grid, slack: float = 0.0) -> list[BoundReport]:
    """``tr(H - lam)_-^g >= l_{g,2} lam_1^(-1) (lam - lam_1)_+^(g+1)``."""
    if gamma < 1:
        raise PreconditionError(f"needs gamma >= 1, got {gamma}")
    v = _values(spec)
    lam1 = float(v[0])
    if not lam1 > 0:
        raise PreconditionError("lowest eigenvalue must be positive")
    ell = ell_const(gamma, 2)
    out = []
    for lam in np.atleast_1d(np.asarray(grid, dtype=float)):
        rhs = ell / lam1 * max(lam - lam1, 0.0) ** (gamma + 1.0)
        out.append(make_report("magdomain", lam, riesz_mean(v, lam, gamma), rhs,
                               slack, "lower"))
    return out


def verify_diamagdisc(spec_H, spec_M, gamma: float, alpha: float, grid,
                      slack: float = 0.0) -> list[BoundReport]:
    """Transfer a power-law bound from ``H`` to the dominated ``M``.

    ``C`` is fitted as the largest ``tr(H - lam)_-^g / lam^a`` on the grid
    (and just above each eigenvalue of ``H`` when ``g = 0``); the check is
    ``tr(M - lam)_-^g <= C excess_factor_discrete(g, a) lam^a``.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(grid <= 0):
        raise PreconditionError("grid must be positive")
    C = max(riesz_mean(spec_H, lam, gamma) / lam**alpha for lam in grid)
    if gamma == 0:
        v = _values(spec_H)
        j = np.arange(1, v.size + 1)
        keep = (v > 0) & (v <= grid.max())
        if np.any(keep):
            C = max(C, float(np.max(j[keep] / v[keep] ** alpha)))
    factor = C * excess_factor_discrete(gamma, alpha)
    return [make_report("diamagdisc", lam, riesz_mean(spec_M, lam, gamma),
                        factor * lam**alpha, slack) for lam in grid]


def verify_lifting(spec, gamma: float, sigma: float, kappa: float, grid,
                   slack: float = 0.0) -> list[BoundReport]:
    """Lower a Riesz exponent from ``sigma`` to ``gamma`` on measured data.

    ``C`` is fitted from ``tr(H - mu)_-^s / mu^(s+k)`` at the optimal points
    ``mu = lam (s + k)/(g + k)``; the check is
    ``tr(H - lam)_-^g <= C b(g,s)/b(g+k,s+k) lam^(g+k)``.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    mus = grid * (sigma + kappa) / (gamma + kappa)
    C = max(riesz_mean(spec, mu, sigma) / mu ** (sigma + kappa) for mu in mus)
    factor = C * lifting_factor(gamma, sigma, kappa)
    return [make_report("lifting", lam, riesz_mean(spec, lam, gamma),
                        factor * lam ** (gamma + kappa), slack) for lam in grid]


def weyl_scan(spec, domain: LatticeDomain, window, num: int = 200,
              check_window: bool = True) -> list[tuple[float, float]]:
    """``(lam, N(lam) / (L_{0,2} lam |Omega|))`` across ``window``.

    ``window`` is either a ``(lo, hi)`` pair, sampled at ``num`` points, or an
    explicit grid.
    """
    w = np.asarray(window, dtype=float)
    grid = np.linspace(w[0], w[1], num) if w.shape == (2,) else np.atleast_1d(w)
    if check_window:
        _check_window(grid, domain)
    v = _values(spec)
    counts = np.searchsorted(v, grid, side="left")
    const = semiclassical_constant(0.0, 2) * domain.area
    return [(float(lam), float(c / (const * lam)) if lam > 0 else 0.0)
            for lam, c in zip(grid, counts)]
