"""Landau levels of the planar homogeneous-field Hamiltonian.

The levels are ``B(2k-1)``, ``k >= 1``, each with density of states
``B/(2 pi)`` per unit area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import rho_hom, semiclassical_constant
from .errors import PreconditionError, ToleranceError
from .search import golden_max, scan_argmax

__all__ = [
    "LandauSpectrum",
    "LandauSup",
    "landau_ids",
    "landau_ratio",
    "landau_ratio_scan",
    "landau_ratio_sup",
    "landau_riesz_sum",
]


@dataclass(frozen=True)
class LandauSpectrum:
    field_strength: float

    def __post_init__(self):
        if not self.field_strength > 0:
            raise PreconditionError("field strength must be positive")

    def level(self, k: int) -> float:
        if k < 1:
            raise PreconditionError(f"Landau levels are indexed from 1, got {k}")
        return self.field_strength * (2 * k - 1)

    @property
    def degeneracy_density(self) -> float:
        return self.field_strength / (2.0 * math.pi)

    def levels_below(self, mu: float) -> np.ndarray:
        """All levels strictly below ``mu``."""
        B = self.field_strength
        kmax = int(math.ceil((mu / B + 1.0) / 2.0))
        levels = B * (2.0 * np.arange(1, kmax + 1) - 1.0)
        return levels[levels < mu]


def landau_riesz_sum(B: float, lam: float, gamma: float) -> float:
    """``(B/2pi) sum_k (B(2k-1) - lam)_-^gamma``."""
    spec = LandauSpectrum(B)
    if gamma < 0:
        raise PreconditionError(f"gamma must be >= 0, got {gamma}")
    below = spec.levels_below(lam)
    if below.size == 0:
        return 0.0
    if gamma == 0:
        return spec.degeneracy_density * below.size
    return spec.degeneracy_density * float(np.sum((lam - below) ** gamma))


def landau_ids(B: float, mu: float) -> float:
    """Integrated density of states ``(B/2pi) #{k : B(2k-1) < mu}``."""
    spec = LandauSpectrum(B)
    return spec.degeneracy_density * spec.levels_below(mu).size


def landau_ratio(B: float, lam: float, gamma: float) -> float:
    """Landau Riesz sum relative to its semiclassical value ``L_{g,2} lam^(g+1)``."""
    if lam <= 0:
        return 0.0
    return landau_riesz_sum(B, lam, gamma) / (
        semiclassical_constant(gamma, 2) * lam ** (gamma + 1.0)
    )


def landau_ratio_scan(B: float, gamma: float, num: int = 2000,
                      lo: float = 0.5, hi: float = 50.0) -> tuple[np.ndarray, np.ndarray]:
    """Ratio on a logarithmic grid ``lam in [lo B, hi B]``."""
    lams = B * np.geomspace(lo, hi, num)
    ratios = np.array([landau_ratio(B, lam, gamma) for lam in lams])
    return lams, ratios


class LandauSup(NamedTuple):
    sup: float
    argmax_lambda: float | str
    kind: str  # "attained", "limit" or "asymptotic"


def landau_ratio_sup(B: float, gamma: float, tol: float = 1e-6) -> LandauSup:
    """Supremum over ``lam > 0`` of :func:`landau_ratio`.

    For ``0 < gamma < 1`` the supremum is located by a logarithmic scan and
    golden-section refinement.  For ``gamma = 0`` it is the one-sided limit
    ``lam -> B+`` (reported at ``lam = B(1 + 1e-9)``).  For ``gamma >= 1`` it
    is only approached as ``lam -> infinity``; the result is flagged
    ``"asymptotic"``.

    Raises :class:`ToleranceError` if the located value disagrees with the
    analytic supremum by more than ``tol``.
    """
    if not B > 0 or not tol > 0:
        raise PreconditionError("need B > 0 and tol > 0")
    if gamma < 0:
        raise PreconditionError(f"gamma must be >= 0, got {gamma}")
    expected = rho_hom(gamma)

    if gamma == 0:
        lam = B * (1.0 + 1e-9)
        value = landau_ratio(B, lam, 0.0)
        result = LandauSup(float(value), float(B), "limit")
    elif gamma < 1:
        lams, ratios = landau_ratio_scan(B, gamma)
        i = scan_argmax(ratios)
        lo = lams[max(i - 1, 0)]
        hi = lams[min(i + 1, lams.size - 1)]
        lam, value = golden_max(lambda x: landau_ratio(B, x, gamma), lo, hi,
                                tol=1e-10 * B)
        result = LandauSup(float(value), float(lam), "attained")
    else:
        lams, ratios = landau_ratio_scan(B, gamma)
        if ratios.max() > 1.0 + tol:
            raise ToleranceError(f"ratio {ratios.max()} exceeds 1 for gamma={gamma}")
        # even multiples of B make the sum a midpoint rule; push lam out until it converges
        value = 0.0
        for j in range(1, 24):
            value = landau_ratio(B, B * 2.0 ** (j + 1), gamma)
            if abs(value - expected) <= tol:
                break
        result = LandauSup(float(value), "asymptotic", "asymptotic")

    if abs(result.sup - expected) > tol:
        raise ToleranceError(
            f"located supremum {result.sup} differs from {expected} by more than {tol}"
        )
    return result
