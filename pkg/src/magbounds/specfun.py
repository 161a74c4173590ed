r"""Real-order special functions: Gamma, Bessel :math:`J_\nu`, Bessel zeros, Si.

Bessel functions of the first kind are evaluated by the ascending power
series for small arguments and by Miller's downward recurrence for large
ones.  The recurrence produces a whole *ladder* of orders
``base, base + 1, ..., base + max_index`` at once, which is what the
Aharonov-Bohm sums need (orders ``|n - alpha|`` split into two ladders).
The ladder is normalised with the generalised Neumann series

.. math::
    (x/2)^\nu = \sum_{k\ge0} \frac{(\nu+2k)\Gamma(\nu+k)}{k!} J_{\nu+2k}(x).

All functions accept only non-negative real orders and arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, TruncationError

__all__ = [
    "BesselLadder",
    "RieszOrder",
    "bessel_first_zero",
    "bessel_j",
    "bessel_ladder",
    "gamma_fn",
    "ladder_values",
    "ladder_threshold",
    "sine_integral",
]

# the series cancels badly beyond this (terms peak near e^x / (2 pi x))
SERIES_MAX_X = 2.0
MAX_ARGUMENT = 500.0
_RESCALE = 1e250


@dataclass(frozen=True)
class RieszOrder:
    """Exponents that parameterise the eigenvalue inequalities.

    ``gamma`` is the Riesz exponent, ``dim`` the space dimension, ``alpha``
    the power on the coupling, ``sigma`` the source exponent used when
    lowering the Riesz exponent and ``kappa`` the accompanying shift.
    """

    gamma: float
    dim: int = 2
    alpha: float = 0.0
    sigma: float | None = None
    kappa: float = 0.0

    def __post_init__(self):
        if self.gamma < 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if self.dim < 2:
            raise DomainError(f"dim must be >= 2, got {self.dim}")
        if self.alpha < 0 or self.kappa < 0:
            raise DomainError("alpha and kappa must be >= 0")
        if self.sigma is not None and self.sigma <= self.gamma:
            raise DomainError(f"sigma={self.sigma} must exceed gamma={self.gamma}")


@dataclass(frozen=True)
class BesselLadder:
    """Values ``J_{base_order + m}(argument)`` for ``m = 0 .. max_index``."""

    base_order: float
    max_index: int
    argument: float
    values: np.ndarray

    def order(self, m: int) -> float:
        return self.base_order + m

    def recurrence_residual(self) -> np.ndarray:
        """Residual of the three-term recurrence at interior entries."""
        x = self.argument
        v = self.values
        nu = self.base_order + np.arange(1, self.max_index)
        return np.abs(v[:-2] + v[2:] - (2.0 * nu / x) * v[1:-1])

    def neumann_sum(self) -> float:
        """Generalised Neumann sum; equals ``(x/2)**base_order``."""
        coeff = _neumann_coefficients(self.base_order, self.max_index // 2)
        return float(np.dot(coeff, self.values[::2][: coeff.size]))


def gamma_fn(x: float) -> float:
    """Gamma function for ``0 < x <= 170``."""
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    if x > 170:
        raise OverflowError(f"gamma_fn({x}) overflows double precision")
    return math.gamma(x)


def ladder_threshold(x: float) -> float:
    """Order beyond which ``J_nu(x)`` is negligible in double precision."""
    return x + 10.0 * x ** (1.0 / 3.0) + 20.0


def _series(orders: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Ascending series, shape ``(len(orders), len(x))``."""
    nu = np.asarray(orders, dtype=float)[:, None]
    x = np.asarray(x, dtype=float)[None, :]
    half = 0.5 * x
    q = -(half * half)
    term = np.ones(np.broadcast_shapes(nu.shape, x.shape))
    total = term.copy()
    for k in range(1, 400):
        term = term * q / (k * (nu + k))
        total += term
        if np.max(np.abs(term)) < 1e-18:
            break
    lg = np.array([math.lgamma(v + 1.0) for v in nu[:, 0]])[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        logpre = nu * np.log(half) - lg
    pre = np.exp(logpre)
    zero = half == 0.0
    if np.any(zero):
        pre = np.where(zero, np.where(nu == 0.0, 1.0, 0.0), pre)
    return pre * total


def _neumann_coefficients(base: float, kmax: int) -> np.ndarray:
    """``c_k`` with ``sum_k c_k J_{base+2k}(x) = (x/2)**base``."""
    c = np.empty(kmax + 1)
    c[0] = math.gamma(base + 1.0)
    r = c[0]  # Gamma(base + k) / k! for k >= 1
    for k in range(1, kmax + 1):
        if k > 1:
            r *= (base + k - 1) / k
        c[k] = (base + 2 * k) * r
    return c


def _miller(base: float, x: np.ndarray, max_index: int) -> np.ndarray:
    """Downward recurrence for ``J_{base+m}(x)``, ``x > 0``."""
    start = int(math.ceil(max(max_index, ladder_threshold(float(np.max(x)))))) + 10
    start += start % 2
    coeff = _neumann_coefficients(base, start // 2)
    out = np.zeros((max_index + 1, x.size))
    nxt = np.zeros_like(x)
    cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    if start % 2 == 0:
        norm += coeff[start // 2] * cur
    if start <= max_index:
        out[start] = cur
    for m in range(start, 0, -1):
        prev = (2.0 * (base + m) / x) * cur - nxt
        nxt, cur = cur, prev
        idx = m - 1
        if idx <= max_index:
            out[idx] = cur
        if idx % 2 == 0:
            norm += coeff[idx // 2] * cur
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            cur[big] /= _RESCALE
            nxt[big] /= _RESCALE
            norm[big] /= _RESCALE
            out[idx:, big] /= _RESCALE
    return out * ((0.5 * x) ** base / norm)


def ladder_values(base: float, x, max_index: int) -> np.ndarray:
    """``J_{base+m}(x_i)`` as an array of shape ``(max_index + 1, len(x))``.

    No truncation check is done here; callers pick ``max_index`` large
    enough for their own sums (see :func:`ladder_threshold`).
    """
    if not 0.0 <= base < 1.0:
        raise DomainError(f"base order must lie in [0, 1), got {base}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0) or np.any(x > MAX_ARGUMENT):
        raise DomainError(f"arguments must lie in [0, {MAX_ARGUMENT}]")
    out = np.zeros((max_index + 1, x.size))
    small = x <= SERIES_MAX_X
    if np.any(small):
        # orders past the threshold underflow relative to double precision
        top = min(max_index, int(math.ceil(ladder_threshold(float(x[small].max())))) + 10)
        out[: top + 1, small] = _series(base + np.arange(top + 1), x[small])
    if np.any(~small):
        out[:, ~small] = _miller(base, x[~small], max_index)
    return out


def bessel_ladder(base_order: float, x: float, max_index: int) -> BesselLadder:
    """Ladder ``J_{base_order+m}(x)``, ``m = 0..max_index``, at one argument."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if max_index < ladder_threshold(x):
        raise TruncationError(
            f"max_index={max_index} below tail-safe threshold {ladder_threshold(x):.1f}"
        )
    values = ladder_values(base_order, [x], max_index)[:, 0]
    return BesselLadder(float(base_order), int(max_index), float(x), values)


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind ``J_nu(x)`` for ``nu, x >= 0``."""
    if nu < 0 or x < 0:
        raise DomainError(f"bessel_j requires nu, x >= 0, got nu={nu}, x={x}")
    if x > MAX_ARGUMENT:
        raise DomainError(f"bessel_j requires x <= {MAX_ARGUMENT}, got {x}")
    if x <= SERIES_MAX_X:
        return float(_series(np.array([nu]), np.array([x]))[0, 0])
    m = int(math.floor(nu))
    return float(_miller(nu - m, np.array([x]), m)[m, 0])


def _bessel_jprime(nu: float, x: float) -> float:
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x)


def _zero_guess(nu: float) -> float:
    if nu < 2.0:
        # McMahon expansion for the first zero
        beta = (nu / 2.0 + 0.75) * math.pi
        mu = 4.0 * nu * nu
        e = 8.0 * beta
        return (
            beta
            - (mu - 1.0) / e
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e**3)
            - 32.0 * (mu - 1.0) * (83.0 * mu**2 - 982.0 * mu + 3779.0) / (15.0 * e**5)
        )
    c = nu ** (1.0 / 3.0)
    return (
        nu
        + 1.8557571 * c
        + 1.033150 / c
        - 0.00397 / nu
        - 0.0908 / c**5
        + 0.043 / c**7
    )


def bessel_first_zero(nu: float) -> float:
    """First positive zero ``j_nu`` of ``J_nu`` for ``0 <= nu <= 50``."""
    if not 0.0 <= nu <= 50.0:
        raise DomainError(f"bessel_first_zero requires 0 <= nu <= 50, got {nu}")
    x = _zero_guess(nu)
    for _ in range(200):
        f = bessel_j(nu, x)
        step = f / _bessel_jprime(nu, x)
        x -= step
        if abs(step) <= 1e-15 * x:
            break
    else:
        raise ConvergenceError(f"Newton iteration for j_{nu} did not converge")
    if abs(bessel_j(nu, x)) > 1e-11:
        raise ConvergenceError(f"residual too large at j_{nu} ~ {x}")
    # J_nu > 0 on (0, j_nu); zeros are spaced far wider than the probe step.
    lo = max(nu, 0.05)
    probes = np.linspace(lo, x - 0.05, max(2, int((x - lo) / 0.25) + 2))
    if any(bessel_j(nu, p) <= 0 for p in probes if p > 0):
        raise ConvergenceError(f"Newton converged to a later zero of J_{nu}")
    return x


def _si_series(x: float) -> float:
    total = 0.0
    term = x  # (-1)^k x^{2k+1} / (2k+1)!
    k = 0
    while True:
        contrib = term / (2 * k + 1)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            return total
        k += 1
        term *= -x * x / ((2 * k) * (2 * k + 1))


def _si_continued_fraction(x: float) -> float:
    # Lentz evaluation of E1(ix); Si(x) = pi/2 + Im(e^{-ix} * CF).
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, 10000):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ConvergenceError(f"sine integral continued fraction failed at x={x}")
    h *= complex(math.cos(x), -math.sin(x))
    return 0.5 * math.pi + h.imag


def sine_integral(x: float) -> float:
    """Sine integral ``Si(x) = int_0^x sin(s)/s ds`` for ``x >= 0``."""
    if x < 0:
        raise DomainError(f"sine_integral requires x >= 0, got {x}")
    if x == 0:
        return 0.0
    if x <= 4.0:
        return _si_series(x)
    return _si_continued_fraction(x)
