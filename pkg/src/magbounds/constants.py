"""Closed-form constants of the magnetic eigenvalue inequalities.

Every function here is a pure evaluator.  Powers of the form ``0**0`` are
taken to be 1, so the ``gamma = 0`` and ``alpha = 0`` cases need no limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError
from .specfun import RieszOrder, bessel_first_zero, bessel_j, gamma_fn

__all__ = [
    "ConstantValue",
    "LI_YAU_SUM_CONSTANT",
    "b_factor",
    "constant_table",
    "ell_const",
    "excess_factor_discrete",
    "excess_factor_general",
    "lifting_factor",
    "rho_hom",
    "rho_nonsharp",
    "semiclassical_constant",
    "stability_constant",
]

# Sum-of-eigenvalues constant for the relativistic operator with the critical
# Coulomb term, imported from the Li-Yau-type literature bound.
LI_YAU_SUM_CONSTANT = 4.4827


@dataclass(frozen=True)
class ConstantValue:
    name: str
    params: RieszOrder | None
    value: float
    formula_ref: str
    provenance: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"name": self.name, "value": self.value, "formula": self.formula_ref}
        if self.params is not None:
            out["params"] = {
                "gamma": self.params.gamma,
                "dim": self.params.dim,
                "alpha": self.params.alpha,
                "sigma": self.params.sigma,
                "kappa": self.params.kappa,
            }
        if self.provenance:
            out["provenance"] = dict(self.provenance)
        return out


def _pow(base: float, exponent: float) -> float:
    if base == 0.0 and exponent == 0.0:
        return 1.0
    return base**exponent


def _xe(x: float) -> float:
    """``(x/e)^x`` with the value 1 at ``x = 0``."""
    return _pow(x / math.e, x)


def semiclassical_constant(gamma: float, d: int) -> float:
    """Phase-space constant ``Gamma(g+1) / (2^d pi^(d/2) Gamma(g+d/2+1))``."""
    if gamma < 0 or d < 1:
        raise PreconditionError(f"need gamma >= 0 and d >= 1, got {gamma}, {d}")
    return gamma_fn(gamma + 1.0) / (
        2.0**d * math.pi ** (d / 2.0) * gamma_fn(gamma + d / 2.0 + 1.0)
    )


def excess_factor_general(alpha: float) -> float:
    """Excess ``(e/alpha)^alpha Gamma(alpha+1)`` of the averaging argument."""
    if alpha < 0:
        raise PreconditionError(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return 1.0
    return (math.e / alpha) ** alpha * gamma_fn(alpha + 1.0)


def excess_factor_discrete(gamma: float, alpha: float) -> float:
    """Excess for purely discrete spectrum with ``G = I``.

    ``(gamma/e)^gamma (e/alpha)^alpha Gamma(alpha+1) / Gamma(gamma+1)``.
    """
    if not alpha >= gamma >= 0:
        raise PreconditionError(f"need alpha >= gamma >= 0, got {alpha}, {gamma}")
    return _xe(gamma) / _xe(alpha) * gamma_fn(alpha + 1.0) / gamma_fn(gamma + 1.0)


def b_factor(gamma: float, sigma: float) -> float:
    """``b(gamma, sigma) = sigma^-sigma gamma^gamma (sigma-gamma)^(sigma-gamma)``.

    ``b(0, sigma) = 1`` by definition.
    """
    if not sigma > gamma >= 0:
        raise PreconditionError(f"need sigma > gamma >= 0, got {sigma}, {gamma}")
    if gamma == 0:
        return 1.0
    return sigma ** (-sigma) * gamma**gamma * (sigma - gamma) ** (sigma - gamma)


def lifting_factor(gamma: float, sigma: float, kappa: float) -> float:
    """Factor ``b(g, s) / b(g + k, s + k)`` for lowering the Riesz exponent."""
    if kappa < 0:
        raise PreconditionError(f"kappa must be >= 0, got {kappa}")
    return b_factor(gamma, sigma) / b_factor(gamma + kappa, sigma + kappa)


def rho_nonsharp(gamma: float, d: int) -> float:
    """Excess over the semiclassical constant for arbitrary fields, ``0 <= gamma < 3/2``."""
    if not 0 <= gamma < 1.5:
        raise PreconditionError(f"rho_nonsharp needs 0 <= gamma < 3/2, got {gamma}")
    if d < 2:
        raise PreconditionError(f"rho_nonsharp needs d >= 2, got {d}")
    return (
        gamma_fn(2.5)
        * gamma_fn(gamma + d / 2.0 + 1.0)
        / (gamma_fn((5.0 + d) / 2.0) * gamma_fn(gamma + 1.0))
        * 3.0**-1.5
        * (3.0 + d) ** ((3.0 + d) / 2.0)
        * _pow(2.0 * gamma, gamma)
        * (2.0 * gamma + d) ** (-gamma - d / 2.0)
    )


def rho_hom(gamma: float) -> float:
    """Sharp excess for a homogeneous field in two dimensions."""
    if gamma < 0:
        raise PreconditionError(f"gamma must be >= 0, got {gamma}")
    if gamma == 0:
        return 2.0
    if gamma < 1:
        return 2.0 * (gamma / (gamma + 1.0)) ** gamma
    return 1.0


def ell_const(gamma: float, d: int) -> float:
    """Constant of the lower bound ``tr(H - lam)_-^g >= l lam_1^(-d/2) (lam - lam_1)_+^(g+d/2)``."""
    if gamma < 1:
        raise PreconditionError(f"ell_const needs gamma >= 1, got {gamma}")
    if d < 2:
        raise PreconditionError(f"ell_const needs d >= 2, got {d}")
    nu = (d - 2) / 2.0
    j = bessel_first_zero(nu)
    jd = bessel_j(d / 2.0, j)
    return (
        gamma_fn(gamma + 1.0)
        * gamma_fn(2.0 + d / 2.0)
        / gamma_fn(gamma + 1.0 + d / 2.0)
        * j * j * jd * jd
        / (d * (d + 2.0))
    )


def stability_constant() -> float:
    """Constant in the eigenvalue-sum bound for the critical relativistic operator."""
    return 6.0 * (math.e / 4.0) ** 3 * (3.0 / (4.0 * math.pi)) * LI_YAU_SUM_CONSTANT


def constant_table(gamma: float, d: int = 2, alpha: float | None = None,
                   sigma: float = 1.5, kappa: float | None = None) -> list[ConstantValue]:
    """All constants that make sense for the given exponents, in a fixed order."""
    if alpha is None:
        alpha = gamma + d / 2.0
    if kappa is None:
        kappa = d / 2.0
    order = RieszOrder(gamma=gamma, dim=d, alpha=alpha,
                       sigma=sigma if sigma > gamma else None, kappa=kappa)
    rows = [
        ConstantValue("semiclassical_constant", order, semiclassical_constant(gamma, d),
                      "Gamma(g+1)/(2^d pi^(d/2) Gamma(g+d/2+1))"),
        ConstantValue("excess_factor_general", order, excess_factor_general(alpha),
                      "(e/a)^a Gamma(a+1)"),
    ]
    if alpha >= gamma:
        rows.append(ConstantValue(
            "excess_factor_discrete", order, excess_factor_discrete(gamma, alpha),
            "(g/e)^g (e/a)^a Gamma(a+1)/Gamma(g+1)"))
    if sigma > gamma:
        rows.append(ConstantValue(
            "lifting_factor", order, lifting_factor(gamma, sigma, kappa),
            "b(g,s)/b(g+k,s+k)"))
    if gamma < 1.5:
        rows.append(ConstantValue(
            "rho_nonsharp", order, rho_nonsharp(gamma, d),
            "lifting from g=3/2 with semiclassical constants"))
    if d == 2:
        rows.append(ConstantValue("rho_hom", order, rho_hom(gamma),
                                  "2 | 2(g/(g+1))^g | 1"))
    if gamma >= 1:
        rows.append(ConstantValue(
            "ell_const", order, ell_const(gamma, d),
            "Gamma(g+1)Gamma(2+d/2)/Gamma(g+1+d/2) j^2 J_{d/2}(j)^2/(d(d+2))"))
    rows.append(ConstantValue(
        "stability_constant", None, stability_constant(), "6(e/4)^3 (3/(4 pi)) 4.4827",
        provenance={"literature_input": LI_YAU_SUM_CONSTANT}))
    return rows
