"""Numerical companion for magnetic Riesz-mean eigenvalue inequalities.

Special functions, closed-form constants, Landau and Aharonov-Bohm sharp
constants, lattice magnetic Laplacians and finite-matrix checks of the
diamagnetic machinery.
"""

from .abflux import ab_asymptotic, ab_constant, ab_series
from .constants import (
    ell_const,
    excess_factor_discrete,
    excess_factor_general,
    lifting_factor,
    rho_hom,
    rho_nonsharp,
    semiclassical_constant,
    stability_constant,
)
from .eig import Spectrum, eigenvalues, matrix_function
from .errors import (
    BoundaryMaximumWarning,
    ConvergenceError,
    DomainError,
    FluxWarning,
    MagboundsError,
    PreconditionError,
    ToleranceError,
    TruncationError,
)
from .landau import landau_ratio_sup, landau_riesz_sum
from .lattice import GaugeField, assemble_magnetic, build_domain
from .specfun import bessel_first_zero, bessel_j, gamma_fn, sine_integral

__version__ = "0.1.0"
