"""Finite-difference magnetic Laplacians on planar grid domains.

Nodes sit at ``(i h, j h)`` on a bounding box ``[0, aspect] x [0, 1]`` with
``h = 1/n``.  The magnetic potential enters through Peierls phases
``theta = int_edge A . dl`` on the grid links, and the operator is

.. math::
    (H u)(p) = \\frac{1}{h^2}\\Big(d_p\\, u(p) - \\sum_{q \\sim p} e^{i\\theta_{pq}} u(q)\\Big),

with ``d_p = 4`` for Dirichlet (only strictly interior nodes are unknowns)
and ``d_p`` equal to the number of present neighbours for Neumann (nodes of
the closed domain, free boundary).
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FluxWarning, PreconditionError

__all__ = [
    "BOUNDARY_CONDITIONS",
    "GAUGE_KINDS",
    "SHAPES",
    "GaugeField",
    "LatticeDomain",
    "MagneticOperator",
    "assemble_magnetic",
    "build_domain",
    "dirichlet_square_eigenvalues",
]

SHAPES = ("square", "rectangle", "disk", "lshape")
BOUNDARY_CONDITIONS = ("dirichlet", "neumann")
GAUGE_KINDS = ("zero", "homogeneous_symmetric", "homogeneous_landau", "ab_plaquette")

FLUX_WARN = 0.1
_EPS = 1e-12  # geometric tolerance in units of the box size


@dataclass(frozen=True, eq=False)
class LatticeDomain:
    """Grid nodes of a planar domain.

    ``mask[i, j]`` marks the unknowns, indexed by the node ``(i h, j h)``.
    """

    shape: str
    n: int
    bc: str
    aspect: float
    spacing: float
    mask: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    @property
    def area(self) -> float:
        return self.count * self.spacing**2

    @property
    def center(self) -> tuple[float, float]:
        return 0.5 * self.aspect, 0.5

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.mask.shape

    def index_map(self) -> np.ndarray:
        """``idx[i, j]`` = row of node ``(i, j)`` in the operator, ``-1`` if absent."""
        idx = np.full(self.mask.shape, -1, dtype=np.int64)
        idx[self.mask] = np.arange(self.count)
        return idx

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates of the unknowns in row order."""
        i, j = np.nonzero(self.mask)
        return i * self.spacing, j * self.spacing

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.shape}|{self.n}|{self.bc}|{self.aspect!r}".encode())
        h.update(np.packbits(self.mask).tobytes())
        return h.hexdigest()[:16]


def _inside(shape: str, x: np.ndarray, y: np.ndarray, aspect: float, closed: bool) -> np.ndarray:
    e = _EPS if closed else -_EPS
    if shape in ("square", "rectangle"):
        return (x >= -e) & (x <= aspect + e) & (y >= -e) & (y <= 1 + e)
    if shape == "disk":
        r2 = (x - 0.5) ** 2 + (y - 0.5) ** 2
        return r2 <= 0.25 + e
    if shape == "lshape":
        box = (x >= -e) & (x <= 1 + e) & (y >= -e) & (y <= 1 + e)
        return box & ((x <= 0.5 + e) | (y <= 0.5 + e))
    raise DomainError(f"unknown shape {shape!r}; expected one of {SHAPES}")


def build_domain(shape: str, n: int, bc: str = "dirichlet", aspect: float = 2.0) -> LatticeDomain:
    """Grid domain with spacing ``h = 1/n``.

    ``square`` and ``lshape`` (unit square minus its upper-right quarter) and
    ``disk`` (centre ``(1/2, 1/2)``, radius 1/2) live in the unit square;
    ``rectangle`` is ``[0, aspect] x [0, 1]`` with ``aspect * n`` an integer.
    """
    if shape not in SHAPES:
        raise DomainError(f"unknown shape {shape!r}; expected one of {SHAPES}")
    if bc not in BOUNDARY_CONDITIONS:
        raise DomainError(f"unknown boundary condition {bc!r}")
    if int(n) != n or n < 4:
        raise PreconditionError(f"n must be an integer >= 4, got {n}")
    n = int(n)
    if shape != "rectangle":
        aspect = 1.0
    nx = aspect * n
    if abs(nx - round(nx)) > 1e-9 or aspect <= 0:
        raise PreconditionError(f"aspect * n must be a positive integer, got {nx}")
    nx = int(round(nx))
    h = 1.0 / n
    x = (np.arange(nx + 1) * h)[:, None]
    y = (np.arange(n + 1) * h)[None, :]
    x, y = np.broadcast_arrays(x, y)
    closed = bc == "neumann"
    mask = _inside(shape, x, y, float(aspect), closed)
    if not closed:
        # Dirichlet unknowns: drop nodes on the boundary
        mask &= ~_on_boundary(shape, x, y, float(aspect))
    if not mask.any():
        raise PreconditionError(f"domain {shape!r} with n={n} has no nodes")
    mask.setflags(write=False)
    return LatticeDomain(shape, n, bc, float(aspect), h, mask)


def _on_boundary(shape: str, x: np.ndarray, y: np.ndarray, aspect: float) -> np.ndarray:
    return _inside(shape, x, y, aspect, True) & ~_inside(shape, x, y, aspect, False)


@dataclass(frozen=True)
class GaugeField:
    """Magnetic potential, described through its Peierls phases.

    ``homogeneous_symmetric``: ``A = (B/2)(-(y - yc), x - xc)``.
    ``homogeneous_landau``: ``A = (0, B (x - xc))``.
    ``ab_plaquette``: flux ``2 pi alpha`` through the plaquette nearest the
    centre, carried by the vertical links on the half-line to its right.
    """

    kind: str = "zero"
    B: float = 0.0
    flux: float = 0.0

    def __post_init__(self):
        if self.kind not in GAUGE_KINDS:
            raise DomainError(f"unknown gauge kind {self.kind!r}; expected one of {GAUGE_KINDS}")
        if self.B < 0:
            raise DomainError(f"field strength must be >= 0, got {self.B}")

    @property
    def is_zero(self) -> bool:
        if self.kind == "ab_plaquette":
            return self.flux == math.floor(self.flux)
        return self.kind == "zero" or self.B == 0.0

    def link_phases(self, domain: LatticeDomain) -> tuple[np.ndarray, np.ndarray]:
        """Phases on every link of the bounding grid.

        Returns ``(horizontal, vertical)`` with ``horizontal[i, j]`` on the link
        ``(i, j) -> (i+1, j)`` and ``vertical[i, j]`` on ``(i, j) -> (i, j+1)``.
        A is linear, so the midpoint value times ``h`` is the exact line integral.
        """
        nx1, ny1 = domain.grid_shape
        h = domain.spacing
        xc, yc = domain.center
        horiz = np.zeros((nx1 - 1, ny1))
        vert = np.zeros((nx1, ny1 - 1))
        if self.kind == "homogeneous_symmetric":
            y = np.arange(ny1) * h
            x = np.arange(nx1) * h
            horiz[:] = (-0.5 * self.B * (y - yc) * h)[None, :]
            vert[:] = (0.5 * self.B * (x - xc) * h)[:, None]
        elif self.kind == "homogeneous_landau":
            x = np.arange(nx1) * h
            vert[:] = (self.B * (x - xc) * h)[:, None]
        elif self.kind == "ab_plaquette":
            i0, j0 = self.marked_plaquette(domain)
            vert[i0 + 1:, j0] = 2.0 * math.pi * self.flux
        return horiz, vert

    def marked_plaquette(self, domain: LatticeDomain) -> tuple[int, int]:
        """Lower-left node ``(i, j)`` of the plaquette carrying the AB flux."""
        xc, yc = domain.center
        h = domain.spacing
        nx1, ny1 = domain.grid_shape
        i0 = min(int(math.floor(xc / h + 1e-9)), nx1 - 2)
        j0 = min(int(math.floor(yc / h + 1e-9)), ny1 - 2)
        return i0, j0

    def plaquette_fluxes(self, domain: LatticeDomain) -> np.ndarray:
        """Counter-clockwise phase sum around every cell of the bounding grid."""
        horiz, vert = self.link_phases(domain)
        return horiz[:, :-1] + vert[1:, :] - horiz[:, 1:] - vert[:-1, :]

    def digest(self) -> str:
        return hashlib.sha256(f"{self.kind}|{self.B!r}|{self.flux!r}".encode()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class MagneticOperator:
    """Dense Hermitian matrix of the lattice magnetic Laplacian."""

    matrix: np.ndarray = field(repr=False)
    domain: LatticeDomain
    gauge: GaugeField

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))

    @property
    def bc(self) -> str:
        return self.domain.bc

    @property
    def provenance(self) -> tuple[str, str]:
        return self.domain.digest(), self.gauge.digest()


def assemble_magnetic(domain: LatticeDomain, gauge: GaugeField | None = None) -> MagneticOperator:
    """Assemble the 5-point magnetic Laplacian of ``domain`` in ``gauge``.

    A zero gauge gives a real symmetric matrix; otherwise the matrix is
    complex Hermitian.  Warns with :class:`FluxWarning` when the flux per
    plaquette ``B h^2`` exceeds 0.1.
    """
    gauge = gauge or GaugeField()
    h = domain.spacing
    if gauge.kind.startswith("homogeneous") and gauge.B * h * h > FLUX_WARN:
        warnings.warn(f"flux per plaquette B h^2 = {gauge.B * h * h:.3g} exceeds {FLUX_WARN}",
                      FluxWarning, stacklevel=2)
    idx = domain.index_map()
    size = domain.count
    real = gauge.is_zero
    H = np.zeros((size, size), dtype=float if real else complex)
    horiz, vert = gauge.link_phases(domain)
    inv_h2 = 1.0 / (h * h)
    degree = np.zeros(size)
    for src, dst, theta in (
        (idx[:-1, :], idx[1:, :], horiz),
        (idx[:, :-1], idx[:, 1:], vert),
    ):
        both = (src >= 0) & (dst >= 0)
        p, q = src[both], dst[both]
        if real:
            hop = np.full(p.size, -inv_h2)
        else:
            hop = -np.exp(1j * theta[both]) * inv_h2
        # H[q, p] multiplies u(p) in row q: phase of the link p -> q
        H[q, p] = hop
        H[p, q] = np.conj(hop)
        np.add.at(degree, p, 1.0)
        np.add.at(degree, q, 1.0)
    if domain.bc == "dirichlet":
        H[np.diag_indices(size)] = 4.0 * inv_h2
    else:
        H[np.diag_indices(size)] = degree * inv_h2
    H.setflags(write=False)
    return MagneticOperator(H, domain, gauge)


def dirichlet_square_eigenvalues(n: int) -> np.ndarray:
    """Exact sorted spectrum of the non-magnetic Dirichlet unit-square operator."""
    h = 1.0 / n
    s2 = np.sin(0.5 * math.pi * np.arange(1, n) * h) ** 2
    return np.sort((4.0 / (h * h) * (s2[:, None] + s2[None, :])).ravel())
