"""Finite-matrix checks of Birman-Schwinger counting and semigroup domination.

A :class:`DominationPair` holds a real non-magnetic operator ``H``, a
magnetic twist ``M`` of it and a non-negative coupling map ``G``.  The
random instances are Dirichlet grid Laplacians (diagonal 4, hopping -1)
with Peierls phases built from i.i.d. uniform plaquette fluxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import BoundReport, make_report
from .constants import excess_factor_general
from .eig import check_hermitian, inverse_sqrt, matrix_exp
from .errors import DomainError, PreconditionError

__all__ = [
    "DOMINATION_TOL",
    "DominationPair",
    "DominationReport",
    "SUITES",
    "SuiteResult",
    "ThresholdSet",
    "average_lemma_check",
    "bs_thresholds",
    "count_negative",
    "domination_check",
    "grid_pair",
    "random_pair",
    "regularize",
    "run_suite",
    "trace_negative_part",
    "verify_diamag_theorem",
]

DOMINATION_TOL = 1e-12
REGULARIZATION = 1e-8
SUITES = ("average", "domination", "diamag")


@dataclass(frozen=True, eq=False)
class DominationPair:
    H: np.ndarray = field(repr=False)
    M: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)

    def __post_init__(self):
        H, M, G = (np.asarray(a) for a in (self.H, self.M, self.G))
        check_hermitian(H)
        check_hermitian(M)
        if np.iscomplexobj(H) and np.abs(H.imag).max() > 0:
            raise PreconditionError("H must be real")
        if H.shape != M.shape or G.ndim != 2 or G.shape[1] != H.shape[0]:
            raise PreconditionError("H, M and G have incompatible shapes")
        if np.any(np.abs(np.abs(M) - np.abs(H)) > 1e-12 * max(1.0, np.abs(H).max())):
            raise PreconditionError("|M| must equal |H| entrywise")
        if np.any(np.abs(np.diag(M) - np.diag(H)) > 1e-12):
            raise PreconditionError("M and H must share the diagonal")
        if np.iscomplexobj(G) or np.any(G < 0):
            raise PreconditionError("G must be real and entrywise non-negative")

    @property
    def size(self) -> int:
        return self.H.shape[0]

    @property
    def coupling(self) -> np.ndarray:
        """``G* G``."""
        return self.G.T @ self.G


@dataclass(frozen=True)
class ThresholdSet:
    """Couplings at which ``H - lam G*G`` gains a negative eigenvalue."""

    couplings: np.ndarray

    def count_below(self, lam: float) -> int:
        return int(np.searchsorted(self.couplings, lam, side="left"))

    def __len__(self) -> int:
        return self.couplings.size


def regularize(H: np.ndarray, eps: float = REGULARIZATION) -> np.ndarray:
    """``H + eps I`` if ``H`` is not positive definite, else ``H``."""
    if np.linalg.eigvalsh(H)[0] > 0:
        return H
    return H + eps * np.eye(H.shape[0])


def bs_thresholds(H, G) -> ThresholdSet:
    """Reciprocals of the positive eigenvalues of ``K K*``, ``K = G H^(-1/2)``."""
    H = np.asarray(H)
    G = np.asarray(G, dtype=float)
    K = G @ inverse_sqrt(H)
    mu = np.linalg.eigvalsh(K @ K.conj().T)
    mu = mu[mu > 1e-13 * max(1.0, mu.max(initial=0.0))]
    kappa = np.sort(1.0 / mu)
    kappa.setflags(write=False)
    return ThresholdSet(kappa)


def count_negative(A: np.ndarray, below: float = 0.0) -> int:
    """Number of eigenvalues strictly less than ``below``."""
    return int(np.sum(np.linalg.eigvalsh(A) < below))


def trace_negative_part(A: np.ndarray, gamma: float) -> float:
    """``tr(A)_-^gamma``; ``gamma = 0`` counts negative eigenvalues."""
    w = np.linalg.eigvalsh(A)
    neg = -w[w < 0]
    if gamma == 0:
        return float(neg.size)
    return float(np.sum(neg**gamma))


@dataclass(frozen=True)
class DominationReport:
    max_violation: float
    worst_t: float
    verdict: str

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def domination_check(pair: DominationPair, t_grid) -> DominationReport:
    """Largest ``|exp(-tM)_jk| - exp(-tH)_jk`` over ``t_grid`` and all entries."""
    worst, worst_t = -math.inf, math.nan
    for t in np.atleast_1d(np.asarray(t_grid, dtype=float)):
        v = float(np.max(np.abs(matrix_exp(pair.M, t)) - matrix_exp(pair.H, t)))
        if v > worst:
            worst, worst_t = v, float(t)
    verdict = "holds" if worst <= DOMINATION_TOL else "violated"
    return DominationReport(worst, worst_t, verdict)


def average_lemma_check(pair: DominationPair, tau: float, t: float,
                        check_domination: bool = True) -> BoundReport:
    """``N(-tau, M - G*G) <= e^t sum_j exp(-kappa_j t)``.

    ``kappa_j`` are the thresholds of ``(H + tau, G)``; the right side is the
    exact value of ``t e^t int_0^inf N(-tau, H - lam G*G) e^(-lam t) dlam``.
    """
    if tau < 0 or not t > 0:
        raise DomainError(f"need tau >= 0 and t > 0, got {tau}, {t}")
    if check_domination:
        rep = domination_check(pair, [t])
        if not rep.holds:
            raise PreconditionError(f"domination fails (violation {rep.max_violation:.3g})")
    shifted = regularize(pair.H + tau * np.eye(pair.size))
    kappa = bs_thresholds(shifted, pair.G).couplings
    lhs = count_negative(pair.M - pair.coupling, -tau)
    rhs = math.exp(t) * float(np.sum(np.exp(-kappa * t)))
    return make_report("average", t, lhs, rhs, 0.0)


def _power_fit(H: np.ndarray, W: np.ndarray, gamma: float, alpha: float, grid) -> float:
    """``sup_lam tr(H - lam W)_-^g / lam^a`` over the grid, plus jump points when ``g = 0``."""
    best = max(trace_negative_part(H - lam * W, gamma) / lam**alpha for lam in grid)
    if gamma == 0:
        # the count is right-continuous with jumps at the thresholds; the sup
        # of j / lam^a sits just above each of them
        kappa = bs_thresholds(regularize(H), _sqrt_psd(W)).couplings
        if kappa.size:
            j = np.arange(1, kappa.size + 1)
            best = max(best, float(np.max(j / kappa**alpha)))
    return best


def _sqrt_psd(W: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(W)
    return (V * np.sqrt(np.clip(w, 0.0, None))[None, :]) @ V.T


def verify_diamag_theorem(pair: DominationPair, gamma: float, alpha: float,
                          coupling_grid) -> list[BoundReport]:
    """``tr(M - lam G*G)_-^g <= C (e/a)^a Gamma(a+1) lam^a`` on the grid.

    ``C`` is the smallest constant with ``tr(H - lam G*G)_-^g <= C lam^a`` on
    the grid (and at the jump points for ``g = 0``).
    """
    grid = np.atleast_1d(np.asarray(coupling_grid, dtype=float))
    if np.any(grid <= 0):
        raise DomainError("couplings must be positive")
    W = pair.coupling
    C = _power_fit(pair.H, W, gamma, alpha, grid)
    factor = C * excess_factor_general(alpha)
    return [make_report("diamag", lam, trace_negative_part(pair.M - lam * W, gamma),
                        factor * lam**alpha, 0.0) for lam in grid]


def grid_pair(lx: int, ly: int, plaquette_flux, g_diag) -> DominationPair:
    """Dirichlet grid Laplacian on ``lx x ly`` nodes and its Peierls twist.

    ``plaquette_flux`` has shape ``(lx - 1, ly - 1)``; the phases live on
    vertical links as cumulative sums from the left edge.
    """
    n = lx * ly
    idx = np.arange(n).reshape(lx, ly)
    H = 4.0 * np.eye(n)
    M = 4.0 * np.eye(n, dtype=complex)
    flux = np.asarray(plaquette_flux, dtype=float).reshape(lx - 1, ly - 1)
    theta = np.zeros((lx, ly - 1))
    theta[1:] = np.cumsum(flux, axis=0)
    p, q = idx[:-1, :].ravel(), idx[1:, :].ravel()
    H[p, q] = H[q, p] = -1.0
    M[p, q] = M[q, p] = -1.0
    p, q = idx[:, :-1].ravel(), idx[:, 1:].ravel()
    hop = -np.exp(1j * theta.ravel())
    H[p, q] = H[q, p] = -1.0
    M[q, p] = hop
    M[p, q] = np.conj(hop)
    return DominationPair(H, M, np.diag(np.asarray(g_diag, dtype=float)))


def random_pair(rng: np.random.Generator, max_nodes: int = 64) -> DominationPair:
    """Random grid pair with at most ``max_nodes`` nodes."""
    while True:
        lx, ly = (int(v) for v in rng.integers(2, 9, size=2))
        if lx * ly <= max_nodes:
            break
    flux = rng.uniform(0.0, 2.0 * math.pi, size=(lx - 1, ly - 1))
    g = rng.uniform(0.0, 1.0, size=lx * ly)
    return grid_pair(lx, ly, flux, g)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    instances: int
    checks: int
    violations: int
    worst: float  # largest violation (domination) or largest lhs/rhs ratio

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        return {"suite": self.suite, "instances": self.instances, "checks": self.checks,
                "violations": self.violations, "worst": self.worst}


def run_suite(suite: str, instances: int, seed: int = 0) -> SuiteResult:
    """Run one randomized suite; instances are drawn from ``default_rng(seed)``."""
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if instances < 1:
        raise DomainError("need at least one instance")
    rng = np.random.default_rng(seed)
    checks = violations = 0
    worst = -math.inf
    for _ in range(instances):
        pair = random_pair(rng)
        if suite == "domination":
            rep = domination_check(pair, (0.1, 1.0, 10.0))
            checks += 1
            violations += not rep.holds
            worst = max(worst, rep.max_violation)
            continue
        if suite == "average":
            # G -> sqrt(lam) G so that M - G*G has a few negative eigenvalues
            lam = float(rng.uniform(1.0, 16.0))
            tau = float(rng.uniform(0.0, 0.5))
            scaled = DominationPair(pair.H, pair.M, math.sqrt(lam) * pair.G)
            reports = [average_lemma_check(scaled, tau, t, check_domination=False)
                       for t in (0.5, 1.0, 2.0)]
        else:
            grid = np.geomspace(0.5, 200.0, 40)
            reports = (verify_diamag_theorem(pair, 0.0, 1.0, grid)
                       + verify_diamag_theorem(pair, 1.0, 2.0, grid))
        checks += len(reports)
        violations += sum(not r.holds for r in reports)
        worst = max(worst, max(r.ratio for r in reports if math.isfinite(r.ratio)))
    return SuiteResult(suite, instances, checks, violations, float(worst))
