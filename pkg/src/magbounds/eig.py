"""Dense Hermitian eigenvalues and spectral matrix functions.

Thin wrappers over LAPACK (Householder tridiagonalisation followed by a
divide-and-conquer / implicit-shift tridiagonal solver, via ``numpy.linalg``)
with the input checks and invariants the rest of the package relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import PreconditionError

__all__ = [
    "MAX_DIMENSION",
    "Spectrum",
    "check_hermitian",
    "eigenvalues",
    "inverse_sqrt",
    "matrix_exp",
    "matrix_function",
]

MAX_DIMENSION = 5000
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues, optionally with orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray | None = field(default=None, repr=False)
    source: str = ""

    def __len__(self) -> int:
        return self.values.size

    @property
    def lowest(self) -> float:
        return float(self.values[0])

    def residuals(self, H: np.ndarray) -> np.ndarray:
        """``||H v - lam v||`` for every stored pair."""
        if self.vectors is None:
            raise PreconditionError("spectrum was computed without eigenvectors")
        R = H @ self.vectors - self.vectors * self.values[None, :]
        return np.linalg.norm(R, axis=0)


def check_hermitian(H: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    """Raise :class:`PreconditionError` unless ``H`` is square and Hermitian."""
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H))) if H.size else 1.0)
    if H.size and np.max(np.abs(H - H.conj().T)) > tol * scale:
        raise PreconditionError("matrix is not Hermitian")


def eigenvalues(H, want_vectors: bool = False, source: str = "") -> Spectrum:
    """Full spectrum of a Hermitian matrix of dimension at most 5000."""
    H = np.asarray(H)
    check_hermitian(H)
    if H.shape[0] > MAX_DIMENSION:
        raise PreconditionError(f"dimension {H.shape[0]} exceeds the cap {MAX_DIMENSION}")
    if want_vectors:
        w, v = np.linalg.eigh(H)
        v.setflags(write=False)
    else:
        w, v = np.linalg.eigvalsh(H), None
    w.setflags(write=False)
    return Spectrum(w, v, source)


def matrix_function(H, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """``V f(Lambda) V*`` for Hermitian ``H`` and a vectorised scalar ``f``."""
    H = np.asarray(H)
    check_hermitian(H)
    w, V = np.linalg.eigh(H)
    F = (V * f(w)[None, :]) @ V.conj().T
    return 0.5 * (F + F.conj().T)


def matrix_exp(H, t: float) -> np.ndarray:
    """Heat semigroup ``exp(-t H)``."""
    return matrix_function(H, lambda w: np.exp(-t * w))


def inverse_sqrt(H, tol: float = 0.0) -> np.ndarray:
    """``H^(-1/2)`` for positive definite ``H``."""
    H = np.asarray(H)
    check_hermitian(H)
    w, V = np.linalg.eigh(H)
    if w.size and w[0] <= tol:
        raise PreconditionError(f"matrix is not positive definite (lowest eigenvalue {w[0]:.3g})")
    F = (V / np.sqrt(w)[None, :]) @ V.conj().T
    return 0.5 * (F + F.conj().T)
