"""Dense complex operator kernel.

Operators are plain ``numpy.ndarray`` values of shape ``(d, d)`` and dtype
complex128.  Everything here is a pure function: inputs are never mutated,
so values can be shared freely between threads.  Problem sizes stay at or
below 512x512, where dense O(n^3) linear algebra is entirely adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotHermitianError

__all__ = [
    "EigenSystem",
    "as_operator",
    "herm_defect",
    "is_hermitian",
    "kron",
    "hermitian_eig",
    "matrix_function",
    "evolve_unitary",
]

#: Relative Hermiticity tolerance used when none is given explicitly.
HERM_TOL = 1e-10


def as_operator(a) -> np.ndarray:
    """Coerce to a square complex128 matrix (no copy when already one)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def herm_defect(a) -> float:
    """max |a - a^dag| entrywise, the absolute deviation from Hermiticity."""
    m = as_operator(a)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(a, tol: float = HERM_TOL) -> bool:
    """True when the Hermiticity defect is below ``tol * max|a|``."""
    m = as_operator(a)
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if scale == 0.0:
        return True
    return herm_defect(m) <= tol * scale


def _require_hermitian(a, tol: float, who: str) -> np.ndarray:
    m = as_operator(a)
    if not is_hermitian(m, tol):
        raise NotHermitianError(
            f"{who}: matrix is not Hermitian to tolerance {tol:g} "
            f"(defect {herm_defect(m):.3e})"
        )
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square operators.

    (a (x) b)[i*db + j, k*db + l] = a[i, k] * b[j, l], so the left factor
    owns the most significant part of the index.
    """
    return np.kron(as_operator(a), as_operator(b))


@dataclass(frozen=True)
class EigenSystem:
    """Full spectrum of a Hermitian operator.

    ``values`` is ascending and real; the columns of ``vectors`` are the
    matching orthonormal eigenvectors, so a = V diag(values) V^dag.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.values) @ v.conj().T


def hermitian_eig(a, tol: float = HERM_TOL) -> EigenSystem:
    """Diagonalize a Hermitian operator (ascending real spectrum).

    Raises NotHermitianError when the input violates ``tol``.  Backed by
    LAPACK's dense Hermitian solver, which is robust and deterministic at
    these sizes.
    """
    m = _require_hermitian(a, tol, "hermitian_eig")
    values, vectors = np.linalg.eigh(m)
    return EigenSystem(values=values.astype(float), vectors=vectors.astype(np.complex128))


def matrix_function(a, f: Callable[[np.ndarray], np.ndarray], floor: float = 0.0) -> np.ndarray:
    """Spectral function f(a) of a Hermitian operator.

    Eigenvalues with |lambda| < floor are replaced by +floor before f is
    applied; this regularizes inverse powers of operators whose truncated
    spectra graze zero.  floor=0 disables clamping.
    """
    es = hermitian_eig(a)
    lam = es.values.copy()
    if floor > 0.0:
        lam[np.abs(lam) < floor] = floor
    flam = np.asarray(f(lam), dtype=np.complex128)
    v = es.vectors
    return (v * flam) @ v.conj().T


def evolve_unitary(h, t: float) -> np.ndarray:
    """U = exp(-i h t) for Hermitian h, computed spectrally."""
    es = hermitian_eig(h)
    phase = np.exp(-1j * es.values * float(t))
    v = es.vectors
    return (v * phase) @ v.conj().T
