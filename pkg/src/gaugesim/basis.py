"""Elementary operator matrices in the oscillator and position bases.

Conventions:

* oscillator basis: Q and P are the usual ladder combinations truncated to
  the lowest n number states, so [Q, P] = i*1 everywhere except the last
  diagonal entry (n-1, n-1), where truncation forces i*(1 - n);
* position basis: the grid is the antisymmetric set of n points
  sqrt(2*pi/(4n)) * (2j - (n+1)) for 1-based j, momentum follows by
  conjugating with the symmetric DFT (Sylvester) matrix F;
* tensor placement: slot 0 is the leftmost Kronecker factor and therefore
  the most significant part of the composite index.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, InvalidSizeError
from .operators import as_operator

__all__ = [
    "osc_q",
    "osc_p",
    "osc_q2",
    "osc_p2",
    "pos_q",
    "pos_grid",
    "sylvester_f",
    "pos_p",
    "fermion_factor",
    "place",
]


def _check_size(n: int) -> int:
    n = int(n)
    if n < 2:
        raise InvalidSizeError(f"basis size must be >= 2, got {n}")
    return n


def osc_q(n: int) -> np.ndarray:
    """Position operator in the truncated oscillator basis.

    Tridiagonal with Q[j, j+1] = Q[j+1, j] = sqrt(j+1)/sqrt(2).
    """
    n = _check_size(n)
    off = np.sqrt(np.arange(1, n)) / np.sqrt(2.0)
    q = np.zeros((n, n), dtype=np.complex128)
    idx = np.arange(n - 1)
    q[idx, idx + 1] = off
    q[idx + 1, idx] = off
    return q


def osc_p(n: int) -> np.ndarray:
    """Momentum operator in the truncated oscillator basis (purely imaginary)."""
    n = _check_size(n)
    off = np.sqrt(np.arange(1, n)) / np.sqrt(2.0)
    p = np.zeros((n, n), dtype=np.complex128)
    idx = np.arange(n - 1)
    p[idx, idx + 1] = -1j * off
    p[idx + 1, idx] = 1j * off
    return p


def osc_q2(n: int) -> np.ndarray:
    """Truncated matrix of the squared position operator x^2.

    This is the n x n block of the infinite x^2 matrix, not osc_q(n) @
    osc_q(n): the two differ in the last two diagonal entries, where the
    matrix square loses the contribution that passes through truncated
    states.  Entries: diag (2j+1)/2, second off-diagonals
    sqrt((j+1)(j+2))/2.
    """
    n = _check_size(n)
    m = np.zeros((n, n), dtype=np.complex128)
    j = np.arange(n)
    m[j, j] = (2 * j + 1) / 2.0
    k = np.arange(n - 2)
    off = np.sqrt((k + 1) * (k + 2)) / 2.0
    m[k, k + 2] = off
    m[k + 2, k] = off
    return m


def osc_p2(n: int) -> np.ndarray:
    """Truncated matrix of the squared momentum operator p^2.

    Same structure as osc_q2 with negated second off-diagonals.
    """
    m = osc_q2(n)
    k = np.arange(m.shape[0] - 2)
    m[k, k + 2] *= -1.0
    m[k + 2, k] *= -1.0
    return m


def pos_grid(n: int) -> np.ndarray:
    """The n position-grid values sqrt(2*pi/(4n)) * (2j - (n+1)), j = 1..n."""
    n = _check_size(n)
    j = np.arange(1, n + 1)
    return np.sqrt(2.0 * np.pi / (4.0 * n)) * (2 * j - (n + 1))


def pos_q(n: int) -> np.ndarray:
    """Diagonal position operator on the antisymmetric grid."""
    return np.diag(pos_grid(n)).astype(np.complex128)


def sylvester_f(n: int) -> np.ndarray:
    """Symmetric unitary DFT matrix on the centered grid.

    F[j, k] = exp(i * (2*pi/(4n)) * (2j - (n+1)) * (2k - (n+1))) / sqrt(n)
    with 1-based j, k.  All entries are unimodular up to the 1/sqrt(n)
    normalization, and F is symmetric (not Hermitian).
    """
    n = _check_size(n)
    o = 2 * np.arange(1, n + 1) - (n + 1)
    phase = (2.0 * np.pi / (4.0 * n)) * np.outer(o, o)
    return np.exp(1j * phase) / np.sqrt(n)


def pos_p(n: int) -> np.ndarray:
    """Momentum operator in the position basis: F^dag Q F (dense, Hermitian)."""
    f = sylvester_f(n)
    return f.conj().T @ pos_q(n) @ f


def fermion_factor() -> np.ndarray:
    """Single worldline-fermion raising factor [[0, 1], [0, 0]]."""
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)


def place(op, slot: int, dims) -> np.ndarray:
    """Embed ``op`` at tensor position ``slot`` with identity padding.

    Returns I_{d0} (x) ... (x) op (x) ... (x) I_{dlast} for the factor
    dimensions in ``dims``.  Requires dim(op) == dims[slot].
    """
    m = as_operator(op)
    dims = [int(d) for d in dims]
    if not 0 <= slot < len(dims):
        raise DimensionMismatchError(f"slot {slot} outside dims of length {len(dims)}")
    if m.shape[0] != dims[slot]:
        raise DimensionMismatchError(
            f"operator dim {m.shape[0]} does not match dims[{slot}] = {dims[slot]}"
        )
    left = int(np.prod(dims[:slot], dtype=np.int64)) if slot else 1
    right = int(np.prod(dims[slot + 1:], dtype=np.int64)) if slot + 1 < len(dims) else 1
    out = m
    if left > 1:
        out = np.kron(np.eye(left, dtype=np.complex128), out)
    if right > 1:
        out = np.kron(out, np.eye(right, dtype=np.complex128))
    return out
