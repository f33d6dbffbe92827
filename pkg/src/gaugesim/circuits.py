"""Minimal statevector engine and the layered Ry variational form.

States are plain 1-D complex ndarrays of length 2**n.  Qubit 0 is the
most significant bit of the basis index, matching the tensor-slot
convention of the basis module (slot 0 = leftmost Kronecker factor).
Gate functions return new arrays; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidConfigError,
    NotHermitianError,
    QubitOutOfRangeError,
)

__all__ = [
    "AnsatzConfig",
    "zero_state",
    "apply_ry",
    "apply_cz",
    "apply_cx",
    "ansatz_state",
    "expectation",
    "n_qubits_of",
]


def n_qubits_of(state) -> int:
    n = int(np.log2(len(state)))
    if 2 ** n != len(state):
        raise DimensionMismatchError(f"state length {len(state)} is not a power of two")
    return n


def zero_state(n_qubits: int) -> np.ndarray:
    psi = np.zeros(2 ** n_qubits, dtype=np.complex128)
    psi[0] = 1.0
    return psi


def _check_qubit(qubit: int, n: int):
    if not 0 <= qubit < n:
        raise QubitOutOfRangeError(f"qubit {qubit} outside register of {n}")


def apply_ry(state, qubit: int, theta: float) -> np.ndarray:
    """Rotate one qubit by [[cos t/2, -sin t/2], [sin t/2, cos t/2]]."""
    n = n_qubits_of(state)
    _check_qubit(qubit, n)
    psi = np.array(state, dtype=np.complex128).reshape(2 ** qubit, 2, -1)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    a, b = psi[:, 0, :].copy(), psi[:, 1, :].copy()
    psi[:, 0, :] = c * a - s * b
    psi[:, 1, :] = s * a + c * b
    return psi.reshape(-1)


def apply_cz(state, control: int, target: int) -> np.ndarray:
    """Phase -1 on basis states with both qubits set (symmetric in its args)."""
    n = n_qubits_of(state)
    _check_qubit(control, n)
    _check_qubit(target, n)
    if control == target:
        raise QubitOutOfRangeError("control and target must differ")
    idx = np.arange(len(state))
    both = ((idx >> (n - 1 - control)) & (idx >> (n - 1 - target)) & 1).astype(bool)
    out = np.array(state, dtype=np.complex128)
    out[both] = -out[both]
    return out


def apply_cx(state, control: int, target: int) -> np.ndarray:
    """Flip the target qubit where the control is set."""
    n = n_qubits_of(state)
    _check_qubit(control, n)
    _check_qubit(target, n)
    if control == target:
        raise QubitOutOfRangeError("control and target must differ")
    idx = np.arange(len(state))
    ctrl = ((idx >> (n - 1 - control)) & 1).astype(bool)
    src = np.where(ctrl, idx ^ (1 << (n - 1 - target)), idx)
    return np.asarray(state, dtype=np.complex128)[src]


@lru_cache(maxsize=None)
def _cz_full_layer_signs(n: int) -> np.ndarray:
    """Diagonal of the all-pairs CZ layer: (-1)**C(popcount, 2).

    Every CZ is diagonal, so the whole entangling layer collapses to one
    sign vector; using it is exactly equivalent to applying the pair
    gates one by one, in any order.
    """
    idx = np.arange(2 ** n, dtype=np.uint64)
    k = np.bitwise_count(idx).astype(np.int64)
    return np.where((k * (k - 1) // 2) % 2 == 0, 1.0, -1.0)


@dataclass(frozen=True)
class AnsatzConfig:
    """Layered Ry form: a rotation layer, then ``depth`` blocks of
    [all-pairs entangler, rotation layer].

    ``params`` must hold n_qubits * (depth + 1) angles, ordered layer by
    layer.  ``entangler`` is "cz" (default; order-free) or "cx" (pairs
    applied in ascending (control < target) order).
    """

    n_qubits: int
    depth: int
    params: np.ndarray
    entanglement: str = "full"
    entangler: str = "cz"

    def __post_init__(self):
        if self.n_qubits < 1 or self.depth < 0:
            raise InvalidConfigError(
                f"bad ansatz shape: n_qubits={self.n_qubits}, depth={self.depth}"
            )
        if self.entanglement != "full":
            raise InvalidConfigError(f"unsupported entanglement {self.entanglement!r}")
        if self.entangler not in ("cz", "cx"):
            raise InvalidConfigError(f"unsupported entangler {self.entangler!r}")
        p = np.asarray(self.params, dtype=float)
        if p.shape != (self.n_params,):
            raise InvalidConfigError(
                f"expected {self.n_params} parameters, got shape {p.shape}"
            )
        object.__setattr__(self, "params", p)

    @property
    def n_params(self) -> int:
        return self.n_qubits * (self.depth + 1)

    def with_params(self, params) -> "AnsatzConfig":
        return AnsatzConfig(
            n_qubits=self.n_qubits,
            depth=self.depth,
            params=np.asarray(params, dtype=float),
            entanglement=self.entanglement,
            entangler=self.entangler,
        )


def _rotation_layer(psi: np.ndarray, n: int, thetas) -> np.ndarray:
    for q in range(n):
        half = thetas[q] / 2.0
        c, s = np.cos(half), np.sin(half)
        view = psi.reshape(2 ** q, 2, -1)
        a, b = view[:, 0, :].copy(), view[:, 1, :].copy()
        view[:, 0, :] = c * a - s * b
        view[:, 1, :] = s * a + c * b
    return psi


def ansatz_state(cfg: AnsatzConfig) -> np.ndarray:
    """Statevector prepared by the ansatz from |0...0>."""
    n = cfg.n_qubits
    layers = cfg.params.reshape(cfg.depth + 1, n)
    psi = zero_state(n)
    psi = _rotation_layer(psi, n, layers[0])
    for d in range(cfg.depth):
        if cfg.entangler == "cz":
            psi = psi * _cz_full_layer_signs(n)
        else:
            for c in range(n - 1):
                for t in range(c + 1, n):
                    psi = apply_cx(psi, c, t)
        psi = _rotation_layer(psi, n, layers[d + 1])
    return psi


def expectation(state, h) -> float:
    """Real expectation value <psi| H |psi>.

    H must act on the same register (dimension check) and be Hermitian;
    a residual imaginary part above 1e-10 indicates a non-Hermitian H
    and raises.
    """
    psi = np.asarray(state, dtype=np.complex128)
    hm = np.asarray(h, dtype=np.complex128)
    if hm.shape != (len(psi), len(psi)):
        raise DimensionMismatchError(
            f"operator shape {hm.shape} does not match state of length {len(psi)}"
        )
    val = complex(np.vdot(psi, hm @ psi))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise NotHermitianError(
            f"expectation has imaginary residue {val.imag:.3e}; "
            "operator is not Hermitian (apply the HermitianPart variant first)"
        )
    return val.real
