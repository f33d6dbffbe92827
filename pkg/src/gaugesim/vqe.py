"""Classical outer loop minimizing the ansatz energy.

The objective theta -> <psi(theta)| H |psi(theta)> is smooth, so any local
smooth minimizer is adequate; the default is SLSQP fed with the exact
parameter-shift gradient of the Ry form (every parametrized gate is an Ry,
whose generator has eigenvalues +-1/2, so the +-pi/2 shift rule is exact).
Runs are deterministic for a fixed seed.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
import scipy.optimize

from .circuits import AnsatzConfig, ansatz_state, expectation
from .errors import DimensionMismatchError, NotHermitianError
from .hamiltonians import BuiltHamiltonian
from .operators import is_hermitian

__all__ = [
    "OptimizerSettings",
    "VqeResult",
    "SweepCell",
    "template",
    "energy_of",
    "energy_gradient",
    "minimize",
    "sweep",
    "write_trace_csv",
]

DEFAULT_SEED = 11


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs for one minimize run.

    ``gradient`` is "shift" (exact parameter-shift, default) or "fd"
    (central differences with ``gradient_step``).  ``restarts`` > 1 runs
    independent seeds seed, seed+1, ... and keeps the best result.
    ``init`` is "random" (uniform in [-pi, pi], the default) or "zeros";
    the all-zeros start is a stationary point of some objectives, which is
    why it is not the default.
    """

    max_iter: int = 600
    tolerance: float = 1e-9
    seed: int = DEFAULT_SEED
    restarts: int = 1
    gradient: str = "shift"
    gradient_step: float = 1e-6
    method: str = "SLSQP"
    init: str = "random"


@dataclass(frozen=True)
class VqeResult:
    """Outcome of a run: best energy, its parameters, and the trace.

    ``trace`` holds (iteration, energy) pairs, one per accepted optimizer
    iterate (plus the initial point and the returned optimum);
    ``trace_evaluations`` gives the cumulative objective-evaluation count
    when each row was recorded.  ``energy`` equals min(trace energies).
    """

    energy: float
    params: np.ndarray
    trace: list
    trace_evaluations: list
    evaluations: int
    converged: bool

    def best_so_far(self) -> np.ndarray:
        return np.minimum.accumulate([e for _, e in self.trace])


@dataclass(frozen=True)
class SweepCell:
    """One grid cell of a sweep: the cell value plus result or error."""

    cell: object
    result: VqeResult | None = None
    error: Exception | None = None


def template(n_qubits: int, depth: int = 3, entangler: str = "cz") -> AnsatzConfig:
    """Ansatz template with zeroed parameters (shape carrier for minimize)."""
    return AnsatzConfig(
        n_qubits=n_qubits,
        depth=depth,
        params=np.zeros(n_qubits * (depth + 1)),
        entangler=entangler,
    )


def _matrix_of(h) -> np.ndarray:
    return h.matrix if isinstance(h, BuiltHamiltonian) else np.asarray(h, dtype=complex)


def _check_inputs(h, ansatz: AnsatzConfig) -> np.ndarray:
    m = _matrix_of(h)
    if m.shape[0] != 2 ** ansatz.n_qubits:
        raise DimensionMismatchError(
            f"H dim {m.shape[0]} vs ansatz register of {ansatz.n_qubits} qubits"
        )
    hermitian = h.hermitian if isinstance(h, BuiltHamiltonian) else is_hermitian(m)
    if not hermitian:
        variant = h.spec.variant if isinstance(h, BuiltHamiltonian) else "?"
        raise NotHermitianError(
            f"refusing VQE on a non-Hermitian Hamiltonian (variant {variant!r}); "
            "rebuild with variant='HermitianPart' (or another Hermitian variant) "
            "so the variational quotient is real"
        )
    return m


def energy_of(h, ansatz: AnsatzConfig, params) -> float:
    """Ansatz energy at the given parameters."""
    return expectation(ansatz_state(ansatz.with_params(params)), _matrix_of(h))


def energy_gradient(h, ansatz: AnsatzConfig, params, mode: str = "shift",
                    step: float = 1e-6) -> np.ndarray:
    """Gradient of the ansatz energy.

    "shift": exact parameter-shift rule g_k = (E(+pi/2 e_k) - E(-pi/2 e_k))/2.
    "fd": central differences with the given step.
    """
    params = np.asarray(params, dtype=float)
    grad = np.empty_like(params)
    if mode == "shift":
        delta = np.pi / 2.0
        scale = 0.5
    elif mode == "fd":
        delta = step
        scale = 1.0 / (2.0 * step)
    else:
        raise ValueError(f"gradient mode must be 'shift' or 'fd', got {mode!r}")
    for k in range(len(params)):
        shifted = params.copy()
        shifted[k] += delta
        up = energy_of(h, ansatz, shifted)
        shifted[k] -= 2 * delta
        down = energy_of(h, ansatz, shifted)
        grad[k] = scale * (up - down)
    return grad


def _single_run(m, ansatz, opt: OptimizerSettings, seed: int):
    if opt.init == "zeros":
        x0 = np.zeros(ansatz.n_params)
    elif opt.init == "random":
        x0 = np.random.default_rng(seed).uniform(-np.pi, np.pi, ansatz.n_params)
    else:
        raise ValueError(f"init must be 'random' or 'zeros', got {opt.init!r}")

    evals = [0]

    def objective(x):
        evals[0] += 1
        return expectation(ansatz_state(ansatz.with_params(x)), m)

    def jac(x):
        if opt.gradient == "shift":
            return energy_gradient(m, ansatz, x, mode="shift")
        return energy_gradient(m, ansatz, x, mode="fd", step=opt.gradient_step)

    trace = [(0, objective(x0))]
    trace_x = [x0.copy()]
    trace_evals = [evals[0]]

    def callback(xk, *unused):
        trace.append((len(trace), objective(xk)))
        trace_x.append(np.array(xk, dtype=float))
        trace_evals.append(evals[0])

    res = scipy.optimize.minimize(
        objective,
        x0,
        jac=jac,
        method=opt.method,
        callback=callback,
        options={"maxiter": opt.max_iter, "ftol": opt.tolerance},
    )
    trace.append((len(trace), objective(res.x)))
    trace_x.append(np.array(res.x, dtype=float))
    trace_evals.append(evals[0])

    energies = np.array([e for _, e in trace])
    k_best = int(np.argmin(energies))
    tail = energies[-6:]
    settled = len(tail) >= 6 and np.all(np.abs(np.diff(tail)) < opt.tolerance)
    return VqeResult(
        energy=float(energies[k_best]),
        params=trace_x[k_best],
        trace=trace,
        trace_evaluations=trace_evals,
        evaluations=evals[0],
        converged=bool(res.success or settled),
    )


def minimize(h, ansatz: AnsatzConfig, opt: OptimizerSettings | None = None) -> VqeResult:
    """Minimize the ansatz energy of a Hermitian Hamiltonian.

    Returns the best of ``opt.restarts`` independent runs (seeds seed,
    seed+1, ...).  The reported energy is the minimum over the returned
    trace; if the iteration budget runs out first, the best-so-far result
    comes back with converged=False.
    """
    opt = opt or OptimizerSettings()
    m = _check_inputs(h, ansatz)
    best = None
    total_evals = 0
    for r in range(max(1, opt.restarts)):
        run = _single_run(m, ansatz, opt, opt.seed + r)
        total_evals += run.evaluations
        if best is None or run.energy < best.energy:
            best = run
    return replace(best, evaluations=total_evals)


def sweep(build: Callable[[object], BuiltHamiltonian], grid: Sequence,
          ansatz: AnsatzConfig, opt: OptimizerSettings | None = None,
          workers: int = 1) -> list[SweepCell]:
    """Independent minimize runs over a parameter grid.

    Each cell gets a deterministic seed (base seed + cell index), so a
    fixed base seed reproduces every trace bit for bit.  Per-cell failures
    are captured in the cell instead of aborting the sweep.
    """
    opt = opt or OptimizerSettings()
    if len(grid) == 0:
        raise ValueError("sweep grid is empty")

    def run_cell(i_cell):
        i, cell = i_cell
        try:
            built = build(cell)
            result = minimize(built, ansatz, replace(opt, seed=opt.seed + i))
            return SweepCell(cell=cell, result=result)
        except Exception as exc:  # noqa: BLE001 - propagated per cell
            return SweepCell(cell=cell, error=exc)

    items = list(enumerate(grid))
    if workers <= 1:
        return [run_cell(it) for it in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, items))


def write_trace_csv(result: VqeResult, path):
    """Trace CSV: header iteration,energy,evaluations, one row per accepted iterate."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("iteration,energy,evaluations\n")
        for (it, energy), ev in zip(result.trace, result.trace_evaluations):
            fh.write(f"{it},{energy:.17g},{ev}\n")
