"""gaugesim: desk-scale quantum simulation of particles in background gauge fields.

Dense-matrix Hamiltonians for a charged particle in constant magnetic and
SU(2) monopole fields, a small statevector circuit engine with a
variational ground-state solver, Trotterized time evolution with
vertex-operator insertions, and closed-form oracles to check it all
against.
"""

from .operators import (
    EigenSystem,
    evolve_unitary,
    herm_defect,
    hermitian_eig,
    is_hermitian,
    kron,
    matrix_function,
)
from .basis import (
    fermion_factor,
    osc_p,
    osc_p2,
    osc_q,
    osc_q2,
    place,
    pos_grid,
    pos_p,
    pos_q,
    sylvester_f,
)
from .hamiltonians import (
    BuiltHamiltonian,
    HamiltonianSpec,
    build,
    build_landau_cartesian,
    build_landau_cartesian_position,
    build_landau_polar,
    build_monopole_su2,
    variant_selection_report,
)
from .analytic import (
    bessel_i,
    kernel_cartesian,
    kernel_cartesian_free_limit,
    kernel_polar,
    landau_energy,
    polar_energy,
    wu_yang_series_large,
    wu_yang_series_small,
    wu_yang_solve,
)
from .circuits import AnsatzConfig, ansatz_state, apply_cx, apply_cz, apply_ry, expectation, zero_state
from .vqe import OptimizerSettings, VqeResult, minimize, sweep
from .evolution import (
    PauliTermList,
    TransitionSeries,
    momentum_state,
    pauli_decompose,
    pauli_reconstruct,
    scattering_process,
    transition_series,
    trotter_evolve,
    vertex_amplitude,
    vertex_scan,
)

__version__ = "0.1.0"
