"""Transition amplitudes under exact versus Trotterized evolution.

A particle starts at the grid point nearest the origin of the 16x16
position-basis register (B = 2).  The exact spectral propagator and the
first-order Pauli product formula are compared over t in [0, 1]; the
deviation shrinks like 1/n_steps.
"""

import numpy as np

from gaugesim import HamiltonianSpec, build_landau_cartesian_position, pauli_decompose, transition_series

spec = HamiltonianSpec(kind="LandauCartesian", b_field=2.0)
built = build_landau_cartesian_position(spec)
n = 16

terms = pauli_decompose(built.matrix)
print(f"position-basis Hamiltonian: {built.dim}x{built.dim}, "
      f"{len(terms.terms)} Pauli terms after pruning")

centre = (n // 2) * n + (n // 2)
psi_i = np.zeros(built.dim, dtype=complex)
psi_i[centre] = 1.0
ts = np.linspace(0.0, 1.0, 11)

exact = transition_series(built, psi_i, "all", ts, method="exact")

print("\nfirst-order product formula vs exact propagator:")
for steps in (25, 50, 100, 200, 400):
    trot = transition_series(built, psi_i, "all", ts, method="trotter", trotter_steps=steps)
    dev = np.max(np.abs(exact.probabilities() - trot.probabilities()))
    print(f"  n_steps={steps:4d}: max transition-probability deviation = {dev:.3e}")

print("\nreturn probability |<initial| U(t) |initial>|^2 (exact):")
p_return = exact.probabilities()[:, centre]
for t, p in zip(ts, p_return):
    print(f"  t={t:4.1f}: {p:.6f}")
