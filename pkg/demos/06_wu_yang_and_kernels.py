"""Classical oracles: the radial Wu-Yang equation and propagation kernels.

Integrates g'' = g (g^2 - 1)/r^2 from small-r series data, demonstrates
fourth-order convergence of the integrator, and evaluates the constant-field
propagation kernels including the free-particle limit and the convergence
of the polar angular sum.
"""

import numpy as np

from gaugesim import (
    kernel_cartesian,
    kernel_cartesian_free_limit,
    kernel_polar,
    wu_yang_series_large,
    wu_yang_series_small,
    wu_yang_solve,
)
from gaugesim.analytic import wu_yang_series_small_prime

print("=== radial Wu-Yang equation ===")
r0 = 0.05
g0, gp0 = wu_yang_series_small(r0), wu_yang_series_small_prime(r0)
traj = wu_yang_solve(r0, 4.0, 800, g0, gp0)
print("r, g(r), small-r series, large-r series:")
for r_target in (0.1, 0.5, 1.0, 2.0, 4.0):
    k = int(np.argmin(np.abs(traj[:, 0] - r_target)))
    r, g = traj[k, 0], traj[k, 1]
    print(f"  r={r:4.2f}: g={g:+.6f}   small={wu_yang_series_small(r):+.6f}   "
          f"large={wu_yang_series_large(r):+.6f}")

fine = wu_yang_solve(r0, 1.0, 12800, g0, gp0)[-1, 1]
print("\nintegrator convergence (error at r = 1 vs a 12800-step reference):")
prev = None
for steps in (50, 100, 200, 400):
    err = abs(wu_yang_solve(r0, 1.0, steps, g0, gp0)[-1, 1] - fine)
    note = f"  (ratio {prev / err:.1f})" if prev else ""
    print(f"  steps={steps:4d}: error {err:.3e}{note}")
    prev = err

print("\n=== propagation kernels, B = 2 ===")
val = kernel_cartesian(0.0, 0.0, 0.5, 0.0, 0.3, 2.0)
print(f"Cartesian kernel K(0,0 -> 0.5,0; T=0.3): {val:.6f}")
small_b = kernel_cartesian(0.0, 0.0, 0.5, 0.0, 0.3, 1e-6)
free = kernel_cartesian_free_limit(0.0, 0.0, 0.5, 0.0, 0.3)
print(f"B = 1e-6 vs free limit: relative difference {abs(small_b - free) / abs(free):.2e}")

print("\npolar kernel angular-sum convergence (rho_i=0.5, rho_f=0.7, T=0.3):")
ref = kernel_polar(0.5, 0.0, 0.7, 0.4, 0.3, 2.0, m_max=40)
for m_max in (2, 4, 8, 12, 16):
    err = abs(kernel_polar(0.5, 0.0, 0.7, 0.4, 0.3, 2.0, m_max=m_max) - ref)
    print(f"  m_max={m_max:2d}: truncation error {err:.3e}")
