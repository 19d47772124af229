"""Why this particular phase function is worth expanding.

Run:  python demos/phase_functions.py

Any basis {u, v} of a second-order equation has a phase function with
alpha' = W / (u**2 + v**2).  For {sqrt(z) J_20, sqrt(z) Y_20} that derivative
climbs smoothly to 1; for {2 sqrt(z) J_20, sqrt(z) Y_20} it oscillates with
the Bessel functions themselves.  Only the first has an asymptotic series
worth truncating.  The Kummer residual of the truncated series is about twice
the first omitted term when the terms fall off quickly.  Closer to the turning
point they fall off slowly, and at z = 40 the first omitted term happens to
sit on a near-zero coefficient, so there the residual is well above it.
"""
import math
import warnings

import numpy as np

from besselphase import IntegerOrderWarning, general_basis_phase_derivative, kummer_report, oracle_j, oracle_y

warnings.simplefilter("ignore", IntegerOrderWarning)

nu = 20
zs = np.linspace(25, 200, 15)
j = np.array([float(oracle_j(nu, z)) for z in zs])
y = np.array([float(oracle_y(nu, z)) for z in zs])
root = np.sqrt(zs)
smooth = general_basis_phase_derivative(root * j, root * y, 2 / math.pi)
wiggly = general_basis_phase_derivative(2 * root * j, root * y, 4 / math.pi)
for z, a, b in zip(zs, smooth, wiggly):
    print(f"z={z:6.1f}  alpha' (J,Y) {a:.6f}   alpha' (2J,Y) {b:.6f}")

rep = kummer_report(nu, [1.5 * nu, 2 * nu, 10 * nu, 100 * nu])
for z, res, est in zip(rep.z_grid, rep.residuals, rep.estimates):
    print(f"z={z:6.0f}  Kummer residual {res:.2e}   first omitted term {est:.2e}")
