"""Charged bosons on a neutralizing background: the pairing energy.

Diagonalizing the quadratic Hamiltonian mode by mode gives the correlation
energy -0.402 r_s^(-3/4) per particle and the rho^(1/4) law; compressing a
two-component cloud against it produces the -N^(7/5) scaling.
"""

import numpy as np

from bosegas import (bogolubov_coefficients, foldy_energy,
                     infinite_mass_comparison, two_component_scaling)
from bosegas.charged_gas import tabulate_pairing_G

res = foldy_energy(1.0)
print(f"correlation energy per particle at rho = 1:  {res.e_per_particle:.8f}")
print(f"in Wigner-Seitz units: {-res.coefficient_rs:.5f} r_s^(-3/4)  "
      f"(quadrature error {res.quadrature_error:.1e})")

print("\nmode structure at rho = 1 (beta is the pairing amplitude):")
print("     p        beta         A")
for p in (0.25, 0.5, 1.0, 2.0, 4.0):
    m = bogolubov_coefficients(p, 1.0)
    print(f"   {p:5.2f}   {m.beta:.6f}   {m.A:10.5f}")

x = np.geomspace(1e-2, 1e2, 5)
print("\nthe pairing kernel collapses onto one curve G(p^4/rho):")
for xi, g in zip(x, tabulate_pairing_G(x)):
    print(f"   p^4/rho = {xi:8.2f}   G = {g:.6f}")

fit = infinite_mass_comparison(np.geomspace(1e-3, 1e3, 7))
print(f"\nfitted exponent of |e(rho)| per particle: {fit.slope_per_particle:.4f} "
      f"(quantum 1/4 vs the classical 1/3 reference)")

tc = two_component_scaling(np.geomspace(10.0, 1e5, 9))
print(f"two-component cloud: |E_min| ~ N^{tc.slope_energy:.3f}, "
      f"L_opt ~ N^{tc.slope_length:.3f}")
