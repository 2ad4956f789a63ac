"""Trapped ground states: the GP functional and its Thomas-Fermi limit.

Minimizes E[Phi] = int(mu |grad Phi|^2 + V Phi^2 + g Phi^4) at fixed
normalization and shows the two exactly solvable limits plus the fixed-Na
scaling identity.
"""

import numpy as np

from bosegas import GPProblem, HarmonicTrap, BoxTrap, Units, gp_minimize, tf_minimize
from bosegas.gp_solver import gp_limit_scan

U = Units()
trap = HarmonicTrap(k=(1.0,))

print("== a = 0: the linear trap eigenvalue  (exact: E/N = 3) ==")
sol = gp_minimize(GPProblem(dimension=3, trap=trap, N=5.0, a=0.0, units=U))
print(f"   E/N = {sol.energy_total / 5.0:.8f}   "
      f"({sol.iterations} iterations, residual {sol.residual:.1e})")

print("\n== box of side 10, Na/L = 1e-3: the homogeneous identification ==")
box = GPProblem(dimension=3, trap=BoxTrap(10.0), N=100.0, a=1e-4, units=U)
sb = gp_minimize(box)
print(f"   E = {sb.energy_total:.10f}   4 pi mu a N^2/L^3 = "
      f"{4 * np.pi * 1e-4 * 100.0**2 / 1000.0:.10f}")

print("\n== interaction sweep at N = 1: GP against Thomas-Fermi ==")
print("   Na       E_GP          E_TF          mu_GP      kinetic share")
for Na in (1.0, 10.0, 100.0, 1000.0):
    prob = GPProblem(dimension=3, trap=trap, N=1.0, a=Na, units=U)
    g = gp_minimize(prob)
    t = tf_minimize(prob)
    print(f"   {Na:6.0f}  {g.energy_total:11.6f}  {t.energy_total:11.6f}  "
          f"{g.chemical_potential:9.5f}   {g.energy_kinetic / g.energy_total:.4f}")
print("   (TF always sits below GP; the kinetic share dies off in the TF regime)")

print("\n== fixed Na = 1: the scaling limit is exact at the GP level ==")
for row in gp_limit_scan(trap, Na=1.0, N_list=[10, 100, 1000]):
    print(f"   N = {row['N']:6.0f}   E/N = {row['energy_per_particle']:.12f}   "
          f"L1 distance to first row = {row['l1_to_first']:.2e}")
