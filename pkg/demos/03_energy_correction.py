"""
The quantum correction to the Thomas-Fermi energy
=================================================

The closed form needs only int f**2. The same number follows from
integrating the local correction density of the screened potential, minus
that of the bare Coulomb potential, over all space.
"""

import numpy as np

from tfatom import (
    AtomicModel,
    coulombic_field,
    delta_e_closed,
    delta_e_oracle,
    eq9_density,
    eq10_density,
    schwinger_coefficient,
    solve_tf,
    surface_flux,
    tf_moments,
    thomas_fermi_field,
)
from tfatom.correction import HARTREE_EV, delta_term_contribution

sol = solve_tf()
c = schwinger_coefficient(tf_moments(sol))
print(f"dE = -{c:.6f} Z^(5/3) hartree")

# Two ways to write the local density: via the phase-space density and its
# derivative, or via sqrt(-2V) minus a total divergence.
model = AtomicModel(1)
tf = thomas_fermi_field(model, sol)
r = model.a * np.geomspace(1e-2, 1e2, 5)
print("\n  r/a     first form       second form")
for ri, a, b in zip(r / model.a, eq9_density(tf, r), eq10_density(tf, r)):
    print(f"{ri:6.2f}  {a:+.8e}  {b:+.8e}")

# The divergence integrates to surface terms that vanish at both ends
a = model.a
for R in (10, 100, 1000):
    print(f"surface terms between 1e-6 a and {R:4d} a: {surface_flux(sol, model, R * a, 1e-6 * a):+.2e}")

# Both potentials carry the same 4 pi Z delta(r) and their square roots
# agree at the origin, so the delta functions contribute nothing.
print(f"\npoint-charge strength: {tf.point_charge_strength():.6f} vs "
      f"{coulombic_field(model, sol).point_charge_strength():.6f}")
print(f"delta-function energy: {delta_term_contribution(model, sol)}")

# Direct quadrature against the closed form
print("\n  Z   closed (hartree)   quadrature        ratio - 1     closed (eV)")
for Z in (1, 2, 6, 26, 92):
    m = AtomicModel(Z)
    closed = delta_e_closed(m, c).delta_e[Z]
    direct = delta_e_oracle(sol, m).delta_e[Z]
    print(f"{Z:3d}  {closed:+.10f}  {direct:+.10f}  {direct / closed - 1:+.1e}  {closed * HARTREE_EV:+9.3f}")
