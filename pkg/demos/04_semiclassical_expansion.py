"""
Checking the semiclassical phase expansion
==========================================

On cubic model potentials every derivative is exact, so the phase equation
can be evaluated with no discretisation. Its residual shows the order to
which the quantum shift is right.
"""

import numpy as np

from tfatom.semiclassical import (
    ModelPotential,
    SemiclassicalPoint,
    delta_g0_closed,
    delta_g0_quadrature,
    delta_u,
    residual_order_scan,
)

V = ModelPotential.harmonic([1.0, 2.0, 0.5], center=[0.1, -0.2, 0.3])
# a non-unit mass separates the two readings of the force term
point = SemiclassicalPoint([0.3, -0.4, 0.7], [0.9, 0.5, -1.2], tau=0.8, mass=1.7)

du = delta_u(V, point)
for name, value in zip(("drift", "curvature", "force", "laplacian"), du.terms):
    print(f"{name:10s} {value:+.6f}")

# Shrinking hbar: the residual falls like hbar**3 when the shift is
# complete through hbar**2, and only like hbar**2 otherwise.
for variant in ("corrected", "printed"):
    rep = residual_order_scan(V, point, variant=variant)
    print(f"\n{variant}: residual ~ hbar^{rep.fitted_exponent:.3f}")
    for lam, res in rep.samples[::4]:
        print(f"  hbar = {lam:.0e}  |residual| = {res:.3e}")

# A uniform potential gives no quantum shift at all
print("\nuniform potential degenerate:", residual_order_scan(ModelPotential.uniform(1.0), point).degenerate)

# In imaginary time the momentum integral of the shift has a closed form
rng = np.random.default_rng(0)
cubic = ModelPotential.cubic(rng.normal(size=(3, 3, 3)), H=np.eye(3), g=[0.2, -0.1, 0.3])
print("\n   s      closed            quadrature")
for s in (0.25, 0.5, 1.0, 2.0):
    pos = [0.2, -0.3, 0.1]
    print(f"{s:5.2f}  {delta_g0_closed(cubic, pos, s):+.10e}  {delta_g0_quadrature(cubic, pos, s):+.10e}")
