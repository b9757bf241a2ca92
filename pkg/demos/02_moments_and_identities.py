"""
Integrals of the screening function
===================================

The energy correction needs int f**2 dx. Two other integrals have exact
values fixed by the differential equation and check the numerics.
"""

from tfatom import solve_tf, tf_moments
from tfatom.quadrature import integrate_improper

sol = solve_tf()
m = tf_moments(sol)

print(f"int f^2 dx              = {m.m_f2:.10f}  (+- {m.est_error['m_f2']:.1e})")

# f'' = f**1.5/sqrt(x) integrates to f'(oo) - f'(0) = -B
print(f"int f^1.5 / sqrt(x) dx  = {m.m_slope:.10f}  vs -B = {-sol.B:.10f}")

# x f'' - f' integrates to f(0) - f(oo) = 1 after parts
print(f"int f^1.5 sqrt(x) dx    = {m.m_norm:.10f}  vs 1")

# The tail beyond the split is done in closed form. The same routine
# handles a textbook case with an x**-1/2 endpoint singularity.
g = lambda x: x**-0.5 * (1 + x) ** -2
v, err = integrate_improper(g, 1e4, 2.5, g(1e4) * 1e4**2.5, singular=True)
print(f"\nint x^-1/2 (1+x)^-2 dx = {v:.12f} (pi/2 = 1.570796326795)")

# Moving the split changes the result far less than the tolerance asked for
for factor in (10, 20, 40):
    mm = tf_moments(sol, split=factor * sol.params.x_max)
    print(f"split = {factor:2d} x_max: int f^2 = {mm.m_f2:.10f}")
