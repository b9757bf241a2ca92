"""
The Thomas-Fermi screening function
===================================

Solve f'' = f**1.5 / sqrt(x) with f(0) = 1 and f -> 0, then look at the
solution near the nucleus, in the bulk and in the tail.
"""

import numpy as np

from tfatom import TfParams, eval_f, origin_series, solve_tf
from tfatom.tf_solver import classify_slope

# The only unknown is the initial slope B. Slopes that are too steep drive f
# through zero; slopes that are too shallow make it turn upward.
params = TfParams()
for B in (-1.7, -1.6, -1.589, -1.587, -1.5):
    print(f"B = {B:+.3f}: {'undershoot' if classify_slope(B, params) < 0 else 'overshoot'}")

# solve_tf bisects between the two behaviours, then refines the slope by
# matching onto the decaying branch from outside.
sol = solve_tf(params)
print(f"\ninitial slope  B = {sol.B:.12f}")
print(f"bisection only B = {sol.B_shoot:.12f}")

# Near the origin f is a series in sqrt(x): 1 + B x + (4/3) x**1.5 + ...
x = np.array([1e-4, 1e-3, 1e-2])
f_series, _ = origin_series(sol.B, x)
print("\n     x        f(x)          1 + B x + 4/3 x^1.5")
for xi, fi in zip(x, f_series):
    print(f"{xi:8.0e}  {fi:.12f}  {1 + sol.B * xi + 4 / 3 * xi**1.5:.12f}")

# Bulk values
print("\n   x      f(x)         f'(x)")
for xi in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
    f, fp = eval_f(sol, xi)
    print(f"{xi:5.1f}  {f:.8e}  {fp:.8e}")

# Far out f approaches 144 / x**3, but only slowly: at x = 50 the local
# power is still well below 3, so the tail carries a correction term.
for xi in (50.0, 500.0, 5e4, 5e6):
    f, fp = eval_f(sol, xi)
    print(f"x = {xi:8.0f}: x^3 f = {xi**3 * f:8.3f}, local power = {-xi * fp / f:.4f}")
print(f"fitted tail amplitude: {sol.tail.amplitude:.3f}")
