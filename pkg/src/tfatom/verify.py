"""Self-contained invariant suite behind ``tfatom verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correction import (
    delta_e_closed,
    delta_e_oracle,
    delta_term_contribution,
    eq10_density,
    eq9_density,
    schwinger_coefficient,
    surface_flux_at,
)
from .potentials import AtomicModel, coulombic_field, origin_cancellation_check, thomas_fermi_field
from .quadrature import tf_moments
from .semiclassical import (
    ModelPotential,
    SemiclassicalPoint,
    delta_g0_closed,
    delta_g0_quadrature,
    residual_order_scan,
)
from .tf_solver import TfParams, TfSolution, eval_f, solve_tf

REFERENCE_COEFFICIENT = 0.04907


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: str
    passed: bool

    def row(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<44s} {self.value:<14.6g} {self.limit}"


def _rel(a, b):
    return np.abs(np.asarray(a) - np.asarray(b)) / np.abs(np.asarray(b))


def run_checks(sol: TfSolution | None = None, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    sol = sol or solve_tf(TfParams())
    p = sol.params
    checks = []

    def add(name, value, limit, passed):
        checks.append(Check(name, float(value), limit, bool(passed)))

    # ODE residual on interpolated (f, f') via central differences of f'
    x = rng.uniform(p.x_switch + 1e-3, p.x_max - 1e-3, 100)
    h = 1e-5 * x
    f, _ = eval_f(sol, x)
    fpp_fd = (eval_f(sol, x + h)[1] - eval_f(sol, x - h)[1]) / (2 * h)
    res = np.max(np.abs(fpp_fd - f**1.5 / np.sqrt(x)))
    add("ODE residual (finite-difference f'')", res, "< 1e-4", res < 1e-4)

    mono = np.all(np.diff(sol.f_values) < 0) and np.all(sol.fprime_values < 0)
    add("f decreasing, f' negative on grid", float(mono), "== 1", mono)

    m = tf_moments(sol)
    add("|m_norm - 1|", abs(m.m_norm - 1), "< 1e-4", abs(m.m_norm - 1) < 1e-4)
    add("|m_slope + B|", abs(m.m_slope + sol.B), "< 1e-4", abs(m.m_slope + sol.B) < 1e-4)

    c = schwinger_coefficient(m)
    add("|c - 0.04907|", abs(c - REFERENCE_COEFFICIENT), "< 5e-5", abs(c - REFERENCE_COEFFICIENT) < 5e-5)

    worst = 0.0
    for Z in (1.0, 30.0):
        model = AtomicModel(Z)
        for field in (thomas_fermi_field(model, sol), coulombic_field(model, sol)):
            hi = min(1e3 * model.a, 0.999 * field.zero_crossing)
            r = np.exp(rng.uniform(math.log(1e-3 * model.a), math.log(hi), 1000))
            worst = max(worst, float(np.max(_rel(eq10_density(field, r), eq9_density(field, r)))))
    add("local densities: equivalent forms (rel)", worst, "< 1e-10", worst < 1e-10)

    ratios = []
    for Z in (1, 3, 10, 30):
        model = AtomicModel(Z)
        oracle = delta_e_oracle(sol, model).delta_e[Z]
        closed = delta_e_closed(model, c).delta_e[Z]
        ratios.append(oracle / closed)
    dev = max(abs(r - 1) for r in ratios)
    add("oracle / closed form - 1, Z in {1,3,10,30}", dev, "< 1e-3", dev < 1e-3)

    model = AtomicModel(1)
    a = model.a
    dE = abs(c)
    outer = [abs(surface_flux_at(model, sol, R * a)) for R in (50, 100, 200, 400)]
    inner = [abs(surface_flux_at(model, sol, r0 * a)) for r0 in (1e-3, 1e-4, 1e-5, 1e-6)]
    flux = max(outer[1], inner[-1]) / dE
    ok = flux < 1e-3 and np.all(np.diff(outer) < 0) and np.all(np.diff(inner) < 0)
    add("surface flux / |dE| at 100a and 1e-6a", flux, "< 1e-3, monotone", ok)

    try:
        delta = delta_term_contribution(model, sol)
        add("point-charge terms cancel", delta, "== 0", delta == 0.0)
    except RuntimeError:
        add("point-charge terms cancel", math.nan, "== 0", False)
    oc = origin_cancellation_check(model, sol, a * np.geomspace(1e-4, 1e-8, 9))
    add("origin bracket decay exponent", oc.exponent, ">= 0.5 (O(sqrt r))", oc.exponent >= 0.5)

    V = ModelPotential.harmonic([1.0, 2.0, 0.5], center=[0.1, -0.2, 0.3])
    pt = SemiclassicalPoint([0.3, -0.4, 0.7], [0.9, 0.5, -1.2], 0.8, mass=1.7)
    k_c = residual_order_scan(V, pt).fitted_exponent
    k_p = residual_order_scan(V, pt, variant="printed").fitted_exponent
    add("phase residual order (corrected)", k_c, "3.0 +- 0.1", abs(k_c - 3) <= 0.1)
    add("phase residual order (printed)", k_p, "2.0 +- 0.1", abs(k_p - 2) <= 0.1)

    worst = 0.0
    cubic = ModelPotential.cubic(rng.normal(size=(3, 3, 3)), H=np.eye(3), g=[0.2, -0.1, 0.3])
    for model_v in (V, cubic):
        for _ in range(20):
            pos = rng.uniform(-0.8, 0.8, 3)
            s = rng.uniform(0.2, 3.0)
            closed = delta_g0_closed(model_v, pos, s, mass=1.7)
            quad = delta_g0_quadrature(model_v, pos, s, mass=1.7)
            worst = max(worst, abs(quad - closed) / abs(closed))
    add("Green-function shift: closed vs quadrature", worst, "< 1e-6", worst < 1e-6)
    return checks


def format_table(checks: list[Check]) -> str:
    return "\n".join(c.row() for c in checks) + "\n"
