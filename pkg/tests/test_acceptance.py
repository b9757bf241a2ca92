"""Acceptance criteria, each checked at its stated tolerance.

Every test appends one PASS/FAIL line, printed in the terminal summary.
"""

import math

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from tfatom.correction import (
    delta_e_closed,
    delta_e_oracle,
    eq10_density,
    eq9_density,
    schwinger_coefficient,
    surface_flux,
    surface_flux_at,
)
from tfatom.potentials import AtomicModel, coulombic_field, origin_cancellation_check, thomas_fermi_field
from tfatom.semiclassical import (
    ModelPotential,
    SemiclassicalPoint,
    delta_g0_closed,
    delta_g0_quadrature,
    residual_order_scan,
)
from tfatom.tf_solver import TfParams, shoot, solve_tf

C_TARGET = 0.04907
B_TARGET = -1.588071


def record(label, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


@pytest.fixture(scope="module")
def c(moments):
    return schwinger_coefficient(moments)


def test_criterion_1_headline_coefficient(c):
    ok = abs(c - C_TARGET) < 5e-5
    record("1 coefficient", ok, f"c = {c:.7f}, |c - {C_TARGET}| = {abs(c - C_TARGET):.2e} (< 5e-5)")
    assert ok


def test_criterion_2_oracle_equivalence(sol, c):
    rel, per_z = [], []
    for Z in (1, 3, 10, 30):
        model = AtomicModel(Z)
        oracle = delta_e_oracle(sol, model).delta_e[Z]
        closed = delta_e_closed(model, c).delta_e[Z]
        rel.append(abs(oracle / closed - 1))
        per_z.append(oracle / Z ** (5 / 3))
    spread = (max(per_z) - min(per_z)) / abs(np.mean(per_z))
    ok = max(rel) < 1e-3 and spread < 1e-3
    record("2 oracle equivalence", ok, f"max rel diff = {max(rel):.2e}, Z-spread of oracle/Z^(5/3) = {spread:.2e} (< 1e-3)")
    assert ok


def test_criterion_3_exact_identities(sol, moments):
    d_norm = abs(moments.m_norm - 1)
    d_slope = abs(moments.m_slope + sol.B)
    ok = d_norm < 1e-4 and d_slope < 1e-4
    record("3 ODE identities", ok, f"|m_norm - 1| = {d_norm:.2e}, |m_slope + B| = {d_slope:.2e} (< 1e-4)")
    assert ok


def test_criterion_4_shooting_stability():
    slopes = {x_max: shoot(TfParams(x_max=x_max)) for x_max in (50.0, 100.0)}
    matched = {x_max: solve_tf(TfParams(x_max=x_max)).B for x_max in (50.0, 100.0)}
    worst = max(abs(b - B_TARGET) for b in (*slopes.values(), *matched.values()))
    ok = worst < 1e-5
    record("4 shooting stability", ok,
           f"B(50) = {slopes[50.0]:.9f}, B(100) = {slopes[100.0]:.9f}, max |B - {B_TARGET}| = {worst:.2e} (< 1e-5)")
    assert ok


def test_criterion_5_density_forms_agree(sol):
    rng = np.random.default_rng(5)
    worst = 0.0
    model = AtomicModel(1)
    for field in (thomas_fermi_field(model, sol), coulombic_field(model, sol)):
        hi = min(1e3 * model.a, 0.999 * field.zero_crossing)
        r = np.exp(rng.uniform(math.log(1e-3 * model.a), math.log(hi), 1000))
        a, b = eq9_density(field, r), eq10_density(field, r)
        worst = max(worst, float(np.max(np.abs(a - b) / np.abs(a))))
    ok = worst < 1e-10
    record("5 local density forms", ok, f"max rel diff over 2 x 1000 radii = {worst:.2e} (< 1e-10)")
    assert ok


def test_criterion_6_surface_terms_vanish(sol, c):
    model = AtomicModel(1)
    a = model.a
    flux = abs(surface_flux(sol, model, 100 * a, 1e-6 * a))
    dE = abs(delta_e_closed(model, c).delta_e[1])
    outer = [abs(surface_flux_at(model, sol, R * a)) for R in (25, 50, 100, 200)]
    inner = [abs(surface_flux_at(model, sol, r * a)) for r in (1e-3, 1e-4, 1e-5, 1e-6)]
    monotone = bool(np.all(np.diff(outer) < 0) and np.all(np.diff(inner) < 0))
    ok = flux < 1e-3 * dE and monotone
    record("6 surface flux", ok, f"|flux| / |dE| = {flux / dE:.2e} (< 1e-3), decreasing in R and r0: {monotone}")
    assert ok


def test_criterion_7_semiclassical_order():
    V = ModelPotential.harmonic([1.0, 2.0, 0.5], center=[0.1, -0.2, 0.3])
    point = SemiclassicalPoint([0.3, -0.4, 0.7], [0.9, 0.5, -1.2], 0.8, mass=1.7)
    corrected = residual_order_scan(V, point).fitted_exponent
    printed = residual_order_scan(V, point, variant="printed").fitted_exponent
    ok = abs(corrected - 3) <= 0.1 and abs(printed - 2) <= 0.1
    record("7 residual order", ok, f"corrected = {corrected:.3f} (3 +- 0.1), printed = {printed:.3f} (2 +- 0.1)")
    assert ok


def test_criterion_8_gaussian_reduction():
    rng = np.random.default_rng(8)
    potentials = {
        "harmonic": ModelPotential.harmonic([1.0, 2.0, 0.5], center=[0.1, -0.2, 0.3]),
        "cubic": ModelPotential.cubic(rng.normal(size=(3, 3, 3)), H=np.eye(3), g=[0.2, -0.1, 0.3]),
    }
    worst = 0.0
    for V in potentials.values():
        for _ in range(20):
            pos = rng.uniform(-0.8, 0.8, 3)
            s = rng.uniform(0.2, 3.0)
            closed = delta_g0_closed(V, pos, s, mass=1.7)
            quad = delta_g0_quadrature(V, pos, s, mass=1.7)
            worst = max(worst, abs(quad / closed - 1))
    ok = worst < 1e-6
    record("8 Gaussian reduction", ok, f"max rel diff over 2 x 20 points = {worst:.2e} (< 1e-6)")
    assert ok


def test_criterion_9a_point_charges_identical(sol):
    ok = True
    for Z in (1, 3, 30, 92):
        model = AtomicModel(Z)
        ok &= thomas_fermi_field(model, sol).point_charge_strength() == coulombic_field(model, sol).point_charge_strength()
    record("9a point-charge strengths", ok, "identical for Z in {1, 3, 30, 92} (exact)")
    assert ok


def test_criterion_9b_origin_bracket_exponent(sol):
    model = AtomicModel(1)
    check = origin_cancellation_check(model, sol, model.a * np.geomspace(1e-4, 1e-8, 9))
    ok = abs(check.exponent - 0.5) <= 0.05
    record("9b origin bracket exponent", ok,
           f"measured {check.exponent:.4f} over r in [1e-8 a, 1e-4 a] (target 0.5 +- 0.05)")
    assert ok
