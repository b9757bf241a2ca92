import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tfatom.correction import (
    CLOSED_FORM_PREFACTOR,
    CancellationError,
    Method,
    _oracle_pieces,
    delta_e_closed,
    delta_e_oracle,
    delta_term_contribution,
    eq10_density,
    eq9_density,
    phase_space_density,
    phase_space_density_derivative,
    schwinger_coefficient,
    surface_flux,
    surface_flux_at,
)
from tfatom.potentials import AtomicModel, coulombic_field, thomas_fermi_field
from tfatom.quadrature import TfMoments
from tfatom.tf_solver import TfSolution

C_REF = 0.04907


@pytest.fixture(scope="module")
def c(moments):
    return schwinger_coefficient(moments)


class TestPhaseSpaceDensity:
    def test_values(self):
        assert phase_space_density(0.0) == 0.0
        assert phase_space_density(1.0) == 0.0
        assert phase_space_density(-0.5) == pytest.approx(1 / (2 * math.pi**2))
        assert np.allclose(phase_space_density(np.array([-2.0, 3.0])), [2 / (2 * math.pi**2), 0])

    def test_derivative(self):
        V, h = -0.7, 1e-6
        fd = (phase_space_density(V + h) - phase_space_density(V - h)) / (2 * h)
        assert phase_space_density_derivative(V) == pytest.approx(fd, rel=1e-8)
        with pytest.raises(ValueError):
            phase_space_density_derivative(0.0)


class TestLocalDensities:
    def test_coulombic_closed_form(self, sol):
        model = AtomicModel(2)
        field = coulombic_field(model, sol)
        r = np.array([0.05, 0.1, 0.2])
        V = -2 / r - 2 * sol.B / model.a
        expected = -(4 / r**4) / (24 * math.pi**2 * np.sqrt(-2 * V))
        assert np.allclose(eq9_density(field, r), expected, rtol=1e-13)

    @pytest.mark.parametrize("Z", [1, 7, 80])
    def test_equivalent_forms(self, sol, Z):
        model = AtomicModel(Z)
        rng = np.random.default_rng(Z)
        for field in (thomas_fermi_field(model, sol), coulombic_field(model, sol)):
            hi = min(1e3 * model.a, 0.999 * field.zero_crossing)
            r = np.exp(rng.uniform(math.log(1e-3 * model.a), math.log(hi), 1000))
            a, b = eq9_density(field, r), eq10_density(field, r)
            assert np.max(np.abs(a - b) / np.abs(a)) < 1e-10

    @settings(max_examples=50, deadline=None)
    @given(x=st.floats(1e-4, 1e3))
    def test_equivalent_forms_property(self, sol, x):
        model = AtomicModel(1)
        field = thomas_fermi_field(model, sol)
        a, b = eq9_density(field, x * model.a), eq10_density(field, x * model.a)
        assert abs(a - b) <= 1e-10 * abs(a)

    def test_positive_potential_rejected(self, sol, hydrogen):
        field = coulombic_field(hydrogen, sol)
        beyond = 1.01 * field.zero_crossing
        for density in (eq9_density, eq10_density):
            with pytest.raises(ValueError):
                density(field, beyond)

    def test_oracle_integrand_negative_at_screening_length(self, sol, hydrogen):
        lap_term, _, grad_tf, _ = _oracle_pieces(hydrogen, sol)
        a = hydrogen.a
        assert a > coulombic_field(hydrogen, sol).zero_crossing
        assert lap_term(a) + grad_tf(a) < 0


class TestDeltaTerm:
    @pytest.mark.parametrize("Z", [1, 92])
    def test_vanishes(self, sol, Z):
        assert delta_term_contribution(AtomicModel(Z), sol) == 0.0

    def test_corrupted_origin_value(self, sol, hydrogen):
        f = np.array(sol.f_values)
        f[0] = 1.001
        bad = dataclasses.replace(sol, f_values=f)
        with pytest.raises(CancellationError):
            delta_term_contribution(hydrogen, bad)


class TestSurfaceFlux:
    def test_small_relative_to_energy(self, sol, hydrogen, c):
        a = hydrogen.a
        assert abs(surface_flux(sol, hydrogen, 100 * a, 1e-6 * a)) < 1e-3 * c

    def test_decreasing(self, sol, hydrogen):
        a = hydrogen.a
        outer = [abs(surface_flux_at(hydrogen, sol, R * a)) for R in (25, 50, 100, 200)]
        inner = [abs(surface_flux_at(hydrogen, sol, r * a)) for r in (1e-3, 1e-4, 1e-5, 1e-6)]
        assert np.all(np.diff(outer) < 0)
        assert np.all(np.diff(inner) < 0)

    def test_validation(self, sol, hydrogen):
        a = hydrogen.a
        with pytest.raises(ValueError):
            surface_flux(sol, hydrogen, a, 2 * a)
        with pytest.raises(ValueError):
            surface_flux(sol, hydrogen, 100 * a, 0.9 * a)
        with pytest.raises(ValueError):
            surface_flux_at(hydrogen, sol, 0.0)


class TestClosedForm:
    def test_coefficient(self, c):
        assert c == pytest.approx(C_REF, abs=5e-5)

    def test_linear_in_moment(self):
        m1 = TfMoments(1.0, 0.0, 0.0, {})
        m2 = TfMoments(2.5, 0.0, 0.0, {})
        assert schwinger_coefficient(m1) == CLOSED_FORM_PREFACTOR
        assert schwinger_coefficient(m2) == pytest.approx(2.5 * CLOSED_FORM_PREFACTOR)

    def test_values(self, c):
        r = delta_e_closed([AtomicModel(8), AtomicModel(1), AtomicModel(2)], c)
        assert r.method is Method.CLOSED_FORM
        assert list(r.delta_e) == [1, 2, 8]
        assert r.delta_e[1] == -c
        assert r.delta_e[2] == pytest.approx(-0.15579, abs=2e-4)
        assert r.delta_e[8] == pytest.approx(32 * r.delta_e[1], rel=1e-14)


class TestOracle:
    @pytest.mark.parametrize("Z", [1, 10])
    def test_agrees_with_closed_form(self, sol, c, Z):
        model = AtomicModel(Z)
        oracle = delta_e_oracle(sol, model)
        closed = delta_e_closed(model, c)
        assert oracle.method is Method.DIRECT_ORACLE
        assert oracle.delta_e[Z] / closed.delta_e[Z] == pytest.approx(1, abs=1e-6)
        assert oracle.est_error < 1e-6 * abs(oracle.delta_e[Z])

    def test_charge_scaling(self, sol):
        cs = [delta_e_oracle(sol, AtomicModel(Z)).c for Z in (2, 5, 50)]
        assert max(cs) - min(cs) < 1e-8
