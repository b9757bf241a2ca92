"""
Quantum correction to the Thomas-Fermi ground-state energy.

All quantities are in atomic units; energies in units of m e**4 / hbar**2.

Local route: the correction density is

    (1/6) [lap V * g(V) + (1/2) |grad V|**2 * g'(V)],   g(V) = sqrt(-2V) / (2 pi**2),

which for a radial field expands to

    (1/24 pi**2) [2 lap V sqrt(-2V) - |grad V|**2 / sqrt(-2V)].

Integrated over space with the Coulombic subtraction, the point-charge parts
cancel and the divergence part leaves only surface terms, giving the closed
form  dE = -(4 / 9 pi**2) (3 pi/4)**(2/3) Z**(5/3) * int_0^oo f(x)**2 dx.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .potentials import (
    AtomicModel,
    PotentialField,
    PotentialKind,
    coulombic_field,
    origin_cancellation_check,
    thomas_fermi_field,
)
from .quadrature import TfMoments, _quad
from .tf_solver import TfSolution, eval_f, eval_remainder

__all__ = [
    "HARTREE_EV",
    "CancellationError",
    "CorrectionResult",
    "Method",
    "delta_e_closed",
    "delta_e_oracle",
    "delta_term_contribution",
    "eq10_density",
    "eq9_density",
    "phase_space_density",
    "phase_space_density_derivative",
    "schwinger_coefficient",
    "surface_flux",
    "surface_flux_at",
]

HARTREE_EV = 27.211386
CLOSED_FORM_PREFACTOR = 4.0 / (9.0 * math.pi**2) * (0.75 * math.pi) ** (2.0 / 3.0)


class CancellationError(RuntimeError):
    """The point-charge terms of the two potentials fail to cancel."""


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    DIRECT_ORACLE = "direct_oracle"


@dataclass(frozen=True)
class CorrectionResult:
    c: float
    delta_e: dict
    method: Method
    est_error: float = 0.0


def phase_space_density(V):
    """int d3p/(2 pi)**3 delta(p**2/2 + V): sqrt(-2V)/(2 pi**2) for V < 0, else 0."""
    V = np.asarray(V, dtype=float)
    out = np.sqrt(np.clip(-2.0 * V, 0.0, None)) / (2.0 * math.pi**2)
    return float(out) if out.ndim == 0 else out


def phase_space_density_derivative(V):
    V = np.asarray(V, dtype=float)
    if np.any(V >= 0.0):
        raise ValueError("derivative of the phase-space density requires V < 0")
    out = -1.0 / (2.0 * math.pi**2 * np.sqrt(-2.0 * V))
    return float(out) if out.ndim == 0 else out


def _negative_potential(field: PotentialField, r):
    V = np.asarray(field.value(r))
    if np.any(V >= 0.0):
        raise ValueError("correction density needs V < 0 (square-root domain)")
    return V


def eq9_density(field: PotentialField, r):
    """Correction density as lap V and |grad V|**2 acting on the phase-space density."""
    V = _negative_potential(field, r)
    lap = np.asarray(field.laplacian_smooth(r))
    dV = np.asarray(field.derivative(r))
    out = (lap * phase_space_density(V) + 0.5 * dV**2 * phase_space_density_derivative(V)) / 6.0
    return float(out) if out.ndim == 0 else out


def eq10_density(field: PotentialField, r):
    """Correction density as lap V sqrt(-2V) minus a total divergence.

    The divergence of grad (-2V)**1.5 is expanded in closed form for a radial
    field: W' = -3 sqrt(-2V) V', W'' + 2W'/r = -3 sqrt(-2V) lap V + 3 V'**2/sqrt(-2V).
    """
    V = _negative_potential(field, r)
    lap = np.asarray(field.laplacian_smooth(r))
    dV = np.asarray(field.derivative(r))
    w = np.sqrt(-2.0 * V)
    divergence = -3.0 * w * lap + 3.0 * dV**2 / w
    out = (lap * w - divergence / 3.0) / (24.0 * math.pi**2)
    return float(out) if out.ndim == 0 else out


def delta_term_contribution(model: AtomicModel, sol: TfSolution, tol: float = 1e-2) -> float:
    """Energy from the delta3(r) parts of both Laplacians; exactly zero.

    The point-charge strengths are identical, and the square-root bracket
    multiplying them must vanish at the origin. A bracket that does not
    vanish (e.g. f(0) != 1) raises ``CancellationError``.
    """
    tf, c = thomas_fermi_field(model, sol), coulombic_field(model, sol)
    if tf.point_charge_strength() != c.point_charge_strength():
        raise CancellationError("point-charge strengths differ")
    a = model.a
    check = origin_cancellation_check(model, sol, a * np.geomspace(1e-6, 1e-8, 5))
    # natural scale of d(r)/sqrt(r) is sqrt(2Z)/a
    bound = tol * math.sqrt(2.0 * model.Z) / a
    if not check.max_scaled <= bound:
        raise CancellationError(
            f"origin bracket does not vanish: max |d/sqrt(r)| = {check.max_scaled:.3e} > {bound:.3e}"
        )
    # bracket -> 0 at the only point delta3(r) samples
    return 0.0


def _flux_bracket(model: AtomicModel, sol: TfSolution, r):
    """d/dr [(-2V_TF)**1.5 - (-2V_C)**1.5] with the Coulombic part zero where V_C >= 0."""
    r = np.asarray(r, dtype=float)
    Z, a, B = model.Z, model.a, sol.B
    x = r / a
    f, fp = eval_f(sol, x)
    rho, drho = eval_remainder(sol, x)
    q = 1.0 + B * x
    s = np.sqrt(2.0 * Z / r)
    sigma = rho - x * drho  # f - x f' - 1
    inside = q > 0.0
    qs = np.sqrt(np.where(inside, q, 0.0))
    sf = np.sqrt(f)
    # sqrt(f)(1 + sigma) - sqrt(q), regrouped to avoid cancellation at small r
    both = rho / (sf + qs) + sigma * sf
    tf_only = sf * (1.0 + sigma)
    bracket = np.where(inside, both, tf_only)
    return -3.0 * s * Z / r**2 * bracket


def surface_flux_at(model: AtomicModel, sol: TfSolution, r) -> float:
    """Outward flux of the divergence part through the sphere of radius r."""
    r = float(r)
    if r <= 0.0:
        raise ValueError("radius must be positive")
    return float(-4.0 * math.pi * r**2 * _flux_bracket(model, sol, r) / (72.0 * math.pi**2))


def surface_flux(sol: TfSolution, model: AtomicModel, R: float, r0: float) -> float:
    """Divergence-term energy between r0 and R: flux(R) - flux(r0)."""
    if not 0.0 < r0 < R:
        raise ValueError("need 0 < r0 < R")
    if r0 >= coulombic_field(model, sol).zero_crossing:
        raise ValueError("inner radius must lie where both potentials are negative")
    return surface_flux_at(model, sol, R) - surface_flux_at(model, sol, r0)


def schwinger_coefficient(moments: TfMoments) -> float:
    return CLOSED_FORM_PREFACTOR * moments.m_f2


def delta_e_closed(model: AtomicModel | list, c: float, est_error: float = 0.0) -> CorrectionResult:
    models = [model] if isinstance(model, AtomicModel) else list(model)
    delta_e = {m.Z: -c * m.Z ** (5.0 / 3.0) for m in sorted(models, key=lambda m: m.Z)}
    return CorrectionResult(c, delta_e, Method.CLOSED_FORM, est_error)


def _oracle_pieces(model: AtomicModel, sol: TfSolution):
    """Radial integrands (times 4 pi r**2) of the subtracted correction density.

    The Thomas-Fermi Laplacian term has no Coulombic partner (smooth part of
    lap V_C is zero). The gradient terms are subtracted pointwise inside r_c,
    where both are singular like r**-3.5 but their difference is finite;
    outside r_c each is integrated on its own domain.
    """
    Z, a, B = model.Z, model.a, sol.B
    k = 4.0 * math.pi / (24.0 * math.pi**2)

    def lap_term(r):
        f, _ = eval_f(sol, r / a)
        lap = -4.0 / (3.0 * math.pi) * (2.0 * Z / r) ** 1.5 * f**1.5
        return k * r * r * 2.0 * lap * math.sqrt(2.0 * Z * f / r)

    def grad_difference(r):
        x = r / a
        f, _ = eval_f(sol, x)
        rho, drho = eval_remainder(sol, x)
        sigma = rho - x * drho
        q = 1.0 + B * x
        sf, sq = math.sqrt(f), math.sqrt(q)
        # (1+sigma)**2/sqrt(f) - 1/sqrt(q) without cancellation
        num = (2.0 * sigma + sigma * sigma) * sq - rho / (sf + sq)
        diff = num / (sf * sq)
        return -k * r * r * (Z * Z / r**4) * math.sqrt(r / (2.0 * Z)) * diff

    def grad_tf(r):
        f, fp = eval_f(sol, r / a)
        dV = Z * f / r**2 - Z * fp / (a * r)
        return -k * r * r * dV * dV / math.sqrt(2.0 * Z * f / r)

    def grad_c_mapped(w, r_zero):
        # r = r_zero - w**2 absorbs the (r_zero - r)**-1/2 endpoint singularity
        r = r_zero - w * w
        q = -B * w * w / a  # 1 + B r/a
        return k * r * r * (Z / r**2) ** 2 / math.sqrt(2.0 * Z * q / r) * 2.0 * w

    return lap_term, grad_difference, grad_tf, grad_c_mapped


def delta_e_oracle(sol: TfSolution, model: AtomicModel, tol: float = 1e-10) -> CorrectionResult:
    """Energy correction by direct radial quadrature of the local density."""
    a = model.a
    r_zero = coulombic_field(model, sol).zero_crossing
    r_c = 0.5 * r_zero
    r_far = sol.params.x_max * a
    lap_term, grad_difference, grad_tf, grad_c_mapped = _oracle_pieces(model, sol)

    pieces = [
        _quad(lambda u: lap_term(u * u) * 2.0 * u, 0.0, math.sqrt(r_c), tol),
        _quad(lap_term, r_c, r_far, tol, [sol.params.match_point * a]),
        _quad(lap_term, r_far, math.inf, tol),
        _quad(lambda u: grad_difference(u * u) * 2.0 * u, 0.0, math.sqrt(r_c), tol),
        _quad(grad_tf, r_c, r_far, tol, [sol.params.match_point * a]),
        _quad(grad_tf, r_far, math.inf, tol),
        _quad(lambda w: grad_c_mapped(w, r_zero), 0.0, math.sqrt(r_zero - r_c), tol),
    ]
    value = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    Z53 = model.Z ** (5.0 / 3.0)
    return CorrectionResult(-value / Z53, {model.Z: value}, Method.DIRECT_ORACLE, err)
