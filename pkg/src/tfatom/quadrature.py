"""Semi-infinite integrals of the Thomas-Fermi function with analytic tails."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .tf_solver import TfSolution, eval_f

__all__ = ["QuadratureError", "TfMoments", "integrate_improper", "tf_moments"]


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class TfMoments:
    m_f2: float
    m_slope: float
    m_norm: float
    est_error: dict

    def as_dict(self) -> dict:
        return {
            "m_f2": self.m_f2,
            "m_slope": self.m_slope,
            "m_norm": self.m_norm,
            "est_error": dict(self.est_error),
        }


def _quad(g, lo, hi, tol, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, err = quad(g, lo, hi, epsabs=0.0, epsrel=tol, limit=500, points=points)
        except IntegrationWarning as exc:
            raise QuadratureError(f"quadrature on [{lo}, {hi}] did not converge: {exc}") from None
    return val, err


def integrate_improper(
    integrand: Callable[[float], float],
    split: float,
    tail_exponent: float,
    tail_coeff: float,
    tol: float = 1e-10,
    singular: bool = False,
    points: Sequence[float] = (),
):
    """Integrate ``integrand`` over [0, oo).

    Adaptive Gauss-Kronrod on [0, split], closed-form power-law tail
    ``tail_coeff * x**-tail_exponent`` beyond. With ``singular`` the piece
    [0, min(1, split)] is mapped by x = u**2, which removes x**-1/2 endpoint
    singularities.

    Returns (value, error_estimate); the estimate adds the rule error and the
    tail mismatch at ``split`` propagated through the tail integral.
    """
    if tail_exponent <= 1.0:
        raise ValueError("tail_exponent must exceed 1 for a convergent tail")
    if split <= 0.0:
        raise ValueError("split must be positive")

    total, err = 0.0, 0.0
    lo = 0.0
    if singular:
        edge = min(1.0, split)
        v, e = _quad(lambda u: integrand(u * u) * 2.0 * u, 0.0, math.sqrt(edge), tol)
        total += v
        err += e
        lo = edge
    if lo < split:
        inner = sorted(p for p in points if lo < p < split) or None
        v, e = _quad(integrand, lo, split, tol, inner)
        total += v
        err += e

    n = tail_exponent
    tail = tail_coeff * split ** (1.0 - n) / (n - 1.0)
    mismatch = abs(integrand(split) - tail_coeff * split**-n) * split / (n - 1.0)
    return total + tail, err + mismatch


# (name, integrand(f, x), asymptotic decay exponent)
_MOMENTS = (
    ("m_f2", lambda f, x: f * f, 6.0),
    ("m_slope", lambda f, x: f**1.5 / math.sqrt(x), 5.0),
    ("m_norm", lambda f, x: f**1.5 * math.sqrt(x), 4.0),
)


def tf_moments(sol: TfSolution, tol: float = 1e-10, split: float | None = None) -> TfMoments:
    """Compute the integrals of f that the energy correction and the ODE identities use.

    The power-law tail beyond ``split`` (default 20 x_max) is matched to the
    integrand value at ``split``. Error estimates include the tail model's
    ODE defect weighted by the part of each moment beyond x_max.
    """
    p = sol.params
    if split is None:
        split = 20.0 * p.x_max
    defect = float(np.max(np.abs(sol.tail.ode_defect(np.geomspace(p.x_max, max(split, 2 * p.x_max), 64)))))
    values, errors = {}, {}
    for name, g, n in _MOMENTS:
        # quad never samples the endpoints, so x = 0 is not evaluated
        def integrand(x, g=g):
            return g(eval_f(sol, x)[0], x)

        coeff = integrand(split) * split**n
        v, e = integrate_improper(
            integrand, split, n, coeff, tol=tol, singular=True,
            points=(p.x_switch, p.match_point, p.x_max),
        )
        if split > p.x_max:
            beyond, _ = _quad(integrand, p.x_max, split, tol)
            beyond += coeff * split ** (1.0 - n) / (n - 1.0)
            e += defect * abs(beyond)
        values[name], errors[name] = v, e
    return TfMoments(values["m_f2"], values["m_slope"], values["m_norm"], errors)
