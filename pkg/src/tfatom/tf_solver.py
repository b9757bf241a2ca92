"""
Thomas-Fermi function solver.

Solves the singular boundary-value problem

    f''(x) = f(x)**1.5 / sqrt(x),    f(0) = 1,    f(x) -> 0 as x -> oo

for the neutral-atom screening function.

Near the origin the right-hand side has a sqrt(x) branch point, so the
solution is started from a half-integer power series

    f(x) = 1 + B x + (4/3) x**1.5 + (2/5) B x**2.5 + (1/3) x**3 + ...

whose coefficients come from a recurrence. The unknown slope B = f'(0) is
first bracketed by bisection between undershooting trajectories (f hits zero)
and overshooting ones (f' turns positive). Forward integration is ill
conditioned near the separatrix (perturbations grow like x**4.77), so the
stored solution is built by matching an outward leg from the origin series to
an inward leg started on the decaying asymptotic branch

    f(x) ~ A x**-3 (1 + kappa x**-lam)**(-3/lam),    lam = (sqrt(73) - 7)/2,

with B and kappa fixed by continuity of (f, f') at an interior point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import BPoly
from scipy.optimize import root

__all__ = [
    "ASYMPTOTIC_AMPLITUDE",
    "ASYMPTOTIC_EXPONENT",
    "ConvergenceError",
    "ShootingError",
    "TailModel",
    "TfParams",
    "TfSolution",
    "classify_slope",
    "eval_f",
    "eval_remainder",
    "origin_series",
    "series_coefficients",
    "shoot",
    "solve_tf",
]

#: 144/x**3 is an exact particular solution of the TF equation.
ASYMPTOTIC_AMPLITUDE = 144.0
#: Decay exponent of the leading correction to 144/x**3.
ASYMPTOTIC_EXPONENT = 0.5 * (math.sqrt(73.0) - 7.0)

SERIES_MAX_X = 0.5
SERIES_MIN_ORDER = 4

UNDERSHOOT = -1
OVERSHOOT = 1


class ShootingError(RuntimeError):
    """The slope bracket is invalid or bisection failed to converge."""


class ConvergenceError(RuntimeError):
    """An integration or matching step did not converge."""


@dataclass(frozen=True)
class TfParams:
    x_switch: float = 0.05
    x_max: float = 50.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    slope_bracket: tuple[float, float] = (-2.0, -1.0)
    max_shoot_iters: int = 200
    series_order: int = 16
    x_match: float = 2.0
    n_grid: int = 2000

    def __post_init__(self):
        if not 0.0 < self.x_switch < self.x_max:
            raise ValueError("need 0 < x_switch < x_max")
        if self.x_switch > SERIES_MAX_X:
            raise ValueError(f"x_switch must not exceed {SERIES_MAX_X}")
        lo, hi = self.slope_bracket
        if not (lo < hi < 0.0):
            raise ValueError("slope_bracket must satisfy low < high < 0")
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_shoot_iters < 1:
            raise ValueError("max_shoot_iters must be positive")
        if self.series_order < SERIES_MIN_ORDER:
            raise ValueError(f"series_order must be >= {SERIES_MIN_ORDER}")
        if self.n_grid < 16:
            raise ValueError("n_grid too small")

    @property
    def match_point(self) -> float:
        # keep the matching point inside the integrated range
        return min(max(self.x_match, 4.0 * self.x_switch), 0.5 * self.x_max)

    @property
    def x_far(self) -> float:
        return 40.0 * self.x_max


@dataclass(frozen=True)
class TailModel:
    """Decaying branch fitted with C1 continuity at ``x_tail``.

    ``amplitude`` is the coefficient of x**-3 that the model approaches; it
    tends to 144 as the fit point moves outward. ``kappa`` controls the
    slowly decaying x**-lam correction.
    """

    x_tail: float
    amplitude: float
    kappa: float

    @classmethod
    def fit(cls, x_tail: float, f: float, fprime: float) -> "TailModel":
        p = -x_tail * fprime / f
        if p <= 0.0:
            raise ConvergenceError("solution is not decaying at the tail fit point")
        lam = ASYMPTOTIC_EXPONENT
        u = 3.0 / p
        kappa = (u - 1.0) * x_tail**lam
        amplitude = f * x_tail**3 * u ** (3.0 / lam)
        return cls(float(x_tail), float(amplitude), float(kappa))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lam = ASYMPTOTIC_EXPONENT
        u = 1.0 + self.kappa * x**-lam
        f = self.amplitude * x**-3 * u ** (-3.0 / lam)
        return f, -3.0 * f / (x * u)

    def ode_defect(self, x):
        """Relative residual f''/(f**1.5/sqrt(x)) - 1 of the model itself."""
        x = np.asarray(x, dtype=float)
        lam = ASYMPTOTIC_EXPONENT
        u = 1.0 + self.kappa * x**-lam
        f, _ = self(x)
        fpp = 3.0 * f / (x * x * u) * (3.0 / u + 1.0 - lam * (u - 1.0) / u)
        return fpp * np.sqrt(x) / f**1.5 - 1.0


def _branch(amplitude: float, kappa: float, x: float) -> np.ndarray:
    f, fp = TailModel(x, amplitude, kappa)(x)
    return np.array([float(f), float(fp)])


# ---------------------------------------------------------------------------
# origin series


def series_coefficients(B: float, order: int, f0: float = 1.0) -> np.ndarray:
    """Coefficients a_k of f(x) = sum_k a_k x**(k/2), k = 0..order.

    Substituting the series into f'' = f**1.5 / sqrt(x) gives
    a_k k (k - 2) / 4 = [f**1.5]_{k-3}, where [.]_j is the j-th coefficient of
    the 3/2 power, itself built by the standard power-of-series recurrence.
    """
    if order < SERIES_MIN_ORDER:
        raise ValueError(f"order must be >= {SERIES_MIN_ORDER}")
    if f0 <= 0.0:
        raise ValueError("f0 must be positive")
    a = np.zeros(order + 1)
    p = np.zeros(order + 1)  # coefficients of f**1.5 in powers of sqrt(x)
    a[0] = f0
    a[2] = B
    p[0] = f0**1.5
    for k in range(3, order + 1):
        j = k - 3
        if j > 0:
            i = np.arange(1, j + 1)
            p[j] = np.sum((2.5 * i - j) * a[i] * p[j - i]) / (j * f0)
        a[k] = 4.0 * p[j] / (k * (k - 2))
    return a


def _check_series_domain(x: np.ndarray) -> None:
    if np.any(x < 0.0) or np.any(x > SERIES_MAX_X):
        raise ValueError(f"origin series valid only for 0 <= x <= {SERIES_MAX_X}")


def origin_series(B, x, order: int = 16, f0: float = 1.0, skip: int = 0):
    """Evaluate the truncated origin series and its derivative.

    ``skip`` drops the terms of index below ``skip`` (used to get the
    remainder beyond 1 + B x without cancellation).
    """
    x = np.asarray(x, dtype=float)
    _check_series_domain(x)
    a = series_coefficients(B, order, f0)
    t = np.sqrt(x)
    f = np.zeros_like(t)
    fp = np.zeros_like(t)
    # Horner-free direct sum; order is small and terms decrease quickly
    for k in range(order, skip - 1, -1):
        if a[k] == 0.0:
            continue
        f = f + a[k] * t**k
        if k >= 2:
            fp = fp + a[k] * 0.5 * k * t ** (k - 2)
    if f.ndim == 0:
        return float(f), float(fp)
    return f, fp


# ---------------------------------------------------------------------------
# shooting


def _rhs(x, y):
    f = y[0]
    return [y[1], (f if f > 0.0 else 0.0) ** 1.5 / math.sqrt(x)]


def _signed_rhs(x, y):
    # smooth continuation used only by the matching legs
    f = y[0]
    return [y[1], math.copysign(abs(f) ** 1.5, f) / math.sqrt(x)]


def _hits_zero(x, y):
    return y[0]


_hits_zero.terminal = True
_hits_zero.direction = -1


def _turns_up(x, y):
    return y[1]


_turns_up.terminal = True
_turns_up.direction = 1


def classify_slope(B: float, params: TfParams) -> int:
    """Return UNDERSHOOT (-1) or OVERSHOOT (+1) for the trial slope ``B``.

    Integration runs to x_max and, if no event fired, on to a long horizon
    so that near-critical slopes are still classified.
    """
    y0 = origin_series(B, params.x_switch, params.series_order)
    x0 = params.x_switch
    for x1 in (params.x_max, 100.0 * params.x_max, 1e4 * params.x_max):
        sol = solve_ivp(
            _rhs, (x0, x1), y0, method="DOP853",
            rtol=params.rel_tol, atol=params.abs_tol,
            events=(_hits_zero, _turns_up),
        )
        if sol.status == -1:
            raise ConvergenceError(f"integration failed for B={B}: {sol.message}")
        if sol.t_events[0].size:
            return UNDERSHOOT
        if sol.t_events[1].size:
            return OVERSHOOT
        x0, y0 = sol.t[-1], sol.y[:, -1]
    # indistinguishable from the separatrix at this tolerance
    return OVERSHOOT


def shoot(params: TfParams) -> float:
    """Bisect the initial slope between undershoot and overshoot."""
    lo, hi = params.slope_bracket
    c_lo = classify_slope(lo, params)
    c_hi = classify_slope(hi, params)
    if c_lo == c_hi:
        kind = "undershoot" if c_lo == UNDERSHOOT else "overshoot"
        raise ShootingError(f"bracket {params.slope_bracket} does not straddle: both endpoints {kind}")
    if c_lo == OVERSHOOT:
        raise ShootingError("bracket is reversed: low end overshoots")
    for _ in range(params.max_shoot_iters):
        mid = 0.5 * (lo + hi)
        if classify_slope(mid, params) == UNDERSHOOT:
            lo = mid
        else:
            hi = mid
        if hi - lo < params.rel_tol * abs(mid):
            return 0.5 * (lo + hi)
    raise ShootingError(f"bisection did not converge in {params.max_shoot_iters} iterations")


# ---------------------------------------------------------------------------
# solution


@dataclass(frozen=True, eq=False)
class TfSolution:
    grid: np.ndarray
    f_values: np.ndarray
    fprime_values: np.ndarray
    B: float
    tail: TailModel
    params: TfParams
    B_shoot: float = field(default=math.nan)

    @property
    def f0(self) -> float:
        return float(self.f_values[0])

    @cached_property
    def _interior(self) -> int:
        return int(np.searchsorted(self.grid, self.params.x_switch))

    @cached_property
    def _f_interp(self) -> BPoly:
        i = self._interior
        x, f, fp = self.grid[i:], self.f_values[i:], self.fprime_values[i:]
        fpp = f**1.5 / np.sqrt(x)
        return BPoly.from_derivatives(x, np.column_stack([f, fp, fpp]))

    @cached_property
    def _fp_interp(self) -> BPoly:
        i = self._interior
        x, f, fp = self.grid[i:], self.f_values[i:], self.fprime_values[i:]
        fpp = f**1.5 / np.sqrt(x)
        fppp = 1.5 * np.sqrt(f) * fp / np.sqrt(x) - 0.5 * f**1.5 / x**1.5
        return BPoly.from_derivatives(x, np.column_stack([fp, fpp, fppp]))


def _leg(y0, span, params, atol):
    sol = solve_ivp(
        _signed_rhs, span, y0, method="DOP853",
        rtol=params.rel_tol, atol=atol, dense_output=True,
    )
    if sol.status != 0:
        raise ConvergenceError(f"integration failed on {span}: {sol.message}")
    return sol


def _match(B_guess: float, params: TfParams):
    xs, xm, xf = params.x_switch, params.match_point, params.x_far
    # inward leg works with values ~ 144/xf**3, so the absolute tolerance is rescaled
    atol_in = params.abs_tol * 1e-8

    def legs(B, kappa):
        out = _leg(origin_series(B, xs, params.series_order), (xs, xm), params, params.abs_tol)
        inw = _leg(_branch(ASYMPTOTIC_AMPLITUDE, kappa, xf), (xf, xm), params, atol_in)
        return out, inw

    def mismatch(v):
        out, inw = legs(v[0], math.exp(v[1]))
        yo, yi = out.y[:, -1], inw.y[:, -1]
        return [yo[0] - yi[0], yo[1] - yi[1]]

    sommerfeld_kappa = ASYMPTOTIC_AMPLITUDE ** (ASYMPTOTIC_EXPONENT / 3.0)
    res = root(mismatch, [B_guess, math.log(sommerfeld_kappa)], method="hybr",
               options={"xtol": 1e-13})
    if not res.success or max(abs(r) for r in res.fun) > 1e3 * params.rel_tol:
        raise ConvergenceError(f"tail matching failed: {res.message}")
    B, kappa = float(res.x[0]), math.exp(res.x[1])
    return B, legs(B, kappa)


def solve_tf(params: TfParams | None = None) -> TfSolution:
    """Solve the Thomas-Fermi problem and return a densely evaluable solution."""
    params = params or TfParams()
    B_shoot = shoot(params)
    B, (out, inw) = _match(B_shoot, params)
    if abs(B - B_shoot) > 1e-6 * abs(B):
        raise ConvergenceError(f"tail matching slope {B} disagrees with bisection slope {B_shoot}")
    lo, hi = params.slope_bracket
    if not lo <= B <= hi:
        raise ConvergenceError("matched slope left the bracket")

    xs, xm = params.x_switch, params.match_point
    inner = np.concatenate([[0.0], np.geomspace(1e-6 * xs, xs, 25, endpoint=False)])
    outer = np.geomspace(xs, params.x_max, params.n_grid)
    outer = np.union1d(outer, [xm])
    f_in, fp_in = origin_series(B, inner, params.series_order)
    y_out = np.where(outer <= xm, out.sol(np.minimum(outer, xm)), inw.sol(np.maximum(outer, xm)))
    # exact boundary values at the switch point
    y_out[:, 0] = origin_series(B, xs, params.series_order)

    grid = np.concatenate([inner, outer])
    f = np.concatenate([f_in, y_out[0]])
    fp = np.concatenate([fp_in, y_out[1]])
    f[0], fp[0] = 1.0, B

    for arr in (grid, f, fp):
        arr.setflags(write=False)
    tail = TailModel.fit(params.x_max, f[-1], fp[-1])
    return TfSolution(grid, f, fp, B, tail, params, B_shoot)


def eval_f(sol: TfSolution, x):
    """Evaluate (f, f') anywhere on x >= 0.

    Origin series below x_switch, quintic Hermite interpolation of the stored
    samples on [x_switch, x_max], tail model beyond.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("x must be non-negative")
    p = sol.params
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    f = np.empty_like(x)
    fp = np.empty_like(x)

    near = x < p.x_switch
    if near.any():
        f[near], fp[near] = origin_series(sol.B, x[near], p.series_order, sol.f0)
    mid = ~near & (x <= p.x_max)
    if mid.any():
        f[mid] = sol._f_interp(x[mid])
        fp[mid] = sol._fp_interp(x[mid])
    far = x > p.x_max
    if far.any():
        f[far], fp[far] = sol.tail(x[far])

    if scalar:
        return float(f[0]), float(fp[0])
    return f, fp


def eval_remainder(sol: TfSolution, x):
    """Return (f - 1 - B x, its derivative) without cancellation near x = 0."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    rho = np.empty_like(x)
    drho = np.empty_like(x)
    p = sol.params
    near = x < p.x_switch
    if near.any():
        rho[near], drho[near] = origin_series(sol.B, x[near], p.series_order, sol.f0, skip=3)
        rho[near] += sol.f0 - 1.0
    if (~near).any():
        f, fp = eval_f(sol, x[~near])
        rho[~near] = f - 1.0 - sol.B * x[~near]
        drho[~near] = fp - sol.B
    if scalar:
        return float(rho[0]), float(drho[0])
    return rho, drho
