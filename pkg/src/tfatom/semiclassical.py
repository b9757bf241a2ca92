"""
Checks of the semiclassical phase expansion on polynomial model potentials.

The momentum-space propagator is written as exp[-i(p**2 tau / 2m + U)] with
U solving

    -dU/dtau + V - (hbar/m) p.grad U + (hbar**2/2m)(grad U)**2 + (i hbar**2/2m) lap U = 0,

U(tau=0) = 0. Its classical limit is U0 = V tau and the leading shift is

    dU = -(hbar tau**2/2m) p.grad V + (hbar**2 tau**3/6m**2)(p.grad)**2 V
         + (hbar**2 tau**3/6m)(grad V)**2 + (i hbar**2 tau**2/4m) lap V.

The ``printed`` variant divides the third term by m**2 instead of m; it only
differs from the corrected form when m != 1, which is why the scans here
default to a non-unit mass.

Model potentials are cubic polynomials, so every spatial derivative is exact
and fourth derivatives vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

__all__ = [
    "DeltaU",
    "ModelPotential",
    "ResidualReport",
    "SemiclassicalPoint",
    "delta_g0_closed",
    "delta_g0_quadrature",
    "delta_u",
    "eq6_residual",
    "free_gaussian_norm",
    "residual_order_scan",
    "u0",
]

VARIANTS = ("corrected", "printed")


def _vec(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError("expected a 3-vector")
    return v


@dataclass(frozen=True, eq=False)
class ModelPotential:
    """V(r) = c + g.r + r.H.r/2 + T[r,r,r]/6 with symmetric H and T."""

    kind: str
    constant: float = 0.0
    grad0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    hess0: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    third: np.ndarray = field(default_factory=lambda: np.zeros((3, 3, 3)))

    @classmethod
    def uniform(cls, constant: float) -> "ModelPotential":
        return cls("Linear", constant)

    @classmethod
    def linear(cls, g, constant: float = 0.0) -> "ModelPotential":
        return cls("Linear", constant, _vec(g))

    @classmethod
    def harmonic(cls, k, center=(0.0, 0.0, 0.0), constant: float = 0.0) -> "ModelPotential":
        """V = (r - c).K.(r - c)/2 + constant; ``k`` is a scalar, 3 diagonal values or a matrix."""
        K = np.asarray(k, dtype=float)
        if K.ndim == 0:
            K = K * np.eye(3)
        elif K.ndim == 1:
            K = np.diag(K)
        K = 0.5 * (K + K.T)
        c = _vec(center)
        return cls("Harmonic", constant + 0.5 * c @ K @ c, -K @ c, K)

    @classmethod
    def cubic(cls, T, H=None, g=None, constant: float = 0.0) -> "ModelPotential":
        T = np.asarray(T, dtype=float)
        if T.shape != (3, 3, 3):
            raise ValueError("cubic coefficient must be a 3x3x3 tensor")
        # symmetrize over all index permutations
        T = sum(np.transpose(T, p) for p in
                [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]) / 6.0
        H = np.zeros((3, 3)) if H is None else 0.5 * (np.asarray(H, float) + np.asarray(H, float).T)
        g = np.zeros(3) if g is None else _vec(g)
        return cls("Cubic", constant, g, H, T)

    def value(self, r) -> float:
        r = _vec(r)
        return float(self.constant + self.grad0 @ r + 0.5 * r @ self.hess0 @ r
                     + np.einsum("ijk,i,j,k", self.third, r, r, r) / 6.0)

    def gradient(self, r) -> np.ndarray:
        r = _vec(r)
        return self.grad0 + self.hess0 @ r + 0.5 * np.einsum("ijk,j,k->i", self.third, r, r)

    def hessian(self, r) -> np.ndarray:
        r = _vec(r)
        return self.hess0 + np.einsum("ijk,k->ij", self.third, r)

    def laplacian(self, r) -> float:
        return float(np.trace(self.hessian(r)))

    def grad_laplacian(self) -> np.ndarray:
        """Gradient of the Laplacian; constant for a cubic."""
        return np.einsum("kii->k", self.third)


@dataclass(frozen=True, eq=False)
class SemiclassicalPoint:
    position: np.ndarray
    momentum: np.ndarray
    tau: complex
    hbar_scale: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "position", _vec(self.position))
        object.__setattr__(self, "momentum", _vec(self.momentum))
        if not np.isfinite(self.tau):
            raise ValueError("tau must be finite")
        if self.hbar_scale <= 0.0 or self.mass <= 0.0:
            raise ValueError("hbar_scale and mass must be positive")

    @property
    def h(self) -> float:
        return self.hbar * self.hbar_scale

    def with_(self, **changes) -> "SemiclassicalPoint":
        kw = dict(position=self.position, momentum=self.momentum, tau=self.tau,
                  hbar_scale=self.hbar_scale, mass=self.mass, hbar=self.hbar)
        kw.update(changes)
        return SemiclassicalPoint(**kw)


@dataclass(frozen=True)
class DeltaU:
    """The four labelled terms of the phase shift and their tau powers."""

    drift: complex        # -(h tau^2/2m) p.grad V            ~ tau^2
    curvature: complex    # (h^2 tau^3/6m^2) (p.grad)^2 V      ~ tau^3
    force: complex        # (h^2 tau^3/6m) (grad V)^2          ~ tau^3
    laplacian: complex    # (i h^2 tau^2/4m) lap V             ~ tau^2

    TAU_POWERS = (2, 3, 3, 2)

    @property
    def terms(self) -> tuple:
        return (self.drift, self.curvature, self.force, self.laplacian)

    @property
    def total(self) -> complex:
        return sum(self.terms)


def _force_mass(m: float, variant: str) -> float:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return m if variant == "corrected" else m * m


def u0(V: ModelPotential, point: SemiclassicalPoint) -> complex:
    return V.value(point.position) * point.tau


def delta_u(V: ModelPotential, point: SemiclassicalPoint, variant: str = "corrected") -> DeltaU:
    r, p, tau, h, m = point.position, point.momentum, point.tau, point.h, point.mass
    mf = _force_mass(m, variant)
    g = V.gradient(r)
    H = V.hessian(r)
    return DeltaU(
        drift=-(h * tau**2 / (2 * m)) * (p @ g),
        curvature=(h**2 * tau**3 / (6 * m * m)) * (p @ H @ p),
        force=(h**2 * tau**3 / (6 * mf)) * (g @ g),
        laplacian=1j * (h**2 * tau**2 / (4 * m)) * np.trace(H),
    )


def eq6_residual(V: ModelPotential, point: SemiclassicalPoint, variant: str = "corrected") -> complex:
    """Left side of the phase equation with U = U0 + dU, all derivatives analytic."""
    r, p, tau, h, m = point.position, point.momentum, point.tau, point.h, point.mass
    mf = _force_mass(m, variant)
    v = V.value(r)
    g = V.gradient(r)
    H = V.hessian(r)
    T = V.third
    grad_lap = V.grad_laplacian()

    # d/dtau of each term: power * term / tau, written out to stay finite at tau = 0
    dtau = (
        -(h * tau / m) * (p @ g)
        + (h**2 * tau**2 / (2 * m * m)) * (p @ H @ p)
        + (h**2 * tau**2 / (2 * mf)) * (g @ g)
        + 1j * (h**2 * tau / (2 * m)) * np.trace(H)
    )
    grad_du = (
        -(h * tau**2 / (2 * m)) * (H @ p)
        + (h**2 * tau**3 / (6 * m * m)) * np.einsum("ijk,i,j->k", T, p, p)
        + (h**2 * tau**3 / (6 * mf)) * 2.0 * (H @ g)
        + 1j * (h**2 * tau**2 / (4 * m)) * grad_lap
    )
    # fourth derivatives vanish, so the curvature and Laplacian terms are harmonic
    lap_du = (
        -(h * tau**2 / (2 * m)) * (p @ grad_lap)
        + (h**2 * tau**3 / (6 * mf)) * 2.0 * (np.sum(H * H) + g @ grad_lap)
    )
    grad_u = tau * g + grad_du
    lap_u = tau * np.trace(H) + lap_du
    return complex(
        -(v + dtau)
        + v
        - (h / m) * (p @ grad_u)
        + (h**2 / (2 * m)) * (grad_u @ grad_u)
        + 1j * (h**2 / (2 * m)) * lap_u
    )


@dataclass(frozen=True, eq=False)
class ResidualReport:
    potential_kind: str
    point: SemiclassicalPoint
    samples: list
    fitted_exponent: float
    variant: str = "corrected"
    degenerate: bool = False
    expected_exponent: float = 3.0

    def as_dict(self) -> dict:
        return {
            "potential_kind": self.potential_kind,
            "point": {
                "position": self.point.position.tolist(),
                "momentum": self.point.momentum.tolist(),
                "tau": [float(np.real(self.point.tau)), float(np.imag(self.point.tau))],
                "mass": self.point.mass,
            },
            "samples": [[lam, res] for lam, res in self.samples],
            "fitted_exponent": self.fitted_exponent,
            "expected_exponent": self.expected_exponent,
            "degenerate": self.degenerate,
            "variant": self.variant,
        }


def residual_order_scan(V: ModelPotential, base_point: SemiclassicalPoint, lambdas=None,
                        variant: str = "corrected") -> ResidualReport:
    """Fit the power of hbar with which the residual vanishes."""
    lambdas = np.logspace(-3, -1, 9) if lambdas is None else np.asarray(lambdas, dtype=float)
    if lambdas.size < 5 or lambdas.max() / lambdas.min() < 100.0 - 1e-9:
        raise ValueError("need >= 5 hbar scales spanning >= 2 decades")
    res = [abs(eq6_residual(V, base_point.with_(hbar_scale=lam), variant)) for lam in lambdas]
    samples = [(float(lam), float(x)) for lam, x in zip(lambdas, res)]
    res = np.asarray(res)
    if np.all(res == 0.0):
        return ResidualReport(V.kind, base_point, samples, math.nan, variant, degenerate=True)
    ok = res > 0.0
    slope = float(np.polyfit(np.log(lambdas[ok]), np.log(res[ok]), 1)[0])
    return ResidualReport(V.kind, base_point, samples, slope, variant)


# ---------------------------------------------------------------------------
# Euclidean-time Green function shift (tau = -i s)


def free_gaussian_norm(s: float, mass: float = 1.0, hbar: float = 1.0) -> float:
    """int d3p/(2 pi hbar)**3 exp(-s p**2/2m) by radial quadrature."""
    if s <= 0.0:
        raise ValueError("Euclidean time must be positive")
    width = math.sqrt(mass / s)
    val, _ = quad(lambda p: p * p * math.exp(-0.5 * s * p * p / mass), 0.0, 40.0 * width,
                  epsabs=0.0, epsrel=1e-13, limit=200)
    return 4.0 * math.pi * val / (2.0 * math.pi * hbar) ** 3


def delta_g0_closed(V: ModelPotential, position, s: float, mass: float = 1.0, hbar: float = 1.0) -> float:
    """Closed-form Green-function shift continued to tau = -i s.

    With i tau = s the Gaussian factor (m / 2 pi i hbar**2 tau)**1.5 becomes
    the real positive (m / 2 pi hbar**2 s)**1.5, so no branch choice arises;
    tau**2 = -s**2 fixes the overall minus sign.
    """
    if s <= 0.0:
        raise ValueError("Euclidean time must be positive")
    r = _vec(position)
    g = V.gradient(r)
    bracket = V.laplacian(r) - 0.5 * s * (g @ g)
    gauss = (mass / (2.0 * math.pi * hbar**2 * s)) ** 1.5
    return -(hbar**2 * s**2 / (12.0 * mass)) * gauss * math.exp(-V.value(r) * s) * bracket


# six-point octahedral rule: exact for spherical polynomials of degree <= 3
_OCTAHEDRON = np.vstack([np.eye(3), -np.eye(3)])


def delta_g0_quadrature(V: ModelPotential, position, s: float, mass: float = 1.0,
                        hbar: float = 1.0, variant: str = "corrected") -> float:
    """Momentum integral of the expanded propagator shift, evaluated numerically.

    The shift of exp(-i U) to second order in hbar is -i dU - dU_drift**2/2;
    it is evaluated at explicit momenta (octahedral angular rule times a
    radial Gauss-Kronrod integral) with tau = -i s.
    """
    if s <= 0.0:
        raise ValueError("Euclidean time must be positive")
    r = _vec(position)
    tau = -1j * s
    base = SemiclassicalPoint(r, np.zeros(3), tau, mass=mass, hbar=hbar)

    def shell_average(p: float) -> float:
        acc, scale = 0.0, 0.0
        for n in _OCTAHEDRON:
            du = delta_u(V, base.with_(momentum=p * n), variant)
            acc += -1j * du.total - 0.5 * du.drift**2
            scale += sum(abs(t) for t in du.terms) + abs(du.drift) ** 2
        acc /= len(_OCTAHEDRON)
        if abs(acc.imag) > 1e-10 * scale:
            raise ArithmeticError("Euclidean shift is not real")
        return acc.real

    width = math.sqrt(mass / s)
    val, _ = quad(lambda p: p * p * math.exp(-0.5 * s * p * p / mass) * shell_average(p),
                  0.0, 40.0 * width, epsabs=0.0, epsrel=1e-12, limit=200)
    return 4.0 * math.pi * val / (2.0 * math.pi * hbar) ** 3 * math.exp(-V.value(r) * s)
