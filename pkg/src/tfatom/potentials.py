"""Thomas-Fermi and subtracted Coulombic potentials in atomic units (hbar = m = e = 1).

    V_TF(r) = -(Z/r) f(r/a)
    V_C(r)  = -(Z/r) (1 + B r/a)

Both Laplacians carry the same point-charge term 4 pi Z delta3(r). That term
is never sampled; it is reported separately by ``point_charge_strength`` and
the numeric Laplacians return only the smooth part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .tf_solver import TfSolution, eval_f, eval_remainder

__all__ = [
    "SCREENING_CONSTANT",
    "AtomicModel",
    "OriginCancellation",
    "PotentialField",
    "PotentialKind",
    "coulombic_field",
    "origin_cancellation_check",
    "thomas_fermi_field",
]

#: a = SCREENING_CONSTANT * Z**(-1/3) in bohr, i.e. (3 pi/4)**(2/3) (hbar**2 / 2 m e**2) Z**(-1/3)
SCREENING_CONSTANT = 0.5 * (0.75 * math.pi) ** (2.0 / 3.0)


@dataclass(frozen=True)
class AtomicModel:
    Z: float

    def __post_init__(self):
        if not self.Z >= 1:
            raise ValueError(f"nuclear charge must be >= 1, got {self.Z}")

    @property
    def a(self) -> float:
        """Thomas-Fermi screening length."""
        return SCREENING_CONSTANT * self.Z ** (-1.0 / 3.0)


class PotentialKind(enum.Enum):
    THOMAS_FERMI = "thomas_fermi"
    COULOMBIC = "coulombic"


def _radii(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radius must be positive")
    return r


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True, eq=False)
class PotentialField:
    kind: PotentialKind
    model: AtomicModel
    sol: TfSolution

    @property
    def Z(self) -> float:
        return self.model.Z

    @property
    def a(self) -> float:
        return self.model.a

    @property
    def zero_crossing(self) -> float:
        """Radius where the potential reaches 0 (inf for Thomas-Fermi)."""
        if self.kind is PotentialKind.COULOMBIC:
            return -self.a / self.sol.B
        return math.inf

    def value(self, r):
        r = _radii(r)
        if self.kind is PotentialKind.THOMAS_FERMI:
            f, _ = eval_f(self.sol, r / self.a)
            return _out(-self.Z * f / r)
        return _out(-self.Z / r - self.Z * self.sol.B / self.a)

    def derivative(self, r):
        """Signed radial derivative dV/dr."""
        r = _radii(r)
        if self.kind is PotentialKind.THOMAS_FERMI:
            f, fp = eval_f(self.sol, r / self.a)
            return _out(self.Z * f / r**2 - self.Z * fp / (self.a * r))
        return _out(self.Z / r**2)

    def gradient_magnitude(self, r):
        return _out(np.abs(self.derivative(r)))

    def laplacian_smooth(self, r):
        """Laplacian without the 4 pi Z delta3(r) part."""
        r = _radii(r)
        if self.kind is PotentialKind.THOMAS_FERMI:
            f, _ = eval_f(self.sol, r / self.a)
            return _out(-4.0 / (3.0 * math.pi) * (2.0 * self.Z / r) ** 1.5 * f**1.5)
        return _out(np.zeros_like(r))

    def point_charge_strength(self) -> float:
        return 4.0 * math.pi * self.Z


def thomas_fermi_field(model: AtomicModel, sol: TfSolution) -> PotentialField:
    return PotentialField(PotentialKind.THOMAS_FERMI, model, sol)


def coulombic_field(model: AtomicModel, sol: TfSolution) -> PotentialField:
    return PotentialField(PotentialKind.COULOMBIC, model, sol)


def sqrt_difference(model: AtomicModel, sol: TfSolution, r):
    """sqrt(-2 V_TF) - sqrt(-2 V_C), computed without cancellation.

    With x = r/a, -2V_TF = (2Z/r) f and -2V_C = (2Z/r)(1 + B x), so the
    difference is sqrt(2Z/r) (f - 1 - B x) / (sqrt(f) + sqrt(1 + B x)).
    """
    r = _radii(r)
    x = r / model.a
    f, _ = eval_f(sol, x)
    q = 1.0 + sol.B * x
    if np.any(f <= 0.0) or np.any(q <= 0.0):
        raise ValueError("both potentials must be negative at every sample")
    rho, _ = eval_remainder(sol, x)
    return _out(np.sqrt(2.0 * model.Z / r) * rho / (np.sqrt(f) + np.sqrt(q)))


@dataclass(frozen=True, eq=False)
class OriginCancellation:
    radii: np.ndarray
    deviation: np.ndarray
    exponent: float
    max_scaled: float

    @property
    def scaled(self) -> np.ndarray:
        """deviation / sqrt(r); tends to a finite limit at the origin."""
        return self.deviation / np.sqrt(self.radii)


def origin_cancellation_check(model: AtomicModel, sol: TfSolution, r_samples) -> OriginCancellation:
    """Measure how the square-root bracket multiplying delta3(r) vanishes at r -> 0.

    Returns the deviations, their log-log slope against r and
    max |d(r) r**-1/2| over the samples.
    """
    r = np.asarray(r_samples, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise ValueError("need at least two radii")
    if np.any(np.diff(r) >= 0.0):
        raise ValueError("r_samples must be strictly decreasing toward 0")
    d = np.atleast_1d(sqrt_difference(model, sol, r))
    ad = np.abs(d)
    if np.all(ad > 0.0):
        exponent = float(np.polyfit(np.log(r), np.log(ad), 1)[0])
    else:
        exponent = math.inf
    return OriginCancellation(r, d, exponent, float(np.max(ad / np.sqrt(r))))
