"""Hydrogen-like quantum treatment of the Sun-Earth system.

Magnitudes span 1e-138 m to 1e182 J, so products are grouped to keep every
intermediate inside double range. Quantum numbers are real-valued; only the
explicit radial wavefunctions (n <= 6) require integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .constants import PhysicalConstants, default_constants
from .errors import OutOfRangeError, ValidationError

__all__ = [
    "TwoBodySystem",
    "GravAtomScales",
    "OrbitEnergy",
    "scales",
    "energy_level",
    "classical_orbit_energy",
    "matching_quantum_number",
    "radial_density",
    "radial_density_peak",
    "associated_laguerre",
    "small_n_radial_wavefunction",
]

MAX_WAVEFUNCTION_N = 6


@dataclass(frozen=True)
class TwoBodySystem:
    M1: float
    M2: float
    a: float
    v: float
    G: float
    hbar: float

    def __post_init__(self) -> None:
        for name in ("M1", "M2", "a", "v", "G", "hbar"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")

    @classmethod
    def solar(cls, constants: PhysicalConstants | None = None) -> "TwoBodySystem":
        c = constants or default_constants()
        return cls(M1=c.M_earth, M2=c.M_sun, a=c.AU, v=c.v_earth, G=c.G, hbar=c.hbar)

    def circular_consistency(self) -> float:
        """Relative deviation of v^2 from G*M2/a (not enforced)."""
        return self.v**2 / (self.G * self.M2 / self.a) - 1.0


class GravAtomScales(NamedTuple):
    alpha: float  # 1/m
    a_g: float  # m
    E1: float  # J
    epsilon_per_energy: float  # M1/hbar^2, so epsilon = E * this


class OrbitEnergy(NamedTuple):
    kinetic: float
    potential: float
    signed: float
    magnitude_sum: float


def _e1_magnitude(sys: TwoBodySystem) -> float:
    # (G M1 M2/hbar)^2 (M1/2): largest intermediate ~1e158
    k = sys.G * sys.M1 * sys.M2 / sys.hbar
    return k * k * (sys.M1 / 2.0)


def scales(sys: TwoBodySystem) -> GravAtomScales:
    alpha = (sys.G * sys.M1 / sys.hbar) * (sys.M1 * sys.M2 / sys.hbar)
    return GravAtomScales(alpha, 1.0 / alpha, -_e1_magnitude(sys), sys.M1 / sys.hbar**2)


def energy_level(sys: TwoBodySystem, n: float) -> float:
    if not n >= 1:
        raise ValidationError(f"quantum number must be >= 1, got {n}")
    return -_e1_magnitude(sys) / n / n


def classical_orbit_energy(sys: TwoBodySystem) -> OrbitEnergy:
    """Kinetic and potential energy of the circular orbit.

    Returns the signed total ``T + V`` and the magnitude sum ``|T| + |V|``.
    """
    t = 0.5 * sys.M1 * sys.v**2
    v = -sys.G * sys.M1 * sys.M2 / sys.a
    return OrbitEnergy(t, v, t + v, t - v)


def matching_quantum_number(sys: TwoBodySystem, e_target: float) -> float:
    if not e_target > 0:
        raise ValidationError("target energy magnitude must be positive")
    return math.sqrt(_e1_magnitude(sys) / e_target)


def radial_density(sys: TwoBodySystem, rho: float) -> float:
    """Ground-state radial probability density in units of the Bohr radius."""
    if rho < 0:
        raise ValidationError("rho must be non-negative")
    return 4.0 * rho * rho * math.exp(-2.0 * rho)


def radial_density_peak(sys: TwoBodySystem) -> float:
    return scales(sys).a_g


def associated_laguerre(k: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial L_k^(alpha)(x) by three-term recurrence."""
    if k < 0:
        raise ValidationError("degree must be non-negative")
    prev, cur = 1.0, 1.0 + alpha - x
    if k == 0:
        return prev
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def small_n_radial_wavefunction(sys: TwoBodySystem, n: int, l: int, rho: float) -> float:
    """Normalized radial function in Bohr-radius units.

    Returns ``a_g**1.5 * R_nl(rho * a_g)`` so that the integral of
    ``|R|^2 rho^2`` over rho is one; the SI value itself overflows
    (a_g**-1.5 squared exceeds double range).
    """
    if int(n) != n or int(l) != l:
        raise ValidationError("n and l must be integers")
    n, l = int(n), int(l)
    if n < 1 or n > MAX_WAVEFUNCTION_N:
        raise OutOfRangeError(f"n must lie in 1..{MAX_WAVEFUNCTION_N}, got {n}")
    if not 0 <= l < n:
        raise ValidationError(f"l must satisfy 0 <= l < n, got l={l}, n={n}")
    if rho < 0:
        raise ValidationError("rho must be non-negative")
    z = 2.0 * rho / n
    norm = math.sqrt((2.0 / n) ** 3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l)))
    return norm * math.exp(-z / 2.0) * z**l * associated_laguerre(n - l - 1, 2 * l + 1, z)
