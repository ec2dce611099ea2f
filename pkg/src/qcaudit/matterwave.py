"""Grating-diffraction feasibility estimates for massive particles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .constants import PhysicalConstants, default_constants
from .errors import DomainError, ValidationError

__all__ = [
    "GratingSetup",
    "BeamParticle",
    "LightGrating",
    "de_broglie_wavelength",
    "first_maximum_offset",
    "required_grating_period",
    "light_grating_requirements",
    "kmh_to_ms",
]


def kmh_to_ms(speed_kmh: float) -> float:
    return speed_kmh / 3.6


@dataclass(frozen=True)
class GratingSetup:
    s: float  # grating period, m
    d: float  # grating-detector distance, m
    x1: float | None = None  # first-maximum offset, m

    def __post_init__(self) -> None:
        if not (self.s > 0 and self.d > 0) or (self.x1 is not None and not self.x1 > 0):
            raise ValidationError("grating dimensions must be positive")


@dataclass(frozen=True)
class BeamParticle:
    mass: float
    speed: float

    def __post_init__(self) -> None:
        if not (self.mass > 0 and self.speed > 0):
            raise ValidationError("mass and speed must be positive")


class LightGrating(NamedTuple):
    wavelength: float  # m
    photon_energy_ev: float
    temperature: float  # K


def de_broglie_wavelength(p: BeamParticle, constants: PhysicalConstants | None = None) -> float:
    c = constants or default_constants()
    return c.h / (p.mass * p.speed)


def first_maximum_offset(wavelength: float, g: GratingSetup) -> float:
    """Distance between central and first maximum, ``d tan(arcsin(lambda/s))``."""
    if wavelength < 0:
        raise ValidationError("wavelength must be non-negative")
    if wavelength >= g.s:
        raise DomainError(f"no first diffraction order: lambda={wavelength:g} m >= s={g.s:g} m")
    return g.d * math.tan(math.asin(wavelength / g.s))


def required_grating_period(wavelength: float, x1: float, d: float) -> float:
    if not (wavelength > 0 and x1 > 0 and d > 0):
        raise ValidationError("wavelength, x1 and d must be positive")
    return wavelength / math.sin(math.atan2(x1, d))


def light_grating_requirements(s: float, constants: PhysicalConstants | None = None) -> LightGrating:
    """Standing-light grating of period ``s``: wavelength 2s, photon energy, temperature."""
    if not s > 0:
        raise ValidationError("grating period must be positive")
    c = constants or default_constants()
    lam = 2.0 * s
    energy = c.h * c.c_light / lam
    return LightGrating(lam, energy / c.eV, energy / c.k_B)
