"""Decay of the solar stationary state under Jupiter's gravity.

Two treatments are provided: the exact solution for a constant
perturbation, and first-order perturbation theory for the ground-state
coefficient. Time evolution is carried in the dimensionless phase
``theta = energy * t / hbar``; seconds appear only at the interface
(``Hprime / hbar`` is about 1e63 1/s).
"""
from __future__ import annotations

import cmath
import enum
import math
import sys
from dataclasses import dataclass, field

from .constants import PhysicalConstants, default_constants
from .errors import ValidationError
from .gravatom import TwoBodySystem, energy_level

__all__ = [
    "SelectionRule",
    "DecayCase",
    "PerturbationSetup",
    "NO_DECAY",
    "survival_coefficient",
    "survival_coefficient_phase",
    "decay_time",
    "integrate_coefficient_ode",
    "transition_frequency",
    "perturbation_matrix_element",
    "perturbation_prefactor",
    "first_order_coefficient",
    "first_order_decay_time",
    "max_decay_time",
]

DEFAULT_N_INITIAL = 1e74


class SelectionRule(enum.Enum):
    DELTA_L_0 = "delta_l_0"
    DELTA_L_1 = "delta_l_1"


@dataclass(frozen=True)
class DecayCase:
    selection_rule: SelectionRule
    # <psi_1|r^2|psi_n> (m^2) or <psi_1|r|psi_n> (m); not computable, supplied by caller
    matrix_element: float = 1.0

    def __post_init__(self) -> None:
        if self.matrix_element < 0:
            raise ValidationError("matrix element is taken as a non-negative magnitude")


@dataclass(frozen=True)
class PerturbationSetup:
    sys: TwoBodySystem
    M3: float
    r_SJ: float
    n_initial: float = DEFAULT_N_INITIAL
    Hprime: float = field(init=False)

    def __post_init__(self) -> None:
        if not (self.M3 > 0 and self.r_SJ > 0):
            raise ValidationError("M3 and r_SJ must be positive")
        if not self.n_initial > 1:
            raise ValidationError("initial quantum number must exceed 1")
        object.__setattr__(self, "Hprime", self.sys.G * self.sys.M1 * self.M3 / self.r_SJ)

    @property
    def beta(self) -> float:
        return self.Hprime

    @property
    def hbar(self) -> float:
        return self.sys.hbar

    @classmethod
    def solar(cls, constants: PhysicalConstants | None = None, n_initial: float = DEFAULT_N_INITIAL):
        c = constants or default_constants()
        return cls(TwoBodySystem.solar(c), M3=c.M_jupiter, r_SJ=c.r_SJ, n_initial=n_initial)


class _NoDecay:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NO_DECAY"

    def __bool__(self) -> bool:
        return False


NO_DECAY = _NoDecay()


def survival_coefficient_phase(theta: float) -> complex:
    return cmath.exp(-1j * theta) - 1.0


def survival_coefficient(setup: PerturbationSetup, t: float) -> complex:
    if t < 0:
        raise ValidationError("t must be non-negative")
    return survival_coefficient_phase(setup.Hprime * t / setup.hbar)


def decay_time(setup: PerturbationSetup) -> float:
    return setup.hbar / setup.Hprime * math.acos(0.5)


def integrate_coefficient_ode(setup: PerturbationSetup, t: float, steps: int = 10_000) -> complex:
    """RK4 solution of ``dc/dtheta = -i (1 + c)``, ``c(0) = 0``."""
    if steps < 100:
        raise ValidationError("steps must be at least 100")
    theta = setup.Hprime * t / setup.hbar
    return _rk4_phase(theta, steps)


def _rk4_phase(theta: float, steps: int) -> complex:
    h = theta / steps
    c = 0j

    def rhs(y: complex) -> complex:
        return -1j * (1.0 + y)

    for _ in range(steps):
        k1 = rhs(c)
        k2 = rhs(c + 0.5 * h * k1)
        k3 = rhs(c + 0.5 * h * k2)
        k4 = rhs(c + h * k3)
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return c


def _energy_gap(setup: PerturbationSetup) -> float:
    """E_1 - E_n, formed as E_1 (1 - 1/n^2) to avoid cancellation."""
    n = setup.n_initial
    return energy_level(setup.sys, 1.0) * (1.0 - 1.0 / (n * n))


def transition_frequency(setup: PerturbationSetup) -> float:
    """omega_1n = (E_1 - E_n) / hbar (negative: the ground state lies lower)."""
    return _energy_gap(setup) / setup.hbar


def perturbation_matrix_element(setup: PerturbationSetup, case: DecayCase) -> float:
    """<psi_1|H'|psi_n> after the angular integration, in joules."""
    if case.selection_rule is SelectionRule.DELTA_L_0:
        return setup.beta / (2.0 * setup.r_SJ**2) * case.matrix_element
    return -setup.beta / setup.r_SJ * math.pi * case.matrix_element


def perturbation_prefactor(setup: PerturbationSetup, case: DecayCase) -> float:
    """f (1/m^2) for Delta l = 0, g (1/m) for |Delta l| = 1."""
    gap = _energy_gap(setup)
    if case.selection_rule is SelectionRule.DELTA_L_0:
        return -setup.beta / (2.0 * gap * setup.r_SJ**2)
    return math.pi * setup.beta / (gap * setup.r_SJ)


def first_order_coefficient(setup: PerturbationSetup, case: DecayCase, t: float) -> complex:
    amp = perturbation_prefactor(setup, case) * case.matrix_element
    return amp * (cmath.exp(1j * transition_frequency(setup) * t) - 1.0)


def first_order_decay_time(setup: PerturbationSetup, case: DecayCase):
    """Time at which |c_1|^2 first reaches one, or ``NO_DECAY``.

    ``|c_1|^2 = q^2 (2 - 2 cos(omega t))`` with ``q = prefactor * element``
    can reach one only if ``q^2 >= 1/4``.
    """
    q = abs(perturbation_prefactor(setup, case) * case.matrix_element)
    # q^2 >= 1/4 tested as q >= 1/2 (q^2 underflows for physical prefactors);
    # a few ulps of slack keep the boundary case from rounding away
    if q < 0.5 * (1.0 - 8.0 * sys.float_info.epsilon):
        return NO_DECAY
    # acos(1 - 1/(2 q^2)) written as 2 asin(1/(2q)), free of cancellation at large q
    return 2.0 * math.asin(min(0.5 / q, 1.0)) / abs(transition_frequency(setup))


def max_decay_time(setup: PerturbationSetup) -> float:
    return math.pi / abs(transition_frequency(setup))
