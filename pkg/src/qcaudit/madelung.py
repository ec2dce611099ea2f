"""Coherent state of the linear oscillator and its Madelung decomposition.

The quantum potential uses the Bohm sign convention
``Q = -(hbar^2 / 2m) R''/R``. For the Gaussian amplitude this gives

    Q(x, t) = hbar*omega/2 - (m*omega^2/2) * (x - <x(t)>)^2

and makes ``dS/dt + (dS/dx)^2/2m + V + Q = 0`` hold identically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError

__all__ = [
    "CoherentStateParams",
    "MadelungFields",
    "classical_trajectory",
    "coherent_wavefunction",
    "madelung_fields",
    "potential",
    "schrodinger_residual",
    "continuity_residual",
    "quantum_hj_residual",
    "classical_limit_gap",
]


@dataclass(frozen=True)
class CoherentStateParams:
    m: float
    omega: float
    x0: float
    p0: float
    hbar: float

    def __post_init__(self) -> None:
        if not (self.m > 0 and self.omega > 0 and self.hbar > 0):
            raise ValidationError("m, omega and hbar must be positive")

    @property
    def width(self) -> float:
        """Standard spatial width sqrt(hbar / (m omega))."""
        return math.sqrt(self.hbar / (self.m * self.omega))

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


class MadelungFields(NamedTuple):
    R: float
    S: float
    Q: float


def classical_trajectory(p: CoherentStateParams, t: float) -> tuple[float, float]:
    wt = p.omega * t
    c, s = math.cos(wt), math.sin(wt)
    mw = p.m * p.omega
    return p.x0 * c + (p.p0 / mw) * s, p.p0 * c - mw * p.x0 * s


def potential(p: CoherentStateParams, x: float) -> float:
    return 0.5 * p.m * p.omega**2 * x * x


def _amplitude(p: CoherentStateParams, x: float, xm: float) -> float:
    norm = (p.m * p.omega / (math.pi * p.hbar)) ** 0.25
    return norm * math.exp(-p.m * p.omega / (2.0 * p.hbar) * (x - xm) ** 2)


def _phase_action(p: CoherentStateParams, x: float, t: float, xm: float, pm: float) -> float:
    return pm * x - 0.5 * p.hbar * p.omega * t - 0.5 * xm * pm


def coherent_wavefunction(p: CoherentStateParams, x: float, t: float) -> complex:
    xm, pm = classical_trajectory(p, t)
    amp = _amplitude(p, x, xm)
    return amp * complex(np.exp(1j * _phase_action(p, x, t, xm, pm) / p.hbar))


def madelung_fields(p: CoherentStateParams, x: float, t: float) -> MadelungFields:
    xm, pm = classical_trajectory(p, t)
    q = 0.5 * p.hbar * p.omega - 0.5 * p.m * p.omega**2 * (x - xm) ** 2
    return MadelungFields(_amplitude(p, x, xm), _phase_action(p, x, t, xm, pm), q)


def schrodinger_residual(p: CoherentStateParams, x: float, t: float, dx: float, dt: float) -> float:
    """|i hbar psi_t + hbar^2/2m psi_xx - V psi| with fourth-order differences."""
    f = lambda xx, tt: coherent_wavefunction(p, xx, tt)  # noqa: E731
    psi_t = (-f(x, t + 2 * dt) + 8 * f(x, t + dt) - 8 * f(x, t - dt) + f(x, t - 2 * dt)) / (12 * dt)
    psi_xx = (
        -f(x + 2 * dx, t) + 16 * f(x + dx, t) - 30 * f(x, t) + 16 * f(x - dx, t) - f(x - 2 * dx, t)
    ) / (12 * dx * dx)
    lhs = 1j * p.hbar * psi_t
    rhs = -(p.hbar**2) / (2 * p.m) * psi_xx + potential(p, x) * f(x, t)
    return abs(lhs - rhs)


def continuity_residual(p: CoherentStateParams, x: float, t: float, dx: float, dt: float) -> float:
    """|d(R^2)/dt + (1/m) d/dx (R^2 dS/dx)| by central differences.

    The exact value is zero for the coherent state, so the result measures
    discretization error only (second order in ``dx`` and ``dt``).
    """
    if dx <= 0 or dt <= 0:
        raise ValidationError("dx and dt must be positive")

    def density(xx: float, tt: float) -> float:
        return madelung_fields(p, xx, tt).R ** 2

    def flux(xx: float, tt: float) -> float:
        ds = (madelung_fields(p, xx + dx, tt).S - madelung_fields(p, xx - dx, tt).S) / (2 * dx)
        return density(xx, tt) * ds

    d_rho = (density(x, t + dt) - density(x, t - dt)) / (2 * dt)
    d_flux = (flux(x + dx, t) - flux(x - dx, t)) / (2 * dx)
    return abs(d_rho + d_flux / p.m)


def quantum_hj_residual(p: CoherentStateParams, x: float, t: float, include_q: bool = True) -> float:
    """|dS/dt + (dS/dx)^2/2m + V + Q| with analytic derivatives.

    ``include_q=False`` drops the quantum potential, leaving |Q| as the gap.
    """
    xm, pm = classical_trajectory(p, t)
    xm_dot = pm / p.m
    pm_dot = -p.m * p.omega**2 * xm
    s_t = pm_dot * x - 0.5 * p.hbar * p.omega - 0.5 * (xm_dot * pm + xm * pm_dot)
    s_x = pm
    total = s_t + s_x * s_x / (2 * p.m) + potential(p, x)
    if include_q:
        total += madelung_fields(p, x, t).Q
    return abs(total)


def classical_limit_gap(p: CoherentStateParams, x: float, t: float) -> float:
    """|Q - Q0| where Q0 = -(m omega^2/2)(x - <x>)^2 is the hbar-free part."""
    xm, _ = classical_trajectory(p, t)
    q0 = -0.5 * p.m * p.omega**2 * (x - xm) ** 2
    return abs(madelung_fields(p, x, t).Q - q0)
