"""WKB wavefunctions, Bohr-Sommerfeld levels and phase-space state counting.

Integrals of the classical momentum up to a turning point ``a`` use the
substitution ``x = a + u^2`` so the square-root endpoint behaviour becomes a
smooth integrand.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import DomainError, ValidationError
from .hilbert import _as_matrix, _require_hermitian, trace_norm

__all__ = [
    "PotentialKind",
    "Potential1D",
    "PhaseSpaceCell",
    "turning_points",
    "action_integral",
    "loop_action",
    "wkb_phase_difference",
    "wkb_wavefunction",
    "wkb_schrodinger_residual",
    "bohr_sommerfeld_levels",
    "cell_state_count",
    "quasi_projector_defect",
]

_QUAD_KW = dict(epsabs=0.0, epsrel=1e-13, limit=200)
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


class PotentialKind(enum.Enum):
    HARMONIC = "harmonic"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class Potential1D:
    """A one-dimensional confining potential.

    Build with :meth:`harmonic` or :meth:`tabulated`; calling the instance
    evaluates V(x) in joules.
    """

    kind: PotentialKind
    mass: float | None = None
    omega: float | None = None
    xs: np.ndarray | None = None
    vs: np.ndarray | None = None
    confining: bool = True
    _interp: PchipInterpolator | None = field(default=None, repr=False)

    @classmethod
    def harmonic(cls, m: float, omega: float) -> "Potential1D":
        if not (m > 0 and omega > 0):
            raise ValidationError("m and omega must be positive")
        return cls(PotentialKind.HARMONIC, mass=m, omega=omega)

    @classmethod
    def tabulated(cls, xs, vs, confining: bool = True, mass: float | None = None) -> "Potential1D":
        xs = np.asarray(xs, dtype=float)
        vs = np.asarray(vs, dtype=float)
        if xs.ndim != 1 or xs.shape != vs.shape or len(xs) < 4:
            raise ValidationError("need at least four matching (x, V) samples")
        if np.any(np.diff(xs) <= 0):
            raise ValidationError("sample positions must be strictly increasing")
        return cls(PotentialKind.CUSTOM, mass=mass, xs=xs, vs=vs, confining=confining,
                   _interp=PchipInterpolator(xs, vs, extrapolate=False))

    def __call__(self, x: float) -> float:
        if self.kind is PotentialKind.HARMONIC:
            return 0.5 * self.mass * self.omega**2 * x * x
        if not self.xs[0] <= x <= self.xs[-1]:
            raise DomainError(f"x={x:g} outside the tabulated window")
        return float(self._interp(x))

    @property
    def minimum(self) -> float:
        if self.kind is PotentialKind.HARMONIC:
            return 0.0
        return float(self.xs[int(np.argmin(self.vs))])

    def window(self) -> tuple[float, float]:
        if self.kind is PotentialKind.HARMONIC:
            return -math.inf, math.inf
        return float(self.xs[0]), float(self.xs[-1])


@dataclass(frozen=True)
class PhaseSpaceCell:
    mu: float
    n_dof: int = 1

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise ValidationError("cell volume must be positive")
        if int(self.n_dof) != self.n_dof or self.n_dof < 1:
            raise ValidationError("n_dof must be a positive integer")


class TurningPoints(NamedTuple):
    left: float
    right: float


def _mass(pot: Potential1D, m: float | None) -> float:
    m = pot.mass if m is None else m
    if m is None or not m > 0:
        raise ValidationError("a positive mass is required")
    return m


def _check_confining(pot: Potential1D, energy: float) -> None:
    if not pot.confining:
        raise ValidationError("potential is not marked confining")
    if pot.kind is PotentialKind.CUSTOM:
        lo, hi = pot.window()
        if not (pot(lo) > energy and pot(hi) > energy):
            raise ValidationError(f"potential does not confine E={energy:g} J within its window")


def _bracket_outward(pot: Potential1D, energy: float, x0: float, direction: float) -> float:
    lo, hi = pot.window()
    edge = hi if direction > 0 else lo
    if math.isfinite(edge):
        return edge
    step = 1e-30
    for _ in range(2100):
        x = x0 + direction * step
        if pot(x) > energy:
            return x
        step *= 2.0
    raise ValidationError("could not bracket a turning point")


def turning_points(pot: Potential1D, energy: float) -> TurningPoints:
    _check_confining(pot, energy)
    x0 = pot.minimum
    if not energy > pot(x0):
        raise DomainError("energy lies below the potential minimum")
    g = lambda x: pot(x) - energy  # noqa: E731
    right = brentq(g, x0, _bracket_outward(pot, energy, x0, 1.0), xtol=1e-300, rtol=8.9e-16, maxiter=500)
    left = brentq(g, _bracket_outward(pot, energy, x0, -1.0), x0, xtol=1e-300, rtol=8.9e-16, maxiter=500)
    return TurningPoints(left, right)


def _momentum(pot: Potential1D, energy: float, m: float, x: float) -> float:
    return math.sqrt(2.0 * m * max(energy - pot(x), 0.0))


def _knots(pot: Potential1D, lo: float, hi: float) -> np.ndarray:
    """Interpolation breakpoints strictly inside (lo, hi); empty for analytic potentials."""
    if pot.kind is PotentialKind.HARMONIC:
        return np.empty(0)
    return pot.xs[(pot.xs > lo) & (pot.xs < hi)]


def _integrate(f, lo: float, hi: float, points: np.ndarray) -> float:
    """Adaptive quadrature, split at ``points`` where the integrand has kinks."""
    edges = [lo, *points.tolist(), hi]
    return sum(quad(f, x0, x1, **_QUAD_KW)[0] for x0, x1 in zip(edges, edges[1:]))


def _from_turning_point(pot: Potential1D, energy: float, m: float, a: float, x: float, sign: float) -> float:
    """Integral of p between turning point ``a`` and ``x``, via ``x = a + sign u^2``."""
    lo, hi = (a, x) if sign > 0 else (x, a)
    knots = np.sqrt(np.abs(_knots(pot, lo, hi) - a))
    knots.sort()
    return _integrate(lambda u: _momentum(pot, energy, m, a + sign * u * u) * 2.0 * u, 0.0, math.sqrt(abs(x - a)), knots)


def action_integral(pot: Potential1D, energy: float, m: float | None = None) -> float:
    """Integral of p dx between the turning points."""
    m = _mass(pot, m)
    a, b = turning_points(pot, energy)
    mid = 0.5 * (a + b)
    return _from_turning_point(pot, energy, m, a, mid, 1.0) + _from_turning_point(pot, energy, m, b, mid, -1.0)


def loop_action(pot: Potential1D, energy: float, m: float | None = None) -> float:
    """Closed-orbit action (area enclosed in phase space)."""
    return 2.0 * action_integral(pot, energy, m)


def _short_action(pot: Potential1D, energy: float, m: float, x1: float, x2: float) -> float:
    half = 0.5 * (x2 - x1)
    mid = 0.5 * (x1 + x2)
    return half * sum(w * _momentum(pot, energy, m, mid + half * t) for t, w in zip(_GL_NODES, _GL_WEIGHTS))


def wkb_phase_difference(pot: Potential1D, energy: float, x1: float, x2: float, hbar: float,
                         m: float | None = None) -> float:
    m = _mass(pot, m)
    lo, hi = min(x1, x2), max(x1, x2)
    val = _integrate(lambda x: _momentum(pot, energy, m, x), lo, hi, _knots(pot, lo, hi))
    return math.copysign(val, x2 - x1) / hbar


def _check_allowed(pot: Potential1D, energy: float, x: float, margin: float) -> tuple[float, float]:
    a, b = turning_points(pot, energy)
    pad = margin * (b - a)
    if not (a + pad < x < b - pad):
        raise DomainError(f"x={x:g} is not inside the classically allowed region (with margin)")
    return a, b


def wkb_wavefunction(pot: Potential1D, energy: float, x: float, hbar: float,
                     m: float | None = None, margin: float = 0.05) -> complex:
    """First-order WKB solution ``p^(-1/2) exp(i sigma0 / hbar)``.

    ``sigma0`` is the action integral from the left turning point.
    """
    m = _mass(pot, m)
    a, _ = _check_allowed(pot, energy, x, margin)
    sigma0 = _from_turning_point(pot, energy, m, a, x, 1.0)
    p = _momentum(pot, energy, m, x)
    return p**-0.5 * complex(math.cos(sigma0 / hbar), math.sin(sigma0 / hbar))


def wkb_schrodinger_residual(pot: Potential1D, energy: float, x: float, hbar: float,
                             m: float | None = None, margin: float = 0.05, step: float | None = None) -> float:
    """Local energy error ``|(-hbar^2/2m psi'' + (V - E) psi) / psi|`` of the WKB solution.

    ``psi''`` comes from a five-point stencil with a step of 2% of the local
    reduced wavelength; neighbouring values are formed as ratios to
    ``psi(x)`` so the phase is never differenced at full magnitude.
    """
    m = _mass(pot, m)
    _check_allowed(pot, energy, x, margin)
    p0 = _momentum(pot, energy, m, x)
    h = step if step is not None else 0.02 * hbar / p0

    def ratio(k: int) -> complex:
        if k == 0:
            return 1.0 + 0j
        xk = x + k * h
        phase = _short_action(pot, energy, m, x, xk) / hbar
        amp = math.sqrt(p0 / _momentum(pot, energy, m, xk))
        return amp * complex(math.cos(phase), math.sin(phase))

    second = (-ratio(2) + 16 * ratio(1) - 30 + 16 * ratio(-1) - ratio(-2)) / (12.0 * h * h)
    return abs(-(hbar**2) / (2.0 * m) * second + (pot(x) - energy))


def bohr_sommerfeld_levels(pot: Potential1D, n_max: int, m: float | None = None,
                           hbar: float | None = None) -> list[float]:
    """Energies solving ``int_a^b p dx = (N - 1/2) h / 2`` for N = 1..n_max."""
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    if hbar is None:
        from .constants import default_constants

        hbar = default_constants().hbar
    m = _mass(pot, m)
    if not pot.confining:
        raise ValidationError("potential is not marked confining")
    v0 = pot(pot.minimum)
    h = 2.0 * math.pi * hbar

    levels = []
    for n in range(1, n_max + 1):
        target = (n - 0.5) * h / 2.0
        f = lambda e: action_integral(pot, e, m) - target  # noqa: E731
        lo_gap = hi_gap = levels[-1] - v0 if levels else hbar
        while f(v0 + hi_gap) < 0:
            lo_gap, hi_gap = hi_gap, hi_gap * 4.0
        while lo_gap > 0 and f(v0 + lo_gap) > 0:
            hi_gap, lo_gap = lo_gap, lo_gap / 4.0
        gap = brentq(lambda g: f(v0 + g), lo_gap, hi_gap, xtol=1e-300, rtol=4e-15, maxiter=500)
        levels.append(v0 + gap)
    return levels


def cell_state_count(cell: PhaseSpaceCell, h: float) -> float:
    return cell.mu / h**cell.n_dof


def quasi_projector_defect(f, n_expected: float) -> tuple[float, float]:
    """(|Tr F - N|, Tr|F - F^2|) for a Hermitian candidate quasi-projector."""
    a = _as_matrix(f)
    _require_hermitian(a)
    trace_gap = abs(float(np.trace(a).real) - n_expected)
    return trace_gap, trace_norm(a - a @ a)
