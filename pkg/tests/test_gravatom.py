import math

import pytest
from scipy import integrate, optimize

from qcaudit.constants import default_constants
from qcaudit.errors import OutOfRangeError, ValidationError
from qcaudit.gravatom import (
    TwoBodySystem,
    associated_laguerre,
    classical_orbit_energy,
    energy_level,
    matching_quantum_number,
    radial_density,
    radial_density_peak,
    scales,
    small_n_radial_wavefunction,
)

SOLAR = TwoBodySystem.solar()


def test_system_validation():
    with pytest.raises(ValidationError):
        TwoBodySystem(M1=-1, M2=1, a=1, v=1, G=1, hbar=1)
    assert abs(SOLAR.circular_consistency()) < 0.01


def test_scales():
    s = scales(SOLAR)
    c = default_constants()
    assert s.a_g == pytest.approx(c.hbar**2 / (c.G * c.M_earth**2 * c.M_sun), rel=1e-12)
    assert s.a_g * s.alpha == pytest.approx(1.0, rel=1e-12)
    assert s.E1 < 0


def test_ground_energy_matches_quoted_value():
    assert energy_level(SOLAR, 1) == pytest.approx(-1.70e182, rel=0.02)


def test_ground_energy_frozen():
    # (G M_E M_S / hbar)^2 M_E / 2 with the reference constants, by hand
    assert energy_level(SOLAR, 1) == pytest.approx(-1.68724e182, rel=1e-4)


def test_energy_scaling():
    e1 = energy_level(SOLAR, 1)
    assert energy_level(SOLAR, 2) == e1 / 4
    for n in (1, 10, 1e74):
        assert energy_level(SOLAR, n) * n * n == pytest.approx(e1, rel=1e-12)
    levels = [energy_level(SOLAR, n) for n in range(1, 30)]
    assert all(a < b < 0 for a, b in zip(levels, levels[1:]))


def test_energy_level_rejects_n():
    with pytest.raises(ValidationError):
        energy_level(SOLAR, 0.5)


def test_classical_orbit_energy():
    e = classical_orbit_energy(SOLAR)
    assert e.magnitude_sum == pytest.approx(7.96e33, rel=0.02)
    assert e.signed == pytest.approx(-2.65e33, rel=0.02)
    still = TwoBodySystem(M1=1.0, M2=1.0, a=1e300, v=1e-160, G=1.0, hbar=1.0)
    assert classical_orbit_energy(still).signed == pytest.approx(0.0, abs=1e-299)


def test_matching_quantum_number():
    n = matching_quantum_number(SOLAR, 7.96e33)
    assert 1e73 <= n <= 1e75
    assert n == pytest.approx(1.46e74, rel=0.01)
    e1 = abs(energy_level(SOLAR, 1))
    assert matching_quantum_number(SOLAR, e1) == pytest.approx(1.0, rel=1e-15)
    assert matching_quantum_number(SOLAR, e1 / 4) == pytest.approx(2.0, rel=1e-15)
    for n in (1.0, 3.0, 1e20, 1e74):
        assert matching_quantum_number(SOLAR, -energy_level(SOLAR, n)) == pytest.approx(n, rel=1e-12)
    with pytest.raises(ValidationError):
        matching_quantum_number(SOLAR, 0.0)


def test_radial_density_integrates_to_one():
    assert radial_density(SOLAR, 0.0) == 0.0
    val, _ = integrate.quad(lambda r: radial_density(SOLAR, r), 0, math.inf, epsabs=1e-14, epsrel=1e-13)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_radial_density_peak():
    assert radial_density_peak(SOLAR) == pytest.approx(2.34e-138, rel=0.02)
    doubled = TwoBodySystem(SOLAR.M1, 2 * SOLAR.M2, SOLAR.a, SOLAR.v, SOLAR.G, SOLAR.hbar)
    assert radial_density_peak(doubled) == pytest.approx(radial_density_peak(SOLAR) / 2, rel=1e-12)


def test_radial_density_peak_golden_section():
    res = optimize.minimize_scalar(
        lambda r: -radial_density(SOLAR, r), bracket=(0.1, 0.5, 5.0), method="golden", tol=1e-10
    )
    assert res.x * scales(SOLAR).a_g == pytest.approx(radial_density_peak(SOLAR), rel=1e-6)


def test_laguerre_closed_forms():
    x = 0.73
    assert associated_laguerre(0, 3, x) == 1.0
    assert associated_laguerre(1, 3, x) == pytest.approx(4 - x)
    assert associated_laguerre(2, 1, x) == pytest.approx(0.5 * (x * x - 6 * x + 6))
    from scipy.special import eval_genlaguerre

    for k in range(8):
        assert associated_laguerre(k, 2.0, 1.9) == pytest.approx(eval_genlaguerre(k, 2.0, 1.9), rel=1e-12)


def test_ground_wavefunction_density():
    for rho in (0.1, 1.0, 3.5):
        r = small_n_radial_wavefunction(SOLAR, 1, 0, rho)
        assert rho * rho * r * r == pytest.approx(radial_density(SOLAR, rho), rel=1e-12)


@pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (2, 1), (3, 2), (6, 5), (6, 0)])
def test_wavefunctions_normalised(n, l):
    val, _ = integrate.quad(lambda r: (small_n_radial_wavefunction(SOLAR, n, l, r) * r) ** 2, 0, math.inf)
    assert val == pytest.approx(1.0, abs=1e-9)


def test_orthogonality():
    val, _ = integrate.quad(
        lambda r: small_n_radial_wavefunction(SOLAR, 1, 0, r) * small_n_radial_wavefunction(SOLAR, 2, 0, r) * r * r,
        0,
        math.inf,
        epsabs=1e-13,
    )
    assert abs(val) <= 1e-8


@pytest.mark.parametrize("n,l", [(2, 1), (3, 0), (4, 2)])
def test_radial_equation_residual(n, l):
    h = 1e-3

    def rfun(r):
        return small_n_radial_wavefunction(SOLAR, n, l, r)

    for rho in (0.5, 1.3, 2.7, 6.0):
        d1 = (-rfun(rho + 2 * h) + 8 * rfun(rho + h) - 8 * rfun(rho - h) + rfun(rho - 2 * h)) / (12 * h)
        d2 = (-rfun(rho + 2 * h) + 16 * rfun(rho + h) - 30 * rfun(rho) + 16 * rfun(rho - h) - rfun(rho - 2 * h)) / (
            12 * h * h
        )
        r = rfun(rho)
        resid = -0.5 * (d2 + 2 * d1 / rho) + l * (l + 1) * r / (2 * rho * rho) - r / rho + r / (2 * n * n)
        assert abs(resid) <= 1e-6


def test_wavefunction_range_checks():
    with pytest.raises(OutOfRangeError):
        small_n_radial_wavefunction(SOLAR, 7, 0, 1.0)
    with pytest.raises(ValidationError):
        small_n_radial_wavefunction(SOLAR, 2, 2, 1.0)
    with pytest.raises(ValidationError):
        small_n_radial_wavefunction(SOLAR, 2, 0, -1.0)
