import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcaudit.epr import (
    SIGMA0,
    SIGMA1,
    SIGMA3,
    AntiDiagonalFamily,
    BlockDiagonalFamily,
    FamilyKind,
    MeasurementSettings,
    ProductFamily,
    antidiagonal_bound,
    antidiagonal_delta_formula,
    blockdiagonal_bound,
    blockdiagonal_delta_formula,
    build_antidiagonal,
    build_blockdiagonal,
    build_product,
    coincidence_operator,
    commutator_det,
    correlation_delta,
    expectation,
    maximize_delta,
    random_antidiagonal,
    random_blockdiagonal,
    random_product,
    sample_outcomes,
    separable_delta_formula,
)
from qcaudit.errors import ValidationError

BELL = AntiDiagonalFamily((0.5, 0.0, 0.0, 0.5), x1=0.5)
MIXED = np.eye(4) / 4
SIGMA2 = np.array([[0, -1j], [1j, 0]])


def rotated(theta):
    return math.cos(theta) * SIGMA3 + math.sin(theta) * SIGMA1


def test_settings_validation():
    with pytest.raises(ValidationError):
        MeasurementSettings(A=np.diag([1.0, 0.5]))
    with pytest.raises(ValidationError):
        MeasurementSettings(B=np.array([[0, 1], [0, 0]]))
    MeasurementSettings(A=rotated(0.3), B=-SIGMA0)


def test_coincidence_examples():
    np.testing.assert_array_equal(coincidence_operator(SIGMA3, -SIGMA3), np.diag([-1, 1, 1, -1]))
    np.testing.assert_array_equal(coincidence_operator(SIGMA0, SIGMA0), np.eye(4))
    np.testing.assert_array_equal(coincidence_operator(SIGMA1, -SIGMA1), -np.fliplr(np.eye(4)))


def test_expectation_examples():
    assert expectation(coincidence_operator(SIGMA3, SIGMA1), MIXED) == 0
    bell = build_antidiagonal(BELL)
    assert expectation(coincidence_operator(SIGMA3, -SIGMA3), bell) == pytest.approx(-1.0)
    assert expectation(coincidence_operator(SIGMA3, -SIGMA1), bell) == pytest.approx(0.0)
    with pytest.raises(ValidationError):
        expectation(np.eye(2), MIXED)


def test_correlation_examples():
    assert correlation_delta(MIXED) == 0
    assert correlation_delta(build_antidiagonal(BELL)) == pytest.approx(2.0)
    prod = ProductFamily(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))
    assert correlation_delta(build_product(prod)) == pytest.approx(1.0)


def test_build_antidiagonal():
    np.testing.assert_allclose(build_antidiagonal(BELL).eigenvalues(), [0, 0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(build_antidiagonal(AntiDiagonalFamily((0.25,) * 4)).matrix, MIXED)
    with pytest.raises(ValidationError, match="x1"):
        build_antidiagonal(AntiDiagonalFamily((0.5, 0.0, 0.0, 0.5), x1=0.6))
    with pytest.raises(ValidationError):
        build_antidiagonal(AntiDiagonalFamily((0.5, 0.6, 0.0, -0.1)))


def test_build_blockdiagonal():
    diag = BlockDiagonalFamily((0.1, 0.2, 0.3, 0.4))
    np.testing.assert_allclose(build_blockdiagonal(diag).matrix, np.diag([0.1, 0.2, 0.3, 0.4]))
    pure = BlockDiagonalFamily((0.5, 0.0, 0.5, 0.0), x1=0.5)
    np.testing.assert_allclose(build_blockdiagonal(pure).eigenvalues(), [0, 0, 0, 1], atol=1e-15)
    with pytest.raises(ValidationError, match="x2"):
        build_blockdiagonal(BlockDiagonalFamily((0.25,) * 4, x2=0.3))


def test_build_product(rng):
    np.testing.assert_allclose(build_product(ProductFamily(SIGMA0 / 2, SIGMA0 / 2)).matrix, MIXED)
    np.testing.assert_allclose(
        build_product(ProductFamily(np.diag([1.0, 0]), np.diag([0, 1.0]))).matrix, np.diag([0, 1.0, 0, 0])
    )
    fam = random_product(rng)
    eu, ev = fam.u.eigenvalues(), fam.v.eigenvalues()
    np.testing.assert_allclose(build_product(fam).eigenvalues(), np.sort(np.outer(eu, ev).ravel()), atol=1e-12)


def test_closed_form_examples():
    assert antidiagonal_delta_formula(BELL) == pytest.approx(2.0)
    assert antidiagonal_delta_formula(AntiDiagonalFamily((0.25,) * 4)) == 0
    assert antidiagonal_bound((0.5, 0, 0, 0.5)) == pytest.approx(2.0)
    assert antidiagonal_bound((0.25,) * 4) == pytest.approx(1.0)
    assert separable_delta_formula(ProductFamily(SIGMA0 / 2, SIGMA0 / 2)) == 0
    r = 1 / math.sqrt(2)
    u = 0.5 * (SIGMA0 + r * SIGMA3 + r * SIGMA1)
    assert separable_delta_formula(ProductFamily(u, np.diag([1.0, 0.0]))) == pytest.approx(math.sqrt(2))


def test_oracle_equivalence(rng):
    worst = 0.0
    for _ in range(1000):
        a = random_antidiagonal(rng)
        worst = max(worst, abs(antidiagonal_delta_formula(a) - correlation_delta(build_antidiagonal(a))))
        b = random_blockdiagonal(rng)
        worst = max(worst, abs(blockdiagonal_delta_formula(b) - correlation_delta(build_blockdiagonal(b))))
        p = random_product(rng)
        worst = max(worst, abs(separable_delta_formula(p) - correlation_delta(build_product(p))))
    assert worst <= 1e-10


def test_no_sample_exceeds_bound(rng):
    for _ in range(10_000):
        a = random_antidiagonal(rng)
        assert antidiagonal_delta_formula(a) <= antidiagonal_bound(a.diag) + 1e-12
        assert antidiagonal_bound(a.diag) <= 2.0 + 1e-12
        b = random_blockdiagonal(rng)
        assert blockdiagonal_delta_formula(b) <= blockdiagonal_bound(b.diag) + 1e-12
        assert separable_delta_formula(random_product(rng)) <= math.sqrt(2) + 1e-9


def test_blockdiagonal_bound_never_exceeds_sqrt2(rng):
    # analytic: |1 - 2s| + 2 sqrt(s (1 - s)) <= sqrt(2) for the best split
    for _ in range(2000):
        diag = rng.dirichlet(np.ones(4))
        assert blockdiagonal_bound(diag) <= math.sqrt(2) + 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), y1=st.floats(-1, 1), y2=st.floats(-1, 1))
def test_delta_independent_of_y(seed, y1, y2):
    rng = np.random.default_rng(seed)
    fam = random_antidiagonal(rng)
    b1, b2 = fam.bounds()
    x1, x2 = fam.x1 * 0.5, fam.x2 * 0.5
    yy1 = y1 * math.sqrt(max(b1 - x1 * x1, 0.0))
    yy2 = y2 * math.sqrt(max(b2 - x2 * x2, 0.0))
    base = AntiDiagonalFamily(fam.diag, x1, 0.0, x2, 0.0)
    moved = AntiDiagonalFamily(fam.diag, x1, yy1, x2, yy2)
    assert correlation_delta(build_antidiagonal(moved)) == pytest.approx(
        correlation_delta(build_antidiagonal(base)), abs=1e-12
    )


def test_maximize_antidiagonal():
    res = maximize_delta(FamilyKind.ANTIDIAGONAL)
    assert res.delta_max == pytest.approx(2.0, abs=1e-3)
    witness = build_antidiagonal(res.witness)
    assert correlation_delta(witness) == pytest.approx(res.delta_max, abs=1e-9)
    np.testing.assert_allclose(witness.eigenvalues(), [0, 0, 0, 1], atol=1e-6)


def test_maximize_product():
    res = maximize_delta("product")
    assert res.delta_max == pytest.approx(math.sqrt(2), abs=1e-3)
    assert correlation_delta(build_product(res.witness)) == pytest.approx(res.delta_max, abs=1e-9)


def test_maximize_blockdiagonal():
    res = maximize_delta(FamilyKind.BLOCKDIAGONAL)
    assert 1.40 <= res.delta_max <= 1.42
    assert res.delta_max == pytest.approx(math.sqrt(2), abs=1e-6)


def test_maximize_is_deterministic_and_budgeted():
    a = maximize_delta(FamilyKind.PRODUCT, budget=10_000)
    b = maximize_delta(FamilyKind.PRODUCT, budget=10_000)
    assert a.delta_max == b.delta_max
    with pytest.raises(ValidationError):
        maximize_delta(FamilyKind.PRODUCT, budget=100)


def test_optimizer_dominates_samples(rng):
    best = maximize_delta(FamilyKind.ANTIDIAGONAL).delta_max
    for _ in range(100):
        assert correlation_delta(build_antidiagonal(random_antidiagonal(rng))) <= best + 1e-12


def test_commutator_det():
    assert abs(commutator_det(SIGMA3, SIGMA1)) == pytest.approx(4.0)
    assert commutator_det(SIGMA3, SIGMA3) == 0
    thetas = np.linspace(0, math.pi, 181)
    dets = [abs(commutator_det(SIGMA3, rotated(t))) for t in thetas]
    for t, d in zip(thetas, dets):
        assert d == pytest.approx(4 * math.sin(t) ** 2, abs=1e-12)
    assert thetas[int(np.argmax(dets))] == pytest.approx(math.pi / 2)
    # oracle: [s3, s1] = 2i s2
    np.testing.assert_allclose(SIGMA3 @ SIGMA1 - SIGMA1 @ SIGMA3, 2j * SIGMA2)


def test_sampling_examples():
    runs = 100_000
    assert abs(sample_outcomes(MIXED, SIGMA3, SIGMA1, runs, seed=1)) <= 3 / math.sqrt(runs)
    assert sample_outcomes(build_antidiagonal(BELL), SIGMA3, -SIGMA3, runs, seed=2) == -1.0
    with pytest.raises(ValidationError):
        sample_outcomes(MIXED, SIGMA3, SIGMA3, 0, seed=0)


def test_sampling_within_three_sigma(rng):
    runs = 100_000
    builders = [
        lambda: build_antidiagonal(random_antidiagonal(rng)),
        lambda: build_blockdiagonal(random_blockdiagonal(rng)),
        lambda: build_product(random_product(rng)),
    ]
    for k in range(20):
        rho = builders[k % 3]()
        a, b = rotated(rng.uniform(0, 2 * math.pi)), rotated(rng.uniform(0, 2 * math.pi))
        exact = expectation(coincidence_operator(a, b), rho)
        sigma = math.sqrt(max(1 - exact * exact, 0.0) / runs)
        got = sample_outcomes(rho, a, b, runs, seed=k)
        assert abs(got - exact) <= 3 * sigma + 1e-12


def test_sampling_is_seeded():
    rho = build_antidiagonal(AntiDiagonalFamily((0.25,) * 4, x1=0.2))
    assert sample_outcomes(rho, SIGMA1, SIGMA3, 1000, seed=5) == sample_outcomes(rho, SIGMA1, SIGMA3, 1000, seed=5)
