"""Two-qubit coincidence correlations for dichotomic measurements.

Basis ordering of the product space is ``(i, k) -> 2*i + k`` with ``i``
indexing the first subsystem (U) and ``k`` the second (V). Diagonal
coefficients are therefore ordered ``c11,11, c11,22, c22,11, c22,22``.

The closed-form correlation expressions (``*_delta_formula``) are valid for
the default lie-detector settings only; :func:`correlation_delta` is the
generic trace pipeline and accepts any dichotomic settings.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import ValidationError
from .hilbert import DensityOperator, commutator, hermitian_eigh, kron

__all__ = [
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "FamilyKind",
    "MeasurementSettings",
    "AntiDiagonalFamily",
    "BlockDiagonalFamily",
    "ProductFamily",
    "MaximizeResult",
    "coincidence_operator",
    "expectation",
    "correlation_delta",
    "build_antidiagonal",
    "build_blockdiagonal",
    "build_product",
    "antidiagonal_delta_formula",
    "blockdiagonal_delta_formula",
    "antidiagonal_bound",
    "blockdiagonal_bound",
    "separable_delta_formula",
    "maximize_delta",
    "commutator_det",
    "sample_outcomes",
    "random_antidiagonal",
    "random_blockdiagonal",
    "random_product",
]

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)

_DIAG_TOL = 1e-12
_BOUND_TOL = 1e-12


class FamilyKind(enum.Enum):
    ANTIDIAGONAL = _kernels.ANTIDIAGONAL
    BLOCKDIAGONAL = _kernels.BLOCKDIAGONAL
    PRODUCT = _kernels.PRODUCT


def _check_dichotomic(name: str, m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValidationError(f"setting {name} must be 2x2")
    if np.max(np.abs(a - a.conj().T)) > 1e-10:
        raise ValidationError(f"setting {name} is not Hermitian")
    if np.max(np.abs(a @ a - SIGMA0)) > 1e-10:
        raise ValidationError(f"setting {name} does not square to the identity")
    return a


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Four dichotomic observables; defaults are A=s3, B=-s3, A'=s1, B'=-s1."""

    A: np.ndarray = field(default_factory=lambda: SIGMA3.copy())
    B: np.ndarray = field(default_factory=lambda: -SIGMA3)
    Aprime: np.ndarray = field(default_factory=lambda: SIGMA1.copy())
    Bprime: np.ndarray = field(default_factory=lambda: -SIGMA1)

    def __post_init__(self) -> None:
        for name in ("A", "B", "Aprime", "Bprime"):
            object.__setattr__(self, name, _check_dichotomic(name, getattr(self, name)))

    def coincidence_stack(self) -> np.ndarray:
        """P(a,b), P(a,b'), P(a',b), P(a',b') as a (4, 4, 4) array."""
        return np.stack(
            [
                coincidence_operator(self.A, self.B),
                coincidence_operator(self.A, self.Bprime),
                coincidence_operator(self.Aprime, self.B),
                coincidence_operator(self.Aprime, self.Bprime),
            ]
        )


def _check_simplex(diag) -> tuple[float, float, float, float]:
    d = tuple(float(v) for v in diag)
    if len(d) != 4:
        raise ValidationError("four diagonal coefficients are required")
    if min(d) < -_DIAG_TOL or abs(sum(d) - 1.0) > _DIAG_TOL:
        raise ValidationError(f"diagonal coefficients must be non-negative and sum to 1, got {d}")
    return d


@dataclass(frozen=True)
class AntiDiagonalFamily:
    diag: tuple[float, float, float, float]
    x1: float = 0.0
    y1: float = 0.0
    x2: float = 0.0
    y2: float = 0.0

    def params(self) -> np.ndarray:
        return np.array([*self.diag, self.x1, self.y1, self.x2, self.y2])

    def bounds(self) -> tuple[float, float]:
        c = self.diag
        return c[0] * c[3], c[1] * c[2]


@dataclass(frozen=True)
class BlockDiagonalFamily:
    diag: tuple[float, float, float, float]
    x1: float = 0.0
    y1: float = 0.0
    x2: float = 0.0
    y2: float = 0.0

    def params(self) -> np.ndarray:
        return np.array([*self.diag, self.x1, self.y1, self.x2, self.y2])

    def bounds(self) -> tuple[float, float]:
        c = self.diag
        return c[0] * c[2], c[1] * c[3]


@dataclass(frozen=True, eq=False)
class ProductFamily:
    u: DensityOperator
    v: DensityOperator

    def __post_init__(self) -> None:
        for name in ("u", "v"):
            f = getattr(self, name)
            if not isinstance(f, DensityOperator):
                f = DensityOperator(f)
                object.__setattr__(self, name, f)
            if f.dim != 2:
                raise ValidationError(f"factor {name} must be 2x2")

    @classmethod
    def from_params(cls, u11: float, ux: float, uy: float, v11: float, vx: float, vy: float):
        u = np.array([[u11, ux + 1j * uy], [ux - 1j * uy, 1 - u11]])
        v = np.array([[v11, vx + 1j * vy], [vx - 1j * vy, 1 - v11]])
        return cls(DensityOperator(u), DensityOperator(v))

    def params(self) -> np.ndarray:
        u, v = self.u.matrix, self.v.matrix
        return np.array([u[0, 0].real, u[0, 1].real, u[0, 1].imag, v[0, 0].real, v[0, 1].real, v[0, 1].imag, 0, 0])


def coincidence_operator(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for name, m in (("A", a), ("B", b)):
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValidationError(f"{name} is not Hermitian")
    return kron(a, b)


def expectation(p, rho) -> float:
    """Re Tr(P rho); the imaginary part must vanish."""
    r = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    p = np.asarray(p, dtype=complex)
    if p.shape != r.shape:
        raise ValidationError(f"dimension mismatch: {p.shape} vs {r.shape}")
    val = np.trace(p @ r)
    if abs(val.imag) > 1e-12:
        raise ValidationError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def correlation_delta(rho, settings: MeasurementSettings | None = None) -> float:
    s = settings or MeasurementSettings()
    o = [expectation(p, rho) for p in s.coincidence_stack()]
    return abs(o[0] - o[1]) + abs(o[2] + o[3])


def _build_offdiag(fam, kind: FamilyKind, label: str) -> DensityOperator:
    _check_simplex(fam.diag)
    b1, b2 = fam.bounds()
    pairs = ("c11,11*c22,22", "c11,22*c22,11") if kind is FamilyKind.ANTIDIAGONAL else ("c11,11*c22,11", "c11,22*c22,22")
    for k, (x, y, b) in enumerate(((fam.x1, fam.y1, b1), (fam.x2, fam.y2, b2)), start=1):
        if x * x + y * y > b + _BOUND_TOL:
            raise ValidationError(
                f"{label} positivity violated: x{k}^2 + y{k}^2 = {x * x + y * y:.6g} exceeds {pairs[k - 1]} = {b:.6g}"
            )
    m = _kernels.assemble_family(kind.value, fam.params()[None, :])[0]
    return DensityOperator(m)


def build_antidiagonal(fam: AntiDiagonalFamily) -> DensityOperator:
    return _build_offdiag(fam, FamilyKind.ANTIDIAGONAL, "anti-diagonal")


def build_blockdiagonal(fam: BlockDiagonalFamily) -> DensityOperator:
    return _build_offdiag(fam, FamilyKind.BLOCKDIAGONAL, "block-diagonal")


def build_product(fam: ProductFamily) -> DensityOperator:
    return DensityOperator(kron(fam.u.matrix, fam.v.matrix))


def _diag_term(c) -> float:
    return abs(-c[0] + c[1] + c[2] - c[3])


def antidiagonal_delta_formula(fam: AntiDiagonalFamily) -> float:
    return _diag_term(fam.diag) + 2.0 * abs(-fam.x1 - fam.x2)


def blockdiagonal_delta_formula(fam: BlockDiagonalFamily) -> float:
    return _diag_term(fam.diag) + 2.0 * abs(fam.x2 - fam.x1)


def antidiagonal_bound(diag) -> float:
    c = _check_simplex(diag)
    return _diag_term(c) + 2.0 * (math.sqrt(max(c[0] * c[3], 0.0)) + math.sqrt(max(c[1] * c[2], 0.0)))


def blockdiagonal_bound(diag) -> float:
    c = _check_simplex(diag)
    return _diag_term(c) + 2.0 * (math.sqrt(max(c[0] * c[2], 0.0)) + math.sqrt(max(c[1] * c[3], 0.0)))


def separable_delta_formula(fam: ProductFamily) -> float:
    u, v = fam.u.matrix, fam.v.matrix
    first = (u[0, 0] - u[1, 1]) * (-v[0, 0] + v[0, 1] + v[1, 0] + v[1, 1])
    second = (u[0, 1] + u[1, 0]) * (-v[0, 0] - v[0, 1] - v[1, 0] + v[1, 1])
    return float(abs(first) + abs(second))


# --- numerical maximization -------------------------------------------------

GRID_STEPS = 40
COUPLING_LEVELS = (-1.0, -2.0 / 3.0, -1.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0)


class MaximizeResult(NamedTuple):
    delta_max: float
    witness: object
    evaluations: int


def _simplex_grid(steps: int) -> np.ndarray:
    pts = [
        (i, j, k, steps - i - j - k)
        for i in range(steps + 1)
        for j in range(steps + 1 - i)
        for k in range(steps + 1 - i - j)
    ]
    return np.array(pts, dtype=float) / steps


def _bound_pairs(kind: FamilyKind) -> tuple[tuple[int, int], tuple[int, int]]:
    return ((0, 3), (1, 2)) if kind is FamilyKind.ANTIDIAGONAL else ((0, 2), (1, 3))


def _to_params(kind: FamilyKind, z: np.ndarray) -> np.ndarray:
    """Map search coordinates to kernel parameters.

    Coupling coordinates ``t`` in [-1, 1] scale the positivity bound, so
    every point of the search space is a valid state (y parts held at 0).
    """
    z = np.atleast_2d(z)
    out = np.zeros((z.shape[0], 8))
    if kind is FamilyKind.PRODUCT:
        u11, tu, v11, tv = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
        out[:, 0] = u11
        out[:, 1] = tu * np.sqrt(np.clip(u11 * (1 - u11), 0, None))
        out[:, 3] = v11
        out[:, 4] = tv * np.sqrt(np.clip(v11 * (1 - v11), 0, None))
        return out
    (i1, j1), (i2, j2) = _bound_pairs(kind)
    out[:, :4] = z[:, :4]
    out[:, 4] = z[:, 4] * np.sqrt(np.clip(z[:, i1] * z[:, j1], 0, None))
    out[:, 6] = z[:, 5] * np.sqrt(np.clip(z[:, i2] * z[:, j2], 0, None))
    return out


def _grid(kind: FamilyKind) -> np.ndarray:
    levels = np.array(COUPLING_LEVELS)
    if kind is FamilyKind.PRODUCT:
        p = np.arange(GRID_STEPS + 1) / GRID_STEPS
        mesh = np.meshgrid(p, levels, p, levels, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)
    simplex = _simplex_grid(GRID_STEPS)
    t1, t2 = np.meshgrid(levels, levels, indexing="ij")
    t = np.stack([t1.ravel(), t2.ravel()], axis=1)
    return np.concatenate([np.repeat(simplex, len(t), axis=0), np.tile(t, (len(simplex), 1))], axis=1)


def _moves(kind: FamilyKind, z: np.ndarray, h: float) -> np.ndarray:
    cands = []
    if kind is FamilyKind.PRODUCT:
        for k in range(4):
            for sgn in (1.0, -1.0):
                c = z.copy()
                c[k] = np.clip(c[k] + sgn * h, 0.0 if k % 2 == 0 else -1.0, 1.0)
                cands.append(c)
    else:
        for i, j in itertools.permutations(range(4), 2):
            step = min(h, z[j])
            if step <= 0:
                continue
            c = z.copy()
            c[i] += step
            c[j] -= step
            cands.append(c)
        for k in (4, 5):
            for sgn in (1.0, -1.0):
                c = z.copy()
                c[k] = np.clip(c[k] + sgn * h, -1.0, 1.0)
                cands.append(c)
    return np.array(cands)


def _witness(kind: FamilyKind, z: np.ndarray):
    p = _to_params(kind, z)[0]
    if kind is FamilyKind.PRODUCT:
        return ProductFamily.from_params(p[0], p[1], p[2], p[3], p[4], p[5])
    diag = tuple(float(v) for v in p[:4] / p[:4].sum())
    cls = AntiDiagonalFamily if kind is FamilyKind.ANTIDIAGONAL else BlockDiagonalFamily
    return cls(diag, x1=float(p[4]), x2=float(p[6]))


def maximize_delta(
    family_kind: FamilyKind | str,
    settings: MeasurementSettings | None = None,
    budget: int = 100_000,
    tol: float = 1e-9,
    chunk: int = 65_536,
) -> MaximizeResult:
    """Largest correlation value over a family of valid states.

    A fixed grid (simplex step 1/40, couplings at the positivity boundary,
    the interior thirds and zero) is scanned exhaustively; the best point
    then seeds a compass search whose step halves on failure until it drops
    below ``tol`` or ``budget`` refinement evaluations are spent. Ties go
    to the first grid point, so the result is deterministic.
    """
    if isinstance(family_kind, str):
        family_kind = FamilyKind[family_kind.upper()]
    if budget < 10_000:
        raise ValidationError("budget must be at least 1e4 evaluations")
    s = settings or MeasurementSettings()
    pc = s.coincidence_stack()
    kind = family_kind.value

    grid = _grid(family_kind)
    best_val = -np.inf
    best_z = None
    for start in range(0, len(grid), chunk):
        block = grid[start:start + chunk]
        vals = _kernels.family_deltas(kind, _to_params(family_kind, block), pc)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_z = float(vals[i]), block[i].copy()
    evaluations = len(grid)

    used = 0
    h = 1.0 / GRID_STEPS
    while h >= tol and used < budget:
        cands = _moves(family_kind, best_z, h)
        cands = cands[: max(budget - used, 0)]
        if len(cands) == 0:
            break
        vals = _kernels.family_deltas(kind, _to_params(family_kind, cands), pc)
        used += len(cands)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_z = float(vals[i]), cands[i]
        else:
            h *= 0.5
    return MaximizeResult(best_val, _witness(family_kind, best_z), evaluations + used)


# --- settings geometry and sampling ----------------------------------------


def commutator_det(a, aprime) -> complex:
    c = commutator(a, aprime)
    if c.shape != (2, 2):
        raise ValidationError("commutator_det expects 2x2 operators")
    return complex(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])


def sample_outcomes(rho, a, b, runs: int, seed: int) -> float:
    """Monte Carlo mean of single-run products E(a; U) E(b; V)."""
    if runs < 1:
        raise ValidationError("runs must be at least 1")
    r = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    wa, va = hermitian_eigh(a)
    wb, vb = hermitian_eigh(b)
    values = []
    probs = []
    for i in range(2):
        pa = np.outer(va[:, i], va[:, i].conj())
        for j in range(2):
            pb = np.outer(vb[:, j], vb[:, j].conj())
            probs.append(np.trace(kron(pa, pb) @ r).real)
            values.append(wa[i] * wb[j])
    probs = np.array(probs)
    probs[probs < 1e-15] = 0.0
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(runs, probs)
    return float(np.dot(counts, values) / runs)


# --- random valid states (for property checks) ------------------------------


def _random_coupling(rng: np.random.Generator, bound: float) -> tuple[float, float]:
    radius = math.sqrt(max(bound, 0.0)) * math.sqrt(rng.random())
    phi = rng.uniform(0, 2 * math.pi)
    return radius * math.cos(phi), radius * math.sin(phi)


def random_antidiagonal(rng: np.random.Generator) -> AntiDiagonalFamily:
    diag = tuple(float(v) for v in rng.dirichlet(np.ones(4)))
    x1, y1 = _random_coupling(rng, diag[0] * diag[3])
    x2, y2 = _random_coupling(rng, diag[1] * diag[2])
    return AntiDiagonalFamily(diag, x1, y1, x2, y2)


def random_blockdiagonal(rng: np.random.Generator) -> BlockDiagonalFamily:
    diag = tuple(float(v) for v in rng.dirichlet(np.ones(4)))
    x1, y1 = _random_coupling(rng, diag[0] * diag[2])
    x2, y2 = _random_coupling(rng, diag[1] * diag[3])
    return BlockDiagonalFamily(diag, x1, y1, x2, y2)


def random_product(rng: np.random.Generator) -> ProductFamily:
    u11, v11 = rng.random(), rng.random()
    ux, uy = _random_coupling(rng, u11 * (1 - u11))
    vx, vy = _random_coupling(rng, v11 * (1 - v11))
    return ProductFamily.from_params(u11, ux, uy, v11, vx, vy)
