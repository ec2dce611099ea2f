"""Pure-Python implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them line for
line. Keep the two in sync.
"""
from __future__ import annotations

import math

import numpy as np

ANTIDIAGONAL = 0
BLOCKDIAGONAL = 1
PRODUCT = 2

_MAX_SWEEPS = 100


def jacobi_eigh(a):
    """Eigen-decomposition of a complex Hermitian matrix by cyclic Jacobi.

    Each pivot ``a[p, q] = r e^{i phi}`` is first made real by a diagonal
    phase, then annihilated by a real plane rotation. Returns ascending
    eigenvalues and the unitary whose columns are the eigenvectors.
    """
    arr = np.asarray(a, dtype=complex)
    # normalise so squared magnitudes cannot underflow or overflow
    scale = float(np.abs(arr).max()) if arr.size else 0.0
    if scale == 0.0:
        scale = 1.0
    a = [[complex(v) / scale for v in row] for row in arr]
    n = len(a)
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    for _ in range(_MAX_SWEEPS):
        off = 0.0
        total = 0.0
        for p in range(n):
            total += a[p][p].real ** 2
            for q in range(p + 1, n):
                z = a[p][q]
                off += z.real * z.real + z.imag * z.imag
        total += 2.0 * off
        if off == 0.0 or off <= 1e-34 * total:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = math.hypot(apq.real, apq.imag)
                if r == 0.0:
                    continue
                e = apq / r
                ce = e.conjugate()
                app = a[p][p].real
                aqq = a[q][q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # J = diag-phase * rotation:
                # J_pp = c, J_pq = s, J_qp = -s*conj(e), J_qq = c*conj(e)
                jqp = -s * ce
                jqq = c * ce
                for k in range(n):
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = akp * c + akq * jqp
                    a[k][q] = akp * s + akq * jqq
                for k in range(n):
                    apk = a[p][k]
                    aqk = a[q][k]
                    a[p][k] = c * apk - s * e * aqk
                    a[q][k] = s * apk + c * e * aqk
                for k in range(n):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = vkp * c + vkq * jqp
                    v[k][q] = vkp * s + vkq * jqq
                a[p][q] = 0j
                a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)

    w = np.array([a[i][i].real * scale for i in range(n)])
    vec = np.array(v, dtype=complex)
    order = np.argsort(w, kind="stable")
    return w[order], vec[:, order]


def assemble_family(kind, params):
    """Build the 4x4 density matrices for a batch of family parameters."""
    params = np.asarray(params, dtype=float)
    m = np.zeros((params.shape[0], 4, 4), dtype=complex)
    if kind == PRODUCT:
        u11, ux, uy, v11, vx, vy = (params[:, i] for i in range(6))
        u = np.zeros((params.shape[0], 2, 2), dtype=complex)
        w = np.zeros_like(u)
        u[:, 0, 0], u[:, 1, 1] = u11, 1.0 - u11
        u[:, 0, 1], u[:, 1, 0] = ux + 1j * uy, ux - 1j * uy
        w[:, 0, 0], w[:, 1, 1] = v11, 1.0 - v11
        w[:, 0, 1], w[:, 1, 0] = vx + 1j * vy, vx - 1j * vy
        return np.einsum("nij,nkl->nikjl", u, w).reshape(-1, 4, 4)
    for i in range(4):
        m[:, i, i] = params[:, i]
    z1 = params[:, 4] + 1j * params[:, 5]
    z2 = params[:, 6] + 1j * params[:, 7]
    if kind == ANTIDIAGONAL:
        m[:, 0, 3], m[:, 3, 0] = z1, z1.conj()
        m[:, 1, 2], m[:, 2, 1] = z2, z2.conj()
    elif kind == BLOCKDIAGONAL:
        m[:, 0, 2], m[:, 2, 0] = z1, z1.conj()
        m[:, 1, 3], m[:, 3, 1] = z2, z2.conj()
    else:
        raise ValueError(f"unknown family kind {kind}")
    return m


def family_deltas(kind, params, coincidence):
    """Correlation function for each parameter row.

    ``coincidence`` stacks the four operators P(a,b), P(a,b'), P(a',b),
    P(a',b') as a (4, 4, 4) array.
    """
    rho = assemble_family(kind, params)
    # Tr(P rho) = sum_ij P_ij rho_ji
    o = np.einsum("kij,nji->nk", np.asarray(coincidence, dtype=complex), rho).real
    return np.abs(o[:, 0] - o[:, 1]) + np.abs(o[:, 2] + o[:, 3])
