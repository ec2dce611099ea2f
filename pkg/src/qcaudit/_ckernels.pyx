# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np

cimport cython
from libc.math cimport fabs, hypot, sqrt

cdef enum:
    MAX_SWEEPS = 100


cdef inline double complex conj(double complex z) nogil:
    return z.real - 1j * z.imag


def jacobi_eigh(a_in):
    arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    # normalise so squared magnitudes cannot underflow or overflow
    cdef double scale = float(np.abs(arr).max()) if arr.size else 0.0
    if scale == 0.0:
        scale = 1.0
    arr /= scale
    cdef double complex[:, ::1] a = arr
    cdef Py_ssize_t n = a.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k, sweep
    cdef double off, total, r, app, aqq, theta, t, c, s
    cdef double complex apq, e, ce, jqp, jqq, akp, akq, apk, aqk, z

    with nogil:
        for sweep in range(MAX_SWEEPS):
            off = 0.0
            total = 0.0
            for p in range(n):
                total += a[p, p].real * a[p, p].real
                for q in range(p + 1, n):
                    z = a[p, q]
                    off += z.real * z.real + z.imag * z.imag
            total += 2.0 * off
            if off == 0.0 or off <= 1e-34 * total:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r = hypot(apq.real, apq.imag)
                    if r == 0.0:
                        continue
                    e = apq / r
                    ce = conj(e)
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * r)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    jqp = -s * ce
                    jqq = c * ce
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = akp * c + akq * jqp
                        a[k, q] = akp * s + akq * jqq
                    for k in range(n):
                        apk = a[p, k]
                        aqk = a[q, k]
                        a[p, k] = c * apk - s * e * aqk
                        a[q, k] = s * apk + c * e * aqk
                    for k in range(n):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = akp * c + akq * jqp
                        v[k, q] = akp * s + akq * jqq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real

    w = np.array([a[k, k].real * scale for k in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], v_arr[:, order]


def family_deltas(int kind, params_in, coincidence_in):
    cdef double[:, ::1] params = np.ascontiguousarray(params_in, dtype=np.float64)
    cdef double complex[:, :, ::1] pc = np.ascontiguousarray(coincidence_in, dtype=np.complex128)
    cdef Py_ssize_t n = params.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double complex rho[4][4]
    cdef double complex u[2][2]
    cdef double complex w[2][2]
    cdef double o[4]
    cdef double complex z1, z2, acc
    cdef Py_ssize_t row, i, j, k, l
    if kind not in (0, 1, 2):
        raise ValueError(f"unknown family kind {kind}")

    with nogil:
        for row in range(n):
            for i in range(4):
                for j in range(4):
                    rho[i][j] = 0.0
            if kind == 2:
                u[0][0] = params[row, 0]
                u[1][1] = 1.0 - params[row, 0]
                u[0][1] = params[row, 1] + 1j * params[row, 2]
                u[1][0] = params[row, 1] - 1j * params[row, 2]
                w[0][0] = params[row, 3]
                w[1][1] = 1.0 - params[row, 3]
                w[0][1] = params[row, 4] + 1j * params[row, 5]
                w[1][0] = params[row, 4] - 1j * params[row, 5]
                for i in range(2):
                    for j in range(2):
                        for k in range(2):
                            for l in range(2):
                                rho[2 * i + k][2 * j + l] = u[i][j] * w[k][l]
            else:
                for i in range(4):
                    rho[i][i] = params[row, i]
                z1 = params[row, 4] + 1j * params[row, 5]
                z2 = params[row, 6] + 1j * params[row, 7]
                if kind == 0:
                    rho[0][3] = z1
                    rho[3][0] = conj(z1)
                    rho[1][2] = z2
                    rho[2][1] = conj(z2)
                else:
                    rho[0][2] = z1
                    rho[2][0] = conj(z1)
                    rho[1][3] = z2
                    rho[3][1] = conj(z2)
            for k in range(4):
                acc = 0.0
                for i in range(4):
                    for j in range(4):
                        acc = acc + pc[k, i, j] * rho[j][i]
                o[k] = acc.real
            out[row] = fabs(o[0] - o[1]) + fabs(o[2] + o[3])
    return out_arr
