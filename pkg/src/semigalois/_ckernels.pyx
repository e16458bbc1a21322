# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tracking kernels; same algorithm and signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, pow, INFINITY, isfinite

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex cexp(double complex)

cnp.import_array()

OK = 0
STEP_UNDERFLOW = 1
AMBIGUOUS = 2
COLLISION = 3
NO_CONVERGENCE = 4

DEF MAX_STEPS = 2000000


cdef inline void _coeffs_at(double complex[:, :] C, double complex x, double complex[:] a) noexcept nogil:
    cdef Py_ssize_t n = C.shape[0], m = C.shape[1], i, k
    cdef double complex acc
    for i in range(n):
        acc = 0
        for k in range(m - 1, -1, -1):
            acc = acc * x + C[i, k]
        a[i] = acc


cdef inline void _dcoeffs_at(double complex[:, :] C, double complex x, double complex[:] da) noexcept nogil:
    cdef Py_ssize_t n = C.shape[0], m = C.shape[1], i, k
    cdef double complex acc
    for i in range(n):
        acc = 0
        for k in range(m - 1, 0, -1):
            acc = acc * x + k * C[i, k]
        da[i] = acc


cdef inline void _f_df(double complex[:] a, double complex z, double complex* f, double complex* df) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], k
    cdef double complex fv = 1, dv = 0
    for k in range(n - 1, -1, -1):
        dv = dv * z + fv
        fv = fv * z + a[k]
    f[0] = fv
    df[0] = dv


cdef double _max_scaled_residual(double complex[:] a, double complex[:] z) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], i, k
    cdef double complex f, df
    cdef double az, scale, p, r, worst = 0.0
    for i in range(z.shape[0]):
        _f_df(a, z[i], &f, &df)
        az = cabs(z[i])
        scale = pow(az, <double>n)
        p = 1.0
        for k in range(n):
            scale += cabs(a[k]) * p
            p *= az
        r = cabs(f) / scale if scale > 0 else cabs(f)
        if not isfinite(r):
            return INFINITY
        if r > worst:
            worst = r
    return worst


cdef bint _newton(double complex[:] a, double complex[:] w, int maxit) noexcept nogil:
    cdef Py_ssize_t i, nz = w.shape[0]
    cdef int it
    cdef double complex f, df, step
    cdef bint done
    for it in range(maxit):
        done = True
        # all roots updated from the same iterate count, like the numpy version
        for i in range(nz):
            _f_df(a, w[i], &f, &df)
            if df == 0:
                return False
            step = f / df
            w[i] = w[i] - step
            if cabs(step) > 1e-15 * (1.0 + cabs(w[i])):
                done = False
        if done:
            break
    return True


cdef int _gate(double complex[:] z, double complex[:] w, double collide) noexcept nogil:
    cdef Py_ssize_t n = z.shape[0], i, j
    cdef double minsep = INFINITY, d, own, second
    if n < 2:
        return 0
    for i in range(n):
        for j in range(i + 1, n):
            d = cabs(w[i] - w[j])
            if d < minsep:
                minsep = d
    if minsep < collide:
        return 3
    for i in range(n):
        own = cabs(z[i] - w[i])
        second = INFINITY
        for j in range(n):
            if j != i:
                d = cabs(z[i] - w[j])
                if d < second:
                    second = d
        if not (own < second / 3.0 and own < minsep / 2.0):
            return 2
    return 0


cdef inline double complex _point(int kind, double complex p0, double complex p1,
                                  double complex center, double radius,
                                  double theta0, double dtheta, double t) noexcept nogil:
    if kind == 0:
        return p0 + t * (p1 - p0)
    return center + radius * cexp(1j * (theta0 + t * dtheta))


def scaled_residuals(C, x, z):
    from ._pykernels import scaled_residuals as _sr
    return _sr(C, x, z)


def polish(C, x, double complex[:] z, double tol, int maxit):
    cdef double complex[:, :] Cv = np.ascontiguousarray(C, dtype=complex)
    cdef Py_ssize_t n = Cv.shape[0]
    cdef double complex[:] a = np.empty(n, dtype=complex)
    cdef double res
    cdef bint ok
    cdef Py_ssize_t i
    _coeffs_at(Cv, <double complex>x, a)
    ok = _newton(a, z, maxit)
    res = _max_scaled_residual(a, z) if z.shape[0] else 0.0
    if not ok or res > tol:
        return NO_CONVERGENCE, res
    return OK, res


def track_segment(C, int kind, double complex p0, double complex p1,
                  double complex center, double radius, double theta0, double dtheta,
                  double complex[:] z, double h0, double hmin, double tol,
                  double collide, int maxit):
    cdef double complex[:, :] Cv = np.ascontiguousarray(C, dtype=complex)
    cdef Py_ssize_t n = Cv.shape[0], nz = z.shape[0], i, k
    cdef double length
    if kind == 0:
        length = cabs(p1 - p0)
    else:
        length = fabs(radius * dtheta)
    if length == 0.0 or nz == 0:
        return OK, 0, 0
    cdef double hmax = min(h0 / length, 1.0)
    cdef double h = hmax, hmin_t = hmin / length, t = 0.0, t1
    cdef double complex x0, x1, dx, f, fz, fx
    cdef double complex[:] a0 = np.empty(n, dtype=complex)
    cdef double complex[:] a1 = np.empty(n, dtype=complex)
    cdef double complex[:] da = np.empty(n, dtype=complex)
    cdef double complex[:] zc = np.array(z, dtype=complex)
    cdef double complex[:] w = np.empty(nz, dtype=complex)
    cdef long accepted = 0, rejected = 0
    cdef int streak = 0, reason = 0
    cdef bint ok
    with nogil:
        x0 = _point(kind, p0, p1, center, radius, theta0, dtheta, 0.0)
        _dcoeffs_at(Cv, x0, da)
        while t < 1.0:
            if accepted + rejected > MAX_STEPS:
                reason = 1
                break
            if t + h > 1.0:
                h = 1.0 - t
            t1 = t + h
            x1 = _point(kind, p0, p1, center, radius, theta0, dtheta, t1)
            dx = x1 - x0
            _coeffs_at(Cv, x0, a0)
            for i in range(nz):
                _f_df(a0, zc[i], &f, &fz)
                fx = 0
                for k in range(n - 1, -1, -1):
                    fx = fx * zc[i] + da[k]
                w[i] = zc[i] - fx * dx / fz
            _coeffs_at(Cv, x1, a1)
            ok = _newton(a1, w, maxit)
            if not ok or _max_scaled_residual(a1, w) > tol:
                reason = 4
            else:
                reason = _gate(zc, w, collide)
            if reason == 0:
                for i in range(nz):
                    zc[i] = w[i]
                t = t1
                x0 = x1
                _dcoeffs_at(Cv, x0, da)
                accepted += 1
                streak += 1
                if streak >= 3:
                    h = min(2.0 * h, hmax)
                    streak = 0
            else:
                rejected += 1
                streak = 0
                h *= 0.5
                if h < hmin_t:
                    break
    for i in range(nz):
        z[i] = zc[i]
    if t < 1.0:
        return (reason if reason else STEP_UNDERFLOW), accepted, rejected
    return OK, accepted, rejected
