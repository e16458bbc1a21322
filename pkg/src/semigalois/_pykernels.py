"""Pure-Python tracking kernels (fallback for the compiled ``_ckernels``).

Both modules implement the same algorithm with the same signatures so that
they produce the same root continuations; ``kernels.py`` picks one at import.

Coefficient matrices ``C`` have shape ``(n, m)``: ``C[i, k]`` is the
coefficient of ``x**k`` in ``a_i(x)``, with ``f = z**n + sum a_i(x) z**i``.
"""

from __future__ import annotations

import cmath

import numpy as np

OK = 0
STEP_UNDERFLOW = 1
AMBIGUOUS = 2
COLLISION = 3
NO_CONVERGENCE = 4

MAX_STEPS = 2_000_000


def _coeffs_at(C, x):
    n, m = C.shape
    a = np.zeros(n, dtype=complex)
    for k in range(m - 1, -1, -1):
        a = a * x + C[:, k]
    return a


def _dcoeffs_at(C, x):
    n, m = C.shape
    da = np.zeros(n, dtype=complex)
    for k in range(m - 1, 0, -1):
        da = da * x + k * C[:, k]
    return da


def _f_df(a, z):
    """f(z) and f'(z) for the monic polynomial with tail ``a`` (vectorised)."""
    n = a.shape[0]
    f = np.ones_like(z)
    df = np.zeros_like(z)
    for k in range(n - 1, -1, -1):
        df = df * z + f
        f = f * z + a[k]
    return f, df


def _scaled_residual(a, z):
    n = a.shape[0]
    f, _ = _f_df(a, z)
    az = np.abs(z)
    scale = az ** n
    p = np.ones_like(az)
    for k in range(n):
        scale = scale + abs(a[k]) * p
        p = p * az
    # scale vanishes only at z = 0 with a_0 = 0, where f(z) = 0 exactly
    safe = np.where(scale > 0, scale, 1.0)
    return np.abs(f) / safe


def _newton(a, w, maxit):
    for _ in range(maxit):
        f, df = _f_df(a, w)
        if np.any(df == 0):
            return w, False
        step = f / df
        w = w - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(w))):
            break
    return w, True


def scaled_residuals(C, x, z):
    return _scaled_residual(_coeffs_at(C, complex(x)), np.asarray(z, dtype=complex))


def polish(C, x, z, tol, maxit):
    """Newton-polish ``z`` in place at ``x``. Returns (status, max residual)."""
    a = _coeffs_at(C, complex(x))
    w, ok = _newton(a, np.asarray(z, dtype=complex).copy(), maxit)
    res = float(np.max(_scaled_residual(a, w))) if w.size else 0.0
    z[:] = w
    if not ok or not np.all(np.isfinite(w)) or res > tol:
        return NO_CONVERGENCE, res
    return OK, res


def _gate(z, w, collide):
    n = z.shape[0]
    if n < 2:
        return OK
    diff = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(diff, np.inf)
    minsep = diff.min()
    if minsep < collide:
        return COLLISION
    d = np.abs(z[:, None] - w[None, :])
    own = np.diag(d).copy()
    np.fill_diagonal(d, np.inf)
    second = d.min(axis=1)
    if np.all(own < second / 3.0) and np.all(own < minsep / 2.0):
        return OK
    return AMBIGUOUS


def _point(kind, p0, p1, center, radius, theta0, dtheta, t):
    if kind == 0:
        return p0 + t * (p1 - p0)
    return center + radius * cmath.exp(1j * (theta0 + t * dtheta))


def track_segment(C, kind, p0, p1, center, radius, theta0, dtheta, z,
                  h0, hmin, tol, collide, maxit):
    """Continue the roots ``z`` (updated in place) along one segment.

    ``kind`` 0 is the line ``p0 -> p1``; 1 is the arc
    ``center + radius*exp(i(theta0 + t*dtheta))``.  Steps are arclength
    ``h0`` initially, halved on rejection, doubled after three accepted steps
    (never above ``h0``).  Returns ``(status, accepted, rejected)``.
    """
    C = np.asarray(C, dtype=complex)
    length = abs(p1 - p0) if kind == 0 else abs(radius * dtheta)
    if length == 0.0 or z.shape[0] == 0:
        return OK, 0, 0
    hmax = min(h0 / length, 1.0)
    h = hmax
    hmin_t = hmin / length
    t = 0.0
    x0 = _point(kind, p0, p1, center, radius, theta0, dtheta, 0.0)
    da = _dcoeffs_at(C, x0)
    zc = np.asarray(z, dtype=complex).copy()
    accepted = rejected = streak = 0
    while t < 1.0:
        if accepted + rejected > MAX_STEPS:
            return STEP_UNDERFLOW, accepted, rejected
        if t + h > 1.0:
            h = 1.0 - t
        t1 = t + h
        x1 = _point(kind, p0, p1, center, radius, theta0, dtheta, t1)
        dx = x1 - x0
        # Euler predictor along dz/dx = -f_x / f_z
        a0 = _coeffs_at(C, x0)
        _, fz = _f_df(a0, zc)
        fx = np.zeros_like(zc)
        for k in range(C.shape[0] - 1, -1, -1):
            fx = fx * zc + da[k]
        w = zc - fx * dx / fz
        a1 = _coeffs_at(C, x1)
        w, ok = _newton(a1, w, maxit)
        if not ok or not np.all(np.isfinite(w)) or np.max(_scaled_residual(a1, w)) > tol:
            reason = NO_CONVERGENCE
        else:
            reason = _gate(zc, w, collide)
        if reason == OK:
            zc = w
            t = t1
            x0 = x1
            da = _dcoeffs_at(C, x0)
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
                z[:] = zc
                return reason, accepted, rejected
    z[:] = zc
    return OK, accepted, rejected
