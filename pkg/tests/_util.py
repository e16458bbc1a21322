"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import itertools

import numpy as np

from semigalois.domain import Disc, build_domain
from semigalois.numerics import PolyX
from semigalois.perm import Permutation
from semigalois.tracking import WeierstrassSpec


def annulus(R=2.0, r=0.5, basepoint=None):
    return build_domain(Disc(0, R), [Disc(0, r)], basepoint)


def spec(rows, domain, kind="exact", options=None):
    """``rows[i]`` lists the x-coefficients of a_i, lowest first."""
    cs = tuple(PolyX(tuple(r), kind) for r in rows)
    if options is None:
        return WeierstrassSpec(cs, domain)
    return WeierstrassSpec(cs, domain, options)


def z_power_minus_x(n, domain=None):
    return spec([[0, -1]] + [[]] * (n - 1), domain or annulus())


def reducible_example(domain=None):
    """(z^2 - x)(z^2 - 2x) = z^4 - 3x z^2 + 2x^2."""
    return spec([[0, 0, 2], [], [0, -3], []], domain or annulus())


def s3_example():
    """z^3 - 3z + 2x with holes at +-1, basepoint 0."""
    d = build_domain(Disc(0, 3), [Disc(-1, 0.25), Disc(1, 0.25)], 0j)
    return spec([[0, 2], [-3], []], d)


def disc_oracle(f, x):
    """prod_{i<j} (r_i - r_j)^2 from numpy roots: an independent discriminant."""
    a = f.coeffs_at(x)
    r = np.roots(np.concatenate(([1.0], a[::-1])))
    out = 1.0 + 0j
    for i, j in itertools.combinations(range(len(r)), 2):
        out *= (r[i] - r[j]) ** 2
    return out


def _best_assignment(src, dst):
    n = len(src)
    best, arg = np.inf, None
    for p in itertools.permutations(range(n)):
        c = sum(abs(src[i] - dst[p[i]]) for i in range(n))
        if c < best:
            best, arg = c, p
    return arg


def fixed_step_track(f, path, start_roots, per_segment=1500):
    """Oracle continuation: fresh numpy roots at each of many small steps,
    matched to the previous fiber by the globally cheapest bijection."""
    z = np.array(start_roots, dtype=complex)
    pts = path.sample(per_segment)
    for x in pts[1:]:
        a = f.coeffs_at(x)
        new = np.roots(np.concatenate(([1.0], a[::-1])))
        p = _best_assignment(z, new)
        z = new[list(p)]
    return z


def oracle_perm(end, start):
    n = len(start)
    return Permutation(tuple(int(np.argmin(np.abs(np.asarray(start) - end[i]))) for i in range(n)))


def coefficient_margin(f, density=24, starts_per_point=None):
    """Estimate eps = min_x dist(a(x), {monic polys with a double root}).

    For a fixed double-root candidate w the nearest such polynomial is a
    least-norm linear correction, so the distance is
    sqrt(r^H (A A^H)^{-1} r) with A the evaluation rows of 1, z, .. and their
    derivatives at w.  We minimise over w by local pattern search started at
    every root and pairwise midpoint, then take the minimum over x samples.
    """
    n = f.n
    pts = f.domain.sample_points(density)

    def dist(a, w):
        k = np.arange(n)
        row0 = w ** k
        row1 = np.where(k > 0, k * w ** np.maximum(k - 1, 0), 0)
        A = np.vstack([row0, row1])
        fz = w ** n + a @ row0
        dfz = n * w ** (n - 1) + a @ row1
        r = -np.array([fz, dfz])
        G = A @ A.conj().T
        return float(np.sqrt(abs(r.conj() @ np.linalg.solve(G, r))))

    best = np.inf
    for x in pts:
        a = f.coeffs_at(x)
        roots = np.roots(np.concatenate(([1.0], a[::-1])))
        cands = list(roots) + [(u + v) / 2 for u, v in itertools.combinations(roots, 2)]
        for w in cands:
            d = dist(a, w)
            step = 0.1 * (1 + abs(w))
            while step > 1e-6:
                moved = False
                for dw in (step, -step, 1j * step, -1j * step):
                    d2 = dist(a, w + dw)
                    if d2 < d:
                        w, d, moved = w + dw, d2, True
                        break
                if not moved:
                    step /= 2
            best = min(best, d)
    return best


# acceptance bookkeeping: criterion number -> (passed, detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(k, ok, detail=""):
    ACCEPTANCE[k] = (bool(ok), detail)
    return ok
