"""Root fibers, the Weierstrass check, path continuation and monodromy."""

from __future__ import annotations

import concurrent.futures as cf
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .domain import Domain, Path, generator_loop, loop_word
from .errors import (
    AmbiguousMatch,
    InputError,
    NoConvergence,
    RootCollision,
    StepUnderflow,
    WeierstrassViolation,
)
from .numerics import PolyX, discriminant_of, poly_eval
from .perm import Permutation

__all__ = [
    "TrackerOptions",
    "WeierstrassSpec",
    "RootFiber",
    "TrackResult",
    "MonodromyData",
    "roots_at",
    "check_weierstrass",
    "track_path",
    "track_word",
    "monodromy",
    "match_fibers",
]


@dataclass(frozen=True)
class TrackerOptions:
    """Continuation settings.

    ``initial_step`` of 0 means 1/64 of the path length.  Residuals are
    backward errors: ``|f(z)| / (|z|^n + sum |a_i| |z|^i)``.
    """

    initial_step: float = 0.0
    min_step: float = 1e-9
    residual_tol: float = 1e-10
    collision: float = 1e-8
    max_newton: int = 8
    density: int = 64
    disc_threshold: float = 1e-8

    def __post_init__(self):
        for name in ("min_step", "residual_tol", "collision", "disc_threshold"):
            if not getattr(self, name) > 0:
                raise InputError(f"tracker option {name} must be positive")
        if self.initial_step < 0:
            raise InputError("initial_step must be >= 0 (0 = automatic)")
        if self.initial_step and self.min_step > self.initial_step:
            raise InputError("min_step exceeds initial_step")
        if self.max_newton < 1 or self.density < 4:
            raise InputError("max_newton must be >= 1 and density >= 4")

    @classmethod
    def from_json(cls, d: dict | None) -> "TrackerOptions":
        if not d:
            return cls()
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise InputError(f"unknown tracker options: {sorted(extra)}")
        return cls(**d)

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True, eq=False)
class WeierstrassSpec:
    """``f = z^n + a_{n-1}(x) z^{n-1} + ... + a_0(x)`` over ``domain``."""

    coeffs: tuple[PolyX, ...]
    domain: Domain
    options: TrackerOptions = field(default_factory=TrackerOptions)

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise InputError("degree must be at least 1")
        kinds = {c.kind for c in cs}
        if len(kinds) != 1:
            raise InputError("coefficients mix exact and float kinds")
        object.__setattr__(self, "coeffs", cs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def kind(self) -> str:
        return self.coeffs[0].kind

    @cached_property
    def coeff_matrix(self) -> np.ndarray:
        m = max(1, max(len(c.coeffs) for c in self.coeffs))
        C = np.zeros((self.n, m), dtype=complex)
        for i, c in enumerate(self.coeffs):
            arr = c.as_array()
            C[i, : arr.size] = arr
        return C

    @cached_property
    def discriminant(self) -> PolyX:
        return discriminant_of(self)

    def coeffs_at(self, x: complex) -> np.ndarray:
        return np.array([poly_eval(c, x) for c in self.coeffs])

    def __call__(self, x: complex, z: complex) -> complex:
        acc = 1 + 0j
        for a in reversed(self.coeffs_at(x)):
            acc = acc * z + a
        return acc

    def with_domain(self, domain: Domain) -> "WeierstrassSpec":
        return replace(self, domain=domain)

    def with_coeffs(self, coeffs: Sequence[PolyX]) -> "WeierstrassSpec":
        spec = WeierstrassSpec(tuple(coeffs), self.domain, self.options)
        return spec

    @property
    def max_x_degree(self) -> int:
        return max(c.degree for c in self.coeffs)


@dataclass(frozen=True)
class RootFiber:
    point: complex
    roots: tuple[complex, ...]

    @property
    def n(self) -> int:
        return len(self.roots)

    def array(self) -> np.ndarray:
        return np.array(self.roots, dtype=complex)


def _lex_key(scale: float):
    def key(z: complex):
        return (round(z.real / scale, 9), round(z.imag / scale, 9))
    return key


def _min_separation(z: np.ndarray) -> float:
    if z.size < 2:
        return float("inf")
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def roots_at(f: WeierstrassSpec, x: complex) -> RootFiber:
    """All roots of ``f_x``, Newton-polished, in lexicographic (re, im) order."""
    x = complex(x)
    opts = f.options
    a = f.coeffs_at(x)
    z = np.roots(np.concatenate(([1.0 + 0j], a[::-1]))).astype(complex)
    if _min_separation(z) < opts.collision:
        raise RootCollision(f"roots collide at x={x}: f is not Weierstrass there")
    status, res = kernels.backend.polish(f.coeff_matrix, x, z, opts.residual_tol, 50)
    if status != kernels.OK:
        raise NoConvergence(f"root polish failed at x={x} (residual {res:.3e})")
    if _min_separation(z) < opts.collision:
        raise RootCollision(f"roots collide at x={x}: f is not Weierstrass there")
    scale = max(1.0, float(np.max(np.abs(z))) if z.size else 1.0)
    return RootFiber(x, tuple(sorted((complex(v) for v in z), key=_lex_key(scale))))


def match_fibers(src: Sequence[complex], dst: Sequence[complex]) -> Permutation:
    """Bijection ``i -> j`` with ``dst[j]`` nearest to ``src[i]`` (3:1 gate)."""
    a = np.asarray(src, dtype=complex)
    b = np.asarray(dst, dtype=complex)
    if a.size != b.size:
        raise InputError("fibers of different sizes")
    out = []
    for z in a:
        d = np.abs(b - z)
        order = np.argsort(d, kind="stable")
        if d.size > 1 and not d[order[0]] < d[order[1]] / 3.0:
            raise AmbiguousMatch(f"no clear nearest root for {z}")
        out.append(int(order[0]))
    if len(set(out)) != len(out):
        raise AmbiguousMatch("nearest-root matching is not a bijection")
    return Permutation(tuple(out))


def check_weierstrass(f: WeierstrassSpec) -> float:
    """Minimum sampled ``|disc|`` over the domain; raises below threshold.

    Also rejects any root of the discriminant lying in the closed domain,
    which catches crossings that fall between sample points.
    """
    d = f.domain
    disc = f.discriminant.to_float()
    pts = d.sample_points(f.options.density)
    if disc.is_zero():
        raise WeierstrassViolation("discriminant vanishes identically", d.basepoint)
    cs = disc.as_array()
    vals = np.abs(np.polyval(cs[::-1], pts))
    k = int(np.argmin(vals))
    margin = float(vals[k])
    if margin < f.options.disc_threshold:
        raise WeierstrassViolation(
            f"|disc| = {margin:.3e} below threshold at x = {complex(pts[k])}", complex(pts[k]))
    if cs.size > 1:
        for r in np.roots(cs[::-1]):
            if d.contains(complex(r), tol=1e-9 * (1 + abs(r))):
                raise WeierstrassViolation(
                    f"discriminant vanishes at x = {complex(r)} inside the domain", complex(r))
    return margin


@dataclass(frozen=True)
class TrackResult:
    end: RootFiber  # roots in the order of the start fiber (root i continued)
    perm: Permutation | None  # for closed paths: i -> index in the start fiber
    accepted: int
    rejected: int
    max_residual: float


_FAILURES = {
    kernels.STEP_UNDERFLOW: StepUnderflow,
    kernels.NO_CONVERGENCE: StepUnderflow,
    kernels.AMBIGUOUS: AmbiguousMatch,
    kernels.COLLISION: RootCollision,
}


def track_path(f: WeierstrassSpec, path: Path, start: RootFiber, backend=None) -> TrackResult:
    """Continue the fiber ``start`` along ``path``.

    Adaptive predictor-corrector steps; each step is accepted only when every
    corrected root is unambiguously nearest its predecessor (see the kernels).
    """
    kb = backend or kernels.backend
    opts = f.options
    if abs(start.point - path.start) > 1e-9 * (1 + abs(path.start)):
        raise InputError("start fiber does not lie over the path's initial point")
    z = start.array().copy()
    total = path.length
    h0 = opts.initial_step or (total / 64 if total else 1.0)
    hmin = min(opts.min_step, h0)
    C = f.coeff_matrix
    acc = rej = 0
    for seg in path.segments:
        kind = 0 if seg.kind == "line" else 1
        status, a, r = kb.track_segment(
            C, kind, seg.a, seg.b, seg.center, seg.radius, seg.theta0, seg.dtheta,
            z, h0, hmin, opts.residual_tol, opts.collision, opts.max_newton)
        acc += a
        rej += r
        if status != kernels.OK:
            err = _FAILURES.get(status, StepUnderflow)
            raise err(f"continuation failed on a {seg.kind} segment near "
                      f"x={seg.start} (status {status}, {a} accepted steps)")
    res = kernels.backend.scaled_residuals(C, path.end, z)
    max_res = float(np.max(res)) if res.size else 0.0
    end = RootFiber(path.end, tuple(complex(v) for v in z))
    perm = None
    if abs(path.end - start.point) <= 1e-9 * (1 + abs(start.point)):
        perm = match_fibers(end.roots, start.roots)
    return TrackResult(end, perm, acc, rej, max_res)


def track_word(f: WeierstrassSpec, word, base: RootFiber | None = None, backend=None) -> TrackResult:
    base = base or roots_at(f, f.domain.basepoint)
    return track_path(f, loop_word(f.domain, word), base, backend=backend)


@dataclass(frozen=True)
class MonodromyData:
    base: RootFiber
    gens: tuple[Permutation, ...]
    report: dict

    @property
    def n(self) -> int:
        return self.base.n

    def to_json(self) -> dict:
        return {
            "basepoint": [self.base.point.real, self.base.point.imag],
            "base_roots": [[z.real, z.imag] for z in self.base.roots],
            "generators": [str(g) for g in self.gens],
            "report": self.report,
        }


def monodromy(f: WeierstrassSpec, workers: int = 1, backend=None) -> MonodromyData:
    """One permutation per hole: where each root goes around the ccw lasso."""
    margin = check_weierstrass(f)
    base = roots_at(f, f.domain.basepoint)
    loops = [generator_loop(f.domain, j) for j in range(1, f.domain.m + 1)]

    def run(loop):
        return track_path(f, loop, base, backend=backend)

    if workers > 1 and len(loops) > 1:
        with cf.ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, loops))
    else:
        results = [run(loop) for loop in loops]
    gens = tuple(r.perm for r in results)
    report = {
        "disc_margin": margin,
        "max_residual": max((r.max_residual for r in results), default=0.0),
        "accepted_steps": [r.accepted for r in results],
        "rejected_steps": [r.rejected for r in results],
    }
    return MonodromyData(base, gens, report)
