"""Constructing Weierstrass polynomials with a prescribed monodromy group.

Nothing here is guaranteed to succeed in general: every result carries a
certificate (the monodromy generators and the identified group) that can be
re-derived from the stored spec.  Cyclic, abelian-product and symmetric
families have explicit constructions; anything else goes through a seeded
random search.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .domain import Disc, Domain, build_domain, validate_spider
from .errors import (
    InputError,
    NumericalFailure,
    SearchBudgetExhausted,
    SemiGaloisError,
    WeierstrassViolation,
)
from .numerics import GaussianRational, PolyX, zpoly_mul
from .perm import PermGroup, Permutation, generate, group_signature, identify, orbits
from .problem import spec_to_json
from .rationalize import approximate_coeffs
from .tracking import MonodromyData, TrackerOptions, WeierstrassSpec, check_weierstrass, monodromy

__all__ = [
    "RealizationSpec",
    "realize_cyclic",
    "realize_abelian_product",
    "realize_symmetric",
    "realize_search",
    "realize_rational",
    "reverify",
]

MAX_SEARCH_DEGREE = 8


@dataclass
class RealizationSpec:
    target: dict
    spec: WeierstrassSpec
    group: PermGroup
    monodromy: MonodromyData
    identification: str
    status: str = "verified"
    seed: int | None = None
    budget: int | None = None
    candidates: int = 1
    notes: list[str] = field(default_factory=list)

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.monodromy.gens

    def certificate(self) -> dict:
        return {
            "monodromy": self.monodromy.to_json(),
            "group": {
                "order": self.group.order,
                "generators": [str(g) for g in self.generators],
                "identification": self.identification,
            },
            "orbits": [list(o) for o in orbits(self.group)],
        }

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "spec": spec_to_json(self.spec),
            "certificate": self.certificate(),
            "status": self.status,
            "seed": self.seed,
            "budget": self.budget,
            "candidates": self.candidates,
            "notes": list(self.notes),
        }


def _certify(spec: WeierstrassSpec, target: dict, **kw) -> RealizationSpec:
    m = monodromy(spec)
    G = generate(m.gens, degree=spec.n)
    return RealizationSpec(target, spec, G, m, identify(G), **kw)


def reverify(r: RealizationSpec) -> bool:
    """Recompute monodromy from the stored spec; generators must match exactly."""
    m = monodromy(r.spec)
    return m.gens == r.monodromy.gens and generate(m.gens, degree=r.spec.n).same_elements(r.group)


def _exact(v) -> GaussianRational:
    return GaussianRational.coerce(v)


def _linear(slope, c: complex, kind: str = "exact") -> PolyX:
    """``slope * (x - c)``."""
    if kind == "exact":
        s, cc = _exact(slope), _gauss(c)
        return PolyX.exact([-(s * cc), s])
    return PolyX.floating([-slope * c, slope])


def _gauss(c) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    c = complex(c)
    return GaussianRational(Fraction(c.real), Fraction(c.imag))


def _binomial_factor(k: int, tail: PolyX) -> list[PolyX]:
    """Coefficient list of ``z^k + tail`` without the leading 1."""
    zero = PolyX.exact([]) if tail.kind == "exact" else PolyX.floating([])
    return [tail] + [zero] * (k - 1)


def realize_cyclic(n: int, hole: Disc = Disc(0, 0.5), outer: Disc | None = None) -> RealizationSpec:
    """``z^n - (x - c)`` around a single hole centred at ``c``."""
    if n < 1:
        raise InputError("n must be >= 1")
    outer = outer or Disc(hole.center, 4 * hole.radius)
    coeffs = _binomial_factor(n, -_linear(1, hole.center))
    spec = WeierstrassSpec(tuple(coeffs), build_domain(outer, [hole]))
    return _certify(spec, {"kind": "cyclic", "n": n})


def _ring_domain(m: int, basepoint_center: bool = True) -> Domain:
    """``m`` holes evenly spaced on the unit circle, basepoint at the origin."""
    if m == 1:
        return build_domain(Disc(0, 2.5), [Disc(0, 0.5)])
    r = min(0.25, 0.5 * math.sin(math.pi / m))
    holes = [Disc(cmath.exp(2j * math.pi * j / m), r) for j in range(m)]
    return build_domain(Disc(0, 2.5), holes, 0j if basepoint_center else None)


def realize_abelian_product(orders: Sequence[int], retries: int = 32,
                            seed: int = 0) -> RealizationSpec:
    """``prod_j (z^{n_j} - l_j (x - c_j))``: one cyclic block per hole."""
    orders = [int(k) for k in orders]
    if not orders or any(k < 1 for k in orders):
        raise InputError("orders must be a non-empty list of positive integers")
    m = len(orders)
    dom = _ring_domain(m)
    centers = [h.center for h in dom.holes]
    rng = np.random.default_rng(seed)
    last = None
    for attempt in range(retries):
        if attempt == 0:
            lams = [1] * m
        elif attempt <= 8:
            # geometric growth pushes resultant roots into the holes
            lams = [2 ** (attempt * j) for j in range(m)]
        else:
            lams = [Fraction(int(rng.integers(1, 64)), int(rng.integers(1, 8))) for _ in range(m)]
        coeffs: list[PolyX] = [PolyX.exact([1])]
        for k, c, lam in zip(orders, centers, lams):
            coeffs = zpoly_mul(coeffs, _binomial_factor(k, -_linear(lam, c)) + [PolyX.exact([1])])
        spec = WeierstrassSpec(tuple(coeffs[:-1]), dom)
        try:
            check_weierstrass(spec)
        except WeierstrassViolation as exc:
            last = exc
            continue
        r = _certify(spec, {"kind": "abelian", "orders": orders})
        r.notes.append(f"scalars {[str(v) for v in lams]} after {attempt + 1} attempt(s)")
        return r
    raise WeierstrassViolation(f"no scalars found in {retries} attempts: {last}",
                               getattr(last, "x", None))


def _domain_around(points: Sequence[complex], exclude: Sequence[complex] = ()) -> Domain | None:
    """Holes around ``points``, an outer disc avoiding ``exclude``; None if impossible."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        return None
    if pts.size > 1:
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        sep = float(d.min())
    else:
        sep = 1.0
    if sep < 1e-6:
        return None
    r = 0.3 * sep
    center = complex(pts.mean())
    spread = float(np.max(np.abs(pts - center)))
    R = spread + max(3 * r, 0.5 * sep, 1e-3 + spread * 0.5)
    ex = np.asarray(exclude, dtype=complex)
    if ex.size:
        nearest = float(np.min(np.abs(ex - center)))
        if nearest <= spread + 2 * r:
            return None
        R = min(R, 0.5 * (nearest + spread + 2 * r))
    holes = [Disc(complex(p), r) for p in pts]
    # basepoint candidates: the centre, then points around the rim
    cands = [center] + [center + 0.9 * R * cmath.exp(2j * math.pi * (k + 0.5) / 16) for k in range(16)]
    for b in cands:
        try:
            dom = build_domain(Disc(center, R), holes, b)
        except InputError:
            continue
        if all(s["ok"] for s in validate_spider(dom)):
            return dom
    return None


def _cluster(roots: np.ndarray, tol: float) -> list[complex]:
    out: list[list[complex]] = []
    for z in roots:
        for grp in out:
            if abs(grp[0] - z) < tol:
                grp.append(z)
                break
        else:
            out.append([z])
    return [complex(np.mean(g)) for g in out]


def _disc_roots(coeffs: Sequence[PolyX]) -> np.ndarray | None:
    spec = WeierstrassSpec(tuple(coeffs), build_domain(Disc(0, 1)))
    disc = spec.discriminant.to_float()
    if disc.is_zero():
        return None
    arr = disc.as_array()
    if arr.size < 2:
        return np.array([], dtype=complex)
    return np.roots(arr[::-1])


def _trinomial(n: int, p, q0, q1) -> list[PolyX]:
    """Coefficients of ``z^n + p z + (q0 + q1 x)``, n >= 2."""
    coeffs = [PolyX.exact([q0, q1])] + [PolyX.exact([])] * (n - 1)
    coeffs[1] = PolyX.exact([p])
    return coeffs


def realize_symmetric(n: int, budget: int = 50, seed: int = 0) -> RealizationSpec:
    """Trinomials ``z^n + p z + q(x)`` with holes around the branch points."""
    if n < 2:
        raise InputError("n must be >= 2")
    target = {"kind": "symmetric", "n": n}
    want = math.factorial(n)
    if n == 2:
        r = realize_cyclic(2)
        r.target = target
        return r
    if n == 3:
        spec = WeierstrassSpec(tuple(_trinomial(3, -3, 0, 2)),
                               build_domain(Disc(0, 3), [Disc(-1, 0.25), Disc(1, 0.25)], 0j))
        r = _certify(spec, target, seed=seed, budget=budget)
        if r.group.order == want:
            return r
    rng = np.random.default_rng(seed)
    for k in range(budget):
        if k == 0:
            # z^n - n z + (n-1) x: branch points at the (n-1)-th roots of unity
            p, q0, q1 = -n, 0, n - 1
        else:
            p = _random_gauss(rng, -4, 4)
            q0 = _random_gauss(rng, -3, 3)
            q1 = _exact(int(rng.integers(1, 4)))
            if not p:
                continue
        coeffs = _trinomial(n, p, q0, q1)
        roots = _disc_roots(coeffs)
        if roots is None or roots.size == 0:
            continue
        dom = _domain_around(_cluster(roots, 1e-6))
        if dom is None:
            continue
        spec = WeierstrassSpec(tuple(coeffs), dom)
        try:
            r = _certify(spec, target, seed=seed, budget=budget, candidates=k + 1)
        except (NumericalFailure, WeierstrassViolation):
            continue
        if r.group.order == want and r.group.is_transitive():
            return r
    raise SearchBudgetExhausted(f"no trinomial with group S{n} among {budget} candidates")


def _random_gauss(rng, lo: int, hi: int, den: int = 1) -> GaussianRational:
    a = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))
    b = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))
    return GaussianRational(a, b)


def _matches(G: PermGroup, target: PermGroup) -> str | None:
    """``"verified"``, ``"order-matched, isomorphism unverified"`` or None."""
    if group_signature(G) != group_signature(target):
        return None
    a, b = identify(G), identify(target)
    if a != b:
        return None
    if a.startswith("unidentified"):
        return "order-matched, isomorphism unverified"
    return "verified"


def realize_search(target_gens: Sequence[Permutation], budget: int = 200, seed: int = 0,
                   x_degree: int = 1, options: TrackerOptions | None = None) -> RealizationSpec:
    """Random Gaussian-integer specs until the monodromy group looks like the target.

    One hole per target generator; holes are placed around clusters of the
    x-discriminant roots and the outer disc excludes the rest.
    """
    gens = list(target_gens)
    if not gens:
        raise InputError("target needs at least one generator")
    n = max(g.degree for g in gens)
    if n > MAX_SEARCH_DEGREE:
        raise InputError(f"target degree {n} exceeds {MAX_SEARCH_DEGREE}")
    gens = [Permutation(tuple(g.images) + tuple(range(g.degree, n))) for g in gens]
    T = generate(gens, degree=n)
    m = len(gens)
    desc = {"kind": "generators", "generators": [str(g) for g in gens],
            "identification": identify(T), "order": T.order}
    rng = np.random.default_rng(seed)
    for k in range(budget):
        coeffs = [PolyX.exact([_random_gauss(rng, -3, 3) for _ in range(x_degree + 1)])
                  for _ in range(n)]
        roots = _disc_roots(coeffs)
        if roots is None:
            continue
        clusters = _cluster(roots, 1e-6)
        if len(clusters) < m:
            continue
        start = clusters[int(rng.integers(len(clusters)))]
        chosen = sorted(clusters, key=lambda z: abs(z - start))[:m]
        rest = [z for z in clusters if z not in chosen]
        dom = _domain_around(chosen, rest)
        if dom is None:
            continue
        spec = WeierstrassSpec(tuple(coeffs), dom, options or TrackerOptions())
        try:
            r = _certify(spec, desc, seed=seed, budget=budget, candidates=k + 1)
        except (NumericalFailure, WeierstrassViolation):
            continue
        status = _matches(r.group, T)
        if status:
            r.status = status
            return r
    exc = SearchBudgetExhausted(f"not found: no candidate among {budget} (seed {seed}) "
                                f"matched {desc['identification']}")
    exc.target = desc
    raise exc


def realize_rational(r: RealizationSpec, den_bound: int = 1000) -> RealizationSpec:
    """Move the coefficients into Q(i)[x] and re-certify the group."""
    spec, rep = approximate_coeffs(r.spec, den_bound)
    out = _certify(spec, r.target, status=r.status, seed=r.seed, budget=r.budget,
                   candidates=r.candidates, notes=list(r.notes))
    if not (out.group.order == r.group.order and out.identification == r.identification):
        raise SemiGaloisError("rationalized spec certifies a different group")
    out.notes.append(f"rationalized with den_bound {rep.den_bound}; homotopy {rep.verdict}")
    return out
