"""Finite covers of the base domain as a fiber plus a pi_1-action.

A cover of degree d is given by one permutation of the fiber per hole (the
action of that hole's lasso).  The solution space, the cover of orderings of
roots, the splitting cover and every intermediate cover of the Galois
correspondence all live in this one representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .domain import Disc, Path, Segment, _segment_point_distance, build_domain, generator_loop
from .errors import InputError, InterpolationFailure, OrderCapExceeded, ResidualTooLarge
from .numerics import GaussianRational, PolyX, rationalize_value, zpoly_mul
from .perm import (
    DEFAULT_LATTICE_CAP,
    DEFAULT_ORDER_CAP,
    PermGroup,
    Permutation,
    generate,
    left_cosets,
    orbits,
    subgroups,
)
from .tracking import MonodromyData, RootFiber, WeierstrassSpec, monodromy, roots_at, track_path

__all__ = [
    "FiniteCover",
    "CorrespondenceTable",
    "Factorization",
    "solution_cover",
    "splitting_cover",
    "ambient_cover",
    "correspondence",
    "factor",
    "pullback_power",
    "deck_group_order",
    "cover_map_degree",
    "degree_tower",
]


@dataclass(frozen=True, eq=False)
class FiniteCover:
    degree: int
    action: tuple[Permutation, ...]
    components: tuple[tuple[int, ...], ...]  # 1-based fiber points
    galois: bool
    labels: tuple | None = None  # what each fiber point is, when meaningful

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [str(g) for g in self.action],
            "components": [list(c) for c in self.components],
            "galois": self.galois,
        }


def _restrict(action: Sequence[Permutation], comp: Sequence[int]) -> list[Permutation]:
    pos = {p - 1: k for k, p in enumerate(comp)}
    return [Permutation(tuple(pos[g(p - 1)] for p in comp)) for g in action]


def _is_regular(action: Sequence[Permutation], comp: Sequence[int]) -> bool:
    if len(comp) == 1:
        return True
    G = generate(_restrict(action, comp), cap=len(comp))  # regular => order == size
    return G.order == len(comp)


def make_cover(degree: int, action: Sequence[Permutation], labels=None) -> FiniteCover:
    action = tuple(action)
    if any(g.degree != degree for g in action):
        raise InputError("action degree does not match the fiber size")
    if degree == 0:
        return FiniteCover(0, action, (), True, labels)
    comps = tuple(orbits(PermGroup(degree, action, ())))
    try:
        galois = all(_is_regular(action, c) for c in comps)
    except OrderCapExceeded:  # restricted group larger than the component
        galois = False
    return FiniteCover(degree, action, comps, galois, labels)


def solution_cover(m: MonodromyData) -> FiniteCover:
    """Fiber = the n roots at the basepoint, acted on by the monodromy."""
    return make_cover(m.n, m.gens, labels=tuple(range(1, m.n + 1)))


def _diagonal(g: Permutation, t: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g(i) for i in t)


def _orbit_cover(gens: Sequence[Permutation], start: tuple[int, ...], cap: int) -> FiniteCover:
    pts = [start]
    index = {start: 0}
    k = 0
    while k < len(pts):
        t = pts[k]
        for g in gens:
            u = _diagonal(g, t)
            if u not in index:
                index[u] = len(pts)
                pts.append(u)
                if len(pts) > cap:
                    raise OrderCapExceeded(f"splitting cover degree exceeds cap {cap}")
        k += 1
    action = [Permutation(tuple(index[_diagonal(g, t)] for t in pts)) for g in gens]
    labels = tuple(tuple(i + 1 for i in t) for t in pts)
    return make_cover(len(pts), action, labels)


def splitting_cover(m: MonodromyData, cap: int = DEFAULT_ORDER_CAP) -> FiniteCover:
    """Component of the orderings cover through the base ordering (1, ..., n).

    Its fiber is in bijection with the monodromy group, so the degree is |G|.
    """
    return _orbit_cover(m.gens, tuple(range(m.n)), cap)


def ambient_cover(m: MonodromyData) -> FiniteCover:
    """All n! orderings of the roots with the diagonal action."""
    pts = list(itertools.permutations(range(m.n)))
    index = {t: k for k, t in enumerate(pts)}
    action = [Permutation(tuple(index[_diagonal(g, t)] for t in pts)) for g in m.gens]
    return make_cover(len(pts), action, tuple(tuple(i + 1 for i in t) for t in pts))


def splitting_deck_action(cover: FiniteCover) -> list[Permutation]:
    """Deck transformations of the splitting cover: reorder positions.

    Each fiber point is an ordering t = (g(1), ..., g(n)); the deck map for
    ``h`` sends t to (t[h(1)], ..., t[h(n)]), i.e. g to g*h, which commutes
    with the left pi_1-action.
    """
    if cover.labels is None:
        raise InputError("cover carries no orderings")
    pts = [tuple(i - 1 for i in t) for t in cover.labels]
    index = {t: k for k, t in enumerate(pts)}
    out = []
    for t in pts:
        h = t  # the base point is the identity ordering, so point t is the element t
        out.append(Permutation(tuple(index[tuple(u[h[k]] for k in range(len(u)))] for u in pts)))
    return out


def deck_group_order(cover: FiniteCover) -> int:
    """Number of fiber automorphisms commuting with the action (connected covers)."""
    if not cover.connected:
        raise InputError("deck group computed for connected covers only")
    d = cover.degree
    word: dict[int, list[int]] = {0: []}
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for k, g in enumerate(cover.action):
                q = g(p)
                if q not in word:
                    word[q] = word[p] + [k]
                    nxt.append(q)
        frontier = nxt
    count = 0
    for y in range(d):
        phi = [0] * d
        for p, w in word.items():
            v = y
            for k in w:
                v = cover.action[k](v)
            phi[p] = v
        if len(set(phi)) != d:
            continue
        if all(phi[g(p)] == g(phi[p]) for g in cover.action for p in range(d)):
            count += 1
    return count


def cover_map_degree(src: FiniteCover, dst: FiniteCover, mapping: Sequence[int]) -> int:
    """Degree of an equivariant surjection ``src -> dst`` (0-based mapping).

    Raises when the map is not equivariant, not onto, or has uneven fibers.
    """
    if len(src.action) != len(dst.action):
        raise InputError("covers over different bases")
    for g, h in zip(src.action, dst.action):
        for p in range(src.degree):
            if mapping[g(p)] != h(mapping[p]):
                raise InputError("map does not commute with the pi_1-action")
    sizes = np.bincount(np.asarray(mapping, dtype=int), minlength=dst.degree)
    if sizes.min() == 0 or sizes.min() != sizes.max():
        raise InputError("map is not a covering (uneven or empty fibers)")
    return int(sizes[0])


def degree_tower(m: MonodromyData) -> dict:
    """Combinatorial degree identities for the towers built from ``m``.

    * ``E_f -> E_1 -> X``: orderings project to their first root; E_1 is the
      solution-space component containing root 1.
    * orderings cover: n! = (number of components) * [E_f : X].
    * deck group of E_f has order [E_f : X].
    """
    ef = splitting_cover(m)
    sol = solution_cover(m)
    comp = next(c for c in sol.components if 1 in c)
    e1 = make_cover(len(comp), _restrict(sol.action, comp))
    pos = {p - 1: k for k, p in enumerate(comp)}
    proj = [pos[t[0] - 1] for t in ef.labels]
    z_y = cover_map_degree(ef, e1, proj)
    amb = ambient_cover(m)
    out = {
        "splitting_degree": ef.degree,
        "component_degree": e1.degree,
        "projection_degree": z_y,
        "tower_ok": ef.degree == z_y * e1.degree,
        "ambient_degree": amb.degree,
        "ambient_components": len(amb.components),
        "ambient_ok": amb.degree == len(amb.components) * ef.degree
        and all(len(c) == ef.degree for c in amb.components),
        "deck_order": deck_group_order(ef),
    }
    out["deck_ok"] = out["deck_order"] == ef.degree
    return out


# ---------------------------------------------------------------------------
# Galois correspondence

@dataclass(frozen=True, eq=False)
class CorrespondenceTable:
    group: PermGroup
    rows: tuple[dict, ...]
    covers: tuple[FiniteCover, ...]
    inclusions: tuple[tuple[int, int], ...]  # (small, big) subgroup row indices
    anti_monotone: bool
    index_identities: bool

    def to_json(self) -> dict:
        return {
            "group_order": self.group.order,
            "rows": list(self.rows),
            "inclusions": [[a + 1, b + 1] for a, b in self.inclusions],
            "anti_monotone": self.anti_monotone,
            "index_identities": self.index_identities,
        }

    def chain_degrees(self, chain: Sequence[int]) -> list[int]:
        return [self.covers[i].degree for i in chain]


def correspondence(m: MonodromyData, cap: int = DEFAULT_LATTICE_CAP) -> CorrespondenceTable:
    """Subgroups H of the monodromy group paired with their covers G/H.

    For every inclusion H < J the natural map gH -> gJ is checked to be an
    equivariant covering of degree [J:H] = deg(G/H) / deg(G/J).
    """
    G = generate(m.gens, degree=m.n)
    lat = subgroups(G, cap=cap)
    labels = []
    covers = []
    rows = []
    for i in range(len(lat)):
        H = lat.elements(i)
        label, reps = left_cosets(G, H)
        act = [Permutation(tuple(label[g * r] for r in reps)) for g in m.gens]
        cov = make_cover(len(reps), act)
        labels.append((label, reps))
        covers.append(cov)
        rows.append({
            "subgroup": i + 1,
            "order": lat.order(i),
            "generators": [str(G.elements[k]) for k in lat.generators[i]],
            "cover_degree": cov.degree,
            "index": lat.index(i),
            "connected": cov.connected,
            "galois": cov.galois,
        })
    anti = True
    idx_ok = True
    for a, b in lat.inclusions:
        label_a, reps_a = labels[a]
        label_b, _ = labels[b]
        mapping = [label_b[r] for r in reps_a]
        try:
            deg = cover_map_degree(covers[a], covers[b], mapping)
        except InputError:
            anti = False
            continue
        if deg * lat.order(a) != lat.order(b) or covers[a].degree != deg * covers[b].degree:
            idx_ok = False
    return CorrespondenceTable(G, tuple(rows), tuple(covers), tuple(lat.inclusions), anti, idx_ok)


# ---------------------------------------------------------------------------
# factorisation

@dataclass(frozen=True)
class Factorization:
    factors: tuple[WeierstrassSpec, ...]
    orbits: tuple[tuple[int, ...], ...]
    exact: bool
    max_error: float

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    @property
    def degrees(self) -> list[int]:
        return [f.n for f in self.factors]


def _sampling_circle(d):
    """Circle concentric with the outer disc, between the holes and the rim,
    plus a point on it reachable by a straight hole-free segment."""
    c0 = d.outer.center
    inner = max((abs(h.center - c0) + h.radius for h in d.holes), default=0.0)
    rho = (d.outer.radius + inner) / 2 if d.holes else d.outer.radius / 2
    b = d.basepoint
    first = float(np.angle(b - c0)) if b != c0 else 0.0
    for k in range(32):
        q = c0 + rho * np.exp(1j * (first + 2 * np.pi * k / 32))
        if all(_segment_point_distance(b, q, h.center) >= h.radius + d.margin for h in d.holes):
            return c0, rho, complex(q)
    raise InterpolationFailure("no straight route from the basepoint to the sampling circle")


def _fit(values: np.ndarray, bound: int, what: str) -> np.ndarray:
    """Coefficients in u of a polynomial sampled at the K-th roots of unity."""
    K = values.size
    beta = np.fft.fft(values) / K
    scale = max(1.0, float(np.max(np.abs(beta))))
    tail = np.abs(beta[bound + 1:])
    if tail.size and tail.max() > 1e-9 * scale:
        raise InterpolationFailure(
            f"{what} is not a polynomial of degree <= {bound} (tail {tail.max():.2e})")
    return beta[: bound + 1]


def _shift_scale(beta: np.ndarray, c0: complex, rho: float) -> list[complex]:
    """Expand sum beta_j ((x - c0)/rho)^j into monomials of x."""
    out = np.zeros(beta.size, dtype=complex)
    for j, b in enumerate(beta):
        # ((x - c0)/rho)^j = rho^-j sum_k C(j,k) x^k (-c0)^(j-k)
        for k in range(j + 1):
            out[k] += b * (rho ** -j) * _binom(j, k) * (-c0) ** (j - k)
    return [complex(v) for v in out]


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def _clean(c: complex, scale: float) -> complex:
    re = c.real if abs(c.real) > 1e-12 * scale else 0.0
    im = c.imag if abs(c.imag) > 1e-12 * scale else 0.0
    return complex(re, im)


def _zpoly_of(spec: WeierstrassSpec) -> list[PolyX]:
    one = PolyX.constant(1, spec.kind) if spec.kind == "exact" else PolyX.floating([1.0])
    return list(spec.coeffs) + [one]


def factor(f: WeierstrassSpec, m: MonodromyData | None = None, degree_bound: int | None = None,
           den_bounds: Sequence[int] = (10, 100, 1000, 10_000, 1_000_000)) -> Factorization:
    """One monic factor per monodromy orbit.

    The elementary symmetric functions of each orbit are continued around a
    circle in the domain and fitted by polynomials in x via the FFT.  Exact
    inputs get rationalised factors when their product reproduces ``f``
    exactly; otherwise the float factors are returned with the product error.
    """
    if m is None:
        m = monodromy(f)
    G = PermGroup(f.n, m.gens, ())
    orbs = orbits(G)
    if degree_bound is None:
        degree_bound = max(1, f.n * f.max_x_degree)
    d = f.domain
    c0, rho, q = _sampling_circle(d)
    K = 64
    while K < 4 * (degree_bound + 1):
        K *= 2
    fib = track_path(f, Path(d.basepoint, (Segment.line(d.basepoint, q),)), m.base).end
    theta0 = float(np.angle(q - c0))
    samples = []
    z = fib
    for k in range(K):
        samples.append(z.array())
        arc = Segment.arc(c0, rho, theta0 + 2 * np.pi * k / K, 2 * np.pi / K)
        z = track_path(f, Path(arc.start, (arc,)), RootFiber(arc.start, z.roots)).end
    samples = np.array(samples)  # K x n, row k at theta0 + 2 pi k / K
    # reindex so that sample k sits at c0 + rho * w^k, w = exp(2 pi i / K)
    shift = np.exp(1j * theta0)

    # single-valuedness of each orbit's symmetric functions around every generator
    for j in range(d.m):
        end = track_path(f, generator_loop(d, j + 1), m.base).end.array()
        for orb in orbs:
            idx = [i - 1 for i in orb]
            if not np.allclose(np.poly(end[idx]), np.poly(m.base.array()[idx]), atol=1e-8, rtol=1e-8):
                raise InterpolationFailure(f"orbit {orb} is not invariant around hole {j + 1}")

    float_factors = []
    for orb in orbs:
        idx = [i - 1 for i in orb]
        polys = np.array([np.poly(row[idx]) for row in samples])  # highest first
        coeffs = []
        for i in range(len(idx)):
            vals = polys[:, len(idx) - i]
            beta = _fit(vals, degree_bound, f"coefficient a_{i} of the orbit {orb} factor")
            # sample k is at c0 + rho*shift*w^k; absorb the rotation into rho
            beta = beta * shift ** -np.arange(beta.size)
            xc = _shift_scale(beta, c0, rho)
            sc = max(1.0, max(abs(v) for v in xc))
            coeffs.append(PolyX.floating([_clean(v, sc) for v in xc]))
        float_factors.append(coeffs)

    if f.kind == "exact":
        for bound in den_bounds:
            ex = [[PolyX.exact([rationalize_value(c, bound) for c in p.coeffs]) for p in fac]
                  for fac in float_factors]
            prod = [PolyX.constant(1, "exact")]
            for fac in ex:
                prod = zpoly_mul(prod, fac + [PolyX.constant(1, "exact")])
            if prod == _zpoly_of(f):
                facs = tuple(f.with_coeffs(fac) for fac in ex)
                return Factorization(facs, tuple(orbs), True, 0.0)
    prod = [PolyX.floating([1.0])]
    for fac in float_factors:
        prod = zpoly_mul(prod, fac + [PolyX.floating([1.0])])
    ref = [p.to_float() for p in _zpoly_of(f)]
    err = 0.0
    for a, b in zip(prod, ref):
        diff = (a - b).as_array()
        if diff.size:
            err = max(err, float(np.max(np.abs(diff))))
    if err >= 1e-8:
        raise ResidualTooLarge(f"product of factors differs from f by {err:.3e}")
    facs = tuple(WeierstrassSpec(tuple(fac), d, f.options) for fac in float_factors)
    return Factorization(facs, tuple(orbs), False, err)


# ---------------------------------------------------------------------------
# pullback along y -> y^k

def pullback_power(f: WeierstrassSpec, k: int, m: MonodromyData | None = None):
    """Pull ``f`` back along ``y -> y^k`` and check the group embedding.

    Returns ``(f2, report)``; ``report["embeds"]`` is true when the lasso of
    the pulled-back annulus acts as the k-th power of the original generator
    and the new group is a subgroup of the old one.
    """
    d = f.domain
    if k < 1:
        raise InputError("k must be >= 1")
    if d.m != 1 or d.outer.center != 0 or d.holes[0].center != 0:
        raise InputError("pullback_power needs the annulus model centred at 0")
    R, r = d.outer.radius, d.holes[0].radius
    R2, r2 = R ** (1 / k), r ** (1 / k)
    b2 = complex(d.basepoint) ** (1 / k)
    margin2 = min(0.1 * r2, (R2 - abs(b2)) / 2, (abs(b2) - r2) / 4)
    d2 = build_domain(Disc(0, R2), [Disc(0, r2)], b2, margin=margin2)
    f2 = WeierstrassSpec(tuple(c.compose_power(k) for c in f.coeffs), d2, f.options)
    m1 = m or monodromy(f)
    m2 = monodromy(f2)
    g1 = m1.gens[0]
    g2 = m2.gens[0]
    # both base fibers solve the same polynomial, so they coincide up to rounding
    same_base = np.allclose(m1.base.array(), m2.base.array(), atol=1e-9)
    G1 = generate(m1.gens, degree=f.n)
    G2 = generate(m2.gens, degree=f.n)
    report = {
        "k": k,
        "g1": str(g1),
        "g2": str(g2),
        "g1_pow_k": str(g1 ** k),
        "order_f1": G1.order,
        "order_f2": G2.order,
        "same_base_fiber": bool(same_base),
        "embeds": bool(same_base and g2 == g1 ** k and all(p in G1 for p in G2.elements)),
    }
    return f2, report
