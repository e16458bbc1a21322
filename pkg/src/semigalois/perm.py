"""Permutations and finite permutation groups by element enumeration.

Points are 0-based internally; every textual form (cycle notation, one-line
images) is 1-based.  Composition is right-to-left: ``(p * q)(i) == p(q(i))``,
so the product of loop permutations "w1 then w2" is ``perm(w2) * perm(w1)``.
"""

from __future__ import annotations

import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import InputError, NotASubgroup, OrderCapExceeded

__all__ = [
    "Permutation",
    "PermGroup",
    "SubgroupLattice",
    "generate",
    "orbits",
    "subgroups",
    "coset_action",
    "left_cosets",
    "group_signature",
    "identify",
    "DEFAULT_ORDER_CAP",
    "DEFAULT_LATTICE_CAP",
]

DEFAULT_ORDER_CAP = 100_000
DEFAULT_LATTICE_CAP = 120


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Permutation":
        """From 1-based images."""
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """From 1-based cycles on ``{1..n}``."""
        imgs = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            for c in cyc:
                if not 0 <= c < n or c in seen:
                    raise InputError(f"bad cycle {cyc} for degree {n}")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a] = b
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, s: str, n: int | None = None) -> "Permutation":
        """Parse ``"(1 2)(3 4)"``, ``"()"`` or one-line ``"[2, 1, 4, 3]"``."""
        s = s.strip()
        if s.startswith("["):
            nums = [int(t) for t in re.findall(r"\d+", s)]
            return cls.from_one_line(nums)
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)+", s):
            raise InputError(f"cannot parse permutation {s!r}")
        cycles = [[int(t) for t in re.findall(r"\d+", c)]
                  for c in re.findall(r"\(([^)]*)\)", s)]
        top = max((max(c) for c in cycles if c), default=0)
        if n is None:
            n = top
        elif top > n:
            raise InputError(f"point {top} exceeds degree {n}")
        return cls.from_cycles([c for c in cycles if c], n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise InputError("degree mismatch")
        imgs = self.images
        return Permutation(tuple(imgs[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Permutation.identity(self.degree)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """``by * self * by^-1``: relabel points through ``by``."""
        return by * self * by.inverse()

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    @property
    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def one_line(self) -> list[int]:
        return [i + 1 for i in self.images]

    def __str__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def __repr__(self):
        return f"Permutation({self})"


def _sort_key(p: Permutation):
    return p.images


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[Permutation, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def index_of(self, p: Permutation) -> int:
        return self._index[p]

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def element_order_stats(self) -> dict[int, int]:
        return dict(sorted(Counter(p.order for p in self.elements).items()))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_order_stats) if self.elements else 1

    @cached_property
    def mult_table(self) -> list[list[int]]:
        idx = self._index
        return [[idx[a * b] for b in self.elements] for a in self.elements]

    def is_transitive(self) -> bool:
        return len(orbits(self)) <= 1

    def same_elements(self, other: "PermGroup") -> bool:
        return self.elements == other.elements


def generate(gens: Sequence[Permutation], cap: int = DEFAULT_ORDER_CAP,
             degree: int | None = None) -> PermGroup:
    """Breadth-first closure of ``gens`` under composition."""
    gens = tuple(gens)
    if degree is None:
        if not gens:
            raise InputError("degree required for an empty generator list")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise InputError("generators of different degrees")
    e = Permutation.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g * p
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                queue.append(q)
    return PermGroup(degree, gens, tuple(sorted(seen, key=_sort_key)))


def orbits(G: PermGroup) -> list[tuple[int, ...]]:
    """Orbit partition of ``{1..n}`` (1-based), sorted by smallest point."""
    parent = list(range(G.degree))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in G.generators:
        for i, j in enumerate(g.images):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(G.degree):
        groups.setdefault(find(i), []).append(i + 1)
    return [tuple(v) for _, v in sorted(groups.items())]


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    group: PermGroup
    subgroups: tuple[frozenset[int], ...]  # element indices into group.elements
    generators: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.subgroups)

    def order(self, i: int) -> int:
        return len(self.subgroups[i])

    def index(self, i: int) -> int:
        return self.group.order // len(self.subgroups[i])

    def elements(self, i: int) -> list[Permutation]:
        return [self.group.elements[k] for k in sorted(self.subgroups[i])]

    def contains(self, i: int, j: int) -> bool:
        """Subgroup ``j`` is contained in subgroup ``i``."""
        return self.subgroups[j] <= self.subgroups[i]

    @cached_property
    def inclusions(self) -> list[tuple[int, int]]:
        """Pairs ``(small, big)`` of proper containments."""
        out = []
        for a, A in enumerate(self.subgroups):
            for b, B in enumerate(self.subgroups):
                if a != b and A < B:
                    out.append((a, b))
        return out

    def as_subgroup(self, i: int) -> PermGroup:
        els = self.elements(i)
        gens = tuple(self.group.elements[k] for k in self.generators[i])
        return PermGroup(self.group.degree, gens, tuple(sorted(els, key=_sort_key)))


def _closure(table: list[list[int]], gens: Sequence[int], e: int) -> frozenset[int]:
    seen = {e}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        row_p = p
        for g in gens:
            q = table[g][row_p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return frozenset(seen)


def subgroups(G: PermGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """All subgroups, grown as joins of cyclic subgroups."""
    if G.order > cap:
        raise OrderCapExceeded(f"group order {G.order} exceeds lattice cap {cap}")
    table = G.mult_table
    e = G.index_of(Permutation.identity(G.degree))
    cyclic: dict[frozenset[int], int] = {}
    for g in range(G.order):
        c = _closure(table, [g], e)
        cyclic.setdefault(c, g)
    found: dict[frozenset[int], tuple[int, ...]] = {frozenset([e]): ()}
    for c, g in cyclic.items():
        found.setdefault(c, (g,) if c != frozenset([e]) else ())
    queue = deque(found)
    while queue:
        H = queue.popleft()
        gH = found[H]
        for C, g in cyclic.items():
            if C <= H:
                continue
            K = _closure(table, gH + (g,), e)
            if K not in found:
                found[K] = gH + (g,)
                queue.append(K)
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return SubgroupLattice(G, tuple(ordered), tuple(found[s] for s in ordered))


def left_cosets(G: PermGroup, H: Iterable[Permutation]) -> tuple[dict[Permutation, int], list[Permutation]]:
    """Label every element of G by its left coset gH; return labels and representatives."""
    H = list(H)
    Hset = set(H)
    if not Hset or any(h not in G for h in H):
        raise NotASubgroup("H is not a subset of G")
    if any(a * b not in Hset for a in H for b in H):
        raise NotASubgroup("H is not closed under composition")
    label: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for g in G.elements:
        if g in label:
            continue
        for h in H:
            label[g * h] = len(reps)
        reps.append(g)
    return label, reps


def coset_action(G: PermGroup, H: Iterable[Permutation],
                 gens: Sequence[Permutation] | None = None) -> list[Permutation]:
    """Left action of ``gens`` (default: G's generators) on the left cosets gH.

    Cosets are numbered by first appearance in G's sorted element list, so the
    coset ``H`` itself is point 1.
    """
    label, reps = left_cosets(G, H)
    count = len(reps)
    gens = G.generators if gens is None else tuple(gens)
    out = []
    for s in gens:
        out.append(Permutation(tuple(label[s * reps[c]] for c in range(count))))
    return out


# ---------------------------------------------------------------------------
# identification

def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _symmetric_stats(k: int, even_only: bool) -> tuple[tuple[int, int], ...]:
    stats: Counter = Counter()
    for part in _partitions(k):
        if even_only and sum(p - 1 for p in part) % 2:
            continue
        mult = Counter(part)
        size = math.factorial(k)
        for length, m in mult.items():
            size //= length ** m * math.factorial(m)
        stats[math.lcm(*part)] += size
    return tuple(sorted(stats.items()))


def _abelian_invariants(G: PermGroup) -> list[int]:
    """Invariant factors d1 | d2 | ... of an abelian group."""
    n = G.order
    orders = [p.order for p in G.elements]
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, int(p ** 0.5) + 1))]
    primary: dict[int, list[int]] = {}
    for p in primes:
        # |G[p^k]| = p^{sum_i min(k, e_i)}
        logs = []
        k = 0
        while True:
            k += 1
            cnt = sum(1 for o in orders if (p ** k) % o == 0 and _is_p_power(o, p))
            logs.append(round(math.log(cnt, p)))
            if k > 1 and logs[-1] == logs[-2]:
                break
        # number of cyclic factors with exponent >= k is logs[k-1] - logs[k-2]
        ge = [logs[0]] + [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        exps = []
        for kk in range(len(ge)):
            nxt = ge[kk + 1] if kk + 1 < len(ge) else 0
            exps += [kk + 1] * (ge[kk] - nxt)
        primary[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = [1] * width
    for p, exps in primary.items():
        for i, e in enumerate(exps):
            factors[i] *= p ** e
    return sorted(f for f in factors if f > 1)


def _is_p_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def identify(G: PermGroup) -> str:
    """Heuristic label from order, commutativity and element-order statistics.

    Returns one of ``"trivial"``, ``"C<n>"``, ``"C<p>^<k>"`` (elementary
    abelian), ``"C<a> x C<b> ..."``, ``"S<k>"``, ``"A<k>"``, ``"D<m>"``
    (dihedral of order 2m), ``"Q8"`` or ``"unidentified (order N)"``.
    """
    n = G.order
    if n == 1:
        return "trivial"
    stats = tuple(G.element_order_stats.items())
    if G.is_abelian:
        inv = _abelian_invariants(G)
        if len(inv) == 1:
            return f"C{n}"
        if len(set(inv)) == 1 and _is_p_power(inv[0], inv[0]) and all(
                inv[0] % q for q in range(2, inv[0])):
            return f"C{inv[0]}^{len(inv)}"
        return " x ".join(f"C{d}" for d in inv)
    for k in range(3, 9):
        if n == math.factorial(k) and stats == _symmetric_stats(k, False):
            return f"S{k}"
        if n == math.factorial(k) // 2 and stats == _symmetric_stats(k, True):
            return f"A{k}"
    m = n // 2
    if n % 2 == 0 and m >= 3:
        rot = next((p for p in G.elements if p.order == m), None)
        if rot is not None:
            cyc = {rot ** k for k in range(m)}
            if all(p.order == 2 for p in G.elements if p not in cyc):
                return f"D{m}"
    if n == 8 and dict(stats).get(2) == 1 and dict(stats).get(4) == 6:
        return "Q8"
    return f"unidentified (order {n})"


def group_signature(G: PermGroup) -> dict:
    """Isomorphism-invariant summary used to compare groups heuristically."""
    return {
        "order": G.order,
        "abelian": G.is_abelian,
        "element_orders": G.element_order_stats,
        "orbit_sizes": sorted(len(o) for o in orbits(G)),
    }
