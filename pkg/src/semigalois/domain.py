"""Planar base spaces: an outer disc minus disjoint hole discs, with lasso loops.

Loops around holes are "spider" lassos: a straight corridor from the
basepoint towards the hole centre, one full counterclockwise circle, and the
corridor back.  Blocked corridors are rejected, never rerouted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BasepointInHole,
    HoleOutsideOuter,
    InputError,
    OverlappingHoles,
    SpiderBlocked,
)

__all__ = [
    "Disc",
    "Domain",
    "Segment",
    "Path",
    "build_domain",
    "generator_loop",
    "loop_word",
    "validate_spider",
    "parse_word",
]


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise InputError(f"disc radius must be positive, got {self.radius}")

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "radius": self.radius}

    @classmethod
    def from_json(cls, d: dict) -> "Disc":
        c = d["center"]
        return cls(complex(c[0], c[1]), d["radius"])


@dataclass(frozen=True)
class Domain:
    """``X = outer - union(holes)``; build through :func:`build_domain`."""

    outer: Disc
    holes: tuple[Disc, ...]
    basepoint: complex
    margin: float

    @property
    def m(self) -> int:
        return len(self.holes)

    def lasso_radius(self, j: int) -> float:
        return self.holes[j].radius + 2 * self.margin

    def clearance(self, x: complex) -> float:
        """Signed distance from ``x`` to the boundary of X (negative outside)."""
        d = self.outer.radius - abs(x - self.outer.center)
        for h in self.holes:
            d = min(d, abs(x - h.center) - h.radius)
        return d

    def contains(self, x: complex, tol: float = 0.0) -> bool:
        return self.clearance(x) >= -tol

    def sample_points(self, density: int = 64) -> np.ndarray:
        """Boundary circles at ``density`` points each plus an interior grid."""
        pts = []
        ang = np.exp(2j * np.pi * np.arange(density) / density)
        for disc in (self.outer, *self.holes):
            pts.append(disc.center + disc.radius * ang)
        R = self.outer.radius
        g = np.linspace(-R, R, density)
        gx, gy = np.meshgrid(g, g)
        grid = (self.outer.center + gx + 1j * gy).ravel()
        keep = np.abs(grid - self.outer.center) <= R
        for h in self.holes:
            keep &= np.abs(grid - h.center) >= h.radius
        pts.append(grid[keep])
        pts.append(np.array([self.basepoint]))
        return np.concatenate(pts)

    def to_json(self) -> dict:
        return {
            "outer": self.outer.to_json(),
            "holes": [h.to_json() for h in self.holes],
            "basepoint": [self.basepoint.real, self.basepoint.imag],
            "margin": self.margin,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Domain":
        bp = d.get("basepoint")
        return build_domain(
            Disc.from_json(d["outer"]),
            [Disc.from_json(h) for h in d.get("holes", [])],
            None if bp is None else complex(bp[0], bp[1]),
            margin=d.get("margin"),
        )


def build_domain(outer: Disc, holes: Sequence[Disc] = (), basepoint: complex | None = None,
                 margin: float | None = None) -> Domain:
    holes = tuple(holes)
    for j, h in enumerate(holes):
        if abs(h.center - outer.center) + h.radius >= outer.radius:
            raise HoleOutsideOuter(f"hole {j + 1} is not strictly inside the outer disc")
    for j in range(len(holes)):
        for k in range(j + 1, len(holes)):
            a, b = holes[j], holes[k]
            if abs(a.center - b.center) <= a.radius + b.radius:
                raise OverlappingHoles(f"holes {j + 1} and {k + 1} overlap or touch")
    if margin is None:
        margin = 0.1 * min((h.radius for h in holes), default=0.1 * outer.radius)
    if basepoint is None:
        basepoint = outer.center + (outer.radius - 2 * margin)
    basepoint = complex(basepoint)
    for j, h in enumerate(holes):
        if abs(basepoint - h.center) <= h.radius:
            raise BasepointInHole(f"basepoint {basepoint} lies in hole {j + 1}")
    if abs(basepoint - outer.center) > outer.radius:
        raise InputError(f"basepoint {basepoint} lies outside the outer disc")
    return Domain(outer, holes, basepoint, float(margin))


# ---------------------------------------------------------------------------
# paths

@dataclass(frozen=True)
class Segment:
    """A line segment (``a`` -> ``b``) or a circular arc.

    Arcs are ``center + radius * exp(i*(theta0 + t*dtheta))`` for t in [0, 1].
    """

    kind: str
    a: complex = 0j
    b: complex = 0j
    center: complex = 0j
    radius: float = 0.0
    theta0: float = 0.0
    dtheta: float = 0.0

    @classmethod
    def line(cls, a: complex, b: complex) -> "Segment":
        return cls("line", a=complex(a), b=complex(b))

    @classmethod
    def arc(cls, center: complex, radius: float, theta0: float, dtheta: float) -> "Segment":
        return cls("arc", center=complex(center), radius=float(radius),
                   theta0=float(theta0), dtheta=float(dtheta))

    def point(self, t: float) -> complex:
        if self.kind == "line":
            return self.a + t * (self.b - self.a)
        return self.center + self.radius * cmath.exp(1j * (self.theta0 + t * self.dtheta))

    @property
    def start(self) -> complex:
        return self.a if self.kind == "line" else self.point(0.0)

    @property
    def end(self) -> complex:
        return self.b if self.kind == "line" else self.point(1.0)

    @property
    def length(self) -> float:
        if self.kind == "line":
            return abs(self.b - self.a)
        return abs(self.radius * self.dtheta)

    def reversed(self) -> "Segment":
        if self.kind == "line":
            return Segment.line(self.b, self.a)
        return Segment.arc(self.center, self.radius, self.theta0 + self.dtheta, -self.dtheta)


@dataclass(frozen=True)
class Path:
    origin: complex
    segments: tuple[Segment, ...] = ()
    closed: bool = False

    @property
    def start(self) -> complex:
        return self.origin

    @property
    def end(self) -> complex:
        return self.segments[-1].end if self.segments else self.origin

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)

    def reversed(self) -> "Path":
        return Path(self.end, tuple(s.reversed() for s in reversed(self.segments)), self.closed)

    def __add__(self, other: "Path") -> "Path":
        if abs(self.end - other.start) > 1e-12 * (1 + abs(self.end)):
            raise ValueError("paths do not share an endpoint")
        segs = self.segments + other.segments
        closed = abs(other.end - self.origin) <= 1e-12 * (1 + abs(self.origin))
        return Path(self.origin, segs, closed)

    def sample(self, per_segment: int = 64) -> np.ndarray:
        pts = [np.array([self.origin])]
        t = np.linspace(0.0, 1.0, per_segment + 1)[1:]
        for s in self.segments:
            pts.append(np.array([s.point(v) for v in t]))
        return np.concatenate(pts)


def _segment_point_distance(a: complex, b: complex, p: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d - p)


def _spider_problem(d: Domain, j: int) -> str | None:
    h = d.holes[j]
    rho = d.lasso_radius(j)
    b = d.basepoint
    if abs(b - h.center) <= rho:
        return f"basepoint is within the lasso circle of hole {j + 1}"
    u = (b - h.center) / abs(b - h.center)
    foot = h.center + rho * u
    if abs(h.center - d.outer.center) + rho > d.outer.radius - d.margin:
        return f"lasso circle of hole {j + 1} leaves the outer disc"
    if abs(b - d.outer.center) > d.outer.radius - d.margin + 1e-12:
        return "basepoint is closer than the margin to the outer boundary"
    for k, other in enumerate(d.holes):
        if k == j:
            continue
        if abs(other.center - h.center) - rho - other.radius < d.margin:
            return f"lasso circle of hole {j + 1} comes too close to hole {k + 1}"
        if _segment_point_distance(b, foot, other.center) < other.radius + d.margin:
            return f"corridor to hole {j + 1} is blocked by hole {k + 1}"
    return None


def validate_spider(d: Domain) -> list[dict]:
    """Per hole: whether the straight corridor from the basepoint is clear."""
    out = []
    for j in range(d.m):
        why = _spider_problem(d, j)
        out.append({"hole": j + 1, "ok": why is None, "reason": why or ""})
    return out


def generator_loop(d: Domain, j: int) -> Path:
    """Counterclockwise lasso around hole ``j`` (1-based)."""
    if not 1 <= j <= d.m:
        raise InputError(f"hole index {j} out of range 1..{d.m}")
    why = _spider_problem(d, j - 1)
    if why:
        raise SpiderBlocked(why)
    h = d.holes[j - 1]
    rho = d.lasso_radius(j - 1)
    b = d.basepoint
    u = (b - h.center) / abs(b - h.center)
    foot = h.center + rho * u
    theta0 = cmath.phase(u)
    segs = (
        Segment.line(b, foot),
        Segment.arc(h.center, rho, theta0, 2 * math.pi),
        Segment.line(foot, b),
    )
    return Path(b, segs, closed=True)


def parse_word(w: Iterable) -> tuple[int, ...]:
    """Accept ints (negative = inverse) or strings like ``"2^-1"``/``"-2"``."""
    out = []
    for letter in w:
        if isinstance(letter, str):
            s = letter.replace(" ", "")
            if s.endswith("^-1") or s.endswith("⁻¹"):
                s = "-" + s.split("^")[0].replace("⁻¹", "")
            letter = int(s)
        if letter == 0:
            raise InputError("generator index 0 is invalid")
        out.append(int(letter))
    return tuple(out)


def loop_word(d: Domain, w: Iterable) -> Path:
    """Concatenate lassos (and reversed lassos for negative letters)."""
    word = parse_word(w)
    path = Path(d.basepoint, (), closed=True)
    for letter in word:
        if abs(letter) > d.m:
            raise InputError(f"generator index {abs(letter)} out of range 1..{d.m}")
        g = generator_loop(d, abs(letter))
        path = path + (g if letter > 0 else g.reversed())
    return path
