"""Move float coefficients into Q(i)[x] without changing the monodromy group.

The linear homotopy between the old and new coefficient vectors is sampled
on an (x, t) grid; it must keep every fiber square-free over the domain, and
the monodromy at both ends must agree after matching the base fibers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundExhausted, GroupMismatch, HomotopyLeavesB, InputError, WeierstrassViolation
from .numerics import PolyX, format_polyx, rationalize_value
from .perm import generate, identify, orbits
from .tracking import MonodromyData, WeierstrassSpec, check_weierstrass, match_fibers, monodromy

__all__ = [
    "HomotopyReport",
    "approximate_coeffs",
    "verify_homotopy",
    "emit_function_field_poly",
    "rationalize_spec",
]


@dataclass
class HomotopyReport:
    min_disc: float
    deviations: list[float]
    group0: dict
    group1: dict
    matching: str
    verdict: str
    den_bound: int | None = None
    t_steps: int = 64

    def to_json(self) -> dict:
        return {
            "min_disc": self.min_disc,
            "deviations": self.deviations,
            "group_t0": self.group0,
            "group_t1": self.group1,
            "matching": self.matching,
            "verdict": self.verdict,
            "den_bound": self.den_bound,
            "t_steps": self.t_steps,
        }


def _group_summary(m: MonodromyData) -> dict:
    G = generate(m.gens, degree=m.n)
    return {
        "order": G.order,
        "generators": [str(g) for g in m.gens],
        "identification": identify(G),
        "orbit_sizes": sorted(len(o) for o in orbits(G)),
    }


def rationalize_spec(f: WeierstrassSpec, den_bound: int) -> WeierstrassSpec:
    """Every coefficient of every a_i replaced by its best Gaussian rational."""
    if f.kind == "exact":
        return f
    cs = tuple(PolyX.exact([rationalize_value(c, den_bound) for c in p.coeffs]) for p in f.coeffs)
    return f.with_coeffs(cs)


def _blend(f0: WeierstrassSpec, f1: WeierstrassSpec, t: float) -> WeierstrassSpec:
    cs = []
    for a, b in zip(f0.coeffs, f1.coeffs):
        cs.append(a.to_float() * (1 - t) + b.to_float() * t)
    return WeierstrassSpec(tuple(cs), f0.domain, f0.options)


def _deviations(f0: WeierstrassSpec, f1: WeierstrassSpec) -> list[float]:
    pts = f0.domain.sample_points(f0.options.density)
    out = []
    for a, b in zip(f0.coeffs, f1.coeffs):
        diff = (a.to_float() - b.to_float()).as_array()
        out.append(float(np.max(np.abs(np.polyval(diff[::-1], pts)))) if diff.size else 0.0)
    return out


def verify_homotopy(f0: WeierstrassSpec, f1: WeierstrassSpec, t_steps: int = 64,
                    raise_on_fail: bool = True) -> HomotopyReport:
    """Check that ``H(x,t) = (1-t) a(x) + t b(x)`` stays Weierstrass and keeps the group."""
    if f0.n != f1.n:
        raise InputError("homotopy endpoints have different degrees")
    if f0.domain != f1.domain:
        raise InputError("homotopy endpoints live on different domains")
    min_disc = float("inf")
    for t in np.linspace(0.0, 1.0, t_steps + 1):
        try:
            min_disc = min(min_disc, check_weierstrass(_blend(f0, f1, float(t))))
        except WeierstrassViolation as exc:
            raise HomotopyLeavesB(f"homotopy leaves the Weierstrass locus at t = {t:.4f}: {exc}",
                                  exc.x) from exc
    m0 = monodromy(f0)
    m1 = m0 if f1 is f0 else monodromy(f1)
    pi = match_fibers(m0.base.roots, m1.base.roots)
    same = all(g0.conjugate(pi) == g1 for g0, g1 in zip(m0.gens, m1.gens))
    report = HomotopyReport(
        min_disc=min_disc,
        deviations=_deviations(f0, f1),
        group0=_group_summary(m0),
        group1=_group_summary(m1),
        matching=str(pi),
        verdict="pass" if same else "fail",
        t_steps=t_steps,
    )
    if not same and raise_on_fail:
        raise GroupMismatch("monodromy differs at the two ends of the homotopy")
    return report


def approximate_coeffs(f: WeierstrassSpec, den_bound: int = 1000, max_bound: int = 1 << 24,
                       t_steps: int = 64) -> tuple[WeierstrassSpec, HomotopyReport]:
    """Rationalise ``f``, doubling the denominator bound until the homotopy check passes."""
    check_weierstrass(f)
    if f.kind == "exact":
        rep = verify_homotopy(f, f, t_steps)
        return f, rep
    bound = den_bound
    last: Exception | None = None
    while bound <= max_bound:
        g = rationalize_spec(f, bound)
        try:
            rep = verify_homotopy(f, g, t_steps)
        except (HomotopyLeavesB, GroupMismatch) as exc:
            last = exc
            bound *= 2
            continue
        rep.den_bound = bound
        return g, rep
    raise BoundExhausted(f"no denominator bound up to {max_bound} works: {last}")


def emit_function_field_poly(f: WeierstrassSpec, m: MonodromyData | None = None) -> str:
    """Human-readable statement of ``f`` over Q(i)(x) with its computed group."""
    if f.kind != "exact":
        raise InputError("emit_function_field_poly needs Gaussian-rational coefficients")
    if m is None:
        m = monodromy(f)
    G = generate(m.gens, degree=f.n)
    terms = [f"z^{f.n}"]
    for i in range(f.n - 1, -1, -1):
        c = f.coeffs[i]
        if c.is_zero():
            continue
        mono = "" if i == 0 else ("*z" if i == 1 else f"*z^{i}")
        terms.append(f"({format_polyx(c)}){mono}")
    lines = [
        "f(z) = " + " + ".join(terms),
        "coefficients in Q(i)[x]; base field W = Q(i)(x)",
        f"Galois group of the splitting field of f over Q(i)(x): {identify(G)}, order {G.order}",
        "monodromy generators: " + ", ".join(str(g) for g in m.gens),
        "orbits: " + " ".join("{" + ",".join(map(str, o)) + "}" for o in orbits(G)),
        "assumed (not verified): T[alpha_1..alpha_n] meets R exactly in T",
    ]
    return "\n".join(lines)
