"""Problem-spec JSON: a domain, a Weierstrass polynomial, tracker options, caps.

Layout::

    {"domain": {"outer": {...}, "holes": [...], "basepoint": [re, im]},
     "polynomial": {"degree": n, "coefficients": [a_0, ..., a_{n-1}]},
     "tracker": {...}, "caps": {"order": ..., "lattice": ...}}

Each ``a_i`` is a list of x-coefficients, lowest degree first.  Entries are
exact when given as integers, ``[int, int]`` pairs or strings such as
``"355/113"`` or ``"1/2-3 i"``; floats and float pairs make the whole
polynomial floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .domain import Domain
from .errors import InputError
from .numerics import GaussianRational, PolyX, format_gaussian, parse_scalar
from .perm import DEFAULT_LATTICE_CAP, DEFAULT_ORDER_CAP
from .tracking import TrackerOptions, WeierstrassSpec

__all__ = ["ProblemSpec", "spec_to_json", "spec_from_json", "load_problem"]

_TOP_KEYS = {"domain", "polynomial", "tracker", "caps"}
_CAP_KEYS = {"order", "lattice"}


@dataclass
class ProblemSpec:
    spec: WeierstrassSpec
    caps: dict = field(default_factory=lambda: {"order": DEFAULT_ORDER_CAP,
                                                "lattice": DEFAULT_LATTICE_CAP})

    @property
    def order_cap(self) -> int:
        return int(self.caps.get("order", DEFAULT_ORDER_CAP))

    @property
    def lattice_cap(self) -> int:
        return int(self.caps.get("lattice", DEFAULT_LATTICE_CAP))

    def to_json(self) -> dict:
        d = spec_to_json(self.spec)
        d["caps"] = dict(self.caps)
        return d

    @classmethod
    def from_json(cls, d) -> "ProblemSpec":
        if not isinstance(d, dict):
            raise InputError("problem spec must be a JSON object")
        extra = set(d) - _TOP_KEYS
        if extra:
            raise InputError(f"unknown top-level keys: {sorted(extra)}")
        caps = d.get("caps") or {}
        if not isinstance(caps, dict) or set(caps) - _CAP_KEYS:
            raise InputError(f"caps must be an object with keys {sorted(_CAP_KEYS)}")
        for k, v in caps.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InputError(f"cap {k!r} must be a positive integer")
        full = {"order": DEFAULT_ORDER_CAP, "lattice": DEFAULT_LATTICE_CAP}
        full.update(caps)
        return cls(spec_from_json(d), full)


def _scalar_json(c):
    if isinstance(c, GaussianRational):
        return format_gaussian(c)
    c = complex(c)
    return [float(c.real), float(c.imag)]


def spec_to_json(f: WeierstrassSpec) -> dict:
    return {
        "domain": f.domain.to_json(),
        "polynomial": {
            "degree": f.n,
            "coefficients": [[_scalar_json(c) for c in p.coeffs] for p in f.coeffs],
        },
        "tracker": f.options.to_json(),
    }


def spec_from_json(d: dict) -> WeierstrassSpec:
    try:
        domain = Domain.from_json(d["domain"])
        poly = d["polynomial"]
        n = poly["degree"]
        raw = poly["coefficients"]
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed problem spec: missing or invalid {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("polynomial degree must be a positive integer")
    if not isinstance(raw, list) or len(raw) != n:
        raise InputError(f"expected {n} coefficient lists (a_0 .. a_{n - 1})")
    try:
        parsed = [[parse_scalar(v) for v in row] for row in raw]
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad coefficient: {exc}") from exc
    exact = all(isinstance(v, GaussianRational) for row in parsed for v in row)
    kind = "exact" if exact else "float"
    if not exact:
        parsed = [[complex(v) for v in row] for row in parsed]
    coeffs = tuple(PolyX(tuple(row), kind) for row in parsed)
    try:
        opts = TrackerOptions.from_json(d.get("tracker"))
    except TypeError as exc:
        raise InputError(f"bad tracker options: {exc}") from exc
    return WeierstrassSpec(coeffs, domain, opts)


def load_problem(path: str) -> ProblemSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return ProblemSpec.from_json(data)
