"""Gaussian-rational and complex-float scalars, polynomials in x, discriminants.

Two coefficient kinds are supported and never mixed inside one polynomial:

* ``"exact"`` -- :class:`GaussianRational`, elements of Q(i);
* ``"float"`` -- Python ``complex``.

Exact values are converted to ``complex`` lazily, at evaluation sites.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "GaussianRational",
    "PolyX",
    "poly_eval",
    "discriminant_of",
    "discriminant_at",
    "rationalize_value",
    "zpoly_mul",
    "parse_scalar",
]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        # Fraction already keeps lowest terms with a positive denominator
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(Fraction(v))
        if isinstance(v, str):
            return parse_gaussian(v)
        raise TypeError(f"cannot convert {type(v).__name__} to GaussianRational exactly")

    def __add__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        d = o.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("only integer powers")
        out = GaussianRational(Fraction(1))
        base = self if k >= 0 else out / self
        k = abs(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_gaussian(self)

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"


def _coerce_or_none(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational(Fraction(v))
    return None


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(q: GaussianRational) -> str:
    """Render as ``"p/q"`` or ``"p/q+r/s i"``."""
    if q.im == 0:
        return _fmt_fraction(q.re)
    sign = "-" if q.im < 0 else "+"
    return f"{_fmt_fraction(q.re)}{sign}{_fmt_fraction(abs(q.im))} i"


_NUM = r"[0-9]+(?:\.[0-9]*)?(?:[eE][-+]?[0-9]+)?(?:/[0-9]+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?:(?P<re>[-+]?\s*{_NUM})\s*)?"
    rf"(?:(?P<isign>[-+])?\s*(?P<im>{_NUM})?\s*\*?\s*(?P<i>[ij]))?\s*$"
)


def _parse_rational(s: str) -> Fraction:
    s = s.replace(" ", "")
    if "/" in s:
        num, den = s.split("/")
        return Fraction(num) / Fraction(den)
    return Fraction(s)


def parse_gaussian(s: str) -> GaussianRational:
    """Parse ``"3/4"``, ``"-1/2+5/3 i"``, ``"0.25-2i"``, ``"i"``, ``"-i"``."""
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and m.group("i") is None):
        raise ValueError(f"not a Gaussian rational: {s!r}")
    re_part = _parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("i"):
        im_part = _parse_rational(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("isign") == "-":
            im_part = -im_part
        elif m.group("isign") is None and m.group("re") is not None:
            # "3 i" parses the 3 as the real group; reinterpret
            if m.group("im") is None:
                im_part, re_part = re_part, Fraction(0)
            else:
                raise ValueError(f"missing sign between parts: {s!r}")
    return GaussianRational(re_part, im_part)


Scalar = Union[GaussianRational, complex]


def parse_scalar(v) -> Scalar:
    """JSON scalar -> exact or float value.

    Strings and ints are exact; floats and ``[re, im]`` pairs are float.
    """
    if isinstance(v, bool):
        raise ValueError("booleans are not coefficients")
    if isinstance(v, int):
        return GaussianRational(Fraction(v))
    if isinstance(v, str):
        return parse_gaussian(v)
    if isinstance(v, float):
        return _checked_complex(complex(v))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        if all(isinstance(t, int) and not isinstance(t, bool) for t in v):
            return GaussianRational(Fraction(v[0]), Fraction(v[1]))
        return _checked_complex(complex(float(v[0]), float(v[1])))
    raise ValueError(f"cannot parse coefficient {v!r}")


def _checked_complex(c: complex) -> complex:
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite value {c!r}")
    return c


@dataclass(frozen=True)
class PolyX:
    """Univariate polynomial in x, lowest degree first, trailing zeros trimmed."""

    coeffs: tuple
    kind: str = "float"

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown kind {self.kind!r}")
        cs = list(self.coeffs)
        if self.kind == "exact":
            cs = [GaussianRational.coerce(c) for c in cs]
        else:
            cs = [_checked_complex(complex(c)) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def exact(cls, coeffs: Iterable) -> "PolyX":
        return cls(tuple(coeffs), "exact")

    @classmethod
    def floating(cls, coeffs: Iterable) -> "PolyX":
        return cls(tuple(coeffs), "float")

    @classmethod
    def constant(cls, c, kind: str = "exact") -> "PolyX":
        return cls((c,), kind)

    @classmethod
    def x(cls, kind: str = "exact") -> "PolyX":
        one = GaussianRational(Fraction(1)) if kind == "exact" else 1.0
        zero = GaussianRational() if kind == "exact" else 0.0
        return cls((zero, one), kind)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _zero(self):
        return GaussianRational() if self.kind == "exact" else 0j

    def _check(self, other: "PolyX"):
        if self.kind != other.kind:
            raise TypeError("mixed exact/float polynomial arithmetic")

    def __add__(self, other: "PolyX") -> "PolyX":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self._zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return PolyX(tuple(u + v for u, v in zip(a, b)), self.kind)

    def __neg__(self) -> "PolyX":
        return PolyX(tuple(-c for c in self.coeffs), self.kind)

    def __sub__(self, other: "PolyX") -> "PolyX":
        return self + (-other)

    def __mul__(self, other) -> "PolyX":
        if not isinstance(other, PolyX):
            return PolyX(tuple(c * other for c in self.coeffs), self.kind)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PolyX((), self.kind)
        out = [self._zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            for j, v in enumerate(other.coeffs):
                out[i + j] = out[i + j] + u * v
        return PolyX(tuple(out), self.kind)

    __rmul__ = __mul__

    def __call__(self, x) -> complex:
        return poly_eval(self, x)

    def compose_power(self, k: int) -> "PolyX":
        """``p(x**k)``."""
        if k < 1:
            raise ValueError("k must be >= 1")
        z = self._zero()
        out = []
        for i, c in enumerate(self.coeffs):
            if i:
                out.extend([z] * (k - 1))
            out.append(c)
        return PolyX(tuple(out), self.kind)

    def to_float(self) -> "PolyX":
        if self.kind == "float":
            return self
        return PolyX(tuple(complex(c) for c in self.coeffs), "float")

    def as_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __str__(self):
        return format_polyx(self)


def format_polyx(p: PolyX, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        if p.kind == "exact":
            cs = format_gaussian(c)
            if c.im != 0 and c.re != 0:
                cs = f"({cs})"
        else:
            cs = _format_complex(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and cs in ("1", "(1+0j)"):
            terms.append(mono)
        elif mono and cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(cs + ("*" + mono if mono else ""))
    return " + ".join(terms).replace("+ -", "- ")


def _format_complex(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i)"


def poly_eval(p: PolyX, x) -> complex:
    """Horner evaluation, exact coefficients converted to complex first."""
    x = complex(x)
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * x + complex(c)
    return acc


# ---------------------------------------------------------------------------
# discriminants

def _det_exact(rows: list[list[GaussianRational]]) -> GaussianRational:
    """Determinant over Q(i) by Gaussian elimination with exact pivots."""
    m = [list(r) for r in rows]
    n = len(m)
    det = GaussianRational(Fraction(1))
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return GaussianRational()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = GaussianRational(Fraction(1)) / p
        for r in range(col + 1, n):
            if not m[r][col]:
                continue
            factor = m[r][col] * inv
            row_c = m[col]
            row_r = m[r]
            for k in range(col, n):
                row_r[k] = row_r[k] - factor * row_c[k]
    return det


def _sylvester(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of f, g given highest-degree-first coefficient lists."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def discriminant_at(tail: Sequence) -> Scalar:
    """Discriminant of the monic ``z^n + tail[n-1] z^{n-1} + ... + tail[0]``.

    ``tail`` is all-exact or all-complex. Computed as
    ``(-1)^{n(n-1)/2} Res(f, f')``.
    """
    n = len(tail)
    exact = all(isinstance(c, GaussianRational) for c in tail)
    if n == 1:
        return GaussianRational(Fraction(1)) if exact else 1 + 0j
    one = GaussianRational(Fraction(1)) if exact else 1 + 0j
    zero = GaussianRational() if exact else 0j
    f_hi = [one] + [tail[k] for k in range(n - 1, -1, -1)]
    df_hi = [one * n] + [tail[k] * k for k in range(n - 1, 0, -1)]
    syl = _sylvester(f_hi, df_hi, zero)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if exact:
        return _det_exact(syl) * sign
    return complex(np.linalg.det(np.array(syl, dtype=complex))) * sign


def _newton_interpolate(xs: list[Fraction], ys: list[GaussianRational]) -> list[GaussianRational]:
    """Exact interpolation through (xs, ys); returns monomial coefficients."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / GaussianRational(xs[i] - xs[i - j])
    coeffs = [GaussianRational()] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        shifted = [GaussianRational()] + coeffs[:-1]
        coeffs = [s - c * GaussianRational(xs[i]) for s, c in zip(shifted, coeffs)]
        coeffs[0] = coeffs[0] + dd[i]
    return coeffs


def discriminant_of(f) -> PolyX:
    """Discriminant of the monic polynomial ``f`` in z, as a polynomial in x.

    ``f`` needs a ``coeffs`` sequence of :class:`PolyX` (a_0 .. a_{n-1}).
    Evaluated at ``D + 1`` nodes (``D`` the degree bound) and interpolated:
    integer nodes with exact arithmetic, roots of unity with the FFT otherwise.
    """
    coeffs = list(f.coeffs)
    n = len(coeffs)
    kind = coeffs[0].kind if coeffs else "exact"
    if n <= 1:
        return PolyX.constant(1, kind) if kind == "exact" else PolyX.floating([1.0])
    dmax = max((c.degree for c in coeffs if not c.is_zero()), default=0)
    bound = max((2 * n - 2) * dmax, 0)
    if kind == "exact":
        xs = [Fraction(k) for k in range(bound + 1)]
        ys = []
        for xv in xs:
            tail = [_eval_exact(c, xv) for c in coeffs]
            ys.append(discriminant_at(tail))
        return PolyX.exact(_newton_interpolate(xs, ys))
    m = bound + 1
    nodes = np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.array([discriminant_at([poly_eval(c, xv) for c in coeffs]) for xv in nodes])
    # vals[k] = sum_j c_j w^{jk}; the forward transform sums against w^{-jk}
    cs = list(np.fft.fft(vals) / m)
    scale = max(1.0, float(np.max(np.abs(cs))))
    cs = [complex(c) if abs(c) > 1e-13 * scale else 0j for c in cs]
    return PolyX.floating(cs)


def _eval_exact(p: PolyX, x: Fraction) -> GaussianRational:
    acc = GaussianRational()
    xv = GaussianRational(x)
    for c in reversed(p.coeffs):
        acc = acc * xv + c
    return acc


def zpoly_mul(a: Sequence[PolyX], b: Sequence[PolyX]) -> list[PolyX]:
    """Multiply polynomials in z whose coefficients (lowest first) are PolyX."""
    kind = a[0].kind
    zero = PolyX((), kind)
    out = [zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = out[i + j] + u * v
    return out


def rationalize_value(c, den_bound: int) -> GaussianRational:
    """Closest Gaussian rational with both denominators at most ``den_bound``."""
    if den_bound < 1:
        raise ValueError("den_bound must be >= 1")
    c = complex(c)
    return GaussianRational(Fraction(c.real).limit_denominator(den_bound),
                            Fraction(c.imag).limit_denominator(den_bound))

