from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semigalois.numerics import (
    GaussianRational,
    PolyX,
    discriminant_at,
    discriminant_of,
    format_gaussian,
    parse_gaussian,
    parse_scalar,
    poly_eval,
    rationalize_value,
)

from _util import annulus, disc_oracle, s3_example, spec

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
gaussians = st.builds(GaussianRational, fractions, fractions)


@given(gaussians, gaussians)
def test_gaussian_field_ops_match_complex(a, b):
    ca, cb = complex(a), complex(b)
    assert complex(a + b) == pytest.approx(ca + cb)
    assert complex(a * b) == pytest.approx(ca * cb)
    assert complex(a - b) == pytest.approx(ca - cb)
    if b:
        assert (a / b) * b == a
        assert complex(a / b) == pytest.approx(ca / cb)


@given(gaussians)
def test_format_parse_roundtrip(q):
    assert parse_gaussian(format_gaussian(q)) == q


@pytest.mark.parametrize("text,value", [
    ("3/4", GaussianRational(Fraction(3, 4))),
    ("-1/2+5/3 i", GaussianRational(Fraction(-1, 2), Fraction(5, 3))),
    ("0.25-2i", GaussianRational(Fraction(1, 4), Fraction(-2))),
    ("i", GaussianRational(Fraction(0), Fraction(1))),
    ("-i", GaussianRational(Fraction(0), Fraction(-1))),
])
def test_parse_gaussian(text, value):
    assert parse_gaussian(text) == value


def test_parse_scalar_kinds():
    assert isinstance(parse_scalar(3), GaussianRational)
    assert isinstance(parse_scalar("1/3"), GaussianRational)
    assert isinstance(parse_scalar([1, 2]), GaussianRational)
    assert parse_scalar(0.5) == 0.5 + 0j
    assert parse_scalar([0.5, 1.0]) == 0.5 + 1j
    with pytest.raises(ValueError):
        parse_scalar(True)
    with pytest.raises(ValueError):
        parse_gaussian("3 4 i")


def test_gaussian_power_and_division_by_zero():
    q = GaussianRational(Fraction(1), Fraction(1))
    assert q ** 2 == GaussianRational(Fraction(0), Fraction(2))
    assert q ** -1 * q == GaussianRational(Fraction(1))
    with pytest.raises(ZeroDivisionError):
        q / GaussianRational()


@given(st.lists(st.integers(-9, 9), max_size=5), st.lists(st.integers(-9, 9), max_size=5))
def test_polyx_mul_matches_numpy(a, b):
    p, q = PolyX.exact(a), PolyX.exact(b)
    got = (p * q).as_array()
    want = np.polynomial.polynomial.polymul(np.array(a or [0], float), np.array(b or [0], float))
    want = np.trim_zeros(want, "b")
    assert np.allclose(got, want)


def test_polyx_trims_and_evaluates():
    p = PolyX.exact([1, 2, 0, 0])
    assert p.degree == 1
    assert poly_eval(p, GaussianRational(Fraction(3))) == 7
    assert p(2.0) == 5
    assert PolyX.exact([]).is_zero()
    assert p.compose_power(3).coeffs == PolyX.exact([1, 0, 0, 2]).coeffs
    with pytest.raises(TypeError):
        p + PolyX.floating([1.0])


def test_discriminant_at_known_values():
    # z^2 + b z + c: b^2 - 4c; z^3 + p z + q: -4p^3 - 27q^2
    assert discriminant_at([GaussianRational(Fraction(3)), GaussianRational(Fraction(5))]) == 25 - 12
    p, q = 2.0, 0.5
    assert discriminant_at([q, p, 0.0]) == pytest.approx(-4 * p ** 3 - 27 * q ** 2)


def test_discriminant_exact_matches_root_product_oracle():
    f = s3_example()
    d = discriminant_of(f)
    assert [complex(c) for c in d.coeffs] == [108, 0, -108]
    for x in (0.3 + 0.2j, -1.7, 2j):
        assert complex(poly_eval(d, x)) == pytest.approx(disc_oracle(f, x), rel=1e-9)


def test_discriminant_float_matches_exact():
    rng = np.random.default_rng(3)
    for _ in range(5):
        rows = [[int(v) for v in rng.integers(-4, 5, size=3)] for _ in range(4)]
        f = spec(rows, annulus())
        g = spec([[float(v) for v in r] for r in rows], annulus(), kind="float")
        de, df = discriminant_of(f), discriminant_of(g)
        a, b = de.to_float().as_array(), df.as_array()
        assert a.size == b.size
        assert np.allclose(a, b, rtol=1e-9, atol=1e-9 * np.max(np.abs(a)))


def test_rationalize_value():
    assert rationalize_value(np.pi, 1000) == GaussianRational(Fraction(355, 113))
    assert rationalize_value(0.5 - 0.25j, 10) == GaussianRational(Fraction(1, 2), Fraction(-1, 4))
    with pytest.raises(ValueError):
        rationalize_value(1.0, 0)
