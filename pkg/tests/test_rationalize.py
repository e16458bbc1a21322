from fractions import Fraction

import numpy as np
import pytest

from semigalois.errors import GroupMismatch, HomotopyLeavesB, InputError
from semigalois.numerics import GaussianRational
from semigalois.rationalize import (
    approximate_coeffs,
    emit_function_field_poly,
    rationalize_spec,
    verify_homotopy,
)
from _util import annulus, coefficient_margin, s3_example, spec, z_power_minus_x


def test_exact_input_is_unchanged_and_idempotent():
    f = s3_example()
    g, rep = approximate_coeffs(f)
    assert g is f and rep.verdict == "pass"
    assert rationalize_spec(f, 10) is f


def test_pi_becomes_355_over_113():
    f = spec([[0.0, -np.pi], []], annulus(), kind="float")
    g, rep = approximate_coeffs(f, den_bound=1000)
    assert g.kind == "exact"
    assert g.coeffs[0].coeffs[1] == GaussianRational(Fraction(-355, 113))
    assert rep.verdict == "pass"
    assert rep.group0["identification"] == rep.group1["identification"] == "C2"
    assert rep.deviations[0] < 2 * abs(np.pi - 355 / 113) + 1e-12


def test_rounding_recovers_exact_trinomial():
    f = s3_example()
    noisy = spec([[1e-7, 2.0000001], [-3.0000001], []], f.domain, kind="float")
    g, rep = approximate_coeffs(noisy, den_bound=10)
    assert [p.coeffs for p in g.coeffs] == [p.coeffs for p in f.coeffs]
    assert rep.group1["order"] == 6


def test_homotopy_passes_for_nearby_scalar():
    f0 = z_power_minus_x(2)
    f1 = spec([[0, "-101/100"], []], annulus())
    rep = verify_homotopy(f0, f1)
    assert rep.verdict == "pass" and rep.group0["order"] == rep.group1["order"] == 2


def test_crossing_homotopy_is_rejected():
    # the blend's branch point (1 - 2t) x + t = 0 sweeps from 0 through the annulus
    f0 = z_power_minus_x(2)
    f1 = spec([[-1, 1], []], annulus())
    with pytest.raises(HomotopyLeavesB):
        verify_homotopy(f0, f1)


def test_degree_mismatch_is_input_error():
    with pytest.raises(InputError):
        verify_homotopy(z_power_minus_x(3), z_power_minus_x(2))


def test_group_mismatch_is_reported(monkeypatch):
    import semigalois.rationalize as rz

    real = rz.monodromy
    calls = []

    def fake(f):
        m = real(f)
        calls.append(f)
        if len(calls) == 2:
            return rz.MonodromyData(m.base, tuple(g.inverse() for g in m.gens), m.report)
        return m

    monkeypatch.setattr(rz, "monodromy", fake)
    f0 = z_power_minus_x(3)
    f1 = spec([[0, "-101/100"], [], []], annulus())
    rep = verify_homotopy(f0, f1, raise_on_fail=False)
    assert rep.verdict == "fail"
    calls.clear()
    with pytest.raises(GroupMismatch):
        verify_homotopy(f0, f1)


def test_perturbations_below_coefficient_margin_pass():
    rng = np.random.default_rng(7)
    f = s3_example()
    eps = coefficient_margin(f, density=8)
    R = f.domain.outer.radius
    for _ in range(3):
        rows = []
        for p in f.coeffs:
            a = p.as_array()
            e = rng.normal(size=2) + 1j * rng.normal(size=2)
            e *= 0.99 * eps / (4 * f.n) / (abs(e[0]) + abs(e[1]) * R)
            rows.append(list(np.pad(a, (0, 2 - a.size)) + e))
        g = spec(rows, f.domain, kind="float")
        h, rep = approximate_coeffs(g)
        assert rep.verdict == "pass"
        assert verify_homotopy(f, g).verdict == "pass"


def test_emit_function_field_poly():
    text = emit_function_field_poly(s3_example())
    assert text.startswith("f(z) = z^3")
    assert "Galois group of the splitting field of f over Q(i)(x): S3, order 6" in text
    assert "assumed" in text
    with pytest.raises(InputError):
        emit_function_field_poly(spec([[0.0, -1.0], []], annulus(), kind="float"))
