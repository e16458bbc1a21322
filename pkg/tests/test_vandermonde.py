import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from semigalois.errors import DuplicateRoots, InputError, ToleranceExceeded
from semigalois.numerics import GaussianRational
from semigalois.perm import Permutation
from semigalois.vandermonde import (
    check_sign,
    delta,
    galois_residual,
    galois_system,
    index_order,
    log_abs_delta,
    permuted_roots,
    regular_sign,
    sigma_enum,
    v_matrix,
)


def v3_by_hand(a1, a2, a3):
    """The 6 x 6 matrix written out row by row."""
    rows = []
    for p, q, r in [(a1, a2, a3), (a2, a3, a1), (a3, a1, a2), (a1, a3, a2), (a2, a1, a3), (a3, a2, a1)]:
        rows.append([1, p, p * p, q, p * q, p * p * q])
    return np.array(rows, dtype=complex)


def random_roots(rng, n):
    return list(rng.normal(size=n) + 1j * rng.normal(size=n))


def test_index_order_and_phis_for_n3():
    assert index_order(3) == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    want = ["()", "(1 2 3)", "(1 3 2)", "(2 3)", "(1 2)", "(1 3)"]
    assert [str(p) for p in sigma_enum(3)] == want


@pytest.mark.parametrize("n", range(2, 8))
def test_sigma_enum_is_all_of_sn(n):
    phis = sigma_enum(n)
    assert len(phis) == len(set(phis)) == math.factorial(n)


def test_v3_entries_match_hand_written_matrix():
    rng = np.random.default_rng(0)
    a = random_roots(rng, 3)
    assert np.allclose(v_matrix(a), v3_by_hand(*a))


def test_small_closed_forms():
    rng = np.random.default_rng(1)
    a = random_roots(rng, 2)
    assert delta(a) == pytest.approx(a[1] - a[0], rel=1e-12)
    b = random_roots(rng, 3)
    want = -((b[1] - b[0]) * (b[2] - b[0]) * (b[2] - b[1])) ** 3
    assert delta(b) == pytest.approx(want, rel=1e-10)


def test_exact_delta_at_0_1_2():
    alpha = [GaussianRational(Fraction(k)) for k in range(3)]
    assert delta(alpha) == GaussianRational(Fraction(-8))
    assert delta([0.0, 1.0, 2.0]) == pytest.approx(-8)


def test_log_abs_delta_agrees_with_det():
    rng = np.random.default_rng(2)
    a = random_roots(rng, 4)
    assert log_abs_delta(a) == pytest.approx(math.log(abs(delta(a))), rel=1e-9)


def test_duplicate_roots_rejected_and_size_guard():
    with pytest.raises(DuplicateRoots):
        v_matrix([1.0, 1.0, 2.0])
    with pytest.raises(InputError):
        v_matrix(list(range(6)))


def induced_row_permutation_sign(alpha, sigma):
    """Oracle: match rows of V(sigma.alpha) to rows of V(alpha) and take the sign."""
    V0 = v_matrix(alpha)
    V1 = v_matrix(permuted_roots(alpha, sigma))
    images = [int(np.argmin(np.linalg.norm(V0 - row, axis=1))) for row in V1]
    return Permutation(tuple(images)).sign


@pytest.mark.parametrize("n", [2, 3, 4])
def test_regular_sign_matches_row_permutation(n):
    rng = np.random.default_rng(n)
    a = random_roots(rng, n)
    for images in itertools.permutations(range(n)):
        s = Permutation(images)
        assert regular_sign(s) == induced_row_permutation_sign(a, s)
        ratio = delta(permuted_roots(a, s)) / delta(a)
        assert ratio == pytest.approx(regular_sign(s), rel=1e-8)


def test_check_sign_n3_exact():
    alpha = [GaussianRational(Fraction(k), Fraction(k * k, 3)) for k in range(3)]
    for images in itertools.permutations(range(3)):
        rep = check_sign(alpha, Permutation(images))
        assert rep["sign_ok"] and rep["square_ok"]


def test_check_sign_reports_transposition_at_n4():
    a = random_roots(np.random.default_rng(5), 4)
    t = Permutation.from_cycles([[1, 2]], 4)
    rep = check_sign(a, t, raise_on_fail=False)
    assert rep["square_ok"] and rep["row_permutation_sign"] == 1
    with pytest.raises(ToleranceExceeded):
        check_sign(a, t)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_galois_system(n):
    a = random_roots(np.random.default_rng(10 + n), n)
    y = galois_system(a)
    assert galois_residual(a, y) < 1e-9
    if n == 2:
        # x = (1, a1), y solves y1 + a1 y2 = 1, y1 + a2 y2 = 0
        want = np.array([a[1], -1]) / (a[1] - a[0])
        assert np.allclose(y, want)
