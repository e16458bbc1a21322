import numpy as np
import pytest

from semigalois import kernels
from semigalois.domain import Disc, Path, build_domain, generator_loop
from semigalois.errors import AmbiguousMatch, InputError, RootCollision, WeierstrassViolation
from semigalois.perm import Permutation, generate
from semigalois.tracking import (
    TrackerOptions,
    check_weierstrass,
    match_fibers,
    monodromy,
    roots_at,
    track_path,
    track_word,
)

from _util import (
    annulus,
    fixed_step_track,
    oracle_perm,
    reducible_example,
    s3_example,
    spec,
    z_power_minus_x,
)


def test_roots_at_is_sorted_and_accurate():
    f = z_power_minus_x(3)
    fib = roots_at(f, 1.9)
    z = fib.array()
    assert np.allclose(z ** 3, 1.9)
    keys = [(round(v.real, 9), round(v.imag, 9)) for v in z]
    assert keys == sorted(keys)


def test_roots_at_rejects_collision():
    f = z_power_minus_x(2)
    with pytest.raises(RootCollision):
        roots_at(f, 0.0)


def test_match_fibers():
    assert match_fibers([0, 1, 2j], [2j, 0, 1]) == Permutation((1, 2, 0))
    with pytest.raises(AmbiguousMatch):
        match_fibers([0.5, 10], [0, 1])


def test_check_weierstrass():
    assert check_weierstrass(z_power_minus_x(2)) == pytest.approx(2.0)
    # z^2 - x on a disc containing 0
    f = spec([[0, -1], []], build_domain(Disc(0, 2), [Disc(1, 0.3)]))
    with pytest.raises(WeierstrassViolation):
        check_weierstrass(f)
    # repeated factor: discriminant identically zero
    g = spec([[0, 0, 1], [0, -2], []], annulus())
    with pytest.raises(WeierstrassViolation):
        check_weierstrass(g)


@pytest.mark.parametrize("make", [lambda: z_power_minus_x(3), reducible_example, s3_example])
def test_track_matches_fixed_step_oracle(make):
    f = make()
    base = roots_at(f, f.domain.basepoint)
    for j in range(1, f.domain.m + 1):
        loop = generator_loop(f.domain, j)
        res = track_path(f, loop, base)
        z = fixed_step_track(f, loop, base.roots)
        assert np.allclose(res.end.array(), z, atol=1e-8)
        assert res.perm == oracle_perm(z, base.roots)
        assert res.max_residual < 1e-10


def test_open_path_tracks_to_other_fiber():
    f = s3_example()
    path = Path(0j, (generator_loop(f.domain, 1).segments[0],))
    res = track_path(f, path, roots_at(f, 0j))
    assert res.perm is None
    want = roots_at(f, path.end).array()
    assert sorted(np.round(res.end.array(), 8), key=lambda v: (v.real, v.imag)) == \
        sorted(np.round(want, 8), key=lambda v: (v.real, v.imag))


def test_start_fiber_must_match_path():
    f = z_power_minus_x(2)
    with pytest.raises(InputError):
        track_path(f, generator_loop(f.domain, 1), roots_at(f, 1.0))


def test_loop_then_inverse_and_composition():
    f = s3_example()
    base = roots_at(f, f.domain.basepoint)
    g1 = track_word(f, [1], base).perm
    g2 = track_word(f, [2], base).perm
    assert track_word(f, [1, -1], base).perm.is_identity()
    assert track_word(f, [1, 2], base).perm == g2 * g1
    assert track_word(f, [-2], base).perm == g2.inverse()


def test_monodromy_cyclic_and_s3():
    m = monodromy(z_power_minus_x(4))
    assert len(m.gens) == 1 and m.gens[0].cycle_type() == (4,)
    m3 = monodromy(s3_example())
    assert generate(m3.gens).order == 6
    assert all(g.cycle_type() == (2, 1) for g in m3.gens)


def test_monodromy_threads_give_same_answer():
    f = s3_example()
    assert monodromy(f, workers=2).gens == monodromy(f).gens


def test_backends_agree():
    f = reducible_example()
    py = kernels.get_backend("python")
    a = monodromy(f, backend=py)
    b = monodromy(f)
    assert a.gens == b.gens
    assert a.report["accepted_steps"] == b.report["accepted_steps"]


def test_tracker_options_validation():
    with pytest.raises(InputError):
        TrackerOptions.from_json({"bogus": 1})
    with pytest.raises(InputError):
        TrackerOptions(min_step=-1)
    opts = TrackerOptions.from_json({"residual_tol": 1e-12})
    assert TrackerOptions.from_json(opts.to_json()) == opts
