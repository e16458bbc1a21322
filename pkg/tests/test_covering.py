import itertools

import numpy as np
import pytest

from semigalois.covering import (
    ambient_cover,
    correspondence,
    cover_map_degree,
    deck_group_order,
    degree_tower,
    factor,
    make_cover,
    pullback_power,
    solution_cover,
    splitting_cover,
    splitting_deck_action,
)
from semigalois.domain import Disc, build_domain
from semigalois.errors import InputError
from semigalois.numerics import PolyX
from semigalois.perm import Permutation, generate
from semigalois.tracking import MonodromyData, RootFiber, monodromy

from _util import reducible_example, s3_example, spec, z_power_minus_x

P = Permutation.parse


def fake_monodromy(gens):
    """Monodromy data with a dummy fiber: the cover code only uses the action."""
    n = gens[0].degree
    return MonodromyData(RootFiber(0j, tuple(complex(k) for k in range(n))), tuple(gens), {})


def brute_deck_order(cover):
    """Oracle: count all fiber bijections commuting with every generator."""
    d = cover.degree
    count = 0
    for phi in itertools.permutations(range(d)):
        if all(phi[g(p)] == g(phi[p]) for g in cover.action for p in range(d)):
            count += 1
    return count


@pytest.mark.parametrize("gens", [
    ["(1 2 3)"],
    ["(1 2)", "(2 3)"],
    ["(1 2 3 4)"],
    ["(1 2)(3 4)", "(1 3)(2 4)"],
    ["(1 4)(2 3)"],
])
def test_splitting_cover_degree_is_group_order(gens):
    gs = [P(g, 4 if "4" in "".join(gens) else 3) for g in gens]
    m = fake_monodromy(gs)
    G = generate(gs)
    ef = splitting_cover(m)
    assert ef.degree == G.order
    assert ef.connected and ef.galois
    assert deck_group_order(ef) == G.order == brute_deck_order(ef)
    tower = degree_tower(m)
    assert tower["tower_ok"] and tower["ambient_ok"] and tower["deck_ok"]


def test_deck_action_commutes_with_monodromy():
    m = fake_monodromy([P("(1 2)", 3), P("(2 3)", 3)])
    ef = splitting_cover(m)
    for d in splitting_deck_action(ef):
        for g in ef.action:
            assert d * g == g * d
    assert generate(splitting_deck_action(ef)).order == 6


def test_solution_cover_components_are_orbits():
    m = fake_monodromy([P("(1 4)(2 3)", 4)])
    sol = solution_cover(m)
    assert sol.components == ((1, 4), (2, 3))
    assert not sol.connected
    assert ambient_cover(m).degree == 24


def test_non_galois_cover_has_small_deck_group():
    # S3 on three points: connected but not Galois, deck group trivial
    m = fake_monodromy([P("(1 2)", 3), P("(2 3)", 3)])
    sol = solution_cover(m)
    assert sol.connected and not sol.galois
    assert deck_group_order(sol) == 1 == brute_deck_order(sol)


def test_cover_map_degree_checks_equivariance():
    m = fake_monodromy([P("(1 2 3 4)", 4)])
    c4 = solution_cover(m)
    c2 = make_cover(2, [P("(1 2)", 2)])
    assert cover_map_degree(c4, c2, [0, 1, 0, 1]) == 2
    with pytest.raises(InputError):
        cover_map_degree(c4, c2, [0, 0, 1, 1])


def test_correspondence_is_anti_monotone_for_s3():
    m = fake_monodromy([P("(1 2)", 3), P("(1 2 3)", 3)])
    t = correspondence(m)
    assert len(t.rows) == 6
    assert t.anti_monotone and t.index_identities
    for row in t.rows:
        assert row["cover_degree"] == row["index"] and row["connected"]
    normal = {r["order"]: r["galois"] for r in t.rows if r["order"] in (1, 3, 6)}
    assert normal == {1: True, 3: True, 6: True}
    assert sum(1 for r in t.rows if r["order"] == 2 and not r["galois"]) == 3


def test_factor_reducible_exact():
    f = reducible_example()
    fac = factor(f)
    assert fac.exact and fac.degrees == [2, 2]
    got = {tuple(c.coeffs for c in p.coeffs) for p in fac.factors}
    want = {(PolyX.exact([0, -1]).coeffs, ()), (PolyX.exact([0, -2]).coeffs, ())}
    assert got == want


def test_factor_float_and_linear_factors():
    d = build_domain(Disc(0, 0.8), [Disc(0, 0.3)])
    # (z - 1)(z + 1)(z^2 - x) = z^4 - (x + 1) z^2 + x
    f = spec([[0, 1], [], [-1, -1], []], d)
    fac = factor(f)
    assert sorted(fac.degrees) == [1, 1, 2]
    g = spec([[0.0, 1.0], [], [-1.0, -1.0], []], d, kind="float")
    fg = factor(g)
    assert not fg.exact and fg.max_error < 1e-8


def test_factor_irreducible_is_itself():
    f = s3_example()
    fac = factor(f)
    assert len(fac) == 1 and fac.exact
    assert [c.coeffs for c in fac[0].coeffs] == [c.coeffs for c in f.coeffs]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pullback_power_embeds(k):
    f = z_power_minus_x(3)
    f2, rep = pullback_power(f, k)
    assert rep["embeds"]
    m = monodromy(f)
    assert rep["g2"] == str(m.gens[0] ** k)
    assert rep["order_f2"] == rep["order_f1"] // np.gcd(rep["order_f1"], k)


def test_pullback_needs_centered_annulus():
    with pytest.raises(InputError):
        pullback_power(s3_example(), 2)
