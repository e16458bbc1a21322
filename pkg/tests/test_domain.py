import numpy as np
import pytest

from semigalois.domain import (
    Disc,
    Domain,
    build_domain,
    generator_loop,
    loop_word,
    parse_word,
    validate_spider,
)
from semigalois.errors import (
    BasepointInHole,
    HoleOutsideOuter,
    InputError,
    OverlappingHoles,
    SpiderBlocked,
)


def winding_number(points, center):
    ang = np.unwrap(np.angle(np.asarray(points) - center))
    return (ang[-1] - ang[0]) / (2 * np.pi)


def three_holes():
    return build_domain(Disc(0, 3), [Disc(-1.5, 0.3), Disc(0, 0.3), Disc(1.5j, 0.3)], 1.5 - 1.5j)


def test_build_domain_rejects_bad_geometry():
    with pytest.raises(HoleOutsideOuter):
        build_domain(Disc(0, 1), [Disc(0.9, 0.2)])
    with pytest.raises(OverlappingHoles):
        build_domain(Disc(0, 3), [Disc(0, 0.5), Disc(0.8, 0.5)])
    with pytest.raises(BasepointInHole):
        build_domain(Disc(0, 3), [Disc(0, 0.5)], 0.1)
    with pytest.raises(InputError):
        build_domain(Disc(0, 1), [], 5.0)
    with pytest.raises(InputError):
        Disc(0, -1)


def test_defaults_and_json_roundtrip():
    d = build_domain(Disc(0, 2), [Disc(0, 0.5)])
    assert d.margin == pytest.approx(0.05)
    assert d.basepoint == pytest.approx(2 - 0.1)
    assert Domain.from_json(d.to_json()) == d


def test_sample_points_lie_in_domain():
    d = three_holes()
    pts = d.sample_points(32)
    assert all(d.contains(complex(p), tol=1e-12) for p in pts)
    assert not d.contains(0.05)


def test_lassos_wind_once_around_their_hole_only():
    d = three_holes()
    for j, h in enumerate(d.holes, start=1):
        loop = generator_loop(d, j)
        assert loop.closed and loop.start == loop.end == d.basepoint
        pts = loop.sample(400)
        assert all(d.clearance(complex(p)) >= d.margin - 1e-9 for p in pts)
        for k, other in enumerate(d.holes, start=1):
            w = winding_number(pts, other.center)
            assert round(w) == (1 if k == j else 0)
            assert abs(w - round(w)) < 1e-9


def test_reversed_loop_winds_backwards():
    d = three_holes()
    pts = generator_loop(d, 2).reversed().sample(400)
    assert round(winding_number(pts, 0)) == -1


def test_words():
    assert parse_word([1, "2^-1", "-3"]) == (1, -2, -3)
    with pytest.raises(InputError):
        parse_word([0])
    d = three_holes()
    path = loop_word(d, [1, -2])
    pts = path.sample(400)
    assert round(winding_number(pts, d.holes[0].center)) == 1
    assert round(winding_number(pts, d.holes[1].center)) == -1
    with pytest.raises(InputError):
        loop_word(d, [4])


def test_spider_blocked():
    # hole 2 sits on the straight corridor from the basepoint to hole 1
    d = build_domain(Disc(0, 4), [Disc(-2, 0.3), Disc(0, 0.3)], 2.5)
    report = validate_spider(d)
    assert not report[0]["ok"] and report[1]["ok"]
    with pytest.raises(SpiderBlocked):
        generator_loop(d, 1)
