from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ifsnet.ifs import IDENTITY, Affine, attractor_is_interval, event_ladder, lambda_alpha
from ifsnet.net import endpoints, interval_map, meets_attractor, net_intervals

from conftest import system

NAMES = ["cantor", "four_maps", "golden", "halves", "lau_ngai", "negative"]


def bounds(ds):
    return [(d.lo, d.hi) for d in ds]


def test_endpoint_examples():
    assert endpoints(system("four_maps"), 1) == [0, F(1, 4), F(1, 3), F(1, 2), F(3, 4), 1]
    assert endpoints(system("cantor"), 1) == [0, F(1, 3), F(2, 3), 1]
    for name in NAMES:
        ifs = system(name)
        for alpha in (1, ifs.r_min ** 2):
            pts = endpoints(ifs, alpha)
            assert pts[0] == 0 and pts[-1] == 1
            assert all(x < y for x, y in zip(pts, pts[1:]))


def test_meets_attractor_examples():
    cantor, ex = system("cantor"), system("four_maps")
    assert not meets_attractor(cantor, (F(1, 3), F(2, 3)))
    assert meets_attractor(cantor, (0, F(1, 3)))
    assert not meets_attractor(cantor, (F(7, 9), F(8, 9)))
    assert meets_attractor(cantor, (F(1, 3) - F(1, 100), F(2, 3)))
    assert meets_attractor(ex, (F(5, 17), F(6, 17)))
    with pytest.raises(ValueError):
        meets_attractor(cantor, (F(1, 2), F(1, 2)))
    # the fast path and the descent agree when the attractor is [0,1]
    assert meets_attractor(ex, (F(1, 7), F(1, 5)), interval=False)


def test_net_interval_examples():
    cantor, ex = system("cantor"), system("four_maps")
    assert bounds(net_intervals(cantor, 1)) == [(0, F(1, 3)), (F(2, 3), 1)]
    ds = net_intervals(ex, 1)
    assert bounds(ds) == [(0, F(1, 4)), (F(1, 4), F(1, 3)), (F(1, 3), F(1, 2)), (F(1, 2), F(3, 4)), (F(3, 4), 1)]
    assert [w.letters for w in ds[1].generators] == [(1,), (2,)]


def test_interval_map_examples():
    ex = system("four_maps")
    ds = net_intervals(ex, 1)
    assert interval_map(ds[1]) == Affine.of(F(1, 12), F(1, 4))
    root = net_intervals(system("cantor"), 1)
    assert interval_map(root[1]) == Affine.of(F(1, 3), F(2, 3))
    from ifsnet.net import root_interval

    assert interval_map(root_interval()) == IDENTITY


@pytest.mark.parametrize("name", NAMES)
def test_net_interval_invariants(name):
    ifs = system(name)
    rungs = [a for a, _ in event_ladder(ifs, ifs.r_min ** 3)]
    levels = [net_intervals(ifs, a) for a in rungs]
    for alpha, ds in zip(rungs, levels):
        words = list(lambda_alpha(ifs, alpha))
        pts = endpoints(ifs, alpha)
        for d in ds:
            assert pts.index(d.hi) == pts.index(d.lo) + 1
            assert {w.letters for w in d.generators} == {
                w.letters for w in words if w.image()[0] <= d.lo and d.hi <= w.image()[1]
            }
        # every cylinder meeting K inside contains a net interval
        for w in words:
            lo, hi = w.image()
            assert any(lo <= d.lo and d.hi <= hi for d in ds)
        if attractor_is_interval(ifs):
            assert ds[0].lo == 0 and ds[-1].hi == 1
            assert all(a.hi == b.lo for a, b in zip(ds, ds[1:]))
    # refinement: each finer interval sits in exactly one coarser one
    for coarse, fine in zip(levels, levels[1:]):
        for d in fine:
            assert sum(c.lo <= d.lo and d.hi <= c.hi for c in coarse) == 1


unit = st.builds(F, st.integers(0, 60), st.integers(1, 60)).filter(lambda x: x <= 1)


@pytest.mark.parametrize("name", ["cantor", "lau_ngai"])
@given(x=unit, y=unit, pad=unit)
def test_meets_attractor_monotone(name, x, y, pad):
    ifs = system(name)
    if x == y:
        return
    u, v = min(x, y), max(x, y)
    if meets_attractor(ifs, (u, v)):
        assert meets_attractor(ifs, (u - pad, v))
        assert meets_attractor(ifs, (u, v + pad))
