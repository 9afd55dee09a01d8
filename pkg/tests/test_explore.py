from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ifsnet import explore
from ifsnet.explore import (
    Budget,
    all_neighbours,
    check_consistency,
    child_step,
    e_direct,
    e_from_graph,
    n_of_gamma,
    saturate,
    to_dot,
    wsc_bound,
)
from ifsnet.ifs import IDENTITY, IFS, Affine, attractor_is_interval, event_ladder, normalize_hull
from ifsnet.neighbour import NeighbourSet, neighbour_set
from ifsnet.net import net_intervals, root_interval

from conftest import CLOSED, system

T = Affine.of
FIVE = {
    "{1/1*x + 0/1}",
    "{4/3*x + 0/1}",
    "{4/1*x + -3/1; 3/1*x + 0/1}",
    "{3/2*x + -1/2}",
    "{1/1*x + 0/1; 3/1*x + 0/1}",
}


def bounds(ds):
    return [(d.lo, d.hi) for d in ds]


def test_child_step_examples():
    ex, cantor = system("four_maps"), system("cantor")
    kids = child_step(ex, root_interval())
    assert bounds(kids) == bounds(net_intervals(ex, 1))
    d = net_intervals(cantor, 1)[0]
    assert bounds(child_step(cantor, d)) == [(0, F(1, 9)), (F(2, 9), F(1, 3))]
    d = net_intervals(ex, 1)[3]
    kids = child_step(ex, d)
    assert all(k.generation == F(1, 4) for k in kids)
    assert {neighbour_set(k).key for k in kids} <= FIVE


@pytest.mark.parametrize("name", CLOSED)
def test_children_are_the_next_generation(name):
    ifs = system(name)
    for alpha, _ in event_ladder(ifs, ifs.r_min ** 2):
        for d in net_intervals(ifs, alpha):
            kids = child_step(ifs, d)
            nxt = max(abs(w.ratio) for w in d.generators)
            inside = [e for e in net_intervals(ifs, nxt) if d.lo <= e.lo and e.hi <= d.hi]
            assert bounds(kids) == bounds(inside)
            assert [neighbour_set(k) for k in kids] == [neighbour_set(e) for e in inside]


def test_saturate_examples(graphs):
    g, v = graphs["four_maps"]
    assert v.closed and v.states == 5 and {s.key for s in g.states} == FIVE
    assert (v.wsc, v.gftc_co, v.max_neighbours, v.wsc_bound_N) == ("proved-via-fnc", "proved-finite", 2, 32)
    g, v = graphs["cantor"]
    assert v.closed and [s.key for s in g.states] == ["{1/1*x + 0/1}"]
    g, v = graphs["golden"]
    assert v.closed and v.states < 100


@pytest.mark.parametrize("name", CLOSED)
def test_saturate_invariants(name, graphs):
    g, v = graphs[name]
    ifs = g.ifs
    known = g.by_key()
    assert g.closed and not g.frontier
    for s in g.states:
        assert s.key == neighbour_set(s.witness).key
        # closure is idempotent and placements do not overlap
        kids = child_step(ifs, s.witness)
        assert all(neighbour_set(k).key in known for k in kids)
        edges = g.children_of(s.index)
        assert len(edges) == len(kids)
        spans = sorted(e.placement.image() for e in edges)
        assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))
        assert spans[0][0] >= 0 and spans[-1][1] <= 1
    # the same run again, single-threaded and in a pool, numbers everything identically
    for workers in (1, 3):
        g2, v2 = saturate(ifs, workers=workers)
        assert v2 == v
        assert [s.key for s in g2.states] == [s.key for s in g.states]
        assert g2.edges == g.edges
    assert check_consistency(g, Budget(), Budget().scale_for(ifs), None) >= 0


@pytest.mark.parametrize("name", CLOSED)
def test_largest_neighbour_set_matches_states(name, graphs):
    g, v = graphs[name]
    ifs = g.ifs
    seen = max(
        len(neighbour_set(d)) for alpha, _ in event_ladder(ifs, ifs.r_min ** 4) for d in net_intervals(ifs, alpha)
    )
    assert seen == v.max_neighbours == g.max_cardinality


def test_budget_exceeded_on_stress_input():
    g, v = saturate(system("sqrt2_stress"), Budget(max_states=60))
    assert not v.closed and v.fnc == "budget-exceeded" and v.states == 60
    assert v.still_growing and v.wsc == "evidence-only" and v.gftc_co == "unknown"
    assert v.wsc_bound_N is None and v.e_size is None
    assert g.frontier
    with pytest.raises(ValueError):
        e_from_graph(g)


def test_depth_and_scale_limits_stop_the_search():
    ex = system("four_maps")
    _, v = saturate(ex, Budget(max_depth=1))
    assert not v.closed
    _, v = saturate(ex, Budget(min_scale=F(1, 2)))
    assert not v.closed
    for bad in ({"max_states": 0}, {"max_depth": -1}, {"min_scale": 0}):
        with pytest.raises(ValueError):
            Budget(**bad)


def test_inconsistent_witnesses_fall_back(monkeypatch):
    def broken(*args):
        raise explore.StateConsistencyError("forced")

    monkeypatch.setattr(explore, "check_consistency", broken)
    g, v = saturate(system("four_maps"), Budget(max_states=40))
    assert g.flagged and not v.closed
    assert {s.key for s in g.states} == FIVE


def test_e_from_graph_examples(graphs):
    assert e_from_graph(graphs["cantor"][0]) == {IDENTITY}
    E = e_from_graph(graphs["four_maps"][0])
    three, four = T(3), T(4, -3)
    assert three.inverse().compose(four) == T(F(4, 3), -1) and T(F(4, 3), -1) in E
    assert four.inverse().compose(three) == T(F(3, 4), F(3, 4)) and T(F(3, 4), F(3, 4)) in E
    for g, _ in graphs.values():
        assert IDENTITY in e_from_graph(g)


@pytest.mark.parametrize("name", CLOSED)
def test_e_direct_matches_graph(name, graphs):
    g, _ = graphs[name]
    D = e_direct(g.ifs, g.ifs.r_min ** 3)
    assert IDENTITY in D and D == e_from_graph(g)


def test_e_direct_examples():
    assert e_direct(system("cantor"), F(1, 27)) == {IDENTITY}
    with pytest.raises(ValueError):
        e_direct(system("cantor"), 1)


def test_n_of_gamma():
    assert n_of_gamma({IDENTITY}) == {T(1), T(-1, 1)}
    assert n_of_gamma({T(2, 1)}) == n_of_gamma({IDENTITY})
    gamma = {T(F(1, 3)), T(F(1, 4), F(1, 4)), T(-2, 5)}
    S = T(F(-7, 3), F(2, 9))
    assert n_of_gamma({S.compose(f) for f in gamma}) == n_of_gamma(gamma)
    assert len(n_of_gamma(gamma)) <= 8 * len(gamma) ** 3
    with pytest.raises(ValueError):
        n_of_gamma(set())


@pytest.mark.parametrize("name", CLOSED)
def test_neighbours_lie_in_n_of_e(name, graphs):
    g, _ = graphs[name]
    assert all_neighbours(g) <= n_of_gamma(e_from_graph(g))


def test_wsc_bound_examples(graphs):
    assert wsc_bound(graphs["cantor"][0], system("cantor")) == 12
    assert wsc_bound(graphs["four_maps"][0], system("four_maps")) == 32
    assert wsc_bound(graphs["golden"][0], system("golden")) == 13


def test_dot_export(graphs):
    g, _ = graphs["four_maps"]
    dot = to_dot(g)
    assert dot.startswith("digraph") and dot.count("->") == len(g.edges)
    assert 's2 [label="2: {4/1*x + -3/1; 3/1*x + 0/1}"];' in dot
    assert to_dot(saturate(system("four_maps"))[0]) == dot


small_systems = st.lists(
    st.tuples(st.sampled_from([F(1, 2), F(1, 3), F(2, 5), F(-1, 2), F(1, 4)]), st.integers(0, 12)),
    min_size=2, max_size=3, unique=True,
)


@settings(max_examples=40)
@given(small_systems)
def test_random_systems_obey_the_graph_invariants(pairs):
    try:
        ifs = normalize_hull(IFS.from_pairs([(L, F(a, 12)) for L, a in pairs]))
    except ValueError:  # a one-point attractor
        return
    g, v = saturate(ifs, Budget(max_states=40, max_depth=24))
    keys = [s.key for s in g.states]
    assert len(keys) == len(set(keys)) == v.states <= 40
    for s in g.states:
        assert s.key == neighbour_set(s.witness).key
    assert g.max_cardinality == max(len(s.set) for s in g.states)
    if v.closed:
        E = e_from_graph(g)
        assert IDENTITY in E
        assert all_neighbours(g) <= n_of_gamma(E)
        if attractor_is_interval(ifs):
            assert e_direct(ifs, ifs.r_min ** 2) <= E
