"""Breadth-first closure of neighbour sets and the finite-type witnesses.

Each net interval is refined at its *event scale*, the largest ratio among
its generators: above that scale the words of every generation meeting its
interior are exactly its generators, so neither the endpoints inside it
nor its neighbour set change.  Refining at event scales therefore visits
every neighbour set that occurs at any generation.

Children of a net interval are determined by its neighbour set alone (in
the interval's normalized coordinates), so one witness per neighbour set
is expanded.  This is re-checked at run time on up to three witnesses per
state; a mismatch switches to exhaustive expansion and flags the graph.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from .exact import Scalar, scalar
from .ifs import IDENTITY, IFS, ONE, ZERO, Affine, Word, attractor_is_interval, event_ladder
from .net import NetInterval, interval_map, meets_attractor, root_interval
from .neighbour import NeighbourSet, neighbour_set

__all__ = [
    "Budget",
    "State",
    "Edge",
    "StateGraph",
    "Verdict",
    "child_step",
    "saturate",
    "e_from_graph",
    "e_direct",
    "n_of_gamma",
    "wsc_bound",
    "all_neighbours",
    "to_dot",
    "StateConsistencyError",
]

log = logging.getLogger(__name__)

WITNESSES_PER_STATE = 3
# the exhaustive fallback expands at most this many net intervals per allowed state
EXHAUSTIVE_FACTOR = 64


class StateConsistencyError(RuntimeError):
    """Two net intervals with equal neighbour sets refined differently."""


@dataclass(frozen=True)
class Budget:
    max_states: int = 10_000
    max_depth: int = 64
    min_scale: Optional[Scalar] = None  # defaults to r_min**20

    def __post_init__(self):
        if self.max_states <= 0 or self.max_depth <= 0:
            raise ValueError("budget limits must be positive")
        if self.min_scale is not None:
            object.__setattr__(self, "min_scale", scalar(self.min_scale))
            if not self.min_scale > 0:
                raise ValueError("min_scale must be positive")

    def scale_for(self, ifs: IFS) -> Scalar:
        if self.min_scale is not None:
            return self.min_scale
        r = ifs.r_min
        out = ONE
        for _ in range(20):
            out = out * r
        return out


def child_step(ifs: IFS, delta: NetInterval, *, interval: Optional[bool] = None) -> list[NetInterval]:
    """The net intervals of the next event scale contained in ``delta``, left to right."""
    if interval is None:
        interval = attractor_is_interval(ifs)
    event = max(abs(w.ratio) for w in delta.generators)
    words: list[Word] = []
    for w in delta.generators:
        if abs(w.ratio) != event:
            words.append(w)
            continue
        for j in range(1, ifs.k + 1):
            c = w.extend(ifs, j)
            lo, hi = c.image()
            if hi > delta.lo and lo < delta.hi:
                words.append(c)
    words.sort(key=lambda w: w.letters)
    cuts = {delta.lo, delta.hi}
    for w in words:
        for x in w.image():
            if delta.lo < x < delta.hi:
                cuts.add(x)
    pts = sorted(cuts)
    out = []
    for lo, hi in zip(pts, pts[1:]):
        gens = []
        for w in words:
            a, b = w.image()
            if a <= lo and hi <= b:
                gens.append(w)
        if gens and _child_meets(ifs, lo, hi, gens, interval):
            out.append(NetInterval(lo, hi, event, tuple(gens)))
    return out


def _child_meets(ifs: IFS, lo: Scalar, hi: Scalar, gens: list[Word], interval: bool) -> bool:
    # the attractor inside (lo, hi) is the union of the generators' images of it
    if interval:
        return True
    for w in gens:
        inv = w.map.inverse()
        u, v = inv(lo), inv(hi)
        if u > v:
            u, v = v, u
        if meets_attractor(ifs, (u, v), interval=False):
            return True
    return False


@dataclass
class State:
    index: int
    set: NeighbourSet
    witness: NetInterval
    layer: int
    extra_witnesses: list[NetInterval] = field(default_factory=list)

    @property
    def key(self) -> str:
        return self.set.key


class Edge(tuple):
    """``(parent, ordinal, placement, child)``; placement maps [0,1] onto the child
    inside the parent's normalized coordinates."""

    __slots__ = ()

    def __new__(cls, parent: int, ordinal: int, placement: Affine, child: int):
        return super().__new__(cls, (parent, ordinal, placement, child))

    parent = property(lambda self: self[0])
    ordinal = property(lambda self: self[1])
    placement = property(lambda self: self[2])
    child = property(lambda self: self[3])


@dataclass
class StateGraph:
    ifs: IFS
    states: list[State]
    edges: list[Edge]
    closed: bool
    frontier: list[NetInterval]
    growth: list[int]
    flagged: bool = False

    def by_key(self) -> dict[str, State]:
        return {s.key: s for s in self.states}

    def children_of(self, index: int) -> list[Edge]:
        return [e for e in self.edges if e.parent == index]

    @property
    def max_cardinality(self) -> int:
        return max(len(s.set) for s in self.states)


@dataclass(frozen=True)
class Verdict:
    fnc: str  # "closed" | "budget-exceeded"
    states: int
    still_growing: bool
    wsc: str  # "proved-via-fnc" | "evidence-only"
    max_neighbours: int
    gftc_co: str  # "proved-finite" | "unknown"
    e_size: Optional[int]
    wsc_bound_N: Optional[int]

    def __post_init__(self):
        if self.fnc == "closed":
            assert self.wsc == "proved-via-fnc" and self.gftc_co == "proved-finite"

    @property
    def closed(self) -> bool:
        return self.fnc == "closed"


def _placement(parent: NetInterval, child: NetInterval) -> Affine:
    return interval_map(parent).inverse().compose(interval_map(child))


def _expandable(delta: NetInterval, budget: Budget, min_scale: Scalar) -> bool:
    if any(len(w.letters) >= budget.max_depth for w in delta.generators):
        return False
    return max(abs(w.ratio) for w in delta.generators) >= min_scale


def saturate(ifs: IFS, budget: Optional[Budget] = None, *, workers: int = 1) -> tuple[StateGraph, Verdict]:
    """Discover all neighbour sets reachable from the root ``[0,1]``.

    ``workers > 1`` expands each breadth-first layer in a thread pool; the
    results are merged in layer order so numbering never depends on it.
    """
    budget = budget or Budget()
    min_scale = budget.scale_for(ifs)
    interval = attractor_is_interval(ifs)
    root = root_interval()
    states = [State(0, neighbour_set(root), root, 0)]
    index = {states[0].key: 0}
    edges: list[Edge] = []
    frontier: list[NetInterval] = []
    growth = [1]
    layer = [states[0]]
    full = False

    def expand(delta):
        if not _expandable(delta, budget, min_scale):
            return None
        return child_step(ifs, delta, interval=interval)

    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        depth = 0
        while layer:
            depth += 1
            mapper = pool.map if pool else map
            results = list(mapper(expand, [s.witness for s in layer]))
            nxt = []
            for pos, (state, kids) in enumerate(zip(layer, results)):
                if full or kids is None:
                    frontier.append(state.witness)
                    continue
                for ordinal, child in enumerate(kids):
                    vs = neighbour_set(child)
                    j = index.get(vs.key)
                    if j is None:
                        if len(states) >= budget.max_states:
                            full = True
                            frontier.extend(s.witness for s in layer[pos:])
                            break
                        j = len(states)
                        index[vs.key] = j
                        states.append(State(j, vs, child, depth))
                        nxt.append(states[j])
                    elif len(states[j].extra_witnesses) < WITNESSES_PER_STATE - 1 and child != states[j].witness:
                        states[j].extra_witnesses.append(child)
                    edges.append(Edge(state.index, ordinal, _placement(state.witness, child), j))
                if full:
                    break
            growth.append(len(nxt))
            layer = [] if full else nxt
            log.debug("layer %d: %d new states", depth, len(nxt))
    finally:
        if pool:
            pool.shutdown()

    graph = StateGraph(ifs, states, edges, not frontier, frontier, growth)
    if graph.closed:
        try:
            check_consistency(graph, budget, min_scale, interval)
        except StateConsistencyError as exc:
            log.warning("%s; falling back to exhaustive expansion", exc)
            graph = _exhaustive(ifs, budget, min_scale, interval)
    return graph, make_verdict(graph)


def check_consistency(graph: StateGraph, budget: Budget, min_scale: Scalar, interval: bool) -> int:
    """Expand the extra witnesses and compare with the recorded edges; returns checks done."""
    index = graph.by_key()
    expected = {}
    for e in graph.edges:
        expected.setdefault(e.parent, []).append((e.placement, e.child))
    done = 0
    for s in graph.states:
        for w in s.extra_witnesses:
            if not _expandable(w, budget, min_scale):
                continue
            got = []
            for child in child_step(graph.ifs, w, interval=interval):
                t = index.get(neighbour_set(child).key)
                if t is None:
                    raise StateConsistencyError(f"state {s.index}: witness {w.render()} has an unknown child")
                got.append((_placement(w, child), t.index))
            if got != expected.get(s.index, []):
                raise StateConsistencyError(f"state {s.index}: witness {w.render()} refines differently")
            done += 1
    return done


def _exhaustive(ifs: IFS, budget: Budget, min_scale: Scalar, interval: bool) -> StateGraph:
    root = root_interval()
    states = [State(0, neighbour_set(root), root, 0)]
    index = {states[0].key: 0}
    edges: list[Edge] = []
    frontier: list[NetInterval] = []
    seen_edges: set[Edge] = set()
    layer = [(0, root)]
    growth = [1]
    depth = 0
    expansions = 0
    while layer:
        depth += 1
        nxt = []
        new = 0
        for parent, delta in layer:
            if (
                not _expandable(delta, budget, min_scale)
                or len(states) >= budget.max_states
                or expansions >= EXHAUSTIVE_FACTOR * budget.max_states
            ):
                frontier.append(delta)
                continue
            expansions += 1
            for ordinal, child in enumerate(child_step(ifs, delta, interval=interval)):
                vs = neighbour_set(child)
                j = index.get(vs.key)
                if j is None:
                    j = len(states)
                    index[vs.key] = j
                    states.append(State(j, vs, child, depth))
                    new += 1
                e = Edge(parent, ordinal, _placement(delta, child), j)
                if e not in seen_edges:
                    seen_edges.add(e)
                    edges.append(e)
                nxt.append((j, child))
        growth.append(new)
        layer = nxt
    # never certifies closure: the run only stops at the budget
    return StateGraph(ifs, states, edges, False, frontier or [root], growth, flagged=True)


def make_verdict(graph: StateGraph) -> Verdict:
    M = graph.max_cardinality
    if graph.closed:
        E = e_from_graph(graph)
        return Verdict("closed", len(graph.states), False, "proved-via-fnc", M, "proved-finite", len(E),
                       wsc_bound(graph, graph.ifs))
    growing = any(graph.growth[-3:])
    return Verdict("budget-exceeded", len(graph.states), growing, "evidence-only", M, "unknown", None, None)


def all_neighbours(graph: StateGraph) -> set[Affine]:
    return {T for s in graph.states for T in s.set}


def e_from_graph(graph: StateGraph) -> set[Affine]:
    """``{T_i^{-1} o T_j}`` over pairs of neighbours sharing a neighbour set."""
    if not graph.closed:
        raise ValueError("the state graph is not closed")
    out = set()
    for s in graph.states:
        for Ti, Tj in product(s.set, repeat=2):
            out.add(Ti.inverse().compose(Tj))
    return out


def overlapping_pairs(maps: Iterable[Affine]) -> Iterable[tuple[Affine, Affine]]:
    """Unordered pairs of distinct maps whose open images of (0,1) intersect."""
    cyl = sorted(((f.image(), f) for f in maps), key=lambda t: t[0])
    for i, ((lo, hi), f) in enumerate(cyl):
        for (lo2, _), g in cyl[i + 1:]:
            if lo2 >= hi:
                break
            yield f, g


def e_direct(ifs: IFS, min_scale) -> set[Affine]:
    """Brute-force ``S_sigma^{-1} o S_tau`` over every generation down to ``min_scale``."""
    min_scale = scalar(min_scale)
    if not (ZERO < min_scale < ONE):
        raise ValueError("min_scale must lie in (0, 1)")
    out = {IDENTITY}
    for _, maps in event_ladder(ifs, min_scale):
        for f, g in overlapping_pairs(maps):
            out.add(f.inverse().compose(g))
            out.add(g.inverse().compose(f))
    return out


def n_of_gamma(gamma: Iterable[Affine]) -> set[Affine]:
    """``x -> (f3(x) - f2(v2)) / (f1(v1) - f2(v2))`` over ``f_i`` in gamma, ``v_i`` in {0,1}."""
    gamma = list(gamma)
    if not gamma:
        raise ValueError("gamma must be non-empty")
    values = {f(v) for f in gamma for v in (ZERO, ONE)}
    out = set()
    for p1, p2 in product(values, repeat=2):
        den = p1 - p2
        if not den:
            continue
        inv = den.reciprocal()
        for f3 in gamma:
            out.add(Affine(f3.L * inv, (f3.a - p2) * inv))
    return out


def wsc_bound(graph: StateGraph, ifs: IFS) -> int:
    """``ceil(4M / r_min)`` with ``M`` the largest neighbour-set size seen."""
    M = graph.max_cardinality
    if M < 1:
        raise ValueError("state graph has no neighbours")
    return (4 * M / ifs.r_min).ceil()


def to_dot(graph: StateGraph) -> str:
    lines = ["digraph neighbour_sets {", "  node [shape=box];"]
    for s in graph.states:
        label = f"{s.index}: " + s.set.key.replace('"', '\\"')
        lines.append(f'  s{s.index} [label="{label}"];')
    for e in graph.edges:
        lines.append(f'  s{e.parent} -> s{e.child} [label="{e.ordinal}: {e.placement.render()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
