"""Explicit separation constants and exact checks of the separation inequalities."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exact import Scalar, scalar
from .explore import StateGraph, all_neighbours, e_from_graph
from .net import NetInterval
from .ifs import (
    IDENTITY,
    IFS,
    ONE,
    ZERO,
    Affine,
    Word,
    attractor_is_interval,
    check_alpha,
    event_ladder,
    generation_maps,
    parent,
)

__all__ = [
    "SeparationConstants",
    "BspRow",
    "BspReport",
    "delta",
    "endpoint_indices",
    "construct_phi",
    "g_set",
    "c_constants",
    "maps_above",
    "epsilon_constants",
    "EDelta",
    "e_delta",
    "check_bsp",
    "check_bsp_ladder",
    "gamma_equi",
    "wsc_ball_count",
    "compute_constants",
    "overlap_length",
    "min_gap",
    "BudgetError",
]


class BudgetError(RuntimeError):
    """A finite enumeration would exceed its configured size."""


def overlap_length(f: Affine, g: Affine) -> Scalar:
    """``m(f([0,1]) ∩ g([0,1]))``, zero when they are disjoint."""
    a, b = f.image()
    c, d = g.image()
    lo, hi = max(a, c), min(b, d)
    return hi - lo if hi > lo else ZERO


def min_gap(values: Iterable[Scalar]) -> Optional[Scalar]:
    """Smallest non-zero distance between two of ``values``."""
    pts = sorted(set(values))
    gaps = [y - x for x, y in zip(pts, pts[1:])]
    return min(gaps) if gaps else None


def delta(ifs: IFS) -> Scalar:
    dists = {abs(v - f(u)) for f in ifs.maps for u in (ZERO, ONE) for v in (ZERO, ONE)}
    dists.discard(ZERO)
    return ifs.r_min * min(dists)


@dataclass(frozen=True)
class SeparationConstants:
    delta: Scalar
    C_of_delta: Scalar
    c1: Scalar
    c2: Scalar
    c: Scalar
    eps1: Optional[Scalar] = None
    eps2: Optional[Scalar] = None
    eps: Optional[Scalar] = None

    def items(self) -> list[tuple[str, Optional[Scalar]]]:
        return [
            ("delta", self.delta),
            ("C_of_delta", self.C_of_delta),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c", self.c),
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("eps", self.eps),
        ]


# -- the word routine --------------------------------------------------------


def endpoint_indices(ifs: IFS) -> tuple[int, int]:
    """Indices ``i0, i1`` (1-based) with ``0 in S_i0([0,1])`` and ``1 in S_i1([0,1])``."""
    i0 = next(i for i, f in enumerate(ifs.maps, 1) if f.image()[0] == ZERO)
    i1 = next(i for i, f in enumerate(ifs.maps, 1) if f.image()[1] == ONE)
    return i0, i1


def _in_generation(ifs: IFS, w: Word, alpha: Scalar) -> bool:
    return bool(w.letters) and abs(w.ratio) < alpha <= abs(parent(ifs, w).ratio)


def construct_phi(ifs: IFS, sigma: Word, tau: Word, delta_: Scalar, alpha=None) -> tuple[Word, Word]:
    """Return ``(psi, phi)`` with ``psi in {sigma, tau}`` such that ``r_{psi phi} > 0``,
    ``|r_phi| >= delta * r_min**2`` and ``S_{psi phi}([0,1])`` lies in both cylinders.

    ``alpha`` is the common generation; by default the largest one containing both words.
    """
    delta_ = scalar(delta_)
    if alpha is None:
        alpha = min(abs(parent(ifs, sigma).ratio), abs(parent(ifs, tau).ratio))
    alpha = check_alpha(alpha)
    for w in (sigma, tau):
        if not _in_generation(ifs, w, alpha):
            raise ValueError(f"word {w.render()} is not in generation {alpha.render()}")
    overlap = overlap_length(sigma.map, tau.map)
    if overlap < delta_ * alpha:
        raise ValueError(f"overlap {overlap.render()} is below delta*alpha")
    # psi owns the right end d of the intersection
    psi = sigma if sigma.image()[1] <= tau.image()[1] else tau
    d = psi.image()[1]
    i0, i1 = endpoint_indices(ifs)
    run = psi
    while True:
        run = run.extend(ifs, i1 if run.ratio.sign() > 0 else i0)
        assert run.image()[1] == d
        if abs(run.ratio) <= delta_ * alpha:
            break
    if run.ratio.sign() < 0:
        neg = [j for j, f in enumerate(ifs.maps, 1) if f.L.sign() < 0]
        assert neg, "negative product without a negative map"
        run = run.extend(ifs, neg[0])
    phi = ifs.word(run.letters[len(psi.letters):])

    lo, hi = max(sigma.image()[0], tau.image()[0]), min(sigma.image()[1], tau.image()[1])
    a, b = run.image()
    assert run.ratio.sign() > 0
    assert abs(phi.ratio) >= delta_ * ifs.r_min ** 2
    assert lo <= a and b <= hi
    return psi, phi


# -- constants from the closed graph ----------------------------------------


def g_set(ifs: IFS, E: Iterable[Affine]) -> set[Affine]:
    """``{g^-1 o f o h : f in E; g, h in {Id, S_1..S_k}}``."""
    side = (IDENTITY,) + ifs.maps
    inv = [g.inverse() for g in side]
    return {gi.compose(f).compose(h) for f in E for gi in inv for h in side}


def c_constants(ifs: IFS, graph: StateGraph) -> tuple[Scalar, Scalar, Scalar]:
    if not graph.closed:
        raise ValueError("the state graph is not closed")
    c1 = min(abs(T.L).reciprocal() for T in all_neighbours(graph))
    G = g_set(ifs, e_from_graph(graph))
    c2 = min_gap(f(u) for f in G for u in (ZERO, ONE))
    if c2 is None:
        raise AssertionError("the endpoint values of G are all equal")
    return c1, c2, ifs.r_min * min(c1, c2)


def maps_above(ifs: IFS, threshold, limit: int = 500_000) -> set[Affine]:
    """Distinct ``S_psi`` over all words (empty included) with ``|r_psi| >= threshold``."""
    threshold = scalar(threshold)
    seen = {IDENTITY}
    todo = [IDENTITY]
    while todo:
        f = todo.pop()
        for g in ifs.maps:
            h = f.compose(g)
            if abs(h.L) >= threshold and h not in seen:
                seen.add(h)
                if len(seen) > limit:
                    raise BudgetError(f"more than {limit} maps with ratio >= {threshold.render()}")
                todo.append(h)
    return seen


def epsilon_constants(ifs: IFS, E_delta: Iterable[Affine]) -> tuple[Scalar, Scalar, Scalar]:
    if not attractor_is_interval(ifs):
        raise ValueError("the attractor is not [0,1]")
    words = sorted(maps_above(ifs, ifs.r_min ** 2), key=lambda f: f.image())
    eps1 = None
    for i, f in enumerate(words):
        _, hi = f.image()
        for g in words[i:]:
            if g.image()[0] >= hi:
                break
            m = overlap_length(f, g)
            if m and (eps1 is None or m < eps1):
                eps1 = m
    eps2 = None
    for f in g_set(ifs, E_delta):
        lo, hi = f.image()
        if hi > ZERO and lo < ONE:
            m = min(hi, ONE) - max(lo, ZERO)
            if eps2 is None or m < eps2:
                eps2 = m
    assert eps1 is not None and eps2 is not None
    return eps1, eps2, min(eps1, ifs.r_min * eps2)


@dataclass
class EDelta:
    """The finite set ``E_delta`` together with the data that certifies it.

    ``gamma`` is materialized; ``contains`` tests literal membership in
    ``{f^-1 o g : f, g in gamma}``.  ``effective`` keeps the members that can
    arise from a pair whose cylinders overlap by at least ``delta * alpha``.
    """

    delta: Scalar
    beta: Scalar
    base: NetInterval
    threshold: Scalar
    gamma: set[Affine]
    effective: set[Affine] = field(default_factory=set)

    def contains(self, h: Affine) -> bool:
        return any(f.compose(h) in self.gamma for f in self.gamma)


def e_delta(ifs: IFS, graph: StateGraph, delta_, *, limit: int = 500_000) -> EDelta:
    if not graph.closed:
        raise ValueError("the state graph is not closed")
    delta_ = scalar(delta_)
    M = graph.max_cardinality
    best = [s for s in graph.states if len(s.set) == M and s.witness.generation is not None]
    if not best:
        raise ValueError("no net interval attains the largest neighbour set")
    # the coarsest witness keeps the word enumeration smallest
    base = max(best, key=lambda s: (s.witness.generation, -s.index))
    beta = base.witness.generation
    C = delta_ * ifs.r_min ** 2
    threshold = C * beta * ifs.r_min ** 2
    psis = maps_above(ifs, threshold, limit)
    gamma = {T.compose(p.inverse()) for p in psis for T in base.set}
    out = EDelta(delta_, beta, base.witness, threshold, gamma)
    for h in e_from_graph(graph):
        if overlap_length(IDENTITY, h) >= delta_ and out.contains(h):
            out.effective.add(h)
    return out


# -- exact inequality checks ------------------------------------------------


@dataclass(frozen=True)
class BspRow:
    alpha: Scalar
    points: int
    min_gap: Optional[Scalar]
    violations: int
    examples: tuple[tuple[Scalar, Scalar], ...]


@dataclass(frozen=True)
class BspReport:
    c: Scalar
    rows: tuple[BspRow, ...]

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _bsp_row(alpha: Scalar, maps: Iterable[Affine], c: Scalar, keep: int) -> BspRow:
    # the closest distinct pair is always adjacent after sorting
    pts = sorted({x for f in maps for x in (f.a, f.L + f.a)})
    bound = c * alpha
    bad = [(x, y) for x, y in zip(pts, pts[1:]) if y - x < bound]
    best = min((y - x for x, y in zip(pts, pts[1:])), default=None)
    return BspRow(alpha, len(pts), best, len(bad), tuple(bad[:keep]))


def check_bsp(ifs: IFS, c, alphas: Sequence, *, keep: int = 20) -> BspReport:
    """Exact check of ``S_sigma(u) == S_tau(v) or |S_sigma(u) - S_tau(v)| >= c*alpha``."""
    c = scalar(c)
    if not c > 0:
        raise ValueError("c must be positive")
    rows = []
    for alpha in alphas:
        alpha = check_alpha(alpha)
        rows.append(_bsp_row(alpha, generation_maps(ifs, alpha), c, keep))
    return BspReport(c, tuple(rows))


def check_bsp_ladder(ifs: IFS, c, min_alpha, *, keep: int = 20) -> BspReport:
    """:func:`check_bsp` at every event-ladder scale down to ``min_alpha``.

    The ladder value is the largest alpha of its generation, the strictest case.
    """
    c = scalar(c)
    if not c > 0:
        raise ValueError("c must be positive")
    rows = [_bsp_row(alpha, maps, c, keep) for alpha, maps in event_ladder(ifs, min_alpha)]
    return BspReport(c, tuple(rows))


def gamma_equi(ifs: IFS, n_max: int) -> tuple[set[Scalar], list[tuple[int, int, int]]]:
    """Values ``rho^-n |S_sigma(0) - S_tau(0)|`` in ``(0, 1)`` over words of length ``n <= n_max``.

    The growth table has rows ``(n, distinct values at level n, cumulative size)``.
    """
    rhos = set(ifs.ratios)
    if len(rhos) != 1:
        raise ValueError("the system is not equicontractive")
    (rho,) = rhos
    if not rho > 0:
        raise ValueError("the common ratio must be positive")
    values: set[Scalar] = set()
    table = []
    level = {IDENTITY}
    scale = ONE
    for n in range(n_max + 1):
        if n:
            level = {f.compose(g) for f in level for g in ifs.maps}
            scale = scale * rho
        pts = sorted({f.a for f in level})
        inv = scale.reciprocal()
        here = set()
        for i, x in enumerate(pts):
            for y in pts[i + 1:]:
                v = (y - x) * inv
                if v >= ONE:
                    break
                here.add(v)
        values |= here
        table.append((n, len(here), len(values)))
    return values, table


def wsc_ball_count(ifs: IFS, x0, tau, alpha) -> int:
    """Most distinct points ``S_sigma(S_tau(x0))``, ``sigma`` in the generation, in a closed ball of radius alpha."""
    alpha = check_alpha(alpha)
    x0 = scalar(x0)
    if not isinstance(tau, Word):
        tau = ifs.word(tuple(tau))
    y = tau.map(x0)
    pts = sorted({f(y) for f in generation_maps(ifs, alpha)})
    width = alpha + alpha
    best = 0
    for i, x in enumerate(pts):
        j = bisect_right(pts, x + width, lo=i)
        best = max(best, j - i)
    return best


def compute_constants(ifs: IFS, graph: StateGraph, *, limit: int = 500_000) -> tuple[SeparationConstants, Optional[EDelta]]:
    d = delta(ifs)
    c1, c2, c = c_constants(ifs, graph)
    ed = None
    eps1 = eps2 = eps = None
    if attractor_is_interval(ifs):
        ed = e_delta(ifs, graph, d, limit=limit)
        eps1, eps2, eps = epsilon_constants(ifs, ed.effective)
    return SeparationConstants(d, d * ifs.r_min ** 2, c1, c2, c, eps1, eps2, eps), ed

