"""Generation endpoints, net intervals and the attractor-intersection test."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Optional

from .exact import Scalar, scalar
from .ifs import IFS, IDENTITY, ONE, ZERO, Affine, Word, attractor_is_interval, generation_maps, lambda_alpha

__all__ = [
    "NetInterval",
    "endpoints",
    "meets_attractor",
    "net_intervals",
    "interval_map",
    "root_interval",
]


@dataclass(frozen=True)
class NetInterval:
    """A net interval ``[lo, hi]`` together with the words that generate its neighbours.

    ``generation`` is the largest scale at which the interval was produced;
    it is ``None`` only for the root pseudo-interval ``[0,1]`` whose single
    generator is the empty word.
    """

    lo: Scalar
    hi: Scalar
    generation: Optional[Scalar]
    generators: tuple[Word, ...]

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty net interval [{self.lo}, {self.hi}]")
        if self.lo < ZERO or self.hi > ONE:
            raise ValueError(f"net interval [{self.lo}, {self.hi}] leaves [0,1]")
        if not self.generators:
            raise ValueError("a net interval needs at least one generator")
        for w in self.generators:
            lo, hi = w.image()
            if not (lo <= self.lo and self.hi <= hi):
                raise ValueError(f"word {w.render()} does not cover [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    def render(self) -> str:
        return f"[{self.lo.render()}, {self.hi.render()}]"


def root_interval() -> NetInterval:
    return NetInterval(ZERO, ONE, None, (Word.empty(),))


def endpoints(ifs: IFS, alpha) -> list[Scalar]:
    pts = set()
    for f in generation_maps(ifs, alpha):
        pts.add(f.a)
        pts.add(f.L + f.a)
    return sorted(pts)


def meets_attractor(ifs: IFS, J, *, interval: Optional[bool] = None) -> bool:
    """Decide exactly whether the open interval ``(u, v)`` meets the attractor.

    Descends only through cylinders that cover ``[u, v]``; any cylinder
    endpoint strictly inside ``(u, v)`` is a point of the attractor, and
    cylinders shorter than ``v - u`` that meet ``(u, v)`` always have one.
    ``interval`` may pass a cached :func:`attractor_is_interval` result.
    """
    u, v = scalar(J[0]), scalar(J[1])
    if not u < v:
        raise ValueError(f"malformed interval [{u}, {v}]")
    if interval is None:
        interval = attractor_is_interval(ifs)
    if interval:
        return u < ONE and v > ZERO
    stack = [IDENTITY]
    while stack:
        f = stack.pop()
        lo, hi = f.image()
        if hi <= u or lo >= v:
            continue
        if u < lo or hi < v:
            return True
        stack.extend(f.compose(g) for g in ifs.maps)
    return False


def net_intervals(ifs: IFS, alpha) -> list[NetInterval]:
    alpha = scalar(alpha)
    words = list(lambda_alpha(ifs, alpha))
    pts = sorted({x for w in words for x in w.image()})
    gens: list[list[Word]] = [[] for _ in range(len(pts) - 1)]
    for w in words:
        lo, hi = w.image()
        for j in range(bisect_left(pts, lo), bisect_left(pts, hi)):
            gens[j].append(w)
    interval = attractor_is_interval(ifs)
    out = []
    for j, g in enumerate(gens):
        if g and meets_attractor(ifs, (pts[j], pts[j + 1]), interval=interval):
            out.append(NetInterval(pts[j], pts[j + 1], alpha, tuple(g)))
    return out


def interval_map(delta: NetInterval) -> Affine:
    """The increasing similarity taking ``[0,1]`` onto ``delta``."""
    return Affine(delta.hi - delta.lo, delta.lo)
