"""Neighbours and neighbour sets of net intervals."""
from __future__ import annotations

from typing import Iterable, Iterator

from .ifs import ONE, ZERO, Affine, Word
from .net import NetInterval, interval_map

__all__ = ["NeighbourSet", "neighbour_of", "neighbour_set", "canonical_key", "check_neighbour"]


def check_neighbour(T: Affine) -> Affine:
    if abs(T.L) < ONE:
        raise AssertionError(f"neighbour {T} has |L| < 1")
    lo, hi = T.image()
    if lo > ZERO or hi < ONE:
        raise AssertionError(f"neighbour {T} does not cover [0,1]")
    return T


class NeighbourSet:
    """A canonically ordered, duplicate-free set of neighbours.

    Members are sorted by ``(a, L)``; two sets are equal exactly when their
    canonical keys are equal.
    """

    __slots__ = ("members", "key")

    def __init__(self, members: Iterable[Affine]):
        uniq = sorted(set(members), key=Affine.sort_key)
        if not uniq:
            raise ValueError("a neighbour set is never empty")
        self.members: tuple[Affine, ...] = tuple(uniq)
        self.key: str = "{" + "; ".join(T.render() for T in self.members) + "}"

    def __iter__(self) -> Iterator[Affine]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, T) -> bool:
        return T in self.members

    def __eq__(self, other):
        if not isinstance(other, NeighbourSet):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self) -> str:
        return f"NeighbourSet({self.key})"

    def render(self) -> str:
        return self.key


def neighbour_of(delta: NetInterval, sigma: Word) -> Affine:
    """``T_delta^{-1} o S_sigma`` for a generator ``sigma`` of ``delta``."""
    lo, hi = sigma.image()
    if not (lo <= delta.lo and delta.hi <= hi):
        raise ValueError(f"{sigma.render()} does not generate a neighbour of {delta.render()}")
    width = delta.hi - delta.lo
    T = Affine(sigma.ratio / width, (sigma.map.a - delta.lo) / width)
    return check_neighbour(T)


def neighbour_set(delta: NetInterval) -> NeighbourSet:
    return NeighbourSet(neighbour_of(delta, w) for w in delta.generators)


def canonical_key(v: NeighbourSet) -> str:
    return v.key
