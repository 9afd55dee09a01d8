"""Similarities, iterated function systems, words and generations."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .exact import Scalar, scalar

__all__ = [
    "Affine",
    "IDENTITY",
    "IFS",
    "Word",
    "compose",
    "invert",
    "cylinder",
    "solve_hull",
    "normalizing_map",
    "normalize_hull",
    "parent",
    "lambda_alpha",
    "generation_maps",
    "event_ladder",
    "attractor_is_interval",
    "check_alpha",
]

ZERO = scalar(0)
ONE = scalar(1)


class Affine(NamedTuple):
    """The map ``x -> L*x + a``."""

    L: Scalar
    a: Scalar

    @classmethod
    def of(cls, L, a=0) -> Affine:
        L, a = scalar(L), scalar(a)
        if not L:
            raise ValueError("linear coefficient must be non-zero")
        return cls(L, a)

    def __call__(self, x) -> Scalar:
        return self.L * x + self.a

    def compose(self, g: Affine) -> Affine:
        """``self o g``."""
        return Affine(self.L * g.L, self.L * g.a + self.a)

    def inverse(self) -> Affine:
        inv = self.L.reciprocal()
        return Affine(inv, -(self.a * inv))

    def image(self) -> tuple[Scalar, Scalar]:
        """The interval ``self([0,1])`` as ``(lo, hi)``."""
        u, v = self.a, self.L + self.a
        return (u, v) if self.L.sign() > 0 else (v, u)

    @property
    def is_identity(self) -> bool:
        return self.L == 1 and not self.a

    def sort_key(self):
        return (self.a, self.L)

    def render(self) -> str:
        return f"{self.L.render()}*x + {self.a.render()}"

    def __str__(self) -> str:
        return self.render()


IDENTITY = Affine(ONE, ZERO)


def compose(f: Affine, g: Affine) -> Affine:
    return f.compose(g)


def invert(f: Affine) -> Affine:
    return f.inverse()


def cylinder(f: Affine) -> tuple[Scalar, Scalar]:
    return f.image()


@dataclass(frozen=True)
class IFS:
    """A finite family of contracting similarities of the line (1-indexed in words)."""

    maps: tuple[Affine, ...]
    name: str = ""

    def __post_init__(self):
        maps = tuple(Affine.of(f.L, f.a) if not isinstance(f, Affine) else f for f in self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) < 2:
            raise ValueError(f"an IFS needs at least two maps, got {len(maps)}")
        radicands = {f.L.d for f in maps if f.L.d} | {f.a.d for f in maps if f.a.d}
        if len(radicands) > 1:
            raise ValueError(f"maps use several radicands: {sorted(radicands)}")
        for i, f in enumerate(maps, 1):
            if not f.L or not abs(f.L) < 1:
                raise ValueError(f"map {i}: need 0 < |L| < 1, got L = {f.L.render()}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], name: str = "") -> IFS:
        return cls(tuple(Affine.of(L, a) for L, a in pairs), name)

    @property
    def k(self) -> int:
        return len(self.maps)

    @property
    def radicand(self) -> int:
        for f in self.maps:
            if f.L.d or f.a.d:
                return f.L.d or f.a.d
        return 0

    @property
    def r_min(self) -> Scalar:
        return min(abs(f.L) for f in self.maps)

    @property
    def r_max(self) -> Scalar:
        return max(abs(f.L) for f in self.maps)

    @property
    def ratios(self) -> tuple[Scalar, ...]:
        return tuple(f.L for f in self.maps)

    def __getitem__(self, i: int) -> Affine:
        """1-indexed access to the maps."""
        if not 1 <= i <= self.k:
            raise IndexError(i)
        return self.maps[i - 1]

    def word(self, letters: Sequence[int]) -> Word:
        w = Word.empty()
        for j in letters:
            w = w.extend(self, j)
        return w

    def with_maps(self, maps: Iterable[Affine]) -> IFS:
        return IFS(tuple(maps), self.name)


class Word(NamedTuple):
    """A finite word with its cached ratio and composed map."""

    letters: tuple[int, ...]
    ratio: Scalar
    map: Affine

    @classmethod
    def empty(cls) -> Word:
        return cls((), ONE, IDENTITY)

    def extend(self, ifs: IFS, j: int) -> Word:
        f = ifs[j]
        return Word(self.letters + (j,), self.ratio * f.L, self.map.compose(f))

    def image(self) -> tuple[Scalar, Scalar]:
        return self.map.image()

    def render(self) -> str:
        return "(" + ",".join(map(str, self.letters)) + ")"


def parent(ifs: IFS, w: Word) -> Word:
    """Drop the last letter of ``w``."""
    if not w.letters:
        raise ValueError("the empty word has no parent")
    last = ifs[w.letters[-1]]
    return Word(w.letters[:-1], w.ratio / last.L, w.map.compose(last.inverse()))


def check_alpha(alpha) -> Scalar:
    alpha = scalar(alpha)
    if not (ZERO < alpha <= ONE):
        raise ValueError(f"generation must satisfy 0 < alpha <= 1, got {alpha.render()}")
    return alpha


def lambda_alpha(ifs: IFS, alpha) -> Iterator[Word]:
    """Stream the words of generation ``alpha`` in lexicographic order."""
    alpha = check_alpha(alpha)
    stack = [Word.empty()]
    while stack:
        w = stack.pop()
        if abs(w.ratio) < alpha:
            yield w
        else:
            stack.extend(w.extend(ifs, j) for j in range(ifs.k, 0, -1))


def generation_maps(ifs: IFS, alpha) -> set[Affine]:
    """The distinct maps ``S_sigma`` for ``sigma`` in the generation ``alpha``."""
    alpha = check_alpha(alpha)
    out: set[Affine] = set()
    seen = {IDENTITY}
    todo = [IDENTITY]
    while todo:
        f = todo.pop()
        for g in ifs.maps:
            h = f.compose(g)
            if abs(h.L) < alpha:
                out.add(h)
            elif h not in seen:
                seen.add(h)
                todo.append(h)
    return out


def event_ladder(ifs: IFS, min_scale) -> Iterator[tuple[Scalar, frozenset[Affine]]]:
    """Yield ``(alpha, maps)`` for each distinct generation with ``alpha >= min_scale``.

    The generation changes exactly when ``alpha`` drops to the largest ratio
    currently present; ``maps`` holds the distinct ``S_sigma`` of that generation.
    """
    min_scale = scalar(min_scale)
    current = frozenset(ifs.maps)
    alpha = ONE
    while alpha >= min_scale:
        yield alpha, current
        alpha = max(abs(f.L) for f in current)
        nxt = set()
        for f in current:
            if abs(f.L) == alpha:
                nxt.update(f.compose(g) for g in ifs.maps)
            else:
                nxt.add(f)
        current = frozenset(nxt)


def solve_hull(ifs: IFS) -> tuple[Scalar, Scalar]:
    """Convex hull ``[m, M]`` of the attractor, found by exact candidate enumeration."""
    maps = ifs.maps
    for fi, fj in product(maps, repeat=2):
        # unknowns m, M; fi attains the minimum, fj the maximum
        if fi.L.sign() > 0 and fj.L.sign() > 0:
            m = fi.a / (1 - fi.L)
            M = fj.a / (1 - fj.L)
        elif fi.L.sign() > 0:
            m = fi.a / (1 - fi.L)
            M = fj.L * m + fj.a
        elif fj.L.sign() > 0:
            M = fj.a / (1 - fj.L)
            m = fi.L * M + fi.a
        else:
            # m = Li*M + ai, M = Lj*m + aj
            m = (fi.L * fj.a + fi.a) / (1 - fi.L * fj.L)
            M = fj.L * m + fj.a
        if M < m:
            continue
        lows, highs = zip(*(_image(f, m, M) for f in maps))
        if min(lows) == m and max(highs) == M:
            if m == M:
                raise ValueError("the attractor is a singleton")
            return m, M
    raise AssertionError("no consistent hull candidate")  # unreachable for contractions


def _image(f: Affine, m: Scalar, M: Scalar) -> tuple[Scalar, Scalar]:
    u, v = f(m), f(M)
    return (u, v) if u <= v else (v, u)


def normalizing_map(ifs: IFS) -> Affine:
    """The map ``x -> (x - m)/(M - m)`` sending the hull onto ``[0,1]``."""
    m, M = solve_hull(ifs)
    width = M - m
    return Affine(width.reciprocal(), -m / width)


def normalize_hull(ifs: IFS) -> IFS:
    phi = normalizing_map(ifs)
    if phi.is_identity:
        return ifs
    inv = phi.inverse()
    return ifs.with_maps(phi.compose(f).compose(inv) for f in ifs.maps)


def attractor_is_interval(ifs: IFS) -> bool:
    """True iff the images of ``[0,1]`` cover ``[0,1]`` (then the attractor is ``[0,1]``)."""
    reach = ZERO
    for lo, hi in sorted(f.image() for f in ifs.maps):
        if lo > reach:
            return False
        reach = max(reach, hi)
    return reach == ONE
