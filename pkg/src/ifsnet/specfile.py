"""Line-oriented IFS specification files.

Grammar (one directive per line, ``#`` starts a comment)::

    file      := line*
    line      := directive? comment?
    directive := "name" WORD
               | "radicand" INT
               | "map" SCALAR SCALAR          # L then a, for x -> L*x + a
               | "max-states" INT | "max-depth" INT | "min-scale" SCALAR
    SCALAR    := "p/q" | "p" | "(p/q)+(r/s)*sqrt(d)"   (no inner spaces)

``radicand`` defaults to 0 (rational system) and must precede any map that
uses a square root.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .exact import RadicandError, Scalar, is_square_free, parse_scalar
from .explore import Budget
from .ifs import IFS, Affine, normalize_hull

__all__ = [
    "SpecError",
    "SpecFile",
    "parse_specfile",
    "render_specfile",
    "parse_spec",
    "corpus_names",
    "load_corpus",
    "corpus_text",
]


class SpecError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<spec>"):
        self.line, self.column, self.source = line, column, source
        where = f"{source}:{line}:{column}: " if line else f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class SpecFile:
    radicand: int
    maps: tuple[tuple[Scalar, Scalar], ...]
    name: str = ""
    max_states: Optional[int] = None
    max_depth: Optional[int] = None
    min_scale: Optional[Scalar] = None

    def ifs(self) -> IFS:
        return IFS(tuple(Affine.of(L, a) for L, a in self.maps), self.name)

    def budget(self, **overrides) -> Budget:
        vals = {"max_states": self.max_states, "max_depth": self.max_depth, "min_scale": self.min_scale}
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return Budget(**{k: v for k, v in vals.items() if v is not None})


def _tokens(line: str) -> list[tuple[int, str]]:
    out, col = [], 0
    for part in line.split():
        col = line.index(part, col)
        out.append((col + 1, part))
        col += len(part)
    return out


def parse_specfile(text: str, source: str = "<spec>") -> SpecFile:
    radicand = 0
    seen_radicand = False
    name = ""
    maps: list[tuple[Scalar, Scalar]] = []
    budget: dict = {}

    def fail(msg, ln, col):
        raise SpecError(msg, ln, col, source)

    for ln, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        (col, key), args = toks[0], toks[1:]

        def want(n):
            if len(args) != n:
                fail(f"'{key}' takes {n} argument{'s' if n != 1 else ''}, got {len(args)}", ln, col)

        def number(tok):
            c, t = tok
            try:
                v = int(t)
            except ValueError:
                fail(f"expected an integer, got {t!r}", ln, c)
            if v <= 0:
                fail(f"expected a positive integer, got {v}", ln, c)
            return v

        def value(tok):
            c, t = tok
            try:
                v = parse_scalar(t)
            except (ValueError, ZeroDivisionError) as exc:
                fail(str(exc), ln, c)
            if v.d and v.d != radicand:
                fail(f"sqrt({v.d}) does not match the declared radicand {radicand}", ln, c)
            return v

        if key == "name":
            want(1)
            name = args[0][1]
        elif key == "radicand":
            want(1)
            c, t = args[0]
            if maps:
                fail("'radicand' must come before the maps", ln, col)
            if seen_radicand:
                fail("duplicate 'radicand'", ln, col)
            try:
                radicand = int(t)
            except ValueError:
                fail(f"expected an integer, got {t!r}", ln, c)
            if radicand < 0 or (radicand and (radicand == 1 or not is_square_free(radicand))):
                fail(f"radicand {radicand} is not a square-free integer > 1 (or 0)", ln, c)
            seen_radicand = True
        elif key == "map":
            want(2)
            L, a = value(args[0]), value(args[1])
            if not L:
                fail("linear coefficient is zero", ln, args[0][0])
            if not abs(L) < 1:
                fail(f"|L| must be < 1, got {L.render()}", ln, args[0][0])
            maps.append((L, a))
        elif key in ("max-states", "max-depth"):
            want(1)
            budget[key.replace("-", "_")] = number(args[0])
        elif key == "min-scale":
            want(1)
            v = value(args[0])
            if not v > 0:
                fail("min-scale must be positive", ln, args[0][0])
            budget["min_scale"] = v
        else:
            fail(f"unknown directive {key!r}", ln, col)
    if len(maps) < 2:
        raise SpecError(f"an IFS needs at least two maps, got {len(maps)}", source=source)
    return SpecFile(radicand, tuple(maps), name, **budget)


def render_specfile(spec: SpecFile) -> str:
    lines = []
    if spec.name:
        lines.append(f"name {spec.name}")
    lines.append(f"radicand {spec.radicand}")
    lines += [f"map {L.render()} {a.render()}" for L, a in spec.maps]
    if spec.max_states is not None:
        lines.append(f"max-states {spec.max_states}")
    if spec.max_depth is not None:
        lines.append(f"max-depth {spec.max_depth}")
    if spec.min_scale is not None:
        lines.append(f"min-scale {spec.min_scale.render()}")
    return "\n".join(lines) + "\n"


def parse_spec(text: str, source: str = "<spec>") -> IFS:
    """Parse, validate and normalize so the attractor's hull is ``[0,1]``."""
    try:
        return normalize_hull(parse_specfile(text, source).ifs())
    except (RadicandError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc), source=source) from exc


def corpus_names() -> list[str]:
    files = resources.files("ifsnet").joinpath("corpus").iterdir()
    return sorted(p.name[:-4] for p in files if p.name.endswith(".ifs"))


def corpus_text(name: str) -> str:
    return resources.files("ifsnet").joinpath("corpus").joinpath(f"{name}.ifs").read_text()


def load_corpus(name: str) -> SpecFile:
    return parse_specfile(corpus_text(name), f"{name}.ifs")
