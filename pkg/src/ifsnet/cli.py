"""Command-line interface.

Exit codes: 0 closed / checks passed, 2 budget exceeded or inconclusive,
1 input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .exact import parse_scalar
from .constants import wsc_ball_count
from .explore import saturate, to_dot
from .ifs import ONE, ZERO, check_alpha, normalize_hull
from .neighbour import neighbour_set
from .net import net_intervals
from .report import SCHEMA, budget_block, census, constants_block, dumps, fnc_block, system_block, verify_report
from .specfile import SpecError, SpecFile, corpus_names, corpus_text, parse_specfile, render_specfile

OK, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(path: str) -> SpecFile:
    if path.startswith("corpus:"):
        name = path[len("corpus:"):]
        if name not in corpus_names():
            raise InputError(f"unknown corpus system {name!r}; available: {', '.join(corpus_names())}")
        return parse_specfile(corpus_text(name), f"{name}.ifs")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_specfile(text, path)


def _system(args):
    spec = _load(args.spec)
    try:
        ifs = normalize_hull(spec.ifs())
    except ValueError as exc:
        raise InputError(f"{args.spec}: {exc}") from None
    return spec, ifs


def _budget(args, spec: SpecFile):
    try:
        return spec.budget(
            max_states=getattr(args, "max_states", None),
            max_depth=getattr(args, "max_depth", None),
            min_scale=getattr(args, "min_scale", None),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _header(command: str) -> dict:
    return {"schema": SCHEMA, "tool": {"name": "ifsnet", "version": __version__}, "command": command}


def cmd_normalize(args) -> int:
    spec, ifs = _system(args)
    out = SpecFile(spec.radicand, tuple((f.L, f.a) for f in ifs.maps), spec.name,
                   spec.max_states, spec.max_depth, spec.min_scale)
    _emit(render_specfile(out), args.output)
    return OK


def _alpha(args):
    try:
        return check_alpha(args.alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_net_intervals(args) -> int:
    _, ifs = _system(args)
    lines = []
    for d in net_intervals(ifs, _alpha(args)):
        gens = " ".join(w.render() for w in d.generators)
        lines.append(f"{d.render()}  generators {gens}")
    _emit("\n".join(lines) + "\n", args.output)
    return OK


def cmd_neighbours(args) -> int:
    _, ifs = _system(args)
    lines = [f"{d.render()}  {neighbour_set(d).key}" for d in net_intervals(ifs, _alpha(args))]
    _emit("\n".join(lines) + "\n", args.output)
    return OK


def cmd_check_fnc(args) -> int:
    spec, ifs = _system(args)
    budget = _budget(args, spec)
    graph, verdict = saturate(ifs, budget, workers=args.workers)
    rep = _header("check-fnc")
    rep.update(system=system_block(spec, ifs), budget=budget_block(budget, ifs),
               fnc=fnc_block(graph, verdict), states=census(graph))
    _emit(dumps(rep), args.output)
    return OK if verdict.closed else INCONCLUSIVE


def cmd_check_wsc(args) -> int:
    spec, ifs = _system(args)
    budget = _budget(args, spec)
    graph, verdict = saturate(ifs, budget, workers=args.workers)
    rows = []
    r = ifs.r_min
    for x0 in (ZERO, ONE / 2, ONE):
        for tau in ((), (1,)):
            for n in range(args.depth + 1):
                count = wsc_ball_count(ifs, x0, tau, r ** n)
                rows.append({"x0": x0.render(), "tau": list(tau), "alpha": (r ** n).render(), "count": count})
    worst = max(row["count"] for row in rows)
    rep = _header("check-wsc")
    rep.update(system=system_block(spec, ifs), budget=budget_block(budget, ifs),
               wsc={"verdict": verdict.wsc, "bound_N": verdict.wsc_bound_N,
                    "max_neighbours": verdict.max_neighbours, "max_count": worst, "counts": rows})
    _emit(dumps(rep), args.output)
    ok = verdict.closed and worst <= verdict.wsc_bound_N
    return OK if ok else INCONCLUSIVE


def cmd_constants(args) -> int:
    spec, ifs = _system(args)
    budget = _budget(args, spec)
    graph, verdict = saturate(ifs, budget, workers=args.workers)
    rep = _header("constants")
    rep.update(system=system_block(spec, ifs), budget=budget_block(budget, ifs), fnc=fnc_block(graph, verdict))
    if not graph.closed:
        rep["constants"] = None
        _emit(dumps(rep), args.output)
        print("constants need a closed state graph", file=sys.stderr)
        return INCONCLUSIVE
    rep["constants"], _ = constants_block(ifs, graph)
    _emit(dumps(rep), args.output)
    return OK


def cmd_verify(args) -> int:
    spec, ifs = _system(args)
    budget = _budget(args, spec)
    rep, closed, passed = verify_report(spec, ifs, budget, workers=args.workers, depth=args.depth)
    _emit(dumps(rep), args.output)
    if closed and not passed:
        print("verification found a disagreement; see the report's checks", file=sys.stderr)
    return OK if passed else INCONCLUSIVE


def cmd_graph(args) -> int:
    spec, ifs = _system(args)
    graph, verdict = saturate(ifs, _budget(args, spec), workers=args.workers)
    Path(args.dot).write_text(to_dot(graph))
    return OK if verdict.closed else INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ifsnet", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ifsnet {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *, budget=False, output=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("spec", help="spec file path, or corpus:NAME for a bundled system")
        if output:
            sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        if budget:
            sp.add_argument("--max-states", type=int)
            sp.add_argument("--max-depth", type=int)
            sp.add_argument("--min-scale", type=_scalar_arg)
            sp.add_argument("--workers", type=int, default=1, help="threads for breadth-first expansion")
        sp.set_defaults(func=fn)
        return sp

    add("normalize", cmd_normalize, "echo the system conjugated so its hull is [0,1]")
    add("net-intervals", cmd_net_intervals, "list the net intervals of a generation").add_argument(
        "--alpha", type=_scalar_arg, required=True)
    add("neighbours", cmd_neighbours, "list neighbour sets of a generation").add_argument(
        "--alpha", type=_scalar_arg, required=True)
    add("check-fnc", cmd_check_fnc, "decide the finite neighbour condition", budget=True)
    add("check-wsc", cmd_check_wsc, "weak separation verdict and ball counts", budget=True).add_argument(
        "--depth", type=int, default=4, help="alpha runs over r_min**n for n <= depth")
    add("constants", cmd_constants, "separation constants", budget=True)
    add("verify", cmd_verify, "full coherence suite", budget=True).add_argument(
        "--depth", type=int, default=4, help="depth of the sampled scales r_min**n")
    add("graph", cmd_graph, "export the state graph", budget=True, output=False).add_argument(
        "--dot", required=True, help="DOT output path")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (SpecError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
