"""Deterministic machine-readable reports.

Every number is written in exact text form; ``decimal`` fields are a
30-digit rendering for reading only.
"""
from __future__ import annotations

import json
from typing import Any, Optional

from . import __version__
from .constants import (
    BudgetError,
    check_bsp_ladder,
    compute_constants,
    wsc_ball_count,
)
from .exact import Scalar
from .explore import Budget, StateGraph, Verdict, e_direct, e_from_graph, saturate
from .ifs import IFS, ONE, ZERO, Affine, attractor_is_interval, normalizing_map
from .specfile import SpecFile

SCHEMA = "ifsnet-report/1"

__all__ = ["SCHEMA", "exact", "system_block", "fnc_block", "constants_block", "verify_report", "dumps"]


def exact(x: Optional[Scalar]) -> Optional[dict]:
    if x is None:
        return None
    return {"exact": x.render(), "decimal": str(x.to_decimal(30))}


def _map(f: Affine) -> dict:
    return {"L": f.L.render(), "a": f.a.render()}


def system_block(spec: SpecFile, ifs: IFS) -> dict:
    raw = spec.ifs()
    return {
        "name": spec.name,
        "radicand": spec.radicand,
        "maps": [_map(f) for f in raw.maps],
        "normalized_maps": [_map(f) for f in ifs.maps],
        "conjugation": _map(normalizing_map(raw)),
        "r_min": exact(ifs.r_min),
        "attractor_is_interval": attractor_is_interval(ifs),
    }


def budget_block(budget: Budget, ifs: IFS) -> dict:
    return {
        "max_states": budget.max_states,
        "max_depth": budget.max_depth,
        "min_scale": budget.scale_for(ifs).render(),
    }


def fnc_block(graph: StateGraph, verdict: Verdict) -> dict:
    return {
        "verdict": verdict.fnc,
        "states": verdict.states,
        "still_growing": verdict.still_growing,
        "wsc": verdict.wsc,
        "max_neighbours": verdict.max_neighbours,
        "gftc_co": verdict.gftc_co,
        "e_size": verdict.e_size,
        "wsc_bound_N": verdict.wsc_bound_N,
        "growth": list(graph.growth),
        "edges": len(graph.edges),
        "frontier": len(graph.frontier),
        "flagged": graph.flagged,
    }


def census(graph: StateGraph) -> list[dict]:
    return [
        {
            "index": s.index,
            "layer": s.layer,
            "size": len(s.set),
            "neighbours": s.key,
            "witness": s.witness.render(),
            "generation": s.witness.generation.render() if s.witness.generation is not None else None,
        }
        for s in graph.states
    ]


def constants_block(ifs: IFS, graph: StateGraph) -> tuple[dict, Any]:
    K, ed = compute_constants(ifs, graph)
    out = {name: exact(v) for name, v in K.items()}
    if ed is not None:
        out["E_delta"] = {
            "beta": ed.beta.render(),
            "base": ed.base.render(),
            "threshold": ed.threshold.render(),
            "gamma_size": len(ed.gamma),
            "effective": sorted(f.render() for f in ed.effective),
        }
    return out, K


def _alphas(ifs: IFS, depth: int) -> list[Scalar]:
    r = ifs.r_min
    return [r ** n for n in range(depth + 1)]


def verify_report(spec: SpecFile, ifs: IFS, budget: Budget, *, workers: int = 1, depth: int = 4) -> tuple[dict, bool, bool]:
    """Run the full coherence suite.

    Returns ``(report, closed, passed)``; ``passed`` is meaningful only when closed.
    """
    graph, verdict = saturate(ifs, budget, workers=workers)
    rep: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "ifsnet", "version": __version__},
        "command": "verify",
        "system": system_block(spec, ifs),
        "budget": budget_block(budget, ifs),
        "fnc": fnc_block(graph, verdict),
        "states": census(graph),
    }
    checks: dict[str, Any] = {}
    r = ifs.r_min

    # finiteness of E from brute force alone: it must stop growing between two depths
    shallow, deep = e_direct(ifs, r ** 2), e_direct(ifs, r ** depth)
    e_stable = shallow == deep
    checks["e_direct"] = {"scales": [(r ** 2).render(), (r ** depth).render()],
                          "sizes": [len(shallow), len(deep)], "stable": e_stable}

    bsp_ok = None
    if graph.closed:
        E = e_from_graph(graph)
        rep["E"] = sorted(f.render() for f in E)
        checks["e_direct"]["equals_graph"] = deep == E
        try:
            consts, K = constants_block(ifs, graph)
        except BudgetError as exc:
            consts, K = {"error": str(exc)}, None
        rep["constants"] = consts
        if K is not None:
            bsp = check_bsp_ladder(ifs, K.c, r ** (depth + 2))
            bsp_ok = bsp.ok
            checks["bsp"] = {
                "c": K.c.render(),
                "levels": len(bsp.rows),
                "min_alpha": bsp.rows[-1].alpha.render(),
                "violations": bsp.violations,
            }
        N = verdict.wsc_bound_N
        worst = 0
        for x0 in (ZERO, ONE / 2, ONE):
            for tau in ((), (1,)):
                for alpha in _alphas(ifs, depth):
                    worst = max(worst, wsc_ball_count(ifs, x0, tau, alpha))
        checks["wsc_ball"] = {"bound": N, "max_count": worst, "ok": worst <= N}

    coherence = {"fnc_closed": graph.closed, "e_finite": e_stable, "bsp_zero_violations": bsp_ok}
    if attractor_is_interval(ifs):
        computed = [v for v in coherence.values() if v is not None]
        coherence["agree"] = len(set(computed)) == 1
    checks["coherence"] = coherence
    rep["checks"] = checks

    passed = graph.closed and bool(
        checks["e_direct"].get("equals_graph")
        and bsp_ok
        and checks["wsc_ball"]["ok"]
        and coherence.get("agree", True)
    )
    rep["passed"] = passed
    return rep, graph.closed, passed


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
