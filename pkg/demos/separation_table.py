#!/usr/bin/env python3
"""Separation constants and a BSP sweep for every closed corpus system.

For each system the constant c is computed from the closed graph, then every
event-ladder scale down to 1e-4 is checked: two distinct generation endpoints
closer than c*alpha would be a violation.
"""
from fractions import Fraction
import time

from ifsnet import c_constants, delta, load_corpus, normalize_hull, saturate
from ifsnet.constants import check_bsp_ladder
from ifsnet.specfile import corpus_names

FLOOR = Fraction(1, 10_000)

print(f"{'system':<12} {'states':>6} {'delta':>10} {'c':>12} {'levels':>7} {'viol':>5} {'secs':>6}")
for name in corpus_names():
    spec = load_corpus(name)
    ifs = normalize_hull(spec.ifs())
    graph, v = saturate(ifs, spec.budget())
    if not v.closed:
        print(f"{name:<12} {'-':>6}  skipped: {v.fnc}")
        continue
    t = time.perf_counter()
    *_, c = c_constants(ifs, graph)
    rep = check_bsp_ladder(ifs, c, FLOOR)
    secs = time.perf_counter() - t
    print(f"{name:<12} {v.states:>6} {float(delta(ifs)):>10.5f} {float(c):>12.3e} "
          f"{len(rep.rows):>7} {rep.violations:>5} {secs:>6.2f}")
