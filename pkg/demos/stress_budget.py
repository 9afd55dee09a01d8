#!/usr/bin/env python3
"""What a budget-exceeded run looks like.

With ratio 1/sqrt2 the two maps x/sqrt2 and x/sqrt2 + 1 - 1/sqrt2 keep
producing new neighbour sets. The search stops at its state budget and
reports evidence only; the growth curve shows no sign of levelling off.
"""
import sys

from ifsnet import Budget, load_corpus, normalize_hull, saturate

budgets = [int(a) for a in sys.argv[1:]] or [25, 50, 100, 200]
ifs = normalize_hull(load_corpus("sqrt2_stress").ifs())

for cap in budgets:
    graph, v = saturate(ifs, Budget(max_states=cap))
    print(f"max_states={cap:<4} states={v.states:<4} frontier={len(graph.frontier):<4} "
          f"still_growing={v.still_growing!s:<5} wsc={v.wsc}")
    print(f"    growth {list(graph.growth)}")

# contrast: a Pisot ratio closes long before any of these budgets
g, v = saturate(normalize_hull(load_corpus("golden").ifs()), Budget(max_states=min(budgets)))
print(f"golden under max_states={min(budgets)}: {v.fnc} with {v.states} states")
