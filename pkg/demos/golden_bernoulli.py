#!/usr/bin/env python3
"""Golden-ratio Bernoulli system {rho x, rho x + 1 - rho}, rho = (sqrt5 - 1)/2.

Everything below runs in exact Q(sqrt5) arithmetic. The inverse golden
ratio is a Pisot number, so the neighbour-set search closes; the translation
set found by equicontractive enumeration stabilizes at the same values the
state graph produces.
"""
from ifsnet import gamma_equi, load_corpus, normalize_hull, saturate
from ifsnet.explore import e_from_graph


def main():
    ifs = normalize_hull(load_corpus("golden").ifs())
    rho = ifs.maps[0].L
    print(f"rho = {rho.render()}  (~{float(rho):.12f})")
    print(f"rho^2 + rho - 1 = {(rho * rho + rho - 1).render()}")

    graph, verdict = saturate(ifs)
    print(f"\nstates: {verdict.states} ({verdict.fnc}), growth per layer {list(graph.growth)}")
    for s in graph.states:
        print(f"  {s.index}: {s.key}")

    values, table = gamma_equi(ifs, 10)
    print("\n  n   new at n   cumulative")
    for n, fresh, total in table:
        print(f"  {n:>2}   {fresh:>8}   {total:>10}")
    from_graph = {abs(f.a) for f in e_from_graph(graph) if f.a}
    print(f"\ntranslations by enumeration: {sorted(v.render() for v in values)}")
    print(f"translations from the graph: {sorted(v.render() for v in from_graph)}")
    print("agree" if values == from_graph else "DISAGREE")


if __name__ == "__main__":
    main()
