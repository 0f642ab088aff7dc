"""Markets whose optimal interview count encodes a minimum vertex cover.

Starting from any max-degree-3 graph, wire up a market whose optimum for
the identity matching equals (minimum vertex cover) + (one interview per
graph edge).  This gives a family of instances with *known* optima for
validating the solver, and a reason to expect no fast general algorithm:
computing the optimum answers the cover question.
"""

from interviewplan import (
    SimpleGraph,
    best_plan,
    connected_small_graphs,
    cover_market_smt,
    cover_market_smti,
    naive_cost,
    orient_bounded_degree,
)
from interviewplan.formats import format_instance
from interviewplan.oracles import brute_force_cover, oracle_best_plan


def main():
    triangle = SimpleGraph(3, frozenset({(1, 2), (1, 3), (2, 3)}))
    oriented = orient_bounded_degree(triangle)
    print(f"Triangle oriented as: {sorted(oriented.arcs)}")

    inst, truth, target, cost_of = cover_market_smti(triangle)
    print("\nMarket built from the triangle:")
    print(format_instance(inst))
    vc = brute_force_cover(triangle)
    plan, matching = best_plan(inst, truth)
    print(f"minimum vertex cover of the triangle: {len(vc)} {list(vc)}")
    print(f"market optimum: {plan.cost} "
          f"(= cover {len(vc)} + edges {len(triangle.edges)}), "
          f"naive {naive_cost(inst)}")
    assert plan.cost == cost_of(len(vc))

    print("\nSweep over every connected max-degree-3 graph with up to "
          "4 vertices, tied-list and complete-list variants:")
    print(f"{'n':>2} {'edges':>5} {'cover':>5} {'tied-market':>11} "
          f"{'complete-market':>15}")
    for graph in connected_small_graphs(4):
        vc_size = len(brute_force_cover(graph))
        inst1, truth1, _, cost1 = cover_market_smti(graph)
        inst2, truth2, _, cost2 = cover_market_smt(graph)
        got1, _, _ = oracle_best_plan(inst1, truth1)
        got2, _, _ = oracle_best_plan(inst2, truth2)
        mark1 = "ok" if got1 == cost1(vc_size) else "MISMATCH"
        mark2 = "ok" if got2 == cost2(vc_size) else "MISMATCH"
        print(f"{graph.n:>2} {len(graph.edges):>5} {vc_size:>5} "
              f"{got1:>8} {mark1:<3} {got2:>11} {mark2}")


if __name__ == "__main__":
    main()
