"""Walk through factoring a few small graphs and explain each verdict."""

from graphfactor import (
    audit_factorization,
    factor,
    grid_graph,
    make_complete,
    make_cycle,
    make_path,
    make_petersen,
    torus_graph,
)
from graphfactor.graph import make_complete_bipartite


def show(name, g):
    out = factor(g)
    print(f"{name}: {out.verdict} via {out.stats.get('method')}")
    for f in out.certificates[:1]:
        print(f"  H has {f.h.num_edges} edges, K has {f.k.num_edges} edges")
        print(f"  H is a perfect matching: {f.h.is_perfect_matching()}")
        print(f"  audit problems: {audit_factorization(f) or 'none'}")
    if "trail" in out.stats:
        print(f"  trail: {out.stats['trail']}")


if __name__ == "__main__":
    show("K2,2", make_complete_bipartite(2, 2))
    show("K5", make_complete(5))
    show("P3", make_path(3))
    show("C6", make_cycle(6))
    show("Petersen", make_petersen())
    show("grid 4x6", grid_graph(4, 6))
    show("grid 3x4", grid_graph(3, 4))
    show("torus 5x7", torus_graph(5, 7))
