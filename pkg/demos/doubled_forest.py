"""Factor two copies of a random tree and show how the copies are matched."""

import random

from graphfactor import disjoint_union, factor_doubled_forest
from graphfactor.graph import SimpleGraph


def random_tree(n, rng):
    edges = [(v, rng.randrange(v)) for v in range(1, n)]
    return SimpleGraph.from_edges(n, edges)


if __name__ == "__main__":
    rng = random.Random(5)
    t = random_tree(8, rng)
    g = disjoint_union(t, t)
    f = factor_doubled_forest(g)
    print(f"tree edges: {list(t.edges)}")
    print(f"matching H: {list(f.h.edges)}")
    print(f"K edges:    {list(f.k.edges)}")
