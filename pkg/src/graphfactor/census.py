"""Small-graph generation with canonical-form deduplication, and the census runner."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Iterator

import numpy as np

from .automorphism import refine_colors
from .formats import to_graph6
from .graph import SimpleGraph
from .search import SearchBudget, factor, tree_canonical_form

CENSUS_MAX_N = 7


def canonical_form(g: SimpleGraph) -> str:
    """graph6 of the lexicographically smallest relabelling consistent with colour refinement.

    Vertices are ordered by refined colour class; only orders within each
    class are tried, so the result is an isomorphism invariant.
    """
    (colors,) = refine_colors([g])
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    blocks = [cells[c] for c in sorted(cells)]
    iu = np.triu_indices(g.n, 1)
    best = None
    best_order = None
    for choice in product(*(permutations(b) for b in blocks)):
        order = [v for block in choice for v in block]
        key = g.adj[np.ix_(order, order)][iu].tobytes()
        if best is None or key < best:
            best, best_order = key, order
    if best_order is None:
        return to_graph6(g)
    return to_graph6(SimpleGraph(g.adj[np.ix_(best_order, best_order)]))


@lru_cache(maxsize=None)
def _connected_graph6(n: int) -> tuple[str, ...]:
    if n == 1:
        return (to_graph6(SimpleGraph.empty(1)),)
    from .formats import from_graph6

    seen = set()
    for code in _connected_graph6(n - 1):
        base = from_graph6(code)
        for mask in range(1, 1 << (n - 1)):
            a = np.zeros((n, n), dtype=bool)
            a[: n - 1, : n - 1] = base.adj
            for v in range(n - 1):
                if mask >> v & 1:
                    a[v, n - 1] = a[n - 1, v] = True
            seen.add(canonical_form(SimpleGraph(a)))
    return tuple(sorted(seen))


def connected_graphs(n: int) -> list[SimpleGraph]:
    """All connected graphs on ``n`` vertices up to isomorphism, sorted by canonical graph6.

    Every connected graph has a vertex whose removal keeps it connected,
    so adding one vertex to each smaller connected graph reaches them all.
    """
    from .formats import from_graph6

    if not 1 <= n <= CENSUS_MAX_N:
        raise ValueError(f"census generation supports 1 <= n <= {CENSUS_MAX_N}")
    return [from_graph6(c) for c in _connected_graph6(n)]


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[SimpleGraph, ...]:
    if n == 1:
        return (SimpleGraph.empty(1),)
    found: dict[tuple, SimpleGraph] = {}
    for t in _trees(n - 1):
        for v in range(n - 1):
            edges = list(t.edges) + [(v, n - 1)]
            new = SimpleGraph.from_edges(n, edges)
            found.setdefault(tree_canonical_form(new), new)
    return tuple(found[k] for k in sorted(found))


def trees(n: int) -> list[SimpleGraph]:
    """All trees on ``n`` vertices up to isomorphism (leaf augmentation, canonical dedup)."""
    if n < 1:
        raise ValueError("trees need at least one vertex")
    return list(_trees(n))


def classify_one(g: SimpleGraph, budget: SearchBudget | None = None, with_stats: bool = False) -> dict[str, Any]:
    from .classify import prime_test

    outcome = factor(g, budget)
    verdict = prime_test(g, budget)
    row: dict[str, Any] = {
        "graph6": to_graph6(g),
        "n": g.n,
        "edges": g.num_edges,
        "factor": outcome.verdict,
        "factor_method": outcome.stats.get("method"),
        "prime": verdict.status,
        "rule": verdict.rule,
    }
    if with_stats:
        row["stats"] = {k: v for k, v in outcome.stats.items() if k != "trail"}
    return row


def _worker(args: tuple[str, SearchBudget | None, bool]) -> dict[str, Any]:
    from .formats import from_graph6

    code, budget, with_stats = args
    return classify_one(from_graph6(code), budget, with_stats)


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("GRAPHFACTOR_THREADS", "1")))
    except ValueError:
        return 1


def run_census(
    n: int,
    budget: SearchBudget | None = None,
    with_stats: bool = False,
    up_to: bool = False,
) -> Iterator[dict[str, Any]]:
    """Classify every connected graph on ``n`` vertices (or ``1..n`` with ``up_to``).

    Rows come out sorted by ``(n, graph6)`` whatever the worker count.
    """
    sizes = range(1, n + 1) if up_to else [n]
    codes = [(to_graph6(g), budget, with_stats) for k in sizes for g in connected_graphs(k)]
    workers = thread_cap()
    if workers > 1 and len(codes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_worker, codes))
    else:
        rows = [_worker(c) for c in codes]
    yield from sorted(rows, key=lambda r: (r["n"], r["graph6"]))
