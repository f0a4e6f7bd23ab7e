"""Simple undirected graphs, named families and graph-level operations.

Vertices are ``0..n-1``. Grid coordinates at the API boundary are 1-based
``(i, j)`` and flatten row-major as ``(i - 1) * m + (j - 1)``; torus
coordinates are residues ``(i, j)`` flattening to ``i * m + j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

MAX_VERTICES = 4096


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Undirected simple graph stored as a symmetric boolean adjacency matrix.

    Instances are immutable; the adjacency array is marked read-only.
    Equality means identical vertex count and adjacency under the same
    ordering (labels are ignored). Use
    :func:`graphfactor.automorphism.find_isomorphism` for isomorphism.
    """

    adj: np.ndarray
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        a = np.array(self.adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices supported")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("loops are not allowed in a simple graph")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != a.shape[0]:
                raise ValueError("labels must have one entry per vertex")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "SimpleGraph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        a = np.zeros((n, n), dtype=bool)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a, None if labels is None else tuple(labels))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(np.zeros((n, n), dtype=bool))

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges})"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted pairs ``(u, v)`` with ``u < v``, lexicographic."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return tuple((int(u), int(v)) for u, v in zip(us, vs))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.adj.sum(axis=1))

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in np.flatnonzero(row)) for row in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.neighbor_lists[v]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (bit ``w`` set iff ``v -- w``)."""
        return tuple(sum(1 << w for w in nbrs) for nbrs in self.neighbor_lists)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def int_matrix(self) -> np.ndarray:
        return self.adj.astype(np.int64)

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabelling must be a permutation of the vertices")
        return SimpleGraph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 0]

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def is_forest(self) -> bool:
        return self.num_edges == self.n - len(components(self))

    def is_tree(self) -> bool:
        return self.n >= 1 and self.is_connected() and self.num_edges == self.n - 1

    def is_perfect_matching(self) -> bool:
        return self.n > 0 and all(d == 1 for d in self.degrees)

    def is_regular(self, d: int | None = None) -> bool:
        if self.n == 0:
            return True
        first = self.degrees[0] if d is None else d
        return all(x == first for x in self.degrees)

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.neighbor_lists[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; ``-1`` marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.neighbor_lists[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def girth(self) -> float:
        """Length of a shortest cycle, ``inf`` for forests."""
        best = float("inf")
        for s in range(self.n):
            dist = [-1] * self.n
            parent = [-1] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.neighbor_lists[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
        return best


def make_path(k: int) -> SimpleGraph:
    if k < 1:
        raise ValueError("a path needs at least one vertex")
    return SimpleGraph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def make_cycle(k: int) -> SimpleGraph:
    if k < 3:
        raise ValueError("a cycle needs at least three vertices")
    return SimpleGraph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def make_complete(k: int) -> SimpleGraph:
    return SimpleGraph.from_edges(k, combinations(range(k), 2))


def make_complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def make_star(leaves: int) -> SimpleGraph:
    return make_complete_bipartite(1, leaves)


def make_petersen() -> SimpleGraph:
    """Kneser graph KG(5, 2): 2-subsets of {1..5}, adjacent when disjoint."""
    pairs = list(combinations(range(1, 6), 2))
    edges = [
        (a, b)
        for a, b in combinations(range(len(pairs)), 2)
        if not set(pairs[a]) & set(pairs[b])
    ]
    labels = [f"{x}{y}" for x, y in pairs]
    return SimpleGraph.from_edges(len(pairs), edges, labels)


def cartesian_product(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Cartesian product; vertex ``(a, x)`` has index ``a * h.n + x``."""
    if g.n == 0 or h.n == 0:
        raise ValueError("cartesian product of an empty graph")
    a = np.kron(g.adj.astype(np.uint8), np.eye(h.n, dtype=np.uint8))
    a += np.kron(np.eye(g.n, dtype=np.uint8), h.adj.astype(np.uint8))
    return SimpleGraph(a.astype(bool))


def grid_graph(n: int, m: int) -> SimpleGraph:
    """The grid ``P_n x P_m``."""
    return cartesian_product(make_path(n), make_path(m))


def torus_graph(n: int, m: int) -> SimpleGraph:
    """The torus ``C_n x C_m``."""
    return cartesian_product(make_cycle(n), make_cycle(m))


def grid_index(i: int, j: int, m: int) -> int:
    """Flat index of 1-based grid coordinate ``(i, j)`` in a grid with ``m`` columns."""
    if i < 1 or not 1 <= j <= m:
        raise ValueError(f"grid coordinate {(i, j)} out of range for {m} columns")
    return (i - 1) * m + (j - 1)


def grid_coord(v: int, m: int) -> tuple[int, int]:
    return v // m + 1, v % m + 1


def torus_index(i: int, j: int, n: int, m: int) -> int:
    return (i % n) * m + (j % m)


def _normalize_connection(n: int, m: int, connection: Iterable[Sequence[int]]) -> set[tuple[int, int]]:
    return {(int(s[0]) % n, int(s[1]) % m) for s in connection}


def cayley_z2(n: int, m: int, connection: Iterable[Sequence[int]]) -> SimpleGraph:
    """Cayley graph of ``Z_n x Z_m``: ``(a, b) -- (c, d)`` iff ``(c - a, d - b)`` is in the set.

    The connection set must be closed under negation and avoid ``(0, 0)``.
    Vertex ``(i, j)`` has index ``i * m + j``.
    """
    if n < 1 or m < 1:
        raise ValueError("moduli must be positive")
    conn = _normalize_connection(n, m, connection)
    if (0, 0) in conn:
        raise ValueError("connection set contains the identity (would create loops)")
    for a, b in conn:
        if ((-a) % n, (-b) % m) not in conn:
            raise ValueError(f"connection set is not symmetric: missing the negation of {(a, b)}")
    edges = []
    for i in range(n):
        for j in range(m):
            for a, b in conn:
                edges.append((i * m + j, torus_index(i + a, j + b, n, m)))
    return SimpleGraph.from_edges(n * m, edges)


def symmetrize(n: int, m: int, generators: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    """Close a generator list under negation mod ``(n, m)``, deduplicated and sorted."""
    out = set()
    for a, b in generators:
        out.add((a % n, b % m))
        out.add(((-a) % n, (-b) % m))
    return sorted(out)


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Vertex-disjoint union; ``g``'s vertices come first."""
    a = np.zeros((g.n + h.n, g.n + h.n), dtype=bool)
    a[: g.n, : g.n] = g.adj
    a[g.n :, g.n :] = h.adj
    return SimpleGraph(a)


def components(g: SimpleGraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by minimum vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbor_lists[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def component_of(g: SimpleGraph, v: int) -> list[int]:
    for comp in components(g):
        if v in comp:
            return comp
    raise IndexError(v)


def induced_subgraph(g: SimpleGraph, vertices: Sequence[int]) -> SimpleGraph:
    """Subgraph induced on ``vertices``; local vertex ``k`` is ``vertices[k]``."""
    idx = np.asarray(list(vertices), dtype=int)
    return SimpleGraph(g.adj[np.ix_(idx, idx)])


def remove_vertices(g: SimpleGraph, drop: Iterable[int]) -> tuple[SimpleGraph, list[int]]:
    """Delete vertices; returns the remaining graph and the kept original indices."""
    drop = set(drop)
    keep = [v for v in range(g.n) if v not in drop]
    return induced_subgraph(g, keep), keep
