"""Automorphisms, perfect-matching involutions, centres and shortest-path obstructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .graph import SimpleGraph
from .product import Factorization, verify_factorization

DEFAULT_BOUND = 12


class BoundExceededError(ValueError):
    """The graph is larger than the exhaustive-enumeration bound."""


class DisconnectedGraphError(ValueError):
    pass


class InvalidInvolutionError(ValueError):
    """A permutation offered as a matching factor fails one of the required conditions."""

    MESSAGES = {
        "size": "permutation size differs from the graph",
        "involution": "permutation is not an involution",
        "automorphism": "permutation is not an automorphism",
        "fixed-edge": "automorphism fixes an edge",
        "fixed-vertex": "automorphism fixes a vertex",
    }

    def __init__(self, condition: str, witness: object):
        super().__init__(f"{self.MESSAGES[condition]} (witness: {witness})")
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a bijection")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        return Permutation(tuple(self.images[other.images[v]] for v in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.images):
            inv[w] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.images))

    def is_involution(self) -> bool:
        return all(self.images[w] == v for v, w in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [v for v, w in enumerate(self.images) if v == w]

    def fixed_edges(self, g: SimpleGraph) -> list[tuple[int, int]]:
        """Edges ``{u, v}`` of ``g`` that the permutation swaps."""
        return [(u, v) for u, v in g.edges if self.images[u] == v and self.images[v] == u]

    def is_automorphism(self, g: SimpleGraph) -> bool:
        p = np.asarray(self.images, dtype=np.intp)
        return bool(np.array_equal(g.adj[np.ix_(p, p)], g.adj))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            cyc = [s]
            seen[s] = True
            v = self.images[s]
            while v != s:
                cyc.append(v)
                seen[v] = True
                v = self.images[v]
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in nontrivial)


@dataclass(frozen=True, order=True)
class MatchingInvolution:
    """A fixed-point-free involution; its transpositions are the edges of a perfect matching."""

    perm: Permutation

    def __post_init__(self) -> None:
        if not self.perm.is_involution():
            raise InvalidInvolutionError("involution", self.perm.cycle_notation())
        fixed = self.perm.fixed_points()
        if fixed:
            raise InvalidInvolutionError("fixed-vertex", fixed[0])

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "MatchingInvolution":
        return cls(Permutation(tuple(images)))

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(v, w) for v, w in enumerate(self.perm.images) if v < w]

    def matching_graph(self) -> SimpleGraph:
        return SimpleGraph.from_edges(self.n, self.pairs)


# -- colour refinement and backtracking -------------------------------------


def refine_colors(graphs: Sequence[SimpleGraph]) -> list[list[int]]:
    """Joint colour refinement seeded by degree; colour ids are comparable across graphs.

    Two vertices (in the same or different graphs) related by an
    isomorphism always receive the same colour.
    """
    colors = [[d for d in g.degrees] for g in graphs]
    num = len({c for cs in colors for c in cs})
    while True:
        sigs = [
            [(cs[v], tuple(sorted(cs[w] for w in g.neighbor_lists[v]))) for v in range(g.n)]
            for g, cs in zip(graphs, colors)
        ]
        table = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        colors = [[table[s] for s in ss] for ss in sigs]
        if len(table) == num:
            return colors
        num = len(table)


def _search_order(g: SimpleGraph, colors: Sequence[int]) -> list[int]:
    """BFS order per component, each component started at a vertex from a rarest colour class."""
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    seen = [False] * g.n
    order = []
    for s in sorted(range(g.n), key=lambda v: (counts[colors[v]], colors[v], v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.neighbor_lists[u], key=lambda x: (counts[colors[x]], x)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _isomorphisms(
    g1: SimpleGraph,
    g2: SimpleGraph,
    colors1: Sequence[int],
    colors2: Sequence[int],
) -> Iterator[list[int]]:
    """Yield every isomorphism ``g1 -> g2`` as an image list.

    Candidates for the next vertex must share its refined colour and, when
    it has an already-mapped neighbour, lie next to that neighbour's image;
    adjacency to all mapped vertices is then checked via bitmasks.
    """
    n = g1.n
    if n != g2.n or sorted(colors1) != sorted(colors2):
        return
    order = _search_order(g1, colors1)
    pos = {v: i for i, v in enumerate(order)}
    # mapped neighbours of order[d] among order[:d]
    back = [[w for w in g1.neighbor_lists[v] if pos[w] < d] for d, v in enumerate(order)]
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(colors2[v], []).append(v)
    m2 = g2.masks
    image = [-1] * n
    used = 0

    def rec(d: int) -> Iterator[list[int]]:
        nonlocal used
        if d == n:
            yield list(image)
            return
        v = order[d]
        expected = 0
        for w in back[d]:
            expected |= 1 << image[w]
        if back[d]:
            anchor = image[back[d][0]]
            cands = [c for c in g2.neighbor_lists[anchor] if colors2[c] == colors1[v]]
        else:
            cands = by_color[colors1[v]]
        for c in cands:
            if used >> c & 1 or (m2[c] & used) != expected:
                continue
            image[v] = c
            used |= 1 << c
            yield from rec(d + 1)
            used &= ~(1 << c)
            image[v] = -1

    yield from rec(0)


def find_isomorphism(g1: SimpleGraph, g2: SimpleGraph) -> list[int] | None:
    """An isomorphism ``g1 -> g2`` as an image list (``g2`` vertex of each ``g1`` vertex), or None."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges or sorted(g1.degrees) != sorted(g2.degrees):
        return None
    c1, c2 = refine_colors([g1, g2])
    return next(_isomorphisms(g1, g2, c1, c2), None)


def are_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    return find_isomorphism(g1, g2) is not None


def automorphisms(g: SimpleGraph, max_vertices: int = DEFAULT_BOUND) -> list[Permutation]:
    """The full automorphism group, sorted by image tuple.

    Refuses (``BoundExceededError``) above ``max_vertices`` instead of sampling.
    """
    if g.n > max_vertices:
        raise BoundExceededError(f"n={g.n} exceeds the automorphism bound {max_vertices}")
    (colors,) = refine_colors([g])
    return sorted(Permutation(tuple(im)) for im in _isomorphisms(g, g, colors, colors))


def check_matching_involution(g: SimpleGraph, perm: Permutation) -> None:
    """Raise ``InvalidInvolutionError`` naming the first failed condition.

    The fixed-edge test comes before the fixed-vertex test.
    """
    if perm.n != g.n:
        raise InvalidInvolutionError("size", perm.n)
    if not perm.is_involution():
        raise InvalidInvolutionError("involution", perm.cycle_notation())
    if not perm.is_automorphism(g):
        bad = next((u, v) for u, v in g.edges if not g.adj[perm(u), perm(v)])
        raise InvalidInvolutionError("automorphism", bad)
    fixed_edges = perm.fixed_edges(g)
    if fixed_edges:
        raise InvalidInvolutionError("fixed-edge", fixed_edges[0])
    fixed = perm.fixed_points()
    if fixed:
        raise InvalidInvolutionError("fixed-vertex", fixed[0])


def _pairing_search(g: SimpleGraph, colors: Sequence[int]) -> Iterator[list[int]]:
    """Enumerate fixed-point-free, fixed-edge-free involutive automorphisms directly.

    The smallest unmatched vertex is paired with a non-adjacent vertex of
    the same colour whose adjacency to the matched set mirrors its own.
    """
    n = g.n
    masks = g.masks
    sigma = [-1] * n

    def mapped_mask(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << sigma[low.bit_length() - 1]
            mask ^= low
        return out

    def rec(done: int) -> Iterator[list[int]]:
        if done == (1 << n) - 1:
            yield list(sigma)
            return
        u = (~done & (done + 1)).bit_length() - 1
        for v in range(u + 1, n):
            if done >> v & 1 or colors[v] != colors[u] or masks[u] >> v & 1:
                continue
            if mapped_mask(masks[u] & done) != masks[v] & done:
                continue
            sigma[u], sigma[v] = v, u
            yield from rec(done | 1 << u | 1 << v)
            sigma[u] = sigma[v] = -1

    if n % 2 == 0:
        yield from rec(0)


def matching_involutions(
    g: SimpleGraph,
    max_vertices: int = DEFAULT_BOUND,
    fast_path: bool = True,
) -> list[MatchingInvolution]:
    """All automorphisms that are involutions with no fixed vertex and no fixed edge.

    These are exactly the perfect matchings usable as a factor. Above
    ``max_vertices`` the exhaustive search is refused, except that grids
    and tori (recognised up to isomorphism) return their analytic
    involution, checked by :func:`check_matching_involution`. That fast
    path returns a single candidate, not the full list.
    """
    if g.n > max_vertices:
        if fast_path:
            from .families import analytic_involution

            perm = analytic_involution(g)
            if perm is not None:
                check_matching_involution(g, perm)
                return [MatchingInvolution(perm)]
        raise BoundExceededError(f"n={g.n} exceeds the involution-search bound {max_vertices}")
    (colors,) = refine_colors([g])
    return sorted(MatchingInvolution(Permutation(tuple(s))) for s in _pairing_search(g, colors))


def factor_by_matching(g: SimpleGraph, m: MatchingInvolution | Permutation) -> Factorization:
    """Factor ``g`` as (perfect matching of ``m``) times ``K`` with ``adj(K) = B A``."""
    perm = m.perm if isinstance(m, MatchingInvolution) else m
    check_matching_involution(g, perm)
    p = np.asarray(perm.images, dtype=np.intp)
    k = SimpleGraph(g.adj[p, :])
    h = SimpleGraph.from_edges(g.n, ((v, w) for v, w in enumerate(perm.images) if v < w))
    result = verify_factorization(g, h, k, provenance="matching-search")
    if not isinstance(result, Factorization):  # pragma: no cover - guarded by the checks above
        raise AssertionError(f"matching construction failed verification: {result}")
    return result


# -- distances --------------------------------------------------------------


@dataclass(frozen=True)
class CenterReport:
    eccentricities: tuple[int, ...]
    radius: int
    center: tuple[int, ...]


def _require_connected(g: SimpleGraph) -> None:
    if g.n == 0 or not g.is_connected():
        raise DisconnectedGraphError("graph must be connected and non-empty")


def center(g: SimpleGraph) -> CenterReport:
    _require_connected(g)
    ecc = tuple(max(g.distances_from(v)) for v in range(g.n))
    r = min(ecc)
    return CenterReport(ecc, r, tuple(v for v in range(g.n) if ecc[v] == r))


def unique_shortest_path_pairs(
    g: SimpleGraph, max_vertices: int = 256
) -> list[tuple[int, int, tuple[int, ...]]]:
    """Pairs ``u < v`` joined by exactly one shortest path, with that path."""
    _require_connected(g)
    if g.n > max_vertices:
        raise BoundExceededError(f"n={g.n} exceeds the bound {max_vertices}")
    out = []
    for s in range(g.n):
        dist = [-1] * g.n
        count = [0] * g.n
        dist[s], count[s] = 0, 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbor_lists[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    count[w] += count[u]
        for t in range(s + 1, g.n):
            if count[t] != 1:
                continue
            path = [t]
            while path[-1] != s:
                x = path[-1]
                path.append(next(p for p in g.neighbor_lists[x] if dist[p] == dist[x] - 1 and count[p]))
            out.append((s, t, tuple(reversed(path))))
    return out


@dataclass(frozen=True)
class ObstructionReport:
    verdict: str  # "no-involution-possible" | "inconclusive"
    reasons: tuple[str, ...]
    center: tuple[int, ...]


def involution_obstruction(g: SimpleGraph) -> ObstructionReport:
    """Cheap certificates that ``g`` has no fixed-point-free, fixed-edge-free involution.

    Odd order leaves a fixed vertex. A one-vertex centre is fixed by every
    automorphism; a centre of two adjacent vertices is fixed setwise, so an
    involution either fixes both vertices or swaps them across an edge.
    """
    _require_connected(g)
    rep = center(g)
    reasons = []
    if g.n % 2:
        reasons.append("odd-order")
    if len(rep.center) == 1:
        reasons.append("single-vertex-center")
    elif len(rep.center) == 2 and g.has_edge(*rep.center):
        reasons.append("center-edge")
    verdict = "no-involution-possible" if reasons else "inconclusive"
    return ObstructionReport(verdict, tuple(reasons), rep.center)
