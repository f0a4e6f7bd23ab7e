"""The two-coloured union of a factor pair: diamond condition, matched pairs, phi."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from .graph import SimpleGraph, component_of
from .product import SizeMismatchError

Side = Literal["blue", "red"]


class NonSimpleUnionError(ValueError):
    """The two factors share an edge, so their union has a doubled edge."""


class PhiDomainError(ValueError):
    def __init__(self, vertex: int, degree: int, side: str):
        super().__init__(
            f"vertex {vertex} has {side} degree {degree}, expected 1; "
            "the pair does not come from a genuine factorization"
        )
        self.vertex = vertex
        self.degree = degree
        self.side = side


@dataclass(frozen=True, eq=False)
class ColoredUnion:
    """``H (+) K`` on a shared vertex set; ``blue`` is H and ``red`` is K."""

    blue: SimpleGraph
    red: SimpleGraph

    def __post_init__(self) -> None:
        if self.blue.n != self.red.n:
            raise SizeMismatchError("blue and red graphs must share a vertex set")

    @property
    def n(self) -> int:
        return self.blue.n

    def multiplicity(self, u: int, v: int) -> int:
        return int(self.blue.adj[u, v]) + int(self.red.adj[u, v])

    @property
    def shared_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.blue.edges if self.red.adj[e]]

    @property
    def multiplicities(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for e in self.blue.edges:
            out[e] += 1
        for e in self.red.edges:
            out[e] += 1
        return dict(out)

    @property
    def num_edges(self) -> int:
        """Edge count with multiplicity."""
        return self.blue.num_edges + self.red.num_edges

    def is_simple(self) -> bool:
        return not self.shared_edges

    def side(self, which: Side) -> SimpleGraph:
        return self.blue if which == "blue" else self.red

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.blue.adj | self.red.adj)


def build_union(h: SimpleGraph, k: SimpleGraph) -> ColoredUnion:
    return ColoredUnion(h, k)


@dataclass(frozen=True)
class DiamondViolation:
    u: int
    v: int
    blue_red: int
    red_blue: int
    blue_red_middles: tuple[int, ...] = ()
    red_blue_middles: tuple[int, ...] = ()


@dataclass(frozen=True)
class DiamondReport:
    ok: bool
    violations: tuple[DiamondViolation, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def _alternating_paths(first: SimpleGraph, second: SimpleGraph) -> dict[tuple[int, int], list[int]]:
    paths: dict[tuple[int, int], list[int]] = defaultdict(list)
    for u in range(first.n):
        for w in first.neighbor_lists[u]:
            for v in second.neighbor_lists[w]:
                paths[(u, v)].append(w)
    return paths


def diamond_condition(cu: ColoredUnion) -> DiamondReport:
    """Check that blue-red and red-blue 2-paths pair up uniquely between every ordered pair.

    For ``u != v`` both counts must agree and be at most 1; for ``u == v``
    both must vanish. This is exactly "``BC`` is a symmetric 0/1 matrix with
    zero diagonal", computed by path enumeration so that violations name
    their middle vertices.
    """
    if not cu.is_simple():
        raise NonSimpleUnionError(f"edges coloured both blue and red: {cu.shared_edges}")
    br = _alternating_paths(cu.blue, cu.red)
    rb = _alternating_paths(cu.red, cu.blue)
    violations = []
    for u, v in sorted(set(br) | set(rb)):
        a, b = br.get((u, v), []), rb.get((u, v), [])
        bad = (len(a) > 0 or len(b) > 0) if u == v else (len(a) != len(b) or len(a) > 1)
        if bad:
            violations.append(DiamondViolation(u, v, len(a), len(b), tuple(a), tuple(b)))
    return DiamondReport(not violations, tuple(violations))


@dataclass(frozen=True, order=True)
class MatchedPair:
    """Adjacent vertices ``u < v`` that both have degree 1 in the ``side`` factor."""

    u: int
    v: int
    side: Side


def find_matched_pairs(cu: ColoredUnion) -> list[MatchedPair]:
    out = []
    for side in ("blue", "red"):
        f = cu.side(side)
        for u, v in f.edges:
            if f.degrees[u] == 1 and f.degrees[v] == 1:
                out.append(MatchedPair(u, v, side))
    return out


@dataclass(frozen=True)
class PhiReport:
    """The map ``x -> unique pendant-side neighbour`` on the two components of a matched pair.

    ``source`` and ``target`` are the other-colour components of ``u`` and
    ``v``. ``bad_edges`` lists other-colour edges whose images are not
    edges, ``non_involutive`` vertices with ``phi(phi(x)) != x``.
    """

    mapping: dict[int, int]
    source: tuple[int, ...]
    target: tuple[int, ...]
    bad_edges: tuple[tuple[int, int], ...]
    non_involutive: tuple[int, ...]

    @property
    def is_homomorphism(self) -> bool:
        return not self.bad_edges

    @property
    def is_involution(self) -> bool:
        return not self.non_involutive

    @property
    def swaps_components(self) -> bool:
        return sorted(self.mapping[x] for x in self.source) == list(self.target)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_homomorphism and self.is_involution and self.swaps_components


def _other(side: Side) -> Side:
    return "red" if side == "blue" else "blue"


def phi_homomorphism(cu: ColoredUnion, pair: MatchedPair) -> PhiReport:
    pend = cu.side(pair.side)
    other = cu.side(_other(pair.side))
    source = component_of(other, pair.u)
    target = component_of(other, pair.v)
    domain = sorted(set(source) | set(target))
    mapping = {}
    for x in domain:
        if pend.degrees[x] != 1:
            raise PhiDomainError(x, pend.degrees[x], pair.side)
        mapping[x] = pend.neighbor_lists[x][0]
    bad_edges = tuple(
        (a, b)
        for a, b in other.edges
        if a in mapping and b in mapping and not other.adj[mapping[a], mapping[b]]
    )
    non_inv = tuple(x for x in domain if mapping.get(mapping[x]) != x)
    return PhiReport(mapping, tuple(source), tuple(target), bad_edges, non_inv)


def is_alone(cu: ColoredUnion, g: SimpleGraph, vertex_set: Iterable[int]) -> bool:
    """No vertex outside the set has a neighbour inside it, in ``g`` or in the union."""
    if g.n != cu.n:
        raise SizeMismatchError("g and the union must share a vertex set")
    inside = np.zeros(g.n, dtype=bool)
    inside[list(vertex_set)] = True
    reach = g.adj | cu.blue.adj | cu.red.adj
    return not reach[np.ix_(~inside, inside)].any()
