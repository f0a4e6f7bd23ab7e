"""Matrix product of graphs and verification of factorizations ``A = BC``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .graph import SimpleGraph

PROVENANCES = ("oracle", "matching-search", "construction", "external")


class SizeMismatchError(ValueError):
    pass


class Check(NamedTuple):
    """Outcome of a structural check with the first offending witness (or None)."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def _same_size(*graphs: SimpleGraph) -> int:
    sizes = {g.n for g in graphs}
    if len(sizes) != 1:
        raise SizeMismatchError(f"vertex counts differ: {[g.n for g in graphs]}")
    return sizes.pop()


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Arc multiplicities of the product ``HK``; loops live on the diagonal."""

    arcs: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.arcs, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("arc matrix must be square")
        if (a < 0).any():
            raise ValueError("arc multiplicities must be non-negative")
        a.setflags(write=False)
        object.__setattr__(self, "arcs", a)

    @property
    def n(self) -> int:
        return self.arcs.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return bool(np.array_equal(self.arcs, other.arcs))

    def multiplicity(self, i: int, j: int) -> int:
        return int(self.arcs[i, j])

    def is_simple_graph(self) -> bool:
        """True iff the arcs form a 0/1 symmetric matrix with zero diagonal."""
        a = self.arcs
        return bool((a <= 1).all() and np.array_equal(a, a.T) and not a.diagonal().any())

    def to_graph(self) -> SimpleGraph:
        if not self.is_simple_graph():
            raise ValueError("product is not the adjacency matrix of a simple graph")
        return SimpleGraph(self.arcs.astype(bool))

    def to_dict(self) -> dict[str, Any]:
        i, j = np.nonzero(self.arcs)
        return {
            "n": self.n,
            "arcs": [[int(a), int(b), int(self.arcs[a, b])] for a, b in zip(i, j)],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "WeightedDigraph":
        a = np.zeros((int(d["n"]), int(d["n"])), dtype=np.int64)
        for i, j, mult in d["arcs"]:
            a[i, j] = mult
        return cls(a)


def product(h: SimpleGraph, k: SimpleGraph) -> WeightedDigraph:
    """The product digraph ``HK``: entry ``(i, j)`` counts paths ``i -H- w -K- j``."""
    _same_size(h, k)
    return WeightedDigraph(h.int_matrix() @ k.int_matrix())


@dataclass(frozen=True, eq=False)
class Factorization:
    """A verified triple with ``adj(g) = adj(h) @ adj(k)``."""

    g: SimpleGraph
    h: SimpleGraph
    k: SimpleGraph
    provenance: str = "external"

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        _same_size(self.g, self.h, self.k)
        report = _first_violation(self.g, self.h, self.k)
        if report is not None:
            raise ValueError(f"not a factorization: {report}")

    @property
    def n(self) -> int:
        return self.g.n

    def swapped(self) -> "Factorization":
        """The pair in the other order; valid because ``BC = CB`` for any factorization."""
        return Factorization(self.g, self.k, self.h, self.provenance)

    def has_matching_factor(self) -> bool:
        return self.h.is_perfect_matching() or self.k.is_perfect_matching()

    def key(self) -> tuple[bytes, bytes]:
        return (np.packbits(self.h.adj).tobytes(), np.packbits(self.k.adj).tobytes())

    def to_dict(self) -> dict[str, Any]:
        from .formats import graph_to_dict

        return {"H": graph_to_dict(self.h), "K": graph_to_dict(self.k), "provenance": self.provenance}


@dataclass(frozen=True)
class FailureReport:
    """Why ``adj(h) @ adj(k)`` differs from ``adj(g)``: first bad entry in row-major order."""

    i: int
    j: int
    got: int
    want: int
    residual: np.ndarray | None = None

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"entry ({self.i}, {self.j}) of BC is {self.got}, expected {self.want}"


def _first_violation(g: SimpleGraph, h: SimpleGraph, k: SimpleGraph, verbose: bool = False) -> FailureReport | None:
    bc = h.int_matrix() @ k.int_matrix()
    want = g.int_matrix()
    diff = bc != want
    if not diff.any():
        return None
    i, j = (int(x) for x in np.argwhere(diff)[0])
    return FailureReport(i, j, int(bc[i, j]), int(want[i, j]), (bc - want) if verbose else None)


def verify_factorization(
    g: SimpleGraph,
    h: SimpleGraph,
    k: SimpleGraph,
    provenance: str = "external",
    verbose: bool = False,
) -> Factorization | FailureReport:
    """Return a :class:`Factorization` if ``A = BC`` exactly, else a :class:`FailureReport`.

    With ``verbose`` the report carries the full residual ``BC - A``.
    """
    _same_size(g, h, k)
    report = _first_violation(g, h, k, verbose)
    if report is not None:
        return report
    return Factorization(g, h, k, provenance)


def degree_product_holds(g: SimpleGraph, h: SimpleGraph, k: SimpleGraph) -> Check:
    """``deg_G(u) == deg_H(u) * deg_K(u)`` at every vertex; witness is the first failing vertex."""
    _same_size(g, h, k)
    for u in range(g.n):
        if g.degrees[u] != h.degrees[u] * k.degrees[u]:
            return Check(False, u)
    return Check(True)


def k_component_degree_constancy(h: SimpleGraph, k: SimpleGraph) -> Check:
    """``deg_K`` is constant on components of ``h`` and ``deg_H`` on components of ``k``.

    Constancy on a component is equivalent to equality across each of its
    edges, so edges are scanned. The witness is ``(u, v, factor)`` where
    ``factor`` names the graph whose edge ``u -- v`` joins unequal degrees.
    """
    _same_size(h, k)
    for u, v in h.edges:
        if k.degrees[u] != k.degrees[v]:
            return Check(False, (u, v, "H"))
    for u, v in k.edges:
        if h.degrees[u] != h.degrees[v]:
            return Check(False, (u, v, "K"))
    return Check(True)


def edge_disjoint(h: SimpleGraph, k: SimpleGraph) -> Check:
    _same_size(h, k)
    both = np.argwhere(np.triu(h.adj & k.adj, 1))
    if len(both):
        return Check(False, tuple(int(x) for x in both[0]))
    return Check(True)
