"""Closed-form factorizations of even grids, tori and doubled forests.

Every constructor checks its output with :func:`verify_factorization`
before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .automorphism import (
    MatchingInvolution,
    Permutation,
    check_matching_involution,
    factor_by_matching,
    involution_obstruction,
)
from .families import FamilyMatch, grid_antipodal, recognize_grid, recognize_torus, torus_half_turn
from .graph import SimpleGraph, cayley_z2, grid_graph, induced_subgraph, remove_vertices, symmetrize, torus_graph
from .product import Factorization, verify_factorization
from .search import forest_isomorphism, pair_up_components


class NotFactorableError(ValueError):
    pass


@dataclass(frozen=True)
class GridFactorization:
    n: int
    m: int
    matching: MatchingInvolution
    factorization: Factorization


@dataclass(frozen=True)
class TorusFactorization:
    n: int
    m: int
    mode: str  # "even-matching" | "odd-cayley"
    h: SimpleGraph
    k: SimpleGraph
    factorization: Factorization


def _as_construction(f: Factorization) -> Factorization:
    return Factorization(f.g, f.h, f.k, "construction")


def factor_grid(n: int, m: int) -> GridFactorization:
    """Factor ``P_n x P_m`` through the antipodal matching ``(i, j) <-> (n+1-i, m+1-j)``."""
    if n < 1 or m < 1:
        raise ValueError("grid dimensions must be positive")
    if n % 2 or m % 2:
        g = grid_graph(n, m)
        why = ", ".join(involution_obstruction(g).reasons) if g.n > 1 else "single vertex"
        raise NotFactorableError(
            f"P_{n} x P_{m} is not factorable: a grid factors iff both sides are even ({why})"
        )
    g = grid_graph(n, m)
    sigma = grid_antipodal(n, m)
    f = _as_construction(factor_by_matching(g, sigma))
    return GridFactorization(n, m, MatchingInvolution(sigma), f)


def factor_torus_even(n: int, m: int) -> TorusFactorization:
    """Factor ``C_n x C_m`` (a side even) through translation by half that side."""
    if n < 3 or m < 3:
        raise ValueError("torus sides must be at least 3")
    if n % 2 and m % 2:
        raise ValueError("both sides odd: use factor_torus_odd")
    g = torus_graph(n, m)
    sigma = torus_half_turn(n, m)
    check_matching_involution(g, sigma)
    f = _as_construction(factor_by_matching(g, sigma))
    return TorusFactorization(n, m, "even-matching", f.h, f.k, f)


def odd_torus_generators(n: int, m: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Symmetrized connection sets of the two Cayley factors of an odd torus."""
    h = symmetrize(n, m, [((n + 1) // 2, (m - 1) // 2), ((n - 1) // 2, (m + 1) // 2)])
    k = symmetrize(n, m, [((n - 1) // 2, (m - 1) // 2), ((n + 1) // 2, (m + 1) // 2)])
    return h, k


def factor_torus_odd(n: int, m: int) -> TorusFactorization:
    """Factor ``C_n x C_m`` with both sides odd into two 2-regular Cayley graphs."""
    if n < 3 or m < 3:
        raise ValueError("torus sides must be at least 3")
    if n % 2 == 0 or m % 2 == 0:
        raise ValueError("a side is even: use factor_torus_even")
    gens_h, gens_k = odd_torus_generators(n, m)
    h = cayley_z2(n, m, gens_h)
    k = cayley_z2(n, m, gens_k)
    result = verify_factorization(torus_graph(n, m), h, k, provenance="construction")
    if not isinstance(result, Factorization):
        raise AssertionError(f"odd torus construction failed at ({n}, {m}): {result}")
    return TorusFactorization(n, m, "odd-cayley", h, k, result)


def factor_torus(n: int, m: int) -> TorusFactorization:
    if n % 2 and m % 2:
        return factor_torus_odd(n, m)
    return factor_torus_even(n, m)


def doubled_forest_involution(f: SimpleGraph) -> Permutation:
    """Swap each component with its partner along an explicit tree isomorphism."""
    pairs = pair_up_components(f)
    if pairs is None:
        raise NotFactorableError(
            "forest is not factorable: some isomorphism class of components has odd multiplicity"
        )
    images = list(range(f.n))
    for left, right in pairs:
        iso = forest_isomorphism(induced_subgraph(f, left), induced_subgraph(f, right))
        assert iso is not None
        for x, y in enumerate(iso):
            images[left[x]] = right[y]
            images[right[y]] = left[x]
    return Permutation(tuple(images))


def factor_doubled_forest(f: SimpleGraph) -> Factorization:
    """Factor a forest whose components pair up isomorphically: matching times a relabelled copy."""
    if not f.is_forest():
        raise ValueError("expected a forest")
    return _as_construction(factor_by_matching(f, doubled_forest_involution(f)))


def transport(f: Factorization, embed: Sequence[int], g: SimpleGraph) -> Factorization:
    """Move a factorization of a canonical graph onto ``g`` via ``embed`` (canonical -> g vertex)."""
    result = verify_factorization(g, f.h.relabel(embed), f.k.relabel(embed), provenance=f.provenance)
    if not isinstance(result, Factorization):
        raise AssertionError(f"transported certificate failed: {result}")
    return result


def with_isolated(f: Factorization, g: SimpleGraph, kept: Sequence[int]) -> Factorization:
    """Lift a factorization of ``g`` minus isolated vertices back to ``g``."""
    h = np.zeros((g.n, g.n), dtype=bool)
    k = np.zeros((g.n, g.n), dtype=bool)
    idx = np.asarray(kept, dtype=np.intp)
    h[np.ix_(idx, idx)] = f.h.adj
    k[np.ix_(idx, idx)] = f.k.adj
    result = verify_factorization(g, SimpleGraph(h), SimpleGraph(k), provenance=f.provenance)
    assert isinstance(result, Factorization), result
    return result


@dataclass(frozen=True)
class FamilyResult:
    """Outcome of family recognition.

    ``certificate`` is set when a construction applies. ``complete`` means a
    negative answer is final (the family's characterization is an iff).
    """

    rule: str
    certificate: Factorization | None = None
    complete: bool = False
    trace: tuple[str, ...] = field(default=())
    match: FamilyMatch | None = None


def family_factorization(g: SimpleGraph) -> FamilyResult | None:
    """Recognize edgeless graphs, grids, tori and doubled forests."""
    if g.num_edges == 0:
        empty = SimpleGraph.empty(g.n)
        return FamilyResult("edgeless", Factorization(g, empty, empty, "construction"))
    grid = recognize_grid(g, min_side=2)
    if grid is not None:
        a, b = grid.rows, grid.cols
        if a % 2 == 0 and b % 2 == 0:
            cert = transport(factor_grid(a, b).factorization, grid.embed, g)
            return FamilyResult("grid-antipodal", cert, match=grid)
        reasons = involution_obstruction(g).reasons
        trace = (f"grid P_{a} x P_{b}", "grids factor iff both sides are even", *reasons)
        return FamilyResult("grid-odd", None, True, trace, grid)
    torus = recognize_torus(g)
    if torus is not None:
        tf = factor_torus(torus.rows, torus.cols)
        return FamilyResult(f"torus-{tf.mode}", transport(tf.factorization, torus.embed, g), match=torus)
    if g.is_forest():
        core, kept = remove_vertices(g, g.isolated_vertices())
        if pair_up_components(core) is not None:
            cert = factor_doubled_forest(core)
            if len(kept) < g.n:
                cert = with_isolated(cert, g, kept)
            return FamilyResult("doubled-forest", cert)
    return None
