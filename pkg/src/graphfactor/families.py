"""Recognition of grids and tori up to isomorphism, and their analytic involutions."""

from __future__ import annotations

from dataclasses import dataclass

from .automorphism import Permutation, find_isomorphism
from .graph import SimpleGraph, grid_graph, torus_graph


@dataclass(frozen=True)
class FamilyMatch:
    """``g`` is isomorphic to the canonical ``family(rows, cols)``.

    ``embed[v]`` is the vertex of ``g`` playing canonical vertex ``v``.
    """

    family: str  # "grid" | "torus"
    rows: int
    cols: int
    embed: tuple[int, ...]

    def transport(self, perm: Permutation) -> Permutation:
        """Conjugate a permutation of the canonical graph onto ``g``'s labels."""
        images = [0] * len(self.embed)
        for v, w in enumerate(perm.images):
            images[self.embed[v]] = self.embed[w]
        return Permutation(tuple(images))


def _divisor_pairs(n: int, lo: int) -> list[tuple[int, int]]:
    return [(a, n // a) for a in range(lo, int(n**0.5) + 1) if n % a == 0 and n // a >= lo]


def recognize_grid(g: SimpleGraph, min_side: int = 1) -> FamilyMatch | None:
    """Match ``g`` against ``P_a x P_b`` with ``min_side <= a <= b`` (``a = 1`` is a path)."""
    n = g.n
    if n == 0 or not g.is_connected():
        return None
    for a, b in _divisor_pairs(n, min_side):
        if g.num_edges != a * (b - 1) + b * (a - 1):
            continue
        iso = find_isomorphism(grid_graph(a, b), g)
        if iso is not None:
            return FamilyMatch("grid", a, b, tuple(iso))
    return None


def recognize_torus(g: SimpleGraph) -> FamilyMatch | None:
    """Match ``g`` against ``C_a x C_b`` with ``3 <= a <= b``."""
    n = g.n
    if n < 9 or not g.is_regular(4) or not g.is_connected():
        return None
    for a, b in _divisor_pairs(n, 3):
        iso = find_isomorphism(torus_graph(a, b), g)
        if iso is not None:
            return FamilyMatch("torus", a, b, tuple(iso))
    return None


def grid_antipodal(n: int, m: int) -> Permutation:
    """``(i, j) -> (n + 1 - i, m + 1 - j)`` on the canonical ``P_n x P_m``."""
    return Permutation(tuple((n - 1 - v // m) * m + (m - 1 - v % m) for v in range(n * m)))


def torus_half_turn(n: int, m: int) -> Permutation:
    """Translation by half the even dimension (the first one if both are even)."""
    if n % 2 == 0:
        return Permutation(tuple(((v // m + n // 2) % n) * m + v % m for v in range(n * m)))
    if m % 2 == 0:
        return Permutation(tuple((v // m) * m + (v % m + m // 2) % m for v in range(n * m)))
    raise ValueError("torus half-turn needs an even dimension")


def analytic_involution(g: SimpleGraph) -> Permutation | None:
    """The closed-form matching involution of an even grid or a torus with an even side."""
    match = recognize_grid(g)
    if match is not None:
        if match.rows % 2 or match.cols % 2:
            return None
        return match.transport(grid_antipodal(match.rows, match.cols))
    match = recognize_torus(g)
    if match is not None and (match.rows % 2 == 0 or match.cols % 2 == 0):
        return match.transport(torus_half_turn(match.rows, match.cols))
    return None
