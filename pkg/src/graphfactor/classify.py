"""Prime-graph decision rules and the classification pipeline.

A graph is prime when every factorization has a perfect-matching factor;
a graph with no factorization at all is prime vacuously. Verdicts carry
the name of the rule that settled them plus a human-readable trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .automorphism import (
    DEFAULT_BOUND,
    factor_by_matching,
    involution_obstruction,
    matching_involutions,
)
from .families import recognize_grid, recognize_torus
from .graph import SimpleGraph, components
from .product import Check, Factorization
from .search import SearchBudget, oracle_factorizations, pair_up_components
from .union import build_union, find_matched_pairs

STATUSES = ("prime-vacuous", "prime-matching", "not-prime", "unknown")


@dataclass(frozen=True)
class RuleHit:
    name: str
    witnesses: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class PrimeVerdict:
    status: str
    rule: str
    trace: tuple[str, ...] = ()
    witnesses: dict[str, Any] = field(default_factory=dict)
    certificates: tuple[Factorization, ...] = ()

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "prime-matching" and not any(c.has_matching_factor() for c in self.certificates):
            raise ValueError("prime-matching needs a certificate with a perfect-matching factor")
        if self.status == "not-prime" and not any(not c.has_matching_factor() for c in self.certificates):
            raise ValueError("not-prime needs a certificate without a perfect-matching factor")

    @property
    def is_prime(self) -> bool:
        return self.status.startswith("prime")

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "rule": self.rule,
            "trace": list(self.trace),
            "witnesses": self.witnesses,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def _is_prime_number(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def is_c4_free(g: SimpleGraph) -> Check:
    """No two vertices share two neighbours; the witness is a 4-cycle ``(u, a, v, b)``."""
    masks = g.masks
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = masks[u] & masks[v]
            if common.bit_count() >= 2:
                a = (common & -common).bit_length() - 1
                rest = common & ~(1 << a)
                b = (rest & -rest).bit_length() - 1
                return Check(False, (u, a, v, b))
    return Check(True)


def degree_rules(g: SimpleGraph) -> list[RuleHit]:
    """Every degree-sequence primality rule that applies to a connected graph, in priority order."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("degree rules need a connected graph")
    degs = g.degrees
    present = set(degs)
    hits = []
    top = max(degs)
    if _is_prime_number(top):
        hits.append(RuleHit("max-degree-prime", {"p": top, "vertex": degs.index(top)}))
    for p in sorted(present, reverse=True):
        if _is_prime_number(p) and not any(d != p and d % p == 0 for d in present):
            hits.append(RuleHit("degree-p-no-kp", {"p": p, "vertex": degs.index(p)}))
            break
    if 1 not in present:
        for u, v in g.edges:
            p, q = degs[u], degs[v]
            if _is_prime_number(p) and _is_prime_number(q) and p * q not in present:
                hits.append(RuleHit("adjacent-prime-degrees", {"p": p, "q": q, "edge": (u, v)}))
                break
    return hits


def prime_by_degree(g: SimpleGraph) -> RuleHit | None:
    """The first applicable degree rule for a connected graph, or None."""
    hits = degree_rules(g)
    return hits[0] if hits else None


def degree_quad_check(g: SimpleGraph) -> Check:
    """Necessary condition for factorability.

    Every edge ``{a, d}`` needs another edge ``{b, c}`` on four distinct
    vertices with ``deg(a) * deg(d) == deg(b) * deg(c)``. The witness is
    the first edge without a partner.
    """
    degs = g.degrees
    edges = g.edges
    for a, d in edges:
        target = degs[a] * degs[d]
        if not any(
            degs[b] * degs[c] == target and len({a, b, c, d}) == 4 for b, c in edges
        ):
            return Check(False, (a, d))
    return Check(True)


def prime_rule(g: SimpleGraph) -> RuleHit | None:
    """A structural rule proving ``g`` prime, or None. Graphs with isolated vertices get none."""
    if g.n < 2 or g.isolated_vertices():
        return None
    connected = g.is_connected()
    if connected:
        hit = prime_by_degree(g)
        if hit is not None:
            return hit
    if is_c4_free(g):
        return RuleHit("no-C4")
    if connected:
        grid = recognize_grid(g)
        if grid is not None:
            return RuleHit("grid", {"rows": grid.rows, "cols": grid.cols})
    return None


def _obstruction_trace(g: SimpleGraph) -> list[str]:
    if g.is_connected():
        return list(involution_obstruction(g).reasons)
    return []


def _decide_prime(g: SimpleGraph, rule: RuleHit, bound: int) -> PrimeVerdict:
    """For a prime graph: factorable iff it has a matching involution."""
    from .constructions import factor_doubled_forest, factor_grid, transport

    trace = [f"prime by {rule.name}"]
    if g.n <= bound:
        invs = matching_involutions(g, max_vertices=bound)
        if invs:
            cert = factor_by_matching(g, invs[0])
            trace.append(f"{len(invs)} matching involution(s)")
            return PrimeVerdict("prime-matching", rule.name, tuple(trace), rule.witnesses, (cert,))
        trace.append("no matching involution")
        trace += _obstruction_trace(g)
        return PrimeVerdict("prime-vacuous", rule.name, tuple(trace), rule.witnesses)
    grid = recognize_grid(g)
    if grid is not None:
        if grid.rows % 2 == 0 and grid.cols % 2 == 0:
            cert = transport(factor_grid(grid.rows, grid.cols).factorization, grid.embed, g)
            trace.append("even grid: antipodal matching")
            return PrimeVerdict("prime-matching", rule.name, tuple(trace), rule.witnesses, (cert,))
        trace.append("odd grid side")
        trace += _obstruction_trace(g)
        return PrimeVerdict("prime-vacuous", rule.name, tuple(trace), rule.witnesses)
    if g.is_forest():
        if pair_up_components(g) is None:
            trace.append("forest components do not pair up")
            return PrimeVerdict("prime-vacuous", rule.name, tuple(trace), rule.witnesses)
        trace.append("forest components pair up")
        return PrimeVerdict("prime-matching", rule.name, tuple(trace), rule.witnesses, (factor_doubled_forest(g),))
    if g.is_connected():
        obstruction = involution_obstruction(g)
        if obstruction.verdict == "no-involution-possible":
            trace += list(obstruction.reasons)
            return PrimeVerdict("prime-vacuous", rule.name, tuple(trace), rule.witnesses)
    trace.append(f"involution search refused above n={bound}")
    return PrimeVerdict("unknown", rule.name, tuple(trace), rule.witnesses)


def prime_test(
    g: SimpleGraph,
    budget: SearchBudget | None = None,
    involution_bound: int = DEFAULT_BOUND,
) -> PrimeVerdict:
    """Classify ``g`` as prime (vacuously or with a matching factorization), not prime, or unknown."""
    from .constructions import factor_torus_odd, transport

    budget = budget or SearchBudget()
    if g.num_edges == 0:
        empty = SimpleGraph.empty(g.n)
        cert = Factorization(g, empty, empty, "construction")
        return PrimeVerdict("not-prime", "edgeless", ("zero matrix is a product of zero matrices",), {}, (cert,))
    rule = prime_rule(g)
    if rule is not None:
        return _decide_prime(g, rule, involution_bound)
    quad = degree_quad_check(g)
    if not quad:
        return PrimeVerdict(
            "prime-vacuous", "degree-quad", ("edge without a degree-balanced partner edge",), {"edge": quad.witness}
        )
    torus = recognize_torus(g)
    if torus is not None and torus.rows % 2 and torus.cols % 2:
        cert = transport(factor_torus_odd(torus.rows, torus.cols).factorization, torus.embed, g)
        return PrimeVerdict(
            "not-prime", "odd-torus", ("two 2-regular Cayley factors",), {"rows": torus.rows, "cols": torus.cols}, (cert,)
        )
    outcome = oracle_factorizations(g, budget, find_all=True)
    if outcome.verdict == "exhausted":
        return PrimeVerdict("unknown", "oracle", (f"oracle exhausted ({outcome.stats.get('reason')})",))
    certs = outcome.certificates
    if not certs:
        return PrimeVerdict("prime-vacuous", "oracle", ("exhaustive search found no factorization",))
    bad = [c for c in certs if not c.has_matching_factor()]
    if bad:
        return PrimeVerdict("not-prime", "oracle", (f"{len(bad)} of {len(certs)} factorizations lack a matching factor",), {}, (bad[0],))
    return PrimeVerdict("prime-matching", "oracle", (f"all {len(certs)} factorizations have a matching factor",), {}, (certs[0],))


def matched_pair_coverage(f: Factorization) -> tuple[bool, bool]:
    """``(every component of G holds a matched-pair endpoint, some factor is a perfect matching)``."""
    pairs = find_matched_pairs(build_union(f.h, f.k))
    ends = {p.u for p in pairs} | {p.v for p in pairs}
    covered = all(ends & set(comp) for comp in components(f.g))
    return covered, f.has_matching_factor()
