"""Re-derive the structural consequences of a factorization from scratch.

A certificate that passes :func:`verify_factorization` must also satisfy
these facts; :func:`audit_factorization` lists any that fail, so an empty
list means the certificate is consistent with the theory.
"""

from __future__ import annotations

from .graph import component_of
from .product import (
    Factorization,
    degree_product_holds,
    edge_disjoint,
    k_component_degree_constancy,
    verify_factorization,
)
from .union import PhiDomainError, build_union, diamond_condition, find_matched_pairs, is_alone, phi_homomorphism


def audit_factorization(f: Factorization) -> list[str]:
    problems = []
    if not isinstance(verify_factorization(f.g, f.h, f.k), Factorization):
        problems.append("product does not reproduce G")
    disjoint = edge_disjoint(f.h, f.k)
    if not disjoint:
        problems.append(f"shared edge {disjoint.witness}")
        return problems
    if not diamond_condition(build_union(f.h, f.k)):
        problems.append("diamond condition fails")
    for a, b, label in ((f.h, f.k, "K on H-components"), (f.k, f.h, "H on K-components")):
        check = k_component_degree_constancy(a, b)
        if not check:
            problems.append(f"degree of {label} not constant at {check.witness}")
    prod = degree_product_holds(f.g, f.h, f.k)
    if not prod:
        problems.append(f"degree product fails at vertex {prod.witness}")
    cu = build_union(f.h, f.k)
    for pair in find_matched_pairs(cu):
        other = cu.side("red" if pair.side == "blue" else "blue")
        block = set(component_of(other, pair.u)) | set(component_of(other, pair.v))
        if not is_alone(cu, f.g, block):
            problems.append(f"components of matched pair {pair} are not alone")
        try:
            phi = phi_homomorphism(cu, pair)
        except PhiDomainError as exc:
            problems.append(f"phi undefined for {pair}: {exc}")
            continue
        if not phi.is_isomorphism:
            problems.append(f"phi is not an isomorphism for {pair}")
    return problems
