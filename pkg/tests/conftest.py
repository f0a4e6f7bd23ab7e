import random

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from graphfactor.automorphism import Permutation, factor_by_matching
from graphfactor.graph import SimpleGraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Tag an acceptance test with its criterion number and title."""

    def record(number, title):
        request.node.criterion = (number, title)

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    tag = getattr(item, "criterion", None)
    if tag is not None and rep.when == "call":
        verdict = "PASS" if rep.passed else "FAIL"
        item.config.stash.setdefault(_CRITERIA, []).append((tag[0], f"criterion {tag[0]:>2}: {verdict}  {tag[1]}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    # chain the components together so the result is connected
    from graphfactor.graph import components

    comps = components(g)
    edges = list(g.edges) + [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
    return SimpleGraph.from_edges(g.n, edges)


@st.composite
def involution_factorizations(draw):
    """Factorizations built from a random graph that is invariant under a random perfect matching."""
    half = draw(st.integers(1, 4))
    n = 2 * half
    order = draw(st.permutations(range(n)))
    images = [0] * n
    for a, b in zip(order[::2], order[1::2]):
        images[a], images[b] = b, a
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if images[u] != v and draw(st.booleans()):
                edges.add((u, v))
                edges.add(tuple(sorted((images[u], images[v]))))
    return factor_by_matching(SimpleGraph.from_edges(n, sorted(edges)), Permutation(tuple(images)))


def random_tree(n, rng):
    """Uniform labelled tree from a random Pruefer sequence."""
    if n == 1:
        return SimpleGraph.empty(1)
    if n == 2:
        return SimpleGraph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)


def random_graph(n, p, rng):
    a = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                a[i, j] = a[j, i] = True
    return SimpleGraph(a)


@pytest.fixture
def rng():
    return random.Random(20240611)
