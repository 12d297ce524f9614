from itertools import combinations

import pytest

from coprimality.graph import CoprimalityGraph, complete_edges, cycle_graph, example2_graph


def all_graphs(k):
    edges = complete_edges(k)
    for mask in range(1 << len(edges)):
        yield CoprimalityGraph(k, frozenset(e for t, e in enumerate(edges) if mask >> t & 1))


def brute_independent(G, S):
    return not any(a in S and b in S for a, b in G.edges)


def brute_is_cover(G, J):
    return all(a in J or b in J for a, b in G.edges)


def brute_subsets(pool):
    pool = sorted(pool)
    for size in range(len(pool) + 1):
        yield from (frozenset(c) for c in combinations(pool, size))


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def ex2():
    return example2_graph()


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
