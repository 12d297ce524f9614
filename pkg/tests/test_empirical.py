import math
from itertools import product
from math import gcd

import pytest

from coprimality.density import AT_LEAST, EXACT, density_A, density_exact_r
from coprimality.empirical import (
    EmpiricalError,
    convergence_diagnostic,
    count_beta_exact,
    count_beta_via_inclusion_exclusion,
    count_delta_exact,
    monte_carlo,
)
from coprimality.graph import CoprimalityGraph, complete_edges, complete_graph, empty_graph, path_graph

from conftest import all_graphs

EDGE = CoprimalityGraph.from_edges(2, [(1, 2)])


def brute_delta(G, x):
    return sum(all(gcd(n[i - 1], n[j - 1]) == 1 for i, j in G.edges)
               for n in product(range(1, x + 1), repeat=G.k))


def brute_pairs(k, x):
    pairs = complete_edges(k)
    for n in product(range(1, x + 1), repeat=k):
        yield sum(gcd(n[i - 1], n[j - 1]) == 1 for i, j in pairs)


class TestDeltaExact:
    def test_fixtures(self, c4):
        assert count_delta_exact(c4, 1).count == 1
        assert count_delta_exact(EDGE, 4).count == 11
        assert count_delta_exact(empty_graph(3), 10).count == 1000

    @pytest.mark.parametrize("k,x", [(2, 9), (3, 6), (4, 4)])
    def test_against_brute_force(self, k, x):
        for G in all_graphs(k):
            assert count_delta_exact(G, x).count == brute_delta(G, x)

    def test_threads_do_not_change_count(self, c4):
        assert count_delta_exact(c4, 20, threads=4).count == count_delta_exact(c4, 20).count

    def test_guard(self, c4):
        with pytest.raises(EmpiricalError):
            count_delta_exact(c4, 101)
        with pytest.raises(EmpiricalError):
            count_delta_exact(c4, 0)


class TestBetaExact:
    def test_fixtures(self):
        assert count_beta_exact(2, 0, EXACT, 4).count == 5
        assert count_beta_exact(3, 3, EXACT, 2).count == 4

    @pytest.mark.parametrize("k,x", [(2, 7), (3, 5), (4, 3)])
    def test_against_brute_force(self, k, x):
        tally = list(brute_pairs(k, x))
        for r in range(k * (k - 1) // 2 + 1):
            assert count_beta_exact(k, r, EXACT, x).count == sum(t == r for t in tally)
            if r:
                assert count_beta_exact(k, r, AT_LEAST, x).count == sum(t >= r for t in tally)

    @pytest.mark.parametrize("k,x", [(2, 30), (3, 30), (4, 12)])
    def test_partition_and_complement(self, k, x):
        top = k * (k - 1) // 2
        counts = [count_beta_exact(k, r, EXACT, x).count for r in range(top + 1)]
        assert sum(counts) == x**k
        assert count_beta_exact(k, 1, AT_LEAST, x).count == x**k - counts[0]
        least = [count_beta_exact(k, r, AT_LEAST, x).count for r in range(1, top + 1)]
        assert least == sorted(least, reverse=True)

    @pytest.mark.parametrize("k,x", [(2, 50), (3, 20), (4, 10)])
    def test_complete_graph_coverage(self, k, x):
        assert count_delta_exact(complete_graph(k), x).count == count_beta_exact(k, k * (k - 1) // 2, EXACT, x).count

    def test_at_least_needs_positive_r(self):
        with pytest.raises(EmpiricalError):
            count_beta_exact(3, 0, AT_LEAST, 5)


class TestInclusionExclusion:
    def test_k3(self):
        assert count_beta_via_inclusion_exclusion(3, 0, 20).count == count_beta_exact(3, 0, EXACT, 20).count
        assert (count_beta_via_inclusion_exclusion(3, 1, 20, AT_LEAST).count
                == count_beta_exact(3, 1, AT_LEAST, 20).count)

    @pytest.mark.parametrize("r", [0, 1])
    def test_k2(self, r):
        assert count_beta_via_inclusion_exclusion(2, r, 10).count == count_beta_exact(2, r, EXACT, 10).count

    @pytest.mark.parametrize("k,x", [(2, 30), (3, 30), (4, 10)])
    @pytest.mark.parametrize("mode", [EXACT, AT_LEAST])
    def test_all_r(self, k, x, mode):
        for r in range(1 if mode == AT_LEAST else 0, k * (k - 1) // 2 + 1):
            assert (count_beta_via_inclusion_exclusion(k, r, x, mode).count
                    == count_beta_exact(k, r, mode, x).count)

    def test_guard(self):
        with pytest.raises(EmpiricalError):
            count_beta_via_inclusion_exclusion(5, 0, 3)
        with pytest.raises(EmpiricalError):
            count_beta_via_inclusion_exclusion(3, 0, 51)


class TestMonteCarlo:
    def test_edge_brackets_inverse_zeta2(self):
        res = monte_carlo(EDGE, 10**6, 10**6, seed=1)
        assert res.brackets(6 / math.pi**2)
        assert res.ci_halfwidth == pytest.approx(4 * math.sqrt(res.estimate * (1 - res.estimate) / 10**6))

    def test_empty_graph(self):
        res = monte_carlo(empty_graph(3), 10**4, 10**4, seed=7)
        assert res.estimate == 1.0 and res.ci_halfwidth == 0.0

    def test_c3_brackets(self):
        res = monte_carlo((3, 0, EXACT), 10**6, 10**6, seed=1)
        assert res.brackets(density_exact_r(3, 0, 10**6).value)

    def test_reproducible(self):
        a = monte_carlo(path_graph(3), 10**5, 20_000, seed=42)
        b = monte_carlo(path_graph(3), 10**5, 20_000, seed=42)
        c = monte_carlo(path_graph(3), 10**5, 20_000, seed=43)
        assert a == b and a.count != c.count

    def test_guards(self):
        with pytest.raises(EmpiricalError):
            monte_carlo(EDGE, 999, 10**4)
        with pytest.raises(EmpiricalError):
            monte_carlo(EDGE, 10**4, 10)

    def test_json(self):
        d = monte_carlo(EDGE, 10**4, 10**4, seed=3).to_dict()
        assert d["mode"] == "mc" and d["seed"] == 3 and d["samples"] == 10**4
        assert float(d["estimate"]) == d["count"] / 10**4
        assert count_delta_exact(EDGE, 4).to_dict() == {
            "mode": "exact", "x": 4, "samples": None, "count": 11, "estimate": "0.6875", "ci": None, "seed": None}


class TestDiagnostic:
    def test_shape(self, c4):
        rows = convergence_diagnostic(c4, [10, 20, 40], prime_limit=10**6)
        assert [r.x for r in rows] == [10, 20, 40]
        assert all(math.isfinite(r.normalized_remainder) for r in rows)

    def test_empty_graph(self):
        rows = convergence_diagnostic(empty_graph(3), [5, 10, 20], prime_limit=1000)
        assert all(r.normalized_remainder == 0 for r in rows)

    def test_normalization(self):
        A = float(density_A(EDGE, 10**6).value)
        row = convergence_diagnostic(EDGE, [100], prime_limit=10**6)[0]
        assert row.estimate == 6087 / 10**4
        assert row.normalized_remainder == pytest.approx(abs(0.6087 - A) * 100 / math.log(100))

    def test_rejects_x1(self):
        with pytest.raises(EmpiricalError):
            convergence_diagnostic(EDGE, [1], prime_limit=1000)
