import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import primerange

from coprimality.euler import (
    EulerProductError,
    _evaluate_cached,
    compensated_sum,
    evaluate,
    format_decimal,
    prime_tail_sum_bound,
    sieve_primes,
    zeta_inverse,
)
from coprimality.graph import CoprimalityGraph, cycle_graph, path_graph
from coprimality.local_factor import factor_by_independent_sets

SIX_OVER_PI2 = 6 / math.pi**2


def inv_zeta3_oracle():
    # sum n^-3 for n <= N plus Euler-Maclaurin tail 1/(2N^2) - 1/(2N^3) + ...
    N = 10**6
    n = np.arange(1, N + 1, dtype=np.float64)
    head = math.fsum((1.0 / n**3).tolist())
    tail = 1 / (2 * N**2) - 1 / (2 * N**3) + 1 / (4 * N**4)
    return 1 / (head + tail)


def exact_partial_product(coeffs, limit):
    out = Fraction(1)
    for p in primerange(2, limit + 1):
        x = Fraction(1, p)
        out *= sum(a * x**m for m, a in enumerate(coeffs))
    return out


class TestSieve:
    def test_small(self):
        assert sieve_primes(10).tolist() == [2, 3, 5, 7]
        assert sieve_primes(2).tolist() == [2]
        assert len(sieve_primes(100)) == 25

    @pytest.mark.parametrize("limit", [3, 4, 97, 1000, 10007, 123456])
    def test_against_sympy(self, limit):
        assert sieve_primes(limit).tolist() == list(primerange(2, limit + 1))

    def test_pi_1e7(self):
        assert len(sieve_primes(10**7)) == 664579

    @pytest.mark.parametrize("limit", [1, 10**8 + 1])
    def test_range(self, limit):
        with pytest.raises(EulerProductError):
            sieve_primes(limit)


def test_compensated_sum_matches_fsum():
    rng = np.random.default_rng(3)
    data = rng.standard_normal(100_001) * 10.0 ** rng.integers(-12, 12, 100_001)
    assert float(compensated_sum(data)) == pytest.approx(math.fsum(data.tolist()), rel=1e-15, abs=1e-18)
    assert compensated_sum(np.array([])) == 0


class TestEvaluate:
    def test_inverse_zeta2(self):
        v = evaluate([1, 0, -1], 10**7)
        assert abs(float(v.value) - SIX_OVER_PI2) <= v.error_bound
        assert v.error_bound <= 1e-6
        assert v.num_primes == 664579

    def test_constant(self):
        v = evaluate([1, 0, 0, 0], 10**4)
        assert v.value == 1 and v.tail_bound == 0 and v.error_bound == 0

    def test_c4_across_limits(self):
        lo, hi = evaluate([1, 0, -4, 4, -1], 10**6), evaluate([1, 0, -4, 4, -1], 10**7)
        assert abs(float(hi.value) - float(lo.value)) <= lo.error_bound

    @pytest.mark.parametrize("coeffs", [[1, 0, -1], [1, 0, -4, 4, -1], [1, 0, -6, 8, -3], [1, 0, -2, 1]])
    def test_partial_product_against_fractions(self, coeffs):
        exact = exact_partial_product(coeffs, 1000)
        v = evaluate(coeffs, 1000)
        assert abs(Fraction(float(v.value)) - exact) < 1e-15
        # extended precision keeps far more than double accuracy
        assert abs(float(v.value - np.longdouble(exact.numerator) / np.longdouble(exact.denominator))) < 1e-17

    @pytest.mark.parametrize("coeffs", [[1, 0, -1], [1, 0, -3, 2], [1, 0, -10, 20, -15, 4]])
    def test_interval_consistency(self, coeffs):
        limits = [100, 1000, 10**4, 10**5, 10**6, 10**7]
        vals = [evaluate(coeffs, P) for P in limits]
        errs = [v.error_bound for v in vals]
        assert errs == sorted(errs, reverse=True)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                assert abs(float(vals[j].value) - float(vals[i].value)) <= errs[i]

    def test_deterministic(self):
        a = evaluate([1, 0, -5, 6, -2], 10**6)
        b = _evaluate_cached.__wrapped__((1, 0, -5, 6, -2), 10**6, (1, 0, -5, 6, -2))
        assert a.value.tobytes() == b.value.tobytes()

    def test_disjoint_union(self):
        g1, g2 = cycle_graph(4), path_graph(3)
        union = CoprimalityGraph(7, g1.edges | {(i + 4, j + 4) for i, j in g2.edges})
        P = 10**6
        a = evaluate(factor_by_independent_sets(g1), P)
        b = evaluate(factor_by_independent_sets(g2), P)
        u = evaluate(factor_by_independent_sets(union), P)
        combined = float(a.value) * b.error_bound + float(b.value) * a.error_bound + a.error_bound * b.error_bound
        assert abs(float(u.value) - float(a.value) * float(b.value)) <= combined + u.error_bound

    def test_rejects_bad_polynomials(self):
        with pytest.raises(EulerProductError):
            evaluate([1, 1, -1], 1000)
        with pytest.raises(EulerProductError):
            evaluate([2, 0, -1], 1000)
        with pytest.raises(EulerProductError):
            evaluate([1, 0, -8], 1000)          # Q(1/2) = -1
        with pytest.raises(EulerProductError):
            evaluate([1, 0, -6000], 100)        # M / P^2 > 1/2
        with pytest.raises(EulerProductError):
            evaluate([1, 0, -1], 99)

    def test_json(self):
        d = evaluate([1, 0, -1], 10**5).to_dict()
        assert set(d) == {"value", "error_bound", "prime_limit", "polynomial"}
        assert d["value"].startswith("0.6079") and len(d["value"].replace("0.", "", 1)) == 20


class TestTailBound:
    @pytest.mark.parametrize("P", [100, 1000, 10**4, 10**5])
    def test_bounds_true_tail(self, P):
        primes = sieve_primes(10**7)
        head = primes[primes <= P]
        rest = primes[primes > P].astype(np.float64)
        lower_truth = math.fsum((1.0 / rest**2).tolist())
        bound = prime_tail_sum_bound(P, len(head))
        assert lower_truth <= bound <= 1.0 / P

    def test_tail_shrinks(self):
        assert evaluate([1, 0, -1], 10**7).tail_bound < evaluate([1, 0, -1], 10**6).tail_bound


class TestZetaInverse:
    def test_k2(self):
        v = zeta_inverse(2)
        assert abs(float(v.value) - SIX_OVER_PI2) <= v.error_bound

    def test_k3(self):
        v = zeta_inverse(3)
        assert abs(float(v.value) - inv_zeta3_oracle()) <= v.error_bound + 1e-15
        assert float(v.value) == pytest.approx(0.8319073725, abs=1e-10)

    def test_k30(self):
        v = zeta_inverse(30, 1000)
        assert 0 < 1 - float(v.value) < 2 * 2.0**-30

    def test_rejects_k1(self):
        with pytest.raises(EulerProductError):
            zeta_inverse(1)


def test_format_decimal():
    assert format_decimal(np.longdouble(1) / 3) == "0.33333333333333333334"
    assert format_decimal(0) == "0"
    assert "e-" in format_decimal(3.5e-9)
