"""Numerical Euler products prod_p Q(1/p) with a rigorous truncation bound.

The product over p <= P is taken as exp of a compensated sum of
log Q(1/p), in 80-bit extended precision. For the omitted primes p > P we use

    |Q(1/p) - 1| <= M / p^2,   M = sum_{m>=2} |a_m| P^(-(m-2)),
    |log(1 + u)| <= |u| / (1 - |u|),
    sum_{p>P} p^-2 <= 2 (1 + 1.2762/log P) / (P log P) - pi(P) / P^2,

the last from pi(t) <= t/log t * (1 + 1.2762/log t) (Dusart) and partial
summation, with pi(P) known exactly from the sieve. The elementary bound
sum_{p>P} p^-2 < 1/P caps it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .local_factor import UniLocalFactor

DEFAULT_PRIME_LIMIT = 10**7
MIN_PRIME_LIMIT = 100
MAX_SIEVE_LIMIT = 10**8
DUSART_C = 1.2762
ROUNDING_ULPS_PER_FACTOR = 4
EPS = float(np.finfo(np.longdouble).eps)


class EulerProductError(ValueError):
    pass


@dataclass(frozen=True)
class EulerProductValue:
    value: np.longdouble
    tail_bound: float
    rounding_slack: float
    prime_limit: int
    num_primes: int
    polynomial: tuple[int, ...]

    @property
    def error_bound(self) -> float:
        return float(self.value) * math.expm1(self.tail_bound) + self.rounding_slack

    def to_dict(self) -> dict:
        return {
            "value": format_decimal(self.value),
            "error_bound": format_decimal(self.error_bound),
            "prime_limit": self.prime_limit,
            "polynomial": list(self.polynomial),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def format_decimal(v, digits: int = 20) -> str:
    """Decimal string with ``digits`` significant digits."""
    v = np.longdouble(v)
    if v == 0:
        return "0"
    if abs(v) < 1e-4:
        return np.format_float_scientific(v, precision=digits - 1, unique=False)
    return np.format_float_positional(v, precision=digits, unique=False, fractional=False)


@lru_cache(maxsize=4)
def _sieve(limit: int) -> np.ndarray:
    # odd-only sieve: index i stands for 2i + 1
    half = np.ones((limit + 1) // 2, dtype=bool)
    half[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if half[i]:
            p = 2 * i + 1
            half[p * p // 2 :: p] = False
    primes = np.concatenate(([2], 2 * np.flatnonzero(half) + 1)).astype(np.int64)
    primes.setflags(write=False)
    return primes


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit in ascending order (read-only int64 array)."""
    if not 2 <= limit <= MAX_SIEVE_LIMIT:
        raise EulerProductError(f"sieve limit must lie in 2..{MAX_SIEVE_LIMIT}, got {limit}")
    return _sieve(int(limit))


def compensated_sum(terms: np.ndarray) -> np.longdouble:
    """Cascaded pairwise sum with error-free TwoSum at every level.

    The reduction tree depends only on the array length, so the result is
    reproducible bit for bit.
    """
    x = np.asarray(terms, dtype=np.longdouble)
    if x.size == 0:
        return np.longdouble(0)
    errors = []
    while x.size > 1:
        if x.size % 2:
            x = np.append(x, np.longdouble(0))
        a, b = x[0::2], x[1::2]
        s = a + b
        bb = s - a
        errors.append((a - (s - bb)) + (b - bb))
        x = s
    corr = np.longdouble(0)
    for e in reversed(errors):
        corr += e.sum()
    return x[0] + corr


def prime_tail_sum_bound(prime_limit: int, prime_count: int) -> float:
    """Upper bound for sum_{p > P} 1/p^2 given pi(P) = prime_count."""
    P = float(prime_limit)
    lp = math.log(P)
    dusart = 2.0 * (1.0 + DUSART_C / lp) / (P * lp) - prime_count / (P * P)
    return min(dusart, 1.0 / P)


def _check_polynomial(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = tuple(int(a) for a in coeffs)
    if not coeffs or coeffs[0] != 1:
        raise EulerProductError("local factor must have constant term 1")
    if len(coeffs) > 1 and coeffs[1] != 0:
        raise EulerProductError("local factor must have vanishing linear term")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


def evaluate(Q: UniLocalFactor | Sequence[int], prime_limit: int = DEFAULT_PRIME_LIMIT) -> EulerProductValue:
    """prod_p Q(1/p) over p <= prime_limit, with tail and rounding bounds."""
    raw = Q.coeffs if isinstance(Q, UniLocalFactor) else tuple(Q)
    full = tuple(int(a) for a in raw)
    coeffs = _check_polynomial(full)
    if prime_limit < MIN_PRIME_LIMIT:
        raise EulerProductError(f"prime_limit must be >= {MIN_PRIME_LIMIT}")
    return _evaluate_cached(coeffs, int(prime_limit), full)


@lru_cache(maxsize=4096)
def _evaluate_cached(coeffs: tuple[int, ...], prime_limit: int, full: tuple[int, ...]) -> EulerProductValue:
    primes = sieve_primes(prime_limit)
    n = len(primes)
    if len(coeffs) == 1:
        return EulerProductValue(np.longdouble(1), 0.0, 0.0, prime_limit, n, full)

    P = float(prime_limit)
    M = sum(abs(a) * P ** -(m - 2) for m, a in enumerate(coeffs) if m >= 2)
    if M / (P * P) > 0.5:
        raise EulerProductError(f"prime_limit {prime_limit} too small for this polynomial (M/P^2 > 1/2)")

    x = np.longdouble(1) / primes.astype(np.longdouble)
    # u = Q(x) - 1 = x^2 (a_2 + a_3 x + ...), Horner from the top
    h = np.full(n, np.longdouble(coeffs[-1]))
    for a in reversed(coeffs[2:-1]):
        h = h * x + np.longdouble(a)
    u = h * x * x
    if np.any(u <= -1):
        bad = int(primes[np.argmax(u <= -1)])
        raise EulerProductError(f"local factor is not positive at p={bad}")
    log_sum = compensated_sum(np.log1p(u))
    value = np.exp(log_sum)

    u_max = M / (P * P)
    tail = M / (1.0 - u_max) * prime_tail_sum_bound(prime_limit, n)
    slack = ROUNDING_ULPS_PER_FACTOR * EPS * n * float(value)
    return EulerProductValue(value, tail, slack, prime_limit, n, full)


def zeta_inverse(k: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> EulerProductValue:
    """prod_p (1 - p^-k) = 1/zeta(k)."""
    if k < 2:
        raise EulerProductError(f"need k >= 2, got {k}")
    return evaluate([1] + [0] * (k - 1) + [-1], prime_limit)
