"""Exact per-prime local factors of the Dirichlet series of delta_G.

Write x_i for p^(-s_i). After dividing out zeta(s_1)...zeta(s_k), the Euler
factor at p is a multilinear integer polynomial

    1 + sum over S of c(S) * prod_{i in S} x_i

with c(S) independent of p. Three routes produce it:

* ``factor_by_independent_sets``: sum_m i_m(G) x^m (1 - x)^(k - m), already
  collapsed to one variable;
* ``factor_by_edge_subsets``: signed sum over edge subsets F, grouped by the
  vertex set F touches;
* ``factor_by_vertex_cover``: sum over independent subsets L of a vertex
  cover J of x^L * prod over (J \\ L) u (N(L) \\ J) of (1 - x_i).

``mobius_delta_oracle`` evaluates (mu * delta_G) directly by divisor sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd
from typing import Iterable, Sequence

from .graph import (
    CoprimalityGraph,
    GraphError,
    independent_set_counts,
    is_independent,
    is_vertex_cover,
    min_vertex_cover,
    neighborhood,
    non_isolated,
)

MAX_EDGE_SUBSET_EDGES = 24
ORACLE_MAX = 200


class LocalFactorError(ValueError):
    pass


@dataclass(frozen=True)
class UniLocalFactor:
    """Q(x) = sum a_m x^m, with x standing for 1/p."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    def __call__(self, x: Fraction | int | float) -> Fraction | float:
        acc: Fraction | float = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        nz = [m for m, a in enumerate(self.coeffs) if a]
        return nz[-1] if nz else 0

    def trimmed(self) -> tuple[int, ...]:
        return self.coeffs[: self.degree + 1]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> "UniLocalFactor":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(a, int) for a in data):
            raise LocalFactorError("univariate factor must be a JSON array of integers")
        return cls(tuple(data))


@dataclass(frozen=True)
class MultiLocalFactor:
    """Coefficients c(S) keyed by vertex subset; zero coefficients are dropped."""

    k: int
    coeffs: dict[frozenset[int], int]

    def __post_init__(self) -> None:
        clean = {frozenset(S): int(c) for S, c in self.coeffs.items() if c}
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, S: Iterable[int]) -> int:
        return self.coeffs.get(frozenset(S), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiLocalFactor):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.k, frozenset(self.coeffs.items())))

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(sorted subset, coefficient) ordered by size then lexicographically."""
        items = [(tuple(sorted(S)), c) for S, c in self.coeffs.items()]
        return sorted(items, key=lambda t: (len(t[0]), t[0]))

    def to_dict(self) -> dict[str, int]:
        return {",".join(map(str, S)): c for S, c in self.terms()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, k: int, text: str) -> "MultiLocalFactor":
        data = json.loads(text)
        coeffs: dict[frozenset[int], int] = {}
        for key, c in data.items():
            S = frozenset(int(v) for v in key.split(",")) if key else frozenset()
            coeffs[S] = int(c)
        return cls(k, coeffs)

    def pretty(self) -> str:
        parts = []
        for S, c in self.terms():
            mono = "*".join(f"x{i}" for i in S) or "1"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 and S else str(abs(c))
            parts.append(f"{sign} {mag}{'*' if mag and S else ''}{mono if S else ''}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


def _expand_subset_product(base: frozenset[int], minus_ones: Iterable[int]) -> dict[frozenset[int], int]:
    """Multiply x^base by prod_i (1 - x_i) over ``minus_ones`` (disjoint from base)."""
    terms = {frozenset(base): 1}
    for i in minus_ones:
        nxt = dict(terms)
        for S, c in terms.items():
            T = S | {i}
            nxt[T] = nxt.get(T, 0) - c
        terms = nxt
    return terms


def factor_by_independent_sets(G: CoprimalityGraph, restrict: Iterable[int] | None = None) -> UniLocalFactor:
    """sum_m i_m x^m (1 - x)^(n - m) with n = |restrict|, padded to degree k.

    ``restrict`` must be all vertices (the default) or the non-isolated set.
    """
    pool = G.vertices if restrict is None else frozenset(restrict)
    if pool not in (G.vertices, non_isolated(G)):
        raise LocalFactorError("restrict must be all vertices or the non-isolated vertices")
    n = len(pool)
    counts = independent_set_counts(G, pool)
    out = [0] * (G.k + 1)
    for m in range(n + 1):
        if not counts[m]:
            continue
        # x^m (1 - x)^(n - m)
        for t in range(n - m + 1):
            out[m + t] += counts[m] * comb(n - m, t) * (-1) ** t
    return UniLocalFactor(tuple(out))


def factor_by_edge_subsets(G: CoprimalityGraph) -> MultiLocalFactor:
    """c(S) = sum of (-1)^|F| over edge subsets F whose vertex support is S."""
    if len(G.edges) > MAX_EDGE_SUBSET_EDGES:
        raise LocalFactorError(f"edge-subset expansion limited to {MAX_EDGE_SUBSET_EDGES} edges")
    # prod over edges of (1 - y_e) where y_e marks the support {i, j}; folding
    # one edge at a time visits every F exactly once, keyed by its support
    acc: dict[frozenset[int], int] = {frozenset(): 1}
    for e in G.sorted_edges():
        nxt = dict(acc)
        for S, c in acc.items():
            T = S | set(e)
            nxt[T] = nxt.get(T, 0) - c
        acc = nxt
    return MultiLocalFactor(G.k, acc)


def factor_by_vertex_cover(G: CoprimalityGraph, J: Iterable[int]) -> MultiLocalFactor:
    J = frozenset(J)
    if not J <= G.vertices:
        raise LocalFactorError(f"cover {sorted(J)} has vertices outside 1..{G.k}")
    if not is_vertex_cover(G, J):
        raise LocalFactorError(f"{sorted(J)} is not a vertex cover")
    acc: dict[frozenset[int], int] = {}
    for L in cover_terms(G, J):
        rest = (J - L) | (neighborhood(G, L) - J)
        for S, c in _expand_subset_product(L, sorted(rest)).items():
            acc[S] = acc.get(S, 0) + c
    return MultiLocalFactor(G.k, acc)


def cover_terms(G: CoprimalityGraph, J: Iterable[int]) -> list[frozenset[int]]:
    """Independent subsets L of J, the index set of the primed sum."""
    J = sorted(J)
    out = []
    for size in range(len(J) + 1):
        for L in combinations(J, size):
            if is_independent(G, L):
                out.append(frozenset(L))
    return out


def collapse(M: MultiLocalFactor) -> UniLocalFactor:
    out = [0] * (M.k + 1)
    for S, c in M.coeffs.items():
        out[len(S)] += c
    return UniLocalFactor(tuple(out))


def pairwise_coprime_factor(k: int) -> UniLocalFactor:
    """1 + sum_{j>=2} (-1)^(j-1) (j-1) C(k, j) x^j."""
    if k < 2:
        raise LocalFactorError(f"need k >= 2, got {k}")
    coeffs = [1, 0] + [(-1) ** (j - 1) * (j - 1) * comb(k, j) for j in range(2, k + 1)]
    return UniLocalFactor(tuple(coeffs))


def local_factor(G: CoprimalityGraph) -> UniLocalFactor:
    """The univariate local factor, computed via independent sets."""
    return factor_by_independent_sets(G)


def cross_checked_factor(G: CoprimalityGraph, J: Iterable[int] | None = None) -> UniLocalFactor:
    """Local factor, asserting the three formulas agree exactly."""
    if J is None:
        J = min_vertex_cover(G)
    by_sets = factor_by_independent_sets(G)
    by_edges = factor_by_edge_subsets(G)
    by_cover = factor_by_vertex_cover(G, J)
    if by_cover != by_edges or collapse(by_edges) != by_sets:
        raise AssertionError(f"local factor formulas disagree for {G!r}")
    return by_sets


# --- direct convolution oracle -------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def delta(G: CoprimalityGraph, n: Sequence[int]) -> int:
    """1 when gcd(n_i, n_j) = 1 for every edge {i, j}, else 0."""
    return int(all(gcd(n[i - 1], n[j - 1]) == 1 for i, j in G.edges))


def mobius_delta_oracle(G: CoprimalityGraph, n: Sequence[int]) -> int:
    """(mu * delta_G)(n) summed over all divisor tuples."""
    if len(n) != G.k:
        raise LocalFactorError(f"expected {G.k} components, got {len(n)}")
    if any(not 1 <= v <= ORACLE_MAX for v in n):
        raise LocalFactorError(f"oracle components must lie in 1..{ORACLE_MAX}")
    divs = []
    for v in n:
        # divisors with mu(d) = 0 contribute nothing
        divs.append([(d, mu) for d in _divisors(v) if (mu := mobius(d))])
    total = 0
    for choice in product(*divs):
        sign = 1
        quot = []
        for (d, mu), v in zip(choice, n):
            sign *= mu
            quot.append(v // d)
        total += sign * delta(G, quot)
    return total


__all__ = [
    "GraphError",
    "LocalFactorError",
    "MultiLocalFactor",
    "UniLocalFactor",
    "collapse",
    "cover_terms",
    "cross_checked_factor",
    "delta",
    "factor_by_edge_subsets",
    "factor_by_independent_sets",
    "factor_by_vertex_cover",
    "local_factor",
    "mobius",
    "mobius_delta_oracle",
    "pairwise_coprime_factor",
]
