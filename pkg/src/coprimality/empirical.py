"""Exact and Monte Carlo tuple counts over boxes [1, x]^k.

Exact counters sweep the outermost coordinate and handle the remaining k - 1
coordinates as a broadcast boolean array, so each edge constraint is one
vectorized gcd test. Monte Carlo draws from numpy's Philox generator keyed by
the seed, a counter-based bit generator, so a given (seed, samples) pair
always yields the same tuples.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import graph as gr
from .density import AT_LEAST, EXACT, density_A
from .euler import DEFAULT_PRIME_LIMIT
from .graph import CoprimalityGraph

MAX_BOX = 10**8
MAX_IE_K = 4
MAX_IE_X = 50
MIN_MC_X = 10**4
MIN_MC_SAMPLES = 10**4
CI_SIGMAS = 4
MC_BATCH = 250_000


class EmpiricalError(ValueError):
    pass


@dataclass(frozen=True)
class CountResult:
    mode: str                   # "exact" or "mc"
    x: int
    count: int
    estimate: float
    ci_halfwidth: float = 0.0
    samples: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        mc = self.mode == "mc"
        return {
            "mode": self.mode,
            "x": self.x,
            "samples": self.samples,
            "count": self.count,
            "estimate": repr(float(self.estimate)),
            "ci": repr(float(self.ci_halfwidth)) if mc else None,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def brackets(self, value: float) -> bool:
        return abs(self.estimate - float(value)) <= self.ci_halfwidth


def _check_box(k: int, x: int) -> None:
    if x < 1:
        raise EmpiricalError(f"box bound must be >= 1, got {x}")
    if x**k > MAX_BOX:
        raise EmpiricalError(f"x^k = {x}^{k} exceeds the exact-count guard {MAX_BOX}")


def _check_r(k: int, r: int, mode: str) -> None:
    top = k * (k - 1) // 2
    if mode not in (EXACT, AT_LEAST):
        raise EmpiricalError(f"unknown mode {mode!r}")
    lo = 1 if mode == AT_LEAST else 0
    if not lo <= r <= top:
        raise EmpiricalError(f"r must lie in {lo}..{top} for k={k} ({mode}), got {r}")


class _Box:
    """Broadcast views of pairwise coprimality indicators on [1, x]^(k-1)."""

    def __init__(self, k: int, x: int, pairs: list[tuple[int, int]]):
        self.k, self.x = k, x
        self.values = np.arange(1, x + 1, dtype=np.int64)
        inner = [p for p in pairs if p[0] != 1]
        self.table = np.gcd.outer(self.values, self.values) == 1 if inner else None

    def _axis_shape(self, axis: int) -> tuple[int, ...]:
        # vertex v >= 2 lives on axis v - 2 of the (k-1)-dim block
        shape = [1] * (self.k - 1)
        shape[axis] = self.x
        return tuple(shape)

    def pair(self, n1: int, i: int, j: int) -> np.ndarray:
        if i == 1:
            row = np.gcd(n1, self.values) == 1
            return row.reshape(self._axis_shape(j - 2))
        shape = [1] * (self.k - 1)
        shape[i - 2] = shape[j - 2] = self.x
        return self.table.reshape(shape)


def _sweep(k: int, x: int, per_row, threads: int) -> int:
    rows = range(1, x + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(per_row, rows))
    return sum(per_row(n1) for n1 in rows)


def count_delta_exact(G: CoprimalityGraph, x: int, threads: int = 1) -> CountResult:
    """Number of tuples in [1, x]^k with gcd(n_i, n_j) = 1 on every edge."""
    _check_box(G.k, x)
    edges = G.sorted_edges()
    if not edges:
        total = x**G.k
        return CountResult("exact", x, total, 1.0)
    box = _Box(G.k, x, edges)
    full = (x,) * (G.k - 1)

    def per_row(n1: int) -> int:
        ok = np.ones(full, dtype=bool)
        for i, j in edges:
            ok &= box.pair(n1, i, j)
            if not ok.any():
                return 0
        return int(ok.sum())

    count = _sweep(G.k, x, per_row, threads)
    return CountResult("exact", x, count, count / x**G.k)


def count_beta_exact(k: int, r: int, mode: str, x: int, threads: int = 1) -> CountResult:
    """Tuples with exactly r (or at least r) coprime pairs, by counting pairs per tuple."""
    if k < 2:
        raise EmpiricalError(f"need k >= 2, got {k}")
    _check_r(k, r, mode)
    _check_box(k, x)
    pairs = list(gr.complete_edges(k))
    box = _Box(k, x, pairs)
    full = (x,) * (k - 1)

    def per_row(n1: int) -> int:
        num = np.zeros(full, dtype=np.int16)
        for i, j in pairs:
            num += box.pair(n1, i, j)
        hit = num == r if mode == EXACT else num >= r
        return int(hit.sum())

    count = _sweep(k, x, per_row, threads)
    return CountResult("exact", x, count, count / x**k)


def count_beta_via_inclusion_exclusion(k: int, r: int, x: int, mode: str = EXACT) -> CountResult:
    """Same count as ``count_beta_exact``, as a signed sum of delta_G counts over all edge subsets."""
    _check_r(k, r, mode)
    if not 2 <= k <= MAX_IE_K or x > MAX_IE_X:
        raise EmpiricalError(f"inclusion-exclusion oracle limited to k <= {MAX_IE_K}, x <= {MAX_IE_X}")
    total = 0
    for j in range(r, k * (k - 1) // 2 + 1):
        w = comb(j, r) if mode == EXACT else comb(j - 1, r - 1)
        inner = sum(count_delta_exact(G, x).count for G in gr.enumerate_edge_subsets(k, j))
        total += (-1) ** (j - r) * w * inner
    return CountResult("exact", x, total, total / x**k)


def _mc_hits(k: int, X: int, samples: int, seed: int, test) -> int:
    rng = np.random.Generator(np.random.Philox(seed))
    hits = 0
    done = 0
    while done < samples:
        m = min(MC_BATCH, samples - done)
        tuples = rng.integers(1, X, size=(m, k), endpoint=True, dtype=np.int64)
        hits += int(np.count_nonzero(test(tuples)))
        done += m
    return hits


def monte_carlo(query: CoprimalityGraph | tuple[int, int, str], X: int = 10**6,
                samples: int = 10**6, seed: int = 1) -> CountResult:
    """Hit fraction of uniform draws from [1, X]^k.

    ``query`` is a graph (all edge constraints must hold) or a tuple
    ``(k, r, mode)`` for exactly / at least r coprime pairs.
    """
    if X < MIN_MC_X or samples < MIN_MC_SAMPLES:
        raise EmpiricalError(f"Monte Carlo needs X >= {MIN_MC_X} and samples >= {MIN_MC_SAMPLES}")
    if isinstance(query, CoprimalityGraph):
        k = query.k
        edges = query.sorted_edges()

        def test(t: np.ndarray) -> np.ndarray:
            ok = np.ones(len(t), dtype=bool)
            for i, j in edges:
                ok &= np.gcd(t[:, i - 1], t[:, j - 1]) == 1
            return ok
    else:
        k, r, mode = query
        _check_r(k, r, mode)
        pairs = list(gr.complete_edges(k))

        def test(t: np.ndarray) -> np.ndarray:
            num = np.zeros(len(t), dtype=np.int16)
            for i, j in pairs:
                num += np.gcd(t[:, i - 1], t[:, j - 1]) == 1
            return num == r if mode == EXACT else num >= r

    hits = _mc_hits(k, X, samples, seed, test)
    est = hits / samples
    ci = CI_SIGMAS * math.sqrt(est * (1 - est) / samples)
    return CountResult("mc", X, hits, est, ci, samples=samples, seed=seed)


@dataclass(frozen=True)
class DiagnosticRow:
    x: int
    estimate: float
    normalized_remainder: float


def convergence_diagnostic(G: CoprimalityGraph, x_list, prime_limit: int = DEFAULT_PRIME_LIMIT,
                           density: float | None = None) -> list[DiagnosticRow]:
    """Rows of (x, count/x^k, |count/x^k - A_G| * x / (log x)^d_G)."""
    A = float(density_A(G, prime_limit).value) if density is None else float(density)
    d = gr.max_degree(G)
    rows = []
    for x in x_list:
        if x < 2:
            raise EmpiricalError("diagnostic needs x >= 2 so that log x > 0")
        est = count_delta_exact(G, x).estimate
        rows.append(DiagnosticRow(x, est, abs(est - A) * x / math.log(x) ** d))
    return rows
