"""Coprimality graphs and the small-graph combinatorics the density formulas use.

Vertices are labeled 1..k. An edge {i, j} stands for the constraint
gcd(n_i, n_j) = 1 on a k-tuple (n_1, ..., n_k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator

import numpy as np

MAX_CANONICAL_K = 8
MAX_ENUMERATION_K = 7


class GraphError(ValueError):
    """Malformed graph input or an argument outside the supported range."""


Edge = tuple[int, int]


def _normalize_edge(i: int, j: int, k: int) -> Edge:
    if i == j:
        raise GraphError(f"self-loop on vertex {i}")
    if not (1 <= i <= k and 1 <= j <= k):
        raise GraphError(f"edge {{{i},{j}}} has a vertex outside 1..{k}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class CoprimalityGraph:
    k: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.k < 2:
            raise GraphError(f"need k >= 2, got k={self.k}")
        normalized = frozenset(_normalize_edge(i, j, self.k) for i, j in self.edges)
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[Iterable[int]]) -> "CoprimalityGraph":
        """Build a graph, rejecting repeated edges (in either orientation)."""
        seen: set[Edge] = set()
        for pair in edges:
            i, j = pair
            e = _normalize_edge(int(i), int(j), k)
            if e in seen:
                raise GraphError(f"duplicate edge {{{e[0]},{e[1]}}}")
            seen.add(e)
        return cls(k, frozenset(seen))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.k + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    def serialize(self) -> str:
        lines = [str(self.k)] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"CoprimalityGraph(k={self.k}, edges={self.sorted_edges()})"


def parse_graph(text: str) -> CoprimalityGraph:
    """Parse the line-oriented graph format.

    The first non-comment line holds k; every later non-empty line is an
    edge ``i j`` with 1-indexed vertices. Lines starting with ``#`` are
    ignored and edge orientation does not matter.
    """
    k: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: not integers: {raw!r}") from None
        if k is None:
            if len(nums) != 1:
                raise GraphError(f"line {lineno}: expected the vertex count k")
            k = nums[0]
            if k < 2:
                raise GraphError(f"need k >= 2, got k={k}")
            continue
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'i j', got {raw!r}")
        edges.append((nums[0], nums[1]))
    if k is None:
        raise GraphError("empty graph file: missing vertex count")
    return CoprimalityGraph.from_edges(k, edges)


def _check_vertex(G: CoprimalityGraph, v: int) -> None:
    if not 1 <= v <= G.k:
        raise GraphError(f"vertex {v} outside 1..{G.k}")


def _check_subset(G: CoprimalityGraph, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    for v in S:
        _check_vertex(G, v)
    return S


def degree(G: CoprimalityGraph, v: int) -> int:
    _check_vertex(G, v)
    return sum(1 for e in G.edges if v in e)


def max_degree(G: CoprimalityGraph) -> int:
    return max((degree(G, v) for v in G.vertices), default=0)


def non_isolated(G: CoprimalityGraph) -> frozenset[int]:
    return frozenset(v for e in G.edges for v in e)


def neighborhood(G: CoprimalityGraph, L: Iterable[int]) -> frozenset[int]:
    """N(L): union of the neighborhoods of the vertices in L."""
    L = _check_subset(G, L)
    adj = G.adjacency()
    out: set[int] = set()
    for v in L:
        out |= adj[v]
    return frozenset(out)


def is_independent(G: CoprimalityGraph, S: Iterable[int]) -> bool:
    S = _check_subset(G, S)
    return not any(i in S and j in S for i, j in G.edges)


def is_vertex_cover(G: CoprimalityGraph, J: Iterable[int]) -> bool:
    J = _check_subset(G, J)
    return all(i in J or j in J for i, j in G.edges)


def independent_set_counts(G: CoprimalityGraph, restrict: Iterable[int] | None = None) -> list[int]:
    """Entry m counts independent subsets of ``restrict`` with m vertices.

    ``restrict`` defaults to all vertices. The result always has length k + 1.
    """
    pool = sorted(G.vertices if restrict is None else _check_subset(G, restrict))
    counts = [0] * (G.k + 1)
    # bitmask walk over subsets of the pool; neighbor masks make the check O(|S|)
    nbr = {v: 0 for v in pool}
    index = {v: b for b, v in enumerate(pool)}
    for i, j in G.edges:
        if i in index and j in index:
            nbr[i] |= 1 << index[j]
            nbr[j] |= 1 << index[i]
    for mask in range(1 << len(pool)):
        ok = True
        m = mask
        while m:
            low = m & -m
            if nbr[pool[low.bit_length() - 1]] & mask:
                ok = False
                break
            m ^= low
        if ok:
            counts[mask.bit_count()] += 1
    return counts


def min_vertex_cover(G: CoprimalityGraph) -> frozenset[int]:
    """Smallest vertex cover; ties go to the lexicographically least sorted list."""
    if G.k > MAX_CANONICAL_K:
        raise GraphError(f"exhaustive cover search supports k <= {MAX_CANONICAL_K}")
    verts = range(1, G.k + 1)
    for size in range(G.k + 1):
        # combinations() yields in lexicographic order, so the first hit wins ties
        for J in combinations(verts, size):
            Js = set(J)
            if all(i in Js or j in Js for i, j in G.edges):
                return frozenset(J)
    raise AssertionError("unreachable: the full vertex set is a cover")


# Edge index order: (1,2), (1,3), ..., (1,k), (2,3), ... ; bit for index t is
# 2**(n_edges - 1 - t) so the mask reads like the upper triangle left to right.
@lru_cache(maxsize=None)
def complete_edges(k: int) -> tuple[Edge, ...]:
    return tuple(combinations(range(1, k + 1), 2))


def edge_mask(G: CoprimalityGraph) -> int:
    all_edges = complete_edges(G.k)
    n = len(all_edges)
    pos = {e: n - 1 - t for t, e in enumerate(all_edges)}
    mask = 0
    for e in G.edges:
        mask |= 1 << pos[e]
    return mask


def graph_from_mask(k: int, mask: int) -> CoprimalityGraph:
    all_edges = complete_edges(k)
    n = len(all_edges)
    return CoprimalityGraph(k, frozenset(e for t, e in enumerate(all_edges) if mask >> (n - 1 - t) & 1))


@lru_cache(maxsize=None)
def _edge_permutation_table(k: int) -> np.ndarray:
    """Row per vertex permutation: bit weight that each edge bit moves to."""
    all_edges = complete_edges(k)
    n = len(all_edges)
    pos = {e: n - 1 - t for t, e in enumerate(all_edges)}
    rows = []
    for perm in permutations(range(1, k + 1)):
        row = []
        for i, j in all_edges:
            a, b = perm[i - 1], perm[j - 1]
            row.append(pos[(a, b) if a < b else (b, a)])
        rows.append(row)
    # column t holds the destination bit for the edge at source bit n-1-t
    table = np.array(rows, dtype=np.int64)
    return np.left_shift(np.int64(1), table)


def orbit_masks(k: int, mask: int) -> np.ndarray:
    """Edge masks of every relabeling of ``mask`` (one per permutation, with repeats)."""
    weights = _edge_permutation_table(k)
    n = len(complete_edges(k))
    cols = [t for t in range(n) if mask >> (n - 1 - t) & 1]
    if not cols:
        return np.zeros(weights.shape[0], dtype=np.int64)
    return weights[:, cols].sum(axis=1)


def canonical_mask(k: int, mask: int) -> int:
    return int(orbit_masks(k, mask).min())


def canonical_key(G: CoprimalityGraph) -> bytes:
    """Byte key shared exactly by isomorphic graphs on the same k.

    The key is k followed by the minimum, over all vertex relabelings, of the
    upper-triangle edge bitmask (big-endian).
    """
    if G.k > MAX_CANONICAL_K:
        raise GraphError(f"exhaustive canonicalization supports k <= {MAX_CANONICAL_K}")
    return mask_key(G.k, canonical_mask(G.k, edge_mask(G)))


def mask_key(k: int, mask: int) -> bytes:
    return bytes([k]) + mask.to_bytes(4, "big")


def enumerate_edge_subsets(k: int, j: int) -> Iterator[CoprimalityGraph]:
    """Every labeled graph on k vertices with exactly j edges, in lexicographic edge order."""
    if not 2 <= k <= MAX_ENUMERATION_K:
        raise GraphError(f"edge-subset enumeration supports 2 <= k <= {MAX_ENUMERATION_K}")
    all_edges = complete_edges(k)
    if not 0 <= j <= len(all_edges):
        raise GraphError(f"j={j} outside 0..{len(all_edges)}")
    for chosen in combinations(all_edges, j):
        yield CoprimalityGraph(k, frozenset(chosen))


# Named graphs used throughout the examples and the CLI.

def cycle_graph(k: int) -> CoprimalityGraph:
    return CoprimalityGraph.from_edges(k, [(i, i % k + 1) for i in range(1, k + 1)])


def path_graph(k: int) -> CoprimalityGraph:
    return CoprimalityGraph.from_edges(k, [(i, i + 1) for i in range(1, k)])


def complete_graph(k: int) -> CoprimalityGraph:
    return CoprimalityGraph(k, frozenset(complete_edges(k)))


def empty_graph(k: int) -> CoprimalityGraph:
    return CoprimalityGraph(k)


def example2_graph() -> CoprimalityGraph:
    """Seven vertices, 6 and 7 isolated; minimum cover {1, 2, 4}."""
    return CoprimalityGraph.from_edges(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (4, 5)])


def builtin_graph(name: str) -> CoprimalityGraph:
    """Resolve names like ``c4``, ``path3``, ``k5``, ``empty2``, ``example2``."""
    name = name.lower().removesuffix(".g")
    if name in ("example2", "ex2"):
        return example2_graph()
    for prefix, factory in (("empty", empty_graph), ("path", path_graph), ("c", cycle_graph),
                            ("k_", complete_graph), ("k", complete_graph)):
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isdigit():
            return factory(int(rest))
    raise GraphError(f"unknown built-in graph {name!r}")
