"""Densities of k-tuples under coprimality constraints.

A_G comes straight from the Euler product of the graph's local factor. The
exactly-r / at-least-r densities are alternating sums of A_G over all
labeled graphs on k vertices,

    C_{k,r}  = sum_j (-1)^(j-r) C(j, r)     * sum_{|E| = j} A_G
    C'_{k,r} = sum_j (-1)^(j-r) C(j-1, r-1) * sum_{|E| = j} A_G,

Graphs are grouped into isomorphism classes and the integer weights are
folded per distinct local factor, so each distinct Euler product is
evaluated once.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import graph as gr
from .euler import DEFAULT_PRIME_LIMIT, EulerProductValue, evaluate, format_decimal, zeta_inverse
from .graph import CoprimalityGraph, GraphError
from .local_factor import UniLocalFactor, cross_checked_factor, factor_by_independent_sets, pairwise_coprime_factor

EXACT = "exact"
AT_LEAST = "atleast"


class DensityError(ValueError):
    pass


@dataclass
class DensityReport:
    label: str
    value: np.longdouble
    error_bound: float
    k: int | None = None
    r: int | None = None
    prime_limit: int | None = None
    num_classes: int | None = None
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "r": self.r,
            "value": format_decimal(self.value),
            "error_bound": format_decimal(self.error_bound),
            "prime_limit": self.prime_limit,
            "num_classes": self.num_classes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class IsoClass:
    key: bytes
    representative: CoprimalityGraph
    num_edges: int
    multiplicity: int
    factor: UniLocalFactor


@dataclass(frozen=True)
class IsoClassTable:
    k: int
    classes: tuple[IsoClass, ...]

    def multiplicities_by_edges(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for c in self.classes:
            out[c.num_edges] += c.multiplicity
        return dict(out)


def _report(label: str, ev: EulerProductValue, k: int | None = None, **prov) -> DensityReport:
    return DensityReport(label, ev.value, ev.error_bound, k=k, prime_limit=ev.prime_limit,
                         num_classes=None, provenance={"polynomial": list(ev.polynomial), **prov})


def density_A(G: CoprimalityGraph, prime_limit: int = DEFAULT_PRIME_LIMIT,
              cover: frozenset[int] | None = None) -> DensityReport:
    if cover is None:
        cover = gr.min_vertex_cover(G)
    Q = cross_checked_factor(G, cover)
    return _report("A_G", evaluate(Q, prime_limit), k=G.k, cover=sorted(cover))


@lru_cache(maxsize=None)
def build_iso_table(k: int) -> IsoClassTable:
    """Isomorphism classes of graphs on k labeled vertices, with multiplicities.

    Walks all 2^(k(k-1)/2) edge masks; each unseen mask spawns its orbit under
    the k! relabelings, which is marked seen and recorded as one class.
    """
    if not 2 <= k <= gr.MAX_ENUMERATION_K:
        raise DensityError(f"isomorphism tables support 2 <= k <= {gr.MAX_ENUMERATION_K}")
    n_edges = len(gr.complete_edges(k))
    seen = np.zeros(1 << n_edges, dtype=bool)
    found = []
    for mask in range(1 << n_edges):
        if seen[mask]:
            continue
        orbit = np.unique(gr.orbit_masks(k, mask))
        seen[orbit] = True
        canon = int(orbit[0])
        rep = gr.graph_from_mask(k, canon)
        found.append(IsoClass(gr.mask_key(k, canon), rep, len(rep.edges), len(orbit),
                              factor_by_independent_sets(rep)))
    found.sort(key=lambda c: (c.num_edges, c.key))
    return IsoClassTable(k, tuple(found))


def _check_range(k: int, r: int, mode: str) -> None:
    if not 2 <= k <= gr.MAX_ENUMERATION_K:
        raise DensityError(f"k must lie in 2..{gr.MAX_ENUMERATION_K}, got {k}")
    top = k * (k - 1) // 2
    lo = 1 if mode == AT_LEAST else 0
    if not lo <= r <= top:
        raise DensityError(f"r must lie in {lo}..{top} for k={k} ({mode}), got {r}")


def _weight(j: int, r: int, mode: str) -> int:
    if j < r:
        return 0
    sign = -1 if (j - r) % 2 else 1
    return sign * (comb(j, r) if mode == EXACT else comb(j - 1, r - 1))


def density_weights(k: int, r: int, mode: str = EXACT, dedupe: bool = True) -> dict[tuple[int, ...], int]:
    """Integer weight attached to each distinct local factor in C_{k,r} or C'_{k,r}.

    With ``dedupe=False`` every labeled edge subset is visited directly.
    """
    _check_range(k, r, mode)
    weights: dict[tuple[int, ...], int] = defaultdict(int)
    if dedupe:
        for c in build_iso_table(k).classes:
            w = _weight(c.num_edges, r, mode)
            if w:
                weights[c.factor.coeffs] += w * c.multiplicity
    else:
        for j in range(r, k * (k - 1) // 2 + 1):
            w = _weight(j, r, mode)
            for G in gr.enumerate_edge_subsets(k, j):
                weights[factor_by_independent_sets(G).coeffs] += w
    return {q: w for q, w in sorted(weights.items()) if w}


def _combine(label: str, k: int, r: int | None, weights: dict[tuple[int, ...], int],
             prime_limit: int) -> DensityReport:
    value = np.longdouble(0)
    err = 0.0
    for q, w in weights.items():
        ev = evaluate(q, prime_limit)
        value += np.longdouble(w) * ev.value
        err += abs(w) * ev.error_bound
    return DensityReport(label, value, err, k=k, r=r, prime_limit=prime_limit,
                         num_classes=len(build_iso_table(k).classes),
                         provenance={"distinct_factors": len(weights)})


def density_exact_r(k: int, r: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    """Density of k-tuples with exactly r coprime pairs."""
    weights = density_weights(k, r, EXACT)
    return _combine(f"C_exact({k},{r})", k, r, weights, prime_limit)


def density_at_least_r(k: int, r: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    weights = density_weights(k, r, AT_LEAST)
    return _combine(f"C_atleast({k},{r})", k, r, weights, prime_limit)


def density_pairwise_noncoprime(k: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    rep = density_exact_r(k, 0, prime_limit)
    rep.label = f"C_pairwise_noncoprime({k})"
    return rep


def density_pairwise_coprime(k: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    """A_k = prod_p (1 - 1/p)^(k-1) (1 + (k-1)/p)."""
    if k < 2:
        raise DensityError(f"need k >= 2, got {k}")
    rep = _report(f"A_k({k})", evaluate(pairwise_coprime_factor(k), prime_limit), k=k)
    rep.r = k * (k - 1) // 2
    return rep


def density_zeta_inverse(k: int, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    return _report(f"zeta_inv({k})", zeta_inverse(k, prime_limit), k=k)


# Closed forms written out term by term, independent of the class machinery.
C3_TERMS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (1, (1,)),
    (-3, (1, 0, -1)),
    (3, (1, 0, -2, 1)),
    (-1, (1, 0, -3, 2)),
)

C4_TERMS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (1, (1,)),
    (-6, (1, 0, -1)),
    (3, (1, 0, -2, 0, 1)),          # (1 - x^2)^2
    (12, (1, 0, -2, 1)),
    (-4, (1, 0, -3, 3, -1)),
    (-16, (1, 0, -3, 2)),
    (15, (1, 0, -4, 4, -1)),
    (-6, (1, 0, -5, 6, -2)),
    (1, (1, 0, -6, 8, -3)),
)


def _closed(label: str, k: int, terms, prime_limit: int) -> DensityReport:
    value = np.longdouble(0)
    err = 0.0
    for w, q in terms:
        ev = evaluate(q, prime_limit)
        value += np.longdouble(w) * ev.value
        err += abs(w) * ev.error_bound
    return DensityReport(label, value, err, k=k, r=0, prime_limit=prime_limit,
                         provenance={"terms": len(terms)})


def density_C3_closed(prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    return _closed("C3_closed", 3, C3_TERMS, prime_limit)


def density_C4_closed(prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityReport:
    return _closed("C4_closed", 4, C4_TERMS, prime_limit)


__all__ = [
    "AT_LEAST",
    "EXACT",
    "DensityError",
    "DensityReport",
    "GraphError",
    "IsoClass",
    "IsoClassTable",
    "build_iso_table",
    "density_A",
    "density_C3_closed",
    "density_C4_closed",
    "density_at_least_r",
    "density_exact_r",
    "density_pairwise_coprime",
    "density_pairwise_noncoprime",
    "density_weights",
    "density_zeta_inverse",
]
