"""Closed-form Ramsey values used by the extraction, and small-case checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .coloring import Color, EdgeColoring
from .kernels import max_k4_packing, max_matching


def f(k: int, u: int) -> int:
    """Guaranteed red matching size in a coloring of K_{4k+u} with blue K4-packing number <= k."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if u < 0:
        raise ValueError(f"u must be nonnegative, got {u}")
    if u <= 3:
        return 0
    if u <= k + 3:
        return u - 3
    return (u + k - 2) // 2


def ramsey_match_quads(m: int, k: int) -> int:
    """R(mK2, (k+1)K4)."""
    if m < 1 or k < 0:
        raise ValueError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    return 3 * k + 2 * m + 2 if k < m - 1 else 4 * k + m + 3


def ramsey_triangles_quads(m: int, k: int) -> int:
    """R(mK3, (k+1)K4), i.e. max{3(k+1)+3m+1, 4(k+1)+2m+1}."""
    if m < 1 or k < 1:
        raise ValueError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    return 3 * k + 3 * m + 4 if k < m - 1 else 4 * k + 2 * m + 5


@dataclass
class FLemmaReport:
    order: int
    blue_packing: int
    uncovered: int
    bound: int | None
    red_matching: int
    applicable: bool
    passed: bool


def verify_f_lemma_instance(c: EdgeColoring) -> FLemmaReport:
    k = len(max_k4_packing(c, Color.BLUE))
    u = c.order - 4 * k
    nu = len(max_matching(c, Color.RED))
    if k < 1:
        return FLemmaReport(c.order, k, u, None, nu, False, True)
    bound = f(k, u)
    return FLemmaReport(c.order, k, u, bound, nu, True, nu >= bound)


# -- R(2K2, 2K4) = 9 -------------------------------------------------------------------

def _pair_index(order: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(combinations(range(order), 2))}


def small_matching_graphs(order: int) -> tuple[set[int], int]:
    """Edge sets (as bitmasks over lexicographic pairs) of graphs with matching number <= 1.

    Such graphs are exactly subgraphs of a star or of a triangle.  Returns
    the deduplicated set and the number of star subgraphs generated before
    dedup (order * (2**(order-1) - 1) + 1, counting the empty graph once).
    """
    idx = _pair_index(order)
    found: set[int] = set()
    generated = 0
    for center in range(order):
        spokes = [idx[tuple(sorted((center, w)))] for w in range(order) if w != center]
        for sub in range(1, 1 << len(spokes)):
            m = 0
            for j, p in enumerate(spokes):
                if sub >> j & 1:
                    m |= 1 << p
            found.add(m)
            generated += 1
    found.add(0)
    generated += 1
    for tri in combinations(range(order), 3):
        m = 0
        for p in combinations(tri, 2):
            m |= 1 << idx[p]
        found.add(m)
    return found, generated


def coloring_from_red_mask(order: int, red_mask: int) -> EdgeColoring:
    edges = [p for i, p in enumerate(combinations(range(order), 2)) if red_mask >> i & 1]
    return EdgeColoring.from_red_edges(order, edges)


@dataclass
class SmallRamseyReport:
    witness_red_matching: int
    witness_blue_packing: int
    witness_passed: bool
    generated: int
    distinct: int
    upper_failures: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.witness_passed and not self.upper_failures


def verify_small_ramsey_match_quads() -> SmallRamseyReport:
    """Check R(2K2, 2K4) = 9 exactly (m=2, k=1)."""
    witness = EdgeColoring.from_red_edges(8, [(0, 1), (0, 2), (1, 2)])
    nu = len(max_matching(witness, Color.RED))
    kb = len(max_k4_packing(witness, Color.BLUE))
    graphs, generated = small_matching_graphs(9)
    failures = []
    for red_mask in sorted(graphs):
        c = coloring_from_red_mask(9, red_mask)
        if len(max_k4_packing(c, Color.BLUE, limit=2)) < 2:
            failures.append(red_mask)
    return SmallRamseyReport(nu, kb, nu <= 1 and kb <= 1, generated, len(graphs), failures)
