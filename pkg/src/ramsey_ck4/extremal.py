"""Lower-bound colorings on 13n-4 vertices with no monochromatic connected nK4.

Layout (0-indexed): A = {0..n-2} is blue-isolated, then three blue cliques
B1, B2, B3 of size 4n-1 each.  Every edge not inside a block is red.  A
blue component holds at most floor((4n-1)/4) = n-1 disjoint K4s, and every
red K4 needs a vertex of A since a red clique avoiding A meets each block
at most once.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coloring import Color, EdgeColoring, bits, component_masks
from .kernels import max_k4_packing_mask


@dataclass(frozen=True)
class ExtremalSpec:
    n: int

    @property
    def block_size(self) -> int:
        return 4 * self.n - 1

    @property
    def order(self) -> int:
        return 13 * self.n - 4

    def blocks(self) -> list[range]:
        start = self.n - 1
        s = self.block_size
        return [range(start + i * s, start + (i + 1) * s) for i in range(3)]

    @property
    def a_part(self) -> range:
        return range(self.n - 1)


def build_extremal(n: int) -> EdgeColoring:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    spec = ExtremalSpec(n)
    full = (1 << spec.order) - 1
    red = [full ^ (1 << v) for v in range(spec.order)]
    for block in spec.blocks():
        bm = 0
        for v in block:
            bm |= 1 << v
        for v in block:
            red[v] &= ~bm
    return EdgeColoring(spec.order, red)


@dataclass
class AbsenceResult:
    absent: bool
    color: Color | None = None
    component: frozenset[int] | None = None
    witness: list[tuple[int, int, int, int]] | None = None

    def __bool__(self) -> bool:
        return self.absent


def check_absence(c: EdgeColoring, n: int, budget: int | None = None) -> AbsenceResult:
    """True iff no monochromatic component holds n disjoint K4s of its color.

    Raises SearchBudgetExceeded instead of returning a verdict when a
    component search runs out of nodes.
    """
    for color in (Color.RED, Color.BLUE):
        adj = c.adjacency(color)
        for comp in component_masks(adj, c.full):
            if comp.bit_count() < 4 * n:
                continue
            found = max_k4_packing_mask(adj, comp, limit=n, budget=budget)
            if len(found) >= n:
                return AbsenceResult(
                    False, color, frozenset(bits(comp)), [tuple(bits(q)) for q in found[:n]]
                )
    return AbsenceResult(True)
