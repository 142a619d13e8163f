"""Exact search kernels over bitset graphs.

All kernels take a coloring, a color and a vertex mask (``within``) and
work on the induced subgraph of that color class.  Results use 0-indexed
vertices.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coloring import Color, EdgeColoring, bits, component_masks, mask_of

DEFAULT_NODE_BUDGET = 10**8


class SearchBudgetExceeded(RuntimeError):
    """A branch-and-bound search ran out of nodes before proving optimality."""


def node_budget() -> int:
    raw = os.environ.get("RAMSEY_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def _as_mask(c: EdgeColoring, within: Iterable[int] | int | None) -> int:
    if within is None:
        return c.full
    if isinstance(within, int):
        return within & c.full
    return mask_of(within)


@dataclass
class CliquePacking:
    color: Color
    quads: list[tuple[int, int, int, int]]
    per_component_counts: dict[int, int] = field(default_factory=dict)
    component_masks: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.quads)


@dataclass
class Matching:
    color: Color
    edges: list[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.edges)


# -- K4 search ---------------------------------------------------------------------

def _first_k4_from(adj: Sequence[int], a: int, avail: int) -> tuple[int, int, int, int] | None:
    """Lexicographically least K4 in ``avail`` whose minimum vertex is ``a``."""
    n1 = adj[a] & avail & ~((2 << a) - 1)
    for b in bits(n1):
        n2 = n1 & adj[b] & ~((2 << b) - 1)
        for c in bits(n2):
            n3 = n2 & adj[c] & ~((2 << c) - 1)
            if n3:
                return a, b, c, (n3 & -n3).bit_length() - 1
    return None


def first_k4(adj: Sequence[int], avail: int) -> tuple[int, int, int, int] | None:
    for a in bits(avail):
        q = _first_k4_from(adj, a, avail)
        if q is not None:
            return q
    return None


def find_mono_k4(
    c: EdgeColoring, within: Iterable[int] | int | None = None
) -> tuple[Color, tuple[int, int, int, int]] | None:
    """Lexicographically least monochromatic 4-set inside ``within`` (red wins ties)."""
    avail = _as_mask(c, within)
    red, blue = c.red, c.blue
    for a in bits(avail):
        qr = _first_k4_from(red, a, avail)
        qb = _first_k4_from(blue, a, avail)
        if qr is None and qb is None:
            continue
        if qb is None or (qr is not None and qr <= qb):
            return Color.RED, qr
        return Color.BLUE, qb
    return None


def greedy_mono_k4_packing(c: EdgeColoring) -> list[tuple[Color, tuple[int, int, int, int]]]:
    """Peel monochromatic K4s while at least R(4,4) = 18 vertices remain."""
    avail = c.full
    out = []
    while avail.bit_count() >= 18:
        hit = find_mono_k4(c, avail)
        if hit is None:  # impossible by R(4,4) = 18
            raise AssertionError("18 vertices without a monochromatic K4")
        out.append(hit)
        avail &= ~mask_of(hit[1])
    return out


def enumerate_k4(adj: Sequence[int], avail: int) -> list[int]:
    """All K4s inside ``avail`` as vertex masks, in lexicographic order."""
    out = []
    for a in bits(avail):
        n1 = adj[a] & avail & ~((2 << a) - 1)
        for b in bits(n1):
            n2 = n1 & adj[b] & ~((2 << b) - 1)
            ab = (1 << a) | (1 << b)
            for c in bits(n2):
                n3 = n2 & adj[c] & ~((2 << c) - 1)
                abc = ab | (1 << c)
                for d in bits(n3):
                    out.append(abc | (1 << d))
    return out


def _greedy_pack(adj: Sequence[int], avail: int, limit: int | None) -> list[int]:
    out = []
    while limit is None or len(out) < limit:
        q = first_k4(adj, avail)
        if q is None:
            break
        m = mask_of(q)
        out.append(m)
        avail &= ~m
    return out


def _hitting_bound(quads: list[int], cap: int) -> int:
    """Size of a greedy hitting set (stops once it exceeds ``cap``)."""
    size = 0
    rest = quads
    while rest:
        if size > cap:
            return size
        counts: dict[int, int] = {}
        for q in rest:
            for v in bits(q):
                counts[v] = counts.get(v, 0) + 1
        v = max(counts, key=counts.__getitem__)
        bit = 1 << v
        rest = [q for q in rest if not q & bit]
        size += 1
    return size


class _PackingSearch:
    def __init__(self, budget: int, limit: int | None) -> None:
        self.budget = budget
        self.limit = limit
        self.nodes = 0
        self.best: list[int] = []

    def run(self, quads: list[int], chosen: list[int]) -> bool:
        """Returns True when the search may stop (limit reached)."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"K4 packing search exceeded {self.budget} nodes")
        if not quads:
            if len(chosen) > len(self.best):
                self.best = list(chosen)
            return self.limit is not None and len(self.best) >= self.limit
        cover = 0
        for q in quads:
            cover |= q
        room = len(self.best) - len(chosen)
        bound = cover.bit_count() // 4
        if bound <= room:
            return False
        bound = min(bound, _hitting_bound(quads, room))
        if bound <= room:
            return False
        low = cover & -cover
        rest = [q for q in quads if not q & low]
        for q in quads:
            if q & low:
                chosen.append(q)
                stop = self.run([r for r in rest if not r & q], chosen)
                chosen.pop()
                if stop:
                    return True
                if bound <= len(self.best) - len(chosen):
                    return False
        return self.run(rest, chosen)


def _frequency_greedy(quads: list[int]) -> list[int]:
    """Greedy packing preferring quads made of rarely used vertices."""
    freq: dict[int, int] = {}
    for q in quads:
        for v in bits(q):
            freq[v] = freq.get(v, 0) + 1
    order = sorted(quads, key=lambda q: (sum(freq[v] for v in bits(q)), _mask_key(q)))
    used = 0
    out = []
    for q in order:
        if not q & used:
            out.append(q)
            used |= q
    return out


def max_k4_packing_mask(
    adj: Sequence[int], avail: int, limit: int | None = None, budget: int | None = None
) -> list[int]:
    """Exact maximum set of disjoint K4s inside ``avail`` (capped at ``limit``)."""
    greedy = _greedy_pack(adj, avail, limit)
    if limit is not None and len(greedy) >= limit:
        return greedy
    if len(greedy) >= avail.bit_count() // 4:
        return greedy
    quads = enumerate_k4(adj, avail)
    alt = _frequency_greedy(quads)
    if limit is not None:
        alt = alt[:limit]
    if len(alt) > len(greedy):
        greedy = alt
    if limit is not None and len(greedy) >= limit:
        return sorted(greedy, key=_mask_key)
    search = _PackingSearch(node_budget() if budget is None else budget, limit)
    search.best = greedy
    search.run(quads, [])
    return sorted(search.best, key=_mask_key)


def _mask_key(m: int) -> tuple[int, ...]:
    return tuple(bits(m))


def max_k4_packing(
    c: EdgeColoring,
    color: Color,
    within: Iterable[int] | int | None = None,
    limit: int | None = None,
    budget: int | None = None,
) -> CliquePacking:
    """Maximum disjoint ``color``-K4 packing inside ``within``, solved per component.

    ``limit`` caps the search per component: a component stops as soon as
    ``limit`` quads are found, so counts reaching ``limit`` are lower bounds.
    """
    adj = c.adjacency(color)
    avail = _as_mask(c, within)
    comps = component_masks(adj, avail)
    quads: list[tuple[int, int, int, int]] = []
    counts = {}
    for i, comp in enumerate(comps):
        if comp.bit_count() < 4:
            continue
        found = max_k4_packing_mask(adj, comp, limit, budget)
        if found:
            counts[i] = len(found)
            quads.extend(tuple(bits(m)) for m in found)
    return CliquePacking(color, quads, counts, comps)


# -- matching ----------------------------------------------------------------------

def max_matching_mask(adj: Sequence[int], avail: int) -> list[tuple[int, int]]:
    """Edmonds' blossom algorithm on the graph induced by ``avail``."""
    verts = list(bits(avail))
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    g = [[index[w] for w in bits(adj[v] & avail)] for v in verts]
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in g[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def find_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = [root]

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in g[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_path(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return sorted((verts[i], verts[j]) for i, j in enumerate(match) if j > i)


def max_matching(
    c: EdgeColoring, color: Color, within: Iterable[int] | int | None = None
) -> Matching:
    return Matching(color, max_matching_mask(c.adjacency(color), _as_mask(c, within)))


# -- triangle matchings ------------------------------------------------------------

def _triangle_cover(adj: Sequence[int], avail: int) -> int:
    cover = 0
    for v in bits(avail):
        nb = adj[v] & avail
        for w in bits(nb):
            if adj[w] & nb:
                cover |= 1 << v
                break
    return cover


def find_triangle_matching_mask(
    adj: Sequence[int], avail: int, m: int, budget: int | None = None
) -> list[tuple[int, int, int]] | None:
    if m <= 0:
        return []
    budget = node_budget() if budget is None else budget
    nodes = 0
    chosen: list[tuple[int, int, int]] = []

    def rec(avail: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"triangle search exceeded {budget} nodes")
        need = m - len(chosen)
        if need == 0:
            return True
        cover = _triangle_cover(adj, avail)
        if cover.bit_count() < 3 * need:
            return False
        v = (cover & -cover).bit_length() - 1
        nb = adj[v] & avail
        for a in bits(nb):
            for b in bits(nb & adj[a] & ~((2 << a) - 1)):
                chosen.append((v, a, b))
                if rec(avail & ~((1 << v) | (1 << a) | (1 << b))):
                    return True
                chosen.pop()
        return rec(avail & ~(1 << v))

    return list(chosen) if rec(avail) else None


def find_triangle_matching(
    c: EdgeColoring,
    color: Color,
    within: Iterable[int] | int | None,
    m: int,
    budget: int | None = None,
) -> list[tuple[int, int, int]] | None:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return find_triangle_matching_mask(c.adjacency(color), _as_mask(c, within), m, budget)
