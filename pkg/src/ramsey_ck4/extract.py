"""Certificate extraction for colorings of K_{13n-3}, and an independent verifier.

The extraction follows the constructive argument for R_2(c(nK4)) <= 13n-3:

1. relabel so that red is a connected color;
2. n disjoint red K4s give a red certificate on the whole vertex set;
3. a blue component with n disjoint blue K4s gives a blue certificate;
4. otherwise a maximum blue packing is grouped by blue component and the
   grouped counts drive the assembly of n red K4s out of red matchings,
   red triangles and single vertices taken from different blue components.

Edges between distinct blue components are red, which is all the assembly
needs: a red edge plus two vertices from two other components is a red K4.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Sequence, TypeVar

from .coloring import (
    Color,
    EdgeColoring,
    bits,
    component_masks,
    connected_color,
    mask_of,
    serialize,
)
from .combine import GroupingKind, PartitionInput, combine, min_total, quarter
from .kernels import (
    find_triangle_matching_mask,
    greedy_mono_k4_packing,
    max_k4_packing_mask,
    max_matching_mask,
)
from .oracles import f

T = TypeVar("T", bound=Hashable)


class TheoremViolation(RuntimeError):
    """An arithmetic guard or a guaranteed search failed.  Never expected for n >= 3."""

    def __init__(self, message: str, bundle: dict[str, Any]) -> None:
        super().__init__(message)
        self.bundle = bundle


@dataclass
class Unresolved:
    """The n=2, t=1, k=1 branch, which needs R_2(2K4) <= 23."""

    reason: str
    coloring: EdgeColoring


@dataclass
class Certificate:
    color: Color
    support: tuple[int, ...]
    quads: list[tuple[int, int, int, int]]
    case: str = ""

    def to_json(self) -> str:
        doc = {
            "color": self.color.value,
            "support": [v + 1 for v in self.support],
            "quads": [[v + 1 for v in q] for q in self.quads],
        }
        if self.case:
            doc["case"] = self.case
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        doc = json.loads(text)
        try:
            color = Color(doc["color"])
            support = tuple(int(v) - 1 for v in doc["support"])
            quads = [tuple(int(v) - 1 for v in q) for q in doc["quads"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from None
        return cls(color, support, quads, str(doc.get("case", "")))


@dataclass
class CaseBudget:
    case_tag: str
    u_sets: list[int]
    k_counts: list[int]
    u_counts: list[int]
    m_targets: list[int]
    n_prime: int | None = None
    # red edges per set (cases 1.1, 1.2, 2.2) or red triangles in U_1 (case 2.1)
    pieces: list[list[tuple[int, ...]]] = field(default_factory=list)


@dataclass
class VerifyResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _bundle(c: EdgeColoring, n: int, stage: str, **details: Any) -> dict[str, Any]:
    return {"n": n, "stage": stage, "coloring": serialize(c, compact=True), **details}


def _violation(c: EdgeColoring, n: int, stage: str, message: str, **details: Any) -> TheoremViolation:
    return TheoremViolation(f"{stage}: {message}", _bundle(c, n, stage, **details))


# -- Case 1.2 re-splitting -----------------------------------------------------------

def split_for_case_1_2(groups: Sequence[Sequence[tuple[T, int]]], n: int) -> list[list[T]]:
    """Regroup whole components so three groups carry counts in [ceil(n/4), n-1].

    ``groups`` holds three lists of (component, K4 count), counts descending.
    Returns four lists; the fourth collects everything not kept.
    """
    c = quarter(n)
    kept: list[list[T]] = []
    spill: list[T] = []
    for grp in groups:
        total = sum(cnt for _, cnt in grp)
        if total <= n - 1:
            kept.append([item for item, _ in grp])
            continue
        heavy = next((i for i, (_, cnt) in enumerate(grp) if cnt >= c), None)
        if heavy is not None:
            chosen = {heavy}
        else:
            chosen, acc = set(), 0
            for i, (_, cnt) in enumerate(grp):
                if acc >= c:
                    break
                if cnt > 0:
                    chosen.add(i)
                    acc += cnt
        kept.append([item for i, (item, _) in enumerate(grp) if i in chosen])
        spill.extend(item for i, (item, _) in enumerate(grp) if i not in chosen)
    return [*kept, spill]


def waterfill(demand: int, caps: Sequence[int]) -> list[int]:
    out = []
    for cap in caps:
        take = min(demand, cap)
        out.append(take)
        demand -= take
    return out


# -- assembly -----------------------------------------------------------------------

def assemble_red_quads(c: EdgeColoring, budget: CaseBudget) -> list[tuple[int, int, int, int]]:
    """Turn a case budget into red K4s; cross-set edges are red by construction."""
    tag = budget.case_tag
    sets = budget.u_sets
    used = 0
    for plist in budget.pieces:
        for p in plist:
            used |= mask_of(p)
    free = [list(bits(s & ~used)) for s in sets]
    cursor = [0] * len(sets)

    def take(i: int) -> int:
        if cursor[i] >= len(free[i]):
            raise TheoremViolation(
                f"case {tag}: set {i + 1} ran out of free vertices",
                {"case": tag, "set": i + 1},
            )
        v = free[i][cursor[i]]
        cursor[i] += 1
        return v

    quads: list[tuple[int, ...]] = []
    if tag in ("1.1", "1.2"):
        for i in range(3):
            others = [j for j in range(3) if j != i]
            for edge in budget.pieces[i][: budget.m_targets[i]]:
                quads.append((*edge, take(others[0]), take(others[1])))
        if tag == "1.2":
            for _ in range(budget.m_targets[3]):
                quads.append((take(0), take(1), take(2), take(3)))
    elif tag == "2.1":
        for tri in budget.pieces[0][: budget.m_targets[0]]:
            quads.append((*tri, take(1)))
    elif tag == "2.2":
        m = budget.m_targets[0]
        for e1, e2 in zip(budget.pieces[0][:m], budget.pieces[1][:m]):
            quads.append((*e1, *e2))
    else:
        raise ValueError(f"unknown case tag {tag!r}")
    out = [tuple(sorted(q)) for q in quads]
    for q in out:
        if not c.is_clique(q, Color.RED):
            raise TheoremViolation(f"case {tag}: assembled quad {q} is not red", {"case": tag})
    return sorted(out)  # type: ignore[return-value]


# -- extraction ---------------------------------------------------------------------

def _red_edges(g: EdgeColoring, within: int, need: int, c: EdgeColoring, n: int, tag: str) -> list[tuple[int, ...]]:
    edges = max_matching_mask(g.red, within)
    if len(edges) < need:
        raise _violation(c, n, tag, f"red matching {len(edges)} below guaranteed {need}")
    return [tuple(e) for e in edges[:need]]


def extract(
    c: EdgeColoring, n: int, *, constructive: bool = False, budget: int | None = None
) -> Certificate | Unresolved:
    """Find a monochromatic connected nK4 in a coloring of K_{13n-3}.

    With ``constructive=True`` the exact red-packing test of step 2 is
    replaced by the greedy packing count, so the case analysis of step 4
    runs whenever the greedy peel yields fewer than n red K4s.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if c.order != 13 * n - 3:
        raise ValueError(f"expected order 13n-3 = {13 * n - 3}, got {c.order}")
    orig, g = connected_color(c)

    def cert(color: Color, support: int, quads: Sequence[Sequence[int]], case: str) -> Certificate:
        real = orig if color is Color.RED else orig.other
        return Certificate(real, tuple(bits(support)), [tuple(sorted(q)) for q in quads], case)  # type: ignore[misc]

    # step 2
    if constructive:
        peel = greedy_mono_k4_packing(g)
        reds = [q for col, q in peel if col is Color.RED]
        if len(reds) >= n:
            return cert(Color.RED, g.full, reds[:n], "red-greedy")
    else:
        reds_m = max_k4_packing_mask(g.red, g.full, limit=n, budget=budget)
        if len(reds_m) >= n:
            return cert(Color.RED, g.full, [tuple(bits(q)) for q in reds_m[:n]], "red-packing")

    # step 3
    blue = g.blue
    comps = component_masks(blue, g.full)
    counts = []
    for comp in comps:
        found = max_k4_packing_mask(blue, comp, limit=n, budget=budget) if comp.bit_count() >= 4 else []
        if len(found) >= n:
            return cert(Color.BLUE, comp, [tuple(bits(q)) for q in found[:n]], "blue-component")
        counts.append(len(found))

    # step 4
    k = sum(counts)
    if k < min_total(n):
        raise _violation(c, n, "packing", f"blue packing {k} below 2n-3+floor((n-1)/4) = {min_total(n)}", k=k)
    holding = sorted((i for i, a in enumerate(counts) if a > 0), key=lambda i: (-counts[i], i))
    rest = 0
    for i, a in enumerate(counts):
        if a == 0:
            rest |= comps[i]
    if len(holding) == 1:
        if n == 2:
            return Unresolved("n=2 with a single blue K4 needs R_2(2K4) <= 23", c)
        raise _violation(c, n, "t>=2", "all blue K4s in one blue component", k=k)
    parts = [counts[i] for i in holding]
    grouping = combine(PartitionInput(n, parts))
    members = [[holding[j - 1] for j in grp] for grp in grouping.groups]

    if grouping.kind is GroupingKind.THREE:
        ks = [sum(counts[i] for i in grp) for grp in members]
        if all(kk <= n - 1 for kk in ks):
            sets = [_union(comps, grp) for grp in members]
            sets[2] |= rest
            budget_ = _case_1_1(g, c, n, sets, ks)
        else:
            budget_ = _case_1_2(g, c, n, comps, counts, members, rest)
    else:
        sets = [_union(comps, grp) for grp in members]
        sets[1] |= rest
        ks = [sum(counts[i] for i in grp) for grp in members]
        budget_ = _case_2(g, c, n, sets, ks, budget)
    quads = assemble_red_quads(g, budget_)
    if len(quads) != n:
        raise _violation(c, n, budget_.case_tag, f"assembled {len(quads)} quads, expected {n}")
    return cert(Color.RED, g.full, quads, budget_.case_tag)


def _union(comps: Sequence[int], idx: Sequence[int]) -> int:
    m = 0
    for i in idx:
        m |= comps[i]
    return m


def _case_1_1(g: EdgeColoring, c: EdgeColoring, n: int, sets: list[int], ks: list[int]) -> CaseBudget:
    us = [s.bit_count() - 4 * kk for s, kk in zip(sets, ks)]
    fs = [f(kk, u) for kk, u in zip(ks, us)]
    if sum(fs) < n:
        raise _violation(c, n, "1.1", f"sum of f bounds {sum(fs)} < n", k=ks, u=us)
    m = waterfill(n, fs)
    pieces = [_red_edges(g, s, mi, c, n, "1.1") for s, mi in zip(sets, m)]
    return CaseBudget("1.1", sets, ks, us, m, None, pieces)


def _case_1_2(
    g: EdgeColoring,
    c: EdgeColoring,
    n: int,
    comps: list[int],
    counts: list[int],
    members: list[list[int]],
    rest: int,
) -> CaseBudget:
    groups = [[(i, counts[i]) for i in grp] for grp in members]
    split = split_for_case_1_2(groups, n)
    sets = [_union(comps, s) for s in split]
    sets[2] |= rest
    ks = [sum(counts[i] for i in s) for s in split]
    us = [s.bit_count() - 4 * kk for s, kk in zip(sets, ks)]
    cq = quarter(n)
    if not all(cq <= kk <= n - 1 for kk in ks[:3]):
        raise _violation(c, n, "1.2", "re-split counts outside [ceil(n/4), n-1]", k=ks)
    size4 = sets[3].bit_count()
    n_prime = 13 * n - 3 - 4 * sum(ks[:3]) - size4
    if size4 >= n:
        return CaseBudget("1.2", sets, ks, us, [0, 0, 0, n], n_prime, [[], [], []])
    demand = n - size4
    fs = [f(kk, u) for kk, u in zip(ks[:3], us[:3])]
    if sum(fs) < demand:
        raise _violation(c, n, "1.2", f"sum of f bounds {sum(fs)} < n-|U4'| = {demand}", k=ks, u=us)
    m = waterfill(demand, fs)
    pieces = [_red_edges(g, s, mi, c, n, "1.2") for s, mi in zip(sets[:3], m)]
    return CaseBudget("1.2", sets, ks, us, [*m, size4], n_prime, pieces)


def _case_2(
    g: EdgeColoring, c: EdgeColoring, n: int, sets: list[int], ks: list[int], budget: int | None
) -> CaseBudget:
    us = [s.bit_count() - 4 * kk for s, kk in zip(sets, ks)]
    if us[0] < us[1]:
        sets, ks, us = sets[::-1], ks[::-1], us[::-1]
    if us[0] + us[1] < 4 * n + 6 or us[0] < 2 * n + 3:
        raise _violation(c, n, "2", "uncovered counts below 4n+6 / 2n+3", k=ks, u=us)
    if us[0] >= 2 * n + 6:
        tris = find_triangle_matching_mask(g.red, sets[0], n, budget)
        if tris is None:
            raise _violation(c, n, "2.1", "no red nK3 in U_1", k=ks, u=us)
        if sets[1].bit_count() < n:
            raise _violation(c, n, "2.1", "|U_2| < n", k=ks, u=us)
        return CaseBudget("2.1", sets, ks, us, [n, n], None, [list(tris), []])
    for kk, u in zip(ks, us):
        if f(kk, u) < n:
            raise _violation(c, n, "2.2", f"f({kk},{u}) < n", k=ks, u=us)
    pieces = [_red_edges(g, s, n, c, n, "2.2") for s in sets]
    return CaseBudget("2.2", sets, ks, us, [n, n], None, pieces)


# -- verification -------------------------------------------------------------------

def verify_certificate(c: EdgeColoring, cert: Certificate, n: int) -> VerifyResult:
    """Re-check a certificate against the coloring alone."""
    N = c.order
    support = cert.support
    if len(set(support)) != len(support):
        return VerifyResult(False, "support has repeated vertices")
    if any(not 0 <= v < N for v in support):
        return VerifyResult(False, "support vertex out of range")
    if len(cert.quads) != n:
        return VerifyResult(False, f"expected {n} quads, got {len(cert.quads)}")
    if not support:
        return VerifyResult(False, "empty support")
    sup = set(support)
    seen: set[int] = set()
    for q in cert.quads:
        if len(q) != 4 or len(set(q)) != 4:
            return VerifyResult(False, f"quad {q} does not have 4 distinct vertices")
        if not set(q) <= sup:
            return VerifyResult(False, f"quad {q} not inside support")
        if seen & set(q):
            return VerifyResult(False, "quads overlap")
        seen |= set(q)
        for i in range(4):
            for j in range(i + 1, 4):
                if c.color_of(q[i], q[j]) is not cert.color:
                    return VerifyResult(False, "non-monochromatic quad")
    # connectivity by plain BFS over pairwise colors
    start = support[0]
    reached = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in sup - reached:
            if c.color_of(v, w) is cert.color:
                reached.add(w)
                stack.append(w)
    if reached != sup:
        return VerifyResult(False, f"support is disconnected in {cert.color.value}")
    return VerifyResult(True)
