import random
from itertools import combinations

import pytest

import bruteforce as bf
from ramsey_ck4.coloring import Color, EdgeColoring, component_masks, mask_of
from ramsey_ck4.extremal import ExtremalSpec, build_extremal
from ramsey_ck4.kernels import (
    SearchBudgetExceeded,
    find_mono_k4,
    find_triangle_matching,
    greedy_mono_k4_packing,
    max_k4_packing,
    max_k4_packing_mask,
    max_matching,
)
from ramsey_ck4.rng import derive_seed, random_coloring


def from_pairs(order, pairs):
    return EdgeColoring.from_red_edges(order, [tuple(sorted(p)) for p in pairs])


def paley17():
    squares = {(x * x) % 17 for x in range(1, 17)}
    return EdgeColoring.from_red_edges(
        17, [(u, v) for u, v in combinations(range(17), 2) if (v - u) % 17 in squares]
    )


def test_find_mono_k4_all_red():
    c = EdgeColoring.monochromatic(4, Color.RED)
    assert find_mono_k4(c) == (Color.RED, (0, 1, 2, 3))


def test_find_mono_k4_on_18_vertices_always_succeeds():
    for i in range(200):
        c = random_coloring(18, 0.5, derive_seed(5, i))
        color, q = find_mono_k4(c)
        assert c.is_clique(q, color)


def test_k4_free_coloring_of_k10():
    c = paley17()
    sub = list(range(10))
    red = {frozenset(p) for p in combinations(sub, 2) if c.color_of(*p) is Color.RED}
    blue = bf.complement(10, red)
    assert not bf.cliques(sub, red, 4) and not bf.cliques(sub, blue, 4)
    assert find_mono_k4(c, sub) is None
    assert find_mono_k4(c) is None  # the whole Paley graph on 17 vertices


def test_greedy_packing_counts():
    for i in range(20):
        c = random_coloring(36, 0.5, derive_seed(6, i))
        peel = greedy_mono_k4_packing(c)
        assert len(peel) >= 5
        used = [v for _, q in peel for v in q]
        assert len(used) == len(set(used))
        assert all(c.is_clique(q, col) for col, q in peel)
    assert len(greedy_mono_k4_packing(EdgeColoring.monochromatic(17, Color.RED))) >= 0
    assert len(greedy_mono_k4_packing(random_coloring(18, 0.5, 3))) >= 1


def test_max_packing_small_cases():
    assert len(max_k4_packing(EdgeColoring.monochromatic(11, Color.BLUE), Color.BLUE)) == 2
    assert len(max_k4_packing(EdgeColoring.monochromatic(11, Color.RED), Color.BLUE)) == 0
    c = build_extremal(3)
    block = ExtremalSpec(3).blocks()[0]
    assert len(max_k4_packing(c, Color.BLUE, block)) == 2


def test_max_packing_is_valid_and_deterministic():
    c = random_coloring(30, 0.5, 77)
    a = max_k4_packing(c, Color.RED)
    b = max_k4_packing(c, Color.RED)
    assert a.quads == b.quads
    assert sum(a.per_component_counts.values()) == len(a.quads)
    flat = [v for q in a.quads for v in q]
    assert len(flat) == len(set(flat))
    assert all(c.is_clique(q, Color.RED) for q in a.quads)


@pytest.mark.parametrize("seed", range(15))
def test_max_packing_matches_brute_force(seed):
    rng = random.Random(seed)
    order = rng.randint(6, 12)
    red = bf.random_pairs(order, rng.choice([0.3, 0.5, 0.7]), rng)
    c = from_pairs(order, red)
    assert len(max_k4_packing(c, Color.RED)) == bf.max_k4_packing_size(range(order), red)
    blue = bf.complement(order, red)
    assert len(max_k4_packing(c, Color.BLUE)) == bf.max_k4_packing_size(range(order), blue)


def test_packing_sum_covers_greedy_bound():
    for i in range(10):
        c = random_coloring(36, [0.3, 0.5, 0.7][i % 3], derive_seed(8, i))
        total = len(max_k4_packing(c, Color.RED, limit=5)) + len(max_k4_packing(c, Color.BLUE, limit=5))
        assert total >= 5


def test_packing_decomposes_by_component():
    # sparse blue class: several blue components with K4s
    for i in range(20):
        c = random_coloring(20, 0.55, derive_seed(9, i))
        whole = max_k4_packing(c, Color.BLUE)
        comps = component_masks(c.blue, c.full)
        for idx, comp in enumerate(comps):
            inside = [q for q in whole.quads if mask_of(q) & comp]
            assert all(mask_of(q) & ~comp == 0 for q in inside)
            alone = len(max_k4_packing_mask(c.blue, comp)) if comp.bit_count() >= 4 else 0
            assert len(inside) == alone == whole.per_component_counts.get(idx, 0)


def test_budget_exhaustion_is_loud(monkeypatch):
    c = random_coloring(24, 0.5, 0)  # needs a few thousand nodes to prove optimality
    with pytest.raises(SearchBudgetExceeded):
        max_k4_packing(c, Color.RED, budget=10)
    monkeypatch.setenv("RAMSEY_NODE_BUDGET", "10")
    with pytest.raises(SearchBudgetExceeded):
        max_k4_packing(c, Color.RED)
    monkeypatch.delenv("RAMSEY_NODE_BUDGET")
    assert len(max_k4_packing(c, Color.RED)) == 5


def test_matching_small_cases():
    assert len(max_matching(EdgeColoring.monochromatic(6, Color.RED), Color.RED)) == 3
    c5 = from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    m = max_matching(c5, Color.RED)
    assert len(m) == 2
    assert all(c5.color_of(*e) is Color.RED for e in m.edges)


def test_brute_force_matching_oracles_agree():
    rng = random.Random(3)
    for _ in range(40):
        order = rng.randint(2, 8)
        edges = bf.random_pairs(order, 0.4, rng)
        assert bf.all_matchings_max(range(order), edges) == bf.max_matching_size(range(order), edges)


@pytest.mark.parametrize("seed", range(8))
def test_matching_order_20_matches_brute_force(seed):
    rng = random.Random(100 + seed)
    red = bf.random_pairs(20, rng.choice([0.08, 0.12, 0.2]), rng)
    c = from_pairs(20, red)
    m = max_matching(c, Color.RED)
    flat = [v for e in m.edges for v in e]
    assert len(flat) == len(set(flat))
    assert len(m) == bf.max_matching_size(range(20), red)


def test_matching_respects_within():
    c = EdgeColoring.monochromatic(10, Color.RED)
    m = max_matching(c, Color.RED, [0, 2, 4, 6, 8])
    assert len(m) == 2
    assert all(v % 2 == 0 for e in m.edges for v in e)


def test_triangle_matching_small_cases():
    k9 = EdgeColoring.monochromatic(9, Color.RED)
    tris = find_triangle_matching(k9, Color.RED, None, 3)
    assert tris is not None and len({v for t in tris for v in t}) == 9
    assert find_triangle_matching(EdgeColoring.monochromatic(8, Color.RED), Color.RED, None, 3) is None
    assert find_triangle_matching(k9, Color.BLUE, None, 0) == []


@pytest.mark.parametrize("seed", range(10))
def test_triangle_matching_matches_brute_force(seed):
    rng = random.Random(200 + seed)
    red = bf.random_pairs(15, rng.choice([0.25, 0.35, 0.5]), rng)
    c = from_pairs(15, red)
    best = bf.max_triangle_packing_size(range(15), red)
    for m in range(best, best + 2):
        tris = find_triangle_matching(c, Color.RED, None, m)
        assert (tris is not None) == (m <= best)
        if tris:
            assert all(c.is_clique(t, Color.RED) for t in tris)
            assert len({v for t in tris for v in t}) == 3 * m
