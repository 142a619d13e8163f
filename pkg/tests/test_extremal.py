from itertools import combinations

import pytest

import bruteforce as bf
from ramsey_ck4.coloring import Color, EdgeColoring, components
from ramsey_ck4.extremal import ExtremalSpec, build_extremal, check_absence
from ramsey_ck4.kernels import enumerate_k4, max_k4_packing


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_extremal_has_no_connected_nk4(n):
    c = build_extremal(n)
    assert c.order == 13 * n - 4
    assert check_absence(c, n)


def test_layout():
    spec = ExtremalSpec(3)
    assert 3 * spec.block_size + (spec.n - 1) == spec.order == 35
    c = build_extremal(3)
    for blk in spec.blocks():
        assert c.is_clique(blk, Color.BLUE)
        assert len(max_k4_packing(c, Color.BLUE, blk)) == 2
    for a in spec.a_part:
        assert c.red[a] == c.full ^ (1 << a)
    assert build_extremal(2).order == 22
    with pytest.raises(ValueError):
        build_extremal(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_red_k4_meets_a(n):
    c = build_extremal(n)
    a_mask = (1 << (n - 1)) - 1
    quads = enumerate_k4(c.red, c.full)
    assert quads and all(q & a_mask for q in quads)


def test_all_red_has_witness():
    c = EdgeColoring.monochromatic(35, Color.RED)
    res = check_absence(c, 3)
    assert not res
    assert res.color is Color.RED
    assert len(res.witness) == 3
    assert all(c.is_clique(q, Color.RED) for q in res.witness)


def test_recolored_a_vertex_matches_recount():
    n = 3
    spec = ExtremalSpec(n)
    base = build_extremal(n)
    a = 0
    block = list(spec.blocks()[0])
    red = list(base.red)
    for v in block:
        red[a] &= ~(1 << v)
        red[v] &= ~(1 << a)
    c = EdgeColoring(base.order, red)
    res = check_absence(c, n)
    # brute-force recount over the small blue components
    worst = 0
    for comp in components(c, Color.BLUE).components:
        if len(comp) <= 12:
            edges = {frozenset(p) for p in combinations(sorted(comp), 2) if c.color_of(*p) is Color.BLUE}
            worst = max(worst, bf.max_k4_packing_size(comp, edges))
    assert worst == 3
    assert not res and res.color is Color.BLUE
    assert res.component == frozenset([a, *block])
