"""Acceptance criteria at full scale.  Each test prints one PASS/FAIL line.

Run alone with ``pytest -m acceptance -v``.
"""
import random
import time

import pytest

import bruteforce as bf
from ramsey_ck4 import Color, EdgeColoring
from ramsey_ck4.extremal import build_extremal, check_absence
from ramsey_ck4.kernels import (
    SearchBudgetExceeded,
    find_triangle_matching,
    greedy_mono_k4_packing,
    max_k4_packing,
    max_matching,
)
from ramsey_ck4.oracles import f, ramsey_match_quads, ramsey_triangles_quads
from ramsey_ck4.rng import derive_seed, random_coloring
from ramsey_ck4.selftest import f_lemma_random, lemma2_exhaustive, ramsey_small
from ramsey_ck4.stress import StressConfig, run_stress

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")

    return emit


def test_1_lemma2_exhaustive(report):
    t0 = time.perf_counter()
    rep = lemma2_exhaustive(n_max=12, random_samples=10**5, seed=0)
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 60
    report(1, "partition grouping", ok, f"{rep.checked} sequences, {len(rep.failures)} failures, {dt:.1f}s (<60s)")
    assert rep.passed, rep.failures[:5]
    assert dt < 60


def test_2_f_lemma(report):
    t0 = time.perf_counter()
    rep = f_lemma_random(count=10**4, seed=1)
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 300 and rep.checked > 0
    report(2, "red matching bound f", ok,
           f"{rep.checked} applicable, {rep.skipped} with k*=0, {len(rep.failures)} failures, {dt:.1f}s (<300s)")
    assert rep.checked + rep.skipped == 10**4
    assert rep.passed, rep.failures[:5]
    assert dt < 300


def test_3_small_ramsey(report):
    t0 = time.perf_counter()
    rep, detail = ramsey_small()
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 30 and detail.witness_passed
    report(3, "R(2K2,2K4)=9", ok,
           f"K8 witness ok={detail.witness_passed}, {detail.distinct} red graphs with nu<=1 on 9 vertices, {dt:.1f}s (<30s)")
    assert ramsey_match_quads(2, 1) == 9
    assert detail.witness_passed
    assert rep.passed, rep.failures[:5]
    assert dt < 30


def test_4_stress(report):
    runs = [
        StressConfig(3, 2000, 0x5EED3, (0.1, 0.3, 0.5, 0.7, 0.9)),
        StressConfig(4, 500, 0x5EED4, (0.3, 0.5, 0.7)),
    ]
    summaries = [run_stress(cfg) for cfg in runs]
    times = sorted(r.seconds for s in summaries for r in s.results)
    total = len(times)
    verified = sum(r.ok for s in summaries for r in s.results)
    median = times[total // 2]
    p99 = times[min(total - 1, int(0.99 * total))]
    ok = verified == total and median < 2 and p99 < 30
    report(4, "random extraction stress", ok,
           f"{verified}/{total} verified, median {median * 1000:.1f}ms (<2s), p99 {p99 * 1000:.1f}ms (<30s)")
    for s in summaries:
        assert s.passed, s.report()
    assert total == 5 * 2000 + 3 * 500
    assert median < 2 and p99 < 30


def test_5_lower_bound(report):
    t0 = time.perf_counter()
    verdicts = {}
    for n in (2, 3, 4, 5):
        c = build_extremal(n)
        assert c.order == 13 * n - 4
        try:
            verdicts[n] = bool(check_absence(c, n))
        except SearchBudgetExceeded:
            verdicts[n] = False
    dt = time.perf_counter() - t0
    ok = all(verdicts.values()) and dt < 300
    report(5, "extremal colorings", ok, f"absent for n=2..5: {verdicts}, {dt:.1f}s (<300s)")
    assert all(verdicts.values())
    assert dt < 300


def test_6_greedy_count(report):
    worst = None
    for i in range(500):
        c = random_coloring(36, 0.5 if i % 5 == 0 else (0.1, 0.3, 0.7, 0.9)[i % 4], derive_seed(6, i))
        got = len(greedy_mono_k4_packing(c))
        worst = got if worst is None else min(worst, got)
    ok = worst >= 5
    report(6, "greedy quads on K36", ok, f"minimum over 500 colorings = {worst} (>=5)")
    assert worst >= 5


def test_7_formulas(report):
    spot = {
        "f(2,3)": (f(2, 3), 0),
        "f(1,4)": (f(1, 4), 1),
        "f(3,10)": (f(3, 10), 5),
        "rm(2,1)": (ramsey_match_quads(2, 1), 9),
        "rt(1,1)": (ramsey_triangles_quads(1, 1), 11),
    }
    bad = [k for k, (got, want) in spot.items() if got != want]
    for m in range(1, 101):
        k = m - 1
        low, high = 3 * k + 2 * m + 2, 4 * k + m + 3
        if not (low == high == ramsey_match_quads(m, k)):
            bad.append(f"rm branch m={m}")
    report(7, "closed forms", not bad, f"5 spot values and 100 branch identities, mismatches={bad}")
    assert not bad


def _as_sets(c: EdgeColoring, color: Color) -> set[frozenset[int]]:
    adj = c.adjacency(color)
    return {frozenset((u, v)) for u in range(c.order) for v in range(u + 1, c.order) if adj[u] >> v & 1}


def test_8_kernels_vs_brute_force(report):
    rng = random.Random(8)
    mismatches = []
    checked = 0
    for order in range(1, 13):
        for _ in range(1000):
            p = rng.choice((0.2, 0.4, 0.5, 0.6, 0.8))
            red = bf.random_pairs(order, p, rng)
            c = EdgeColoring.from_red_edges(order, [tuple(sorted(e)) for e in red])
            color = Color.RED if rng.random() < 0.5 else Color.BLUE
            edges = red if color is Color.RED else bf.complement(order, red)
            verts = range(order)
            nu = bf.max_matching_size(verts, edges)
            pk = bf.max_k4_packing_size(verts, edges)
            tri = bf.max_triangle_packing_size(verts, edges)
            if len(max_matching(c, color)) != nu:
                mismatches.append(("matching", order, sorted(map(sorted, red))))
            if len(max_k4_packing(c, color)) != pk:
                mismatches.append(("k4", order, sorted(map(sorted, red))))
            for m in (tri, tri + 1):
                present = find_triangle_matching(c, color, None, m) is not None
                if present != (m <= tri):
                    mismatches.append(("triangles", order, m, sorted(map(sorted, red))))
            checked += 1
    ok = not mismatches
    report(8, "kernels vs brute force", ok, f"{checked} colorings on orders 1..12, mismatches={len(mismatches)}")
    assert not mismatches, mismatches[:3]
