"""Batch self-checks shared by the CLI and the acceptance tests."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .combine import PartitionInput, combine, min_total, validate_grouping
from .oracles import SmallRamseyReport, verify_f_lemma_instance, verify_small_ramsey_match_quads
from .rng import derive_seed, random_coloring


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" skipped={self.skipped}" if self.skipped else ""
        return f"{self.name}: {status} checked={self.checked}{extra} failures={len(self.failures)}"


def descending_sequences(max_part: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """All non-increasing sequences with parts in [1, max_part] and sum in [lo, hi]."""

    def rec(prefix: tuple[int, ...], total: int, top: int) -> Iterator[tuple[int, ...]]:
        if prefix and total >= lo:
            yield prefix
        for x in range(min(top, hi - total), 0, -1):
            yield from rec(prefix + (x,), total + x, x)

    yield from rec((), 0, max_part)


def _check_one(rep: CheckReport, n: int, parts: tuple[int, ...]) -> None:
    inp = PartitionInput(n, parts)
    try:
        g = combine(inp)
    except Exception as exc:  # any failure is a finding
        rep.failures.append(f"n={n} parts={parts}: {exc}")
        return
    if not validate_grouping(inp, g):
        rep.failures.append(f"n={n} parts={parts}: invalid {g}")
    rep.checked += 1


def lemma2_exhaustive(n_max: int = 12, random_samples: int = 10**5, seed: int = 0) -> CheckReport:
    rep = CheckReport("lemma2")
    for n in range(2, n_max + 1):
        lo = max(2, min_total(n))
        for parts in descending_sequences(n - 1, lo, 3 * n + 4):
            _check_one(rep, n, parts)
    rng = random.Random(seed)
    for _ in range(random_samples):
        n = rng.randint(2, n_max)
        lo = max(2, min_total(n))
        target = rng.randint(lo, 6 * n)
        parts = []
        left = target
        while left:
            x = rng.randint(1, min(n - 1, left))
            parts.append(x)
            left -= x
        _check_one(rep, n, tuple(sorted(parts, reverse=True)))
    return rep


F_LEMMA_DENSITIES = (0.2, 0.5, 0.8)


def f_lemma_random(count: int = 10**4, seed: int = 1) -> CheckReport:
    rep = CheckReport("f-lemma")
    for i in range(count):
        order = 8 + i % 9
        p = F_LEMMA_DENSITIES[(i // 9) % 3]
        s = derive_seed(seed, i)
        r = verify_f_lemma_instance(random_coloring(order, p, s))
        if not r.applicable:
            rep.skipped += 1
            continue
        rep.checked += 1
        if not r.passed:
            rep.failures.append(
                f"order={order} p={p} seed={s}: k*={r.blue_packing} u*={r.uncovered} "
                f"f={r.bound} matching={r.red_matching}"
            )
    return rep


def ramsey_small() -> tuple[CheckReport, SmallRamseyReport]:
    r = verify_small_ramsey_match_quads()
    rep = CheckReport("ramsey-small", checked=r.distinct + 1)
    if not r.witness_passed:
        rep.failures.append(
            f"K8 witness: red matching {r.witness_red_matching}, blue packing {r.witness_blue_packing}"
        )
    rep.failures.extend(f"red edge mask {m:#x} leaves no blue 2K4" for m in r.upper_failures)
    return rep, r
