"""Grouping blue-component K4 counts into three or two heavy parts.

Given counts a_1 >= ... >= a_t (each at most n-1) whose total k is at
least 2n-3+floor((n-1)/4), the counts can be grouped into three parts of
at least ceil(n/4) each, or else into two parts of at least n-2 each.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class GroupingKind(str, Enum):
    THREE = "Three"
    TWO = "Two"


class RejectedInput(ValueError):
    pass


def quarter(n: int) -> int:
    """ceil(n/4)."""
    return -(-n // 4)


def min_total(n: int) -> int:
    return 2 * n - 3 + (n - 1) // 4


@dataclass(frozen=True)
class PartitionInput:
    n: int
    parts: tuple[int, ...]

    def __init__(self, n: int, parts: Sequence[int]) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def check(self) -> None:
        n, a = self.n, self.parts
        if n < 2:
            raise RejectedInput(f"n must be at least 2, got {n}")
        if not a:
            raise RejectedInput("no parts")
        if any(x < 1 for x in a):
            raise RejectedInput("parts must be positive")
        if any(x < y for x, y in zip(a, a[1:])):
            raise RejectedInput("parts must be in descending order")
        if a[0] > n - 1:
            raise RejectedInput(f"part {a[0]} exceeds n-1 = {n - 1}")
        k = sum(a)
        if k < max(2, min_total(n)):
            raise RejectedInput(f"total {k} below max(2, 2n-3+floor((n-1)/4)) = {max(2, min_total(n))}")


@dataclass(frozen=True)
class PartitionGrouping:
    kind: GroupingKind
    groups: tuple[tuple[int, ...], ...]  # 1-based indices into the parts
    group_sums: tuple[int, ...]
    case: str

    def __str__(self) -> str:
        gs = " ".join("{" + ",".join(map(str, g)) + "}" for g in self.groups)
        return f"kind={self.kind.value} case={self.case} groups={gs} sums={','.join(map(str, self.group_sums))}"


def _balanced(indices: Sequence[int], a: Sequence[int], bins: int) -> list[list[int]]:
    """Largest-first greedy into the currently lightest bin."""
    out: list[list[int]] = [[] for _ in range(bins)]
    sums = [0] * bins
    for i in sorted(indices, key=lambda i: (-a[i - 1], i)):
        j = min(range(bins), key=lambda b: (sums[b], b))
        out[j].append(i)
        sums[j] += a[i - 1]
    return out


def combine(inp: PartitionInput) -> PartitionGrouping:
    inp.check()
    n, a = inp.n, inp.parts
    t = len(a)
    c = quarter(n)
    at = lambda i: a[i - 1] if i <= t else 0  # noqa: E731
    tail = lambda i: list(range(i, t + 1))  # noqa: E731

    if at(1) <= n - 3:
        if at(1) >= c and at(2) >= c:
            assert t >= 3, "case 1.1 with t < 3"
            groups, case = [[1], [2], tail(3)], "1.1"
        elif at(1) >= c:
            groups, case = [[1], *_balanced(tail(2), a, 2)], "1.2"
        else:
            groups, case = _balanced(tail(1), a, 3), "1.3"
        kind = GroupingKind.THREE
    else:
        if at(2) >= c and at(3) >= c:
            groups, case, kind = [[1], [2], tail(3)], "2.1", GroupingKind.THREE
        elif at(2) >= c:
            if sum(a[2:]) >= c:
                groups, case, kind = [[1], [2], tail(3)], "2.2", GroupingKind.THREE
            else:
                assert at(2) >= n - 2, "case 2.2 two-part branch with a_2 < n-2"
                groups, case, kind = [[1], tail(2)], "2.2", GroupingKind.TWO
        else:
            groups, case, kind = [[1], *_balanced(tail(2), a, 2)], "2.3", GroupingKind.THREE

    groups = [sorted(g) for g in groups]
    g = PartitionGrouping(
        kind,
        tuple(tuple(x) for x in groups),
        tuple(sum(a[i - 1] for i in x) for x in groups),
        case,
    )
    if not validate_grouping(inp, g):
        raise AssertionError(f"invalid grouping produced for n={n}, parts={a}: {g}")
    return g


def validate_grouping(inp: PartitionInput, g: PartitionGrouping) -> bool:
    t = len(inp.parts)
    expected = 3 if g.kind is GroupingKind.THREE else 2
    if len(g.groups) != expected or any(not grp for grp in g.groups):
        return False
    flat = [i for grp in g.groups for i in grp]
    if sorted(flat) != list(range(1, t + 1)):
        return False
    sums = [sum(inp.parts[i - 1] for i in grp) for grp in g.groups]
    if tuple(sums) != tuple(g.group_sums):
        return False
    need = quarter(inp.n) if g.kind is GroupingKind.THREE else inp.n - 2
    return all(s >= need for s in sums)
