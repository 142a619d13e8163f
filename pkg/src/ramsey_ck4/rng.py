"""SplitMix64 and the random-coloring generator built on it.

The generator is fixed so that any implementation can reproduce the same
instances from the same seeds:

* ``next()`` advances ``state += 0x9E3779B97F4A7C15`` (mod 2**64) and
  returns ``mix64(state)``.
* An edge is red iff ``(next() >> 11) < floor(p_red * 2**53)``; edges are
  drawn in lexicographic pair order (1,2), (1,3), ..., (N-1,N).
* The seed for trial ``i`` under master seed ``s`` is
  ``mix64(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``.
"""
from __future__ import annotations

from .coloring import EdgeColoring

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)


def derive_seed(seed: int, index: int) -> int:
    return mix64((seed + (index + 1) * GAMMA) & MASK64)


def red_threshold(p_red: float) -> int:
    if not 0.0 <= p_red <= 1.0:
        raise ValueError(f"red probability must lie in [0, 1], got {p_red}")
    return int(p_red * (1 << 53))


def random_coloring(order: int, p_red: float, seed: int) -> EdgeColoring:
    rng = SplitMix64(seed)
    cut = red_threshold(p_red)
    red = [0] * order
    for u in range(order):
        row = 0
        for v in range(u + 1, order):
            if (rng.next() >> 11) < cut:
                row |= 1 << v
                red[v] |= 1 << u
        red[u] |= row
    return EdgeColoring(order, red)
