"""Red/blue colorings of complete graphs, stored as red-adjacency bitsets.

Vertices are 0-indexed inside the library.  Everything that leaves the
library (files, certificates, CLI output) uses 1-indexed vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Color(str, Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def letter(self) -> str:
        return self.value[0]


class ColoringFormatError(ValueError):
    """Malformed coloring file.  ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}" if line else reason)
        self.line = line
        self.reason = reason


def bits(x: int) -> Iterator[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class EdgeColoring:
    """Immutable 2-coloring of K_N.  Blue adjacency is derived from red."""

    __slots__ = ("order", "_red", "_blue", "full")

    def __init__(self, order: int, red: Sequence[int]) -> None:
        if order < 1:
            raise ValueError("order must be positive")
        if len(red) != order:
            raise ValueError("need one red-neighbor bitset per vertex")
        full = (1 << order) - 1
        red = tuple(red)
        for v, nb in enumerate(red):
            if nb >> v & 1 or nb & ~full:
                raise ValueError(f"bad red neighborhood for vertex {v}")
            for w in bits(nb):
                if not red[w] >> v & 1:
                    raise ValueError(f"red adjacency not symmetric at {v},{w}")
        self.order = order
        self.full = full
        self._red = red
        self._blue: tuple[int, ...] | None = None

    # -- construction helpers ------------------------------------------------
    @classmethod
    def from_red_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "EdgeColoring":
        red = [0] * order
        for u, v in edges:
            red[u] |= 1 << v
            red[v] |= 1 << u
        return cls(order, red)

    @classmethod
    def monochromatic(cls, order: int, color: Color) -> "EdgeColoring":
        full = (1 << order) - 1
        if color is Color.RED:
            return cls(order, [full ^ (1 << v) for v in range(order)])
        return cls(order, [0] * order)

    # -- adjacency -----------------------------------------------------------
    @property
    def red(self) -> tuple[int, ...]:
        return self._red

    @property
    def blue(self) -> tuple[int, ...]:
        if self._blue is None:
            full = self.full
            self._blue = tuple(full ^ nb ^ (1 << v) for v, nb in enumerate(self._red))
        return self._blue

    def adjacency(self, color: Color) -> tuple[int, ...]:
        return self._red if color is Color.RED else self.blue

    def color_of(self, u: int, v: int) -> Color:
        if u == v:
            raise ValueError("no loop edges")
        return Color.RED if self._red[u] >> v & 1 else Color.BLUE

    def swapped(self) -> "EdgeColoring":
        """Same graph with red and blue exchanged."""
        return EdgeColoring(self.order, self.blue)

    def is_clique(self, vertices: Iterable[int], color: Color) -> bool:
        adj = self.adjacency(color)
        vs = list(vertices)
        m = mask_of(vs)
        return all((m & ~(1 << v)) & ~adj[v] == 0 for v in vs)

    def induced_connected(self, vertices: Iterable[int], color: Color) -> bool:
        m = mask_of(vertices)
        if not m:
            return False
        return _reach(self.adjacency(color), m & -m, m) == m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.order == other.order and self._red == other._red

    def __hash__(self) -> int:
        return hash((self.order, self._red))

    def __repr__(self) -> str:
        nred = sum(nb.bit_count() for nb in self._red) // 2
        return f"EdgeColoring(order={self.order}, red_edges={nred})"


def _reach(adj: Sequence[int], start: int, within: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


@dataclass(frozen=True)
class ComponentDecomposition:
    color: Color
    components: tuple[frozenset[int], ...]

    @property
    def masks(self) -> list[int]:
        return [mask_of(c) for c in self.components]

    def index_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}


def component_masks(adj: Sequence[int], within: int) -> list[int]:
    """Connected components of ``adj`` restricted to ``within``, ordered by minimum vertex."""
    out = []
    rest = within
    while rest:
        comp = _reach(adj, rest & -rest, within)
        out.append(comp)
        rest &= ~comp
    return out


def components(c: EdgeColoring, color: Color) -> ComponentDecomposition:
    masks = component_masks(c.adjacency(color), c.full)
    return ComponentDecomposition(color, tuple(frozenset(bits(m)) for m in masks))


def is_connected(c: EdgeColoring, color: Color) -> bool:
    return _reach(c.adjacency(color), 1, c.full) == c.full


def connected_color(c: EdgeColoring) -> tuple[Color, EdgeColoring]:
    """Pick a connected color class, red on ties.

    Returns the original color together with a view in which that color is
    red, so callers can always reason about "red" being connected.
    """
    if is_connected(c, Color.RED):
        return Color.RED, c
    # a graph and its complement cannot both be disconnected
    assert is_connected(c, Color.BLUE), "both color classes disconnected"
    return Color.BLUE, c.swapped()


# -- file format -----------------------------------------------------------------

def _pairs(order: int) -> Iterator[tuple[int, int]]:
    for u in range(order):
        for v in range(u + 1, order):
            yield u, v


def serialize(c: EdgeColoring, compact: bool = False) -> str:
    if compact:
        return f"p eccx {c.order}\nx {_to_hex(c)}\n"
    red = c.red
    lines = [f"p ecc {c.order}"]
    for u, v in _pairs(c.order):
        lines.append(f"e {u + 1} {v + 1} {'r' if red[u] >> v & 1 else 'b'}")
    return "\n".join(lines) + "\n"


def _to_hex(c: EdgeColoring) -> str:
    npairs = c.order * (c.order - 1) // 2
    value = 0
    red = c.red
    for u, v in _pairs(c.order):
        value = value << 1 | (red[u] >> v & 1)
    ndigits = (npairs + 3) // 4
    value <<= ndigits * 4 - npairs  # trailing zero padding
    return format(value, f"0{ndigits}x") if ndigits else ""


def parse_coloring(data: str | bytes) -> EdgeColoring:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ColoringFormatError(1, "malformed header: empty input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "p" or head[1] not in ("ecc", "eccx"):
        raise ColoringFormatError(1, "malformed header: expected 'p ecc <N>' or 'p eccx <N>'")
    try:
        order = int(head[2])
    except ValueError:
        raise ColoringFormatError(1, "malformed header: vertex count is not an integer") from None
    if order < 1:
        raise ColoringFormatError(1, "malformed header: vertex count must be positive")
    body = [(i + 2, ln) for i, ln in enumerate(lines[1:]) if not ln.startswith("#")]
    if head[1] == "eccx":
        return _parse_hex(order, body)
    red = [0] * order
    seen = set()
    for lineno, ln in body:
        tok = ln.split()
        if len(tok) != 4 or tok[0] != "e" or tok[3] not in ("r", "b"):
            raise ColoringFormatError(lineno, "malformed edge line: expected 'e <u> <v> <r|b>'")
        try:
            u, v = int(tok[1]), int(tok[2])
        except ValueError:
            raise ColoringFormatError(lineno, "malformed edge line: non-integer vertex") from None
        if not (1 <= u < v <= order):
            raise ColoringFormatError(lineno, f"out-of-range vertex pair ({u},{v})")
        if (u, v) in seen:
            raise ColoringFormatError(lineno, f"duplicate edge ({u},{v})")
        seen.add((u, v))
        if tok[3] == "r":
            red[u - 1] |= 1 << (v - 1)
            red[v - 1] |= 1 << (u - 1)
    expected = order * (order - 1) // 2
    if len(seen) != expected:
        for u, v in _pairs(order):
            if (u + 1, v + 1) not in seen:
                last = len(lines)
                raise ColoringFormatError(last, f"missing edge ({u + 1},{v + 1})")
    return EdgeColoring(order, red)


def _parse_hex(order: int, body: list[tuple[int, str]]) -> EdgeColoring:
    if len(body) != 1:
        lineno = body[1][0] if body else 2
        raise ColoringFormatError(lineno, "compact format needs exactly one 'x <hex>' line")
    lineno, ln = body[0]
    tok = ln.split()
    npairs = order * (order - 1) // 2
    ndigits = (npairs + 3) // 4
    if not tok or tok[0] != "x" or len(tok) > 2:
        raise ColoringFormatError(lineno, "malformed hex line")
    digits = tok[1] if len(tok) == 2 else ""
    if len(digits) != ndigits:
        raise ColoringFormatError(lineno, f"expected {ndigits} hex digits, got {len(digits)}")
    try:
        value = int(digits, 16) if digits else 0
    except ValueError:
        raise ColoringFormatError(lineno, "invalid hex digits") from None
    pad = ndigits * 4 - npairs
    if value & ((1 << pad) - 1):
        raise ColoringFormatError(lineno, "nonzero padding bits")
    value >>= pad
    red = [0] * order
    pos = npairs - 1
    for u, v in _pairs(order):
        if value >> pos & 1:
            red[u] |= 1 << v
            red[v] |= 1 << u
        pos -= 1
    return EdgeColoring(order, red)
