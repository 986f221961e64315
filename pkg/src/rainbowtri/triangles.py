"""Directed triangles and rainbow-triangle detection."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .coloring import ColoredDigraph
from .digraph import Digraph, DigraphError, _bits


@dataclass(frozen=True, order=True)
class Triangle:
    """Directed 3-cycle ``u -> v -> w -> u`` stored with ``u`` the least vertex."""

    u: int
    v: int
    w: int
    colors: Optional[tuple[int, int, int]] = None

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.w)

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return ((self.u, self.v), (self.v, self.w), (self.w, self.u))

    def is_rainbow(self) -> bool:
        return self.colors is not None and len(set(self.colors)) == 3


def least_rotation(u: int, v: int, w: int) -> tuple[int, int, int]:
    m = min(u, v, w)
    if m == u:
        return (u, v, w)
    if m == v:
        return (v, w, u)
    return (w, u, v)


def directed_triangles(D: Digraph) -> list[Triangle]:
    """Every directed 3-cycle once, sorted by ``(u, v, w)``."""
    out = []
    n = D.n
    for u in range(n):
        higher = ~((1 << (u + 1)) - 1)
        for v in _bits(D.out_masks[u] & higher):
            # w -> u and v -> w, with w > u so u is the least vertex
            for w in _bits(D.out_masks[v] & D.in_masks[u] & higher):
                out.append(Triangle(u, v, w))
    out.sort()
    return out


def _colored(D: ColoredDigraph, t: Triangle, colors: Mapping[tuple[int, int], int]) -> Triangle:
    return Triangle(t.u, t.v, t.w, tuple(colors[a] for a in t.arcs))


def rainbow_triangles(D: ColoredDigraph, through: Optional[int] = None) -> list[Triangle]:
    """All rainbow triangles, optionally only those containing vertex ``through``."""
    colors = D.as_dict()
    out = []
    for t in directed_triangles(D.digraph):
        if through is not None and through not in t.vertices:
            continue
        ct = _colored(D, t, colors)
        if ct.is_rainbow():
            out.append(ct)
    return out


def count_rainbow_triangles(D: ColoredDigraph) -> int:
    return len(rainbow_triangles(D))


def find_rainbow_triangle(D: ColoredDigraph) -> Optional[Triangle]:
    """First rainbow triangle in canonical triangle order, or ``None``."""
    colors = D.as_dict()
    for t in directed_triangles(D.digraph):
        a, b, c = colors[(t.u, t.v)], colors[(t.v, t.w)], colors[(t.w, t.u)]
        if a != b and b != c and a != c:
            return Triangle(t.u, t.v, t.w, (a, b, c))
    return None


def is_rainbow_free(D: ColoredDigraph) -> bool:
    return find_rainbow_triangle(D) is None


def find_rainbow_triangle_incremental(
    D: Digraph, partial: Mapping[tuple[int, int], int], new_arc: tuple[int, int]
) -> Optional[Triangle]:
    """Rainbow triangle through ``new_arc`` among fully colored triangles.

    ``partial`` maps the already colored arcs (``new_arc`` included) to colors;
    triangles with an uncolored arc are skipped.
    """
    x, y = new_arc
    if not (0 <= x < D.n and 0 <= y < D.n) or not D.has_arc(x, y):
        raise DigraphError(f"no arc {new_arc}")
    if new_arc not in partial:
        return None
    found = []
    # x -> y -> z -> x
    for z in _bits(D.out_masks[y] & D.in_masks[x]):
        cols = (partial.get((x, y)), partial.get((y, z)), partial.get((z, x)))
        if None in cols or len(set(cols)) < 3:
            continue
        u, v, w = least_rotation(x, y, z)
        found.append(Triangle(u, v, w, tuple(partial[a] for a in ((u, v), (v, w), (w, u)))))
    return min(found) if found else None


def max_arcs_triangle_free(n: int) -> int:
    """Largest arc count of an order-``n`` digraph with no directed triangle."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return n * n // 2
