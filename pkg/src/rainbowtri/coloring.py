"""Total arc-colorings and the color statistics built on them."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

from .digraph import (
    Digraph,
    DigraphError,
    _check_order,
    delete_vertex,
    complete_digraph,
    relabel,
)


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class ColoredDigraph:
    """A digraph plus one non-negative color per arc.

    ``colors[k]`` is the color of ``digraph.arcs()[k]``.
    """

    digraph: Digraph
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.digraph.arc_count:
            raise ColoringError(
                f"{len(self.colors)} colors for {self.digraph.arc_count} arcs"
            )
        for c in self.colors:
            if not isinstance(c, int) or c < 0:
                raise ColoringError(f"color {c!r} is not a non-negative integer")

    @classmethod
    def from_mapping(cls, digraph: Digraph, mapping: Mapping[tuple[int, int], int]) -> "ColoredDigraph":
        arcs = digraph.arcs()
        if set(mapping) != set(arcs):
            extra = set(mapping) - set(arcs)
            if extra:
                raise ColoringError(f"colors given for non-arcs {sorted(extra)}")
            raise ColoringError(f"uncolored arcs {sorted(set(arcs) - set(mapping))}")
        return cls(digraph, tuple(int(mapping[a]) for a in arcs))

    @classmethod
    def from_arc_colors(cls, n: int, arc_colors: Mapping[tuple[int, int], int]) -> "ColoredDigraph":
        return cls.from_mapping(Digraph.from_arcs(n, arc_colors), arc_colors)

    @property
    def n(self) -> int:
        return self.digraph.n

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.digraph.arcs(), self.colors))

    def color(self, u: int, v: int) -> int:
        arcs = self.digraph.arcs()
        try:
            return self.colors[arcs.index((u, v))]
        except ValueError:
            raise DigraphError(f"no arc ({u}, {v})") from None

    def color_set(self) -> set[int]:
        return set(self.colors)


@dataclass(frozen=True)
class ColorProfile:
    cn_in: frozenset[int]
    cn_out: frozenset[int]
    saturated: frozenset[int]

    @property
    def cn(self) -> frozenset[int]:
        return self.cn_in | self.cn_out

    @property
    def d_in_c(self) -> int:
        return len(self.cn_in)

    @property
    def d_out_c(self) -> int:
        return len(self.cn_out)

    @property
    def d_s(self) -> int:
        return len(self.saturated)


def color_number(D: ColoredDigraph) -> int:
    return len(set(D.colors))


def color_classes(D: ColoredDigraph) -> dict[int, list[tuple[int, int]]]:
    classes: dict[int, list[tuple[int, int]]] = {}
    for arc, c in zip(D.digraph.arcs(), D.colors):
        classes.setdefault(c, []).append(arc)
    return classes


def saturators(arcs: Sequence[tuple[int, int]]) -> set[int]:
    """Vertices incident to every arc in ``arcs``."""
    common = set(arcs[0])
    for a in arcs[1:]:
        common &= set(a)
    return common


def saturated_colors(D: ColoredDigraph, v: int) -> set[int]:
    D.digraph._check_vertex(v)
    return {c for c, arcs in color_classes(D).items() if all(v in a for a in arcs)}


def color_profile(D: ColoredDigraph, v: int) -> ColorProfile:
    D.digraph._check_vertex(v)
    cin, cout = set(), set()
    for (x, y), c in zip(D.digraph.arcs(), D.colors):
        if y == v:
            cin.add(c)
        if x == v:
            cout.add(c)
    return ColorProfile(frozenset(cin), frozenset(cout), frozenset(saturated_colors(D, v)))


def saturation_degrees(D: ColoredDigraph) -> list[int]:
    """``d^s(v)`` for every vertex, computed from one pass over color classes."""
    ds = [0] * D.n
    for arcs in color_classes(D).values():
        for v in saturators(arcs):
            ds[v] += 1
    return ds


def monochromatic_subdigraph(D: ColoredDigraph, i: int) -> Digraph:
    arcs = [a for a, c in zip(D.digraph.arcs(), D.colors) if c == i]
    if not arcs:
        raise ColoringError(f"color {i} is not used")
    return Digraph.from_arcs(D.n, arcs)


def canonical_colors(colors: Sequence[int]) -> tuple[int, ...]:
    """Relabel to first-appearance order (a restricted-growth string)."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen)) for c in colors)


def canonical_coloring(D: ColoredDigraph) -> ColoredDigraph:
    return ColoredDigraph(D.digraph, canonical_colors(D.colors))


def relabel_colored(D: ColoredDigraph, perm: Sequence[int]) -> ColoredDigraph:
    """Move vertex ``v`` to ``perm[v]``, keeping each arc's color."""
    mapping = {(perm[u], perm[v]): c for (u, v), c in D.as_dict().items()}
    return ColoredDigraph.from_mapping(relabel(D.digraph, perm), mapping)


def recolor(D: ColoredDigraph, color_map: Mapping[int, int]) -> ColoredDigraph:
    return ColoredDigraph(D.digraph, tuple(color_map[c] for c in D.colors))


def induced_colored(D: ColoredDigraph, S) -> ColoredDigraph:
    keep = sorted(set(S))
    new_id = {v: i for i, v in enumerate(keep)}
    mapping = {
        (new_id[u], new_id[v]): c
        for (u, v), c in D.as_dict().items()
        if u in new_id and v in new_id
    }
    return ColoredDigraph.from_arc_colors(len(keep), mapping)


def delete_vertex_colored(D: ColoredDigraph, v: int) -> ColoredDigraph:
    D.digraph._check_vertex(v)
    sub = delete_vertex(D.digraph, v)
    shift = lambda x: x - (x > v)  # noqa: E731
    mapping = {(shift(a), shift(b)): c for (a, b), c in D.as_dict().items() if v not in (a, b)}
    return ColoredDigraph.from_mapping(sub, mapping)


def delete_arc_colored(D: ColoredDigraph, u: int, v: int) -> ColoredDigraph:
    mapping = D.as_dict()
    if (u, v) not in mapping:
        raise DigraphError(f"no arc ({u}, {v})")
    del mapping[(u, v)]
    return ColoredDigraph.from_arc_colors(D.n, mapping)


def colored_canonical_key(D: ColoredDigraph) -> tuple[bytes, tuple[int, ...]]:
    """Colored-isomorphism key: minimum over relabelings of (adjacency code, color string).

    Brute force over ``n!`` permutations; use only on small instances.
    """
    _check_order(D.n)
    best = None
    for p in permutations(range(D.n)):
        img = relabel_colored(D, p)
        code = sum(1 << (D.n * D.n - 1 - (u * D.n + v)) for u, v in img.digraph.arcs())
        cand = (code, canonical_colors(img.colors))
        if best is None or cand < best:
            best = cand
    code, colors = best
    return bytes([D.n]) + code.to_bytes(max(1, (D.n * D.n + 7) // 8), "big"), colors


def random_digraph(n: int, p: float = 0.5, seed: int = 0) -> Digraph:
    rng = random.Random(seed)
    return Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def random_colored_digraph(
    n: int, p: float = 0.5, num_colors: int = 4, seed: int = 0, complete: bool = False
) -> ColoredDigraph:
    rng = random.Random(seed)
    D = complete_digraph(n) if complete else random_digraph(n, p, rng.randrange(1 << 30))
    return ColoredDigraph(D, tuple(rng.randrange(num_colors) for _ in range(D.arc_count)))
