"""Explicit rainbow-free colorings and the closed-form thresholds they certify.

Every generator returns colors relabeled to first-appearance order along the
canonical arc order, so outputs are byte-stable.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional

from .coloring import ColoredDigraph, canonical_coloring
from .digraph import Digraph, complete_digraph


class Family(str, Enum):
    G3 = "G3"
    G4 = "G4"
    G5_TYPE_I = "G5-TypeI"
    G5_TYPE_II = "G5-TypeII"
    G5_TYPE_III = "G5-TypeIII"
    GN_BIPARTITE = "Gn-Bipartite"
    BIPARTITE_RAINBOW_COMPLETE = "BipartiteRainbowComplete"
    TOURNAMENT_SHARP = "TournamentSharp"
    COMPLETE_BIPARTITE_RAINBOW = "CompleteBipartiteRainbow"

    def __str__(self) -> str:
        return self.value


A_TO_B = "AtoB"
B_TO_A = "BtoA"
ORIENTATIONS = (A_TO_B, B_TO_A)


class ConstructionError(ValueError):
    pass


def f_threshold(n: int) -> int:
    """Least color count that forces a rainbow triangle in every coloring of the complete digraph."""
    if n < 3:
        raise ConstructionError(f"threshold defined for n >= 3, got {n}")
    return n * n // 4 + (3 if n <= 4 else 2)


def _finish(n: int, arc_colors: dict[tuple[int, int], int]) -> ColoredDigraph:
    return canonical_coloring(ColoredDigraph.from_arc_colors(n, arc_colors))


def _check_orientation(orientation: str) -> None:
    if orientation not in ORIENTATIONS:
        raise ConstructionError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")


def gen_bipartite_rainbow_complete(n: int) -> ColoredDigraph:
    """Complete digraph; arcs ``v_{2i-1} -> v_{2j}`` rainbow, everything else one extra color.

    With 1-based ``v_k`` at id ``k - 1`` the rainbow arcs run from even ids to odd
    ids.  Valid for ``n >= 2``; the lower-bound argument only needs ``n >= 5``.
    """
    if n < 2:
        raise ConstructionError(f"need n >= 2, got {n}")
    colors = {}
    fresh = 1
    for u, v in complete_digraph(n).arcs():
        if u % 2 == 0 and v % 2 == 1:
            colors[(u, v)] = fresh
            fresh += 1
        else:
            colors[(u, v)] = 0
    return _finish(n, colors)


def gen_g3() -> ColoredDigraph:
    # u, v, w = 0, 1, 2: uv, vw share a color; wu alone; vu, uw share; wv alone
    return _finish(3, {(0, 1): 1, (1, 2): 1, (2, 0): 2, (1, 0): 3, (0, 2): 3, (2, 1): 4})


def _g4_colors(order: tuple[int, int, int, int]) -> dict[tuple[int, int], int]:
    v1, v2, v3, v4 = order
    a, b, c, d, e, f = range(6)
    colors = {}
    for x, y in ((v1, v2), (v2, v3), (v3, v4), (v4, v1)):
        colors[(x, y)] = a
    for x, y in ((v1, v4), (v4, v3), (v3, v2), (v2, v1)):
        colors[(x, y)] = b
    colors[(v1, v3)] = c
    colors[(v3, v1)] = d
    colors[(v2, v4)] = e
    colors[(v4, v2)] = f
    return colors


def gen_g4() -> ColoredDigraph:
    return _finish(4, _g4_colors((0, 1, 2, 3)))


def _bipartite_template(n: int, orientation: str) -> dict[tuple[int, int], int]:
    _check_orientation(orientation)
    half = n // 2
    colors = {}
    fresh = 1
    for u, v in complete_digraph(n).arcs():
        forward = u < half <= v if orientation == A_TO_B else v < half <= u
        if forward:
            colors[(u, v)] = fresh
            fresh += 1
        else:
            colors[(u, v)] = 0
    return colors


def gen_g5(kind: str, orientation: Optional[str] = None) -> ColoredDigraph:
    """Order-5 extremal colorings of the three kinds ``"I"``, ``"II"``, ``"III"``.

    Kind I puts the special vertex at id 4 over a copy of ``gen_g4`` on ids
    0..3.  Kinds II and III use ``{0, 1}`` as the two-vertex side.
    """
    if kind == "I":
        if orientation is not None:
            raise ConstructionError("orientation applies to kind II only")
        colors = _g4_colors((0, 1, 2, 3))
        for u in range(4):
            colors[(u, 4)] = 6
            colors[(4, u)] = 6
        return _finish(5, colors)
    if kind == "II":
        return _finish(5, _bipartite_template(5, orientation or A_TO_B))
    if kind == "III":
        if orientation is not None:
            raise ConstructionError("orientation applies to kind II only")
        a, b, g = 0, 1, 6
        colors = {(0, 1): a, (1, 0): b}
        # G3 on {2, 3, 4} with colors c..f
        g3 = {(0, 1): 2, (1, 2): 2, (2, 0): 3, (1, 0): 4, (0, 2): 4, (2, 1): 5}
        for (x, y), c in g3.items():
            colors[(x + 2, y + 2)] = c
        for x in (0, 1):
            for y in (2, 3, 4):
                colors[(x, y)] = g
                colors[(y, x)] = g
        return _finish(5, colors)
    raise ConstructionError(f"unknown kind {kind!r}; expected I, II or III")


def gen_gn_bipartite(n: int, orientation: str = A_TO_B) -> ColoredDigraph:
    """Parts ``{0..n//2-1}`` and the rest; one-directional cross arcs rainbow, rest one color."""
    if n < 6:
        raise ConstructionError(f"need n >= 6, got {n}")
    return _finish(n, _bipartite_template(n, orientation))


def tournament_sharp_digraph(n: int) -> Digraph:
    arcs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) != (0, n - 1)]
    arcs.append((n - 1, 0))
    return Digraph.from_arcs(n, arcs)


def gen_tournament_sharp(n: int) -> ColoredDigraph:
    """Strong tournament, one color on the arcs at vertex 0, all other arcs distinct."""
    if n < 3:
        raise ConstructionError(f"need n >= 3, got {n}")
    D = tournament_sharp_digraph(n)
    colors = {}
    fresh = 1
    for u, v in D.arcs():
        if 0 in (u, v):
            colors[(u, v)] = 0
        else:
            colors[(u, v)] = fresh
            fresh += 1
    return _finish(n, colors)


def tournament_sharp_colors(n: int) -> int:
    return n * (n - 1) // 2 - n + 2


def gen_complete_bipartite_rainbow(n: int) -> ColoredDigraph:
    if n < 2:
        raise ConstructionError(f"need n >= 2, got {n}")
    half = n // 2
    arcs = [(u, v) for u in range(n) for v in range(n) if (u < half) != (v < half)]
    return ColoredDigraph.from_arc_colors(n, {a: k for k, a in enumerate(arcs)})


def extremal_generator(n: int) -> ColoredDigraph:
    """One rainbow-free coloring of the order-``n`` complete digraph with ``f(n) - 1`` colors."""
    if n == 3:
        return gen_g3()
    if n == 4:
        return gen_g4()
    if n == 5:
        return gen_g5("II", A_TO_B)
    return gen_gn_bipartite(n)


def generate(
    family: Family | str,
    n: Optional[int] = None,
    kind: Optional[str] = None,
    orientation: Optional[str] = None,
) -> ColoredDigraph:
    family = Family(family)
    if family is Family.G3:
        return gen_g3()
    if family is Family.G4:
        return gen_g4()
    if family is Family.G5_TYPE_I:
        return gen_g5("I")
    if family is Family.G5_TYPE_II:
        return gen_g5("II", orientation or A_TO_B)
    if family is Family.G5_TYPE_III:
        return gen_g5("III")
    if n is None:
        raise ConstructionError(f"family {family} needs an order n")
    if family is Family.GN_BIPARTITE:
        return gen_gn_bipartite(n, orientation or A_TO_B)
    if family is Family.BIPARTITE_RAINBOW_COMPLETE:
        return gen_bipartite_rainbow_complete(n)
    if family is Family.TOURNAMENT_SHARP:
        return gen_tournament_sharp(n)
    return gen_complete_bipartite_rainbow(n)
