"""Recognize extremal rainbow-free colorings of complete digraphs.

An extremal coloring is a rainbow-free coloring of the order-``n`` complete
digraph using ``f(n) - 1`` colors.  Matching is done by explicit search over
small symmetry groups: vertex orders for ``n <= 5`` and vertex bipartitions
above that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from typing import Any, Optional

from .coloring import (
    ColoredDigraph,
    canonical_coloring,
    color_classes,
    color_number,
    induced_colored,
    saturators,
)
from .constructions import A_TO_B, B_TO_A, Family, f_threshold, _g4_colors
from .digraph import complete_digraph
from .triangles import find_rainbow_triangle


class Reason(str, Enum):
    NOT_COMPLETE = "not-complete"
    WRONG_COLOR_COUNT = "wrong-color-count"
    HAS_RAINBOW_TRIANGLE = "has-rainbow-triangle"
    NO_TEMPLATE_MATCH = "no-template-match"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ExtremalClass:
    family: Optional[Family]
    orientation: Optional[str] = None
    reason: Optional[Reason] = None
    witness: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def is_extremal(self) -> bool:
        return self.family is not None

    @property
    def verdict(self) -> str:
        if self.family is None:
            return f"NotExtremal({self.reason})"
        if self.orientation is not None:
            return f"{self.family}({self.orientation})"
        return str(self.family)


def _not(reason: Reason) -> ExtremalClass:
    return ExtremalClass(None, reason=reason)


def _match_g3(D: ColoredDigraph) -> Optional[dict]:
    col = D.as_dict()
    singles = []
    seen: set[int] = set()
    for tri in (((0, 1), (1, 2), (2, 0)), ((0, 2), (2, 1), (1, 0))):
        cs = [col[a] for a in tri]
        if len(set(cs)) != 2:
            return None
        odd = next(a for a, c in zip(tri, cs) if cs.count(c) == 1)
        singles.append(odd)
        if seen & set(cs):
            return None
        seen |= set(cs)
    return {"singletons": singles}


def _match_g4(D: ColoredDigraph) -> Optional[dict]:
    col = D.as_dict()
    for order in permutations(range(4)):
        template = _g4_colors(order)
        labels: dict[int, int] = {}
        ok = True
        for arc, t in template.items():
            c = col[arc]
            if labels.setdefault(t, c) != c:
                ok = False
                break
        if ok and len(set(labels.values())) == 6:
            return {"order": list(order)}
    return None


def _bipartite_match(D: ColoredDigraph, part_a: tuple[int, ...], orientation: str) -> bool:
    A = set(part_a)
    h_colors = []
    rest = set()
    for (u, v), c in D.as_dict().items():
        if orientation == A_TO_B:
            forward = u in A and v not in A
        else:
            forward = v in A and u not in A
        if forward:
            h_colors.append(c)
        else:
            rest.add(c)
    return (
        len(set(h_colors)) == len(h_colors)
        and len(rest) == 1
        and not rest & set(h_colors)
    )


def _match_bipartite(D: ColoredDigraph) -> Optional[dict]:
    n = D.n
    for part_a in combinations(range(n), n // 2):
        for orientation in (A_TO_B, B_TO_A):
            if _bipartite_match(D, part_a, orientation):
                part_b = [v for v in range(n) if v not in part_a]
                return {"part_a": list(part_a), "part_b": part_b, "orientation": orientation}
    return None


def _match_g5_type_i(D: ColoredDigraph) -> Optional[dict]:
    col = D.as_dict()
    for v in range(5):
        incident = {c for (x, y), c in col.items() if v in (x, y)}
        if len(incident) != 1:
            continue
        (c,) = incident
        rest = [u for u in range(5) if u != v]
        sub = induced_colored(D, rest)
        if c in sub.color_set():
            continue
        inner = classify_extremal(sub)
        if inner.family is Family.G4:
            order = [rest[i] for i in inner.witness["order"]]
            return {"special_vertex": v, "order": order}
    return None


def _match_g5_type_iii(D: ColoredDigraph) -> Optional[dict]:
    col = D.as_dict()
    for part_a in combinations(range(5), 2):
        part_b = [v for v in range(5) if v not in part_a]
        x, y = part_a
        a_colors = {col[(x, y)], col[(y, x)]}
        if len(a_colors) != 2:
            continue
        cross = {c for (u, v), c in col.items() if (u in part_a) != (v in part_a)}
        if len(cross) != 1:
            continue
        sub = induced_colored(D, part_b)
        b_colors = sub.color_set()
        if len(b_colors) != 4 or len(a_colors | b_colors | cross) != 7:
            continue
        g3 = _match_g3(sub)
        if g3 is not None and find_rainbow_triangle(sub) is None:
            singles = [[part_b[p], part_b[q]] for p, q in g3["singletons"]]
            return {"part_a": list(part_a), "part_b": part_b, "singletons": singles}
    return None


def classify_extremal(D: ColoredDigraph) -> ExtremalClass:
    """Match ``D`` against the extremal taxonomy for its order."""
    n = D.n
    if D.digraph != complete_digraph(n):
        return _not(Reason.NOT_COMPLETE)
    if n < 3:
        return _not(Reason.NO_TEMPLATE_MATCH)
    if color_number(D) != f_threshold(n) - 1:
        return _not(Reason.WRONG_COLOR_COUNT)
    if find_rainbow_triangle(D) is not None:
        return _not(Reason.HAS_RAINBOW_TRIANGLE)
    if n == 3:
        w = _match_g3(D)
        return ExtremalClass(Family.G3, witness=w) if w else _not(Reason.NO_TEMPLATE_MATCH)
    if n == 4:
        w = _match_g4(D)
        return ExtremalClass(Family.G4, witness=w) if w else _not(Reason.NO_TEMPLATE_MATCH)
    if n == 5:
        w = _match_g5_type_i(D)
        if w:
            return ExtremalClass(Family.G5_TYPE_I, witness=w)
        w = _match_bipartite(D)
        if w:
            return ExtremalClass(Family.G5_TYPE_II, w["orientation"], witness=w)
        w = _match_g5_type_iii(D)
        if w:
            return ExtremalClass(Family.G5_TYPE_III, witness=w)
        return _not(Reason.NO_TEMPLATE_MATCH)
    w = _match_bipartite(D)
    if w:
        return ExtremalClass(Family.GN_BIPARTITE, w["orientation"], witness=w)
    return _not(Reason.NO_TEMPLATE_MATCH)


def _g3_on(vertices, singletons, base: int) -> dict[tuple[int, int], int]:
    p, q, r = vertices
    colors = {}
    for k, tri in enumerate((((p, q), (q, r), (r, p)), ((p, r), (r, q), (q, p)))):
        single = next(a for a in tri if list(a) in [list(s) for s in singletons])
        for a in tri:
            colors[a] = base + 2 * k + (a == single)
    return colors


def rebuild(cls: ExtremalClass, n: int) -> ColoredDigraph:
    """Re-apply the matched template at its witness, in canonical coloring form."""
    w = cls.witness
    fam = cls.family
    if fam is None:
        raise ValueError("nothing to rebuild for a non-extremal verdict")
    if fam is Family.G3:
        colors = _g3_on((0, 1, 2), w["singletons"], 0)
    elif fam is Family.G4:
        colors = _g4_colors(tuple(w["order"]))
    elif fam is Family.G5_TYPE_I:
        colors = _g4_colors(tuple(w["order"]))
        s = w["special_vertex"]
        for u in range(n):
            if u != s:
                colors[(u, s)] = colors[(s, u)] = 6
    elif fam is Family.G5_TYPE_III:
        x, y = w["part_a"]
        colors = {(x, y): 0, (y, x): 1}
        colors.update(_g3_on(tuple(w["part_b"]), w["singletons"], 2))
        for u in w["part_a"]:
            for v in w["part_b"]:
                colors[(u, v)] = colors[(v, u)] = 6
    else:
        A = set(w["part_a"])
        colors = {}
        fresh = 1
        for u, v in complete_digraph(n).arcs():
            forward = (u in A and v not in A) if w["orientation"] == A_TO_B else (v in A and u not in A)
            colors[(u, v)] = fresh if forward else 0
            fresh += forward
    return canonical_coloring(ColoredDigraph.from_arc_colors(n, colors))


# ---------------------------------------------------------------- diagnostics

MONO_TYPES = ("arc", "path2", "path3", "cycle4", "other")


@dataclass(frozen=True)
class MonoCensus:
    per_color: dict[int, str]
    x1: int
    x2: int
    x3: int
    x4: int
    other: int

    def counts(self) -> tuple[int, int, int, int, int]:
        return (self.x1, self.x2, self.x3, self.x4, self.other)


def _shape(arcs: list[tuple[int, int]]) -> str:
    outs: dict[int, int] = {}
    ins: dict[int, int] = {}
    for u, v in arcs:
        if u in outs or v in ins:
            return "other"
        outs[u] = v
        ins[v] = u
    verts = set(outs) | set(ins)
    m = len(arcs)
    if m == len(verts) - 1:
        starts = [v for v in verts if v not in ins]
        if len(starts) != 1:
            return "other"
        walk, cur = 0, starts[0]
        while cur in outs:
            cur = outs[cur]
            walk += 1
        if walk != m:
            return "other"
        return {1: "arc", 2: "path2", 3: "path3"}.get(m, "other")
    if m == len(verts) == 4:
        start = next(iter(verts))
        cur, walk = outs[start], 1
        while cur != start:
            cur = outs[cur]
            walk += 1
        return "cycle4" if walk == 4 else "other"
    return "other"


def mono_census(D: ColoredDigraph) -> MonoCensus:
    per = {c: _shape(arcs) for c, arcs in sorted(color_classes(D).items())}
    cnt = {t: 0 for t in MONO_TYPES}
    for t in per.values():
        cnt[t] += 1
    return MonoCensus(per, cnt["arc"], cnt["path2"], cnt["path3"], cnt["cycle4"], cnt["other"])


@dataclass(frozen=True)
class SaturationPartition:
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]

    @property
    def x(self) -> int:
        return len(self.X)

    @property
    def y(self) -> int:
        return len(self.Y)

    @property
    def z(self) -> int:
        return len(self.Z)


def saturation_partition(D: ColoredDigraph) -> SaturationPartition:
    """Split colors by how many vertices saturate them: two (X), one (Y), none (Z)."""
    X, Y, Z = set(), set(), set()
    for c, arcs in color_classes(D).items():
        k = len(saturators(arcs))
        (X if k == 2 else Y if k == 1 else Z).add(c)
    return SaturationPartition(frozenset(X), frozenset(Y), frozenset(Z))
