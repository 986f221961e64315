"""Exhaustive search over small digraphs and their rainbow-free colorings.

Colorings are restricted-growth strings along the canonical arc order: arc
``k`` takes a color already used by arcs ``0..k-1`` or the single next fresh
color.  This enumerates each partition of the arc set into color classes
exactly once.  Choices are tried in ascending order (fresh last), so the walk
visits colorings in lexicographic order and the first maximum found is the
lexicographically least one.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .coloring import ColoredDigraph
from .digraph import (
    Digraph,
    DigraphError,
    arc_index_order,
    canonical_codes,
    from_code,
)

ALL = "all"
TOURNAMENTS = "tournaments"
STRONG_TOURNAMENTS = "strongly_connected_tournaments"
FILTERS = (ALL, TOURNAMENTS, STRONG_TOURNAMENTS)

MAX_ORDER_ALL = 6
MAX_ORDER_TOURNAMENTS = 7
# arcs beyond this need force=True in max_rainbow_free_colors
SOFT_ARC_CAP = 15

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


class SearchError(ValueError):
    pass


class BudgetExceeded(Exception):
    """Node budget ran out; ``state`` resumes the walk where it stopped."""

    def __init__(self, state: dict):
        super().__init__("node budget exhausted")
        self.state = state


@dataclass
class SearchStats:
    nodes: int = 0
    bound_prunes: int = 0
    rainbow_prunes: int = 0
    leaves: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.bound_prunes += other.bound_prunes
        self.rainbow_prunes += other.rainbow_prunes
        self.leaves += other.leaves


# ------------------------------------------------------------ digraph lists


def _extensions(n: int, reps: np.ndarray, mode: str) -> np.ndarray:
    """Every way of adding vertex ``n-1`` to each order-``n-1`` representative."""
    m = n - 1
    B = reps.shape[0]
    if mode == ALL:
        choices = [(o, i) for o in range(1 << m) for i in range(1 << m)]
    else:
        choices = [(o, ((1 << m) - 1) & ~o) for o in range(1 << m)]
    C = len(choices)
    out = np.zeros((B, C, n, n), dtype=bool)
    out[:, :, :m, :m] = reps[:, None]
    for k, (o, i) in enumerate(choices):
        for v in range(m):
            if o >> v & 1:
                out[:, k, m, v] = True
            if i >> v & 1:
                out[:, k, v, m] = True
    return out.reshape(B * C, n, n)


@lru_cache(maxsize=None)
def _class_codes(n: int, mode: str) -> tuple[int, ...]:
    if n <= 1:
        return (0,)
    prev = _class_codes(n - 1, mode)
    reps = np.stack([from_code(n - 1, c).to_matrix() for c in prev]) if n > 2 else np.zeros(
        (1, n - 1, n - 1), dtype=bool
    )
    cands = _extensions(n, reps, mode)
    return tuple(sorted(set(int(c) for c in canonical_codes(cands))))


def enumerate_digraphs(n: int, filter: str = ALL) -> list[Digraph]:
    """One representative per isomorphism class, sorted by canonical key.

    Each representative is the relabeling whose adjacency code is minimal.
    Caps: order 6 for all digraphs (order 6 takes hours), order 7 for
    tournaments.
    """
    if filter not in FILTERS:
        raise SearchError(f"unknown filter {filter!r}")
    cap = MAX_ORDER_ALL if filter == ALL else MAX_ORDER_TOURNAMENTS
    if n < 0 or n > cap:
        raise SearchError(f"order {n} outside 0..{cap} for filter {filter}")
    mode = ALL if filter == ALL else TOURNAMENTS
    reps = [from_code(n, c) for c in _class_codes(n, mode)]
    if filter == STRONG_TOURNAMENTS:
        from .digraph import is_strongly_connected

        reps = [D for D in reps if n >= 1 and is_strongly_connected(D)]
    return reps


def raw_count(n: int, filter: str = ALL) -> int:
    """Number of labelled digraphs in the universe before canonical reduction."""
    if filter == ALL:
        return 2 ** (n * (n - 1))
    return 2 ** (n * (n - 1) // 2)


# ------------------------------------------------------------ coloring walk


def triangle_pairs(D: Digraph) -> list[list[tuple[int, int]]]:
    """For arc ``k``: index pairs ``(i, j)``, both ``< k``, closing a directed triangle with it."""
    arcs = D.arcs()
    index = {a: k for k, a in enumerate(arcs)}
    pairs: list[list[tuple[int, int]]] = [[] for _ in arcs]
    for k, (x, y) in enumerate(arcs):
        for z in range(D.n):
            if z in (x, y):
                continue
            i = index.get((y, z))
            j = index.get((z, x))
            if i is not None and j is not None and i < k and j < k:
                pairs[k].append((i, j))
    return pairs


def closing_pairs(D: Digraph) -> list[list[tuple[int, int, int]]]:
    """For arc ``a``: every ``(max(i, j), i, j)`` closing a triangle with it, sorted."""
    arcs = D.arcs()
    index = {a: k for k, a in enumerate(arcs)}
    out: list[list[tuple[int, int, int]]] = []
    for x, y in arcs:
        row = []
        for z in range(D.n):
            i = index.get((y, z))
            j = index.get((z, x))
            if z not in (x, y) and i is not None and j is not None:
                row.append((max(i, j), i, j))
        row.sort()
        out.append(row)
    return out


class _Walk:
    """Depth-first walk over rainbow-free restricted-growth colorings of one digraph."""

    def __init__(self, D: Digraph, stats: Optional[SearchStats] = None, budget: Optional[int] = None):
        self.D = D
        self.m = D.arc_count
        self.pairs = triangle_pairs(D)
        self.closing = closing_pairs(D)
        self.stats = stats if stats is not None else SearchStats()
        self.budget = budget
        self.col = [0] * self.m
        # a rainbow-free coloring picks one arc per color into a triangle-free subdigraph
        self.cap = min(self.m, D.n * D.n // 2) if D.n else 0

    def run(
        self,
        floor: Callable[[], int],
        ceiling: Optional[int],
        on_leaf: Callable[[list[int], int], bool],
        resume: Optional[Sequence[int]] = None,
    ) -> bool:
        """Visit leaves with at least ``floor()`` and at most ``ceiling`` colors.

        ``on_leaf`` returns True to stop the walk.  Returns True if stopped.
        """
        m = self.m
        pairs = self.pairs
        closing = self.closing
        col = self.col
        stats = self.stats
        budget = self.budget
        cap = self.cap
        ceil = cap if ceiling is None else min(ceiling, cap)
        resume = list(resume) if resume else []

        def visit(k: int, used: int, resuming: bool) -> bool:
            if budget is not None and stats.nodes >= budget:
                raise BudgetExceeded({"prefix": col[:k]})
            stats.nodes += 1
            if k == m:
                stats.leaves += 1
                return on_leaf(col, used)
            fl = floor()
            if min(used + m - k, ceil) < fl:
                stats.bound_prunes += 1
                return False
            # an uncolored arc can open a fresh color only if every triangle it
            # closes with two colored arcs is already monochromatic on those two
            rest = 0
            if fl > used:
                for a in range(k + 1, m):
                    for top, i, j in closing[a]:
                        if top >= k:
                            rest += 1
                            break
                        if col[i] != col[j]:
                            break
                    else:
                        rest += 1
                if used + 1 + rest < fl:
                    stats.bound_prunes += 1
                    return False
            else:
                rest = m - k - 1
            allowed = None
            for i, j in pairs[k]:
                ci = col[i]
                cj = col[j]
                if ci != cj:
                    if allowed is None:
                        allowed = {ci, cj}
                    else:
                        allowed &= {ci, cj}
                        if not allowed:
                            break
            if allowed is None:
                choices = range(used + 1) if used < ceil else range(used)
            else:
                if not allowed:
                    stats.rainbow_prunes += 1
                    return False
                choices = sorted(allowed)
            start = resume[k] if resuming and k < len(resume) else None
            for c in choices:
                if start is not None and c < start:
                    continue
                fresh = c == used
                if not fresh and used + rest < floor():
                    stats.bound_prunes += 1
                    continue
                col[k] = c
                if visit(k + 1, used + 1 if fresh else used, start is not None and c == start):
                    return True
            return False

        return visit(0, 0, bool(resume))


def greedy_coloring(D: Digraph) -> Optional[tuple[int, ...]]:
    """Rainbow-free coloring that opens a fresh color whenever no triangle forbids it.

    Returns None when the greedy prefix cannot be extended.
    """
    pairs = triangle_pairs(D)
    col: list[int] = []
    used = 0
    for k in range(D.arc_count):
        allowed = None
        for i, j in pairs[k]:
            if col[i] != col[j]:
                allowed = {col[i], col[j]} if allowed is None else allowed & {col[i], col[j]}
        if allowed is None:
            col.append(used)
            used += 1
        elif allowed:
            col.append(min(allowed))
        else:
            return None
    return tuple(col)


def max_rainbow_free_colors(
    D: Digraph,
    lower_bound_hint: Optional[int] = None,
    *,
    force: bool = False,
    stats: Optional[SearchStats] = None,
    budget: Optional[int] = None,
) -> tuple[int, ColoredDigraph]:
    """Exact maximum color count over rainbow-free colorings of ``D``, with a witness.

    The witness is the lexicographically least restricted-growth string among
    the maxima.  ``lower_bound_hint`` must be attainable; an unattainable hint
    only costs a second pass.
    """
    if D.arc_count > SOFT_ARC_CAP and not force:
        raise SearchError(
            f"{D.arc_count} arcs exceeds the soft cap of {SOFT_ARC_CAP}; pass force=True"
        )
    if D.arc_count == 0:
        return 0, ColoredDigraph(D, ())
    greedy = greedy_coloring(D)
    start = max(len(set(greedy)) if greedy else 1, lower_bound_hint or 0)
    for floor0 in (start, 0) if start else (0,):
        best = {"value": floor0 - 1, "witness": None}

        def on_leaf(col, used):
            if used > best["value"]:
                best["value"] = used
                best["witness"] = tuple(col)
            return False

        _Walk(D, stats, budget).run(lambda: best["value"] + 1, None, on_leaf)
        if best["witness"] is not None:
            return best["value"], ColoredDigraph(D, best["witness"])
    raise AssertionError("unreachable: the monochromatic coloring always exists")


def rainbow_free_colorings(
    D: Digraph,
    min_colors: int = 0,
    max_colors: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Iterator[tuple[int, ...]]:
    """All rainbow-free colorings (as restricted-growth strings) within the color range.

    Materialized eagerly then yielded; intended for small instances.
    """
    found: list[tuple[int, ...]] = []

    def on_leaf(col, used):
        if used >= min_colors:
            found.append(tuple(col))
        return False

    if D.arc_count == 0:
        if min_colors <= 0:
            yield ()
        return
    _Walk(D, stats).run(lambda: min_colors, max_colors, on_leaf)
    yield from found


def find_rainbow_free_coloring(
    D: Digraph,
    min_colors: int,
    *,
    budget: Optional[int] = None,
    resume: Optional[Sequence[int]] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[ColoredDigraph]:
    """Lexicographically first rainbow-free coloring with at least ``min_colors`` colors.

    Raises ``BudgetExceeded`` carrying a resumable prefix when ``budget`` nodes
    (counted in ``stats``) have been expanded.
    """
    hit: list[tuple[int, ...]] = []

    def on_leaf(col, used):
        if used >= min_colors:
            hit.append(tuple(col))
            return True
        return False

    if D.arc_count == 0:
        return ColoredDigraph(D, ()) if min_colors <= 0 else None
    _Walk(D, stats, budget).run(lambda: min_colors, None, on_leaf, resume=resume)
    return ColoredDigraph(D, hit[0]) if hit else None


def all_colorings_oracle(D: Digraph) -> Iterator[tuple[int, ...]]:
    """Every restricted-growth string over the arcs, no pruning at all."""
    m = D.arc_count

    def rec(prefix: list[int], used: int):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for c in range(used + 1):
            prefix.append(c)
            yield from rec(prefix, max(used, c + 1))
            prefix.pop()

    yield from rec([], 0)


def arcs_in_order(n: int) -> list[tuple[int, int]]:
    return arc_index_order(n)


def check_order(n: int, lo: int, hi: int, what: str) -> None:
    if not lo <= n <= hi:
        raise DigraphError(f"{what} supports orders {lo}..{hi}, got {n}")
