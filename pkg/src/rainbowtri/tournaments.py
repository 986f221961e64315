"""Tournament predicates, cycle certificates through every vertex, and the color threshold."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, _bits, is_strongly_connected


class TournamentError(ValueError):
    pass


def is_tournament(D: Digraph) -> bool:
    for u in range(D.n):
        for v in range(u + 1, D.n):
            if D.has_arc(u, v) == D.has_arc(v, u):
                return False
    return True


def transitive_tournament(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def find_cycle_through(D: Digraph, v: int, k: int) -> Optional[list[int]]:
    """A directed ``k``-cycle through ``v`` as a vertex list starting at ``v``.

    Depth-first over simple paths from ``v``, neighbors in ascending order, so
    the result is deterministic.
    """
    if k < 2 or k > D.n:
        return None
    path = [v]
    used = 1 << v

    def extend(u: int, used: int) -> bool:
        if len(path) == k:
            return bool(D.out_masks[u] >> v & 1)
        for w in _bits(D.out_masks[u] & ~used):
            path.append(w)
            if extend(w, used | 1 << w):
                return True
            path.pop()
        return False

    return list(path) if extend(v, used) else None


@dataclass(frozen=True)
class TournamentCertificate:
    n: int
    cycles: dict[tuple[int, int], list[int]]

    def entries(self) -> list[tuple[int, int, list[int]]]:
        return [(v, k, self.cycles[(v, k)]) for v, k in sorted(self.cycles)]

    def is_valid_for(self, D: Digraph) -> bool:
        for v in range(self.n):
            for k in range(3, self.n + 1):
                cyc = self.cycles.get((v, k))
                if cyc is None or len(cyc) != k or len(set(cyc)) != k or v not in cyc:
                    return False
                if not all(D.has_arc(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                    return False
        return True


def moon_certificate(T: Digraph) -> TournamentCertificate:
    """Cycles of every length ``3..n`` through every vertex of a strong tournament."""
    if not is_tournament(T):
        raise TournamentError("input is not a tournament")
    if T.n < 3:
        raise TournamentError("need at least 3 vertices")
    if not is_strongly_connected(T):
        raise TournamentError("tournament is not strongly connected")
    cycles = {}
    for v in range(T.n):
        for k in range(3, T.n + 1):
            cyc = find_cycle_through(T, v, k)
            if cyc is None:
                raise TournamentError(f"no {k}-cycle through vertex {v}")
            cycles[(v, k)] = cyc
    return TournamentCertificate(T.n, cycles)


def hamiltonian_cycle(D: Digraph) -> Optional[list[int]]:
    if D.n < 2:
        return None
    return find_cycle_through(D, 0, D.n)


def tournament_threshold(n: int) -> int:
    """Least color count forcing a rainbow triangle in every coloring of a strong tournament."""
    if n < 3:
        raise TournamentError(f"threshold defined for n >= 3, got {n}")
    return n * (n - 1) // 2 - n + 3
