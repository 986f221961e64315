"""Loopless simple digraphs on dense vertex ids ``0..n-1``.

Adjacency is one presence bit per ordered pair ``(u, v)``, ``u != v``.  Walking
those pairs row-major (``(0,1), (0,2), ..., (1,0), (1,2), ...``) gives the
*canonical arc order* that colorings, file serialization and the search engine
all index against.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

MAX_CANONICAL_ORDER = 8


class DigraphError(ValueError):
    """Raised for out-of-range vertices, missing arcs and malformed input."""


@dataclass(frozen=True)
class Digraph:
    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...] = field(repr=False, compare=False)
    arc_count: int = field(repr=False, compare=False)

    @classmethod
    def from_out_masks(cls, n: int, out_masks: Sequence[int]) -> "Digraph":
        if n < 0:
            raise DigraphError(f"negative order {n}")
        if len(out_masks) != n:
            raise DigraphError("need exactly one out-mask per vertex")
        full = (1 << n) - 1
        ins = [0] * n
        for u, m in enumerate(out_masks):
            if m & ~full:
                raise DigraphError(f"vertex {u} points outside 0..{n - 1}")
            if m >> u & 1:
                raise DigraphError(f"loop at vertex {u}")
            mm = m
            while mm:
                low = mm & -mm
                ins[low.bit_length() - 1] |= 1 << u
                mm ^= low
        count = sum(bin(m).count("1") for m in out_masks)
        return cls(n, tuple(out_masks), tuple(ins), count)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        outs = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            outs[u] |= 1 << v
        return cls.from_out_masks(n, outs)

    @classmethod
    def from_matrix(cls, matrix) -> "Digraph":
        a = np.asarray(matrix, dtype=bool)
        n = a.shape[0]
        outs = [sum(1 << v for v in range(n) if a[u, v]) for u in range(n)]
        return cls.from_out_masks(n, outs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Arcs in canonical (row-major) order."""
        return _arcs_of(self.n, self.out_masks)

    def out_neighbors(self, u: int) -> list[int]:
        self._check_vertex(u)
        return _bits(self.out_masks[u])

    def in_neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return _bits(self.in_masks[v])

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.arcs():
            a[u, v] = True
        return a

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise DigraphError(f"vertex {v} out of range for order {self.n}")

    def __len__(self) -> int:
        return self.n


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@lru_cache(maxsize=4096)
def _arcs_of(n: int, out_masks: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(n) for v in _bits(out_masks[u]))


def arc_index_order(n: int) -> list[tuple[int, int]]:
    """All ordered pairs ``u != v`` in canonical order."""
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def complete_digraph(n: int) -> Digraph:
    if n < 0:
        raise DigraphError(f"negative order {n}")
    full = (1 << n) - 1
    return Digraph.from_out_masks(n, [full & ~(1 << u) for u in range(n)])


def empty_digraph(n: int) -> Digraph:
    return Digraph.from_out_masks(n, [0] * n)


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def degrees(D: Digraph, v: int) -> tuple[int, int, int]:
    """Return ``(in_degree, out_degree, degree)`` of ``v``."""
    D._check_vertex(v)
    din = bin(D.in_masks[v]).count("1")
    dout = bin(D.out_masks[v]).count("1")
    return din, dout, din + dout


def induced(D: Digraph, S: Iterable[int]) -> Digraph:
    """Subdigraph induced by ``S``, reindexed by ascending original id."""
    keep = sorted(set(S))
    for v in keep:
        D._check_vertex(v)
    new_id = {v: i for i, v in enumerate(keep)}
    arcs = [(new_id[u], new_id[v]) for u, v in D.arcs() if u in new_id and v in new_id]
    return Digraph.from_arcs(len(keep), arcs)


def delete_vertex(D: Digraph, v: int) -> Digraph:
    D._check_vertex(v)
    return induced(D, [u for u in range(D.n) if u != v])


def delete_arc(D: Digraph, u: int, v: int) -> Digraph:
    if not (0 <= u < D.n and 0 <= v < D.n) or not D.has_arc(u, v):
        raise DigraphError(f"no arc ({u}, {v})")
    outs = list(D.out_masks)
    outs[u] &= ~(1 << v)
    return Digraph.from_out_masks(D.n, outs)


def relabel(D: Digraph, perm: Sequence[int]) -> Digraph:
    """Image of ``D`` under the vertex map ``v -> perm[v]``."""
    return Digraph.from_arcs(D.n, [(perm[u], perm[v]) for u, v in D.arcs()])


def _reach(masks: tuple[int, ...], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= masks[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strongly_connected(D: Digraph) -> bool:
    if D.n < 1:
        raise DigraphError("strong connectivity needs at least one vertex")
    full = (1 << D.n) - 1
    return _reach(D.out_masks, 0) == full and _reach(D.in_masks, 0) == full


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


@lru_cache(maxsize=None)
def _pair_weights(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pairs = arc_index_order(n)
    rows = np.array([u for u, _ in pairs], dtype=np.intp)
    cols = np.array([v for _, v in pairs], dtype=np.intp)
    L = len(pairs)
    weights = np.array([1 << (L - 1 - k) for k in range(L)], dtype=np.int64)
    return rows, cols, weights


def _check_order(n: int) -> None:
    if n > MAX_CANONICAL_ORDER:
        raise DigraphError(
            f"canonical form is brute force over n! relabelings; order {n} exceeds cap {MAX_CANONICAL_ORDER}"
        )


def canonical_codes(matrices: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    """Minimum adjacency code over all relabelings, for a batch of ``(B, n, n)`` matrices.

    The code of a relabeled matrix reads its off-diagonal bits row-major, most
    significant first, so integer order is lexicographic bit-string order.
    """
    matrices = np.asarray(matrices, dtype=bool)
    B, n = matrices.shape[0], matrices.shape[1]
    _check_order(n)
    if n <= 1:
        return np.zeros(B, dtype=np.int64)
    perms = _perm_table(n)
    rows, cols, weights = _pair_weights(n)
    # entry k of a relabeled matrix is A[p[rows[k]], p[cols[k]]]
    pr = perms[:, rows]
    pc = perms[:, cols]
    flat_idx = pr * n + pc
    per = max(1, chunk // flat_idx.size)
    out = np.empty(B, dtype=np.int64)
    flat = matrices.reshape(B, n * n)
    for start in range(0, B, per):
        block = flat[start:start + per]
        bits = block[:, flat_idx]
        codes = bits.astype(np.int64) @ weights
        out[start:start + per] = codes.min(axis=1)
    return out


def code_to_key(n: int, code: int) -> bytes:
    L = n * (n - 1)
    return bytes([n]) + int(code).to_bytes(max(1, (L + 7) // 8), "big")


def canonical_key(D: Digraph) -> bytes:
    """Isomorphism-invariant key: order byte followed by the minimal adjacency code."""
    _check_order(D.n)
    code = canonical_codes(D.to_matrix()[None])[0]
    return code_to_key(D.n, int(code))


def adjacency_code(D: Digraph) -> int:
    L = D.n * (D.n - 1)
    code = 0
    for k, (u, v) in enumerate(arc_index_order(D.n)):
        if D.has_arc(u, v):
            code |= 1 << (L - 1 - k)
    return code


def from_code(n: int, code: int) -> Digraph:
    L = n * (n - 1)
    arcs = [p for k, p in enumerate(arc_index_order(n)) if code >> (L - 1 - k) & 1]
    return Digraph.from_arcs(n, arcs)


def canonical_form(D: Digraph) -> Digraph:
    """The representative whose adjacency code is minimal."""
    _check_order(D.n)
    code = int(canonical_codes(D.to_matrix()[None])[0])
    return from_code(D.n, code)


def canonical_permutation(D: Digraph) -> tuple[int, ...]:
    """A map ``p`` with ``relabel(D, inverse(p)) == canonical_form(D)``.

    Returned as the new-position-to-old-vertex table: canonical vertex ``i`` is
    old vertex ``p[i]``.
    """
    _check_order(D.n)
    if D.n <= 1:
        return tuple(range(D.n))
    perms = _perm_table(D.n)
    rows, cols, weights = _pair_weights(D.n)
    a = D.to_matrix()
    codes = a[perms[:, rows], perms[:, cols]].astype(np.int64) @ weights
    return tuple(int(x) for x in perms[int(np.argmin(codes))])


def is_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    return D1.n == D2.n and D1.arc_count == D2.arc_count and canonical_key(D1) == canonical_key(D2)
