"""Claim verifiers built on the search engine.

Each verifier returns a :class:`SearchReport`.  Per-instance work may fan out
to worker processes (``jobs > 1``); results are merged in instance order, so
reports do not depend on scheduling.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .coloring import ColoredDigraph, canonical_coloring, color_number, colored_canonical_key
from .constructions import extremal_generator, f_threshold, gen_tournament_sharp
from .digraph import Digraph, adjacency_code, complete_digraph, is_strongly_connected
from .extremal import classify_extremal
from .search import (
    ALL,
    STRONG_TOURNAMENTS,
    TOURNAMENTS,
    BudgetExceeded,
    SearchStats,
    enumerate_digraphs,
    find_rainbow_free_coloring,
    max_rainbow_free_colors,
    rainbow_free_colorings,
    raw_count,
)
from .tournaments import hamiltonian_cycle, is_tournament, moon_certificate, tournament_threshold
from .triangles import find_rainbow_triangle

HOLDS = "HOLDS"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
INCONCLUSIVE = "INCONCLUSIVE"


class VerifyError(ValueError):
    pass


@dataclass
class SearchReport:
    claim: str
    universe: str
    raw_count: int
    canonical_count: int
    verdict: str = HOLDS
    numbers: dict[str, Any] = field(default_factory=dict)
    witnesses: list[ColoredDigraph] = field(default_factory=list)
    counterexample: Optional[ColoredDigraph] = None
    stats: SearchStats = field(default_factory=SearchStats)
    elapsed: float = 0.0
    checkpoint: Optional[dict] = None
    table: list[dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def _max_task(args):
    n, out_masks, hint = args
    D = Digraph.from_out_masks(n, out_masks)
    st = SearchStats()
    mx, wit = max_rainbow_free_colors(D, hint, force=True, stats=st)
    return mx, wit.colors, (st.nodes, st.bound_prunes, st.rainbow_prunes, st.leaves)


def _max_over(digraphs: list[Digraph], jobs: int, hints=None) -> list[tuple[int, ColoredDigraph, SearchStats]]:
    tasks = [(D.n, D.out_masks, None if hints is None else hints[k]) for k, D in enumerate(digraphs)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            raw = list(ex.map(_max_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        raw = [_max_task(t) for t in tasks]
    out = []
    for D, (mx, colors, st) in zip(digraphs, raw):
        out.append((mx, ColoredDigraph(D, colors), SearchStats(*st)))
    return out


def _code_hex(D: Digraph) -> str:
    return format(adjacency_code(D), "x")


# ------------------------------------------------------------------ f(K_n)


def verify_f(
    n: int,
    *,
    budget: Optional[int] = None,
    resume: Optional[dict] = None,
    checkpoint_every: Optional[int] = None,
    on_checkpoint: Optional[Callable[[dict], None]] = None,
) -> SearchReport:
    """Maximum rainbow-free color count of the complete digraph equals ``f(n) - 1``.

    Orders 3 and 4 run the full maximization plus the census of all extremal
    colorings.  Order 5 is a resumable budgeted search for a coloring with
    ``f(5)`` colors.
    """
    if n not in (3, 4, 5):
        raise VerifyError(f"verify_f supports n in 3..5, got {n}")
    t0 = time.perf_counter()
    K = complete_digraph(n)
    target = f_threshold(n) - 1
    rep = SearchReport(f"f{n}", f"colorings of the complete digraph of order {n}", 1, 1)
    rep.numbers["f_threshold"] = f_threshold(n)
    if n == 5:
        gen = extremal_generator(5)
        first = find_rainbow_free_coloring(K, target)
        rep.witnesses.append(first)
        rep.numbers["generator_colors"] = color_number(gen)
        found, state = _budgeted_feasibility(
            [K], [target + 1], rep.stats, budget, resume, checkpoint_every, on_checkpoint
        )
        if found is not None:
            rep.verdict = COUNTEREXAMPLE
            rep.counterexample = found
        elif state is not None:
            rep.verdict = INCONCLUSIVE
            rep.checkpoint = state
        else:
            rep.numbers["max_colors"] = target
            rep.verdict = HOLDS if find_rainbow_triangle(gen) is None and color_number(gen) == target else COUNTEREXAMPLE
        rep.elapsed = time.perf_counter() - t0
        return rep

    mx, wit = max_rainbow_free_colors(K, stats=rep.stats)
    verdict = classify_extremal(wit)
    extremal = [ColoredDigraph(K, c) for c in rainbow_free_colorings(K, min_colors=mx, stats=rep.stats)]
    verdicts = [classify_extremal(D) for D in extremal]
    bad = [D for D, v in zip(extremal, verdicts) if not v.is_extremal]
    rep.witnesses.append(wit)
    rep.numbers.update(
        max_colors=mx,
        witness_class=verdict.verdict,
        extremal_colorings=len(extremal),
        extremal_iso_classes=len({colored_canonical_key(D) for D in extremal}),
        not_extremal=len(bad),
    )
    if mx != target or not verdict.is_extremal or bad:
        rep.verdict = COUNTEREXAMPLE
        rep.counterexample = bad[0] if bad else wit
    rep.elapsed = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------------ arcs + colors


def arcs_plus_colors_bound(n: int) -> int:
    return n * (n - 1) + f_threshold(n)


def verify_arcs_plus_colors(n: int, *, jobs: int = 1) -> SearchReport:
    """No rainbow-free digraph of order ``n`` reaches ``a + c`` at the bound; one below forces completeness."""
    if n not in (3, 4):
        raise VerifyError(f"verify_arcs_plus_colors supports n in (3, 4), got {n}")
    t0 = time.perf_counter()
    digraphs = enumerate_digraphs(n, ALL)
    bound = arcs_plus_colors_bound(n)
    rep = SearchReport(f"thm2-n{n}", f"all digraphs of order {n}", raw_count(n, ALL), len(digraphs))
    results = _max_over(digraphs, jobs)
    best_total = -1
    equality = []
    for D, (mx, wit, st) in zip(digraphs, results):
        rep.stats.merge(st)
        total = D.arc_count + mx
        rep.table.append({"digraph": _code_hex(D), "arcs": D.arc_count, "max_colors": mx, "total": total})
        best_total = max(best_total, total)
        if total >= bound and rep.counterexample is None:
            rep.verdict = COUNTEREXAMPLE
            rep.counterexample = wit
        if total == bound - 1:
            equality.append(wit)
    complete = complete_digraph(n)
    eq_complete = all(w.digraph == complete for w in equality)
    if not eq_complete and rep.counterexample is None:
        rep.verdict = COUNTEREXAMPLE
        rep.counterexample = next(w for w in equality if w.digraph != complete)
    rep.witnesses.extend(equality)
    rep.numbers.update(
        bound=bound,
        max_total=best_total,
        equality_instances=len(equality),
        equality_only_complete=eq_complete,
    )
    rep.elapsed = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------------ tournaments


def verify_strong_tournaments(n: int, *, jobs: int = 1) -> SearchReport:
    """Every strong tournament class stays below the threshold and the sharp coloring meets it."""
    if not 3 <= n <= 6:
        raise VerifyError(f"verify_strong_tournaments supports n in 3..6, got {n}")
    t0 = time.perf_counter()
    tours = enumerate_digraphs(n, STRONG_TOURNAMENTS)
    rep = SearchReport(
        f"thm3-n{n}", f"strongly connected tournaments of order {n}", raw_count(n, TOURNAMENTS), len(tours)
    )
    limit = tournament_threshold(n) - 1
    results = _max_over(tours, jobs)
    per_class = []
    for T, (mx, wit, st) in zip(tours, results):
        rep.stats.merge(st)
        per_class.append(mx)
        rep.table.append({"digraph": _code_hex(T), "arcs": T.arc_count, "max_colors": mx})
        if mx > limit and rep.counterexample is None:
            rep.verdict = COUNTEREXAMPLE
            rep.counterexample = wit
    sharp = gen_tournament_sharp(n)
    sharp_ok = (
        is_tournament(sharp.digraph)
        and is_strongly_connected(sharp.digraph)
        and find_rainbow_triangle(sharp) is None
        and color_number(sharp) == limit
    )
    if not sharp_ok and rep.verdict == HOLDS:
        rep.verdict = COUNTEREXAMPLE
        rep.counterexample = sharp
    rep.witnesses.append(sharp)
    rep.numbers.update(
        threshold=tournament_threshold(n),
        bound=limit,
        max_colors=max(per_class),
        per_class_max=per_class,
        sharp_colors=color_number(sharp),
    )
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_moon(n: int) -> SearchReport:
    """Full cycle certificates for every strong tournament; strong iff Hamiltonian on all tournaments."""
    if not 3 <= n <= 7:
        raise VerifyError(f"verify_moon supports n in 3..7, got {n}")
    t0 = time.perf_counter()
    tours = enumerate_digraphs(n, TOURNAMENTS)
    strong = [T for T in tours if is_strongly_connected(T)]
    rep = SearchReport(f"moon-n{n}", f"tournaments of order {n}", raw_count(n, TOURNAMENTS), len(tours))
    certified = 0
    for T in strong:
        cert = moon_certificate(T)
        if cert.is_valid_for(T):
            certified += 1
        elif rep.counterexample is None:
            rep.verdict = COUNTEREXAMPLE
            rep.counterexample = ColoredDigraph(T, (0,) * T.arc_count)
    mismatched = sum((hamiltonian_cycle(T) is not None) != is_strongly_connected(T) for T in tours)
    if mismatched:
        rep.verdict = COUNTEREXAMPLE
    rep.numbers.update(strong_classes=len(strong), certified=certified, hamiltonian_mismatch=mismatched)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------------ conjecture


def _budgeted_feasibility(
    digraphs: list[Digraph],
    targets: list[int],
    stats: SearchStats,
    budget: Optional[int],
    resume: Optional[dict],
    every: Optional[int],
    on_checkpoint: Optional[Callable[[dict], None]],
) -> tuple[Optional[ColoredDigraph], Optional[dict]]:
    """Search instances in order for a coloring meeting its target.

    Returns ``(found, None)``, ``(None, None)`` when exhausted, or
    ``(None, state)`` when ``budget`` ran out first.
    """
    if every is not None:
        # each slice must outrun the re-walk of the resumed prefix
        every = max(every, 1000)
    start = resume.get("instance", 0) if resume else 0
    prefix = resume.get("prefix") if resume else None
    base = stats.nodes
    limit = None if budget is None else base + budget
    for idx in range(start, len(digraphs)):
        D, target = digraphs[idx], targets[idx]
        while True:
            cut = limit
            if every is not None:
                nxt = stats.nodes + every
                cut = nxt if cut is None else min(cut, nxt)
            try:
                found = find_rainbow_free_coloring(D, target, budget=cut, resume=prefix, stats=stats)
            except BudgetExceeded as e:
                state = {"instance": idx, "prefix": e.state["prefix"], "nodes": stats.nodes - base}
                if limit is not None and stats.nodes >= limit:
                    return None, state
                if on_checkpoint is not None:
                    on_checkpoint(state)
                prefix = e.state["prefix"]
                continue
            prefix = None
            break
        if found is not None:
            return found, None
    return None, None


def conjecture_probe(
    n: int = 5,
    budget: Optional[int] = None,
    *,
    resume: Optional[dict] = None,
    checkpoint_every: Optional[int] = None,
    on_checkpoint: Optional[Callable[[dict], None]] = None,
) -> SearchReport:
    """Look for a non-complete rainbow-free digraph of order 5 with ``a + c = n(n-1) + n^2//4 + 1``.

    Only digraphs with ``a >= 15`` can qualify: a rainbow-free coloring has at
    most ``n^2 // 2 = 12`` colors.  A coloring with more colors than needed
    merges down to the exact sum, so a feasibility search per digraph suffices.
    """
    if n != 5:
        raise VerifyError("the probe is defined for n = 5 only")
    t0 = time.perf_counter()
    total = n * (n - 1) + n * n // 4 + 1
    max_c = n * n // 2
    complete = complete_digraph(n)
    pool = [D for D in enumerate_digraphs(n, ALL) if D != complete and D.arc_count + min(D.arc_count, max_c) >= total]
    targets = [total - D.arc_count for D in pool]
    rep = SearchReport(
        f"conjecture-n{n}", f"non-complete digraphs of order {n} with a(D) >= {total - max_c}",
        raw_count(n, ALL), len(pool),
    )
    rep.numbers.update(target_sum=total, candidates=len(pool))
    if budget == 0:
        rep.verdict = INCONCLUSIVE
        rep.checkpoint = resume or {"instance": 0, "prefix": [], "nodes": 0}
        rep.elapsed = time.perf_counter() - t0
        return rep
    found, state = _budgeted_feasibility(pool, targets, rep.stats, budget, resume, checkpoint_every, on_checkpoint)
    if found is not None:
        rep.verdict = COUNTEREXAMPLE
        rep.counterexample = merge_down(found, total - found.digraph.arc_count)
    elif state is not None:
        rep.verdict = INCONCLUSIVE
        rep.checkpoint = state
    rep.elapsed = time.perf_counter() - t0
    return rep


def merge_down(D: ColoredDigraph, colors: int) -> ColoredDigraph:
    """Merge the highest color classes into one until exactly ``colors`` remain."""
    canon = canonical_coloring(D)
    if color_number(canon) <= colors:
        return canon
    return ColoredDigraph(canon.digraph, tuple(min(c, colors - 1) for c in canon.colors))
