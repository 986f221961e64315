"""Command-line entry point.

Exit codes: 0 success or claim holds, 1 counterexample or unexpected rainbow
triangle, 2 usage or parse error, 3 inconclusive (budget ran out).
Output is always plain text, so ``NO_COLOR`` needs no special handling.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import fileio
from .coloring import (
    color_number,
    color_profile,
    delete_vertex_colored,
    random_colored_digraph,
)
from .constructions import A_TO_B, B_TO_A, ConstructionError, Family, generate
from .digraph import DigraphError, degrees
from .extremal import classify_extremal, mono_census, saturation_partition
from .search import BudgetExceeded, SearchError, SearchStats, max_rainbow_free_colors
from .tournaments import TournamentError, moon_certificate
from .triangles import find_rainbow_triangle
from .verify import (
    COUNTEREXAMPLE,
    HOLDS,
    INCONCLUSIVE,
    SearchReport,
    conjecture_probe,
    verify_f,
    verify_moon,
    verify_arcs_plus_colors,
    verify_strong_tournaments,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_VERDICT_EXIT = {HOLDS: EXIT_OK, COUNTEREXAMPLE: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}

FAMILY_ALIASES = {
    "g3": Family.G3,
    "g4": Family.G4,
    "g5": None,  # resolved by --type
    "gn": Family.GN_BIPARTITE,
    "gn-bipartite": Family.GN_BIPARTITE,
    "bipartite-rainbow-complete": Family.BIPARTITE_RAINBOW_COMPLETE,
    "tournament-sharp": Family.TOURNAMENT_SHARP,
    "complete-bipartite-rainbow": Family.COMPLETE_BIPARTITE_RAINBOW,
}
_G5_KINDS = {"I": Family.G5_TYPE_I, "II": Family.G5_TYPE_II, "III": Family.G5_TYPE_III}
_ORIENT = {"ab": A_TO_B, "ba": B_TO_A}


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"rainbowtri: {msg}", file=sys.stderr)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve_family(name: str, kind: Optional[str]) -> Family:
    key = name.lower()
    if key in FAMILY_ALIASES:
        fam = FAMILY_ALIASES[key]
        if fam is None:
            if kind is None:
                raise UsageError("family g5 needs --type I|II|III")
            return _G5_KINDS[kind]
        return fam
    for fam in Family:
        if fam.value.lower() == key:
            return fam
    raise UsageError(f"unknown family {name!r}")


# ------------------------------------------------------------------ commands


def cmd_gen(args) -> int:
    if args.family.lower() == "random":
        if args.n is None:
            raise UsageError("family random needs --n")
        D = random_colored_digraph(args.n, args.p, args.colors, args.seed, args.complete)
    else:
        fam = _resolve_family(args.family, args.type)
        orientation = _ORIENT[args.orientation] if args.orientation else None
        D = generate(fam, args.n, orientation=orientation)
    _emit(fileio.serialize(D), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    D = fileio.read(args.file)
    tri = find_rainbow_triangle(D)
    if tri is None:
        print("none")
        return EXIT_OK
    print(f"rainbow triangle {tri.u} {tri.v} {tri.w} colors {' '.join(map(str, tri.colors))}")
    return EXIT_FAIL


def cmd_classify(args) -> int:
    D = fileio.read(args.file)
    cls = classify_extremal(D)
    print(cls.verdict)
    for k, v in sorted(cls.witness.items()):
        print(f"  {k}: {v}")
    return EXIT_OK


def cmd_stats(args) -> int:
    D = fileio.read(args.file)
    a, c = D.digraph.arc_count, color_number(D)
    print(f"order {D.n}, arcs {a}, colors {c}")
    print("v in out deg d_in_c d_out_c d_s c(D-v) c-d_s")
    total_ds = 0
    for v in range(D.n):
        prof = color_profile(D, v)
        total_ds += prof.d_s
        cv = color_number(delete_vertex_colored(D, v))
        d_in, d_out, d_tot = degrees(D.digraph, v)
        print(f"{v} {d_in} {d_out} {d_tot} {prof.d_in_c} {prof.d_out_c} {prof.d_s} {cv} {c - prof.d_s}")
    print(f"sum d_s = {total_ds}, 2c = {2 * c}")
    mono = mono_census(D)
    print("mono census arc/path2/path3/cycle4/other: " + " ".join(map(str, mono.counts())))
    part = saturation_partition(D)
    print(f"saturation partition x={part.x} y={part.y} z={part.z}")
    print(f"  X: {sorted(part.X)}\n  Y: {sorted(part.Y)}\n  Z: {sorted(part.Z)}")
    return EXIT_OK


def cmd_search(args) -> int:
    D = fileio.read(args.file)
    stats = SearchStats()
    try:
        mx, wit = max_rainbow_free_colors(D.digraph, force=args.force, stats=stats, budget=args.budget)
    except SearchError as e:
        raise UsageError(str(e)) from e
    except BudgetExceeded:
        print(f"max_colors: unknown (budget {args.budget} nodes exhausted)")
        return EXIT_INCONCLUSIVE
    print(f"max_colors: {mx}")
    print(f"nodes: {stats.nodes}")
    if args.output:
        fileio.write(wit, args.output)
        print(f"witness: {args.output}")
    else:
        sys.stdout.write(fileio.serialize(wit))
    return EXIT_OK


def cmd_moon(args) -> int:
    D = fileio.read(args.file)
    try:
        cert = moon_certificate(D.digraph)
    except TournamentError as e:
        raise UsageError(str(e)) from e
    for v, k, cyc in cert.entries():
        print(f"{v} {k}: {' '.join(map(str, cyc))}")
    return EXIT_OK


def _claim_runner(claim: str, args) -> Callable[..., SearchReport]:
    jobs = args.jobs
    simple = {
        "f3": lambda **_: verify_f(3),
        "f4": lambda **_: verify_f(4),
        "thm2-n3": lambda **_: verify_arcs_plus_colors(3, jobs=jobs),
        "thm2-n4": lambda **_: verify_arcs_plus_colors(4, jobs=jobs),
    }
    for n in range(3, 7):
        simple[f"thm3-n{n}"] = lambda n=n, **_: verify_strong_tournaments(n, jobs=jobs)
        simple[f"moon-n{n}"] = lambda n=n, **_: verify_moon(n)
    if claim in simple:
        return simple[claim]
    if claim == "f5-stretch":
        return lambda **kw: verify_f(5, **kw)
    if claim == "conjecture-n5":
        return lambda **kw: conjecture_probe(5, **kw)
    raise UsageError(f"unknown claim {claim!r}")


RESUMABLE = ("f5-stretch", "conjecture-n5")
CLAIMS = ("f3", "f4", "f5-stretch", "thm2-n3", "thm2-n4", "thm3-n3", "thm3-n4", "thm3-n5", "thm3-n6",
          "moon-n3", "moon-n4", "moon-n5", "moon-n6", "conjecture-n5")


def _load_checkpoint(path: Optional[str], claim: str) -> Optional[dict]:
    if not path or not Path(path).exists():
        return None
    data = json.loads(Path(path).read_text())
    if data.get("claim") != claim:
        raise UsageError(f"checkpoint {path} belongs to claim {data.get('claim')!r}, not {claim!r}")
    return data["state"]


def _save_checkpoint(path: str, claim: str, state: dict) -> None:
    Path(path).write_text(json.dumps({"claim": claim, "state": state}, sort_keys=True) + "\n")


def cmd_verify(args) -> int:
    claim = args.claim
    if claim is None:
        if args.theorem is None or args.n is None:
            raise UsageError("give --claim, or --theorem with --n")
        claim = f"thm{args.theorem}-n{args.n}"
    runner = _claim_runner(claim, args)
    kwargs = {}
    if claim in RESUMABLE:
        kwargs["budget"] = args.budget
        kwargs["resume"] = _load_checkpoint(args.checkpoint, claim)
        if args.checkpoint:
            kwargs["checkpoint_every"] = args.checkpoint_every
            kwargs["on_checkpoint"] = lambda st: _save_checkpoint(args.checkpoint, claim, st)
    elif args.budget is not None:
        _err(f"--budget ignored: claim {claim} always runs to completion")
    report = runner(**kwargs)
    if report.checkpoint is not None and args.checkpoint:
        _save_checkpoint(args.checkpoint, claim, report.checkpoint)
    witness_path = "-"
    shown = report.counterexample or (report.witnesses[0] if report.witnesses else None)
    if args.output and shown is not None:
        fileio.write(shown, args.output)
        witness_path = args.output
    sys.stdout.write(fileio.render_report(report, witness_path))
    return _VERDICT_EXIT[report.verdict]


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbowtri", description="Rainbow triangles in arc-colored digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated colored digraph")
    g.add_argument("--family", required=True,
                   help="g3, g4, g5, gn, bipartite-rainbow-complete, tournament-sharp, "
                        "complete-bipartite-rainbow, random")
    g.add_argument("--n", type=int)
    g.add_argument("--type", choices=sorted(_G5_KINDS))
    g.add_argument("--orientation", choices=sorted(_ORIENT))
    g.add_argument("--seed", type=int, default=0, help="seed for the random family")
    g.add_argument("--p", type=float, default=0.5, help="arc probability for the random family")
    g.add_argument("--colors", type=int, default=4, help="palette size for the random family")
    g.add_argument("--complete", action="store_true", help="random family on the complete digraph")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    for name, func, text in (
        ("check", cmd_check, "report a rainbow triangle or 'none'"),
        ("classify", cmd_classify, "match against the extremal families"),
        ("stats", cmd_stats, "degree and saturation statistics"),
        ("moon", cmd_moon, "cycle certificate for a strong tournament"),
    ):
        c = sub.add_parser(name, help=text)
        c.add_argument("file")
        c.set_defaults(func=func)

    s = sub.add_parser("search", help="exact search problems on a digraph file")
    s.add_argument("problem", choices=["max-colors"])
    s.add_argument("file")
    s.add_argument("--force", action="store_true", help="allow digraphs above the soft arc cap")
    s.add_argument("--budget", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="verify a claim by exhaustive search")
    v.add_argument("--claim", choices=CLAIMS)
    v.add_argument("--theorem", type=int, choices=[2, 3])
    v.add_argument("--n", type=int)
    v.add_argument("--budget", type=int, help="node budget for resumable claims")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--checkpoint", help="JSON file to resume from and save progress to")
    v.add_argument("--checkpoint-every", type=int, default=100_000)
    v.add_argument("-o", "--output", help="write the witness or counterexample here")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except fileio.RcdError as e:
        _err(f"{getattr(args, 'file', '')}: {e}")
    except (UsageError, ConstructionError, DigraphError, ValueError) as e:
        _err(str(e))
    except OSError as e:
        _err(str(e))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
