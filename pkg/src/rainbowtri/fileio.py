"""The ``rcd`` text format for colored digraphs and plain-text report rendering.

Format (version 1)::

    rcd 1
    n <order>
    a <u> <v> <color>      # one line per arc, 0-based ids
    # full-line comments and blank lines are ignored

The serializer writes arcs in canonical arc order.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO, Union

from .coloring import ColoredDigraph
from .digraph import Digraph

PathLike = Union[str, Path]


class RcdError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str) -> list[tuple[str, int]]:
    out, col = [], 0
    for part in text.split():
        col = text.index(part, col)
        out.append((part, col + 1))
        col += len(part)
    return out


def _int(tok: tuple[str, int], lineno: int, what: str) -> int:
    s, col = tok
    if not s.isdigit():
        raise RcdError(f"expected non-negative integer {what}, got {s!r}", lineno, col)
    return int(s)


def parse_lines(lines: Iterable[str]) -> ColoredDigraph:
    state = "header"
    n = 0
    colors: dict[tuple[int, int], int] = {}
    last = 0
    for lineno, raw in enumerate(lines, start=1):
        last = lineno
        text = raw.rstrip("\n")
        if not text.strip() or text.lstrip().startswith("#"):
            continue
        toks = _tokens(text)
        head = toks[0][0]
        if state == "header":
            if head != "rcd":
                raise RcdError("file must start with 'rcd 1'", lineno, toks[0][1])
            if len(toks) != 2 or toks[1][0] != "1":
                raise RcdError("unsupported version; expected 'rcd 1'", lineno, toks[-1][1])
            state = "order"
        elif state == "order":
            if head != "n" or len(toks) != 2:
                raise RcdError("expected 'n <order>'", lineno, toks[0][1])
            n = _int(toks[1], lineno, "order")
            state = "arcs"
        else:
            if head != "a":
                raise RcdError(f"unknown record {head!r}", lineno, toks[0][1])
            if len(toks) != 4:
                raise RcdError("expected 'a <u> <v> <color>'", lineno, toks[0][1])
            u = _int(toks[1], lineno, "vertex")
            v = _int(toks[2], lineno, "vertex")
            c = _int(toks[3], lineno, "color")
            for tok, x in ((toks[1], u), (toks[2], v)):
                if x >= n:
                    raise RcdError(f"vertex {x} out of range for order {n}", lineno, tok[1])
            if u == v:
                raise RcdError(f"loop at vertex {u}", lineno, toks[1][1])
            if (u, v) in colors:
                raise RcdError(f"duplicate arc ({u}, {v})", lineno, toks[1][1])
            colors[(u, v)] = c
    if state != "arcs":
        raise RcdError("missing 'rcd 1' header or 'n' line", last + 1)
    return ColoredDigraph.from_mapping(Digraph.from_arcs(n, colors), colors)


def parse(source: Union[str, TextIO]) -> ColoredDigraph:
    """Parse rcd text (a string or an open text stream)."""
    if isinstance(source, str):
        return parse_lines(source.splitlines())
    return parse_lines(source)


def read(path: PathLike) -> ColoredDigraph:
    with open(path) as fh:
        return parse_lines(fh)


def serialize(D: ColoredDigraph) -> str:
    lines = ["rcd 1", f"n {D.n}"]
    lines += [f"a {u} {v} {c}" for (u, v), c in zip(D.digraph.arcs(), D.colors)]
    return "\n".join(lines) + "\n"


def write(D: ColoredDigraph, path: PathLike) -> None:
    Path(path).write_text(serialize(D))


# ------------------------------------------------------------------ reports

TRAILER_BEGIN = "--- report ---"
TRAILER_END = "--- end ---"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def render_report(report, witness_path: str = "-") -> str:
    """Human-readable summary followed by a machine-readable trailer block.

    Everything in the trailer is deterministic; timing lives above it.
    """
    lines = [
        f"claim {report.claim}: {report.universe}",
        f"instances: {report.raw_count} raw, {report.canonical_count} canonical",
        f"work: {report.stats.nodes} nodes, {report.stats.bound_prunes} bound prunes, "
        f"{report.stats.rainbow_prunes} rainbow prunes, {report.elapsed:.3f}s",
    ]
    for row in report.table:
        lines.append("  " + " ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
    if report.counterexample is not None:
        lines.append("counterexample:")
        lines += ["  " + s for s in serialize(report.counterexample).splitlines()]
    if report.checkpoint is not None:
        lines.append(f"stopped at instance {report.checkpoint.get('instance', 0)}, "
                     f"prefix {_fmt(report.checkpoint.get('prefix', []))}")
    lines.append(TRAILER_BEGIN)
    lines.append(f"claim: {report.claim}")
    lines.append(f"verdict: {report.verdict}")
    for k, v in report.numbers.items():
        lines.append(f"{k}: {_fmt(v)}")
    lines.append(f"witness: {witness_path}")
    lines.append(TRAILER_END)
    return "\n".join(lines) + "\n"


def parse_trailer(text: str) -> dict[str, str]:
    body = text.split(TRAILER_BEGIN, 1)[1].split(TRAILER_END, 1)[0]
    out = {}
    for line in body.strip().splitlines():
        k, _, v = line.partition(": ")
        out[k] = v
    return out
