"""Score files, graph files and run reports.

Score file (whitespace separated, ``#`` starts a comment)::

    n
    name r            # one header per vertex
    score p u1 .. up  # r lines; p = 0 gives the empty-set score

Graph file::

    n m
    u v               # m lines, 0-based vertex ids
    colors c1 .. cn   # optional

Reports are JSON objects with sorted keys on one line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, InvalidOperation

from .graphs import UGraph
from .scores import MAX_SCORE, Instance, make_entry


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.message = message
        self.line = line


@dataclass
class ScaleTransform:
    """How decimal scores were turned into integers: ``int = round(x * 10^digits) + shift``."""

    digits: int
    shifts: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"digits": self.digits, "shifts": dict(sorted(self.shifts.items()))}


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _int_field(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {tok!r}", no) from None


def _score_value(tok: str, no: int, digits: int | None) -> int:
    if digits is None:
        try:
            value = int(tok)
        except ValueError:
            if any(c in tok for c in ".eE"):
                raise ParseError(f"decimal score {tok!r} needs --scale", no) from None
            raise ParseError(f"bad score {tok!r}", no) from None
        return value
    try:
        d = Decimal(tok)
    except InvalidOperation:
        raise ParseError(f"bad score {tok!r}", no) from None
    if not d.is_finite():
        raise ParseError(f"bad score {tok!r}", no)
    return int((d.scaleb(digits)).quantize(Decimal(1), rounding=ROUND_HALF_EVEN))


def parse_scores(text: str, scale: int | None = None) -> tuple[Instance, ScaleTransform | None]:
    """Parse score-file text into an instance with ``t = k = 0``.

    With ``scale`` set, decimal scores are multiplied by ``10**scale`` and
    rounded; a vertex with negative values is shifted so its minimum is 0.
    Zero scores on non-empty parent sets are dropped.
    """
    if scale is not None and scale < 0:
        raise ParseError("scale must be non-negative")
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty score file") from None
    if len(head) != 1:
        raise ParseError("first line must hold the vertex count", no)
    n = _int_field(head[0], no, "vertex count")
    if n < 1:
        raise ParseError("vertex count must be positive", no)

    blocks = []
    for _ in range(n):
        try:
            no, hdr = next(it)
        except StopIteration:
            raise ParseError(f"expected {n} vertex blocks, found {len(blocks)}") from None
        if len(hdr) != 2:
            raise ParseError("vertex header must be 'name r'", no)
        name, r = hdr[0], _int_field(hdr[1], no, "entry count")
        if r < 0:
            raise ParseError("entry count must be non-negative", no)
        rows = []
        for _ in range(r):
            try:
                no, row = next(it)
            except StopIteration:
                raise ParseError(f"vertex {name}: expected {r} entries") from None
            if len(row) < 2:
                raise ParseError("entry must be 'score p parents...'", no)
            score = _score_value(row[0], no, scale)
            p = _int_field(row[1], no, "parent count")
            if p < 0 or len(row) != p + 2:
                raise ParseError(f"entry announces {p} parents but lists {len(row) - 2}", no)
            rows.append((no, score, row[2:]))
        blocks.append((no, name, rows))
    extra = next(it, None)
    if extra is not None:
        raise ParseError("trailing content after the last vertex block", extra[0])

    names = [b[1] for b in blocks]
    index = {}
    for no, name, _ in blocks:
        if name in index:
            raise ParseError(f"duplicate vertex name {name!r}", no)
        index[name] = len(index)

    transform = ScaleTransform(scale) if scale is not None else None
    entries, empty = [], []
    for _, name, rows in blocks:
        shift = 0
        if rows and transform is not None:
            shift = max(0, -min(s for _, s, _ in rows))
            if shift:
                transform.shifts[name] = shift
        seen = set()
        mine, zero = [], 0
        for no, score, parents in rows:
            ids = []
            for p in parents:
                if p not in index:
                    raise ParseError(f"unknown parent {p!r}", no)
                if p == name:
                    raise ParseError(f"vertex {name!r} lists itself as a parent", no)
                ids.append(index[p])
            key = frozenset(ids)
            if len(key) != len(ids):
                raise ParseError("repeated parent inside one parent set", no)
            if key in seen:
                raise ParseError(f"duplicate parent set for {name!r}", no)
            seen.add(key)
            score += shift
            if score < 0:
                raise ParseError(f"negative score {score} (use --scale for log scores)", no)
            if score > MAX_SCORE:
                raise ParseError(f"score {score} overflows 64 bits", no)
            if not ids:
                zero = score
            elif score > 0:
                mine.append(make_entry(score, ids))
        mine.sort(key=lambda e: (e.size, e.parents))
        entries.append(tuple(mine))
        empty.append(zero)
    return Instance(tuple(names), tuple(entries), tuple(empty)), transform


def read_scores(path: str, scale: int | None = None) -> tuple[Instance, ScaleTransform | None]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_scores(text, scale)
    except ParseError as err:
        raise ParseError(err.message, err.line, path) from None


def format_scores(instance: Instance) -> str:
    """Inverse of :func:`parse_scores` (integer scores, entries in canonical order)."""
    inst = instance.canonical()
    out = [str(inst.n)]
    for v, name in enumerate(inst.names):
        rows = []
        if inst.empty[v]:
            rows.append(f"{inst.empty[v]} 0")
        for e in inst.entries[v]:
            rows.append(" ".join([str(e.score), str(e.size)] + [inst.names[u] for u in e.parents]))
        out.append(f"{name} {len(rows)}")
        out.extend(rows)
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> tuple[UGraph, list[int] | None]:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty graph file") from None
    if len(head) != 2:
        raise ParseError("first line must be 'n m'", no)
    n, m = (_int_field(x, no, "count") for x in head)
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", no)
    edges = set()
    for _ in range(m):
        try:
            no, row = next(it)
        except StopIteration:
            raise ParseError(f"expected {m} edges") from None
        if len(row) != 2:
            raise ParseError("edge line must be 'u v'", no)
        u, v = (_int_field(x, no, "vertex") for x in row)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad edge {u} {v}", no)
        if (min(u, v), max(u, v)) in edges:
            raise ParseError(f"duplicate edge {u} {v}", no)
        edges.add((min(u, v), max(u, v)))
    colors = None
    rest = next(it, None)
    if rest is not None:
        no, row = rest
        if row[0] != "colors" or len(row) != n + 1:
            raise ParseError(f"expected 'colors' followed by {n} values", no)
        colors = [_int_field(x, no, "color") for x in row[1:]]
        extra = next(it, None)
        if extra is not None:
            raise ParseError("trailing content after the color line", extra[0])
    return UGraph.of(n, edges), colors


def read_graph(path: str) -> tuple[UGraph, list[int] | None]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_graph(text)
    except ParseError as err:
        raise ParseError(err.message, err.line, path) from None


def format_graph(g: UGraph, colors=None) -> str:
    out = [f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in sorted(g.edges)]
    if colors is not None:
        out.append("colors " + " ".join(map(str, colors)))
    return "\n".join(out) + "\n"


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
