"""Text formats for matroids, graphs and witnesses.

Matroid file::

    matroid uniform|graphic|linear
    n r                          (uniform)
    vertices m, then m "u v"     (graphic)
    field p, rows r cols n, then r rows of n integers   (linear)
    weights w_0 ... w_{n-1}      (optional, default all 1)

Graph file: ``graph n m`` followed by ``m`` lines ``u v``.
Witness file: one set per line, space-separated ids; ``-`` is the empty set.

Lines starting with ``#`` and blank lines are ignored in every format.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError, ParseError
from .matchings import Graph
from .matroids import GraphicMatroid, LinearMatroid, Matroid, UniformMatroid


@dataclass
class Token:
    text: str
    line: int
    column: int


def _lines(text: str) -> Iterator[tuple[int, list[Token]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks, col = [], 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append(Token(part, lineno, col + 1))
            col += len(part)
        yield lineno, toks


class _Reader:
    def __init__(self, text: str):
        self._it = _lines(text)
        self.last_line = 0

    def next(self, what: str) -> list[Token]:
        try:
            lineno, toks = next(self._it)
        except StopIteration:
            raise ParseError(f"unexpected end of input, expected {what}", self.last_line + 1) from None
        self.last_line = lineno
        return toks

    def peek_rest(self) -> list[tuple[int, list[Token]]]:
        return list(self._it)


def _int(tok: Token, what: str, low: int | None = 0) -> int:
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok.text!r}", tok.line, tok.column) from None
    if low is not None and value < low:
        raise ParseError(f"{what} must be at least {low}, got {value}", tok.line, tok.column)
    return value


def _expect(toks: list[Token], keyword: str | None, count: int, what: str, line: int) -> list[Token]:
    start = 0
    if keyword is not None:
        if not toks or toks[0].text != keyword:
            got = toks[0] if toks else None
            raise ParseError(f"expected '{keyword}'", line, got.column if got else 1)
        start = 1
    body = toks[start:]
    if len(body) != count:
        col = body[count].column if len(body) > count else (toks[-1].column + len(toks[-1].text) if toks else 1)
        raise ParseError(f"expected {count} value(s) for {what}, got {len(body)}", line, col)
    return body


@dataclass
class MatroidSpec:
    matroid: Matroid
    weights: list[int]
    kind: str


def parse_matroid(text: str) -> MatroidSpec:
    rd = _Reader(text)
    head = rd.next("matroid header")
    line = rd.last_line
    kind_tok = _expect(head, "matroid", 1, "matroid type", line)[0]
    kind = kind_tok.text
    try:
        if kind == "uniform":
            toks = rd.next("'n r'")
            n_tok, r_tok = _expect(toks, None, 2, "'n r'", rd.last_line)
            n, r = _int(n_tok, "n"), _int(r_tok, "r")
            if r > n:
                raise ParseError(f"rank {r} exceeds ground size {n}", r_tok.line, r_tok.column)
            M: Matroid = UniformMatroid(n, r)
            n_elems = n
        elif kind == "graphic":
            toks = rd.next("'vertices m'")
            v_tok, m_tok = _expect(toks, None, 2, "'vertices m'", rd.last_line)
            nv, m = _int(v_tok, "vertex count"), _int(m_tok, "edge count")
            edges = []
            for i in range(m):
                toks = rd.next(f"edge {i}")
                u_tok, w_tok = _expect(toks, None, 2, f"edge {i}", rd.last_line)
                u, w = _int(u_tok, "vertex"), _int(w_tok, "vertex")
                for tok, x in ((u_tok, u), (w_tok, w)):
                    if x >= nv:
                        raise ParseError(f"vertex {x} out of range 0..{nv - 1}", tok.line, tok.column)
                edges.append((u, w))
            M = GraphicMatroid(nv, edges)
            n_elems = m
        elif kind == "linear":
            toks = rd.next("'field p'")
            p_tok = _expect(toks, "field", 1, "field", rd.last_line)[0]
            p = _int(p_tok, "field size", 2)
            toks = rd.next("'rows r cols n'")
            line = rd.last_line
            if len(toks) != 4 or toks[0].text != "rows" or toks[2].text != "cols":
                raise ParseError("expected 'rows r cols n'", line, toks[0].column)
            r, n = _int(toks[1], "row count"), _int(toks[3], "column count")
            rows = []
            for i in range(r):
                toks = rd.next(f"matrix row {i}")
                vals = _expect(toks, None, n, f"matrix row {i}", rd.last_line)
                row = []
                for tok in vals:
                    x = _int(tok, "matrix entry")
                    if x >= p:
                        raise ParseError(f"entry {x} is not reduced mod {p}", tok.line, tok.column)
                    row.append(x)
                rows.append(row)
            try:
                M = LinearMatroid(rows, p, cols=n)
            except InputError as exc:
                raise ParseError(str(exc), p_tok.line, p_tok.column) from None
            n_elems = n
        else:
            raise ParseError(f"unknown matroid type {kind!r}", kind_tok.line, kind_tok.column)
    except InputError as exc:
        raise ParseError(str(exc), rd.last_line) from None
    weights = [1] * n_elems
    rest = rd.peek_rest()
    if rest:
        lineno, toks = rest[0]
        vals = _expect(toks, "weights", n_elems, "weights", lineno)
        weights = [_int(t, "weight", 1) for t in vals]
        if len(rest) > 1:
            extra = rest[1]
            raise ParseError("unexpected content after weights", extra[0], extra[1][0].column)
    return MatroidSpec(M, weights, kind)


def format_matroid(M: Matroid, weights: Sequence[int] | None = None) -> str:
    out: list[str] = []
    if isinstance(M, UniformMatroid):
        out += ["matroid uniform", f"{M.n} {M.r}"]
        n = M.n
    elif isinstance(M, GraphicMatroid):
        out += ["matroid graphic", f"{M.vertices} {len(M.edges)}"]
        out += [f"{u} {v}" for u, v in M.edges]
        n = len(M.edges)
    elif isinstance(M, LinearMatroid):
        r, n = M.shape
        out += ["matroid linear", f"field {M.p}", f"rows {r} cols {n}"]
        out += [" ".join(map(str, row)) for row in M.matrix]
    else:
        raise InputError(f"cannot serialize {type(M).__name__}; only uniform, graphic and linear matroids")
    if weights is not None:
        out.append("weights " + " ".join(str(weights[e]) for e in range(n)))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    rd = _Reader(text)
    toks = rd.next("graph header")
    n_tok, m_tok = _expect(toks, "graph", 2, "'graph n m'", rd.last_line)
    n, m = _int(n_tok, "vertex count"), _int(m_tok, "edge count")
    edges = []
    seen: set[tuple[int, int]] = set()
    for i in range(m):
        toks = rd.next(f"edge {i}")
        u_tok, v_tok = _expect(toks, None, 2, f"edge {i}", rd.last_line)
        u, v = _int(u_tok, "vertex"), _int(v_tok, "vertex")
        for tok, x in ((u_tok, u), (v_tok, v)):
            if x >= n:
                raise ParseError(f"vertex {x} out of range 0..{n - 1}", tok.line, tok.column)
        if u == v:
            raise ParseError(f"loop at vertex {u}", u_tok.line, u_tok.column)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"repeated edge {u} {v}", u_tok.line, u_tok.column)
        seen.add(key)
        edges.append((u, v))
    rest = rd.peek_rest()
    if rest:
        raise ParseError("unexpected content after the edge list", rest[0][0], rest[0][1][0].column)
    return Graph(n, edges)


def format_graph(G: Graph) -> str:
    return "\n".join([f"graph {G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]) + "\n"


def parse_witness(text: str) -> list[frozenset[int]]:
    sets = []
    for _, toks in _lines(text):
        if len(toks) == 1 and toks[0].text == "-":
            sets.append(frozenset())
            continue
        sets.append(frozenset(_int(t, "element id") for t in toks))
    return sets


def format_witness(sets: Iterable[Iterable[int]]) -> str:
    lines = []
    for s in sets:
        items = sorted(s)
        lines.append(" ".join(map(str, items)) if items else "-")
    return "\n".join(lines) + "\n"


def read_header_params(text: str) -> dict[str, int]:
    """``# key=value`` pairs from comment lines (written by the generators)."""
    out: dict[str, int] = {}
    for raw in text.splitlines():
        s = raw.strip()
        if not s.startswith("#"):
            continue
        for part in s[1:].split():
            if "=" in part:
                key, _, val = part.partition("=")
                try:
                    out[key] = int(val)
                except ValueError:
                    pass
    return out
