"""Text formats: the graph DSL, move scripts, JSON records and DOT output.

Graphs are written as ``chain [0, 0, -2]``, ``cycle (0, 0, -1, -1)`` or::

    graph {
      E: -1  A: -2  B: -2  C: -2
      E--A  E--B  E--C
    }

``#`` starts a comment. Repeating an edge line makes a multi-edge.
"""
from __future__ import annotations

import json
import re

from .errors import DslSyntaxError, DuplicateVertex, GraphError
from .graph import DualGraph, Shape, cycle_order, path_order, shape
from .moves import LOWER, RAISE, BlowDown, Elementary, InnerBlowUp, OuterBlowUp, move_from_record

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<edge>--)
  | (?P<int>[+-]?\d+(?![A-Za-z_]))
  | (?P<name>[A-Za-z0-9_]+)
  | (?P<punct>[\[\](){}:,;])
  """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text):
        self.items = []
        line, col0 = 1, 0
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
            kind = m.lastgroup
            if kind != "ws":
                self.items.append((kind, m.group(), line, pos - col0 + 1))
            for i, ch in enumerate(m.group()):
                if ch == "\n":
                    line, col0 = line + 1, pos + i + 1
            pos = m.end()
        self.i = 0
        self.end = (line, pos - col0 + 1)

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, *self.end)

    def take(self, kind=None, value=None, what=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise DslSyntaxError(f"expected {what or value or kind}, found {found}", tok[2], tok[3])
        self.i += 1
        return tok

    def at(self, value):
        return self.peek()[1] == value


def _weights(toks, close):
    out = []
    while not toks.at(close):
        out.append(int(toks.take("int", what="an integer weight")[1]))
        if toks.at(","):
            toks.take()
    toks.take(value=close)
    return out


def _graph_block(toks):
    toks.take(value="{")
    weights = {}
    edges = []
    while not toks.at("}"):
        kind, name, line, col = toks.take(what="a vertex name or '}'")
        if kind not in ("name", "int"):
            raise DslSyntaxError(f"expected a vertex name, found {name!r}", line, col)
        if toks.at(":"):
            toks.take()
            if name in weights:
                raise DuplicateVertex(f"vertex {name!r} declared twice (line {line}, column {col})")
            weights[name] = int(toks.take("int", what="an integer weight")[1])
        elif toks.peek()[0] == "edge":
            toks.take()
            other = toks.take(what="a vertex name")
            edges.append((name, other[1], line, col))
        else:
            tok = toks.peek()
            raise DslSyntaxError(f"expected ':' or '--' after {name!r}", tok[2], tok[3])
        while toks.at(",") or toks.at(";"):
            toks.take()
    toks.take(value="}")
    for a, b, line, col in edges:
        for x in (a, b):
            if x not in weights:
                raise DslSyntaxError(f"edge uses undeclared vertex {x!r}", line, col)
    return DualGraph(weights, [(a, b) for a, b, _, _ in edges])


def parse_graph(text):
    """Parse one graph written in the DSL."""
    toks = _Tokens(text)
    kind, word, line, col = toks.take("name", what="'chain', 'cycle' or 'graph'")
    if word == "chain":
        toks.take(value="[")
        g = DualGraph.chain(_weights(toks, "]"))
    elif word == "cycle":
        toks.take(value="(")
        g = DualGraph.cycle(_weights(toks, ")"))
    elif word == "graph":
        g = _graph_block(toks)
    else:
        raise DslSyntaxError(f"unknown keyword {word!r}", line, col)
    tok = toks.peek()
    if tok[0] is not None:
        raise DslSyntaxError(f"unexpected trailing input {tok[1]!r}", tok[2], tok[3])
    return g


# printing


def _default_ids(n):
    return [f"v{i + 1}" for i in range(n)]


def _ints(ws):
    return ", ".join(str(w) for w in ws)


def format_graph(g):
    """DSL text that parses back to exactly ``g`` (same ids, weights and edges)."""
    s = shape(g)
    n = len(g)
    if s in (Shape.SINGLE, Shape.LINEAR) and sorted(g.vertices) == sorted(_default_ids(n)):
        if n == 1 or (g.valency("v1") == 1 and path_order(g, "v1") == _default_ids(n)):
            return f"chain [{_ints(g.weight(v) for v in _default_ids(n))}]"
    if s is Shape.CIRCULAR and sorted(g.vertices) == sorted(_default_ids(n)):
        ids = _default_ids(n)
        if n == 2 or cycle_order(g, "v1", "v2") == ids:
            return f"cycle ({_ints(g.weight(v) for v in ids)})"
    lines = ["graph {"]
    lines += [f"  {v}: {g.weight(v)}" for v in g.vertices]
    lines += [f"  {a} -- {b}" for a, b in g.edges]
    lines.append("}")
    return "\n".join(lines)


def format_weights(g):
    """Compact text that forgets vertex ids; chains and cycles read from their zeros."""
    if g.is_empty():
        return "empty"
    s = shape(g)
    if s in (Shape.SINGLE, Shape.LINEAR):
        ws = [g.weight(v) for v in path_order(g)]
        return f"chain [{_ints(max(ws, ws[::-1]))}]"
    if s is Shape.CIRCULAR:
        ws = [g.weight(v) for v in cycle_order(g)]
        n = len(ws)
        reads = [ws[i:] + ws[:i] for i in range(n)]
        reads += [r[::-1] for r in reads]
        return f"cycle ({_ints(max(reads))})"
    return format_graph(g)


def to_dot(g, name="G"):
    """Graphviz text with one node per vertex and one edge line per edge copy."""
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}" [label="{v}: {g.weight(v)}"];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# move scripts


def format_moves(moves):
    return "".join(f"{m}\n" for m in moves)


def parse_moves(text):
    """Parse a move script: ``down V``, ``outer V``, ``inner U W``,
    ``elem Z toward W``, ``elem Z raise`` or ``elem Z lower``.

    Any line may end with ``-> NEW`` naming the fresh vertex. Missing names
    are left ``None`` and minted when the move runs.
    """
    out = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        new = None
        if "->" in line:
            line, new = (x.strip() for x in line.split("->", 1))
        w = line.split()
        try:
            if w[0] == "down" and len(w) == 2 and new is None:
                out.append(BlowDown(w[1]))
            elif w[0] == "outer" and len(w) == 2:
                out.append(OuterBlowUp(w[1], new))
            elif w[0] == "inner" and len(w) == 3:
                out.append(InnerBlowUp(w[1], w[2], new))
            elif w[0] == "elem" and len(w) == 4 and w[2] == "toward":
                out.append(Elementary(w[1], toward=w[3], new=new))
            elif w[0] == "elem" and len(w) == 3 and w[2] in (RAISE, LOWER):
                out.append(Elementary(w[1], end=w[2], new=new))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise DslSyntaxError(f"malformed move {raw.strip()!r}", ln, 1) from None
    return out


def moves_from_json(records):
    return [move_from_record(r["op"], r["args"]) for r in records]


def dumps(obj):
    """Canonical JSON: sorted keys, no extra whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_error_message(exc):
    if isinstance(exc, (DslSyntaxError, GraphError)):
        return str(exc)
    return f"{type(exc).__name__}: {exc}"
