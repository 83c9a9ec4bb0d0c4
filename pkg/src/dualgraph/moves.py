"""Blow-ups, blow-downs and elementary moves, plus replayable move traces."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BadDirection,
    DualGraphError,
    LoopCreation,
    NonTermination,
    NoSuchEdge,
    NotMinusOne,
    NotZeroVertex,
    TraceMismatch,
    TraceReplayError,
    ValencyTooHigh,
)
from .graph import DualGraph, canonicalize

RAISE = "raise"
LOWER = "lower"


# primitive rules


def _take_id(g, new):
    if new is None:
        return g.fresh_id()
    if new in g:
        raise ValueError(f"vertex id {new!r} is already in use")
    return new


def blow_down(g, v):
    """Contract the (-1)-vertex ``v``; its distinct neighbours gain 1 and get joined."""
    g._check(v)
    if g._w[v] != -1:
        raise NotMinusOne(f"{v!r} has weight {g._w[v]}, not -1")
    nbs = g._adj[v]
    val = sum(nbs.values())
    if val > 2:
        raise ValencyTooHigh(f"{v!r} has valency {val}")
    if len(nbs) == 1 and val == 2:
        raise LoopCreation(f"{v!r} is doubly joined to {next(iter(nbs))!r}")
    w, adj = g._copy_parts()
    del w[v]
    del adj[v]
    for u in nbs:
        del adj[u][v]
        w[u] += 1
    if len(nbs) == 2:
        a, b = nbs
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    return DualGraph._raw(w, adj, g._fresh)


def blow_up_outer(g, v, new=None):
    """Attach a fresh (-1)-vertex to ``v`` and lower the weight of ``v`` by 1."""
    g._check(v)
    e = _take_id(g, new)
    w, adj = g._copy_parts()
    w[v] -= 1
    w[e] = -1
    adj[e] = {v: 1}
    adj[v][e] = 1
    return DualGraph._raw(w, adj, g._fresh)


def blow_up_inner(g, u, x, new=None):
    """Subdivide one edge ``u--x`` by a fresh (-1)-vertex; both ends lose 1."""
    g._check(u)
    g._check(x)
    if u == x or not g._adj[u].get(x):
        raise NoSuchEdge(f"no edge {u!r}--{x!r}")
    e = _take_id(g, new)
    w, adj = g._copy_parts()
    w[u] -= 1
    w[x] -= 1
    w[e] = -1
    for a, b in ((u, x), (x, u)):
        if adj[a][b] == 1:
            del adj[a][b]
        else:
            adj[a][b] -= 1
        adj[a][e] = 1
    adj[e] = {u: 1, x: 1}
    return DualGraph._raw(w, adj, g._fresh)


# move values


@dataclass(frozen=True)
class BlowDown:
    v: object
    op = "down"

    @property
    def args(self):
        return [self.v]

    def apply(self, g):
        return blow_down(g, self.v)

    def __str__(self):
        return f"down {self.v}"


@dataclass(frozen=True)
class OuterBlowUp:
    v: object
    new: object
    op = "outer"

    @property
    def args(self):
        return [self.v, self.new]

    def apply(self, g):
        return blow_up_outer(g, self.v, self.new)

    def __str__(self):
        return f"outer {self.v} -> {self.new}"


@dataclass(frozen=True)
class InnerBlowUp:
    u: object
    w: object
    new: object
    op = "inner"

    @property
    def args(self):
        return [self.u, self.w, self.new]

    def apply(self, g):
        return blow_up_inner(g, self.u, self.w, self.new)

    def __str__(self):
        return f"inner {self.u} {self.w} -> {self.new}"


@dataclass(frozen=True)
class Elementary:
    """Composite move at a 0-vertex; ``expansion`` holds the two primitive steps.

    For a 0-vertex of valency 2, ``toward`` is the neighbour whose weight
    drops. For an end 0-vertex ``end`` is ``"raise"`` or ``"lower"``. The
    fresh 0-vertex that replaces ``zero`` is ``new``.
    """

    zero: object
    toward: object = None
    end: str = None
    new: object = None
    expansion: tuple = field(default=(), compare=False)
    op = "elem"

    @property
    def args(self):
        if self.end is not None:
            return [self.zero, self.end, self.new]
        return [self.zero, "toward", self.toward, self.new]

    def apply(self, g):
        return elementary_move(g, self.zero, toward=self.toward, end=self.end, new=self.new)[0]

    def __str__(self):
        if self.end is not None:
            return f"elem {self.zero} {self.end} -> {self.new}"
        return f"elem {self.zero} toward {self.toward} -> {self.new}"


def _plan_elementary(g, zero, toward, end):
    g._check(zero)
    if g._w[zero] != 0:
        raise NotZeroVertex(f"{zero!r} has weight {g._w[zero]}, not 0")
    nbs = g._adj[zero]
    val = sum(nbs.values())
    if val > 2:
        raise ValencyTooHigh(f"{zero!r} has valency {val}")
    if val == 0:
        raise BadDirection(f"{zero!r} is isolated")
    if (toward is None) == (end is None):
        raise BadDirection("give exactly one of a neighbour or raise/lower")
    if val == 1:
        if end not in (RAISE, LOWER):
            raise BadDirection(f"end vertex {zero!r} needs 'raise' or 'lower'")
        (u,) = nbs
        return ("outer", zero) if end == RAISE else ("inner", zero, u)
    if toward is None or toward not in nbs:
        raise BadDirection(f"{zero!r} has valency 2; name the neighbour whose weight drops")
    return ("inner", toward, zero)


def elementary_move(g, zero, toward=None, end=None, new=None):
    """Apply an elementary move and return ``(graph, Elementary)``.

    For a 0-vertex of valency 2 the neighbour ``toward`` loses 1 and the
    other neighbour gains 1. For an end 0-vertex pass ``end="raise"`` or
    ``end="lower"`` to change the single neighbour accordingly.
    """
    plan = _plan_elementary(g, zero, toward, end)
    if plan[0] == "outer":
        first = OuterBlowUp(zero, _take_id(g, new))
    else:
        first = InnerBlowUp(plan[1], plan[2], _take_id(g, new))
    h = first.apply(g)
    try:
        out = blow_down(h, zero)
    except DualGraphError as exc:
        raise BadDirection(str(exc)) from exc
    return out, Elementary(zero, toward, end, first.new, (first, BlowDown(zero)))


def elementary(g, zero, direction):
    """Graph-only elementary move; ``direction`` is a neighbour, ``"raise"`` or ``"lower"``.

    A neighbour literally named ``raise`` or ``lower`` takes precedence.
    """
    if direction in (RAISE, LOWER) and direction not in g._adj.get(zero, {}):
        return elementary_move(g, zero, end=direction)[0]
    return elementary_move(g, zero, toward=direction)[0]


# traces


@dataclass(frozen=True)
class MoveTrace:
    """Moves together with the canonical form and vertex set of the start graph."""

    start: object
    start_vertices: frozenset
    moves: tuple = ()

    @classmethod
    def empty_for(cls, g):
        return cls(canonicalize(g), frozenset(g.vertices), ())

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def primitives(self):
        """Moves with every elementary move replaced by its expansion."""
        out = []
        for m in self.moves:
            out.extend(m.expansion if isinstance(m, Elementary) else [m])
        return out

    def to_records(self):
        return [{"op": m.op, "args": list(m.args)} for m in self.moves]


def apply_trace(g, t):
    """Replay ``t`` from ``g``.

    Raises :class:`TraceMismatch` when ``g`` is not the start graph of the
    trace and :class:`TraceReplayError` carrying the index of a failing move.
    """
    if canonicalize(g) != t.start or frozenset(g.vertices) != t.start_vertices:
        raise TraceMismatch("trace does not start at this graph")
    return replay(g, t.moves)


def replay(g, moves):
    for i, m in enumerate(moves):
        try:
            g = m.apply(g)
        except DualGraphError as exc:
            raise TraceReplayError(i, exc) from exc
    return g


def move_from_record(op, args):
    """Inverse of ``{"op": m.op, "args": m.args}``."""
    args = list(args)
    if op == "down" and len(args) == 1:
        return BlowDown(args[0])
    if op == "outer" and len(args) == 2:
        return OuterBlowUp(args[0], args[1])
    if op == "inner" and len(args) == 3:
        return InnerBlowUp(args[0], args[1], args[2])
    if op == "elem" and len(args) == 4 and args[1] == "toward":
        return Elementary(args[0], toward=args[2], new=args[3])
    if op == "elem" and len(args) == 3 and args[1] in (RAISE, LOWER):
        return Elementary(args[0], end=args[1], new=args[2])
    raise ValueError(f"malformed move record {op!r} {args!r}")


class Rewriter:
    """Applies moves to a working graph and records them.

    Every method returns the id a caller needs next: the fresh vertex for
    blow-ups and the replacement 0-vertex for elementary moves.
    """

    def __init__(self, g, limit=10_000):
        self.start = g
        self.graph = g
        self.moves = []
        self.limit = limit

    def _push(self, move, g):
        self.moves.append(move)
        self.graph = g
        if len(self.moves) > self.limit:
            raise NonTermination(f"more than {self.limit} moves")

    def down(self, v):
        self._push(BlowDown(v), blow_down(self.graph, v))

    def outer(self, v):
        m = OuterBlowUp(v, self.graph.fresh_id())
        self._push(m, m.apply(self.graph))
        return m.new

    def inner(self, u, x):
        m = InnerBlowUp(u, x, self.graph.fresh_id())
        self._push(m, m.apply(self.graph))
        return m.new

    def elem(self, zero, toward=None, end=None):
        g, m = elementary_move(self.graph, zero, toward=toward, end=end)
        self._push(m, g)
        return m.new

    def trace(self):
        return MoveTrace(canonicalize(self.start), frozenset(self.start.vertices), tuple(self.moves))
