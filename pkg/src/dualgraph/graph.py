"""Weighted dual graphs: the immutable data model, shapes and canonical forms."""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import (
    Disconnected,
    DuplicateVertex,
    EmptyGraph,
    LoopRejected,
    UnknownVertex,
)

_FRESH = re.compile(r"^E(\d+)$")


def vertex_key(v):
    """Total order on vertex ids: ints first, then strings in natural order."""
    if isinstance(v, int):
        return (0, v, ())
    parts = re.split(r"(\d+)", str(v))
    return (1, 0, tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p))


class Shape(str, Enum):
    SINGLE = "SingleVertex"
    LINEAR = "Linear"
    CIRCULAR = "Circular"
    BRANCHED = "Branched"

    def __str__(self):
        return self.value


class DualGraph:
    """A connected, loop-free multigraph with integer vertex weights.

    Instances are immutable. Rewrite moves build new graphs and keep a
    counter used to mint fresh vertex ids ``E1, E2, ...``.

    Parameters
    ----------
    weights : mapping of vertex id to int
    edges : iterable of pairs
        Each pair adds one edge; repeating a pair makes a multi-edge.
    """

    __slots__ = ("_w", "_adj", "_fresh", "_hash")

    def __init__(self, weights, edges=()):
        w = {}
        items = weights.items() if hasattr(weights, "items") else weights
        for v, x in items:
            if v in w:
                raise DuplicateVertex(f"vertex {v!r} declared twice")
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"weight of {v!r} must be an int, got {x!r}")
            w[v] = x
        adj = {v: {} for v in w}
        for e in edges:
            u, v = e
            for x in (u, v):
                if x not in w:
                    raise UnknownVertex(f"edge {u!r}--{v!r} uses unknown vertex {x!r}")
            if u == v:
                raise LoopRejected(f"loop at {u!r}")
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
        self._init(w, adj, 0)
        if len(w) > 1 and not self._connected():
            raise Disconnected("graph is not connected")

    def _init(self, w, adj, fresh):
        self._w = w
        self._adj = adj
        self._fresh = max([fresh] + [int(m.group(1)) for m in map(_fresh_match, w) if m])
        self._hash = None

    @classmethod
    def _raw(cls, w, adj, fresh):
        g = cls.__new__(cls)
        g._init(w, adj, fresh)
        return g

    @classmethod
    def empty(cls):
        return cls._raw({}, {}, 0)

    @classmethod
    def chain(cls, weights, ids=None):
        """Linear graph ``[[w1, ..., wn]]`` with ids ``v1..vn`` by default."""
        ids = list(ids) if ids is not None else [f"v{i + 1}" for i in range(len(weights))]
        if not ids:
            raise EmptyGraph("a chain needs at least one vertex")
        return cls(zip(ids, weights), zip(ids, ids[1:]))

    @classmethod
    def cycle(cls, weights, ids=None):
        """Circular graph ``((w1, ..., wn))``; two vertices give a double edge."""
        ids = list(ids) if ids is not None else [f"v{i + 1}" for i in range(len(weights))]
        if len(ids) < 2:
            raise LoopRejected("a cycle needs at least two vertices")
        return cls(zip(ids, weights), zip(ids, ids[1:] + ids[:1]))

    # basic queries

    def __len__(self):
        return len(self._w)

    def __contains__(self, v):
        return v in self._w

    def __iter__(self):
        return iter(self._w)

    @property
    def vertices(self):
        return tuple(self._w)

    @property
    def weights(self):
        return dict(self._w)

    @property
    def fresh_counter(self):
        return self._fresh

    def weight(self, v):
        self._check(v)
        return self._w[v]

    def neighbors(self, v):
        """Distinct neighbours of ``v`` in deterministic order."""
        self._check(v)
        return tuple(sorted(self._adj[v], key=vertex_key))

    def multiplicity(self, u, v):
        self._check(u)
        self._check(v)
        return self._adj[u].get(v, 0)

    def valency(self, v):
        self._check(v)
        return sum(self._adj[v].values())

    @property
    def edges(self):
        """Edges as sorted pairs, repeated according to multiplicity."""
        out = []
        for u in self._w:
            for v, m in self._adj[u].items():
                a, b = sorted((u, v), key=vertex_key)
                if a == u:
                    out.extend([(a, b)] * m)
        return sorted(out, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))

    def is_empty(self):
        return not self._w

    def _check(self, v):
        if v not in self._w:
            raise UnknownVertex(f"unknown vertex {v!r}")

    def _connected(self, within=None):
        verts = self._w if within is None else within
        if not verts:
            return True
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y in verts and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(verts)

    # derived graphs

    def fresh_id(self):
        """Next unused id of the form ``E<k>``."""
        k = self._fresh + 1
        while f"E{k}" in self._w:
            k += 1
        return f"E{k}"

    def _copy_parts(self):
        return dict(self._w), {v: dict(n) for v, n in self._adj.items()}

    def relabel(self, mapping):
        """Rename vertices; ids missing from ``mapping`` keep their name."""
        new = {v: mapping.get(v, v) for v in self._w}
        if len(set(new.values())) != len(new):
            raise DuplicateVertex("relabeling is not injective")
        w = {new[v]: x for v, x in self._w.items()}
        adj = {new[v]: {new[u]: m for u, m in nb.items()} for v, nb in self._adj.items()}
        return DualGraph._raw(w, adj, self._fresh)

    def with_weights(self, changes):
        w, adj = self._copy_parts()
        for v, x in changes.items():
            self._check(v)
            w[v] = x
        return DualGraph._raw(w, adj, self._fresh)

    def components_without(self, removed):
        """Connected components of the graph with ``removed`` deleted."""
        removed = set(removed)
        left = [v for v in self._w if v not in removed]
        seen = set()
        comps = []
        for s in left:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            i = 0
            while i < len(comp):
                for y in self._adj[comp[i]]:
                    if y not in removed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                i += 1
            comps.append(self.induced(comp))
        return comps

    def induced(self, vertices):
        keep = [v for v in self._w if v in set(vertices)]
        ks = set(keep)
        w = {v: self._w[v] for v in keep}
        adj = {v: {u: m for u, m in self._adj[v].items() if u in ks} for v in keep}
        g = DualGraph._raw(w, adj, self._fresh)
        if not g._connected():
            raise Disconnected("induced subgraph is not connected")
        return g

    # comparison

    def _key(self):
        return (
            tuple(sorted(self._w.items(), key=lambda kv: vertex_key(kv[0]))),
            tuple(self.edges),
        )

    def __eq__(self, other):
        if not isinstance(other, DualGraph):
            return NotImplemented
        return self._w == other._w and self._adj == other._adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        s = shape(self) if self._w else None
        if s in (Shape.SINGLE, Shape.LINEAR):
            return f"DualGraph.chain({[self._w[v] for v in path_order(self)]})"
        if s is Shape.CIRCULAR:
            return f"DualGraph.cycle({[self._w[v] for v in cycle_order(self)]})"
        return f"DualGraph({self._w!r}, {self.edges!r})"


def _fresh_match(v):
    return _FRESH.match(v) if isinstance(v, str) else None


def shape(g):
    """Classify ``g`` as a single vertex, chain, cycle or branched graph."""
    if g.is_empty():
        raise EmptyGraph("the empty graph has no shape")
    if not g._connected():
        raise Disconnected("graph is not connected")
    if len(g) == 1:
        return Shape.SINGLE
    vals = [g.valency(v) for v in g]
    if max(vals) >= 3:
        return Shape.BRANCHED
    if all(x == 2 for x in vals):
        return Shape.CIRCULAR
    return Shape.LINEAR


def path_order(g, start=None):
    """Vertices of a chain from one end to the other.

    Without ``start`` the walk begins at the end whose id sorts first.
    """
    if len(g) == 1:
        return list(g.vertices)
    ends = [v for v in g if g.valency(v) == 1]
    if len(ends) != 2 or any(g.valency(v) > 2 for v in g):
        raise ValueError("graph is not a chain")
    if start is None:
        start = min(ends, key=vertex_key)
    elif start not in ends:
        raise ValueError(f"{start!r} is not an end of the chain")
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in g._adj[cur] if u != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def cycle_order(g, start=None, after=None):
    """Vertices of a cycle in cyclic order.

    ``start`` defaults to the smallest id; ``after`` picks which neighbour
    of ``start`` comes second.
    """
    if any(g.valency(v) != 2 for v in g) or len(g) < 2:
        raise ValueError("graph is not a cycle")
    if start is None:
        start = min(g, key=vertex_key)
    if len(g) == 2:
        (other,) = g._adj[start]
        return [start, other]
    nbs = sorted(g._adj[start], key=vertex_key)
    nxt = after if after is not None else nbs[0]
    if nxt not in g._adj[start]:
        raise ValueError(f"{after!r} is not adjacent to {start!r}")
    order = [start]
    prev, cur = start, nxt
    while cur != start:
        order.append(cur)
        (cur, prev) = next(u for u in g._adj[cur] if u != prev), cur
    return order


# canonical forms

@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-invariant key; equal keys mean weight-preserving isomorphic graphs."""

    kind: str
    key: tuple


def chain_key(ws):
    ws = tuple(ws)
    return min(ws, ws[::-1])


def cycle_key(ws):
    ws = tuple(ws)
    n = len(ws)
    rots = [ws[i:] + ws[:i] for i in range(n)]
    rev = ws[::-1]
    rots += [rev[i:] + rev[:i] for i in range(n)]
    return min(rots)


def canonicalize(g, marked=()):
    """Canonical form of ``g``; vertices in ``marked`` are kept distinguishable."""
    if g.is_empty():
        return CanonicalForm("empty", ())
    marked = frozenset(marked)
    if not marked:
        s = shape(g)
        if s in (Shape.SINGLE, Shape.LINEAR):
            return CanonicalForm("linear", chain_key(g._w[v] for v in path_order(g)))
        if s is Shape.CIRCULAR:
            return CanonicalForm("circular", cycle_key(g._w[v] for v in cycle_order(g)))
    return CanonicalForm("marked" if marked else "graph", _general_key(g, marked))


def _refine(g, colour):
    verts = list(colour)
    ncls = len(set(colour.values()))
    while True:
        sig = {
            v: (colour[v], tuple(sorted((colour[u], m) for u, m in g._adj[v].items())))
            for v in verts
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        colour = {v: ranks[sig[v]] for v in verts}
        k = len(ranks)
        if k == ncls:
            return colour
        ncls = k


def _encode(g, order):
    pos = {v: i for i, v in enumerate(order)}
    ws = tuple(g._w[v] for v in order)
    adj = tuple(
        sorted((pos[u], pos[v], m) for u in order for v, m in g._adj[u].items() if pos[u] < pos[v])
    )
    return (len(order), ws, adj)


def _twins(g, a, b):
    na = {u: m for u, m in g._adj[a].items() if u != b}
    nb = {u: m for u, m in g._adj[b].items() if u != a}
    return g._w[a] == g._w[b] and na == nb


def _general_key(g, marked):
    start = {v: (v in marked, g._w[v], g.valency(v)) for v in g}
    ranks = {s: i for i, s in enumerate(sorted(set(start.values())))}
    colour = _refine(g, {v: ranks[s] for v, s in start.items()})
    best = None

    def search(col):
        nonlocal best
        cells = {}
        for v, c in col.items():
            cells.setdefault(c, []).append(v)
        todo = [c for c in sorted(cells) if len(cells[c]) > 1]
        if not todo:
            order = sorted(col, key=col.__getitem__)
            code = _encode(g, order)
            if best is None or code < best:
                best = code
            return
        cell = sorted(cells[todo[0]], key=vertex_key)
        reps = []
        for v in cell:
            if not any(_twins(g, v, r) for r in reps):
                reps.append(v)
        for v in reps:
            indiv = {x: (c, 0 if x == v else 1) for x, c in col.items()}
            ranks = {s: i for i, s in enumerate(sorted(set(indiv.values())))}
            search(_refine(g, {x: ranks[s] for x, s in indiv.items()}))

    search(colour)
    return best


# intersection matrix

@dataclass(frozen=True)
class IntersectionMatrix:
    """Symmetric integer matrix with weights on the diagonal and edge counts off it."""

    order: tuple
    entries: tuple

    @property
    def n(self):
        return len(self.order)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    @classmethod
    def from_rows(cls, rows, order=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValueError("matrix must be symmetric")
        return cls(tuple(order) if order is not None else tuple(range(n)), rows)


def intersection_matrix(g, order=None):
    """Intersection matrix of ``g`` in the given vertex order.

    The default order is the path order for chains, the cyclic order for
    cycles and insertion order otherwise.
    """
    if g.is_empty():
        raise EmptyGraph("the empty graph has no intersection matrix")
    if order is None:
        s = shape(g)
        if s in (Shape.SINGLE, Shape.LINEAR):
            order = path_order(g)
        elif s is Shape.CIRCULAR:
            order = cycle_order(g)
        else:
            order = list(g.vertices)
    order = tuple(order)
    if sorted(map(vertex_key, order)) != sorted(map(vertex_key, g.vertices)):
        raise ValueError("order must list every vertex exactly once")
    rows = tuple(
        tuple(g._w[u] if u == v else g._adj[u].get(v, 0) for v in order) for u in order
    )
    return IntersectionMatrix(order, rows)

