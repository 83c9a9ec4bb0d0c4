"""Random generators and independent oracles shared by the test modules.

The oracles work on plain dicts and use rational or floating arithmetic,
networkx isomorphism and naive search, so they share no code with the
package they check.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import numpy as np

from dualgraph import DualGraph, blow_up_inner, blow_up_outer


# shape of one classify record in JSON output
RECORD_SCHEMA = {
    "type": "object",
    "required": ["shape", "minimal", "standard", "verdict", "trace", "diagnostics"],
    "properties": {
        "shape": {"enum": ["SingleVertex", "Linear", "Circular", "Branched"]},
        "minimal": {"type": "string"},
        "standard": {"type": "string"},
        "verdict": {
            "type": "object",
            "required": ["family", "params"],
            "properties": {"family": {"type": "string"}, "params": {"type": "object"}},
        },
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op", "args"],
                "properties": {"op": {"enum": ["down", "outer", "inner", "elem"]}, "args": {"type": "array"}},
            },
        },
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}


def random_graph(rng, n, lo=-5, hi=2, extra_edges=(0, 0, 0, 1, 2)):
    """Random connected loop-free multigraph: a random tree plus a few extra edges."""
    ws = {f"x{i}": rng.randint(lo, hi) for i in range(n)}
    edges = [(f"x{i}", f"x{rng.randrange(i)}") for i in range(1, n)]
    if n > 1:
        for _ in range(rng.choice(extra_edges)):
            edges.append(tuple(rng.sample(sorted(ws), 2)))
    return DualGraph(ws, edges)


def random_blowups(g, rng, k):
    for _ in range(k):
        if g.edges and rng.random() < 0.5:
            u, w = rng.choice(g.edges)
            g = blow_up_inner(g, u, w)
        else:
            g = blow_up_outer(g, rng.choice(g.vertices))
    return g


def matrix_of(g, order=None):
    """Intersection matrix built straight from the definition."""
    order = list(order or g.vertices)
    idx = {v: i for i, v in enumerate(order)}
    m = [[0] * len(order) for _ in order]
    for v in order:
        m[idx[v]][idx[v]] = g.weight(v)
    for a, b in g.edges:
        m[idx[a]][idx[b]] += 1
        m[idx[b]][idx[a]] += 1
    return m


def det_oracle(m):
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    assert det.denominator == 1
    return int(det)


def leibniz_det(m):
    """Permutation-sum determinant for small matrices."""
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= m[i][p[i]]
        total += -prod if inv % 2 else prod
    return total


def inertia_oracle(m):
    if not m:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(np.array(m, dtype=float))
    tol = 1e-7
    return int((ev > tol).sum()), int((abs(ev) <= tol).sum()), int((ev < -tol).sum())


def to_nx(g):
    h = nx.MultiGraph()
    for v in g.vertices:
        h.add_node(v, w=g.weight(v))
    h.add_edges_from(g.edges)
    return h


def isomorphic(g, h):
    return nx.is_isomorphic(to_nx(g), to_nx(h), node_match=lambda a, b: a["w"] == b["w"])


# a separate dict based implementation of blow-downs


def _as_dicts(g):
    ws = dict(g.weights)
    adj = {v: {} for v in ws}
    for a, b in g.edges:
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    return ws, adj


def _down(ws, adj, v):
    nbs = adj[v]
    ws = dict(ws)
    adj = {u: dict(x) for u, x in adj.items() if u != v}
    for u, k in nbs.items():
        ws[u] += k
        del adj[u][v]
    del ws[v]
    us = list(nbs)
    if len(us) == 2:
        a, b = us
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    return ws, adj


def _candidates(ws, adj):
    out = []
    for v, w in ws.items():
        val = sum(adj[v].values())
        if w == -1 and val <= 2 and not (len(adj[v]) == 1 and val == 2):
            out.append(v)
    return out


def contractible_oracle(g):
    """Naive exhaustive search: can the graph be blown down to nothing?"""

    def rec(ws, adj):
        if not ws:
            return True
        return any(rec(*_down(ws, adj, v)) for v in _candidates(ws, adj))

    return rec(*_as_dicts(g))


def zero_vertex_oracle(g):
    def rec(ws, adj):
        if len(ws) == 1 and next(iter(ws.values())) == 0:
            return True
        return any(rec(*_down(ws, adj, v)) for v in _candidates(ws, adj) if len(ws) > 1)

    return rec(*_as_dicts(g))


def chain_weights(g, start):
    """Weights along a chain from the end ``start``."""
    out, prev, cur = [], None, start
    while cur is not None:
        out.append(g.weight(cur))
        nxt = [u for u in g.neighbors(cur) if u != prev]
        prev, cur = cur, (nxt[0] if nxt else None)
    return out


def cycle_weights(g, start, first):
    """Weights around a cycle (at least 3 vertices) from ``start`` towards ``first``."""
    out, prev, cur = [g.weight(start)], start, first
    while cur != start:
        out.append(g.weight(cur))
        nxt = [u for u in g.neighbors(cur) if u != prev]
        prev, cur = cur, nxt[0]
    return out


def same_cycle(a, b):
    """Equality of weight sequences up to rotation and reflection."""
    if len(a) != len(b):
        return False
    rots = [b[i:] + b[:i] for i in range(len(b))]
    return list(a) in rots or list(a)[::-1] in rots


def fork(center=-1, spine=(), far=None, leaves=(-2, -2), far_leaves=(-2, -2)):
    """Fork ``center`` with two leaves, a spine chain and an optional second fork ``F``."""
    ws = {"E": center, "A": leaves[0], "B": leaves[1]}
    edges = [("E", "A"), ("E", "B")]
    prev = "E"
    for i, w in enumerate(spine):
        ws[f"C{i}"] = w
        edges.append((prev, f"C{i}"))
        prev = f"C{i}"
    if far is not None:
        ws.update(F=far, A2=far_leaves[0], B2=far_leaves[1])
        edges += [(prev, "F"), ("F", "A2"), ("F", "B2")]
    return DualGraph(ws, edges)


def seeded(seed):
    return random.Random(seed)
