"""Minimal graphs, standard forms of chains and cycles, forks and fibration markers."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotMinimal, NotStandardizable, WrongShape
from .graph import Shape, chain_key, cycle_key, cycle_order, path_order, shape, vertex_key
from .intersection import _legal_downs, inertia, is_contractible
from .moves import LOWER, RAISE, Rewriter


@dataclass(frozen=True)
class StandardForm:
    """Which standard shape a chain or cycle has, with its parameters.

    Chains: ``zero`` ``[[0]]``, ``zigzag`` ``[[0,0,W]]``, ``cxcstar``
    ``[[0,0,0]]`` and ``rigid`` (all weights <= -2). Cycles: ``i``
    ``((0_2k, W))``, ``ii`` ``((0_l, w))``, ``iii`` ``((0_2k, -1, -1))``
    and ``rigid``.
    """

    kind: str
    params: tuple = ()


# detection


def linear_form(g):
    ws = [g.weight(v) for v in path_order(g)]
    if ws == [0]:
        return StandardForm("zero")
    if all(x <= -2 for x in ws):
        return StandardForm("rigid", (chain_key(ws),))
    if ws == [0, 0, 0]:
        return StandardForm("cxcstar")
    for seq in (ws, ws[::-1]):
        if seq[:2] == [0, 0] and all(x <= -2 for x in seq[2:]):
            return StandardForm("zigzag", (tuple(seq[2:]),))
    return None


def circular_form(g):
    ws = [g.weight(v) for v in cycle_order(g)]
    n = len(ws)
    if all(x <= -2 for x in ws):
        return StandardForm("rigid", (cycle_key(ws),))
    nz = ws.count(0)
    if nz == 0:
        return StandardForm("iii", (0,)) if sorted(ws) == [-1, -1] else None
    if nz == n:
        return StandardForm("i", (1, ())) if n == 2 else StandardForm("ii", (n - 1, 0))
    i = next(i for i in range(n) if ws[i] == 0 and ws[i - 1] != 0)
    ws = ws[i:] + ws[:i]
    if ws[:nz] != [0] * nz:
        return None
    rest = ws[nz:]
    if nz % 2 == 0 and all(x <= -2 for x in rest):
        return StandardForm("i", (nz // 2, min(tuple(rest), tuple(rest[::-1]))))
    if len(rest) == 1:
        return StandardForm("ii", (nz, rest[0])) if rest[0] <= 0 else None
    if nz % 2 == 0 and rest == [-1, -1]:
        return StandardForm("iii", (nz // 2,))
    return None


def is_minimal(g):
    return len(g) <= 1 or not _legal_downs(g, allow_empty=False)


def _check_hodge(g):
    plus = inertia(g)[0]
    if plus >= 2:
        raise NotStandardizable(
            "HodgeIndex", f"intersection form has {plus} positive eigenvalues; at most one is possible"
        )


# minimalization


def _minimalize(r, rng=None):
    while len(r.graph) > 1:
        cands = _legal_downs(r.graph, allow_empty=False)
        if not cands:
            return
        r.down(cands[0] if rng is None else rng.choice(cands))


def minimalize(g, rng=None):
    """Blow down (-1)-vertices of valency at most 2 until none is left.

    Blow-downs that would create a loop or empty the graph are skipped. The
    lowest vertex id goes first unless ``rng`` picks a random candidate.
    Returns ``(graph, trace)``.
    """
    r = Rewriter(g)
    _minimalize(r, rng)
    return r.graph, r.trace()


# zero-vertex helpers


def _other(g, v, not_this):
    rest = [u for u in g.neighbors(v) if u != not_this]
    return rest[0] if rest else None


def _push(r, z, onto):
    """Elementary moves at ``z`` until its neighbour other than ``onto`` has weight 0.

    The weight of that neighbour is added to ``onto``; returns the final 0-vertex.
    """
    far = _other(r.graph, z, onto)
    while r.graph.weight(far) != 0:
        z = r.elem(z, toward=onto if r.graph.weight(far) < 0 else far)
    return z


def _slide(r, behind, front):
    """Move the adjacent zero pair one step past the far neighbour of ``front``."""
    nxt = _other(r.graph, front, behind)
    z = _push(r, front, behind)
    return z, nxt


def transfer_weight(g, zero, onto):
    """Elementary moves at the 0-vertex ``zero`` of valency 2 until its other
    neighbour has weight 0; that weight is added to ``onto``.

    Both neighbours survive, so ``[[a, 0, b]]`` becomes ``[[a + b, 0, 0]]``.
    Returns ``(graph, trace, zero)`` where ``zero`` is the middle 0-vertex.
    """
    if g.weight(zero) != 0 or g.valency(zero) != 2 or onto not in g.neighbors(zero):
        raise WrongShape("need a 0-vertex of valency 2 next to onto")
    r = Rewriter(g)
    z = _push(r, zero, onto)
    return r.graph, r.trace(), z


def slide_zero_pair(g, behind, front, steps=1):
    """Move the adjacent 0-vertices ``behind, front`` forward ``steps`` places.

    Each step hands the weight of the vertex after ``front`` to the vertex
    before ``behind``, so ``((0, 0, w3, ..., wn))`` becomes
    ``((w3, 0, 0, w4, ..., wn))``. Returns ``(graph, trace, (behind, front))``.
    """
    if g.weight(behind) != 0 or g.weight(front) != 0 or front not in g.neighbors(behind):
        raise WrongShape("need two adjacent 0-vertices")
    r = Rewriter(g)
    for _ in range(steps):
        if _other(r.graph, front, behind) is None or r.graph.valency(front) != 2:
            raise WrongShape("the pair has nowhere to move")
        behind, front = _slide(r, behind, front)
    return r.graph, r.trace(), (behind, front)


def _make_zero(r, p, toward):
    """Inner blow-ups on the edge of ``p`` facing ``toward`` until ``p`` has weight 0."""
    e = toward
    while r.graph.weight(p) > 0:
        e = r.inner(p, e)


# chains


def _linear_reduce(r):
    g = r.graph
    if linear_form(g):
        return
    if len(g) == 1:
        (v,) = g.vertices
        if g.weight(v) == -1:
            raise NotStandardizable("Contractible", "[[-1]] blows down to the empty graph")
        _make_zero(r, v, r.outer(v))
    elif any(g.weight(v) == -1 for v in g):
        raise NotMinimal("chain must be minimal before reduction")
    g = r.graph
    if linear_form(g):
        return
    order = path_order(g)
    i = next(i for i, v in enumerate(order) if g.weight(v) >= 0)
    p = order[i]
    _make_zero(r, p, order[i + 1] if i + 1 < len(order) else order[i - 1])

    # gather a zero pair at one end
    order = path_order(r.graph)
    i = order.index(p)
    if i in (0, len(order) - 1):
        y = order[1] if i == 0 else order[-2]
        z = p
        while r.graph.weight(y) != 0:
            z = r.elem(z, end=RAISE if r.graph.weight(y) < 0 else LOWER)
        _linear_sweep(r, z, y)
        return
    front = order[i - 1]
    behind = _push(r, p, order[i + 1])
    while r.graph.valency(front) > 1:
        behind, front = _slide(r, behind, front)
    _linear_sweep(r, front, behind)


def _linear_sweep(r, zl, zr):
    """Clear the chain to the right of the pair ``zl, zr`` (``zl`` nearer the left end).

    Vertices of weight <= -2 are passed over; a (-1)-vertex is blown down
    and the surplus returned to the left part by one elementary move.
    """
    while True:
        g = r.graph
        u = _other(g, zr, zl)
        if u is None:
            break
        w = g.weight(u)
        if w <= -2:
            zl, zr = _slide(r, zl, zr)
        elif w == -1:
            r.down(u)
            d = _other(r.graph, zl, zr)
            if d is None:
                zl = r.elem(zl, end=LOWER)
            else:
                zl = r.elem(zl, toward=zr)
                if r.graph.weight(d) == -1:
                    zr, zl = _slide(r, zr, zl)
        elif w == 0 and len(g) == 3 and g.valency(zl) == 1:
            return
        else:
            raise NotStandardizable("HodgeIndex", "a non-negative weight remains beside the zero pair")
    # choose between W and its reversal
    g = r.graph
    left = []
    cur, prev = _other(g, zl, zr), zl
    while cur is not None:
        left.append(g.weight(cur))
        cur, prev = _other(g, cur, prev), cur
    if not left:
        return
    keep = chain_key((0, 0) + tuple(left))
    flip = chain_key((0, 0) + tuple(left[::-1]))
    if flip < keep:
        while r.graph.valency(zl) > 1:
            zr, zl = _slide(r, zr, zl)


def _standardize(g, shapes, reduce):
    if shape(g) not in shapes:
        raise WrongShape(f"expected {'/'.join(map(str, shapes))}, got {shape(g)}")
    r = Rewriter(g)
    detect = circular_form if Shape.CIRCULAR in shapes else linear_form
    if detect(g) is None:
        _check_hodge(g)
        _minimalize(r)
        reduce(r)
    return r.graph, r.trace()


def standardize_linear(g):
    """Reduce a chain to ``[[0]]``, ``[[0,0,W]]``, ``[[0,0,0]]`` or a rigid chain.

    Returns ``(graph, trace)``. Standard inputs come back unchanged. Raises
    :class:`NotStandardizable` for ``[[-1]]`` and for chains whose
    intersection form has two positive eigenvalues.
    """
    return _standardize(g, (Shape.SINGLE, Shape.LINEAR), _linear_reduce)


# cycles


def _circular_reduce(r):
    while True:
        g = r.graph
        if circular_form(g):
            return
        order = cycle_order(g)
        n = len(order)
        if n == 2:
            pos = [v for v in order if g.weight(v) > 0]
            if not pos:
                raise NotStandardizable(
                    "IrreducibleTwoCycle", "a two-cycle ((-1, w)) with w <= -2 admits no reduction"
                )
            r.inner(pos[0], _other(g, pos[0], None))
            continue
        zeros = [v for v in order if g.weight(v) == 0]
        if not zeros:
            pos = [i for i, v in enumerate(order) if g.weight(v) > 0]
            if pos:
                _make_zero(r, order[pos[0]], order[(pos[0] + 1) % n])
            else:
                r.down(next(v for v in order if g.weight(v) == -1))
            continue
        z = zeros[0]
        a, b = g.neighbors(z)
        if g.weight(a) == 0:
            zl, zr = a, z
        elif g.weight(b) == 0:
            zl, zr = b, z
        else:
            zl, zr = _push(r, z, a), b
        _circular_sweep(r, zl, zr)
        return


def _circular_sweep(r, zl, zr):
    while len(r.graph) > 4:
        g = r.graph
        if all(g.weight(v) <= -2 for v in g if v not in (zl, zr)):
            break
        u = _other(g, zr, zl)
        w = g.weight(u)
        if w <= -2:
            zl, zr = _slide(r, zl, zr)
        elif w == -1:
            r.down(u)
            d = _other(r.graph, zl, zr)
            zl = r.elem(zl, toward=zr)
            if r.graph.weight(d) == -1:
                zr, zl = _slide(r, zr, zl)
        else:
            raise NotStandardizable("HodgeIndex", "a non-negative weight remains beside the zero pair")
    g = r.graph
    if not circular_form(g):
        u1, u2 = _other(g, zr, zl), _other(g, zl, zr)
        w1, w2 = g.weight(u1), g.weight(u2)
        if len(g) == 4 and w1 == -1 and w2 <= -2:
            r.down(u1)
            r.elem(zl, toward=zr)
        elif len(g) == 4 and w2 == -1 and w1 <= -2:
            r.down(u2)
            r.elem(zr, toward=zl)
        elif len(g) == 3 and w1 == 1:
            r.inner(u1, zl)
        elif len(g) == 3 and w1 == 2:
            r.inner(u1, zl)
            r.inner(u1, zr)
            r.down(zl)
        else:
            raise NotStandardizable("HodgeIndex", "the cycle cannot be brought to a standard form")
        return
    form = circular_form(g)
    if form.kind != "i" or len(g) < 5:
        return
    # rotate the tail to its lexicographically least reading
    tail = []
    cur, prev = _other(g, zr, zl), zr
    while cur != zl:
        tail.append(g.weight(cur))
        cur, prev = _other(g, cur, prev), cur
    m = len(tail)
    best = min(range(m), key=lambda k: _rot_key(tail, k))
    for _ in range(best):
        zl, zr = _slide(r, zl, zr)


def _rot_key(tail, k):
    t = tuple(tail[k:] + tail[:k])
    return min(t, t[::-1]), t


def standardize_circular(g):
    """Reduce a cycle to ``((0_2k, W))``, ``((0_l, w))``, ``((0_2k, -1, -1))`` or a rigid cycle.

    Returns ``(graph, trace)``. Standard inputs come back unchanged.
    Raises :class:`NotStandardizable` for two-cycles ``((-1, w))`` with
    ``w <= -2`` and for cycles whose intersection form has two positive
    eigenvalues.
    """
    return _standardize(g, (Shape.CIRCULAR,), _circular_reduce)


# branch points


@dataclass(frozen=True)
class Component:
    graph: object
    tag: str
    forks: tuple = ()


@dataclass(frozen=True)
class BranchDecomposition:
    """Branch points split into adjustable forks ``t0`` and the rest ``t1``.

    ``components`` are the non-contractible pieces left after deleting
    ``t1``, tagged ``a`` (chain), ``b`` (cycle), ``c`` (one fork plus a
    chain), ``d`` (two forks joined by a chain) or ``other``.
    """

    br: frozenset
    t0: frozenset
    t1: frozenset
    components: tuple

    @property
    def tags(self):
        return sorted(c.tag for c in self.components)


def fork_parts(g, v):
    """``(leaf, leaf, third)`` when ``v`` has valency 3 and two bare (-2)-leaf branches."""
    nbs = g.neighbors(v)
    if g.valency(v) != 3 or len(nbs) != 3:
        return None
    leaves = [u for u in nbs if g.valency(u) == 1 and g.weight(u) == -2]
    if len(leaves) < 2:
        return None
    a, b = leaves[:2]
    (c,) = [u for u in nbs if u not in (a, b)]
    return a, b, c


def _adjustable(g, v, third, br):
    if g.weight(v) == -1:
        return True
    if third in br:
        parts = fork_parts(g, third)
        return parts is not None and g.weight(third) == -1 and parts[2] == v
    comp = next(c for c in g.components_without(br) if third in c)
    return any(comp.weight(u) >= 0 for u in comp)


def branch_decomposition(g):
    """Split the branch points of a minimal graph into forks and the rest."""
    if not is_minimal(g):
        raise NotMinimal("branch_decomposition needs a minimal graph")
    br = frozenset(v for v in g if g.valency(v) >= 3)
    t0 = set()
    for v in br:
        parts = fork_parts(g, v)
        if parts and _adjustable(g, v, parts[2], br):
            t0.add(v)
    t1 = br - t0
    comps = []
    for c in g.components_without(t1):
        if is_contractible(c):
            continue
        forks = tuple(sorted((v for v in c if v in t0), key=vertex_key))
        if len(forks) > 2:
            tag = "other"
        elif forks:
            tag = "cd"[len(forks) - 1]
        else:
            tag = "b" if shape(c) is Shape.CIRCULAR else "a"
        comps.append(Component(c, tag, forks))
    comps.sort(key=lambda c: (c.tag, sorted(map(vertex_key, c.graph))))
    return BranchDecomposition(br, frozenset(t0), frozenset(t1), tuple(comps))


# fibration markers


@dataclass(frozen=True)
class FibrationMarker:
    kind: str
    anchor: tuple


def fibration_markers(g):
    """Local patterns that mark a fibration: zero vertices and (-2,-1,-2) forks."""
    out = []
    for v in sorted(g, key=vertex_key):
        w = g.weight(v)
        nbs = g.neighbors(v)
        val = g.valency(v)
        if w == 0 and val == 1:
            out.append(FibrationMarker("CFiber", (v,) + nbs))
        elif w == 0 and val == 2 and len(nbs) == 2:
            out.append(FibrationMarker("UntwistedCstar", (v,) + nbs))
        elif w == 0 and val == 2:
            out.append(FibrationMarker("TwistedA", (v,) + nbs))
        elif w == -1 and val == 3 and len(nbs) == 3:
            leaves = [u for u in nbs if g.valency(u) == 1 and g.weight(u) == -2]
            for a, b in combinations(leaves, 2):
                out.append(FibrationMarker("TwistedB", (v, a, b)))
    return out
