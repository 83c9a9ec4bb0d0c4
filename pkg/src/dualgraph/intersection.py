"""Exact tests on intersection matrices and blow-down contractibility searches."""
from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import DualGraphError, UnknownVertex
from .graph import DualGraph, IntersectionMatrix, canonicalize, intersection_matrix, vertex_key
from .moves import BlowDown, MoveTrace, blow_down


def _rows(m):
    if isinstance(m, DualGraph):
        return [] if m.is_empty() else intersection_matrix(m).rows()
    if isinstance(m, IntersectionMatrix):
        return m.rows()
    return [list(r) for r in m]


def leading_minors(m):
    """Leading principal minors ``det(M_1), ..., det(M_n)`` by Bareiss elimination.

    Each Bareiss pivot equals a leading principal minor as long as no
    earlier minor vanished; after a zero pivot the remaining minors are
    computed directly.
    """
    a = _rows(m)
    n = len(a)
    out = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        out.append(piv)
        if piv == 0:
            for j in range(k + 1, n):
                out.append(determinant([r[: j + 1] for r in _rows(m)[: j + 1]]))
            return out
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return out


def determinant(m):
    """Exact integer determinant (fraction-free Bareiss with row pivoting)."""
    a = _rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_negative_definite(m):
    """Sylvester test on ``-M``: ``(-1)^k det(M_k) > 0`` for every leading minor."""
    minors = leading_minors(m)
    return all((-1) ** (k + 1) * d > 0 for k, d in enumerate(minors))


def characteristic_polynomial(m):
    """Integer coefficients ``[1, c1, ..., cn]`` of ``det(xI - M)`` (Faddeev-LeVerrier)."""
    a = _rows(m)
    n = len(a)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        for i in range(n):
            mk[i][i] += c_prev
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        coeffs.append(-tr // k)
        mk = am
    return coeffs


def _sign_changes(seq):
    s = [x for x in seq if x != 0]
    return sum(1 for x, y in zip(s, s[1:]) if (x > 0) != (y > 0))


def inertia(m):
    """``(n_plus, n_zero, n_minus)`` of a symmetric integer matrix.

    The characteristic polynomial of a symmetric matrix has only real
    roots, so Descartes' rule of signs counts them exactly.
    """
    p = characteristic_polynomial(m)
    n = len(p) - 1
    zero = 0
    while zero < n and p[n - zero] == 0:
        zero += 1
    plus = _sign_changes(p)
    minus = _sign_changes([c * (-1) ** (n - i) for i, c in enumerate(p)])
    return plus, zero, minus


# contractibility


class Contraction(NamedTuple):
    """Search result; truthy when a blow-down sequence exists."""

    ok: bool
    witness: Optional[MoveTrace] = None

    def __bool__(self):
        return self.ok


def _legal_downs(g, keep=None, allow_empty=True):
    out = []
    for v in sorted(g, key=vertex_key):
        if v == keep or g._w[v] != -1:
            continue
        nbs = g._adj[v]
        val = sum(nbs.values())
        if val > 2 or (len(nbs) == 1 and val == 2):
            continue
        if val == 0 and not allow_empty:
            continue
        out.append(v)
    return out


def _search(g, done, keep=None, order=None):
    """Depth-first search over blow-down sequences, memoizing dead states."""
    dead = set()
    marked = (keep,) if keep is not None else ()

    def rec(h):
        if done(h):
            return []
        key = canonicalize(h, marked)
        if key in dead:
            return None
        cands = _legal_downs(h, keep, allow_empty=keep is None)
        if order is not None:
            cands = order(cands)
        for v in cands:
            rest = rec(blow_down(h, v))
            if rest is not None:
                return [v] + rest
        dead.add(key)
        return None

    return rec(g)


def _greedy(g, done, keep=None):
    seq = []
    while not done(g):
        cands = _legal_downs(g, keep, allow_empty=keep is None)
        if not cands:
            return None
        seq.append(cands[0])
        g = blow_down(g, cands[0])
    return seq


def _result(g, seq):
    if seq is None:
        return Contraction(False, None)
    return Contraction(True, MoveTrace(canonicalize(g), frozenset(g.vertices), tuple(BlowDown(v) for v in seq)))


def _find(g, done, keep=None, order=None, greedy=True):
    seq = _greedy(g, done, keep) if greedy and order is None else None
    if seq is None:
        seq = _search(g, done, keep, order)
    return _result(g, seq)


def is_contractible(g, order=None):
    """Whether legal blow-downs can empty ``g``; the witness lists them.

    ``order`` may reorder the candidate list at each step; the answer does
    not depend on it because the search is exhaustive.
    """
    return _find(g, lambda h: h.is_empty(), order=order)


def contracts_to_zero_vertex(g, order=None):
    """Whether blow-downs reduce ``g`` to a single vertex of weight 0."""
    return _find(g, lambda h: len(h) == 1 and next(iter(h._w.values())) == 0, order=order)


def is_contractible_onto(g, keep, order=None):
    """Whether blow-downs avoiding ``keep`` leave ``keep`` alone with weight 0."""
    if keep not in g:
        raise UnknownVertex(f"unknown vertex {keep!r}")
    return _find(g, lambda h: len(h) == 1 and h._w.get(keep) == 0, keep=keep, order=order)


def greedy_contractible(g):
    """Fast pre-pass: blow down the lowest-id candidate until stuck."""
    try:
        return _greedy(g, lambda h: h.is_empty()) is not None
    except DualGraphError:
        return False
