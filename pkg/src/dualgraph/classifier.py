"""Decide which of the six boundary families a weighted dual graph belongs to."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DualGraphError, EmptyGraph, NotStandardizable
from .graph import DualGraph, Shape, canonicalize, shape, vertex_key
from .intersection import inertia
from .moves import LOWER, RAISE, MoveTrace, Rewriter, apply_trace
from .normal_forms import (
    _circular_reduce,
    _linear_reduce,
    _make_zero,
    _minimalize,
    _other,
    _push,
    _slide,
    branch_decomposition,
    circular_form,
    fork_parts,
    linear_form,
)

FAMILIES = (
    "Type1Zigzag",
    "Type1CxCstar",
    "Type2a",
    "Type2b",
    "Type2c",
    "Type3",
    "Type4",
    "Type5",
    "Type6",
    "NotInList",
)

_LABEL = {
    "Type1Zigzag": "(1)",
    "Type1CxCstar": "(1)",
    "Type2a": "(2a)",
    "Type2b": "(2b)",
    "Type2c": "(2c)",
    "Type3": "(3)",
    "Type4": "(4)",
    "Type5": "(5)",
    "Type6": "(6)",
}

# reason code -> the rule it rests on
REASONS = {
    "HodgeIndex": "Hodge index theorem: a boundary form has at most one positive eigenvalue",
    "LinearNotZigzag": "a chain must standardize to a standard zigzag or [[0,0,0]]",
    "Contractible": "the graph blows down to nothing",
    "CircularOutOfRange": "a cycle must standardize to ((0,0,W)), ((0,0,w)), ((0,0,0,w)) or ((0,0,-1,-1))",
    "IrreducibleTwoCycle": "a two-cycle ((-1,w)) with w <= -2 cannot be standardized",
    "T1Nonempty": "every branch point must be an adjustable (-2,-1,-2) fork (T1 must be empty)",
    "TooManyForks": "at most two forks can occur",
    "ForkSpineNegative": "a fork spine without non-negative weights must be exactly [[-2]]",
    "TailNotNegative": "fork tails must have all weights <= -2",
    "ForkWeight": "a fork center could not be brought to weight -1",
    "KPrimeRange": "the second fork weight k' violates its bound",
}


@dataclass(frozen=True)
class ClassificationVerdict:
    """Family label with its parameters and the trace reaching the template.

    ``graph`` is the input, ``minimal`` its minimalization and ``standard``
    the normalized graph the witness trace ends at.
    """

    family: str
    params: dict
    witness: MoveTrace
    graph: DualGraph
    minimal: DualGraph
    standard: DualGraph
    diagnostics: tuple = field(default=())
    detail: str = ""

    @property
    def accepted(self):
        return self.family != "NotInList"

    @property
    def reason(self):
        return self.params.get("reason") if not self.accepted else None

    def template(self):
        """The family's template graph built from the parameters (``None`` if rejected)."""
        return build_template(self.family, self.params)

    def __repr__(self):
        return f"ClassificationVerdict({self.family}, {self.params})"


# templates


def _fork(ws, ids, center, leaves):
    for a in leaves:
        ws[a] = -2
        ids.append((center, a))


def build_template(family, params):
    """Construct the template graph of an accepted family."""
    if family == "Type1Zigzag":
        return DualGraph.chain(list(params["weights"]))
    if family == "Type1CxCstar":
        return DualGraph.chain([0, 0, 0])
    if family == "Type2a":
        return DualGraph.cycle([0, 0] + list(params["weights"]))
    if family == "Type2b":
        zeros = [0, 0] if params["variant"] == "((0,0,w))" else [0, 0, 0]
        return DualGraph.cycle(zeros + [params["w"]])
    if family == "Type2c":
        return DualGraph.cycle([0, 0, -1, -1])
    if family in ("Type3", "Type4", "Type5", "Type6"):
        ws = {"E": -1}
        edges = []
        _fork(ws, edges, "E", ("A", "B"))
        if family == "Type4":
            spine = [-2]
        elif family == "Type6":
            spine = []
        else:
            spine = [params["w0"]] + list(params["tail"])
        prev = "E"
        for i, w in enumerate(spine):
            ws[f"C{i}"] = w
            edges.append((prev, f"C{i}"))
            prev = f"C{i}"
        if family in ("Type5", "Type6"):
            ws["F"] = params["k_prime"]
            edges.append((prev, "F"))
            _fork(ws, edges, "F", ("A2", "B2"))
        return DualGraph(ws, edges)
    return None


# fork normalization


def _spine(g, center, first):
    out = []
    prev, cur = center, first
    while cur is not None and g.valency(cur) <= 2:
        out.append(cur)
        cur, prev = _other(g, cur, prev), cur
    return out, cur


def _third(g, center, leaves):
    return next(u for u in g.neighbors(center) if u not in leaves)


class _Reject(Exception):
    def __init__(self, reason, detail=""):
        super().__init__(reason)
        self.reason = reason
        self.detail = detail


def _zero_next_to_fork(r, center, leaves):
    """Bring a 0-vertex of the spine next to ``center``; returns it."""
    g = r.graph
    spine, _ = _spine(g, center, _third(g, center, leaves))
    p = next((v for v in spine if g.weight(v) >= 0), None)
    if p is None:
        raise _Reject("ForkSpineNegative", "the spine has no non-negative weight")
    j = spine.index(p)
    if g.weight(p) > 0:
        back = spine[j - 1] if j else center
        fwd = _other(g, p, back)
        _make_zero(r, p, fwd if fwd is not None else back)
    g = r.graph
    spine, _ = _spine(g, center, _third(g, center, leaves))
    j = spine.index(p)
    if j == 0:
        return p
    toward_center = spine[j - 1]
    if g.valency(p) == 1:
        z = p
        while r.graph.weight(toward_center) != 0:
            z = r.elem(z, end=RAISE if r.graph.weight(toward_center) < 0 else LOWER)
        behind, front = z, toward_center
    else:
        behind, front = _push(r, p, _other(g, p, toward_center)), toward_center
    while _other(r.graph, front, behind) != center:
        behind, front = _slide(r, behind, front)
    return front


def _set_fork_weight(r, center, c0):
    """Elementary moves at the 0-vertex ``c0`` until ``center`` has weight -1."""
    while r.graph.weight(center) != -1:
        g = r.graph
        lower = g.weight(center) > -1
        if g.valency(c0) == 1:
            c0 = r.elem(c0, end=LOWER if lower else RAISE)
        else:
            c0 = r.elem(c0, toward=center if lower else _other(g, c0, center))
    return c0


def _clean_tail(r, center, c0):
    """Blow down (-1)-vertices of the spine beyond ``c0``; returns (w0, tail, far end)."""
    while True:
        g = r.graph
        spine, far = _spine(g, center, c0)
        minus = [v for v in spine[1:] if g.weight(v) == -1]
        if not minus:
            break
        r.down(minus[0])
    g = r.graph
    spine, far = _spine(g, center, c0)
    tail = [g.weight(v) for v in spine[1:]]
    if any(w >= -1 for w in tail):
        raise _Reject("TailNotNegative", f"tail {tail} has a weight above -2")
    return g.weight(c0), tail, far


def _one_fork(r, center):
    g = r.graph
    leaves = fork_parts(g, center)[:2]
    spine, _ = _spine(g, center, _third(g, center, leaves))
    if all(g.weight(v) <= -2 for v in spine):
        if g.weight(center) == -1 and [g.weight(v) for v in spine] == [-2]:
            return "Type4", {}
        raise _Reject("ForkSpineNegative", f"spine {[g.weight(v) for v in spine]} is not [[-2]]")
    c0 = _zero_next_to_fork(r, center, leaves)
    c0 = _set_fork_weight(r, center, c0)
    w0, tail, _ = _clean_tail(r, center, c0)
    return "Type3", {"n": len(tail), "w0": w0, "tail": tail}


def _two_forks(r, e1, e2):
    g = r.graph
    if e2 in g.neighbors(e1):
        k1, k2 = g.weight(e1), g.weight(e2)
        if k1 == -1 and k2 >= -1:
            return "Type6", {"k_prime": k2}
        if k2 == -1 and k1 >= -1:
            return "Type6", {"k_prime": k1}
        raise _Reject("KPrimeRange", f"adjacent forks of weights {k1}, {k2}")
    spine, _ = _spine(g, e1, fork_parts(g, e1)[2])
    if all(g.weight(v) <= -2 for v in spine):
        raise _Reject("ForkSpineNegative", f"spine {[g.weight(v) for v in spine]} between two forks")
    found = []
    first_error = None
    for center, other in ((e1, e2), (e2, e1)):
        trial = Rewriter(r.start, r.limit)
        trial.moves = list(r.moves)
        trial.graph = r.graph
        try:
            c0 = _zero_next_to_fork(trial, center, fork_parts(g, center)[:2])
            c0 = _set_fork_weight(trial, center, c0)
            w0, tail, _ = _clean_tail(trial, center, c0)
            k = trial.graph.weight(other)
            if (not tail and k > -1) or (tail and k > -2):
                bound = -1 if not tail else -2
                raise _Reject("KPrimeRange", f"k'={k} exceeds {bound} with n={len(tail)}")
            found.append(((len(tail), w0, tail, k), trial))
        except _Reject as exc:
            first_error = first_error or exc
    if not found:
        raise first_error
    (n, w0, tail, k), trial = min(found, key=lambda x: x[0])
    r.moves, r.graph = trial.moves, trial.graph
    return "Type5", {"n": n, "w0": w0, "tail": tail, "k_prime": k}


# entry points


def _verdict(g, r, minimal, family, params, diagnostics=(), detail=""):
    return ClassificationVerdict(
        family, params, r.trace(), g, minimal, r.graph, tuple(diagnostics), detail
    )


def _reject(g, r, minimal, reason, detail, diagnostics=()):
    detail = detail or REASONS.get(reason, "")
    return _verdict(g, r, minimal, "NotInList", {"reason": reason}, diagnostics, detail)


def classify(g):
    """Classify ``g`` and return a :class:`ClassificationVerdict`.

    The graph is minimalized, then chains and cycles are standardized and
    branched graphs are normalized around their forks. Accepted verdicts
    carry a witness trace ending at the family template.
    """
    if g.is_empty():
        raise EmptyGraph("cannot classify the empty graph")
    r = Rewriter(g)
    _minimalize(r)
    minimal = r.graph
    plus = inertia(minimal)[0]
    if plus >= 2:
        return _reject(g, r, minimal, "HodgeIndex", f"{plus} positive eigenvalues")
    s = shape(minimal)
    try:
        if s in (Shape.SINGLE, Shape.LINEAR):
            return _classify_chain(g, r, minimal)
        if s is Shape.CIRCULAR:
            return _classify_cycle(g, r, minimal)
        return _classify_branched(g, r, minimal)
    except NotStandardizable as exc:
        return _reject(g, r, minimal, exc.reason, exc.detail)


def _classify_chain(g, r, minimal):
    _linear_reduce(r)
    form = linear_form(r.graph)
    if form.kind == "zero":
        return _verdict(g, r, minimal, "Type1Zigzag", {"weights": [0]})
    if form.kind == "zigzag":
        return _verdict(g, r, minimal, "Type1Zigzag", {"weights": [0, 0, *form.params[0]]})
    if form.kind == "cxcstar":
        return _verdict(g, r, minimal, "Type1CxCstar", {})
    return _reject(g, r, minimal, "LinearNotZigzag", "rigid chain: every weight is <= -2")


def _classify_cycle(g, r, minimal):
    _circular_reduce(r)
    form = circular_form(r.graph)
    k, p = form.kind, form.params
    if k == "i" and p[0] == 1:
        return _verdict(g, r, minimal, "Type2a", {"n": len(p[1]), "weights": list(p[1])})
    if k == "ii" and p[0] == 2 and -1 <= p[1] <= 0:
        return _verdict(g, r, minimal, "Type2b", {"variant": "((0,0,w))", "w": p[1]})
    if k == "ii" and p[0] == 3 and p[1] <= 0:
        return _verdict(g, r, minimal, "Type2b", {"variant": "((0,0,0,w))", "w": p[1]})
    if k == "iii" and p[0] == 1:
        return _verdict(g, r, minimal, "Type2c", {})
    return _reject(g, r, minimal, "CircularOutOfRange", f"standard form {k} with parameters {p}")


def _classify_branched(g, r, minimal):
    dec = branch_decomposition(minimal)
    diag = ["normalizer-decided"]
    if dec.t1:
        names = ", ".join(map(str, sorted(dec.t1, key=vertex_key)))
        return _reject(g, r, minimal, "T1Nonempty", f"branch points {names} are not adjustable forks", diag)
    forks = sorted(dec.t0, key=vertex_key)
    try:
        if len(forks) == 1:
            family, params = _one_fork(r, forks[0])
        elif len(forks) == 2:
            family, params = _two_forks(r, *forks)
        else:
            return _reject(g, r, minimal, "TooManyForks", f"{len(forks)} forks", diag)
    except _Reject as exc:
        return _reject(g, r, minimal, exc.reason, exc.detail, diag)
    return _verdict(g, r, minimal, family, params)


def check_witness(v):
    """Replay the witness of ``v`` and compare with its template; returns a bool."""
    end = apply_trace(v.graph, v.witness)
    if end != v.standard:
        return False
    if not v.accepted:
        return True
    return canonicalize(end) == canonicalize(v.template())


def explain(v):
    """Structured report: template, parameters, constraint checks and trace length."""
    report = {
        "family": v.family,
        "params": dict(v.params),
        "trace_length": len(v.witness),
        "checks": [],
    }
    if not v.accepted:
        reason = v.params["reason"]
        report["checks"].append(
            {"check": reason, "passed": False, "cite": REASONS.get(reason, reason), "detail": v.detail}
        )
        if "normalizer-decided" in v.diagnostics:
            report["normalizer_decided"] = True
        return report
    report["template"] = _LABEL[v.family]
    report["checks"] = [
        {"check": name, "passed": ok, "cite": _LABEL[v.family]} for name, ok in _constraint_checks(v)
    ]
    return report


def _constraint_checks(v):
    p = v.params
    fam = v.family
    if fam == "Type1Zigzag":
        ws = p["weights"]
        return [("zigzag weights", ws == [0] or (ws[:2] == [0, 0] and all(w <= -2 for w in ws[2:])))]
    if fam == "Type2a":
        return [("tail weights <= -2", all(w <= -2 for w in p["weights"]))]
    if fam == "Type2b":
        lo = -1 if p["variant"] == "((0,0,w))" else None
        return [("w <= 0", p["w"] <= 0), ("w >= -1 for the 3-cycle", lo is None or p["w"] >= lo)]
    if fam in ("Type3", "Type5"):
        checks = [("w0 >= 0", p["w0"] >= 0), ("tail weights <= -2", all(w <= -2 for w in p["tail"]))]
        if fam == "Type5":
            bound = -1 if p["n"] == 0 else -2
            checks.append((f"k' <= {bound}", p["k_prime"] <= bound))
        return checks
    if fam == "Type6":
        return [("k' >= -1", p["k_prime"] >= -1)]
    return [("template match", True)]


def safe_classify(g):
    """``classify`` that turns library errors into ``NotInList`` verdicts."""
    try:
        return classify(g)
    except DualGraphError as exc:
        r = Rewriter(g)
        return _reject(g, r, g, "InvalidInput", str(exc))
