import itertools
import random

import pytest

from dualgraph import (
    DualGraph,
    blow_up_inner,
    blow_up_outer,
    build_template,
    check_witness,
    classify,
    explain,
    fibration_markers,
)
from dualgraph.classifier import FAMILIES, safe_classify
from dualgraph.errors import EmptyGraph
from support import fork, random_blowups, random_graph

FIXTURES = {
    "zigzag": (DualGraph.chain([0, 0, -2, -3]), "Type1Zigzag", {"weights": [0, 0, -2, -3]}),
    "cxcstar": (DualGraph.chain([0, 0, 0]), "Type1CxCstar", {}),
    "2c": (DualGraph.cycle([0, 0, -1, -1]), "Type2c", {}),
    "2b": (DualGraph.cycle([0, 0, 0, 0]), "Type2b", {"variant": "((0,0,0,w))", "w": 0}),
    "2a": (DualGraph.cycle([0, 0]), "Type2a", {"n": 0, "weights": []}),
    "type4": (fork(spine=[-2]), "Type4", {}),
    "type5": (fork(spine=[0], far=-1), "Type5", {"n": 0, "w0": 0, "tail": [], "k_prime": -1}),
    "fork-tail": (fork(spine=[-2, -3]), "NotInList", None),
    "rigid": (DualGraph.chain([-2, -2]), "NotInList", {"reason": "LinearNotZigzag"}),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_verdicts(name):
    g, family, params = FIXTURES[name]
    v = classify(g)
    assert v.family == family
    if params is not None:
        assert v.params == params
    assert check_witness(v)


def test_more_families():
    v = classify(fork(spine=[2, -3]))
    assert (v.family, v.params) == ("Type3", {"n": 1, "w0": 2, "tail": [-3]})
    v = classify(fork(far=-1))
    assert (v.family, v.params) == ("Type6", {"k_prime": -1})
    v = classify(DualGraph.cycle([0, 0, -1]))
    assert (v.family, v.params) == ("Type2b", {"variant": "((0,0,w))", "w": -1})
    assert classify(DualGraph.chain([0])).params == {"weights": [0]}


def test_rejections_carry_reason_codes():
    assert classify(fork(leaves=(-2, -3), spine=[0])).reason == "T1Nonempty"
    assert classify(DualGraph.chain([2, 2])).reason == "HodgeIndex"
    assert classify(DualGraph.cycle([-1, -5])).reason == "IrreducibleTwoCycle"
    assert classify(DualGraph.cycle([0, 0, -2, 0, 0, -2])).reason in ("CircularOutOfRange", "HodgeIndex")


def test_empty_graph_rejected():
    with pytest.raises(EmptyGraph):
        classify(DualGraph.empty())
    assert safe_classify(DualGraph.empty()).family == "NotInList"


def test_templates_classify_to_themselves():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(0, 3)
        tail = [rng.randint(-5, -2) for _ in range(n)]
        family, params = rng.choice(
            [
                ("Type3", {"n": n, "w0": rng.randint(1, 3), "tail": tail}),
                ("Type4", {}),
                ("Type6", {"k_prime": rng.randint(-1, 4)}),
                ("Type2a", {"n": n, "weights": sorted(tail)}),
                ("Type1Zigzag", {"weights": [0, 0] + tail}),
            ]
        )
        v = classify(build_template(family, params))
        assert v.family == family
        assert check_witness(v)


def test_verdicts_survive_random_blow_ups():
    rng = random.Random(2)
    for name, (g, _, _) in FIXTURES.items():
        v = classify(g)
        for _ in range(500):
            w = classify(random_blowups(g, rng, rng.randint(1, 5)))
            assert (w.family, w.params) == (v.family, v.params), name
            assert check_witness(w)


def test_witness_soundness_on_random_graphs():
    rng = random.Random(3)
    seen = set()
    for _ in range(400):
        v = classify(random_graph(rng, rng.randint(1, 8)))
        seen.add(v.family)
        assert check_witness(v)
    assert len(seen) >= 4


def test_explain_reports():
    r = explain(classify(DualGraph.cycle([0, 0, -1, -1])))
    assert r["template"] == "(2c)"
    r = explain(classify(fork(leaves=(-2, -3), spine=[0])))
    assert r["checks"][0]["check"] == "T1Nonempty" and not r["checks"][0]["passed"]
    assert "T1 must be empty" in r["checks"][0]["cite"]
    r = explain(classify(fork(spine=[0], far=-1)))
    assert set(r["params"]) == {"n", "w0", "tail", "k_prime"}
    assert all(c["passed"] for c in r["checks"])


# family disjointness over standard forms


def _template_matches(kind, ws):
    """Which template shapes a standard weight sequence fits, by direct reading."""
    out = set()
    if kind == "chain":
        if ws == [0] or (ws[:2] == [0, 0] and len(ws) > 2 and all(x <= -2 for x in ws[2:])) or ws == [0, 0]:
            out.add("Type1Zigzag")
        if ws == [0, 0, 0]:
            out.add("Type1CxCstar")
        return out
    n = len(ws)
    reads = [ws[i:] + ws[:i] for i in range(n)]
    reads += [r[::-1] for r in reads]
    for r in reads:
        if r[:2] == [0, 0] and all(x <= -2 for x in r[2:]):
            out.add("Type2a")
        if n == 3 and r[:2] == [0, 0] and -1 <= r[2] <= 0:
            out.add("Type2b")
        if n == 4 and r[:3] == [0, 0, 0] and r[3] <= 0:
            out.add("Type2b")
        if r == [0, 0, -1, -1]:
            out.add("Type2c")
    return out


def _standard_forms(limit=8):
    neg = range(-5, -1)
    yield "chain", [0]
    yield "chain", [0, 0, 0]
    for k in range(0, limit - 1):
        if k > 4:
            break
        for tail in itertools.product(neg, repeat=k):
            yield "chain", [0, 0, *tail]
    for zeros in range(2, limit + 1, 2):
        for k in range(0, min(limit - zeros, 4) + 1):
            for tail in itertools.product(neg, repeat=k):
                yield "cycle", [0] * zeros + list(tail)
        if zeros + 2 <= limit:
            yield "cycle", [0] * zeros + [-1, -1]
    for zeros in range(2, limit):
        for w in range(-5, 1):
            yield "cycle", [0] * zeros + [w]


def test_family_disjointness_on_standard_forms():
    count = 0
    for kind, ws in _standard_forms():
        if kind == "cycle" and len(ws) < 2:
            continue
        g = DualGraph.chain(ws) if kind == "chain" else DualGraph.cycle(ws)
        matched = _template_matches(kind, ws)
        assert len(matched) <= 1, (kind, ws, matched)
        v = classify(g)
        if matched:
            assert v.family in matched, (kind, ws, v)
        else:
            assert v.family == "NotInList", (kind, ws, v)
        count += 1
    assert count > 1000


def test_every_family_is_reachable():
    got = {classify(g).family for g, _, _ in FIXTURES.values()}
    got |= {classify(fork(spine=[1])).family, classify(fork(far=0)).family}
    assert got == set(FAMILIES)


# marker consistency


def _lower_positive_spine(g):
    """Blow up on the edge away from a (-1)-fork until each positive spine vertex reaches 0."""
    for v in list(g.vertices):
        if g.weight(v) <= 0 or g.valency(v) > 2:
            continue
        if g.valency(v) == 1:
            g = blow_up_outer(g, v)
        nbs = g.neighbors(v)
        away = [u for u in nbs if not (g.valency(u) == 3 and g.weight(u) == -1)]
        u = (away or nbs)[0]
        while g.weight(v) > 0:
            before = set(g)
            g = blow_up_inner(g, v, u)
            u = (set(g) - before).pop()
    return g


def _anchors(g):
    return {m.anchor for m in fibration_markers(g)}


def test_marker_consistency():
    rng = random.Random(4)
    cases = [g for g, _, _ in FIXTURES.values()]
    cases += [fork(spine=[rng.randint(0, 3)] + [rng.randint(-4, -2) for _ in range(rng.randint(0, 2))]) for _ in range(20)]
    cases += [fork(spine=[rng.randint(0, 3), -2], far=-2) for _ in range(10)]
    for g in cases:
        v = classify(g)
        if v.accepted:
            h = _lower_positive_spine(v.standard)
            assert len(_anchors(h)) >= 2 or v.params == {"weights": [0]}, v
    for tail in ([-2, -3], [-3], [-2, -2, -4]):
        v = classify(fork(spine=tail))
        assert not v.accepted
        assert len({m.anchor[0] for m in fibration_markers(v.minimal)}) <= 1
