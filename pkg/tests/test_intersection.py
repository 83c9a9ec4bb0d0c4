import random

import pytest

from dualgraph import (
    DualGraph,
    apply_trace,
    contracts_to_zero_vertex,
    determinant,
    inertia,
    is_contractible,
    is_contractible_onto,
    is_negative_definite,
)
from dualgraph.intersection import characteristic_polynomial, leading_minors
from support import (
    contractible_oracle,
    det_oracle,
    inertia_oracle,
    leibniz_det,
    matrix_of,
    random_graph,
    zero_vertex_oracle,
)

D4 = DualGraph({"E": -2, "A": -2, "B": -2, "C": -2}, [("E", "A"), ("E", "B"), ("E", "C")])


def test_determinant_against_two_oracles():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 7))
        m = matrix_of(g)
        assert determinant(m) == det_oracle(m) == leibniz_det(m)


def test_determinant_with_zero_pivots():
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[0, 0], [0, 5]]) == 0
    assert determinant([]) == 1


def test_leading_minors_against_oracle():
    rng = random.Random(2)
    for _ in range(200):
        m = matrix_of(random_graph(rng, rng.randint(1, 6)))
        want = [det_oracle([r[: k + 1] for r in m[: k + 1]]) for k in range(len(m))]
        assert leading_minors(m) == want


def test_d4_is_negative_definite():
    # minors of the D4 star: -2, 3, -4, 4
    assert leading_minors(D4) == [-2, 3, -4, 4]
    assert is_negative_definite(D4)


def test_semidefinite_chain():
    g = DualGraph.chain([-2, -1, -2])
    assert determinant(g) == 0
    assert not is_negative_definite(g)
    assert contracts_to_zero_vertex(g)


def test_negative_definite_against_eigenvalues():
    rng = random.Random(3)
    for _ in range(300):
        m = matrix_of(random_graph(rng, rng.randint(1, 7), lo=-4, hi=0))
        assert is_negative_definite(m) == (inertia_oracle(m)[2] == len(m))


def test_inertia_against_eigenvalues():
    rng = random.Random(4)
    for _ in range(300):
        m = matrix_of(random_graph(rng, rng.randint(1, 8)))
        assert inertia(m) == inertia_oracle(m)


def test_characteristic_polynomial_constant_term():
    rng = random.Random(5)
    for _ in range(100):
        m = matrix_of(random_graph(rng, rng.randint(1, 6)))
        p = characteristic_polynomial(m)
        assert p[-1] == (-1) ** len(m) * det_oracle(m)


def test_contractibility_against_naive_search():
    rng = random.Random(6)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 6), lo=-3, hi=0)
        res = is_contractible(g)
        assert bool(res) == contractible_oracle(g)
        if res:
            assert apply_trace(g, res.witness).is_empty()


def test_zero_vertex_target_against_naive_search():
    rng = random.Random(7)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 6), lo=-3, hi=0)
        res = contracts_to_zero_vertex(g)
        assert bool(res) == zero_vertex_oracle(g)
        if res:
            end = apply_trace(g, res.witness)
            assert len(end) == 1 and end.weight(end.vertices[0]) == 0


def test_contractible_examples():
    assert is_contractible(DualGraph.chain([-3, -1, -2]))
    assert not is_contractible(DualGraph.chain([-2, -1, -2]))
    assert not is_contractible(D4)
    assert is_contractible(DualGraph.chain([-1]))


def test_contractible_onto():
    g = DualGraph.chain([-2, -1, -2])
    res = is_contractible_onto(g, "v3")
    assert res
    assert dict(apply_trace(g, res.witness).weights) == {"v3": 0}
    assert not is_contractible_onto(DualGraph.chain([-2, -1, -1]), "v3")


def test_order_parameter_does_not_change_answer():
    rng = random.Random(8)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 6), lo=-3, hi=0)
        a = is_contractible(g, order=lambda c: sorted(c, reverse=True))
        b = is_contractible(g, order=lambda c: rng.sample(c, len(c)))
        assert bool(a) == bool(b) == bool(is_contractible(g))


def test_unknown_keep_vertex():
    with pytest.raises(KeyError):
        is_contractible_onto(DualGraph.chain([0]), "nope")
