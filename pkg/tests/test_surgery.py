import numpy as np
import pytest

from simplecryst.catalog import catalog
from simplecryst.graph import are_isomorphic, canonical_code, g_count, is_bipartite, is_contracted
from simplecryst.invariants import simple_report, simplicity
from simplecryst.surgery import (EmptySpec, SelfSum, connected_sum, iterated_sum, parse_sum_spec,
                                 sum_vertices)


def test_s4_is_identity(s4, cp2):
    G = connected_sum(s4, 0, s4, 1)
    assert G.order == 2 and are_isomorphic(G, s4)
    H = connected_sum(cp2, 3, s4, 0)
    assert canonical_code(H) == canonical_code(cp2)


def test_self_sum(cp2):
    with pytest.raises(SelfSum):
        connected_sum(cp2, 2, cp2, 2)


def test_cp2_twice(cp2):
    v1, v2 = sum_vertices(cp2, cp2)
    G = connected_sum(cp2, v1, cp2, v2)
    assert G.order == 14
    assert is_bipartite(G) is not None and simplicity(G, 1)
    assert all(g_count(G, (i, j)) == 3 for i in range(5) for j in range(i + 1, 5))
    r = simple_report(G, certify=False)
    assert (r.m, r.beta2) == (3, 2)


def test_reverse_uses_same_class(cp2):
    v1, v2 = sum_vertices(cp2, cp2)
    w1, w2 = sum_vertices(cp2, cp2, reverse=True)
    a, b = is_bipartite(cp2)
    assert v1 in b and v2 in a
    assert w1 in b and w2 in b
    G = connected_sum(cp2, w1, catalog("cp2"), w2)
    assert is_bipartite(G) is not None


def test_sigma(cp2, s2xs2):
    rng = np.random.default_rng(11)
    for _ in range(10):
        sigma = rng.permutation(5)
        G = connected_sum(cp2, int(rng.integers(8)), s2xs2, int(rng.integers(14)), sigma)
        assert G.order == 20 and is_contracted(G)


def test_parse_spec():
    assert parse_sum_spec("3*cp2 + 20*cp2bar") == [("cp2", False, 3), ("cp2", True, 20)]
    assert parse_sum_spec("k3, -cp2") == [("k3", False, 1), ("cp2", True, 1)]
    with pytest.raises(EmptySpec):
        parse_sum_spec("  ")
    with pytest.raises(EmptySpec):
        iterated_sum([])


def test_three_cp2_twenty_bar():
    G = iterated_sum("3*cp2 + 20*cp2bar")
    assert G.order == 140
    r = simple_report(G, certify=False)
    assert r.simple and r.m == 24 and r.beta2 == 23 and r.bipartite


@pytest.mark.parametrize("a,b", [("s4", "cp2"), ("cp2", "cp2"), ("cp2", "s2xs2"),
                                 ("s2xs2", "s2xs2"), ("s4", "s2xs2")])
def test_closure(a, b):
    G1, G2 = catalog(a), catalog(b)
    m1, m2 = simple_report(G1, certify=False).m, simple_report(G2, certify=False).m
    rng = np.random.default_rng(hash((a, b)) % 2 ** 32)
    A1, B1 = is_bipartite(G1)
    A2, B2 = is_bipartite(G2)
    for _ in range(50):
        v1 = int(rng.choice(A1))
        v2 = int(rng.choice(B2))
        G = connected_sum(G1, v1, G2, v2, rng.permutation(5))
        assert G.order == G1.order + G2.order - 2
        assert simplicity(G, 1)
        assert is_bipartite(G) is not None
        assert simple_report(G, certify=False).m == m1 + m2 - 1
