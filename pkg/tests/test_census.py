import itertools

import numpy as np
import pytest

from simplecryst.census import (NOdd, TooLarge, all_matchings, census_3manifold, census_simple_4,
                                cycle_type_matching, partitions, simple_sphere_bases, sphere_split)
from simplecryst.complex import realize
from simplecryst.graph import (are_isomorphic, canonical_code, g_count, graph_from_code,
                               is_bipartite, is_contracted)
from simplecryst.invariants import check_4manifold_crystallization, simple_report, simplicity

from _graphs import g1, g2, g3, g3_completion


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_matchings_count():
    # (n-1)!! perfect matchings
    assert len(all_matchings(6)) == 15 and len(all_matchings(8)) == 105


def test_cycle_type():
    from simplecryst.census import standard_matching
    from simplecryst.graph import from_edges, residue
    c0 = standard_matching(8)
    c1 = cycle_type_matching((3, 1))
    comps = residue(from_edges(1, 8, [[(v, int(c0[v])) for v in range(8) if v < c0[v]],
                                      [(v, int(c1[v])) for v in range(8) if v < c1[v]]]), (0, 1))
    assert sorted(map(len, comps)) == [2, 6]


def test_guards():
    with pytest.raises(TooLarge):
        census_3manifold(14)
    with pytest.raises(TooLarge):
        census_simple_4(20)
    with pytest.raises(NOdd):
        census_simple_4(7)


def test_small_3_census():
    two = census_3manifold(2)
    assert len(two) == 1 and two[0].order == 2
    assert census_3manifold(4) and all(is_contracted(G) for G in census_3manifold(6))


@pytest.fixture(scope="module")
def census8():
    return census_3manifold(8)


def test_census_3_n8(census8):
    assert len(census8) == 10
    spheres, not_spheres, unknown = sphere_split(census8)
    assert len(spheres) == 7 and not unknown
    equal = [G for G in spheres
             if len({g_count(G, p) for p in itertools.combinations(range(4), 2)}) == 1]
    assert len(equal) == 3
    for H in (g1(), g2(), g3()):
        assert sum(are_isomorphic(H, G) for G in equal) == 1


def test_census_closed_under_relabeling(census8):
    codes = {canonical_code(G) for G in census8}
    assert len(codes) == len(census8)
    rng = np.random.default_rng(0)
    for G in census8:
        H = G.relabel(rng.permutation(8)).recolor(rng.permutation(4))
        assert canonical_code(H) in codes
        assert canonical_code(graph_from_code(canonical_code(H))) == canonical_code(H)


def test_census_3_order_independent(census8):
    order = np.random.default_rng(5).permutation(8)
    other = census_3manifold(8, vertex_order=order)
    assert {canonical_code(G) for G in other} == {canonical_code(G) for G in census8}


def test_simple_bases_n8():
    bases = simple_sphere_bases(8)
    assert len(bases) == 3
    assert all(is_bipartite(G) is not None for G in bases)


def test_simple_census_n2(s4):
    res = census_simple_4(2)
    assert len(res) == 1 and are_isomorphic(res[0], s4)


def test_simple_census_n8(cp2):
    res = census_simple_4(8)
    assert len(res) == 1 and not res.unknown
    G = res[0]
    assert are_isomorphic(G, cp2)
    assert are_isomorphic(g3_completion(), cp2)
    assert check_4manifold_crystallization(G).is_crystallization and simplicity(G, 1)
    r = simple_report(G)
    assert G.order == 6 * r.m - 4
    assert realize(G).f_vector == r.f_vector


def test_simple_census_order_independent(cp2):
    order = np.random.default_rng(2).permutation(8)
    res = census_simple_4(8, vertex_order=order)
    assert [canonical_code(G) for G in res] == [canonical_code(cp2)]


def test_sizes_without_classes():
    assert census_simple_4(4) == [] and census_simple_4(6) == []
