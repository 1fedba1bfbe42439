import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplecryst.catalog import catalog
from simplecryst.complex import (CELL_COMPLEX_OK, NOT_SPHERE, SPHERE, WEAK_PSEUDOMANIFOLD,
                                 CellComplex, ComplexError, NotContracted, barycentric_subdivision,
                                 boundary_simplex, dual_graph_coloring, from_simplices,
                                 is_isomorphic, pi1_complex, realize, sphere_certificate, validate,
                                 vertex_link)
from simplecryst.graph import are_isomorphic, g_count
from simplecryst.group import abelianize, gagliardi_presentation
from simplecryst.invariants import simple_report

from _graphs import c4c4, case_iii, g2


def test_realize_s4(s4_complex):
    C = s4_complex
    assert C.num_facets == 2 and C.closed
    assert C.f_vector == (5, 10, 10, 5, 2)
    assert C.euler_characteristic == 2


def test_realize_cp2(cp2_complex):
    C = cp2_complex
    assert C.f_vector[:2] == (5, 10) and C.num_facets == 8
    assert C.f_vector == (5, 10, 20, 20, 8)
    assert C.euler_characteristic == 3


def test_realize_s2xs2(s2xs2):
    assert realize(s2xs2).f_vector == (5, 10, 30, 35, 14)


def test_boundary_simplex():
    C = boundary_simplex(4)
    assert C.f_vector == (6, 15, 20, 15, 6)
    assert C.euler_characteristic == 2
    assert validate(C).certified


@pytest.mark.parametrize("name", ["s4", "cp2", "s2xs2"])
def test_faces_match_residue_counts(name):
    G = catalog(name)
    f = realize(G).f_vector
    d = G.dim
    for h in range(d):
        expect = sum(g_count(G, D) for D in itertools.combinations(range(d + 1), d - h))
        assert f[h] == expect


@pytest.mark.parametrize("name", ["s4", "cp2", "s2xs2"])
def test_euler_matches_report(name):
    G = catalog(name)
    C = realize(G)
    r = simple_report(G, certify=False)
    assert C.euler_characteristic == r.euler
    assert C.f_vector == r.f_vector


@pytest.mark.parametrize("name", ["s4", "cp2", "s2xs2"])
def test_round_trip(name):
    G = catalog(name)
    H = dual_graph_coloring(realize(G))
    assert H == G
    assert are_isomorphic(H, G)


def test_dual_needs_contracted():
    with pytest.raises(NotContracted):
        dual_graph_coloring(boundary_simplex(4))


def test_validate_cp2(cp2_complex):
    v = validate(cp2_complex)
    assert v.ok and v.certified
    assert set(v.certificate) == set(range(5))
    assert all(c.status == SPHERE for c in v.certificate.values())


def test_unglued_face(cp2_complex):
    adj = cp2_complex.adj.copy()
    f, i = 0, 0
    g, j = int(adj[f, i]), int(cp2_complex.perm[f, i, i])
    adj[f, i] = adj[g, j] = -1
    v = validate(CellComplex(4, adj, cp2_complex.perm))
    assert v.tier == CELL_COMPLEX_OK and v.failed == WEAK_PSEUDOMANIFOLD
    assert "unglued" in v.reason


def test_vertex_identification():
    # a 1-simplex glued to itself end to end: a circle with one vertex
    C = CellComplex(1, [[0, 0]], [[[1, 0], [1, 0]]])
    v = validate(C)
    assert v.tier is None and v.failed == CELL_COMPLEX_OK
    assert "identified" in v.reason


def test_non_involutive_rejected(s4_complex):
    perm = s4_complex.perm.copy()
    perm[0, 1] = [1, 0, 2, 3, 4]
    with pytest.raises(ComplexError):
        CellComplex(4, s4_complex.adj, perm)


def test_from_simplices_rejects_branching():
    with pytest.raises(ComplexError):
        from_simplices([(0, 1), (0, 2), (0, 3)])


def test_links_s4(s4_complex):
    for v in range(5):
        L = vertex_link(s4_complex, v)
        assert L.dim == 3 and L.num_facets == 2
        assert sphere_certificate(L).status == SPHERE


def test_links_cp2(cp2, cp2_complex):
    for v in range(5):
        L = vertex_link(cp2_complex, v)
        assert L.num_facets == 8 and L.closed
        assert sphere_certificate(L).status == SPHERE
        # the link of the vertex labeled c is the residue missing color c
        R = realize(cp2.restrict([x for x in range(5) if x != v]))
        assert is_isomorphic(L, R)
        for w in range(L.num_vertices):
            assert vertex_link(L, w).euler_characteristic == 2


def test_subdivision_s4(s4_complex):
    S = barycentric_subdivision(s4_complex)
    assert S.num_facets == 240
    assert S.euler_characteristic == 2


def test_subdivision_cp2(cp2_complex):
    S = barycentric_subdivision(cp2_complex)
    assert S.num_facets == 960
    assert S.euler_characteristic == 3
    assert validate(S).tier is not None
    vc = S.vertex_classes
    assert all(len(set(row)) == 5 for row in vc.tolist())
    rows = {tuple(sorted(row)) for row in vc.tolist()}
    assert len(rows) == S.num_facets


def test_pi1_trivial(s4_complex, cp2_complex):
    for C in (s4_complex, cp2_complex):
        assert abelianize(pi1_complex(C)).is_trivial
    from simplecryst.group import tietze_simplify
    Q, _ = tietze_simplify(pi1_complex(cp2_complex))
    assert Q.num_generators == 0


@pytest.mark.parametrize("make,free,torsion", [(case_iii, 1, ()), (c4c4, 0, (2,)), (g2, 0, ())])
def test_pi1_matches_gagliardi(make, free, torsion):
    G = make()
    a = abelianize(pi1_complex(realize(G)))
    b = abelianize(gagliardi_presentation(G, 0, 1))
    assert a == b
    assert (a.free_rank, a.torsion) == (free, torsion)
    cert = sphere_certificate(realize(G))
    assert cert.status == (SPHERE if not free and not torsion else NOT_SPHERE)


def test_orientability(cp2_complex):
    assert cp2_complex.orientable
    # a Klein-bottle-like flip: RP^2 from two triangles is not orientable
    rp2 = from_simplices([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                          (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])
    assert rp2.closed and rp2.euler_characteristic == 1
    assert not rp2.orientable
    assert sphere_certificate(rp2).status == NOT_SPHERE


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(8)))
def test_isomorphism_under_relabeling(perm):
    G = catalog("cp2").relabel(perm)
    assert is_isomorphic(realize(G), realize(catalog("cp2")))


def test_signature_distinguishes(cp2_complex, s2xs2):
    assert not is_isomorphic(cp2_complex, realize(s2xs2))
    assert not is_isomorphic(realize(g2()), realize(case_iii()))
