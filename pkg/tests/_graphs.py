"""Small gems shared by the tests."""

from simplecryst.catalog import CP2_EDGES
from simplecryst.graph import from_edges


def one_based(edges):
    return [(a - 1, b - 1) for a, b in edges]


# colors 0-2 shared by the three 8-vertex S^3 graphs with every g_ij = 2
J1 = CP2_EDGES[:3]
G1_C3 = one_based([(1, 3), (2, 4), (6, 7), (5, 8)])
G2_C3 = one_based([(1, 3), (2, 8), (5, 6), (4, 7)])
G3_C3 = one_based([(1, 5), (2, 8), (3, 4), (6, 7)])
# color 3 making {0,1,2,3} a Gagliardi graph with pi_1 = Z
CASE_III_C3 = one_based([(1, 7), (2, 8), (4, 5), (3, 6)])


def g1():
    return from_edges(3, 8, J1 + [G1_C3])


def g2():
    return from_edges(3, 8, J1 + [G2_C3])


def g3():
    return from_edges(3, 8, J1 + [G3_C3])


def case_iii():
    return from_edges(3, 8, J1 + [CASE_III_C3])


def c4c4():
    """Two 4-cycles in every two-color residue: a Gagliardi graph with pi_1 = Z_2."""
    a, b = [0, 1, 2, 3], [4, 5, 6, 7]
    c0 = [(a[0], a[1]), (a[2], a[3]), (b[0], b[1]), (b[2], b[3])]
    c1 = [(a[1], a[2]), (a[0], a[3]), (b[1], b[2]), (b[0], b[3])]
    c2 = [(a[i], b[i]) for i in range(4)]
    c3 = [(a[0], b[2]), (a[1], b[3]), (a[2], b[0]), (a[3], b[1])]
    return from_edges(3, 8, [c0, c1, c2, c3])


def g2_second_completion():
    """G2 completed by v3v4, v1v7, v2v6, v5v8: one residue has pi_1 = Z_2."""
    return from_edges(4, 8, J1 + [G2_C3, one_based([(3, 4), (1, 7), (2, 6), (5, 8)])])


def g3_completion():
    return from_edges(4, 8, J1 + [G3_C3, one_based([(1, 3), (4, 7), (5, 6), (2, 8)])])


def case_iii_5():
    """Case (iii) graph completed by a bipartite color-4 matching."""
    return from_edges(4, 8, J1 + [CASE_III_C3, one_based([(1, 2), (3, 4), (5, 6), (7, 8)])])
