"""Exhaustive enumeration of small crystallizations up to isomorphism.

Color 0 is fixed to the matching (0 1)(2 3)..., color 1 to one
representative per cycle type of the {0,1}-residue (a partition of n/2),
and the remaining colors run over all perfect matchings with component-count
pruning in the compiled kernels. Isomorphic duplicates are removed by
canonical code, and classes are returned as canonical representatives in
code order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .complex import NOT_SPHERE, SPHERE, UNKNOWN
from .graph import ColoredGraph, GraphError, canonical_code, graph_from_code, multiplicity
from .invariants import check_sphere3

MAX_3MANIFOLD = 12
MAX_SIMPLE4 = 14


class TooLarge(GraphError):
    pass


class NOdd(GraphError):
    pass


class CensusResult(list):
    """Isomorphism classes found, plus graphs whose sphere certificate stayed Unknown."""

    def __init__(self, classes=(), unknown=()):
        super().__init__(classes)
        self.unknown = list(unknown)


def partitions(k: int, largest: int | None = None):
    """Partitions of ``k`` as non-increasing tuples."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def standard_matching(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int32) ^ 1


def cycle_type_matching(parts) -> np.ndarray:
    """Matching that forms {0,1}-cycles of lengths 2*parts with the standard color 0.

    A part a covers vertices 2s .. 2s+2a-1 and joins 2s+1-2s+2, ...,
    2s+2a-1-2s; a part of size 1 doubles the color-0 edge.
    """
    n = 2 * sum(parts)
    out = np.empty(n, dtype=np.int32)
    s = 0
    for a in parts:
        verts = list(range(2 * s, 2 * s + 2 * a))
        for h in range(a):
            x, y = verts[2 * h + 1], verts[(2 * h + 2) % (2 * a)]
            out[x], out[y] = y, x
        s += a
    return out


@lru_cache(maxsize=None)
def _all_matchings(n: int) -> np.ndarray:
    rows = []

    def rec(row, free):
        if not free:
            rows.append(row.copy())
            return
        a = free[0]
        for j in range(1, len(free)):
            b = free[j]
            row[a], row[b] = b, a
            rec(row, free[1:j] + free[j + 1:])

    rec([0] * n, list(range(n)))
    arr = np.array(rows, dtype=np.int32).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def all_matchings(n: int) -> np.ndarray:
    """Every perfect matching of 0..n-1 as an involution array, (n-1)!! rows."""
    return _all_matchings(n)


def bipartite_matchings(A, B) -> np.ndarray:
    """Every perfect matching joining class ``A`` to class ``B``."""
    A, B = list(A), list(B)
    n = len(A) + len(B)
    rows = []
    for p in itertools.permutations(B):
        row = [0] * n
        for a, b in zip(A, p):
            row[a], row[b] = b, a
        rows.append(row)
    return np.array(rows, dtype=np.int32).reshape(-1, n)


def _check_size(n: int, limit: int, override: bool):
    if n < 2 or n % 2:
        raise NOdd(f"vertex count must be even and positive, got {n}")
    if n > limit and not override:
        raise TooLarge(f"n={n} exceeds the desk-scale limit {limit}; pass override=True")


def _relabeled(rows: np.ndarray, order) -> np.ndarray:
    """Apply the vertex renaming v -> order[v] to each matching row."""
    order = np.asarray(order, dtype=np.int32)
    out = np.empty_like(rows)
    out[:, order] = order[rows]
    return out


def census_3manifold(n: int, override: bool = False, vertex_order=None) -> list[ColoredGraph]:
    """Contracted 4-colored graphs on ``n`` vertices meeting the Gagliardi conditions.

    ``vertex_order`` renames the vertices of the fixed colors 0 and 1 before
    the search; the class set does not depend on it.
    """
    _check_size(n, MAX_3MANIFOLD, override)
    mats = all_matchings(n)
    order = np.arange(n) if vertex_order is None else np.asarray(vertex_order)
    c0 = _relabeled(standard_matching(n)[None], order)[0]
    found: dict[bytes, bool] = {}
    for parts in partitions(n // 2):
        c1 = _relabeled(cycle_type_matching(parts)[None], order)[0]
        pairs = kernels.census3_pairs(c0, c1, mats, 2 + n // 2, 0)
        for i2, i3 in pairs:
            G = ColoredGraph(3, np.stack([c0, c1, mats[i2], mats[i3]]))
            found[canonical_code(G)] = True
    return [graph_from_code(code) for code in sorted(found)]


def sphere_split(graphs, budget: int = 100_000):
    """Partition 3-manifold gems into (Sphere, NotSphere, Unknown) lists."""
    out = {SPHERE: [], NOT_SPHERE: [], UNKNOWN: []}
    for G in graphs:
        out[check_sphere3(G, budget).status].append(G)
    return out[SPHERE], out[NOT_SPHERE], out[UNKNOWN]


@dataclass
class _Bases:
    spheres: list = field(default_factory=list)
    unknown: list = field(default_factory=list)


def _simple_bases(n: int, m: int, vertex_order, budget: int) -> _Bases:
    """Bipartite 4-colored S^3 gems with every g_ij = m, one per class.

    Graphs keep the search labeling, whose classes are the even and the odd
    vertices (after ``vertex_order``).
    """
    order = np.arange(n) if vertex_order is None else np.asarray(vertex_order)
    evens, odds = order[0::2], order[1::2]
    inv = np.empty(n, dtype=np.int64)
    inv[order] = np.arange(n)
    bip = bipartite_matchings(sorted(evens), sorted(odds))
    c0 = _relabeled(standard_matching(n)[None], order)[0]
    seen: dict[bytes, ColoredGraph] = {}
    for parts in partitions(n // 2):
        c1 = _relabeled(cycle_type_matching(parts)[None], order)[0]
        for i2, i3 in kernels.census3_pairs(c0, c1, bip, 3 * m, m):
            G = ColoredGraph(3, np.stack([c0, c1, bip[i2], bip[i3]]))
            seen.setdefault(canonical_code(G), G)
    out = _Bases()
    for code in sorted(seen):
        status = check_sphere3(seen[code], budget).status
        if status == SPHERE:
            out.spheres.append(seen[code])
        elif status == UNKNOWN:
            out.unknown.append(seen[code])
    out.classes = bip
    return out


def simple_sphere_bases(n: int, override: bool = False, budget: int = 100_000) -> list[ColoredGraph]:
    """Canonical bipartite S^3 gems on ``n`` vertices with all g_ij = (n+4)/6."""
    _check_size(n, MAX_SIMPLE4, override)
    if (n + 4) % 6:
        return []
    bases = _simple_bases(n, (n + 4) // 6, None, budget)
    return [graph_from_code(canonical_code(G)) for G in bases.spheres]


def census_simple_4(n: int, override: bool = False, budget: int = 100_000,
                    vertex_order=None) -> CensusResult:
    """Simple crystallizations of 4-manifolds on ``n`` vertices, up to isomorphism.

    Bipartite S^3 gems with all g_ij = m = (n+4)/6 are extended by a fifth
    bipartite matching meeting each color in m components with all
    three-color residues connected; extensions with a triple edge (n > 2)
    or a residue that fails to certify as S^3 are discarded. Graphs whose
    certificates stay Unknown are kept in ``result.unknown``.
    """
    _check_size(n, MAX_SIMPLE4, override)
    if (n + 4) % 6:
        return CensusResult()
    m = (n + 4) // 6
    bases = _simple_bases(n, m, vertex_order, budget)
    bip = bases.classes
    found: dict[bytes, ColoredGraph] = {}
    unknown: dict[bytes, ColoredGraph] = {}
    for B in bases.spheres + bases.unknown:
        base_unknown = any(B is U for U in bases.unknown)
        for i4 in kernels.extend_simple(B.matchings, bip, m):
            G = ColoredGraph(4, np.vstack([B.matchings, bip[i4][None]]))
            code = canonical_code(G)
            if code in found or code in unknown:
                continue
            if n > 2 and _has_triple_edge(G):
                continue
            status = SPHERE if not base_unknown else UNKNOWN
            for c in range(4):
                R = G.restrict([x for x in range(5) if x != c])
                s = check_sphere3(R, budget).status
                if s == NOT_SPHERE:
                    status = NOT_SPHERE
                    break
                if s == UNKNOWN:
                    status = UNKNOWN
            if status == SPHERE:
                found[code] = G
            elif status == UNKNOWN:
                unknown[code] = G
    return CensusResult([graph_from_code(c) for c in sorted(found)],
                        [graph_from_code(c) for c in sorted(unknown)])


def _has_triple_edge(G: ColoredGraph) -> bool:
    for v in range(G.order):
        for c in range(G.num_colors):
            w = int(G.matchings[c, v])
            if v < w and multiplicity(G, v, w) >= 3:
                return True
    return False
