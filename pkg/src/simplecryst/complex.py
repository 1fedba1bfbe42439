"""Simplicial cell complexes as facet-gluing structures.

A complex of dimension ``d`` has ``F`` facets with local vertex labels
``0..d``. ``adj[f, i]`` is the facet glued to facet ``f`` across its face
opposite local vertex ``i`` (-1 if that face is unglued) and ``perm[f, i]``
maps the local labels of ``f`` to those of the partner, sending ``i`` to the
partner's opposite label.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .graph import ColoredGraph, all_permutations
from .group import (Abelianization, GroupPresentation, abelianize,
                    tietze_simplify)


class ComplexError(ValueError):
    pass


class NotContracted(ComplexError):
    pass


SPHERE = "Sphere"
NOT_SPHERE = "NotSphere"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SphereCertificate:
    status: str
    abelianization: Abelianization | None = None
    reason: str = ""

    def __str__(self):
        if self.status == NOT_SPHERE and self.abelianization is not None:
            return f"NotSphere({self.abelianization})"
        return self.status


def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def masks_of_size(D: int, k: int) -> tuple[int, ...]:
    """Bit masks over ``D`` labels with exactly ``k`` bits set, ascending."""
    return tuple(m for m in range(1, 1 << D) if _popcount(m) == k)


class _FaceIds:
    """Lazy per-dimension (dense id per (facet, mask) slot, class count)."""

    def __init__(self, roots: np.ndarray, F: int, D: int):
        self._roots = roots.reshape(F, 1 << D)
        self._D = D
        self._cache = {}

    def __len__(self):
        return self._D

    def __getitem__(self, k: int):
        if k < 0:
            k += self._D
        if k not in self._cache:
            masks = list(masks_of_size(self._D, k + 1))
            sub = self._roots[:, masks]
            uniq, inv = np.unique(sub, return_inverse=True)
            ids = np.full(self._roots.shape, -1, dtype=np.int64)
            ids[:, masks] = inv.reshape(sub.shape)
            self._cache[k] = (ids, len(uniq))
        return self._cache[k]


class CellComplex:
    """Immutable facet-gluing structure; derived face data is cached on demand."""

    def __init__(self, dim: int, adj, perm):
        adj = np.array(adj, dtype=np.int32).reshape(-1, dim + 1)
        perm = np.array(perm, dtype=np.int8).reshape(-1, dim + 1, dim + 1)
        if adj.shape[0] != perm.shape[0]:
            raise ComplexError("adjacency and permutation tables disagree in size")
        F, D = adj.shape
        if adj.min(initial=0) < -1 or adj.max(initial=-1) >= F:
            raise ComplexError("gluing names a missing facet")
        fs, ids = np.nonzero(adj >= 0)
        P = perm[fs, ids].astype(np.int64)
        ident = np.arange(D)
        if not (np.sort(P, axis=1) == ident).all():
            k = int(np.nonzero(~(np.sort(P, axis=1) == ident).all(axis=1))[0][0])
            raise ComplexError(f"facet {fs[k]} face {ids[k]}: not a permutation {P[k].tolist()}")
        gs = adj[fs, ids]
        js = P[np.arange(len(fs)), ids]
        back = adj[gs, js] == fs
        Q = perm[gs, js].astype(np.int64)
        inv = (np.take_along_axis(Q, P, axis=1) == ident).all(axis=1)
        bad = np.nonzero(~(back & inv))[0]
        if bad.size:
            k = int(bad[0])
            raise ComplexError(f"gluing of facet {fs[k]} face {ids[k]} is not involutive")
        adj.setflags(write=False)
        perm.setflags(write=False)
        self.dim = dim
        self.adj = adj
        self.perm = perm

    @classmethod
    def _trusted(cls, dim: int, adj: np.ndarray, perm: np.ndarray) -> CellComplex:
        """Wrap tables built by a move kernel, skipping the involution check."""
        C = cls.__new__(cls)
        adj.setflags(write=False)
        perm.setflags(write=False)
        C.dim, C.adj, C.perm = dim, adj, perm
        return C

    @property
    def _slot_roots(self) -> np.ndarray:
        """(F, 2^D) union-find roots; a root is the least slot of its face class."""
        return self._roots.reshape(self.adj.shape[0], -1)

    @cached_property
    def _vertex_roots(self) -> np.ndarray:
        D = self.dim + 1
        return self._slot_roots[:, [1 << k for k in range(D)]]

    @property
    def num_facets(self) -> int:
        return self.adj.shape[0]

    def gluing(self, f: int, i: int):
        """(partner facet, partner face, label map) for face ``i`` of ``f``."""
        g = int(self.adj[f, i])
        if g < 0:
            return None
        p = tuple(int(x) for x in self.perm[f, i])
        return g, p[i], p

    def __eq__(self, other):
        return (isinstance(other, CellComplex) and self.dim == other.dim
                and np.array_equal(self.adj, other.adj)
                and np.array_equal(self.perm, other.perm))

    def __hash__(self):
        return hash((self.dim, self.adj.tobytes(), self.perm.tobytes()))

    def __repr__(self):
        return f"CellComplex(dim={self.dim}, facets={self.num_facets})"

    # -- derived face data ------------------------------------------------

    @cached_property
    def _roots(self) -> np.ndarray:
        return kernels.face_roots(self.adj, self.perm)

    @cached_property
    def _face_ids(self) -> _FaceIds:
        """Per dimension: (dense id per (facet, mask) slot, class count)."""
        F, D = self.adj.shape
        return _FaceIds(self._roots, F, D)

    def face_id(self, f: int, mask: int) -> int:
        """Global class id of the face of ``f`` spanned by the labels in ``mask``."""
        return int(self._face_ids[_popcount(mask) - 1][0][f, mask])

    @cached_property
    def vertex_classes(self) -> np.ndarray:
        """(F, d+1) array: global vertex id of each local vertex."""
        ids = self._face_ids[0][0]
        return np.stack([ids[:, 1 << k] for k in range(self.dim + 1)], axis=1)

    def faces(self, k: int) -> dict[int, list[tuple[int, int]]]:
        """Global k-faces: class id -> list of (facet, local mask) incidences."""
        ids, _ = self._face_ids[k]
        out: dict[int, list[tuple[int, int]]] = {}
        F, D = self.adj.shape
        for f in range(F):
            for m in range(1, 1 << D):
                if _popcount(m) == k + 1:
                    out.setdefault(int(ids[f, m]), []).append((f, m))
        return out

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        F, D = self.adj.shape
        counts = kernels.face_counts(self._roots, D)
        return tuple(int(x) for x in counts[:D - 1]) + (F,)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * x for k, x in enumerate(self.f_vector))

    @property
    def num_vertices(self) -> int:
        return self.f_vector[0]

    @cached_property
    def closed(self) -> bool:
        return bool((self.adj >= 0).all())

    @cached_property
    def connected(self) -> bool:
        F = self.num_facets
        seen = np.zeros(F, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            f = stack.pop()
            for g in self.adj[f]:
                if g >= 0 and not seen[g]:
                    seen[g] = True
                    stack.append(int(g))
        return bool(seen.all())

    @cached_property
    def orientable(self) -> bool:
        F, D = self.adj.shape
        sign = np.zeros(F, dtype=np.int8)
        for s in range(F):
            if sign[s]:
                continue
            sign[s] = 1
            stack = [s]
            while stack:
                f = stack.pop()
                for i in range(D):
                    g = int(self.adj[f, i])
                    if g < 0:
                        continue
                    want = -sign[f] * _perm_sign(self.perm[f, i])
                    if sign[g] == 0:
                        sign[g] = want
                        stack.append(g)
                    elif sign[g] != want:
                        return False
        return True

    def signature(self) -> bytes:
        """Isomorphism invariant of a connected complex (relabeling facets and vertices)."""
        if not self.connected:
            raise ComplexError("signature needs a connected complex")
        trace = kernels.complex_trace(self.adj, self.perm.astype(np.int32),
                                      all_permutations(self.dim + 1))
        head = np.array([self.dim, self.num_facets], dtype=">u2").tobytes()
        return head + trace.astype(">u2").tobytes()


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def is_isomorphic(A: CellComplex, B: CellComplex) -> bool:
    if A.dim != B.dim or A.num_facets != B.num_facets:
        return False
    return A.signature() == B.signature()


# -- constructions ---------------------------------------------------------

def realize(G: ColoredGraph) -> CellComplex:
    """Complex with one labeled simplex per vertex, glued along colored edges."""
    D = G.num_colors
    adj = G.matchings.T.copy()
    perm = np.broadcast_to(np.arange(D, dtype=np.int8), (G.order, D, D)).copy()
    return CellComplex(G.dim, adj, perm)


def from_simplices(facets) -> CellComplex:
    """Complex from vertex tuples, gluing faces with equal vertex sets.

    Each codimension-one vertex set must occur at most twice; faces seen
    once stay unglued.
    """
    facets = [tuple(sorted(f)) for f in facets]
    D = len(facets[0])
    F = len(facets)
    adj = np.full((F, D), -1, dtype=np.int32)
    perm = np.zeros((F, D, D), dtype=np.int8)
    for f in range(F):
        perm[f, :] = np.arange(D)
    where: dict[tuple, list[tuple[int, int]]] = {}
    for f, verts in enumerate(facets):
        for i in range(D):
            key = verts[:i] + verts[i + 1:]
            where.setdefault(key, []).append((f, i))
    for key, slots in where.items():
        if len(slots) > 2:
            raise ComplexError(f"face {key} lies in {len(slots)} facets")
        if len(slots) == 2:
            (f, i), (g, j) = slots
            vf, vg = facets[f], facets[g]
            p = [vg.index(v) if v in vg else j for v in vf]
            p[i] = j
            q = [0] * D
            for a, b in enumerate(p):
                q[b] = a
            adj[f, i], adj[g, j] = g, f
            perm[f, i], perm[g, j] = p, q
    return CellComplex(D - 1, adj, perm)


def boundary_simplex(d: int) -> CellComplex:
    """The boundary of the (d+1)-simplex as a d-dimensional complex."""
    verts = range(d + 2)
    return from_simplices([tuple(v for v in verts if v != k) for k in verts])


def dual_graph_coloring(C: CellComplex) -> ColoredGraph:
    """Colored dual graph of a contracted complex; color = opposite vertex class.

    Colors are numbered by the local labels of facet 0, so this inverts
    ``realize``.
    """
    D = C.dim + 1
    vc = C.vertex_classes
    if C.num_vertices != D:
        raise NotContracted(f"complex has {C.num_vertices} vertices, need {D}")
    if not C.closed:
        raise NotContracted("complex has unglued faces")
    color_of = {int(vc[0, k]): k for k in range(D)}
    match = np.empty((D, C.num_facets), dtype=np.int32)
    for f in range(C.num_facets):
        row = [color_of[int(x)] for x in vc[f]]
        if sorted(row) != list(range(D)):
            raise NotContracted(f"facet {f} repeats a vertex class")
        for i in range(D):
            match[row[i], f] = C.adj[f, i]
    return ColoredGraph(C.dim, match)


def vertex_link(C: CellComplex, v: int) -> CellComplex:
    """Combinatorial link of global vertex ``v``: one (d-1)-simplex per corner."""
    F, D = C.adj.shape
    vc = C.vertex_classes
    corners = [(f, k) for f in range(F) for k in range(D) if vc[f, k] == v]
    index = {c: n for n, c in enumerate(corners)}
    adj = np.full((len(corners), D - 1), -1, dtype=np.int32)
    perm = np.zeros((len(corners), D - 1, D - 1), dtype=np.int8)
    for n, (f, k) in enumerate(corners):
        old = [x for x in range(D) if x != k]
        for a, x in enumerate(old):
            g = int(C.adj[f, x])
            if g < 0:
                perm[n, a] = np.arange(D - 1)
                continue
            P = C.perm[f, x]
            kk = int(P[k])
            g_old = [y for y in range(D) if y != kk]
            adj[n, a] = index[(g, kk)]
            perm[n, a] = [g_old.index(int(P[y])) for y in old]
    return CellComplex(D - 2, adj, perm)


def barycentric_subdivision(C: CellComplex) -> CellComplex:
    """Flag subdivision; new local label ``k`` is the barycenter of the level-k face."""
    F, D = C.adj.shape
    perms = [tuple(p) for p in itertools.permutations(range(D))]
    pidx = {p: n for n, p in enumerate(perms)}
    P = len(perms)
    adj = np.full((F * P, D), -1, dtype=np.int32)
    perm = np.broadcast_to(np.arange(D, dtype=np.int8), (F * P, D, D)).copy()
    for f in range(F):
        for n, pi in enumerate(perms):
            me = f * P + n
            for k in range(D - 1):
                sw = list(pi)
                sw[k], sw[k + 1] = sw[k + 1], sw[k]
                adj[me, k] = f * P + pidx[tuple(sw)]
            g = int(C.adj[f, pi[-1]])
            if g >= 0:
                q = C.perm[f, pi[-1]]
                adj[me, D - 1] = g * P + pidx[tuple(int(q[x]) for x in pi)]
    return CellComplex(C.dim, adj, perm)


# -- fundamental group -------------------------------------------------------

def pi1_complex(C: CellComplex) -> GroupPresentation:
    """Presentation from a spanning tree of the dual graph.

    Generators are the glued codimension-one face pairs outside the tree;
    each codimension-two face gives the word of pairs crossed while
    circling it.
    """
    F, D = C.adj.shape
    if F == 0:
        return GroupPresentation(0, ())
    tree = set()
    seen = [False] * F
    seen[0] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for i in range(D):
            g = int(C.adj[f, i])
            if g >= 0 and not seen[g]:
                seen[g] = True
                j = int(C.perm[f, i, i])
                tree.add(min((f, i), (g, j)))
                queue.append(g)
    gen = {}
    for f in range(F):
        for i in range(D):
            g = int(C.adj[f, i])
            if g < 0:
                continue
            j = int(C.perm[f, i, i])
            key = min((f, i), (g, j))
            if key not in tree and key not in gen:
                gen[key] = len(gen) + 1
    relators = []
    if D >= 3:
        visited = set()
        for f in range(F):
            for a, b in itertools.combinations(range(D), 2):
                if (f, a, b) in visited:
                    continue
                word = []
                state = (f, a, b)
                ok = True
                while True:
                    h, x, y = state
                    visited.add((h, min(x, y), max(x, y)))
                    g = int(C.adj[h, x])
                    if g < 0:
                        ok = False
                        break
                    p = C.perm[h, x]
                    key = min((h, x), (g, int(p[x])))
                    if key in gen:
                        word.append(gen[key] if key == (h, x) else -gen[key])
                    state = (g, int(p[y]), int(p[x]))
                    if state == (f, a, b):
                        break
                if ok:
                    relators.append(tuple(word))
    return GroupPresentation(len(gen), tuple(relators))


# -- sphere certificates and validation -------------------------------------

def _cell_complex_error(C: CellComplex) -> str | None:
    """Why some facet has two of its own faces identified, or None."""
    D = C.dim + 1
    f, m1, m2 = kernels.identified_faces(C._roots, D)
    if f < 0:
        return None
    labels = lambda m: "".join(str(b) for b in range(D) if (m >> b) & 1)
    k = _popcount(int(m1)) - 1
    what = "vertices" if k == 0 else f"{k}-faces"
    return f"facet {f}: {what} {labels(m1)} and {labels(m2)} are identified"


def sphere_certificate(C: CellComplex, budget: int = 100_000) -> SphereCertificate:
    """Certify that a closed complex is a PL sphere in dimensions 1 to 3.

    Dimension 1: a connected closed complex is a circle. Dimension 2: a
    connected surface (all vertex links circles) with Euler characteristic 2.
    Dimension 3: a connected 3-manifold (all vertex links 2-spheres) with
    trivial fundamental group; a nontrivial first homology proves
    otherwise, and a group that resists simplification stays Unknown.
    """
    err = _cell_complex_error(C)
    if err:
        return SphereCertificate(NOT_SPHERE, reason=err)
    if not C.closed:
        return SphereCertificate(NOT_SPHERE, reason="has unglued faces")
    if not C.connected:
        return SphereCertificate(NOT_SPHERE, reason="disconnected")
    if C.dim <= 1:
        return SphereCertificate(SPHERE)
    unknown = False
    for v in range(C.num_vertices):
        cert = sphere_certificate(vertex_link(C, v), budget)
        if cert.status == NOT_SPHERE:
            return SphereCertificate(NOT_SPHERE, reason=f"link of vertex {v}: {cert.reason or cert}")
        unknown |= cert.status == UNKNOWN
    if C.dim == 2:
        if C.euler_characteristic == 2:
            return SphereCertificate(SPHERE)
        return SphereCertificate(NOT_SPHERE, reason=f"euler characteristic {C.euler_characteristic}")
    P = pi1_complex(C)
    ab = abelianize(P)
    if not ab.is_trivial:
        return SphereCertificate(NOT_SPHERE, ab, reason=f"H1 = {ab}")
    if unknown or C.dim > 3:
        return SphereCertificate(UNKNOWN, ab, reason="dimension or link undecided")
    Q, _ = tietze_simplify(P, budget)
    if Q.num_generators == 0:
        return SphereCertificate(SPHERE, ab)
    return SphereCertificate(UNKNOWN, ab, reason="presentation did not simplify to trivial")


CELL_COMPLEX_OK = "CellComplexOK"
WEAK_PSEUDOMANIFOLD = "WeakPseudomanifold"
PSEUDOTRIANGULATION = "Pseudotriangulation"


@dataclass
class Validation:
    """Outcome of ``validate``: the highest tier passed and why the next failed."""

    tier: str | None
    failed: str | None = None
    reason: str | None = None
    certificate: dict[int, SphereCertificate] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.tier == PSEUDOTRIANGULATION

    @property
    def certified(self) -> bool:
        return self.ok and all(c.status == SPHERE for c in self.certificate.values())

    def __str__(self):
        if self.failed:
            return f"{self.failed} failure: {self.reason}"
        certs = ", ".join(f"{v}:{c}" for v, c in sorted(self.certificate.items()))
        return f"{self.tier}({certs})"


def validate(C: CellComplex, budget: int = 100_000) -> Validation:
    err = _cell_complex_error(C)
    if err:
        return Validation(None, CELL_COMPLEX_OK, err)
    if not C.closed:
        f, i = map(int, np.argwhere(C.adj < 0)[0])
        return Validation(CELL_COMPLEX_OK, WEAK_PSEUDOMANIFOLD, f"facet {f} face {i} is unglued")
    certs = {}
    for v in range(C.num_vertices):
        cert = sphere_certificate(vertex_link(C, v), budget)
        certs[v] = cert
        if cert.status == NOT_SPHERE:
            return Validation(WEAK_PSEUDOMANIFOLD, PSEUDOTRIANGULATION,
                              f"link of vertex {v} is not a sphere: {cert.reason}", certs)
    return Validation(PSEUDOTRIANGULATION, None, None, certs)
