"""Regular edge-colored graphs stored as one fixed-point-free involution per color."""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from . import kernels


class GraphError(ValueError):
    """Base class for invalid colored-graph input."""


class LoopEdge(GraphError):
    def __init__(self, v, c):
        super().__init__(f"color {c} matches vertex {v} to itself")
        self.vertex, self.color = v, c


class NotInvolution(GraphError):
    def __init__(self, v, c):
        super().__init__(f"color {c} is not an involution at vertex {v}")
        self.vertex, self.color = v, c


class ColorCountMismatch(GraphError):
    pass


class Disconnected(GraphError):
    pass


def color_mask(colors) -> int:
    """Bitmask of an iterable of colors."""
    mask = 0
    for c in colors:
        mask |= 1 << int(c)
    return mask


def mask_colors(mask: int) -> tuple[int, ...]:
    return tuple(c for c in range(mask.bit_length()) if (mask >> c) & 1)


_PERM_CACHE: dict[int, np.ndarray] = {}


def all_permutations(k: int) -> np.ndarray:
    if k not in _PERM_CACHE:
        _PERM_CACHE[k] = np.array(list(itertools.permutations(range(k))), dtype=np.int32).reshape(-1, k)
    return _PERM_CACHE[k]


class ColoredGraph:
    """A (dim+1)-regular properly edge-colored multigraph without loops.

    ``matchings[c][v]`` is the color-``c`` neighbor of ``v``. Instances are
    immutable; the underlying array is write-protected.
    """

    __slots__ = ("dim", "order", "_match", "__dict__")

    def __init__(self, dim: int, matchings):
        match = np.array(matchings, dtype=np.int32)
        if match.ndim != 2 or match.shape[0] != dim + 1:
            raise ColorCountMismatch(
                f"expected {dim + 1} color matchings, got shape {match.shape}")
        n = match.shape[1]
        if n < 2 or n % 2:
            raise ColorCountMismatch(f"vertex count must be even and >= 2, got {n}")
        if match.min() < 0 or match.max() >= n:
            raise GraphError("neighbor index out of range")
        for c in range(dim + 1):
            row = match[c]
            fixed = np.nonzero(row == np.arange(n))[0]
            if fixed.size:
                raise LoopEdge(int(fixed[0]), c)
            bad = np.nonzero(row[row] != np.arange(n))[0]
            if bad.size:
                raise NotInvolution(int(bad[0]), c)
        match.setflags(write=False)
        self.dim = dim
        self.order = n
        self._match = match

    @property
    def matchings(self) -> np.ndarray:
        return self._match

    @property
    def num_colors(self) -> int:
        return self.dim + 1

    def neighbor(self, v: int, c: int) -> int:
        return int(self._match[c, v])

    def __eq__(self, other):
        return (isinstance(other, ColoredGraph) and self.dim == other.dim
                and np.array_equal(self._match, other._match))

    def __hash__(self):
        return hash((self.dim, self._match.tobytes()))

    def __repr__(self):
        return f"ColoredGraph(dim={self.dim}, order={self.order})"

    def edges(self, c: int) -> list[tuple[int, int]]:
        """Color-``c`` edges as ascending pairs sorted by first vertex."""
        row = self._match[c]
        return [(v, int(row[v])) for v in range(self.order) if v < row[v]]

    @cached_property
    def connected(self) -> bool:
        return g_count(self, color_mask(range(self.num_colors))) == 1

    def relabel(self, perm) -> ColoredGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        perm = np.asarray(perm, dtype=np.int32)
        new = np.empty_like(self._match)
        new[:, perm] = perm[self._match]
        return ColoredGraph(self.dim, new)

    def recolor(self, sigma) -> ColoredGraph:
        """Graph whose color ``j`` edges are this graph's color ``sigma[j]`` edges."""
        return ColoredGraph(self.dim, self._match[list(sigma)])

    def restrict(self, colors) -> ColoredGraph:
        """Residue on ``colors`` as a graph of its own, colors renumbered in order."""
        colors = sorted(colors)
        return ColoredGraph(len(colors) - 1, self._match[colors])


def new_graph(dim: int, matchings) -> ColoredGraph:
    return ColoredGraph(dim, matchings)


def from_edges(dim: int, n: int, edges_by_color) -> ColoredGraph:
    """Build a graph from per-color edge lists."""
    if len(edges_by_color) != dim + 1:
        raise ColorCountMismatch(f"expected {dim + 1} colors, got {len(edges_by_color)}")
    match = np.full((dim + 1, n), -1, dtype=np.int32)
    for c, edges in enumerate(edges_by_color):
        for a, b in edges:
            if match[c, a] >= 0 or match[c, b] >= 0:
                raise NotInvolution(a if match[c, a] >= 0 else b, c)
            match[c, a] = b
            match[c, b] = a
        missing = np.nonzero(match[c] < 0)[0]
        if missing.size:
            raise GraphError(f"color {c} leaves vertex {int(missing[0])} unmatched")
    return ColoredGraph(dim, match)


def _check_mask(G: ColoredGraph, mask: int):
    if mask >> G.num_colors:
        raise GraphError(f"color set {mask_colors(mask)} exceeds colors 0..{G.dim}")


def residue_labels(G: ColoredGraph, colors) -> tuple[np.ndarray, int]:
    mask = colors if isinstance(colors, int) else color_mask(colors)
    _check_mask(G, mask)
    return kernels.residue_labels(G.matchings, np.int64(mask))


def residue(G: ColoredGraph, colors) -> list[list[int]]:
    """Connected components of the residue on ``colors``, each sorted."""
    labels, count = residue_labels(G, colors)
    comps: list[list[int]] = [[] for _ in range(count)]
    for v, lab in enumerate(labels):
        comps[lab].append(v)
    return comps


def g_count(G: ColoredGraph, colors) -> int:
    """Number of components of the residue on ``colors``."""
    return int(residue_labels(G, colors)[1])


def is_contracted(G: ColoredGraph) -> bool:
    full = color_mask(range(G.num_colors))
    if g_count(G, full) != 1:
        return False
    return all(g_count(G, full & ~(1 << c)) == 1 for c in range(G.num_colors))


def is_bipartite(G: ColoredGraph, colors=None):
    """Two-class partition of the residue on ``colors`` (default all), or None.

    Classes are returned as (class containing the smallest vertex of each
    component, other class), both sorted.
    """
    cols = range(G.num_colors) if colors is None else sorted(colors)
    side = [-1] * G.order
    match = G.matchings
    for s in range(G.order):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for c in cols:
                w = int(match[c, v])
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    a = [v for v in range(G.order) if side[v] == 0]
    b = [v for v in range(G.order) if side[v] == 1]
    return a, b


def multiplicity(G: ColoredGraph, u: int, v: int) -> int:
    """Number of colors joining ``u`` and ``v``."""
    return int(np.count_nonzero(G.matchings[:, u] == v))


def canonical_code(G: ColoredGraph) -> bytes:
    """Complete invariant under vertex relabeling and color permutation."""
    if not G.connected:
        raise Disconnected("canonical code needs a connected graph")
    trace = kernels.canonical_trace(G.matchings, all_permutations(G.num_colors))
    head = np.array([G.num_colors, G.order], dtype=">u2").tobytes()
    return head + trace.astype(">u2").tobytes()


def are_isomorphic(G: ColoredGraph, H: ColoredGraph) -> bool:
    if G.dim != H.dim or G.order != H.order:
        if not (G.connected and H.connected):
            raise Disconnected("isomorphism test needs connected graphs")
        return False
    return canonical_code(G) == canonical_code(H)


def graph_from_code(code: bytes) -> ColoredGraph:
    """Rebuild the canonical representative encoded by ``code``."""
    arr = np.frombuffer(code, dtype=">u2").astype(np.int32)
    k, n = int(arr[0]), int(arr[1])
    trace = arr[2:].reshape(n, k)
    return ColoredGraph(k - 1, trace.T.copy())
