"""Connected sums of colored graphs."""

from __future__ import annotations

import re
from typing import Callable, Iterable

import numpy as np

from .graph import ColoredGraph, GraphError, LoopEdge, is_bipartite


class SelfSum(GraphError):
    pass


class EmptySpec(GraphError):
    pass


class NotBipartite(GraphError):
    pass


def connected_sum(G1: ColoredGraph, v1: int, G2: ColoredGraph, v2: int, sigma=None) -> ColoredGraph:
    """Remove ``v1`` and ``v2`` and reconnect their neighbors color by color.

    For each color j the color-``sigma[j]`` neighbor of ``v1`` is joined to
    the color-j neighbor of ``v2`` by a color-j edge; all other edges of
    ``G1`` are recolored the same way. Vertices of ``G1`` (minus ``v1``) come
    first, then those of ``G2`` (minus ``v2``), each in their old order.
    """
    if G1.dim != G2.dim:
        raise GraphError(f"dimensions differ: {G1.dim} and {G2.dim}")
    if not (0 <= v1 < G1.order and 0 <= v2 < G2.order):
        raise GraphError("summing vertex out of range")
    if G1 is G2 and v1 == v2:
        raise SelfSum(f"cannot sum a graph with itself at the same vertex {v1}")
    k = G1.num_colors
    sigma = list(range(k)) if sigma is None else [int(s) for s in sigma]
    if sorted(sigma) != list(range(k)):
        raise GraphError(f"{sigma} is not a permutation of the colors")
    A = G1.matchings[sigma]
    B = G2.matchings
    n1, n2 = G1.order, G2.order
    map1 = np.full(n1, -1, dtype=np.int32)
    map1[np.arange(n1) != v1] = np.arange(n1 - 1)
    map2 = np.full(n2, -1, dtype=np.int32)
    map2[np.arange(n2) != v2] = np.arange(n1 - 1, n1 + n2 - 2)
    out = np.empty((k, n1 + n2 - 2), dtype=np.int32)
    keep1 = np.arange(n1) != v1
    keep2 = np.arange(n2) != v2
    for j in range(k):
        out[j, : n1 - 1] = map1[A[j, keep1]]
        out[j, n1 - 1:] = map2[B[j, keep2]]
        a, b = map1[A[j, v1]], map2[B[j, v2]]
        if a == b:
            raise LoopEdge(int(a), j)
        out[j, a] = b
        out[j, b] = a
    return ColoredGraph(G1.dim, out)


def sum_vertices(G1: ColoredGraph, G2: ColoredGraph, reverse: bool = False) -> tuple[int, int]:
    """Default summing vertices for an oriented sum of bipartite graphs.

    The class holding vertex 0 is taken as positive. ``v1`` is the smallest
    negative vertex of ``G1``; ``v2`` is the smallest positive vertex of
    ``G2``, or the smallest negative one when ``G2`` enters reversed.
    """
    p1, p2 = is_bipartite(G1), is_bipartite(G2)
    if p1 is None or p2 is None:
        raise NotBipartite("oriented sums need bipartite summands")
    return p1[1][0], p2[1 if reverse else 0][0]


Term = tuple[str, bool, int]


def parse_sum_spec(text: str) -> list[Term]:
    """Parse ``"3*cp2 + 20*cp2bar"`` into (name, reversed, count) terms.

    A trailing ``bar`` or a leading ``-`` reverses the orientation.
    """
    terms = []
    for raw in text.replace(",", "+").split("+"):
        item = raw.strip()
        if not item:
            continue
        m = re.fullmatch(r"(?:(\d+)\s*\*?\s*)?(-)?([a-z0-9_]+?)(bar)?", item.lower())
        if m is None:
            raise EmptySpec(f"cannot read summand {item!r}")
        count = int(m.group(1) or 1)
        terms.append((m.group(3), bool(m.group(2) or m.group(4)), count))
    if not terms:
        raise EmptySpec("empty connected-sum specification")
    return terms


def iterated_sum(spec: Iterable[Term] | str,
                 resolve: Callable[[str], ColoredGraph] | None = None) -> ColoredGraph:
    """Left fold of oriented connected sums over (name, reversed, count) terms.

    ``resolve`` maps a name to a graph and defaults to the built-in catalog.
    A reversed first summand is realized by swapping its two classes, which
    is the same graph; orientation only matters relative to the accumulator.
    """
    if isinstance(spec, str):
        spec = parse_sum_spec(spec)
    if resolve is None:
        from .catalog import catalog as resolve
    summands = []
    for name, rev, count in spec:
        if count < 0:
            raise EmptySpec(f"negative count for {name}")
        G = resolve(name)
        summands.extend([(G, rev)] * count)
    if not summands:
        raise EmptySpec("connected-sum specification has no summands")
    acc = summands[0][0]
    if is_bipartite(acc) is None:
        raise NotBipartite("oriented sums need bipartite summands")
    for G, rev in summands[1:]:
        v1, v2 = sum_vertices(acc, G, rev)
        acc = connected_sum(acc, v1, G, v2)
    return acc
