"""Built-in simple crystallizations and their expected invariants."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .graph import ColoredGraph, from_edges, residue


class MissingData(LookupError):
    pass


class ValidationFailed(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    m: int
    beta2: int
    orientable: bool
    simple: bool
    note: str


ENTRIES = {
    "s4": CatalogEntry("s4", 2, 1, 0, True, True,
                       "two 4-simplices glued along their boundaries"),
    "cp2": CatalogEntry("cp2", 8, 2, 1, True, True,
                        "8-vertex crystallization, rebuilt from the uniqueness case analysis"),
    "s2xs2": CatalogEntry("s2xs2", 14, 3, 2, True, True,
                          "14-vertex crystallization transcribed from the published drawing"),
    "k3": CatalogEntry("k3", 134, 23, 22, True, True,
                       "colors 0 and 1 built in; colors 2-4 need an external gem file"),
}


def _one_based(edges):
    return [(a - 1, b - 1) for a, b in edges]


CP2_EDGES = [
    _one_based([(1, 2), (3, 4), (5, 6), (7, 8)]),
    _one_based([(1, 2), (4, 5), (6, 7), (8, 3)]),
    _one_based([(1, 5), (2, 4), (3, 6), (7, 8)]),
    _one_based([(1, 3), (2, 8), (5, 6), (4, 7)]),
    _one_based([(1, 5), (2, 8), (3, 4), (6, 7)]),
]

S2XS2_EDGES = [
    [(0, 1), (2, 6), (3, 8), (4, 7), (9, 11), (5, 10), (12, 13)],
    [(3, 9), (1, 5), (4, 7), (6, 10), (0, 2), (11, 13), (8, 12)],
    [(4, 8), (3, 9), (5, 11), (6, 10), (2, 7), (0, 1), (12, 13)],
    [(0, 3), (1, 5), (2, 6), (7, 12), (4, 8), (10, 13), (9, 11)],
    [(3, 8), (2, 7), (5, 11), (10, 13), (0, 4), (1, 6), (9, 12)],
]

# The {0,1}-bicolored cycles of the K3 crystallization, each listed from a
# color-0 edge v_{2i} v_{2i+1}. Two misprints in the published list are
# corrected: "7, 71" reads 70, 71 and the second "108, 109" reads 104, 105,
# the only vertices otherwise missing; the closing repeat of 34, 35 is dropped.
K3_CYCLES_01 = [
    (6, 7), (88, 89), (92, 93), (118, 119), (120, 121),
    (12, 13, 26, 27), (18, 19, 70, 71), (48, 49, 108, 109), (58, 59, 82, 83),
    (66, 67, 102, 103), (72, 73, 74, 75), (104, 105, 114, 115),
    (0, 1, 20, 21, 14, 15), (2, 3, 32, 33, 8, 9), (10, 11, 84, 85, 80, 81),
    (38, 39, 76, 77, 40, 41), (54, 55, 56, 57, 130, 131), (68, 69, 86, 87, 90, 91),
    (62, 63, 112, 113, 124, 125, 64, 65),
    (16, 17, 50, 51, 60, 61, 22, 23, 96, 97),
    (34, 35, 42, 43, 132, 133, 128, 129, 78, 79),
    (4, 5, 52, 53, 106, 107, 94, 95, 36, 37, 126, 127, 44, 45, 46, 47),
    (24, 25, 98, 99, 28, 29, 110, 111, 30, 31, 122, 123, 100, 101, 116, 117),
]

K3_PROFILE_01 = {2: 5, 4: 7, 6: 6, 8: 1, 10: 2, 16: 2}


def k3_colors01() -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Color-0 and color-1 edges of the K3 crystallization from its cycle list."""
    c0, c1 = [], []
    for cyc in K3_CYCLES_01:
        L = len(cyc)
        for h in range(L):
            a, b = cyc[h], cyc[(h + 1) % L]
            (c0 if h % 2 == 0 else c1).append((min(a, b), max(a, b)))
    return sorted(c0), sorted(c1)


def k3_partial() -> ColoredGraph:
    """The 2-colored graph on colors {0, 1} of the K3 crystallization."""
    c0, c1 = k3_colors01()
    return from_edges(1, 134, [c0, c1])


def cycle_profile(G: ColoredGraph, colors=(0, 1)) -> dict[int, int]:
    """Histogram of component sizes of a two-color residue."""
    return dict(sorted(Counter(len(c) for c in residue(G, colors)).items()))


def catalog(name: str, data: str | Path | None = None) -> ColoredGraph:
    """Catalog crystallization by name: s4, cp2, s2xs2 or k3.

    ``k3`` needs ``data``, a gem file holding the full 5-colored graph; it is
    checked against the published invariants before being returned.
    """
    if name == "s4":
        return from_edges(4, 2, [[(0, 1)]] * 5)
    if name == "cp2":
        return from_edges(4, 8, CP2_EDGES)
    if name == "s2xs2":
        return from_edges(4, 14, S2XS2_EDGES)
    if name == "k3":
        if data is None:
            raise MissingData("the K3 crystallization needs --data with the full gem file")
        from .io import read_gem

        G = read_gem(data)
        problems = check_k3_data(G)
        if problems:
            raise ValidationFailed("; ".join(problems))
        return G
    raise KeyError(f"unknown catalog entry {name!r}; choose from {sorted(ENTRIES)}")


def check_k3_data(G: ColoredGraph) -> list[str]:
    """Published K3 facts that an external data file must reproduce."""
    from .graph import g_count

    problems = []
    if G.dim != 4 or G.order != 134:
        return [f"expected 5 colors on 134 vertices, got {G.num_colors} on {G.order}"]
    for i in range(5):
        for j in range(i + 1, 5):
            g = g_count(G, (i, j))
            if g != 23:
                problems.append(f"g_{i}{j} = {g}, expected 23")
    if cycle_profile(G) != K3_PROFILE_01:
        problems.append(f"{{0,1}} cycle profile {cycle_profile(G)} differs from {K3_PROFILE_01}")
    if 3 * 23 != G.order // 2 + 2:
        problems.append("3 * 23 != n/2 + 2")
    return problems
