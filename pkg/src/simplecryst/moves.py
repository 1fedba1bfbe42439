"""Bistellar moves and edge contractions on closed cell complexes.

A bistellar i-move in dimension d acts at a (d-i)-face delta whose star is
i+1 distinct facets forming delta * boundary(gamma) for an i-simplex gamma;
it replaces them by the d-i+1 facets of boundary(delta) * gamma.

A move's site is one incidence (facet, local labels) of the face it acts on.
Sites produced here use the first incidence in (facet, mask) order. Moves
never modify their input. Surviving facets keep their relative order and
new facets are appended.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .complex import CellComplex, ComplexError, _cell_complex_error, masks_of_size

CONTRACTION = "EC"
KINDS = ("B0", "B1", "B2", "B3", "B4", CONTRACTION)


class IllegalMove(ComplexError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    facet: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")

    @property
    def mask(self) -> int:
        return sum(1 << x for x in self.labels)

    @property
    def index(self) -> int | None:
        """i for a bistellar i-move, None for a contraction."""
        return None if self.kind == CONTRACTION else int(self.kind[1])

    @property
    def site(self) -> str:
        return f"{self.facet}:{''.join(map(str, self.labels))}"

    @classmethod
    def parse(cls, kind: str, site: str) -> Move:
        f, labels = site.split(":")
        return cls(kind, int(f), tuple(int(c) for c in labels))

    def __str__(self):
        return f"{self.kind} {self.site}"


def site_size(C: CellComplex, kind: str) -> int:
    """Number of vertices of the face a move of ``kind`` acts on."""
    if kind == CONTRACTION:
        return 2
    return C.dim + 1 - int(kind[1])


def _first_incidences(C: CellComplex, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(facets, masks) of the first incidence of every face with k vertices."""
    cache = C.__dict__.setdefault("_site_cache", {})
    if k not in cache:
        cache[k] = kernels.first_incidences(C._roots, C.dim + 1, k)
    return cache[k]


def site_move(kind: str, f, mask, D: int) -> Move:
    return Move(kind, int(f), tuple(b for b in range(D) if (int(mask) >> b) & 1))


def candidate_sites(C: CellComplex, kind: str) -> list[Move]:
    """One site per face of the size ``kind`` acts on, first incidence first."""
    k = site_size(C, kind)
    if not 1 <= k <= C.dim + 1:
        return []
    fs, ms = _first_incidences(C, k)
    return [site_move(kind, f, m, C.dim + 1) for f, m in zip(fs, ms)]


def screened_sites(C: CellComplex, kind: str) -> tuple[np.ndarray, np.ndarray]:
    """(facets, masks) of the candidate sites that pass the compiled legality screen.

    For bistellar moves the screen is the full legality test. For
    contractions it covers the star conditions only; ``apply`` still has the
    final word.
    """
    cache = C.__dict__.setdefault("_legal_cache", {})
    if kind in cache:
        return cache[kind]
    D = C.dim + 1
    if kind == CONTRACTION:
        if C.num_vertices <= C.dim + 1:
            cache[kind] = _NO_SITES
        else:
            fs, ms = _first_incidences(C, 2)
            ok = kernels.contraction_prefilter(C.adj, C._vertex_roots, C._slot_roots, fs, ms)
            cache[kind] = (fs[ok == 1], ms[ok == 1])
    elif int(kind[1]) > C.dim:
        cache[kind] = _NO_SITES
    else:
        i = int(kind[1])
        fs, ms = _first_incidences(C, D - i)
        ok = kernels.bistellar_legal(C.adj, C.perm, C._vertex_roots, i, fs, ms)
        cache[kind] = (fs[ok == 1], ms[ok == 1])
    return cache[kind]


_NO_SITES = (np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))


def prefiltered_sites(C: CellComplex, kind: str) -> list[Move]:
    """``screened_sites`` as moves."""
    fs, ms = screened_sites(C, kind)
    return [site_move(kind, f, m, C.dim + 1) for f, m in zip(fs, ms)]


# -- bistellar moves ---------------------------------------------------------

@dataclass
class _Star:
    facets: list[int]
    delta: list[list[int]]          # delta[a][k]: label of delta vertex k in facet a
    apex: list[dict[int, int]]      # apex[a][b]: label of apex b in facet a (b != a)


def _bistellar_star(C: CellComplex, move: Move) -> _Star | str:
    """Star of the site as delta * boundary(gamma), or the reason it is not one."""
    i = move.index
    D = C.dim + 1
    f0 = move.facet
    delta = list(move.labels)
    if not 0 <= f0 < C.num_facets:
        return f"no facet {f0}"
    if len(delta) != D - i or len(set(delta)) != len(delta) or not all(0 <= x < D for x in delta):
        return f"a {i}-move needs {D - i} distinct labels, got {move.labels}"
    others = [x for x in range(D) if x not in delta]
    adj, perm = C.adj, C.perm
    facets = [f0]
    dlab = [delta]
    alab = [{b + 1: others[b] for b in range(i)}]
    for a in range(1, i + 1):
        o = others[a - 1]
        g = int(adj[f0, o])
        if g < 0:
            return f"facet {f0} face {o} is unglued"
        P = perm[f0, o]
        facets.append(g)
        dlab.append([int(P[x]) for x in delta])
        al = {b: int(P[alab[0][b]]) for b in alab[0] if b != a}
        al[0] = int(P[o])
        alab.append(al)
    if len(set(facets)) != i + 1:
        return f"star of the face is not {i + 1} distinct facets"
    for a in range(1, i + 1):
        for b in range(a + 1, i + 1):
            x = alab[a][b]
            if int(adj[facets[a], x]) != facets[b]:
                return f"facets {facets[a]} and {facets[b]} are not glued around the face"
            P = perm[facets[a], x]
            if int(P[x]) != alab[b][a]:
                return f"facets {facets[a]} and {facets[b]} are not glued around the face"
            if any(int(P[dlab[a][k]]) != dlab[b][k] for k in range(len(delta))):
                return f"gluing of facets {facets[a]} and {facets[b]} twists the face"
            if any(int(P[alab[a][c]]) != alab[b][c] for c in range(i + 1) if c not in (a, b)):
                return f"gluing of facets {facets[a]} and {facets[b]} twists the link"
    if i == 1:
        vc = C.vertex_classes
        if vc[facets[0], alab[0][1]] == vc[facets[1], alab[1][0]]:
            return "the inserted edge would be a loop"
    return _Star(facets, dlab, alab)


# -- edge contraction ----------------------------------------------------------

_CONTRACTION_FAILURES = {
    -1: "edge is a loop",
    -2: "a facet joins the same two vertices by another edge; contraction would identify its vertices",
    -3: "contraction would remove every facet",
    -4: "boundary faces of the edge star meet each other; the star is not a ball",
    -5: "star of the edge is not embedded: faces of its link meet elsewhere",
    -6: "a gluing chain enters a collapsed facet away from the edge",
    -7: "contraction chain does not terminate",
    -8: "a face would be glued to itself",
}


def _contract(C: CellComplex, move: Move) -> CellComplex:
    if len(move.labels) != 2 or move.labels[0] == move.labels[1]:
        raise IllegalMove(f"an edge contraction needs two labels, got {move.labels}")
    if not 0 <= move.facet < C.num_facets or not all(0 <= x <= C.dim for x in move.labels):
        raise IllegalMove(f"no edge {move.site}")
    x, y = move.labels
    code, adj, perm = kernels.contract_edge(C.adj, C.perm, C._vertex_roots, C._slot_roots,
                                            move.facet, x, y)
    if code:
        raise IllegalMove(_CONTRACTION_FAILURES[int(code)])
    return CellComplex._trusted(C.dim, adj, perm)


# -- public interface ----------------------------------------------------------

def check(C: CellComplex, move: Move, budget: int = 100_000) -> str | None:
    """Reason ``move`` is illegal on ``C``, or None when it may be applied."""
    try:
        _apply(C, move, budget)
    except IllegalMove as exc:
        return str(exc)
    return None


def _apply(C: CellComplex, move: Move, budget: int) -> CellComplex:
    if move.kind == CONTRACTION:
        if C.num_vertices <= C.dim + 1:
            raise IllegalMove("complex has no spare vertex to contract")
        out = _contract(C, move)
        err = _cell_complex_error(out)
        if err:
            raise IllegalMove(f"contraction identifies vertices: {err}")
        return out
    if move.index > C.dim:
        raise IllegalMove(f"no {move.kind} move in dimension {C.dim}")
    i, f = move.index, move.facet
    ok = (0 <= f < C.num_facets and len(move.labels) == C.dim + 1 - i
          and len(set(move.labels)) == len(move.labels)
          and all(0 <= x <= C.dim for x in move.labels))
    if ok:
        ok = kernels.bistellar_legal(C.adj, C.perm, C._vertex_roots, i,
                                     np.array([f]), np.array([move.mask]))[0]
    if not ok:
        reason = _bistellar_star(C, move)
        raise IllegalMove(reason if isinstance(reason, str) else "illegal site")
    return _bistellar(C, i, f, move.mask)


def _bistellar(C: CellComplex, i: int, f: int, mask: int) -> CellComplex:
    """Apply a bistellar move at a site already known to be legal."""
    adj, perm = kernels.bistellar_apply(C.adj, C.perm, i, f, mask)
    return CellComplex._trusted(C.dim, adj, perm)


def apply(C: CellComplex, move: Move, budget: int = 100_000) -> CellComplex:
    """The complex after ``move``; raises IllegalMove naming the failed condition."""
    return _apply(C, move, budget)


def available_moves(C: CellComplex, kinds=KINDS, budget: int = 100_000) -> list[Move]:
    """Every legal move of the given kinds, one per face."""
    out = []
    for kind in kinds:
        if kind != CONTRACTION and int(kind[1]) > C.dim:
            continue
        if kind == CONTRACTION and C.num_vertices <= C.dim + 1:
            continue
        for m in prefiltered_sites(C, kind):
            if check(C, m, budget) is None:
                out.append(m)
    return out


def inverse_site(C_after: CellComplex, move: Move, F_before: int) -> Move:
    """Site of the inverse bistellar move on the complex produced by ``move``.

    The inverse acts at gamma, which lies in every new facet; the first new
    facet carries it at its last i+1 labels.
    """
    i = move.index
    if i is None:
        raise IllegalMove("edge contractions have no inverse move")
    D = C_after.dim + 1
    first_new = C_after.num_facets - (D - i)
    return Move(f"B{D - 1 - i}", first_new, tuple(range(D - 1 - i, D)))
