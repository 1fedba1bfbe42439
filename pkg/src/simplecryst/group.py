"""Finite group presentations: construction from gems, Tietze moves, H1."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import ColoredGraph, GraphError, residue, residue_labels

Word = tuple[int, ...]


def free_reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> Word:
    w = free_reduce(word)
    a, b = 0, len(w)
    while b - a >= 2 and w[a] == -w[b - 1]:
        a += 1
        b -= 1
    return w[a:b]


def invert(word) -> Word:
    return tuple(-x for x in reversed(word))


def _cyclic_key(word: Word) -> Word:
    """Representative of a relator up to rotation and inversion."""
    if not word:
        return word
    cands = []
    for w in (word, invert(word)):
        for k in range(len(w)):
            cands.append(w[k:] + w[:k])
    return min(cands)


@dataclass(frozen=True)
class GroupPresentation:
    """Generators x1..xs; relators are words of signed 1-based generator indices."""

    num_generators: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.num_generators < 0:
            raise ValueError("negative generator count")
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.num_generators:
                    raise ValueError(f"letter {x} out of range 1..{self.num_generators}")
            rels.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def is_trivial_presentation(self) -> bool:
        return self.num_generators == 0

    def __str__(self):
        gens = ",".join(f"x{i}" for i in range(1, self.num_generators + 1))
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"<{gens} | {rels}>"


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in word)


class SameColor(GraphError):
    pass


def gagliardi_presentation(G: ColoredGraph, i: int, j: int) -> GroupPresentation:
    """Presentation of pi_1 of the manifold a crystallization represents.

    Generators are the components of the residue missing colors ``i`` and
    ``j`` except the last one; each {i, j}-bicolored cycle, read from its
    smallest vertex starting along color ``i``, gives one relator with
    alternating exponents. All cycles but the last are used (only the first
    in dimension 2).
    """
    if i == j:
        raise SameColor(f"colors must differ, got {i} twice")
    if G.dim < 2:
        raise GraphError("presentations need dimension at least 2")
    rest = [c for c in range(G.num_colors) if c not in (i, j)]
    comp, count = residue_labels(G, rest)
    s = count - 1
    dropped = count  # 1-based index of the deleted generator
    match = G.matchings
    relators = []
    for cycle in residue(G, (i, j)):
        v1 = cycle[0]
        walk = [v1]
        v = int(match[i, v1])
        color = j
        while v != v1:
            walk.append(v)
            v = int(match[color, v])
            color = i if color == j else j
        word = []
        for h in range(1, len(walk)):
            # walk[h] is v_{h+1}; even positions get exponent +1
            word.append((int(comp[walk[h]]) + 1) * (1 if (h + 1) % 2 == 0 else -1))
        word.append(-(int(comp[v1]) + 1))
        relators.append(free_reduce(x for x in word if abs(x) != dropped))
    if G.dim == 2:
        relators = relators[:1]
    else:
        relators = relators[:-1]
    return GroupPresentation(s, tuple(relators))


# -- Tietze simplification ---------------------------------------------------

REDUCED = "Reduced"
BUDGET_EXHAUSTED = "BudgetExhausted"
DEFAULT_BUDGET = 100_000


def _normalize(rels):
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _cyclic_key(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    out.sort(key=lambda w: (len(w), w))
    return out


def _eliminate(rels, s):
    """Find a relator containing some generator exactly once.

    Returns (relator index, generator, exponent) for the shortest such
    relator, or None.
    """
    for idx, r in enumerate(rels):  # rels are sorted by length
        counts: dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for x in r:
            if counts[abs(x)] == 1:
                return idx, abs(x), (1 if x > 0 else -1)
    return None


def _substitute(rels, s, idx, gen, exp):
    r = rels[idx]
    pos = next(k for k, x in enumerate(r) if abs(x) == gen)
    rot = r[pos:] + r[:pos]
    rest = rot[1:]
    # gen^exp * rest = 1
    value = invert(rest) if exp == 1 else rest
    value_inv = invert(value)
    out = []
    for k, w in enumerate(rels):
        if k == idx:
            continue
        new = []
        for x in w:
            if x == gen:
                new.extend(value)
            elif x == -gen:
                new.extend(value_inv)
            else:
                new.append(x)
        out.append(tuple(_shift(x, gen) for x in free_reduce(new)))
    return out, s - 1


def _shift(x, gen):
    a = abs(x)
    if a > gen:
        return x - 1 if x > 0 else x + 1
    return x


def _shorten(rels):
    """Replace part of one relator by a shorter equivalent from another."""
    for a, r in enumerate(rels):
        L = len(r)
        rotations = []
        for w in (r, invert(r)):
            for k in range(L):
                rotations.append(w[k:] + w[:k])
        for b, t in enumerate(rels):
            if a == b or len(t) < L // 2 + 1:
                continue
            doubled = t + t
            T = len(t)
            for k in range(min(L, T), L // 2, -1):
                for rho in rotations:
                    u = rho[:k]
                    for p in range(T):
                        if doubled[p:p + k] == u:
                            v = rho[k:]
                            t_rot = doubled[p:p + T]
                            new = cyclic_reduce(invert(v) + t_rot[k:])
                            if len(new) < T:
                                out = list(rels)
                                out[b] = new
                                return out
    return None


def tietze_simplify(P: GroupPresentation, budget: int = DEFAULT_BUDGET):
    """Simplify ``P`` by Tietze transformations within ``budget`` rule applications.

    Rules, in order: cyclic reduction and deduplication of relators,
    elimination of a generator that occurs exactly once in some relator
    (shortest relator first), and shortening of a relator by more than half
    of another one. Returns the new presentation and ``"Reduced"`` or
    ``"BudgetExhausted"``.
    """
    s = P.num_generators
    rels = _normalize(P.relators)
    steps = 0
    while True:
        if steps >= budget:
            return GroupPresentation(s, tuple(rels)), BUDGET_EXHAUSTED
        hit = _eliminate(rels, s)
        if hit is not None:
            rels, s = _substitute(rels, s, *hit)
            rels = _normalize(rels)
            steps += 1
            continue
        shorter = _shorten(rels)
        if shorter is not None:
            rels = _normalize(shorter)
            steps += 1
            continue
        return GroupPresentation(s, tuple(rels)), REDUCED


def is_trivial_group(P: GroupPresentation, budget: int = DEFAULT_BUDGET):
    """True if Tietze moves reduce ``P`` to no generators, None if undecided."""
    Q, status = tietze_simplify(P, budget)
    if Q.num_generators == 0:
        return True
    if not abelianize(Q).is_trivial:
        return False
    return None


# -- abelianization ----------------------------------------------------------

@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(P: GroupPresentation) -> list[list[int]]:
    """Relator-by-generator matrix of exponent sums."""
    rows = []
    for r in P.relators:
        row = [0] * P.num_generators
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_normal_form(A):
    """Smith form of an integer matrix with unimodular transforms.

    Returns ``(D, U, V)`` with ``U @ A @ V == D``, ``D`` diagonal with
    non-negative entries, each nonzero diagonal entry dividing the next.
    Entries are Python ints, so no overflow occurs.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, a, b):
        M[a], M[b] = M[b], M[a]

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def add_row(M, src, dst, q):  # row dst -= q * row src
        if q:
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] -= q * rs[k]

    def add_col(M, src, dst, q):  # col dst -= q * col src
        if q:
            for row in M:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap_rows(D, t, i)
        swap_rows(U, t, i)
        swap_cols(D, t, j)
        swap_cols(V, t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                add_row(D, t, i, q)
                add_row(U, t, i, q)
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                add_col(D, t, j, q)
                add_col(V, t, j, q)
                if D[t][j]:
                    dirty = True
            if not dirty:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(D, bad, t, -1)
                add_row(U, bad, t, -1)
                continue
            # move the smallest remaining entry of the pivot row/column to the pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(cand)
            swap_rows(D, t, i)
            swap_rows(U, t, i)
            swap_cols(D, t, j)
            swap_cols(V, t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def _unit_eliminate(rows, ncols):
    """Drop unit pivots (abelian Tietze moves) from a sparse relation matrix.

    Each row is a dict column -> coefficient. Returns the remaining rows and
    columns as a dense matrix plus the count of surviving generators.
    """
    rows = [dict(r) for r in rows if r]
    alive = set(range(ncols))
    changed = True
    while changed:
        changed = False
        for ri, r in enumerate(rows):
            col = next((c for c, v in r.items() if v in (1, -1)), None)
            if col is None:
                continue
            pivot = rows.pop(ri)
            a = pivot[col]
            for other in rows:
                b = other.get(col)
                if b:
                    q = b * a  # a = +-1, so a^-1 = a
                    for c, v in pivot.items():
                        nv = other.get(c, 0) - q * v
                        if nv:
                            other[c] = nv
                        else:
                            other.pop(c, None)
            alive.discard(col)
            rows = [r2 for r2 in rows if r2]
            changed = True
            break
    cols = sorted(alive)
    index = {c: k for k, c in enumerate(cols)}
    dense = []
    for r in rows:
        row = [0] * len(cols)
        for c, v in r.items():
            row[index[c]] = v
        dense.append(row)
    return dense, len(cols)


def abelianize(P: GroupPresentation) -> Abelianization:
    """Abelianization as free rank plus invariant factors."""
    sparse = []
    for r in P.relators:
        row: dict[int, int] = {}
        for x in r:
            c = abs(x) - 1
            v = row.get(c, 0) + (1 if x > 0 else -1)
            if v:
                row[c] = v
            else:
                row.pop(c)
        sparse.append(row)
    dense, ncols = _unit_eliminate(sparse, P.num_generators)
    if not dense:
        return Abelianization(ncols, ())
    D, _, _ = smith_normal_form(dense)
    diag = [D[k][k] for k in range(min(len(D), ncols))]
    rank = sum(1 for x in diag if x)
    torsion = tuple(x for x in diag if x > 1)
    return Abelianization(ncols - rank, torsion)
