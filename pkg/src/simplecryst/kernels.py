"""Hot integer kernels: residue components, canonical traces, face orbits.

Every function here is plain Python over numpy integer arrays, restricted to
the subset numba can compile. ``_jit.njit`` compiles them unless the
``SIMPLECRYST_DISABLE_JIT`` environment flag is set.
"""

import numpy as np

from ._jit import njit


@njit
def residue_labels(match, mask):
    """Component label per vertex of the residue on the colors in ``mask``.

    ``match`` has shape (colors, n); bit c of ``mask`` selects color c.
    Returns ``(labels, count)``; labels are numbered in order of the smallest
    vertex of each component.
    """
    k, n = match.shape
    labels = np.full(n, -1, dtype=np.int32)
    stack = np.empty(n, dtype=np.int32)
    count = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = count
        top = 0
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for c in range(k):
                if (mask >> c) & 1:
                    w = match[c, v]
                    if labels[w] < 0:
                        labels[w] = count
                        stack[top] = w
                        top += 1
        count += 1
    return labels, count


@njit
def _count(match, mask, labels, stack):
    k, n = match.shape
    for v in range(n):
        labels[v] = -1
    count = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = count
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for c in range(k):
                if (mask >> c) & 1:
                    w = match[c, v]
                    if labels[w] < 0:
                        labels[w] = count
                        stack[top] = w
                        top += 1
        count += 1
    return count


@njit
def canonical_trace(match, perms):
    """Lexicographically least BFS trace over start vertices and color orders.

    For a start vertex and a color order, vertices are labeled in BFS order;
    the trace lists, for each labeled vertex in turn and each color in the
    chosen order, the label of its neighbor. The graph must be connected.
    """
    k, n = match.shape
    length = n * k
    best = np.full(length, n, dtype=np.int32)
    cur = np.empty(length, dtype=np.int32)
    label = np.empty(n, dtype=np.int32)
    order = np.empty(n, dtype=np.int32)
    for s in range(n):
        for pi in range(perms.shape[0]):
            for v in range(n):
                label[v] = -1
            label[s] = 0
            order[0] = s
            nxt = 1
            t = 0
            state = 0  # 0: tied with best so far, -1: already smaller
            aborted = False
            for pos in range(n):
                v = order[pos]
                for ci in range(k):
                    w = match[perms[pi, ci], v]
                    if label[w] < 0:
                        label[w] = nxt
                        order[nxt] = w
                        nxt += 1
                    val = label[w]
                    if state == 0:
                        if val > best[t]:
                            aborted = True
                            break
                        if val < best[t]:
                            state = -1
                    cur[t] = val
                    t += 1
                if aborted:
                    break
            if not aborted and state == -1:
                for t in range(length):
                    best[t] = cur[t]
    return best


@njit
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nx = parent[x]
        parent[x] = root
        x = nx
    return root


@njit
def face_roots(adj, perm):
    """Union-find roots of all (facet, local vertex subset) pairs.

    Entry ``f * 2**D + mask`` is the representative of the face of facet
    ``f`` spanned by the local labels in ``mask``. Faces are identified
    across each gluing by mapping their labels through its permutation.
    """
    F, D = adj.shape
    M = 1 << D
    parent = np.arange(F * M, dtype=np.int32)
    low = np.zeros(M, dtype=np.int64)
    for mask in range(1, M):
        b = 0
        while not (mask >> b) & 1:
            b += 1
        low[mask] = b
    mapped = np.zeros(M, dtype=np.int64)
    for f in range(F):
        for i in range(D):
            g = adj[f, i]
            if g < 0:
                continue
            # each gluing is met from both sides; one is enough
            j = perm[f, i, i]
            if g < f or (g == f and j < i):
                continue
            for mask in range(1, M):
                b = low[mask]
                mapped[mask] = mapped[mask ^ (1 << b)] | (1 << perm[f, i, b])
            for mask in range(1, M):
                if (mask >> i) & 1:
                    continue
                a = _find(parent, f * M + mask)
                c = _find(parent, g * M + mapped[mask])
                if a != c:
                    if a < c:
                        parent[c] = a
                    else:
                        parent[a] = c
    for x in range(F * M):
        parent[x] = _find(parent, x)
    return parent


@njit
def complex_trace(adj, perm, perms):
    """Least BFS trace of a connected facet-gluing structure.

    Starts range over every facet and every relabeling of its local
    vertices; neighbors inherit labels through the gluing maps. Each facet
    contributes, per face, the neighbor's BFS index and the gluing map in
    the inherited labels.
    """
    F, D = adj.shape
    length = F * D * (D + 1)
    best = np.full(length, F + D + 1, dtype=np.int32)
    cur = np.empty(length, dtype=np.int32)
    index = np.empty(F, dtype=np.int32)
    order = np.empty(F, dtype=np.int32)
    lab = np.empty((F, D), dtype=np.int32)  # new label -> old local label
    inv = np.empty((F, D), dtype=np.int32)  # old local label -> new label
    for s in range(F):
        for q in range(perms.shape[0]):
            for f in range(F):
                index[f] = -1
            index[s] = 0
            order[0] = s
            for j in range(D):
                lab[s, j] = perms[q, j]
                inv[s, perms[q, j]] = j
            nxt = 1
            t = 0
            state = 0
            aborted = False
            for pos in range(F):
                f = order[pos]
                for j in range(D):
                    i = lab[f, j]
                    g = adj[f, i]
                    if index[g] < 0:
                        index[g] = nxt
                        order[nxt] = g
                        nxt += 1
                        for jj in range(D):
                            old = perm[f, i, lab[f, jj]]
                            lab[g, jj] = old
                            inv[g, old] = jj
                    for e in range(D + 1):
                        if e == 0:
                            val = index[g]
                        else:
                            val = inv[g, perm[f, i, lab[f, e - 1]]]
                        if state == 0:
                            if val > best[t]:
                                aborted = True
                                break
                            if val < best[t]:
                                state = -1
                        cur[t] = val
                        t += 1
                    if aborted:
                        break
                if aborted:
                    break
            if not aborted and state == -1:
                for t in range(length):
                    best[t] = cur[t]
    return best


@njit
def census3_pairs(c0, c1, matchings, target, equal):
    """Index pairs (i2, i3) completing colors 0, 1 to 3-manifold gems.

    Kept pairs give a contracted 4-colored graph whose two-color component
    counts satisfy g01 = g23, g02 = g13, g03 = g12 and g01 + g02 + g03 =
    ``target``. A positive ``equal`` further demands every g_ij = ``equal``.
    """
    M, n = matchings.shape
    mat = np.empty((4, n), dtype=np.int32)
    labels = np.empty(n, dtype=np.int32)
    stack = np.empty(n, dtype=np.int32)
    for v in range(n):
        mat[0, v] = c0[v]
        mat[1, v] = c1[v]
    g01 = _count(mat, 0b0011, labels, stack)
    out = np.empty((M * 8 + 8, 2), dtype=np.int32)
    nout = 0
    for i2 in range(M):
        for v in range(n):
            mat[2, v] = matchings[i2, v]
        g02 = _count(mat, 0b0101, labels, stack)
        g12 = _count(mat, 0b0110, labels, stack)
        if g01 + g02 + g12 != target:
            continue
        if equal > 0 and (g01 != equal or g02 != equal):
            continue
        if _count(mat, 0b0111, labels, stack) != 1:
            continue
        for i3 in range(M):
            for v in range(n):
                mat[3, v] = matchings[i3, v]
            if _count(mat, 0b1001, labels, stack) != g12:
                continue
            if _count(mat, 0b1010, labels, stack) != g02:
                continue
            if _count(mat, 0b1100, labels, stack) != g01:
                continue
            if _count(mat, 0b1011, labels, stack) != 1:
                continue
            if _count(mat, 0b1101, labels, stack) != 1:
                continue
            if _count(mat, 0b1110, labels, stack) != 1:
                continue
            if nout == out.shape[0]:
                grown = np.empty((out.shape[0] * 2, 2), dtype=np.int32)
                grown[:nout] = out[:nout]
                out = grown
            out[nout, 0] = i2
            out[nout, 1] = i3
            nout += 1
    return out[:nout]


@njit
def extend_simple(base, matchings, m):
    """Indices of matchings that extend a 4-colored graph to a simple 5-colored one.

    The new color must meet every old color in ``m`` two-color components and
    leave every three-color residue through it connected.
    """
    M, n = matchings.shape
    mat = np.empty((5, n), dtype=np.int32)
    labels = np.empty(n, dtype=np.int32)
    stack = np.empty(n, dtype=np.int32)
    for c in range(4):
        for v in range(n):
            mat[c, v] = base[c, v]
    out = np.empty(M, dtype=np.int32)
    nout = 0
    for i in range(M):
        for v in range(n):
            mat[4, v] = matchings[i, v]
        ok = True
        for c in range(4):
            if _count(mat, (1 << c) | 16, labels, stack) != m:
                ok = False
                break
        if not ok:
            continue
        for a in range(4):
            for b in range(a + 1, 4):
                if ok and _count(mat, (1 << a) | (1 << b) | 16, labels, stack) != 1:
                    ok = False
        if ok:
            out[nout] = i
            nout += 1
    return out[:nout]


@njit
def _bistellar_star(adj, perm, i, f0, mask, facets, dlab, alab):
    """Fill the star arrays of the site (f0, mask); False if it is not delta * boundary(gamma).

    facets[a] is the a-th star facet, dlab[a, k] the label of delta vertex k
    in it and alab[a, b] the label of apex b (-1 on the diagonal).
    """
    F, D = adj.shape
    nd = D - i
    a_ = 0
    b_ = 1
    for x in range(D):
        if (mask >> x) & 1:
            dlab[0, a_] = x
            a_ += 1
        else:
            alab[0, b_] = x
            b_ += 1
    alab[0, 0] = -1
    facets[0] = f0
    for a in range(1, i + 1):
        o = alab[0, a]
        g = adj[f0, o]
        if g < 0:
            return False
        facets[a] = g
        for k in range(nd):
            dlab[a, k] = perm[f0, o, dlab[0, k]]
        for b in range(1, i + 1):
            alab[a, b] = perm[f0, o, alab[0, b]] if b != a else -1
        alab[a, 0] = perm[f0, o, o]
    for a in range(i + 1):
        for b in range(a + 1, i + 1):
            if facets[a] == facets[b]:
                return False
    for a in range(1, i + 1):
        for b in range(a + 1, i + 1):
            x = alab[a, b]
            fa = facets[a]
            if adj[fa, x] != facets[b] or perm[fa, x, x] != alab[b, a]:
                return False
            for k in range(nd):
                if perm[fa, x, dlab[a, k]] != dlab[b, k]:
                    return False
            for c in range(i + 1):
                if c != a and c != b and perm[fa, x, alab[a, c]] != alab[b, c]:
                    return False
    return True


@njit
def bistellar_legal(adj, perm, vc, i, sites_f, sites_mask):
    """1 where the site's star is i+1 distinct facets glued as delta * boundary(gamma).

    For i = 1 the two apexes must also be different vertices (``vc`` holds
    any per-slot vertex identifier).
    """
    F, D = adj.shape
    out = np.zeros(sites_f.shape[0], dtype=np.uint8)
    facets = np.empty(i + 1, dtype=np.int64)
    dlab = np.empty((i + 1, D - i), dtype=np.int64)
    alab = np.empty((i + 1, i + 1), dtype=np.int64)
    for s in range(sites_f.shape[0]):
        if not _bistellar_star(adj, perm, i, sites_f[s], sites_mask[s], facets, dlab, alab):
            continue
        if i == 1 and vc[facets[0], alab[0, 1]] == vc[facets[1], alab[1, 0]]:
            continue
        out[s] = 1
    return out


@njit
def _translate(dlab, alab, nd, i, a, k, T):
    """Labels of star facet a -> labels of new facet k.

    New facet k lists the delta vertices other than k, then apexes 0..i.
    """
    for j in range(nd):
        if j == k:
            T[dlab[a, j]] = nd - 1 + a
        else:
            T[dlab[a, j]] = j if j < k else j - 1
    for b in range(i + 1):
        if b != a:
            T[alab[a, b]] = nd - 1 + b


@njit
def bistellar_apply(adj, perm, i, f0, mask):
    """Gluing tables after the bistellar i-move at a legal site.

    Surviving facets keep their order; the new facets follow, one per delta
    vertex.
    """
    F, D = adj.shape
    nd = D - i
    facets = np.empty(i + 1, dtype=np.int64)
    dlab = np.empty((i + 1, nd), dtype=np.int64)
    alab = np.empty((i + 1, i + 1), dtype=np.int64)
    _bistellar_star(adj, perm, i, f0, mask, facets, dlab, alab)
    where = np.full(F, -1, dtype=np.int64)
    for a in range(i + 1):
        where[facets[a]] = a
    newid = np.full(F, -1, dtype=np.int64)
    base = 0
    for f in range(F):
        if where[f] < 0:
            newid[f] = base
            base += 1
    NF = base + nd
    nadj = np.full((NF, D), -1, dtype=np.int32)
    nperm = np.empty((NF, D, D), dtype=np.int8)
    for f in range(F):
        if where[f] < 0:
            for z in range(D):
                g = adj[f, z]
                nadj[newid[f], z] = newid[g] if g >= 0 else -1
                for b in range(D):
                    nperm[newid[f], z, b] = perm[f, z, b]
    T = np.empty(D, dtype=np.int64)
    Tinv = np.empty(D, dtype=np.int64)
    T2 = np.empty(D, dtype=np.int64)
    for k in range(nd):
        me = base + k
        for l in range(nd):
            if l == k:
                continue
            face = l if l < k else l - 1
            nadj[me, face] = base + l
            # labels of k -> labels of l
            for j in range(nd):
                if j == k:
                    continue
                src = j if j < k else j - 1
                if j == l:
                    nperm[me, face, src] = k if k < l else k - 1
                else:
                    nperm[me, face, src] = j if j < l else j - 1
            for a in range(i + 1):
                nperm[me, face, nd - 1 + a] = nd - 1 + a
        for a in range(i + 1):
            f = facets[a]
            x = dlab[a, k]
            X = adj[f, x]
            _translate(dlab, alab, nd, i, a, k, T)
            for b in range(D):
                Tinv[T[b]] = b
            here = nd - 1 + a
            y = perm[f, x, x]
            if where[X] >= 0:
                b = where[X]
                k2 = 0
                while dlab[b, k2] != y:
                    k2 += 1
                _translate(dlab, alab, nd, i, b, k2, T2)
                nadj[me, here] = base + k2
                for c in range(D):
                    nperm[me, here, c] = T2[perm[f, x, Tinv[c]]]
            else:
                g = newid[X]
                nadj[me, here] = g
                nadj[g, y] = me
                for c in range(D):
                    v = perm[f, x, Tinv[c]]
                    nperm[me, here, c] = v
                    nperm[g, y, v] = c
    return nadj, nperm


@njit
def _edge_star(adj, vroot, sroot, f, x, y, instar, sx, sy):
    """Mark the facets holding both endpoints of the edge (f; x, y).

    Returns the star size, or a negative code: -1 loop, -2 a facet joins the
    endpoints by another edge, -3 the star is every facet, -4 a face opposite
    an endpoint is glued back into the star (the star is not a ball).
    """
    F, D = adj.shape
    u = vroot[f, x]
    w = vroot[f, y]
    if u == w:
        return -1
    e = sroot[f, (1 << x) | (1 << y)]
    count = 0
    for h in range(F):
        instar[h] = 0
        xu = -1
        yw = -1
        for z in range(D):
            if vroot[h, z] == u and xu < 0:
                xu = z
            if vroot[h, z] == w and yw < 0:
                yw = z
        if xu >= 0 and yw >= 0:
            if sroot[h, (1 << xu) | (1 << yw)] != e:
                return -2
            instar[h] = 1
            sx[h] = xu
            sy[h] = yw
            count += 1
    if count == F:
        return -3
    for h in range(F):
        if instar[h]:
            for z in (sx[h], sy[h]):
                g = adj[h, z]
                if g >= 0 and instar[g]:
                    return -4
    return count


@njit
def contraction_prefilter(adj, vroot, sroot, sites_f, sites_mask):
    """1 where the edge star passes the cheap contraction conditions of ``_edge_star``."""
    F, D = adj.shape
    out = np.zeros(sites_f.shape[0], dtype=np.uint8)
    instar = np.zeros(F, dtype=np.uint8)
    sx = np.empty(F, dtype=np.int64)
    sy = np.empty(F, dtype=np.int64)
    for s in range(sites_f.shape[0]):
        x = -1
        y = -1
        for b in range(D):
            if (sites_mask[s] >> b) & 1:
                if x < 0:
                    x = b
                else:
                    y = b
        if _edge_star(adj, vroot, sroot, sites_f[s], x, y, instar, sx, sy) > 0:
            out[s] = 1
    return out


@njit
def contract_edge(adj, perm, vroot, sroot, f, x, y):
    """Collapse every facet of the edge star; returns (code, adj, perm).

    Code 0 is success. Negative codes come from ``_edge_star``; -5 means the
    closed star does not embed (some face of the link is met twice), -6 a
    gluing chain through the star enters a facet away from the edge, -7 a
    chain does not terminate and -8 a face would be glued to itself.
    """
    F, D = adj.shape
    M = 1 << D
    instar = np.zeros(F, dtype=np.uint8)
    sx = np.empty(F, dtype=np.int64)
    sy = np.empty(F, dtype=np.int64)
    empty_adj = np.empty((0, D), dtype=np.int32)
    empty_perm = np.empty((0, D, D), dtype=np.int8)
    S = _edge_star(adj, vroot, sroot, f, x, y, instar, sx, sy)
    if S < 0:
        return S, empty_adj, empty_perm
    # closed star glued only along faces through the edge
    local = np.full(F, -1, dtype=np.int64)
    hs = np.empty(S, dtype=np.int64)
    n = 0
    for h in range(F):
        if instar[h]:
            local[h] = n
            hs[n] = h
            n += 1
    sadj = np.full((S, D), -1, dtype=np.int32)
    sperm = np.empty((S, D, D), dtype=np.int8)
    for a in range(S):
        h = hs[a]
        for z in range(D):
            for b in range(D):
                sperm[a, z, b] = b
            if z == sx[h] or z == sy[h]:
                continue
            sadj[a, z] = local[adj[h, z]]
            for b in range(D):
                sperm[a, z, b] = perm[h, z, b]
    sub = face_roots(sadj, sperm)
    seen = np.zeros(F * M, dtype=np.uint8)
    for a in range(S):
        h = hs[a]
        for mask in range(1, M - 1):
            seen[sroot[h, mask]] = 1
    want = np.zeros(D + 1, dtype=np.int64)
    have = np.zeros(D + 1, dtype=np.int64)
    for slot in range(F * M):
        if seen[slot]:
            c = 0
            for b in range(D):
                c += (slot >> b) & 1
            want[c] += 1
    for slot in range(S * M):
        mask = slot & (M - 1)
        if sub[slot] == slot and mask != M - 1 and mask != 0:
            c = 0
            for b in range(D):
                c += (mask >> b) & 1
            have[c] += 1
    for c in range(D):
        if want[c] != have[c]:
            return -5, empty_adj, empty_perm
    # survivors, glued through chains of collapsed facets
    newid = np.full(F, -1, dtype=np.int64)
    NF = 0
    for h in range(F):
        if not instar[h]:
            newid[h] = NF
            NF += 1
    nadj = np.empty((NF, D), dtype=np.int32)
    nperm = np.empty((NF, D, D), dtype=np.int8)
    Mp = np.empty(D, dtype=np.int64)
    tmp = np.empty(D, dtype=np.int64)
    for X in range(F):
        if instar[X]:
            continue
        for z in range(D):
            h = adj[X, z]
            for b in range(D):
                Mp[b] = perm[X, z, b]
            steps = 0
            while instar[h]:
                ent = Mp[z]
                if ent != sx[h] and ent != sy[h]:
                    return -6, empty_adj, empty_perm
                ex = sy[h] if ent == sx[h] else sx[h]
                for b in range(D):
                    v = Mp[b]
                    if v == sx[h]:
                        v = sy[h]
                    elif v == sy[h]:
                        v = sx[h]
                    tmp[b] = perm[h, ex, v]
                for b in range(D):
                    Mp[b] = tmp[b]
                h = adj[h, ex]
                steps += 1
                if steps > 2 * F:
                    return -7, empty_adj, empty_perm
            if h == X and Mp[z] == z:
                return -8, empty_adj, empty_perm
            nadj[newid[X], z] = newid[h]
            for b in range(D):
                nperm[newid[X], z, b] = Mp[b]
    return 0, nadj, nperm


@njit
def face_counts(roots, D):
    """Number of face classes with 1..D vertices."""
    M = 1 << D
    out = np.zeros(D, dtype=np.int64)
    for slot in range(roots.shape[0]):
        if roots[slot] == slot:
            mask = slot & (M - 1)
            if mask:
                c = 0
                for b in range(D):
                    c += (mask >> b) & 1
                out[c - 1] += 1
    return out


@njit
def identified_faces(roots, D):
    """First (facet, mask_a, mask_b) where two proper faces of one facet share a class."""
    M = 1 << D
    F = roots.shape[0] // M
    mark = np.full(roots.shape[0], -1, dtype=np.int64)
    for f in range(F):
        for mask in range(1, M - 1):
            r = roots[f * M + mask]
            if mark[r] >= 0 and mark[r] // M == f:
                return f, mark[r] % M, mask
            mark[r] = f * M + mask
    return -1, 0, 0


@njit
def first_incidences(roots, D, k):
    """(facets, masks) of the least slot of every face class with k vertices."""
    M = 1 << D
    n = 0
    for slot in range(roots.shape[0]):
        if roots[slot] == slot:
            mask = slot & (M - 1)
            c = 0
            for b in range(D):
                c += (mask >> b) & 1
            if c == k:
                n += 1
    fs = np.empty(n, dtype=np.int64)
    ms = np.empty(n, dtype=np.int64)
    n = 0
    for slot in range(roots.shape[0]):
        if roots[slot] == slot:
            mask = slot & (M - 1)
            c = 0
            for b in range(D):
                c += (mask >> b) & 1
            if c == k:
                fs[n] = slot // M
                ms[n] = mask
                n += 1
    return fs, ms
