"""Text formats for colored graphs (gem) and cell complexes (pst), plus DOT export.

gem::

    gem <colors> <n>
    0: a-b a-b ...          one line per color, n/2 pairs, 0-based,
    1: ...                  ascending within pairs and by first vertex

pst::

    pst <dim> <facets>
    g:p g:p ...             one line per facet, dim+1 entries; entry i names
                            the facet across face i and the label map as a
                            digit string; "-" marks an unglued face

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .complex import CellComplex, ComplexError
from .graph import ColoredGraph, GraphError


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


def _content_lines(text: str):
    for n, raw in enumerate(text.split("\n"), 1):
        body = raw.split("#", 1)[0].rstrip("\r")
        if body.strip():
            yield n, body


def _header(lines, magic: str):
    try:
        n, body = next(lines)
    except StopIteration:
        raise ParseError(1, 1, f"missing '{magic}' header") from None
    words = body.split()
    if len(words) != 3 or words[0] != magic:
        raise ParseError(n, 1, f"expected '{magic} <a> <b>', got {body.strip()!r}")
    try:
        return n, int(words[1]), int(words[2])
    except ValueError:
        raise ParseError(n, len(words[0]) + 2, "header sizes must be integers") from None


def parse_gem(text: str) -> ColoredGraph:
    lines = _content_lines(text)
    hn, k, n = _header(lines, "gem")
    if k < 2 or n < 2 or n % 2:
        raise ParseError(hn, 1, f"need at least 2 colors and an even vertex count, got {k} {n}")
    match = np.full((k, n), -1, dtype=np.int64)
    seen = set()
    for ln, body in lines:
        m = re.match(r"\s*(\d+)\s*:", body)
        if not m:
            raise ParseError(ln, 1, "expected '<color>: a-b ...'")
        c = int(m.group(1))
        if c >= k:
            raise ParseError(ln, m.start(1) + 1, f"color {c} out of range 0..{k - 1}")
        if c in seen:
            raise ParseError(ln, m.start(1) + 1, f"color {c} listed twice")
        seen.add(c)
        pairs = list(re.finditer(r"\S+", body[m.end():]))
        if len(pairs) != n // 2:
            raise ParseError(ln, 1, f"color {c} has {len(pairs)} pairs, expected {n // 2}")
        for tok in pairs:
            col = m.end() + tok.start() + 1
            pm = re.fullmatch(r"(\d+)-(\d+)", tok.group())
            if not pm:
                raise ParseError(ln, col, f"bad pair {tok.group()!r}")
            a, b = int(pm.group(1)), int(pm.group(2))
            if a >= n or b >= n:
                raise ParseError(ln, col, f"vertex out of range in {tok.group()!r}")
            if a == b:
                raise ParseError(ln, col, f"loop {tok.group()!r}")
            if match[c, a] >= 0 or match[c, b] >= 0:
                raise ParseError(ln, col, f"vertex repeated in color {c}")
            match[c, a], match[c, b] = b, a
    missing = sorted(set(range(k)) - seen)
    if missing:
        raise ParseError(hn, 1, f"no line for color {missing[0]}")
    try:
        return ColoredGraph(k - 1, match)
    except GraphError as exc:
        raise ParseError(hn, 1, str(exc)) from exc


def write_gem(G: ColoredGraph) -> str:
    out = [f"gem {G.num_colors} {G.order}"]
    for c in range(G.num_colors):
        out.append(f"{c}: " + " ".join(f"{a}-{b}" for a, b in G.edges(c)))
    return "\n".join(out) + "\n"


def parse_pst(text: str) -> CellComplex:
    lines = _content_lines(text)
    hn, dim, F = _header(lines, "pst")
    D = dim + 1
    if dim < 1 or F < 1 or D > 10:
        raise ParseError(hn, 1, "dimension must be 1..9 and the facet count positive")
    adj = np.full((F, D), -1, dtype=np.int32)
    perm = np.broadcast_to(np.arange(D, dtype=np.int8), (F, D, D)).copy()
    f = 0
    for ln, body in lines:
        if f >= F:
            raise ParseError(ln, 1, f"more than {F} facet lines")
        toks = list(re.finditer(r"\S+", body))
        if len(toks) != D:
            raise ParseError(ln, 1, f"facet {f} has {len(toks)} entries, expected {D}")
        for i, tok in enumerate(toks):
            col = tok.start() + 1
            if tok.group() == "-":
                continue
            pm = re.fullmatch(r"(\d+):(\d+)", tok.group())
            if not pm:
                raise ParseError(ln, col, f"bad entry {tok.group()!r}")
            g, p = int(pm.group(1)), [int(ch) for ch in pm.group(2)]
            if g >= F:
                raise ParseError(ln, col, f"facet {g} out of range")
            if sorted(p) != list(range(D)):
                raise ParseError(ln, col, f"{pm.group(2)!r} is not a permutation of 0..{dim}")
            adj[f, i] = g
            perm[f, i] = p
        f += 1
    if f != F:
        raise ParseError(hn, 1, f"header promises {F} facets, found {f}")
    try:
        return CellComplex(dim, adj, perm)
    except ComplexError as exc:
        raise ParseError(hn, 1, str(exc)) from exc


def write_pst(C: CellComplex) -> str:
    out = [f"pst {C.dim} {C.num_facets}"]
    for f in range(C.num_facets):
        ents = []
        for i in range(C.dim + 1):
            g = int(C.adj[f, i])
            ents.append("-" if g < 0 else f"{g}:" + "".join(map(str, C.perm[f, i].tolist())))
        out.append(" ".join(ents))
    return "\n".join(out) + "\n"


def read_gem(path: str | Path) -> ColoredGraph:
    return parse_gem(Path(path).read_text())


def read_pst(path: str | Path) -> CellComplex:
    return parse_pst(Path(path).read_text())


# color, style per edge color; colors beyond the palette cycle through it
DOT_PALETTE = [
    ("black", "solid"),
    ("red", "bold"),
    ("blue", "dashed"),
    ("darkgreen", "dotted"),
    ("orange", "tapered"),
]


def export_dot(G: ColoredGraph, name: str = "gem") -> str:
    """Undirected DOT with one styled edge per (pair, color), sorted by color then pair."""
    lines = [f"// palette: " + ", ".join(
        f"{c}={col}/{sty}" for c, (col, sty) in enumerate(DOT_PALETTE[: G.num_colors])),
        f"graph {name} {{",
        "  node [shape=circle, width=0.3, fontsize=10];"]
    for v in range(G.order):
        lines.append(f"  {v};")
    for c in range(G.num_colors):
        col, sty = DOT_PALETTE[c % len(DOT_PALETTE)]
        for a, b in G.edges(c):
            lines.append(f'  {a} -- {b} [color={col}, style={sty}, label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
