"""Crystallization criteria, simplicity, and the simple-crystallization arithmetic."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import (NOT_SPHERE, SPHERE, UNKNOWN, SphereCertificate, realize,
                      sphere_certificate)
from .graph import (ColoredGraph, GraphError, color_mask, g_count, is_bipartite,
                    is_contracted)
from .group import abelianize, gagliardi_presentation, tietze_simplify


class WrongDimension(GraphError):
    pass


class NotContractedGraph(GraphError):
    pass


class OutOfRange(GraphError):
    pass


def _pairs(G):
    return list(itertools.combinations(range(G.num_colors), 2))


def check_3manifold_crystallization(G: ColoredGraph) -> bool:
    """Gagliardi's criterion for contracted 4-colored graphs.

    Complementary two-color residues have equal component counts and
    g01 + g02 + g03 = 2 + n/2.
    """
    if G.dim != 3:
        raise WrongDimension(f"need 4 colors, graph has {G.num_colors}")
    if not is_contracted(G):
        raise NotContractedGraph("graph is not contracted")
    return _gagliardi_arithmetic(G)


def _gagliardi_arithmetic(G: ColoredGraph) -> bool:
    g = {p: g_count(G, p) for p in _pairs(G)}
    if g[(0, 1)] != g[(2, 3)] or g[(0, 2)] != g[(1, 3)] or g[(0, 3)] != g[(1, 2)]:
        return False
    return 2 * (g[(0, 1)] + g[(0, 2)] + g[(0, 3)]) == 4 + G.order


def check_sphere3(G: ColoredGraph, budget: int = 100_000) -> SphereCertificate:
    """Certify a 3-manifold crystallization as S^3 through a trivial pi_1.

    Presentations for every color pair are tried; the first that Tietze
    moves reduce to the trivial group gives Sphere. A nontrivial
    abelianization gives NotSphere.
    """
    if not check_3manifold_crystallization(G):
        return SphereCertificate(NOT_SPHERE, reason="fails Gagliardi criterion")
    ab = None
    for i, j in _pairs(G):
        P = gagliardi_presentation(G, i, j)
        ab = abelianize(P)
        if not ab.is_trivial:
            return SphereCertificate(NOT_SPHERE, ab, reason=f"H1 = {ab}")
        Q, _ = tietze_simplify(P, budget)
        if Q.num_generators == 0:
            return SphereCertificate(SPHERE, ab)
    return SphereCertificate(UNKNOWN, ab, reason="no presentation simplified to trivial")


def residue_sphere_certificate(G: ColoredGraph, budget: int = 100_000) -> SphereCertificate:
    """S^3 certificate for a 4-colored residue, contracted or not.

    Contracted residues use the crystallization route; others are realized
    and certified through their vertex links and pi_1 of the complex.
    """
    if is_contracted(G):
        return check_sphere3(G, budget)
    return sphere_certificate(realize(G), budget)


_RANK = {SPHERE: 0, UNKNOWN: 1, NOT_SPHERE: 2}


@dataclass
class ResidueReport:
    color: int
    contracted: bool
    criterion: bool
    certificate: SphereCertificate


@dataclass
class CrystallizationCertificate:
    residues: list[ResidueReport]

    @property
    def status(self) -> str:
        return max((r.certificate.status for r in self.residues), key=_RANK.__getitem__)

    @property
    def is_crystallization(self) -> bool:
        return self.status == SPHERE

    def __str__(self):
        return ", ".join(f"{r.color}:{r.certificate}" for r in self.residues)


def check_4manifold_crystallization(G: ColoredGraph, budget: int = 100_000) -> CrystallizationCertificate:
    """Certify each four-color residue of a contracted 5-colored graph as S^3."""
    if G.dim != 4:
        raise WrongDimension(f"need 5 colors, graph has {G.num_colors}")
    if not is_contracted(G):
        raise NotContractedGraph("graph is not contracted")
    out = []
    for c in range(G.num_colors):
        R = G.restrict([x for x in range(G.num_colors) if x != c])
        contracted = is_contracted(R)
        criterion = _gagliardi_arithmetic(R)
        if contracted and not criterion:
            cert = SphereCertificate(NOT_SPHERE, reason="fails Gagliardi criterion")
        else:
            cert = residue_sphere_certificate(R, budget)
        out.append(ResidueReport(c, contracted, criterion, cert))
    return CrystallizationCertificate(out)


def simplicity(G: ColoredGraph, k: int) -> bool:
    """k-simplicity: every residue on dim - k colors is connected."""
    if not 1 <= k <= G.dim - 1:
        raise OutOfRange(f"k must lie in 1..{G.dim - 1}, got {k}")
    return all(g_count(G, D) == 1
               for D in itertools.combinations(range(G.num_colors), G.dim - k))


def dehn_sommerville_f_vector(n: int, euler: int) -> tuple[int, int, int, int, int]:
    """f-vector of an n-facet contracted pseudotriangulation of a 4-manifold.

    Uses f0 = 5, f4 = n, 2 f3 = 5 f4, 2 f1 - 3 f2 + 4 f3 - 5 f4 = 0 and the
    alternating sum equal to the Euler characteristic.
    """
    if n % 2:
        raise ValueError("facet count must be even")
    f0, f4 = 5, n
    f3 = 5 * n // 2
    # f1 - f2 = f0 - f3 + f4 - euler and 2 f1 - 3 f2 = 5 f4 - 4 f3
    a = f0 - f3 + f4 - euler
    b = 5 * f4 - 4 * f3
    f2 = 2 * a - b
    f1 = a + f2
    return (f0, f1, f2, f3, f4)


@dataclass
class InvariantReport:
    n: int
    g: dict[tuple[int, ...], int]
    bipartite: bool
    contracted: bool
    simple_degrees: dict[int, bool]
    m: int | None = None
    beta2: int | None = None
    euler: int | None = None
    f_vector: tuple[int, ...] | None = None
    certificate: CrystallizationCertificate | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return self.simple_degrees.get(1, False)

    def lines(self) -> list[str]:
        out = [f"n={self.n}",
               f"bipartite: {str(self.bipartite).lower()}",
               f"contracted: {str(self.contracted).lower()}",
               f"simple: {str(self.simple).lower()}"]
        for k, ok in sorted(self.simple_degrees.items()):
            out.append(f"{k}-simple: {str(ok).lower()}")
        if self.certificate is not None:
            out.append(f"residues: {self.certificate}")
        pairs = {k: v for k, v in self.g.items() if len(k) == 2}
        out.append("g_ij: " + " ".join(f"{''.join(map(str, k))}={v}" for k, v in sorted(pairs.items())))
        if self.m is not None:
            out.append(f"m={self.m}")
        if self.beta2 is not None:
            out.append(f"beta2={self.beta2}")
        if self.euler is not None:
            out.append(f"chi={self.euler}")
        if self.f_vector is not None:
            out.append("f=(" + ",".join(map(str, self.f_vector)) + ")")
        out.extend(self.notes)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def simple_report(G: ColoredGraph, certify: bool = True, budget: int = 100_000) -> InvariantReport:
    """Component counts and, for simple 4-dimensional crystallizations, m, beta2, chi, f."""
    if G.dim != 4:
        raise WrongDimension(f"need 5 colors, graph has {G.num_colors}")
    C = range(G.num_colors)
    g = {}
    for size in (2, 3, 4):
        for D in itertools.combinations(C, size):
            g[D] = g_count(G, D)
    contracted = is_contracted(G)
    report = InvariantReport(
        n=G.order, g=g, bipartite=is_bipartite(G) is not None, contracted=contracted,
        simple_degrees={k: simplicity(G, k) for k in range(1, G.dim)})
    if certify and contracted:
        report.certificate = check_4manifold_crystallization(G, budget)
        if not report.certificate.is_crystallization:
            report.notes.append(f"residue status: {report.certificate.status}")
    pair_counts = {v for k, v in g.items() if len(k) == 2}
    if len(pair_counts) == 1:
        report.m = pair_counts.pop()
    if report.simple and report.m is not None and contracted:
        if G.order != 6 * report.m - 4:
            report.notes.append(f"warning: n={G.order} but 6m-4={6 * report.m - 4}")
        else:
            report.beta2 = report.m - 1
            report.euler = 2 + report.beta2
            report.f_vector = dehn_sommerville_f_vector(G.order, report.euler)
    return report


@dataclass(frozen=True)
class FormProfile:
    parity: str
    plus_one: int = 0
    minus_one: int = 0
    minus_e8: int = 0
    hyperbolic: int = 0

    @property
    def rank(self) -> int:
        if self.parity == "odd":
            return self.plus_one + self.minus_one
        return 8 * self.minus_e8 + 2 * self.hyperbolic

    @property
    def signature(self) -> int:
        if self.parity == "odd":
            return self.plus_one - self.minus_one
        return -8 * self.minus_e8

    def __str__(self):
        if self.parity == "odd":
            parts = [f"{self.plus_one}[+1]", f"{self.minus_one}[-1]"]
        else:
            parts = [f"{self.minus_e8}(-E8)", f"{self.hyperbolic}H"]
        return " + ".join(parts)


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral coefficient {x}")
    return int(x)


def hypersurface_profile(deg: int) -> FormProfile:
    """Intersection form summands of the degree-``deg`` surface in CP^3."""
    if deg < 1:
        raise ValueError("degree must be positive")
    d = Fraction(deg)
    if deg % 2:
        lam = _exact((d ** 3 - 6 * d ** 2 + 11 * d - 3) / 3)
        mu = _exact((d - 1) * (2 * d ** 2 - 4 * d + 3) / 3)
        return FormProfile("odd", plus_one=lam, minus_one=mu)
    l_d = _exact(d * (d ** 2 - 4) / 24)
    m_d = _exact((d ** 3 - 6 * d ** 2 + 11 * d - 3) / 3)
    return FormProfile("even", minus_e8=l_d, hyperbolic=m_d)


def residue_g_vector(G: ColoredGraph) -> dict[tuple[int, ...], int]:
    return {D: g_count(G, color_mask(D)) for D in itertools.combinations(range(G.num_colors), 2)}
