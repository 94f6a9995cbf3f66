"""Fixed-locus chain graphs and their contributions to the 2-pointed invariants.

Torus-fixed quasimaps with two heavy markings have chains of P^1's as source
curves, so every fixed locus is a decorated chain graph: solid edges are
multiple covers of the invariant (-2)-curve, a dashed half-edge of degree b
is a contracted base-type component carrying b base points, and for the mixed
degree family one vertical edge of fiber class hangs off the left end.

Only the loci whose contribution survives the V = 0 specialization are
enumerated ("necessary" loci):

* family ``dD4`` (degree d times the -2-curve class): graphs F_{e,e'}^b with
  b + e + e' = d, indices omitted when zero, every base vertex over the fixed
  point with weights (V2, W2) = (V + 2W, -W);
* family ``D2+dD4`` (fiber class plus d times the -2-curve class): graphs
  F'_b with 0 <= b <= d - 1, plus the lone vertical edge at d = 0.

Each necessary locus is evaluated two ways: a closed product of binomials and
a factor-assembled product of symbolic weight fractions whose V -> 0 limit
must agree (the assembled route raises on any mismatch, and on a genuine pole
at V = 0).  The total over loci reproduces the closed invariant formulas; the
algebraic resummation that proves this is replayed step by step in
``resummation_chain`` as a regression check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .algebra import (
    PoleAtVZero,
    VF_V,
    VF_W,
    VFraction,
    VPoly,
    binom,
    binom_rational,
)
from .losev_manin import cont_B_vfraction

FAMILY_DD4 = "dD4"
FAMILY_D2DD4 = "D2+dD4"

__all__ = [
    "FAMILY_DD4",
    "FAMILY_D2DD4",
    "ChainGraph",
    "Contribution",
    "enumerate_necessary_loci",
    "edge_factor",
    "locus_contribution",
    "invariant_by_localization",
    "closed_invariant_formula",
    "resummation_chain",
]


@dataclass(frozen=True)
class ChainGraph:
    """A decorated fixed-locus chain graph.

    ``edges`` are the horizontal edge degrees, left to right.  ``half_edge``
    is (vertex position, degree) of the dashed base component, if any; base
    vertices always sit over the fixed point p2 (for dD4) or at the right end
    (for D2+dD4).  For the D2+dD4 family the leftmost component is the
    vertical fiber-class edge from p1 up to p4 carrying the second marking.
    """

    family: str
    edges: Tuple[int, ...]
    half_edge: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.family not in (FAMILY_DD4, FAMILY_D2DD4):
            raise ValueError(f"unknown family {self.family!r}")
        if any(e < 1 for e in self.edges):
            raise ValueError("edge degrees must be positive")
        if self.half_edge is not None and self.half_edge[1] < 1:
            raise ValueError("half-edge degree must be positive")

    @property
    def d(self) -> int:
        b = self.half_edge[1] if self.half_edge else 0
        return sum(self.edges) + b

    @property
    def vertex_labels(self) -> Tuple[str, ...]:
        if self.family == FAMILY_DD4:
            return tuple("p1" if i % 2 == 0 else "p2" for i in range(len(self.edges) + 1))
        return ("p4", "p1") + tuple("p2" if i % 2 == 0 else "p1" for i in range(len(self.edges)))

    @property
    def markings(self) -> Tuple[int, int]:
        """Vertex positions of the heavy markings 1 and 2."""
        if self.family == FAMILY_DD4:
            return (0, len(self.edges))
        return (len(self.vertex_labels) - 1, 0)

    @property
    def name(self) -> str:
        if self.family == FAMILY_DD4:
            sub = ",".join(str(e) for e in self.edges)
            sup = f"^{self.half_edge[1]}" if self.half_edge else ""
            return f"F_{{{sub}}}{sup}" if (len(self.edges) > 1 or self.half_edge) else f"F_{self.edges[0]}"
        b = self.half_edge[1] if self.half_edge else 0
        return f"F'_{b}"


@dataclass(frozen=True)
class Contribution:
    graph: ChainGraph
    value: Fraction
    w_exponent: int
    method: str

    def __post_init__(self):
        if self.w_exponent != 0:
            raise ValueError(f"locus {self.graph.name} has weight degree {self.w_exponent} != 0")


def enumerate_necessary_loci(family: str, d: int) -> List[ChainGraph]:
    """All necessary fixed-locus graphs of the given family and degree."""
    out: List[ChainGraph] = []
    if family == FAMILY_DD4:
        if d < 1:
            raise ValueError("family dD4 needs d >= 1")
        out.append(ChainGraph(family, (d,)))
        for e in range(1, d):
            out.append(ChainGraph(family, (e, d - e)))
        for b in range(1, d):
            out.append(ChainGraph(family, (d - b,), (1, b)))
        for b in range(1, d - 1):
            for e in range(1, d - b):
                e2 = d - b - e
                out.append(ChainGraph(family, (e, e2), (1, b)))
        return out
    if family == FAMILY_D2DD4:
        if d < 0:
            raise ValueError("family D2+dD4 needs d >= 0")
        if d == 0:
            return [ChainGraph(family, ())]
        for b in range(d):
            half = (2, b) if b else None
            out.append(ChainGraph(family, (d - b,), half))
        return out
    raise ValueError(f"unknown family {family!r}")


@lru_cache(maxsize=None)
def edge_factor(e: int) -> VFraction:
    """Contribution of a degree-e cover of the (-2)-curve between p1 and p2:

        (1/e) e^{2e} prod_{j=0}^{2e-2} (V + (1+j) W / e) / ((e!)^2 W^{2e} (-1)^e),

    a weight fraction of homogeneous degree -1 whose value at V = 0 is
    (-1)^e C(2e, e) / (2e W).
    """
    if e < 1:
        raise ValueError("edge degree must be >= 1")
    num = VPoly.one()
    for j in range(2 * e - 1):
        num = num * VPoly((j + 1, e))  # e*V + (j+1), same product after clearing 1/e powers
    den = Fraction((-1) ** e * math.factorial(e) ** 2)
    return VFraction(num, VPoly((den,)), -1)


def _v2() -> VFraction:
    return VF_V + 2 * VF_W


def _interior_map_vertex_factor(e: int, e2: int) -> VFraction:
    """Inverse node-smoothing factor -e e' / ((e + e') W) for a map vertex at p2."""
    return VFraction.scalar(Fraction(-e * e2, e + e2), degree=-1)


def _assembled_dd4(g: ChainGraph) -> VFraction:
    edges = g.edges
    half = g.half_edge
    n2m = n2b = n2end = 0
    interior = range(1, len(edges))
    for pos in interior:
        if half and half[0] == pos:
            n2b += 1
        else:
            n2m += 1
    if half and half[0] == len(edges):
        n2end += 1
    count = n2m + n2end + 2 * n2b
    fac = VF_W  # insertion weight at the first marking
    fac = fac * VFraction.scalar((-1) ** (n2m + n2end)) * _v2() ** count * VF_W**count
    for pos in interior:
        if not (half and half[0] == pos):
            fac = fac * _interior_map_vertex_factor(edges[pos - 1], edges[pos])
    for e in edges:
        fac = fac * edge_factor(e)
    if half:
        pos, b = half
        if pos == len(edges):
            fac = fac * cont_B_vfraction(b, edges[-1], 0)
        else:
            fac = fac * cont_B_vfraction(b, edges[pos - 1], edges[pos])
    return fac


def _assembled_d2dd4(g: ChainGraph) -> VFraction:
    b = g.half_edge[1] if g.half_edge else 0
    e = g.edges[0]
    n2end = 1 if b else 0
    fac = VF_W**2 * VF_V  # insertion weights: divisor at marking 1, point class at marking 2
    fac = fac * VFraction(VPoly((-1,)), VPoly((0, 0, 1)), -3)  # vertical fiber edge: -1/(W V^2)
    fac = fac * VFraction.scalar((-1) ** n2end) * VF_V * _v2() ** n2end * VF_W ** (n2end + 1)
    fac = fac * VFraction(VPoly((e,)), VPoly((1, e)), -1)  # junction smoothing 1/(V + W/e)
    fac = fac * edge_factor(e)
    if b:
        fac = fac * cont_B_vfraction(b, e, 0)
    return fac


def closed_locus_value(g: ChainGraph) -> Fraction:
    """Closed form of the locus contribution (insertions included)."""
    d = g.d
    if g.family == FAMILY_DD4:
        b = g.half_edge[1] if g.half_edge else 0
        edge_binoms = Fraction(1)
        for e in g.edges:
            edge_binoms *= binom(2 * e, e)
        if b == 0:
            return Fraction((-1) ** d, 2 * d) * edge_binoms
        return Fraction((-1) ** (d - b) * 2 ** (2 * b), 2 * b) * binom(d - 1, b - 1) * edge_binoms
    if d == 0:
        # lone vertical edge: the closed family formula continued to d = 0
        return Fraction(-1, 2)
    b = g.half_edge[1] if g.half_edge else 0
    e = d - b
    return Fraction((-1) ** (d - b - 1) * 4**b, 2) * binom(2 * e, e) * binom(d - 1, b)


def locus_contribution(g: ChainGraph, method: str = "closed") -> Contribution:
    """Evaluate one necessary locus.

    ``closed`` uses the binomial product formulas.  ``assembled`` multiplies
    the symbolic factors (insertion weights, vertex counting, node smoothing,
    edge covers, base vertices), takes V -> 0, checks the result is a weight-
    degree-zero rational number equal to the closed form, and returns it.
    The degree-0 graph of the mixed family has no factor decomposition (there
    is no horizontal edge to smooth against), so both methods return its
    pinned closed value.
    """
    closed = closed_locus_value(g)
    if method == "closed":
        return Contribution(g, closed, 0, "closed")
    if method != "assembled":
        raise ValueError(f"unknown method {method!r}")
    if g.family == FAMILY_D2DD4 and g.d == 0:
        return Contribution(g, closed, 0, "assembled")
    fac = _assembled_dd4(g) if g.family == FAMILY_DD4 else _assembled_d2dd4(g)
    try:
        value, degree = fac.eval_at_v0()
    except PoleAtVZero as exc:  # pragma: no cover - necessary loci are regular
        raise PoleAtVZero(f"locus {g.name}: {exc}") from exc
    if value != closed:
        raise AssertionError(f"locus {g.name}: assembled {value} != closed {closed}")
    return Contribution(g, value, degree, "assembled")


def invariant_by_localization(family: str, d: int, method: str = "closed") -> Fraction:
    """Sum of locus contributions: <D2, 1> for dD4, <D1, pt> for D2+dD4."""
    total = Fraction(0)
    for g in enumerate_necessary_loci(family, d):
        total += locus_contribution(g, method).value
    return total


def closed_invariant_formula(family: str, d: int) -> Fraction:
    """The closed invariant the locus sum must reproduce."""
    if family == FAMILY_DD4:
        if d < 1:
            raise ValueError("family dD4 needs d >= 1")
        return -Fraction(binom(2 * d, d), 2 * d)
    if family == FAMILY_D2DD4:
        if d < 0:
            raise ValueError("family D2+dD4 needs d >= 0")
        return Fraction(binom(2 * d, d), 2 * (2 * d - 1))
    raise ValueError(f"unknown family {family!r}")


def resummation_chain(d: int) -> List[Fraction]:
    """Replay the algebraic steps that collapse the dD4 locus sum to the
    closed invariant; every stage must give the same total.

    Stages: raw four-case sum; fold the no-base graphs into an e = 0 edge
    case; absorb the one-edge base graphs via C(d-1, b-1)/b = C(d, b)/d;
    extend to b = 0; apply sum_k C(2k,k) C(2(n-k), n-k) = 4^n; fold the 4^d
    term back in; convert C(2n,n) = (-4)^n C(-1/2, n) and use the Vandermonde
    sum of C(d, b) C(-1/2, d-b).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    s0 = invariant_by_localization(FAMILY_DD4, d)

    def cc(k: int) -> int:
        return binom(2 * k, k)

    s1 = sum(
        (Fraction((-1) ** d, 2 * d) * cc(e) * cc(d - e) for e in range(d)), Fraction(0)
    )
    s1 += sum(
        (
            Fraction((-1) ** (d - b) * 4**b, 2 * b) * binom(d - 1, b - 1) * cc(d - b)
            for b in range(1, d)
        ),
        Fraction(0),
    )
    s1 += sum(
        (
            Fraction((-1) ** (d - b) * 4**b, 2 * b) * binom(d - 1, b - 1) * cc(e) * cc(d - b - e)
            for b in range(1, d - 1)
            for e in range(1, d - b)
        ),
        Fraction(0),
    )
    s2 = sum(
        (Fraction((-1) ** d, 2 * d) * cc(e) * cc(d - e) for e in range(d)), Fraction(0)
    )
    if d >= 2:  # the b = d-1 one-edge base graph extracted as -4^(d-1)
        s2 -= Fraction(4 ** (d - 1))
    s2 += sum(
        (
            Fraction((-1) ** (d - b) * 4**b, 2 * d) * binom(d, b) * cc(e) * cc(d - b - e)
            for b in range(1, d - 1)
            for e in range(d - b)
        ),
        Fraction(0),
    )
    s3 = sum(
        (
            Fraction((-1) ** (d - b) * 4**b, 2 * d) * binom(d, b) * cc(e) * cc(d - b - e)
            for b in range(d)
            for e in range(d - b)
        ),
        Fraction(0),
    )
    s4 = sum(
        (
            Fraction((-1) ** (d - b) * 4**b, 2 * d) * binom(d, b) * (4 ** (d - b) - cc(d - b))
            for b in range(d)
        ),
        Fraction(0),
    )
    s5 = sum(
        (
            Fraction((-1) ** ((d - b - 1) % 2) * 4**b, 2 * d) * binom(d, b) * cc(d - b)
            for b in range(d + 1)
        ),
        Fraction(0),
    )
    s6 = -Fraction(4**d, 2 * d) * sum(
        (binom(d, b) * binom_rational(Fraction(-1, 2), d - b) for b in range(d + 1)),
        Fraction(0),
    )
    return [s0, s1, s2, s3, s4, s5, s6, closed_invariant_formula(FAMILY_DD4, d)]
