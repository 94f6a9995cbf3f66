"""Intersection calculus on the Losev-Manin space with 2 heavy and b light points.

The space M(2|b) has dimension b - 1.  The classes we track are monomials

    D_P . psi_n^a . psi_n'^c

where P is a set partition of {1..b} (the product of the light-collision
boundary classes over the blocks of P, a singleton block contributing the
fundamental class) and psi_n, psi_n' are the cotangent classes at the two
heavy points.  The multiplication rule for two collision classes is

    D_I . D_J = D_{I u J}                      if |I n J| = 1,
    D_I . D_J = D_I D_J (juxtaposition)        if |I n J| = 0,
    D_I . D_J = D_{I u J} (-psihat)^{|InJ|-1}  if |I n J| > 1,

and every monomial carrying a light-point psihat class integrates to zero
against heavy-psi monomials, so such terms are dropped at multiplication time
(the class records that it happened in ``hat_dropped``).

Integration: D_P of l blocks restricts to a copy of M(2|l), where

    int psi_n^a psi_n'^c = C(l-1, c)  if a + c = l - 1, else 0.

On top of the raw calculus this module evaluates the base-vertex factors of
the localization formula, each in three independent ways: a brute-force
expansion, a closed form, and a symbolic weight-fraction version used by the
factor-assembled evaluator.  Coefficients may be rationals or polynomials in
the weight V (``VPoly``), so the same expansion code serves both the V = 0
and the symbolic evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .algebra import VFraction, VPoly, binom
from .partitions import multiset, partitions, set_partitions_by_type

Blocks = Tuple[Tuple[int, ...], ...]
MonomialKey = Tuple[Blocks, int, int]  # (set partition, psi_n power, psi_n' power)
Coeff = Union[Fraction, int, VPoly]

__all__ = [
    "LMClass",
    "psi_integral",
    "lm_multiply",
    "lm_integrate",
    "d_block",
    "d_lambda",
    "delta",
    "expansion_check",
    "cont_B_interior",
    "cont_B_end",
    "cont_B_vfraction",
    "integrate_d_lambda",
]


def psi_integral(b: int, a: int, c: int) -> int:
    """int_{M(2|b)} psi_n^a psi_n'^c = C(b-1, c) when a + c = b - 1, else 0."""
    if b < 1 or a < 0 or c < 0:
        raise ValueError("need b >= 1 and a, c >= 0")
    if a + c != b - 1:
        return 0
    return binom(b - 1, c)


def _canonical_blocks(b: int, blocks: Iterable[Iterable[int]]) -> Blocks:
    blks = [tuple(sorted(blk)) for blk in blocks]
    covered = sorted(x for blk in blks for x in blk)
    if covered != list(range(1, b + 1)):
        raise ValueError(f"{blks} is not a set partition of 1..{b}")
    return tuple(sorted(blks, key=lambda t: t[0]))


def _identity_blocks(b: int) -> Blocks:
    return tuple((i,) for i in range(1, b + 1))


class LMClass:
    """A finite rational-linear combination of D_P psi^a psi'^c monomials.

    Monomials of codimension above b - 1 integrate to zero and can never drop
    in codimension, so they are truncated away eagerly.  ``hat_dropped``
    records whether any product ever produced a light-psi term.
    """

    __slots__ = ("b", "terms", "hat_dropped")

    def __init__(self, b: int, terms: Dict[MonomialKey, Coeff] | None = None, hat_dropped: bool = False):
        self.b = b
        self.terms: Dict[MonomialKey, Coeff] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    blocks, a, c = key
                    if (b - len(blocks)) + a + c <= b - 1:
                        self.terms[key] = coeff
        self.hat_dropped = hat_dropped

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, b: int) -> "LMClass":
        return cls(b)

    @classmethod
    def one(cls, b: int) -> "LMClass":
        return cls(b, {(_identity_blocks(b), 0, 0): Fraction(1)})

    @classmethod
    def monomial(cls, b: int, blocks: Iterable[Iterable[int]], a: int = 0, c: int = 0, coeff: Coeff = 1) -> "LMClass":
        if isinstance(coeff, int):
            coeff = Fraction(coeff)
        return cls(b, {(_canonical_blocks(b, blocks), a, c): coeff})

    @classmethod
    def psi(cls, b: int, a: int, c: int, coeff: Coeff = 1) -> "LMClass":
        if isinstance(coeff, int):
            coeff = Fraction(coeff)
        return cls(b, {(_identity_blocks(b), a, c): coeff})

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "LMClass") -> None:
        if self.b != other.b:
            raise ValueError(f"light-point count mismatch: {self.b} != {other.b}")

    def __add__(self, other: "LMClass") -> "LMClass":
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            cur = terms.get(key)
            terms[key] = coeff if cur is None else cur + coeff
        return LMClass(self.b, terms, self.hat_dropped or other.hat_dropped)

    def __sub__(self, other: "LMClass") -> "LMClass":
        return self + other.scale(-1)

    def scale(self, s: Coeff) -> "LMClass":
        if isinstance(s, int):
            s = Fraction(s)
        return LMClass(self.b, {k: s * v for k, v in self.terms.items()}, self.hat_dropped)

    def __mul__(self, other: Union["LMClass", Coeff]) -> "LMClass":
        if isinstance(other, (int, Fraction, VPoly)):
            return self.scale(other)
        self._check(other)
        out: Dict[MonomialKey, Coeff] = {}
        dropped = self.hat_dropped or other.hat_dropped
        for (bl1, a1, c1), v1 in self.terms.items():
            for (bl2, a2, c2), v2 in other.terms.items():
                merged = _merge_blocks(bl1, bl2)
                if merged is None:
                    dropped = True
                    continue
                key = (merged, a1 + a2, c1 + c2)
                prod = v1 * v2
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        return LMClass(self.b, out, dropped)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LMClass":
        out = LMClass.one(self.b)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LMClass):
            return NotImplemented
        return self.b == other.b and self.terms == other.terms

    def integrate(self) -> Coeff:
        """Integrate over M(2|b): each D_P psi^a psi'^c of full codimension
        contributes C(l-1, c) via restriction to M(2|l)."""
        total: Coeff = Fraction(0)
        b = self.b
        for (blocks, a, c), coeff in self.terms.items():
            l = len(blocks)
            if (b - l) + a + c != b - 1:
                continue
            total = total + coeff * psi_integral(l, a, c)
        return total

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"LMClass(b={self.b}, {n} terms, hat_dropped={self.hat_dropped})"


def _merge_blocks(p: Blocks, q: Blocks) -> Blocks | None:
    """Join two set partitions per the collision product; None when a
    psihat power appears (overlap of size >= 2 at merge time)."""
    acc = [set(blk) for blk in p]
    for block in q:
        if len(block) == 1:
            continue
        new = set(block)
        hits = []
        for i, blk in enumerate(acc):
            inter = len(new & blk)
            if inter:
                if inter > 1:
                    return None
                hits.append(i)
        for i in hits:
            new |= acc[i]
        acc = [blk for i, blk in enumerate(acc) if i not in hits]
        acc.append(new)
    return tuple(sorted((tuple(sorted(blk)) for blk in acc), key=lambda t: t[0]))


def lm_multiply(x: LMClass, y: LMClass) -> LMClass:
    return x * y


def lm_integrate(x: LMClass) -> Coeff:
    return x.integrate()


def d_block(b: int, block: Sequence[int]) -> LMClass:
    """D_I for a single subset I (singletons give the fundamental class)."""
    rest = [(i,) for i in range(1, b + 1) if i not in set(block)]
    return LMClass.monomial(b, [tuple(block)] + rest)


@lru_cache(maxsize=None)
def delta(b: int, j: int) -> LMClass:
    """Delta_j = sum_{i < j} D_{ij}."""
    out = LMClass.zero(b)
    for i in range(1, j):
        out = out + d_block(b, (i, j))
    return out


@lru_cache(maxsize=None)
def d_lambda(b: int, lam: Tuple[int, ...]) -> LMClass:
    """D_lambda = sum of D_P over set partitions P with block sizes lambda."""
    out = LMClass.zero(b)
    for sp in set_partitions_by_type(b)[tuple(lam)]:
        out = out + LMClass.monomial(b, sp)
    return out


def integrate_d_lambda(b: int, lam: Sequence[int], a: int, c: int) -> Fraction:
    """int D_lambda psi^a psi'^c, evaluated through the raw calculus."""
    cls = d_lambda(b, tuple(lam)) * LMClass.psi(b, a, c)
    return Fraction(cls.integrate())


def expansion_check(b: int) -> bool:
    """Verify prod_{j=2}^{b} (1 + Delta_j) = sum_lambda (prod (lam_q - 1)!) D_lambda.

    Checked both as an identity of expanded classes and through the pairing
    against every heavy-psi monomial psi^a psi'^c with a + c <= b - 1.
    """
    lhs = LMClass.one(b)
    for j in range(2, b + 1):
        lhs = lhs * (LMClass.one(b) + delta(b, j))
    rhs = LMClass.zero(b)
    for lam in partitions(b):
        w = 1
        for part in lam:
            w *= math.factorial(part - 1)
        rhs = rhs + d_lambda(b, lam).scale(w)
    if lhs != rhs:
        return False
    for a in range(b):
        for c in range(b - a):
            probe = LMClass.psi(b, a, c)
            if (lhs * probe).integrate() != (rhs * probe).integrate():
                return False
    return True


# ----------------------------------------------------------------------
# Base-vertex contributions
# ----------------------------------------------------------------------


def _psi_geometric(b: int, e: int, side: str) -> LMClass:
    """-e * sum_s (-e psi)^s, the expansion of 1/(W2/e - psi) at W = 1, W2 = -1."""
    out = LMClass.zero(b)
    for s in range(b):
        coeff = Fraction((-1) ** (s + 1) * e ** (s + 1))
        out = out + (LMClass.psi(b, s, 0, coeff) if side == "n" else LMClass.psi(b, 0, s, coeff))
    return out


def cont_B_interior(b: int, e: int, e2: int) -> Tuple[Fraction, int]:
    """Interior base-vertex factor at V = 0, as (coefficient, power of W = -3).

    Evaluates both the brute-force expansion (partition sum against the raw
    Losev-Manin integrals) and the closed form

        e e' 2^(2b-1) / b * multiset(b, e + e')

    and raises if they disagree; returns the closed value.
    """
    if b < 1 or e < 1 or e2 < 1:
        raise ValueError("need b, e, e' >= 1")
    brute = Fraction(0)
    for lam in partitions(b):
        l = len(lam)
        k = l - 1
        w = 1
        for part in lam:
            w *= math.factorial(part - 1)
        for m in range(k + 1):
            integral = integrate_d_lambda(b, lam, k - m, m)
            if integral:
                brute += w * Fraction(e ** (k - m) * e2**m) * integral
    brute *= Fraction(e * e2 * 2 ** (2 * b - 1), math.factorial(b))
    closed = Fraction(e * e2 * 2 ** (2 * b - 1), b) * multiset(b, e + e2)
    if brute != closed:
        raise AssertionError(f"cont_B interior mismatch at b={b}, e={e}, e'={e2}: {brute} != {closed}")
    return closed, -3


def cont_B_end(b: int, e: int) -> Tuple[Fraction, int]:
    """End base-vertex factor at V = 0, as (coefficient, power of W = -2).

    Single-psi analogue of the interior case: the product expansion
    prod (1 - Delta_j) against the geometric series in e psi is integrated
    directly and compared with the closed form -e 4^b / (2b) * multiset(b, e).
    """
    if b < 1 or e < 1:
        raise ValueError("need b, e >= 1")
    cls = LMClass.one(b)
    for j in range(2, b + 1):
        cls = cls * (LMClass.one(b) - delta(b, j))
    cls = cls * _psi_geometric(b, e, "n")
    brute = Fraction(2 * (-4) ** (b - 1), math.factorial(b)) * Fraction(cls.integrate())
    closed = -Fraction(e * 4**b, 2 * b) * multiset(b, e)
    if brute != closed:
        raise AssertionError(f"cont_B end mismatch at b={b}, e={e}: {brute} != {closed}")
    return closed, -2


def cont_B_vfraction(b: int, e: int, e2: int = 0) -> VFraction:
    """Base-vertex factor as a symbolic weight fraction (general V).

    Expands, with coefficients in Q[V] and the vertex at the fixed point with
    weights V2 = V + 2W, W2 = -W,

        (1/b!) int [ V2/W2^2 prod_j (V2 - 2 Delta_j)^2 / (W2 + Delta_j) ]
                  / [ (W2/e - psi_n) (W2/e' - psi_n')^eps ]

    with eps = 1 for an interior vertex (e2 >= 1) and 0 for an end vertex
    (e2 = 0).  The homogeneous degree is -3 - eps + 1 = -2 - eps.
    """
    if b < 1 or e < 1 or e2 < 0:
        raise ValueError("need b >= 1, e >= 1, e' >= 0")
    eps = 1 if e2 else 0
    v2 = VPoly((2, 1))  # V + 2W at W = 1
    acc = LMClass.one(b) * v2  # V2 / W2^2 and W2^2 = W^2
    for j in range(2, b + 1):
        dj = delta(b, j)
        lin = LMClass.one(b) * v2 - dj.scale(2)
        acc = acc * lin * lin
        # 1/(W2 + Delta_j) = 1/(-1 + Delta_j) = -(1 + Delta_j + Delta_j^2 + ...)
        inv = LMClass.zero(b)
        power = LMClass.one(b)
        for _ in range(b):
            inv = inv + power
            power = power * dj
        acc = acc * inv.scale(-1)
    acc = acc * _psi_geometric(b, e, "n")
    if eps:
        acc = acc * _psi_geometric(b, e2, "nprime")
    value = acc.integrate()
    if isinstance(value, (int, Fraction)):
        value = VPoly((value,))
    value = value * Fraction(1, math.factorial(b))
    return VFraction(value, VPoly.one(), -2 - eps)
