"""The Batyrev ring of F2 as a module over its deformation parameters.

The ring is C[x2, x4] / < x2^2 - q4 x4^2, (2 x2 + x4) x4 - q2 >, free over
the series ring on the generators (1, x2, x4, x2 x4).  Normal forms are
computed by the rewrite system

    x4^2    -> q2 - 2 x2 x4
    x2^2    -> q2 q4 - 2 q4 x2 x4          (substituting the first rule)
    x2^2 x4 -> q2 q4 (1 - 4 q4)^{-1} (x4 - 2 x2)

where the last rule resolves the self-referential reduction of the mixed
cubic by inverting the unit 1 - 4 q4; since (1+f)^2 (1 - 4 q4) = 1 this
coefficient is (1+f)^2.  The mixed rule is applied first, so each step
strictly reduces (x2-degree, x4-degree) lexicographically and rewriting
terminates.

Multiplication by x2 and x4 then gives 4 x 4 matrices over the series ring,
and the module is identified with the quantum module via the change of basis

    phi: 1 -> 1, x2 -> sigma_2 * 1, x4 -> sigma_4 * 1,
         x2 x4 -> sigma_2 * (sigma_4 * 1),

whose matrix has determinant (1+f)^3, a unit.  ``verify_isomorphism`` checks
the intertwining phi . (mult by x_i) = (sigma_i action) . phi exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import (
    SeriesMatrix,
    TruncSeries2,
    f_series,
    mat_det,
    mat_eq,
    mat_mul,
    one_plus_f,
)
from .quantum_module import star_matrix

__all__ = [
    "BAT_BASIS",
    "Reducer",
    "normal_form",
    "bat_action_matrix",
    "phi_matrix",
    "verify_isomorphism",
]

BAT_BASIS = ("1", "x2", "x4", "x2*x4")

# polynomial in x2, x4 with series coefficients: {(a, b): TruncSeries2}
BatPoly = Dict[Tuple[int, int], TruncSeries2]

BatElement = Tuple[TruncSeries2, TruncSeries2, TruncSeries2, TruncSeries2]

_BASIS_KEYS = ((0, 0), (1, 0), (0, 1), (1, 1))


class Reducer:
    """Normal-form rewriting at a fixed truncation order, with memoized
    monomial reductions."""

    def __init__(self, order: int):
        self.order = order
        self.q2 = TruncSeries2.monomial(order, 1, 0)
        self.q4 = TruncSeries2.monomial(order, 0, 1)
        self.q2q4 = TruncSeries2.monomial(order, 1, 1)
        # (1 - 4 q4)^{-1}, the unit resolving the mixed cubic
        self.unit = (TruncSeries2.one(order) - 4 * self.q4).invert()
        self._memo: Dict[Tuple[int, int], BatElement] = {}

    def monomial(self, a: int, b: int) -> BatElement:
        """Normal form of x2^a x4^b as coordinates on (1, x2, x4, x2 x4)."""
        if a < 0 or b < 0:
            raise ValueError("negative exponents")
        key = (a, b)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        n = self.order
        zero = TruncSeries2.zero(n)
        if key in _BASIS_KEYS:
            out = tuple(
                TruncSeries2.one(n) if key == bk else zero for bk in _BASIS_KEYS
            )
        elif a >= 2 and b >= 1:
            # x2^a x4^b = x2^(a-2) x4^(b-1) * (x2^2 x4)
            coeff = self.q2q4 * self.unit
            out = self._combine(
                [(coeff, (a - 2, b)), (-2 * coeff, (a - 1, b - 1))]
            )
        elif a >= 2:
            out = self._combine([(self.q2q4, (a - 2, 0)), (-2 * self.q4, (a - 1, 1))])
        else:  # b >= 2, a <= 1
            out = self._combine([(self.q2, (a, b - 2)), (TruncSeries2.const(n, -2), (a + 1, b - 1))])
        self._memo[key] = out
        return out

    def _combine(self, parts: List[Tuple[TruncSeries2, Tuple[int, int]]]) -> BatElement:
        n = self.order
        acc = [TruncSeries2.zero(n) for _ in range(4)]
        for coeff, (a, b) in parts:
            for i, comp in enumerate(self.monomial(a, b)):
                acc[i] = acc[i] + coeff * comp
        return tuple(acc)  # type: ignore[return-value]

    def normal_form(self, poly: BatPoly) -> BatElement:
        n = self.order
        acc = [TruncSeries2.zero(n) for _ in range(4)]
        for (a, b), coeff in poly.items():
            for i, comp in enumerate(self.monomial(a, b)):
                acc[i] = acc[i] + coeff * comp
        return tuple(acc)  # type: ignore[return-value]


def normal_form(poly: BatPoly, order: int) -> BatElement:
    return Reducer(order).normal_form(poly)


def bat_action_matrix(k: int, order: int, reducer: Reducer | None = None) -> SeriesMatrix:
    """Matrix of multiplication by x2 (k = 2) or x4 (k = 4) on the basis
    (1, x2, x4, x2 x4), via normal forms."""
    if k not in (2, 4):
        raise ValueError("generator must be 2 or 4")
    red = reducer or Reducer(order)
    da, db = (1, 0) if k == 2 else (0, 1)
    cols = [red.monomial(a + da, b + db) for (a, b) in _BASIS_KEYS]
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def phi_matrix(order: int) -> SeriesMatrix:
    """Change of basis from (1, x2, x4, x2 x4) to (1, D2, D4, pt):

        [[1, 0,    0,   -2 (1+f)^2 q2 q4],
         [0, 1,    0,    0              ],
         [0, -f/2, 1+f,  0              ],
         [0, 0,    0,    (1+f)^2        ]].
    """
    n = order
    f = f_series(n)
    u = one_plus_f(n)
    z = TruncSeries2.zero(n)
    one = TruncSeries2.one(n)
    q2q4 = TruncSeries2.monomial(n, 1, 1)
    return [
        [one, z, z, -2 * (u * u * q2q4)],
        [z, one, z, z],
        [z, -Fraction(1, 2) * f, u, z],
        [z, z, z, u * u],
    ]


def verify_isomorphism(order: int) -> List[str]:
    """Check phi intertwines both multiplication actions with the quantum
    action and that det(phi) = (1+f)^3 is a unit; returns mismatches."""
    problems: List[str] = []
    phi = phi_matrix(order)
    red = Reducer(order)
    for k in (2, 4):
        lhs = mat_mul(phi, bat_action_matrix(k, order, red))
        rhs = mat_mul(star_matrix(k, order), phi)
        if not mat_eq(lhs, rhs):
            problems.append(f"phi does not intertwine the generator {k} actions")
    det = mat_det(phi)
    if det.constant_term() == 0:
        problems.append("det(phi) is not a unit")
    if det != one_plus_f(order) ** 3:
        problems.append("det(phi) != (1+f)^3")
    return problems
