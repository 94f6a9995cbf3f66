"""The quantum module structure on H*(F2) over truncated series.

The two ring generators sigma_2, sigma_4 (dual to the second and fourth rays)
act on the cohomology basis (1, D2, D4, pt) by

    sigma_k * phi = phi cup D_k + sum_{beta != 0} q^beta (D_k . beta)
                    sum_i <phi, T_i>_beta T^i,

assembled from the invariant table; the closed form of the action is

    sigma_2 * 1  = D2 - f/2 D4              sigma_4 * 1  = (1+f) D4
    sigma_2 * D2 = q2 q4 (1+f) - f/2 pt     sigma_4 * D2 = -q2 f/2 + (1+f) pt
    sigma_2 * D4 = -2 q2 q4 (1+f) + (1+f) pt
                                            sigma_4 * D4 = q2 (1+f) - 2 (1+f) pt
    sigma_2 * pt = q2 q4 (1+f) D4           sigma_4 * pt = q2 D2 - q2 f/2 D4

with f(q4) = sum_{d>=1} C(2d,d) q4^d.  The module axiom implies that the two
action matrices commute, which together with the relations

    (2 sigma_2 + sigma_4) * (sigma_4 * 1) = q2
    sigma_2 * (sigma_2 * 1) = q4 * sigma_4 * (sigma_4 * 1)

is verified exactly at every truncation order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import (
    SeriesMatrix,
    TruncSeries2,
    f_series,
    mat_eq,
    mat_mul,
    mat_sub,
    mat_zero,
)
from .fan import F2_BASIS_NAMES, f2_cup_table, f2_pairing
from .invariants import InvariantKey, action_invariant

__all__ = [
    "BASIS",
    "pairing_and_dual",
    "cup_action_matrix",
    "star_matrix",
    "closed_action_matrix",
    "verify_table",
    "verify_module_axiom",
    "verify_quantum_relations",
    "apply_matrix",
    "classical_limit_matrix",
]

BASIS = F2_BASIS_NAMES  # ("1", "D2", "D4", "pt")

_GENERATORS = (2, 4)


def pairing_and_dual() -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, ...], ...]]:
    """Poincare pairing matrix g and the dual basis vectors T^i (rows), with
    g . g^{-1} = id checked; duals: 1 <-> pt, D2 <-> 2 D2 + D4, D4 <-> D2."""
    g = f2_pairing()
    duals = ((0, 0, 0, 1), (0, 2, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))
    for i in range(4):
        for j in range(4):
            val = sum(g[i][k] * duals[j][k] for k in range(4))
            if val != (1 if i == j else 0):
                raise AssertionError("dual basis fails the pairing check")
    return g, duals


def cup_action_matrix(k: int) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of cup product with D_k on the basis (columns act on basis elements)."""
    if k not in _GENERATORS:
        raise ValueError("generator must be 2 or 4")
    cup = f2_cup_table()
    col_of = {2: 1, 4: 2}[k]
    cols = [cup[col_of][j] for j in range(4)]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def _beta_pairing(k: int, a: int, d: int) -> int:
    """D_k . beta for beta = a (fiber) + d ((-2)-curve)."""
    return d if k == 2 else a - 2 * d


def star_matrix(k: int, order: int) -> SeriesMatrix:
    """Matrix of sigma_k acting on column vectors in the basis (1, D2, D4, pt),
    assembled from the classical cup product and the invariant table."""
    if order < 0:
        raise ValueError("order must be >= 0")
    _, duals = pairing_and_dual()
    cup = cup_action_matrix(k)
    mat = [[TruncSeries2.const(order, cup[i][j]) for j in range(4)] for i in range(4)]

    def add_quantum(a: int, d: int, q_a: int, q_b: int) -> None:
        coeff = _beta_pairing(k, a, d)
        if coeff == 0:
            return
        for j, phi in enumerate(BASIS):
            for i, ti in enumerate(BASIS):
                val = action_invariant(InvariantKey(a, d, (phi, ti)))
                if not val:
                    continue
                scale = coeff * val
                for row in range(4):
                    if duals[i][row]:
                        mat[row][j] = mat[row][j] + TruncSeries2.monomial(
                            order, q_a, q_b, scale * duals[i][row]
                        )

    for d in range(1, order + 1):
        add_quantum(0, d, 0, d)
    for d in range(0, order):
        add_quantum(1, d, 1, d)
    return mat


def closed_action_matrix(k: int, order: int) -> SeriesMatrix:
    """The closed-form action matrix, built from f(q4)."""
    n = order
    f = f_series(n)
    one = TruncSeries2.one(n)
    u = one + f
    z = TruncSeries2.zero(n)
    q2 = TruncSeries2.monomial(n, 1, 0)
    q2q4 = TruncSeries2.monomial(n, 1, 1)
    half = Fraction(1, 2)
    if k == 2:
        cols = [
            (z, one, -half * f, z),
            (q2q4 * u, z, z, -half * f),
            (-2 * (q2q4 * u), z, z, u),
            (z, z, q2q4 * u, z),
        ]
    elif k == 4:
        cols = [
            (z, z, u, z),
            (-half * (q2 * f), z, z, u),
            (q2 * u, z, z, -2 * u),
            (z, q2, -half * (q2 * f), z),
        ]
    else:
        raise ValueError("generator must be 2 or 4")
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def verify_table(order: int) -> List[str]:
    """Compare the assembled action with the closed table; returns mismatches."""
    problems = []
    for k in _GENERATORS:
        assembled = star_matrix(k, order)
        closed = closed_action_matrix(k, order)
        for j in range(4):
            for i in range(4):
                if assembled[i][j] != closed[i][j]:
                    problems.append(
                        f"sigma_{k} * {BASIS[j]}: row {BASIS[i]} has "
                        f"{assembled[i][j]} != {closed[i][j]}"
                    )
    return problems


def verify_module_axiom(order: int) -> List[str]:
    """The actions of sigma_2 and sigma_4 must commute at every order."""
    m2 = star_matrix(2, order)
    m4 = star_matrix(4, order)
    comm = mat_sub(mat_mul(m2, m4), mat_mul(m4, m2))
    problems = []
    for i in range(4):
        for j in range(4):
            if not comm[i][j].is_zero():
                problems.append(f"commutator entry ({BASIS[i]}, {BASIS[j]}) = {comm[i][j]}")
    return problems


def apply_matrix(mat: SeriesMatrix, vec: List[TruncSeries2]) -> List[TruncSeries2]:
    out = []
    for i in range(4):
        acc = mat[i][0] * vec[0]
        for j in range(1, 4):
            acc = acc + mat[i][j] * vec[j]
        out.append(acc)
    return out


def verify_quantum_relations(order: int) -> List[str]:
    """Check (2 sigma_2 + sigma_4) * (sigma_4 * 1) = q2 and
    sigma_2 * (sigma_2 * 1) = q4 * sigma_4 * (sigma_4 * 1), including the
    intermediate closed forms (1+f)^2 (q2 - 2 pt) and q4 times it."""
    n = order
    m2 = star_matrix(2, n)
    m4 = star_matrix(4, n)
    z = TruncSeries2.zero(n)
    e_one = [TruncSeries2.one(n), z, z, z]
    q2 = TruncSeries2.monomial(n, 1, 0)
    q4 = TruncSeries2.monomial(n, 0, 1)
    u2 = (TruncSeries2.one(n) + f_series(n)) ** 2
    problems = []

    w = apply_matrix(m4, e_one)
    lhs = apply_matrix(m2, w)
    lhs = [2 * x + y for x, y in zip(lhs, apply_matrix(m4, w))]
    expected = [q2, z, z, z]
    if lhs != expected:
        problems.append("(2 sigma_2 + sigma_4) * (sigma_4 * 1) != q2")

    s22 = apply_matrix(m2, apply_matrix(m2, e_one))
    s44 = apply_matrix(m4, apply_matrix(m4, e_one))
    if s22 != [q4 * x for x in s44]:
        problems.append("sigma_2 * (sigma_2 * 1) != q4 sigma_4 * (sigma_4 * 1)")
    if s44 != [q2 * u2, z, z, -2 * u2]:
        problems.append("sigma_4 * (sigma_4 * 1) != (1+f)^2 (q2 - 2 pt)")
    if s22 != [q4 * q2 * u2, z, z, -2 * (q4 * u2)]:
        problems.append("sigma_2 * (sigma_2 * 1) != q4 (1+f)^2 (q2 - 2 pt)")
    return problems


def classical_limit_matrix(k: int, order: int) -> Tuple[Tuple[int, ...], ...]:
    """The action matrix at q2 = q4 = 0; must equal the cup product matrix."""
    mat = star_matrix(k, order)
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            const = mat[i][j].constant_term()
            if const.denominator != 1:
                raise AssertionError("classical limit is not integral")
            row.append(int(const))
        out.append(tuple(row))
    return tuple(out)
