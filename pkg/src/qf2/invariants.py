"""The complete 2-pointed invariant table with closed forms and relations.

Effective degrees are beta = a*(fiber class) + d*((-2)-curve class) with
a in {0, 1}; the moduli space has dimension 1 + 2a, so an invariant vanishes
unless the two insertion codimensions add up to exactly that.  The nonzero
families are, writing C = C(2d, d),

    a = 0, d >= 1:  <D1,1> = <D2,1> = -C/(2d),   <D3,1> = 0,  <D4,1> = C/d
    a = 1, d >= 0:  <D1,pt> = <D2,pt> = C/(2(2d-1)),
                    <D3,pt> = 0,  <D4,pt> = -C/(2d-1)

symmetric in the two insertions.  ``closed_invariant`` returns exactly this
table (the a = 1, d = 0 entries being the closed formulas continued to d = 0,
which is also what the localization engine's lone-edge graph produces).

``action_invariant`` is the variant consumed by the quantum module assembly.
It agrees with ``closed_invariant`` everywhere except in degree (1, 0): the
moduli space of fiber-class quasimaps is unobstructed and its two-pointed
invariants are the classical counts D_i . (fiber) = (0, 0, 1, 1).  With the
continued values (-1/2 for D1, D2) the sigma_2 and sigma_4 actions would fail
to commute; with the classical counts they reproduce the closed module table.
The test suite pins both behaviours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import binom
from .localization import (
    FAMILY_D2DD4,
    FAMILY_DD4,
    closed_invariant_formula,
    invariant_by_localization,
)

INSERTIONS = ("1", "D1", "D2", "D3", "D4", "pt")

CODIM = {"1": 0, "D1": 1, "D2": 1, "D3": 1, "D4": 1, "pt": 2}

__all__ = [
    "InvariantKey",
    "closed_invariant",
    "action_invariant",
    "verify_relations",
    "invariant_table",
    "INSERTIONS",
    "CODIM",
]


@dataclass(frozen=True)
class InvariantKey:
    """Degree beta = (a, d) in the (fiber, (-2)-curve) class basis plus an
    ordered pair of insertions."""

    a: int
    d: int
    insertions: Tuple[str, str]

    def __post_init__(self):
        for ins in self.insertions:
            if ins not in INSERTIONS:
                raise ValueError(f"unknown insertion {ins!r}")

    def dimension_valid(self) -> bool:
        if self.a < 0 or self.d < 0 or (self.a, self.d) == (0, 0):
            return False
        return CODIM[self.insertions[0]] + CODIM[self.insertions[1]] == 1 + 2 * self.a


def _divisor_value_dd4(name: str, d: int) -> Fraction:
    c = binom(2 * d, d)
    return {
        "D1": -Fraction(c, 2 * d),
        "D2": -Fraction(c, 2 * d),
        "D3": Fraction(0),
        "D4": Fraction(c, d),
    }[name]


def _divisor_value_d2dd4(name: str, d: int) -> Fraction:
    c = binom(2 * d, d)
    return {
        "D1": Fraction(c, 2 * (2 * d - 1)),
        "D2": Fraction(c, 2 * (2 * d - 1)),
        "D3": Fraction(0),
        "D4": -Fraction(c, 2 * d - 1),
    }[name]


_CLASSICAL_FIBER = {"D1": Fraction(0), "D2": Fraction(0), "D3": Fraction(1), "D4": Fraction(1)}


def closed_invariant(key: InvariantKey) -> Fraction:
    """Closed-form invariant; 0 for any dimension-invalid key (and for a >= 2,
    where the moduli dimension exceeds the largest possible insertion codim)."""
    if not key.dimension_valid():
        return Fraction(0)
    i1, i2 = key.insertions
    if key.a == 0:
        divisor = i1 if CODIM[i1] == 1 else i2
        return _divisor_value_dd4(divisor, key.d)
    if key.a == 1:
        divisor = i1 if CODIM[i1] == 1 else i2
        if CODIM[divisor] != 1 or "pt" not in key.insertions:
            return Fraction(0)
        return _divisor_value_d2dd4(divisor, key.d)
    return Fraction(0)


def action_invariant(key: InvariantKey) -> Fraction:
    """Invariant as it enters the quantum action; see the module docstring."""
    if key.a == 1 and key.d == 0 and key.dimension_valid():
        divisor = key.insertions[0] if CODIM[key.insertions[0]] == 1 else key.insertions[1]
        if CODIM[divisor] == 1 and "pt" in key.insertions:
            return _CLASSICAL_FIBER[divisor]
        return Fraction(0)
    return closed_invariant(key)


def verify_relations(d_max: int, method: str = "closed") -> List[str]:
    """Check <D4,.> = -2 <D2,.>, <D1,.> = <D2,.>, <D3,.> = 0 in both families
    and that the localization engine reproduces the closed forms; returns the
    list of discrepancies (empty = all good)."""
    problems: List[str] = []
    for d in range(1, d_max + 1):
        v2 = closed_invariant(InvariantKey(0, d, ("D2", "1")))
        v4 = closed_invariant(InvariantKey(0, d, ("D4", "1")))
        v1 = closed_invariant(InvariantKey(0, d, ("D1", "1")))
        v3 = closed_invariant(InvariantKey(0, d, ("D3", "1")))
        if v4 != -2 * v2 or v1 != v2 or v3 != 2 * v2 + v4:
            problems.append(f"divisor relations fail in family dD4 at d={d}")
        if invariant_by_localization(FAMILY_DD4, d, method) != v2:
            problems.append(f"localization != closed in family dD4 at d={d}")
    for d in range(0, d_max + 1):
        v2 = closed_invariant(InvariantKey(1, d, ("D2", "pt")))
        v4 = closed_invariant(InvariantKey(1, d, ("D4", "pt")))
        v1 = closed_invariant(InvariantKey(1, d, ("D1", "pt")))
        if v4 != -2 * v2 or v1 != v2:
            problems.append(f"divisor relations fail in family D2+dD4 at d={d}")
        if invariant_by_localization(FAMILY_D2DD4, d, method) != v1:
            problems.append(f"localization != closed in family D2+dD4 at d={d}")
        if closed_invariant_formula(FAMILY_D2DD4, d) != v1:
            problems.append(f"closed formula mismatch in family D2+dD4 at d={d}")
    return problems


def invariant_table(d_max: int) -> List[Dict]:
    """Full table of (potentially) nonzero invariants up to degree d_max,
    with rationals rendered as strings."""
    rows: List[Dict] = []
    for d in range(1, d_max + 1):
        for name in ("D1", "D2", "D3", "D4"):
            rows.append(
                {
                    "family": FAMILY_DD4,
                    "d": d,
                    "insertions": [name, "1"],
                    "value": str(closed_invariant(InvariantKey(0, d, (name, "1")))),
                }
            )
    for d in range(0, d_max + 1):
        for name in ("D1", "D2", "D3", "D4"):
            rows.append(
                {
                    "family": FAMILY_D2DD4,
                    "d": d,
                    "insertions": [name, "pt"],
                    "value": str(closed_invariant(InvariantKey(1, d, (name, "pt")))),
                }
            )
    return rows
