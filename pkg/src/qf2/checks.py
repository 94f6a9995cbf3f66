"""The acceptance checks: every headline identity the engine must reproduce,
each as an exact (tolerance-zero) pass/fail function.

``run_all`` prints one line per criterion and reports overall success; the
command line exposes it as ``qf2 selftest`` and the test suite runs the same
functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Tuple

from .algebra import TruncSeries2, binom, binom_rational, f_series
from .batyrev import verify_isomorphism
from .fan import (
    batyrev_generators,
    class_matrix,
    f2_basis_cone,
    f2_fan,
    presentation_strings,
    primitive_collections,
    validate_fan,
)
from .invariants import InvariantKey, closed_invariant
from .localization import (
    FAMILY_D2DD4,
    FAMILY_DD4,
    closed_invariant_formula,
    enumerate_necessary_loci,
    invariant_by_localization,
    locus_contribution,
)
from .losev_manin import cont_B_interior, expansion_check
from .partitions import multiset, multiset_via_partitions
from .quantum_module import verify_module_axiom, verify_quantum_relations, verify_table

CheckResult = Tuple[bool, str]

__all__ = ["CHECKS", "run_all"]


def check_dd4_invariants() -> CheckResult:
    """<D2,1> in degree d = 1..8 equals -C(2d,d)/(2d) by localization."""
    for d in range(1, 9):
        got = invariant_by_localization(FAMILY_DD4, d)
        want = -Fraction(binom(2 * d, d), 2 * d)
        if got != want:
            return False, f"d={d}: {got} != {want}"
    return True, "d = 1..8 exact"


def check_d2dd4_invariants() -> CheckResult:
    """<D1,pt> in degree (1, d) for d = 0..8 equals C(2d,d)/(2(2d-1))."""
    for d in range(0, 9):
        got = invariant_by_localization(FAMILY_D2DD4, d)
        want = Fraction(binom(2 * d, d), 2 * (2 * d - 1))
        if got != want:
            return False, f"d={d}: {got} != {want}"
    return True, "d = 0..8 exact"


def check_per_locus() -> CheckResult:
    """Closed per-locus values match the factor-assembled V -> 0 evaluation,
    with weight-homogeneity degree zero, for every necessary locus, d <= 6."""
    count = 0
    for family, dmin in ((FAMILY_DD4, 1), (FAMILY_D2DD4, 0)):
        for d in range(dmin, 7):
            for g in enumerate_necessary_loci(family, d):
                closed = locus_contribution(g, "closed")
                assembled = locus_contribution(g, "assembled")
                if closed.value != assembled.value or assembled.w_exponent != 0:
                    return False, f"{family} {g.name} (d={d})"
                count += 1
    return True, f"{count} loci checked"


def check_cont_b() -> CheckResult:
    """Brute-force base-vertex factor equals e e' 2^(2b-1)/b * multiset(b, e+e')
    (in units of W^-3) for b <= 6, e, e' <= 4."""
    for b in range(1, 7):
        for e in range(1, 5):
            for e2 in range(1, 5):
                value, w_exp = cont_B_interior(b, e, e2)  # raises on brute/closed mismatch
                want = Fraction(e * e2 * 2 ** (2 * b - 1), b) * multiset(b, e + e2)
                if value != want or w_exp != -3:
                    return False, f"b={b}, e={e}, e'={e2}"
    return True, "b <= 6, e, e' <= 4 exact"


def check_combinatorial_identities() -> CheckResult:
    """Expansion identity for b = 2..6; multiset identity for b, e <= 10;
    convolution and signed-binomial identities for n <= 20."""
    for b in range(2, 7):
        if not expansion_check(b):
            return False, f"expansion identity fails at b={b}"
    for b in range(1, 11):
        for e in range(1, 11):
            if multiset_via_partitions(b, e) != binom(b + e - 1, e):
                return False, f"multiset identity fails at b={b}, e={e}"
    for n in range(0, 21):
        if sum(binom(2 * k, k) * binom(2 * (n - k), n - k) for k in range(n + 1)) != 4**n:
            return False, f"convolution identity fails at n={n}"
        if binom(2 * n, n) != (-4) ** n * binom_rational(Fraction(-1, 2), n):
            return False, f"signed binomial identity fails at n={n}"
    return True, "all identities exact"


def check_module_table() -> CheckResult:
    """Assembled action matrices equal the closed 8-entry table at order 10."""
    problems = verify_table(10)
    return (not problems, problems[0] if problems else "8 entries at order 10")


def check_module_axiom_and_relations() -> CheckResult:
    """Action matrices commute and the two quantum relations hold at order 10."""
    problems = verify_module_axiom(10) + verify_quantum_relations(10)
    return (not problems, problems[0] if problems else "commutator and relations at order 10")


def check_batyrev_isomorphism() -> CheckResult:
    """Intertwining for both generators and det(phi) = (1+f)^3 at order 10."""
    problems = verify_isomorphism(10)
    return (not problems, problems[0] if problems else "intertwining and determinant at order 10")


def check_fan_pipeline() -> CheckResult:
    """The Hirzebruch fan reproduces the class matrix, primitive collections,
    curve classes and the eliminated two-variable presentation."""
    fan = f2_fan()
    if validate_fan(fan):
        return False, "fan validation failed"
    cm = class_matrix(fan, f2_basis_cone())
    if cm.entries != ((1, 1, 2, 0), (0, 0, 1, 1)):
        return False, f"class matrix {cm.entries}"
    if primitive_collections(fan) != [(0, 1), (2, 3)]:
        return False, "primitive collections wrong"
    gens = batyrev_generators(fan, f2_basis_cone())
    betas = {g["collection"]: g["beta"] for g in gens["quantum_sr"]}
    if betas != {(0, 1): (0, 1), (2, 3): (1, 0)}:
        return False, f"curve classes {betas}"
    pres = presentation_strings(fan, f2_basis_cone())
    if pres != ["x2^2 - q4*x4^2", "2*x2*x4 + x4^2 - q2"]:
        return False, f"presentation {pres}"
    return True, "class matrix, collections, curve classes, presentation"


def check_series_identities() -> CheckResult:
    """(1+f)^2 (1 - 4 q4) = 1 and 4 q4 (1+f)^2 = f (2+f) at order 12."""
    n = 12
    one = TruncSeries2.one(n)
    f = f_series(n)
    q4 = TruncSeries2.monomial(n, 0, 1)
    u = one + f
    if u * u * (one - 4 * q4) != one:
        return False, "(1+f)^2 (1-4q4) != 1"
    if 4 * q4 * u * u != f * (2 * one + f):
        return False, "4 q4 (1+f)^2 != f (2+f)"
    return True, "both identities at order 12"


CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("1. localization: <D2,1> degree d = 1..8", check_dd4_invariants),
    ("2. localization: <D1,pt> degree (1,d), d = 0..8", check_d2dd4_invariants),
    ("3. per-locus closed = assembled, d <= 6", check_per_locus),
    ("4. base-vertex factor brute = closed, b <= 6", check_cont_b),
    ("5. combinatorial identities", check_combinatorial_identities),
    ("6. module table assembled = closed, order 10", check_module_table),
    ("7. module axiom and quantum relations, order 10", check_module_axiom_and_relations),
    ("8. Batyrev isomorphism, order 10", check_batyrev_isomorphism),
    ("9. fan pipeline on the Hirzebruch input", check_fan_pipeline),
    ("10. series identities, order 12", check_series_identities),
]


def run_all(verbose: bool = True) -> bool:
    ok_all = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a raised invariant failure counts as a miss
            ok, detail = False, f"exception: {exc}"
        ok_all &= ok
        if verbose:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok_all
