"""Integer partitions, set-partition and cycle-type counts, multiset coefficients.

The counting identities collected here feed the base-vertex contributions of
the localization engine.  Brute-force enumerators (set partitions of [b],
permutations grouped by cycle type) double as test oracles and are practical
up to b = 8.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Tuple

from .algebra import binom

PartitionT = Tuple[int, ...]

__all__ = [
    "partitions",
    "multiplicities",
    "z_lambda",
    "count_set_partitions",
    "count_cycle_type",
    "multiset",
    "multiset_via_partitions",
    "bell",
    "set_partitions",
    "set_partitions_by_type",
    "cycle_type",
    "brute_count_set_partitions",
    "brute_count_cycle_type",
]


@lru_cache(maxsize=None)
def partitions(b: int) -> Tuple[PartitionT, ...]:
    """All partitions of b as weakly decreasing tuples, in reverse-lex order.

    partitions(3) == ((3,), (2, 1), (1, 1, 1)).
    """
    if b < 1:
        raise ValueError("b must be >= 1")

    def gen(rest: int, cap: int) -> Iterator[PartitionT]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(b, b))


def multiplicities(lam: PartitionT) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def _check_partition(b: int, lam: PartitionT) -> None:
    if sum(lam) != b or any(p < 1 for p in lam) or list(lam) != sorted(lam, reverse=True):
        raise ValueError(f"{lam} is not a partition of {b}")


def z_lambda(lam: PartitionT) -> int:
    """z_lambda = prod_N N^{k_N} k_N! over the multiplicity sequence k_N."""
    out = 1
    for part, k in multiplicities(lam).items():
        out *= part**k * math.factorial(k)
    return out


def count_set_partitions(b: int, lam: PartitionT) -> int:
    """Number of set partitions of [b] with block sizes lam:
    b! / prod_N (N!)^{k_N} k_N!.
    """
    _check_partition(b, lam)
    den = 1
    for part, k in multiplicities(lam).items():
        den *= math.factorial(part) ** k * math.factorial(k)
    return math.factorial(b) // den


def count_cycle_type(b: int, lam: PartitionT) -> int:
    """Number of permutations of [b] with cycle type lam: b!/z_lambda.

    Also cross-checks the refinement (prod (lam_q - 1)!) * #setpartitions ==
    #permutations, which ties the two counts together.
    """
    _check_partition(b, lam)
    count = math.factorial(b) // z_lambda(lam)
    w = 1
    for part in lam:
        w *= math.factorial(part - 1)
    if w * count_set_partitions(b, lam) != count:
        raise AssertionError(f"cycle-type/set-partition count mismatch for {lam}")
    return count


def multiset(b: int, e: int) -> int:
    """Multiset coefficient ((b, e)) = C(b + e - 1, e): degree-e monomials in b variables."""
    return binom(b + e - 1, e)


def multiset_via_partitions(b: int, e: int) -> int:
    """Evaluate sum_l e^{l-1}/(b-1)! * sum_{lam: l(lam)=l} #cycle-type(lam).

    Equals multiset(b, e); the equality is asserted by tests, not here.
    """
    if b < 1 or e < 1:
        raise ValueError("b and e must be >= 1")
    total = Fraction(0)
    for lam in partitions(b):
        total += Fraction(e ** (len(lam) - 1) * count_cycle_type(b, lam), math.factorial(b - 1))
    if total.denominator != 1:
        raise AssertionError("partition sum did not produce an integer")
    return int(total)


@lru_cache(maxsize=None)
def bell(b: int) -> int:
    """Bell number via the Bell triangle (independent of the counts above)."""
    if b == 0:
        return 1
    row = [1]
    for _ in range(b - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


# ----------------------------------------------------------------------
# Brute-force enumerators (test oracles; keep b small)
# ----------------------------------------------------------------------


def set_partitions(b: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """All set partitions of {1, .., b}; blocks sorted, blocks ordered by minimum."""
    if b < 1:
        raise ValueError("b must be >= 1")

    def gen(elems: List[int]) -> Iterator[List[List[int]]]:
        if not elems:
            yield []
            return
        first, rest = elems[0], elems[1:]
        for sub in gen(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
            yield [[first]] + sub

    for blocks in gen(list(range(1, b + 1))):
        yield tuple(sorted((tuple(sorted(blk)) for blk in blocks), key=lambda t: t[0]))


@lru_cache(maxsize=None)
def set_partitions_by_type(b: int) -> Dict[PartitionT, Tuple[Tuple[Tuple[int, ...], ...], ...]]:
    out: Dict[PartitionT, List] = {}
    for sp in set_partitions(b):
        typ = tuple(sorted((len(blk) for blk in sp), reverse=True))
        out.setdefault(typ, []).append(sp)
    return {k: tuple(v) for k, v in out.items()}


def cycle_type(perm: Tuple[int, ...]) -> PartitionT:
    """Cycle type of a permutation given in one-line notation on {1, .., n}."""
    n = len(perm)
    seen = [False] * (n + 1)
    lengths = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def brute_count_set_partitions(b: int, lam: PartitionT) -> int:
    return len(set_partitions_by_type(b).get(tuple(lam), ()))


def brute_count_cycle_type(b: int, lam: PartitionT) -> int:
    lam = tuple(lam)
    return sum(1 for p in permutations(range(1, b + 1)) if cycle_type(p) == lam)
