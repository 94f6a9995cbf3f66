from fractions import Fraction

import pytest

from qf2.invariants import InvariantKey, action_invariant, closed_invariant, invariant_table, verify_relations

F = Fraction


def test_closed_examples():
    assert closed_invariant(InvariantKey(0, 3, ("D2", "1"))) == F(-10, 3)
    assert closed_invariant(InvariantKey(1, 1, ("D4", "pt"))) == -2
    assert closed_invariant(InvariantKey(1, 0, ("D1", "pt"))) == F(-1, 2)
    assert closed_invariant(InvariantKey(0, 2, ("D4", "1"))) == 3
    assert closed_invariant(InvariantKey(0, 5, ("D3", "1"))) == 0


def test_dimension_filter():
    assert closed_invariant(InvariantKey(0, 2, ("D2", "D4"))) == 0
    assert closed_invariant(InvariantKey(0, 2, ("pt", "1"))) == 0
    assert closed_invariant(InvariantKey(1, 2, ("D2", "D4"))) == 0
    assert closed_invariant(InvariantKey(1, 2, ("1", "pt"))) == 0
    assert closed_invariant(InvariantKey(2, 1, ("pt", "pt"))) == 0  # a >= 2 vanishes
    assert closed_invariant(InvariantKey(0, 0, ("D2", "1"))) == 0


def test_insertion_symmetry():
    for a, d in ((0, 4), (1, 3)):
        other = "1" if a == 0 else "pt"
        for name in ("D1", "D2", "D3", "D4"):
            k1 = InvariantKey(a, d, (name, other))
            k2 = InvariantKey(a, d, (other, name))
            assert closed_invariant(k1) == closed_invariant(k2)
            assert action_invariant(k1) == action_invariant(k2)


def test_unknown_insertion_rejected():
    with pytest.raises(ValueError):
        InvariantKey(0, 1, ("D5", "1"))


def test_action_invariant_fiber_degree():
    # degree (1, 0) is the classical fiber count D_i . fiber = (0, 0, 1, 1)
    values = {
        name: action_invariant(InvariantKey(1, 0, (name, "pt")))
        for name in ("D1", "D2", "D3", "D4")
    }
    assert values == {"D1": 0, "D2": 0, "D3": 1, "D4": 1}
    # everywhere else the two tables agree
    for d in range(1, 9):
        for name in ("D1", "D2", "D3", "D4"):
            k0 = InvariantKey(0, d, (name, "1"))
            k1 = InvariantKey(1, d, (name, "pt"))
            assert action_invariant(k0) == closed_invariant(k0)
            assert action_invariant(k1) == closed_invariant(k1)


def test_relations_and_localization_cross_check():
    assert verify_relations(8) == []


def test_relation_examples():
    # <D4,1> = -2 <D2,1> at d = 2: 3 = -2 (-3/2)
    assert closed_invariant(InvariantKey(0, 2, ("D4", "1"))) == -2 * closed_invariant(
        InvariantKey(0, 2, ("D2", "1"))
    )
    # d = 1, mixed family: -2 = -2 (1)
    assert closed_invariant(InvariantKey(1, 1, ("D4", "pt"))) == -2 * closed_invariant(
        InvariantKey(1, 1, ("D2", "pt"))
    )


def test_invariant_table_export():
    rows = invariant_table(2)
    assert {r["family"] for r in rows} == {"dD4", "D2+dD4"}
    by_key = {(r["family"], r["d"], tuple(r["insertions"])): r["value"] for r in rows}
    assert by_key[("dD4", 1, ("D2", "1"))] == "-1"
    assert by_key[("D2+dD4", 0, ("D1", "pt"))] == "-1/2"
    assert by_key[("D2+dD4", 2, ("D4", "pt"))] == "-2"
