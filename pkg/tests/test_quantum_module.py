from fractions import Fraction

import pytest

from qf2.algebra import TruncSeries2, binom, f_series, mat_mul, mat_sub
from qf2.quantum_module import (
    BASIS,
    apply_matrix,
    classical_limit_matrix,
    closed_action_matrix,
    cup_action_matrix,
    pairing_and_dual,
    star_matrix,
    verify_module_axiom,
    verify_quantum_relations,
    verify_table,
)

F = Fraction


def test_pairing_and_duals():
    g, duals = pairing_and_dual()
    assert duals[1] == (0, 2, 1, 0)  # dual of D2 is 2 D2 + D4
    assert duals[2] == (0, 1, 0, 0)  # dual of D4 is D2
    assert duals[0] == (0, 0, 0, 1) and duals[3] == (1, 0, 0, 0)
    # g composed with the dual matrix is the identity
    for i in range(4):
        for j in range(4):
            assert sum(g[i][k] * duals[j][k] for k in range(4)) == (i == j)


def test_cup_matrices():
    c2 = cup_action_matrix(2)
    # D2 cup: 1 -> D2, D4 -> pt, D2 -> 0, pt -> 0
    assert [row[0] for row in c2] == [0, 1, 0, 0]
    assert [row[2] for row in c2] == [0, 0, 0, 1]
    assert [row[1] for row in c2] == [0, 0, 0, 0]
    c4 = cup_action_matrix(4)
    assert [row[0] for row in c4] == [0, 0, 1, 0]
    assert [row[2] for row in c4] == [0, 0, 0, -2]


def test_star_columns_match_theorem():
    n = 6
    m2 = star_matrix(2, n)
    f = f_series(n)
    one = TruncSeries2.one(n)
    u = one + f
    z = TruncSeries2.zero(n)
    q2q4 = TruncSeries2.monomial(n, 1, 1)
    # sigma_2 * 1 = D2 - f/2 D4
    assert [m2[i][0] for i in range(4)] == [z, one, -F(1, 2) * f, z]
    # sigma_2 * pt = q2 q4 (1+f) D4
    assert [m2[i][3] for i in range(4)] == [z, z, q2q4 * u, z]
    m4 = star_matrix(4, n)
    # sigma_4 * D4 = q2 (1+f) - 2 (1+f) pt
    q2 = TruncSeries2.monomial(n, 1, 0)
    assert [m4[i][2] for i in range(4)] == [q2 * u, z, z, -2 * u]
    # sigma_4 * pt = q2 D2 - q2 f/2 D4
    assert [m4[i][3] for i in range(4)] == [z, q2, -F(1, 2) * (q2 * f), z]


@pytest.mark.parametrize("order", [1, 3, 10, 12])
def test_table_and_axiom(order):
    assert verify_table(order) == []
    assert verify_module_axiom(order) == []


def test_specific_table_coefficients():
    n = 10
    m2 = star_matrix(2, n)
    # sigma_2 * D4 has coefficient -2 on q2 q4 in the unit component
    assert m2[0][2].coeff(1, 1) == -2
    # sigma_2 * D2 has coefficient -1 on q4 in the pt component (from -f/2)
    assert m2[3][1].coeff(0, 1) == -1


def test_products_entrywise_agree():
    n = 8
    m2, m4 = star_matrix(2, n), star_matrix(4, n)
    left = mat_mul(m2, m4)
    right = mat_mul(m4, m2)
    assert left[3][0] == right[3][0]  # (pt row, unit column)
    assert not any(
        not entry.is_zero() for row in mat_sub(left, right) for entry in row
    )


@pytest.mark.parametrize("order", [1, 5, 10])
def test_quantum_relations(order):
    assert verify_quantum_relations(order) == []


def test_relation_vectors_explicitly():
    n = 10
    m2, m4 = star_matrix(2, n), star_matrix(4, n)
    z = TruncSeries2.zero(n)
    e_one = [TruncSeries2.one(n), z, z, z]
    q2 = TruncSeries2.monomial(n, 1, 0)
    q4 = TruncSeries2.monomial(n, 0, 1)
    u2 = (TruncSeries2.one(n) + f_series(n)) ** 2
    w = apply_matrix(m4, e_one)
    combo = [2 * x + y for x, y in zip(apply_matrix(m2, w), apply_matrix(m4, w))]
    assert combo == [q2, z, z, z]
    s22 = apply_matrix(m2, apply_matrix(m2, e_one))
    assert s22 == [q2 * q4 * u2, z, z, -2 * (q4 * u2)]


def test_classical_limit_is_cup_product():
    for k in (2, 4):
        assert classical_limit_matrix(k, 7) == cup_action_matrix(k)


@pytest.mark.parametrize("d", range(1, 13))
def test_q2_column_coefficient_identity(d):
    # d/(2d-1) C(2d,d) = 2 C(2d-2, d-1), the identity behind the q2 column
    assert F(d, 2 * d - 1) * binom(2 * d, d) == 2 * binom(2 * d - 2, d - 1)


def test_basis_order():
    assert BASIS == ("1", "D2", "D4", "pt")
