from fractions import Fraction

import pytest

from qf2.fan import (
    Fan,
    batyrev_generators,
    class_matrix,
    divisor_intersection,
    f2_basis_cone,
    f2_cup_table,
    f2_fan,
    f2_pairing,
    f2_weight_table,
    fan_from_json_dict,
    presentation_strings,
    primitive_collections,
    primitive_relation,
    self_intersection,
    validate_fan,
)

P2 = Fan(rays=((1, 0), (0, 1), (-1, -1)), max_cones=((0, 1), (1, 2), (2, 0)))
P1P1 = Fan(rays=((1, 0), (0, 1), (-1, 0), (0, -1)), max_cones=((0, 1), (1, 2), (2, 3), (3, 0)))


def test_validate_f2_and_p2():
    assert validate_fan(f2_fan()) == []
    assert validate_fan(P2) == []


def test_validate_missing_cone():
    broken = Fan(rays=P2.rays, max_cones=P2.max_cones[:2])
    assert any("completeness" in v for v in validate_fan(broken))


def test_validate_bad_rays_and_cones():
    assert any("primitive" in v for v in validate_fan(Fan(((2, 0), (0, 1), (-1, -1)), P2.max_cones)))
    fat = Fan(rays=((1, 0), (0, 1), (-1, -2)), max_cones=((0, 1), (1, 2), (2, 0)))
    assert any("determinant" in v for v in validate_fan(fat))


def test_primitive_collections():
    assert primitive_collections(f2_fan()) == [(0, 1), (2, 3)]
    assert primitive_collections(P2) == [(0, 1, 2)]
    assert primitive_collections(P1P1) == [(0, 2), (1, 3)]


def test_primitive_collections_satisfy_definition():
    fan = f2_fan()
    cone_sets = [frozenset(c) for c in fan.max_cones]
    found = set(primitive_collections(fan))
    for mask in range(1, 1 << fan.n):
        subset = frozenset(i for i in range(fan.n) if mask >> i & 1)
        not_in_cone = not any(subset <= c for c in cone_sets)
        proper_ok = all(
            any(subset - {i} <= c for c in cone_sets) for i in subset
        )
        is_primitive = not_in_cone and proper_ok
        assert (tuple(sorted(subset)) in found) == is_primitive


def test_class_matrix_f2():
    cm = class_matrix(f2_fan(), f2_basis_cone())
    assert cm.entries == ((1, 1, 2, 0), (0, 0, 1, 1))
    assert cm.basis_rays == (1, 3)


def test_class_matrix_p2():
    cm = class_matrix(P2, 0)
    assert cm.entries == ((1, 1, 1),)


def test_class_matrix_kernel():
    fan = f2_fan()
    cm = class_matrix(fan, f2_basis_cone())
    # e2 pairs with the rays as (2, 0, -1, 1)
    char = [fan.rays[i][1] for i in range(4)]
    assert char == [2, 0, -1, 1]
    for row in cm.entries:
        assert sum(a * b for a, b in zip(row, char)) == 0


def test_self_intersections_f2():
    fan = f2_fan()
    assert [self_intersection(fan, i) for i in range(4)] == [0, 0, 2, -2]
    assert divisor_intersection(fan, 1, 3) == 1
    assert divisor_intersection(fan, 1, 0) == 0


def test_primitive_relation_f2():
    fan = f2_fan()
    r34 = primitive_relation(fan, (2, 3), f2_basis_cone())
    assert r34.relation == (0, 0, 1, 1)
    assert r34.beta == (1, 0)  # the fiber class
    assert r34.cone_coeffs == ()
    r12 = primitive_relation(fan, (0, 1), f2_basis_cone())
    assert r12.relation == (1, 1, 0, -2)
    assert r12.beta == (0, 1)  # the (-2)-curve class
    assert r12.cone_coeffs == ((3, 2),)


def test_primitive_relation_p2():
    r = primitive_relation(P2, (0, 1, 2), 0)
    assert r.relation == (1, 1, 1)
    assert r.beta == (1,)  # the line class


def test_primitive_relation_rejects_non_collections():
    with pytest.raises(ValueError):
        primitive_relation(f2_fan(), (0, 2))


def test_beta_effective():
    for fan, cone in ((f2_fan(), f2_basis_cone()), (P2, 0), (P1P1, 0)):
        for pc in primitive_collections(fan):
            rel = primitive_relation(fan, pc, cone)
            assert all(c >= 0 for c in rel.beta)


def test_batyrev_generators_f2():
    gens = batyrev_generators(f2_fan(), f2_basis_cone())
    assert gens["linear"] == [(-1, 1, 0, 0), (2, 0, -1, 1)]
    quantum = {g["collection"]: g for g in gens["quantum_sr"]}
    assert quantum[(2, 3)]["cone_monomial"] == ()  # x3 x4 - q2
    assert quantum[(0, 1)]["cone_monomial"] == ((3, 2),)  # x1 x2 - q4 x4^2


def test_batyrev_generators_products():
    p2 = batyrev_generators(P2, 0)["quantum_sr"]
    assert len(p2) == 1 and p2[0]["cone_monomial"] == ()
    p11 = batyrev_generators(P1P1, 0)["quantum_sr"]
    assert sorted(g["collection"] for g in p11) == [(0, 2), (1, 3)]
    assert all(g["cone_monomial"] == () for g in p11)


def test_presentation_f2():
    assert presentation_strings(f2_fan(), f2_basis_cone()) == [
        "x2^2 - q4*x4^2",
        "2*x2*x4 + x4^2 - q2",
    ]


def test_weight_table_matches_linearization():
    # alpha-coefficient vectors of the O(D_i) weights at each fixed point
    wt = {
        p: tuple(tuple(int(x) for x in w) for w in ws)
        for p, ws in f2_weight_table().items()
    }
    zero = (0, 0, 0, 0)
    w = (1, -1, 0, 0)  # alpha1 - alpha2
    v = (-2, 0, 1, -1)  # alpha3 - alpha4 - 2 alpha1
    assert wt["p1"] == (zero, w, zero, v)
    v2 = (0, -2, 1, -1)  # alpha3 - alpha4 - 2 alpha2
    minus_w = tuple(-x for x in w)
    assert wt["p2"] == (minus_w, zero, zero, v2)
    assert wt["p3"] == (minus_w, zero, tuple(-x for x in v2), zero)
    assert wt["p4"] == (zero, w, tuple(-x for x in v), zero)
    # the localization weight conventions: W2 = -W and V2 = V + 2W
    assert wt["p2"][0] == minus_w
    assert tuple(a + 2 * b for a, b in zip(v, w)) == v2


def test_cup_table_and_pairing():
    cup = f2_cup_table()
    assert cup[1][1] == (0, 0, 0, 0)  # D2.D2
    assert cup[1][2] == (0, 0, 0, 1)  # D2.D4 = pt
    assert cup[2][2] == (0, 0, 0, -2)  # D4.D4 = -2 pt
    assert cup[0][3] == (0, 0, 0, 1)  # 1.pt
    assert cup[3][3] == (0, 0, 0, 0)
    g = f2_pairing()
    assert g == ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, -2, 0), (1, 0, 0, 0))


def test_fan_json_parsing():
    data = {"rays": [[-1, 2], [1, 0], [0, -1], [0, 1]], "max_cones": [[1, 3], [3, 0], [0, 2], [2, 1]]}
    assert fan_from_json_dict(data) == f2_fan()
    with pytest.raises((ValueError, TypeError)):
        fan_from_json_dict({"rays": [[1, 0, 0]], "max_cones": []})
