"""Smooth complete 2D fans: validation, primitive collections, divisor classes.

A fan is given by primitive integer ray generators and maximal cones (pairs of
ray indices).  From it we compute

* the divisor class matrix with respect to a Picard basis (the divisors of
  the rays *not* in a chosen maximal cone),
* primitive collections and their relations / curve classes,
* the linear and quantum Stanley-Reisner ideal generators of the Batyrev
  ring, with an eliminated two-variable presentation for surfaces,
* torus weights of the line bundles O(D_i) at every fixed point.

The distinguished instance is the Hirzebruch surface of type 2 with rays
rho1 = (-1, 2), rho2 = (1, 0), rho3 = (0, -1), rho4 = (0, 1); its class
matrix in the (D2, D4) basis is [[1, 1, 2, 0], [0, 0, 1, 1]].
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Vec2 = Tuple[int, int]

__all__ = [
    "Fan",
    "ClassMatrix",
    "PrimitiveCollection",
    "validate_fan",
    "primitive_collections",
    "class_matrix",
    "primitive_relation",
    "batyrev_generators",
    "eliminated_presentation",
    "presentation_strings",
    "fixed_point_weights",
    "self_intersection",
    "divisor_intersection",
    "fan_from_json_dict",
    "f2_fan",
    "f2_basis_cone",
    "F2_POINT_CONES",
    "f2_weight_table",
    "f2_cup_table",
    "f2_pairing",
    "F2_BASIS_NAMES",
]


@dataclass(frozen=True)
class Fan:
    rays: Tuple[Vec2, ...]
    max_cones: Tuple[Tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.rays)

    @property
    def rank(self) -> int:
        return len(self.rays) - 2


@dataclass(frozen=True)
class ClassMatrix:
    """r x n integer matrix of divisor classes; column rho is [D_rho] in the basis
    given by the divisors of ``basis_rays``."""

    entries: Tuple[Tuple[int, ...], ...]
    basis_rays: Tuple[int, ...]


@dataclass(frozen=True)
class PrimitiveCollection:
    """A primitive collection with its ray relation and curve class.

    ``relation[rho]`` is the pairing of the class beta_P with D_rho; ``beta``
    gives beta_P in the basis of the curve classes of the basis-ray divisors
    (for the Hirzebruch fan with its default basis: the (D2, D4) classes).
    """

    rays: Tuple[int, ...]
    relation: Tuple[int, ...] = ()
    beta: Tuple[int, ...] = ()
    cone_coeffs: Tuple[Tuple[int, int], ...] = ()


def _gcd2(v: Vec2) -> int:
    return math.gcd(abs(v[0]), abs(v[1]))


def _det(u: Vec2, v: Vec2) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angular_cmp(u: Vec2, v: Vec2) -> int:
    """Exact counterclockwise comparison starting from the positive x-axis."""

    def half(w: Vec2) -> int:
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    d = _det(u, v)
    return 0 if d == 0 else (-1 if d > 0 else 1)


def _angular_order(fan: Fan) -> List[int]:
    return sorted(range(fan.n), key=functools.cmp_to_key(lambda i, j: _angular_cmp(fan.rays[i], fan.rays[j])))


def validate_fan(fan: Fan) -> List[str]:
    """Check primitivity, smoothness and completeness; return violations (empty = ok)."""
    out: List[str] = []
    if fan.n < 3:
        out.append("a complete 2D fan needs at least 3 rays")
    for i, v in enumerate(fan.rays):
        if len(v) != 2:
            return [f"ray {i} is not 2-dimensional (only 2D fans are supported)"]
        if v == (0, 0):
            out.append(f"ray {i} is zero")
        elif _gcd2(v) != 1:
            out.append(f"ray {i} = {v} is not primitive")
    if len(set(fan.rays)) != fan.n:
        out.append("duplicate rays")
    seen = set()
    for c, (i, j) in enumerate(fan.max_cones):
        if not (0 <= i < fan.n and 0 <= j < fan.n) or i == j:
            out.append(f"cone {c} = {(i, j)} has invalid ray indices")
            continue
        key = frozenset((i, j))
        if key in seen:
            out.append(f"cone {c} repeated")
        seen.add(key)
        d = _det(fan.rays[i], fan.rays[j])
        if abs(d) != 1:
            out.append(f"cone {c} = {(i, j)} has determinant {d}, not +-1 (not smooth)")
    if out:
        return out
    order = _angular_order(fan)
    consecutive = {frozenset((order[k], order[(k + 1) % fan.n])) for k in range(fan.n)}
    if seen != consecutive:
        out.append("cones do not tile the plane (completeness fails)")
    return out


def require_valid(fan: Fan) -> None:
    violations = validate_fan(fan)
    if violations:
        raise ValueError("invalid fan: " + "; ".join(violations))


def primitive_collections(fan: Fan) -> List[Tuple[int, ...]]:
    """Brute force over ray subsets: minimal subsets not contained in any cone."""
    require_valid(fan)
    cone_sets = [frozenset(c) for c in fan.max_cones]

    def in_some_cone(subset: frozenset) -> bool:
        return any(subset <= c for c in cone_sets)

    found: List[Tuple[int, ...]] = []
    for mask in range(1, 1 << fan.n):
        subset = frozenset(i for i in range(fan.n) if mask >> i & 1)
        if in_some_cone(subset):
            continue
        if all(in_some_cone(subset - {i}) for i in subset):
            found.append(tuple(sorted(subset)))
    return sorted(found)


def _solve2(m: Sequence[Sequence[Fraction]], rhs: Sequence) -> Tuple:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise ValueError("singular 2x2 system")
    x = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det
    y = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det
    return x, y


def class_matrix(fan: Fan, basis_cone: int) -> ClassMatrix:
    """Divisor class matrix with Pic basis = divisors of rays NOT in ``basis_cone``.

    Solves the linear equivalences sum_rho <m, v_rho> D_rho ~ 0 (m = e1, e2)
    for the two cone-ray divisors and checks that the rows annihilate every
    character vector.
    """
    require_valid(fan)
    j1, j2 = fan.max_cones[basis_cone]
    basis = tuple(i for i in range(fan.n) if i not in (j1, j2))
    pos = {ray: k for k, ray in enumerate(basis)}
    r = len(basis)
    # rhs vectors over the basis, one per character m = e1, e2
    rhs = []
    for k in range(2):
        vec = [Fraction(0)] * r
        for ray in basis:
            vec[pos[ray]] -= fan.rays[ray][k]
        rhs.append(vec)
    m2 = [
        [Fraction(fan.rays[j1][0]), Fraction(fan.rays[j2][0])],
        [Fraction(fan.rays[j1][1]), Fraction(fan.rays[j2][1])],
    ]
    sol1: List[Fraction] = []
    sol2: List[Fraction] = []
    for k in range(r):
        x, y = _solve2(m2, (rhs[0][k], rhs[1][k]))
        sol1.append(x)
        sol2.append(y)
    cols: Dict[int, List[Fraction]] = {}
    for ray in basis:
        cols[ray] = [Fraction(1) if basis[i] == ray else Fraction(0) for i in range(r)]
    cols[j1] = sol1
    cols[j2] = sol2
    entries = []
    for i in range(r):
        row = []
        for ray in range(fan.n):
            val = cols[ray][i]
            if val.denominator != 1:
                raise AssertionError("non-integral divisor class on a smooth fan")
            row.append(int(val))
        entries.append(tuple(row))
    cm = ClassMatrix(entries=tuple(entries), basis_rays=basis)
    for k in range(2):  # kernel check: rows kill the character vectors
        char = [fan.rays[ray][k] for ray in range(fan.n)]
        for row in cm.entries:
            if sum(a * b for a, b in zip(row, char)) != 0:
                raise AssertionError("class matrix rows do not annihilate characters")
    return cm


def _neighbors(fan: Fan, ray: int) -> Tuple[int, int]:
    order = _angular_order(fan)
    k = order.index(ray)
    return order[(k - 1) % fan.n], order[(k + 1) % fan.n]


def self_intersection(fan: Fan, ray: int) -> int:
    """D_rho^2 = -c where v_prev + v_next = c * v_rho for the angular neighbors."""
    p, q = _neighbors(fan, ray)
    s = (fan.rays[p][0] + fan.rays[q][0], fan.rays[p][1] + fan.rays[q][1])
    v = fan.rays[ray]
    if v[0] != 0:
        c = Fraction(s[0], v[0])
    else:
        c = Fraction(s[1], v[1])
    if (c * v[0] != s[0]) or (c * v[1] != s[1]) or c.denominator != 1:
        raise AssertionError("neighbor sum is not a multiple of the ray (fan not smooth?)")
    return -int(c)


def divisor_intersection(fan: Fan, i: int, j: int) -> int:
    """Intersection number D_i . D_j on the surface."""
    if i == j:
        return self_intersection(fan, i)
    if any(frozenset((i, j)) == frozenset(c) for c in fan.max_cones):
        return 1
    return 0


def _solve_square(m: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    n = len(m)
    a = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def primitive_relation(fan: Fan, collection: Sequence[int], basis_cone: int = 0) -> PrimitiveCollection:
    """Fill in the relation vector and curve class of a primitive collection.

    The sum of the collection's rays lands in a unique minimal cone with
    non-negative coefficients c_j; the relation vector is 1 on the collection
    minus c_j on the cone rays, and the curve class is solved from the
    intersection pairing against the basis divisors.
    """
    pc = set(collection)
    if tuple(sorted(pc)) not in primitive_collections(fan):
        raise ValueError(f"{tuple(collection)} is not a primitive collection")
    u = (
        sum(fan.rays[i][0] for i in pc),
        sum(fan.rays[i][1] for i in pc),
    )
    cone_coeffs: Dict[int, int] = {}
    if u != (0, 0):
        for a, b in fan.max_cones:
            m2 = [
                [Fraction(fan.rays[a][0]), Fraction(fan.rays[b][0])],
                [Fraction(fan.rays[a][1]), Fraction(fan.rays[b][1])],
            ]
            x, y = _solve2(m2, (Fraction(u[0]), Fraction(u[1])))
            if x >= 0 and y >= 0:
                if x.denominator != 1 or y.denominator != 1:
                    raise AssertionError("non-integral cone coefficients on a smooth fan")
                if x:
                    cone_coeffs[a] = int(x)
                if y:
                    cone_coeffs[b] = int(y)
                break
        else:  # pragma: no cover - impossible for a complete fan
            raise AssertionError("ray sum not contained in any cone")
    relation = tuple(
        (1 if i in pc else 0) - cone_coeffs.get(i, 0) for i in range(fan.n)
    )
    # sanity: the relation pairs to zero against both characters
    for k in range(2):
        if sum(relation[i] * fan.rays[i][k] for i in range(fan.n)) != 0:
            raise AssertionError("relation vector is not a curve class")
    cm = class_matrix(fan, basis_cone)
    basis = cm.basis_rays
    gram = [
        [Fraction(divisor_intersection(fan, bi, bj)) for bj in basis] for bi in basis
    ]
    coords = _solve_square(gram, [Fraction(relation[b]) for b in basis])
    if any(c.denominator != 1 for c in coords):
        raise AssertionError("curve class is not integral in the basis-divisor classes")
    return PrimitiveCollection(
        rays=tuple(sorted(pc)),
        relation=relation,
        beta=tuple(int(c) for c in coords),
        cone_coeffs=tuple(sorted(cone_coeffs.items())),
    )


def batyrev_generators(fan: Fan, basis_cone: int = 0) -> Dict[str, list]:
    """Generators of the two ideals presenting the Batyrev ring.

    ``linear``: the vectors (<m, v_rho>)_rho for m = e1, e2, read as linear
    forms sum <m, v_rho> x_rho.  ``quantum_sr``: one entry per primitive
    collection P, encoding  prod_{i in P} x_i  -  q^{beta_P} prod x_j^{c_j}.
    """
    require_valid(fan)
    linear = [tuple(fan.rays[i][k] for i in range(fan.n)) for k in range(2)]
    quantum = []
    for pc in primitive_collections(fan):
        rel = primitive_relation(fan, pc, basis_cone)
        quantum.append(
            {
                "collection": rel.rays,
                "beta": rel.beta,
                "cone_monomial": rel.cone_coeffs,
            }
        )
    return {"linear": linear, "quantum_sr": quantum}


# ----------------------------------------------------------------------
# Eliminated presentation (surfaces): substitute the linear relations
# ----------------------------------------------------------------------

# polynomial in the basis variables: {(exponents over basis vars, beta): Fraction}
PolyT = Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]


def _poly_mul(p: PolyT, q: PolyT) -> PolyT:
    out: PolyT = {}
    for (e1, b1), c1 in p.items():
        for (e2, b2), c2 in q.items():
            key = (tuple(x + y for x, y in zip(e1, e2)), tuple(x + y for x, y in zip(b1, b2)))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _poly_sub(p: PolyT, q: PolyT) -> PolyT:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) - v
    return {k: v for k, v in out.items() if v}


def eliminated_presentation(fan: Fan, basis_cone: int = 0) -> List[PolyT]:
    """Quantum Stanley-Reisner generators after eliminating the non-basis variables.

    The linear ideal expresses each cone-ray variable as an integer
    combination of the basis variables (the same coefficients as the divisor
    classes); substituting leaves one polynomial per primitive collection in
    the r basis variables, with coefficients in Z[q].
    """
    cm = class_matrix(fan, basis_cone)
    basis = cm.basis_rays
    r = len(basis)
    nbeta = r

    def var_poly(ray: int) -> PolyT:
        # x_ray as a polynomial in the basis variables
        col = [cm.entries[i][ray] for i in range(r)]
        out: PolyT = {}
        for i, c in enumerate(col):
            if c:
                exps = tuple(1 if k == i else 0 for k in range(r))
                out[(exps, (0,) * nbeta)] = out.get((exps, (0,) * nbeta), Fraction(0)) + c
        return out

    gens: List[PolyT] = []
    for item in batyrev_generators(fan, basis_cone)["quantum_sr"]:
        head: PolyT = {((0,) * r, (0,) * nbeta): Fraction(1)}
        for ray in item["collection"]:
            head = _poly_mul(head, var_poly(ray))
        tail: PolyT = {((0,) * r, tuple(item["beta"])): Fraction(1)}
        for ray, c in item["cone_monomial"]:
            vp = var_poly(ray)
            for _ in range(c):
                tail = _poly_mul(tail, vp)
        gens.append(_poly_sub(head, tail))
    return gens


def presentation_strings(fan: Fan, basis_cone: int = 0) -> List[str]:
    """Human-readable eliminated generators, variables named x<ray index + 1>."""
    cm = class_matrix(fan, basis_cone)
    basis = cm.basis_rays
    out = []
    for poly in eliminated_presentation(fan, basis_cone):
        terms = []
        for (exps, betas), coeff in sorted(poly.items(), reverse=True):
            names = [f"q{basis[i] + 1}" + (f"^{b}" if b > 1 else "") for i, b in enumerate(betas) if b]
            names += [
                f"x{basis[i] + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            ]
            mono = "*".join(names)
            if not mono:
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(mono)
            elif coeff == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{coeff}*{mono}")
        s = terms[0]
        for t in terms[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        out.append(s)
    return out


# ----------------------------------------------------------------------
# Torus weights at fixed points
# ----------------------------------------------------------------------


def fixed_point_weights(fan: Fan, basis_cone: int = 0) -> Dict[Tuple[int, int], Tuple[Tuple[Fraction, ...], ...]]:
    """Weights of O(D_i) at every torus fixed point, as character vectors.

    The fixed point of a maximal cone sigma is where the coordinates of
    sigma's rays vanish; gauge-fixing the remaining coordinates to 1 yields,
    for each i, the character of the i-th coordinate line.  The weight is the
    negative of that character (a vector of coefficients of alpha_1..alpha_n).
    """
    require_valid(fan)
    cm = class_matrix(fan, basis_cone)
    r = fan.rank
    out: Dict[Tuple[int, int], Tuple[Tuple[Fraction, ...], ...]] = {}
    for cone in fan.max_cones:
        complement = [i for i in range(fan.n) if i not in cone]
        bmat = [[Fraction(cm.entries[k][j]) for k in range(r)] for j in complement]
        svecs: List[List[Fraction]] = []
        for comp in range(fan.n):  # solve column by column of the character matrix
            rhs = [Fraction(-1) if j == comp else Fraction(0) for j in complement]
            svecs.append(_solve_square([row[:] for row in bmat], rhs))
        # svecs[comp][k] = component comp of the k-th gauge character
        weights = []
        for i in range(fan.n):
            chi = [Fraction(1) if comp == i else Fraction(0) for comp in range(fan.n)]
            for k in range(r):
                coef = cm.entries[k][i]
                if coef:
                    for comp in range(fan.n):
                        chi[comp] += coef * svecs[comp][k]
            weights.append(tuple(-x for x in chi))
        out[cone] = tuple(weights)
    return out


# ----------------------------------------------------------------------
# The Hirzebruch surface of type 2
# ----------------------------------------------------------------------

F2_RAYS: Tuple[Vec2, ...] = ((-1, 2), (1, 0), (0, -1), (0, 1))
F2_CONES: Tuple[Tuple[int, int], ...] = ((1, 3), (3, 0), (0, 2), (2, 1))

# fixed points p1..p4 correspond to these maximal cones (vanishing coordinates)
F2_POINT_CONES: Dict[str, Tuple[int, int]] = {
    "p1": (1, 3),
    "p2": (3, 0),
    "p3": (0, 2),
    "p4": (2, 1),
}

F2_BASIS_NAMES = ("1", "D2", "D4", "pt")


def f2_fan() -> Fan:
    return Fan(rays=F2_RAYS, max_cones=F2_CONES)


def f2_basis_cone() -> int:
    """Index of the cone whose complement gives the (D2, D4) Picard basis."""
    return F2_CONES.index((0, 2))


def f2_weight_table() -> Dict[str, Tuple[Tuple[Fraction, ...], ...]]:
    table = fixed_point_weights(f2_fan(), f2_basis_cone())
    return {name: table[cone] for name, cone in F2_POINT_CONES.items()}


def f2_cup_table() -> Tuple[Tuple[Tuple[int, int, int, int], ...], ...]:
    """Cup products on H*(F2) in the basis (1, D2, D4, pt).

    Relations: D2.D2 = 0, D2.D4 = pt, D4.D4 = -2 pt; products of total
    codimension above two vanish.
    """
    z = (0, 0, 0, 0)
    table = [[z] * 4 for _ in range(4)]
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    prods = {
        (1, 1): z,
        (1, 2): (0, 0, 0, 1),
        (2, 1): (0, 0, 0, 1),
        (2, 2): (0, 0, 0, -2),
    }
    for i in range(4):
        table[0][i] = basis[i]
        table[i][0] = basis[i]
    for i in (1, 2):
        for j in (1, 2):
            table[i][j] = prods[(i, j)]
    # pt cup anything of positive degree is zero; already initialized
    return tuple(tuple(row) for row in table)


def f2_pairing() -> Tuple[Tuple[int, ...], ...]:
    """Poincare pairing matrix in the basis (1, D2, D4, pt)."""
    return ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, -2, 0), (1, 0, 0, 0))


def fan_from_json_dict(data: Mapping) -> Fan:
    rays = tuple(tuple(int(x) for x in v) for v in data["rays"])
    cones = tuple(tuple(int(x) for x in c) for c in data["max_cones"])
    if any(len(v) != 2 for v in rays) or any(len(c) != 2 for c in cones):
        raise ValueError("rays must be 2-vectors and max_cones index pairs")
    return Fan(rays=rays, max_cones=cones)  # type: ignore[arg-type]
