"""Exact arithmetic kernels: binomials, truncated bivariate series, weight fractions.

Everything here is pure and exact (``fractions.Fraction`` coefficients, no
floats).  Three layers:

* binomial coefficients, including the rational-top generalization
  ``C(r, k) = r(r-1)...(r-k+1)/k!``,
* ``TruncSeries2``, power series in two deformation variables ``q2, q4``
  truncated at a fixed total order,
* ``VPoly``/``VFraction``, the weight algebra for localization: homogeneous
  rational functions in two equivariant weights ``(V, W)``, stored
  dehomogenized at ``W = 1`` as a ratio of univariate polynomials in ``V``
  with the total homogeneous degree tracked separately.

All values are immutable after construction, so everything is safe to share
across threads.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Rational = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "binom",
    "binom_rational",
    "TruncSeries2",
    "f_series",
    "one_plus_f",
    "VPoly",
    "VFraction",
    "PoleAtVZero",
    "VF_ONE",
    "VF_W",
    "VF_V",
    "mat_mul",
    "mat_add",
    "mat_sub",
    "mat_eq",
    "mat_det",
    "mat_identity",
    "mat_zero",
]


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); 0 whenever k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_rational(r: Scalar, k: int) -> Fraction:
    """Falling-factorial binomial C(r, k) = r(r-1)...(r-k+1)/k! for rational r."""
    if k < 0:
        raise ValueError("k must be >= 0")
    r = Fraction(r)
    num = Fraction(1)
    for i in range(k):
        num *= r - i
    return num / math.factorial(k)


# ----------------------------------------------------------------------
# Truncated bivariate power series
# ----------------------------------------------------------------------

Monomial = Tuple[int, int]  # (exponent of q2, exponent of q4)


class TruncSeries2:
    """Power series in (q2, q4) over Fraction, truncated at total order N.

    Stored sparsely as ``{(a, b): coefficient}`` with every key satisfying
    ``a + b <= N`` and ``a, b >= 0``; an absent key is a zero coefficient.
    Products truncate at N.  Operands of ring operations must share the same
    order (a mismatch raises ``ValueError``).
    """

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping[Monomial, Scalar] | None = None):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        c: Dict[Monomial, Fraction] = {}
        if coeffs:
            for (a, b), v in coeffs.items():
                if a < 0 or b < 0:
                    raise ValueError("negative exponent")
                if a + b > order:
                    continue
                v = Fraction(v)
                if v:
                    c[(a, b)] = v
        self._c = c

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncSeries2":
        return cls(order)

    @classmethod
    def const(cls, order: int, value: Scalar) -> "TruncSeries2":
        return cls(order, {(0, 0): Fraction(value)})

    @classmethod
    def one(cls, order: int) -> "TruncSeries2":
        return cls.const(order, 1)

    @classmethod
    def monomial(cls, order: int, a: int, b: int, coeff: Scalar = 1) -> "TruncSeries2":
        return cls(order, {(a, b): Fraction(coeff)})

    # -- inspection ----------------------------------------------------

    def coeff(self, a: int, b: int) -> Fraction:
        return self._c.get((a, b), Fraction(0))

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms sorted by (total degree, q4-exponent, q2-exponent)."""
        return sorted(self._c.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1], kv[0][0]))

    def is_zero(self) -> bool:
        return not self._c

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    # -- ring operations -------------------------------------------------

    def _check(self, other: "TruncSeries2") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")

    def __add__(self, other: "TruncSeries2") -> "TruncSeries2":
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, Fraction(0)) + v
        return TruncSeries2(self.order, c)

    def __sub__(self, other: "TruncSeries2") -> "TruncSeries2":
        return self + (-other)

    def __neg__(self) -> "TruncSeries2":
        return TruncSeries2(self.order, {k: -v for k, v in self._c.items()})

    def __mul__(self, other: Union["TruncSeries2", Scalar]) -> "TruncSeries2":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        self._check(other)
        n = self.order
        c: Dict[Monomial, Fraction] = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                a, b = a1 + a2, b1 + b2
                if a + b > n:
                    continue
                k = (a, b)
                c[k] = c.get(k, Fraction(0)) + v1 * v2
        return TruncSeries2(n, c)

    __rmul__ = __mul__

    def scale(self, s: Scalar) -> "TruncSeries2":
        s = Fraction(s)
        return TruncSeries2(self.order, {k: v * s for k, v in self._c.items()})

    def __pow__(self, k: int) -> "TruncSeries2":
        if k < 0:
            return self.invert() ** (-k)
        out = TruncSeries2.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert(self) -> "TruncSeries2":
        """Multiplicative inverse t with self * t == 1 at this order.

        Requires a nonzero constant term; solved degree by degree from the
        convolution equations.
        """
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("cannot invert a series with zero constant term")
        n = self.order
        inv: Dict[Monomial, Fraction] = {(0, 0): 1 / c0}
        by_degree: Dict[int, List[Tuple[Monomial, Fraction]]] = {}
        for k, v in self._c.items():
            if k != (0, 0):
                by_degree.setdefault(k[0] + k[1], []).append((k, v))
        for g in range(1, n + 1):
            for a in range(g + 1):
                b = g - a
                s = Fraction(0)
                for deg in range(1, g + 1):
                    for (a1, b1), v1 in by_degree.get(deg, ()):
                        a2, b2 = a - a1, b - b1
                        if a2 < 0 or b2 < 0:
                            continue
                        t = inv.get((a2, b2))
                        if t is not None:
                            s += v1 * t
                if s:
                    inv[(a, b)] = -s / c0
        return TruncSeries2(n, inv)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self._c.items())))

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        """JSON form with integer strings, safe for arbitrary precision."""
        return {
            "order": self.order,
            "terms": [
                {"q2": a, "q4": b, "num": str(v.numerator), "den": str(v.denominator)}
                for (a, b), v in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "TruncSeries2":
        coeffs = {
            (int(t["q2"]), int(t["q4"])): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return cls(int(data["order"]), coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: List[str] = []
        for (a, b), v in self.terms():
            names = []
            if a:
                names.append("q2" if a == 1 else f"q2^{a}")
            if b:
                names.append("q4" if b == 1 else f"q4^{b}")
            mono = "*".join(names)
            if not mono:
                term = str(v)
            elif v == 1:
                term = mono
            elif v == -1:
                term = f"-{mono}"
            else:
                term = f"{v}*{mono}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"TruncSeries2(order={self.order}, '{self}')"


def f_series(order: int) -> TruncSeries2:
    """The series f(q4) = sum_{d>=1} C(2d,d) q4^d, truncated at total order N.

    It satisfies (1+f)^2 (1-4 q4) = 1 and 4 q4 (1+f)^2 = f (2+f); both are
    checked in the test suite rather than used as the definition.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    return TruncSeries2(order, {(0, d): Fraction(binom(2 * d, d)) for d in range(1, order + 1)})


def one_plus_f(order: int) -> TruncSeries2:
    return TruncSeries2.one(order) + f_series(order)


# ----------------------------------------------------------------------
# Weight algebra: univariate polynomials and homogeneous fractions in (V, W)
# ----------------------------------------------------------------------


def _as_vpoly(x: Union["VPoly", Scalar]) -> "VPoly":
    if isinstance(x, VPoly):
        return x
    return VPoly((Fraction(x),))


class VPoly:
    """Univariate polynomial in V with Fraction coefficients (dense tuple)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def zero(cls) -> "VPoly":
        return cls(())

    @classmethod
    def one(cls) -> "VPoly":
        return cls((1,))

    @classmethod
    def v(cls) -> "VPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.c)

    def __add__(self, other):
        other = _as_vpoly(other)
        n = max(len(self.c), len(other.c))
        return VPoly(
            (self.c[i] if i < len(self.c) else 0) + (other.c[i] if i < len(other.c) else 0)
            for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "VPoly":
        return VPoly(-x for x in self.c)

    def __sub__(self, other):
        return self + (-_as_vpoly(other))

    def __rsub__(self, other):
        return _as_vpoly(other) + (-self)

    def __mul__(self, other):
        other = _as_vpoly(other)
        if not self.c or not other.c:
            return VPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return VPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "VPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = VPoly.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def shift(self, k: int) -> "VPoly":
        """Multiply by V^k."""
        if not self.c:
            return self
        return VPoly((Fraction(0),) * k + self.c)

    def v_order(self) -> int:
        """Multiplicity of the root V = 0 (0 for the zero polynomial)."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return 0

    def divmod(self, other: "VPoly") -> Tuple["VPoly", "VPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Fraction(0)] * max(0, len(rem) - len(other.c) + 1)
        dlead = other.c[-1]
        for i in range(len(rem) - len(other.c), -1, -1):
            coef = rem[i + len(other.c) - 1] / dlead
            if coef:
                q[i] = coef
                for j, b in enumerate(other.c):
                    rem[i + j] -= coef * b
        return VPoly(q), VPoly(rem)

    def monic(self) -> "VPoly":
        if not self.c:
            return self
        lead = self.c[-1]
        return VPoly(x / lead for x in self.c)

    def gcd(self, other: "VPoly") -> "VPoly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else VPoly.one()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _as_vpoly(other)
        if not isinstance(other, VPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                name = "V" if i == 1 else f"V^{i}"
                if a == 1:
                    parts.append(name)
                elif a == -1:
                    parts.append(f"-{name}")
                else:
                    parts.append(f"{a}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"VPoly('{self}')"


class PoleAtVZero(ZeroDivisionError):
    """Raised when a weight fraction is evaluated at V = 0 across a genuine pole."""


class VFraction:
    """Homogeneous rational function of the weights (V, W), dehomogenized at W = 1.

    ``degree`` is the total homogeneous degree in (V, W); ``num``/``den`` are
    the dehomogenized numerator and denominator.  Common powers of V are
    stripped eagerly and the fraction is reduced by the polynomial gcd, so
    ``eval_at_v0`` only reports a pole when the underlying function genuinely
    has one on the V = 0 line.
    """

    __slots__ = ("num", "den", "degree")

    def __init__(self, num, den=1, degree: int = 0):
        num = _as_vpoly(num)
        den = _as_vpoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = VPoly.one()
        else:
            k = min(num.v_order(), den.v_order())
            if k:
                num = VPoly(num.c[k:])
                den = VPoly(den.c[k:])
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.c[-1]
            if lead != 1:
                num = VPoly(x / lead for x in num.c)
                den = den.monic()
        self.num = num
        self.den = den
        self.degree = degree

    @classmethod
    def scalar(cls, x: Scalar, degree: int = 0) -> "VFraction":
        return cls(_as_vpoly(x), VPoly.one(), degree)

    def is_zero(self) -> bool:
        return not self.num

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = VFraction.scalar(other)
        if not isinstance(other, VFraction):
            return NotImplemented
        return VFraction(self.num * other.num, self.den * other.den, self.degree + other.degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = VFraction.scalar(other)
        return self * other.reciprocal()

    def reciprocal(self) -> "VFraction":
        if not self.num:
            raise ZeroDivisionError("reciprocal of zero")
        return VFraction(self.den, self.num, -self.degree)

    def __neg__(self) -> "VFraction":
        return VFraction(-self.num, self.den, self.degree)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = VFraction.scalar(other)
        if not isinstance(other, VFraction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add weight fractions of degrees {self.degree} and {other.degree}"
            )
        return VFraction(
            self.num * other.den + other.num * self.den, self.den * other.den, self.degree
        )

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k: int) -> "VFraction":
        if k < 0:
            return self.reciprocal() ** (-k)
        out = VFraction.scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval_at_v0(self) -> Tuple[Fraction, int]:
        """Value on V = 0, returned as (coefficient, power of W).

        After reduction the denominator must not vanish at V = 0; if it does,
        the function has a genuine pole there and ``PoleAtVZero`` is raised.
        """
        d0 = self.den(0)
        if not d0:
            raise PoleAtVZero(f"pole at V = 0 in {self}")
        return self.num(0) / d0, self.degree

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = VFraction.scalar(other)
        if not isinstance(other, VFraction):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den, self.degree))

    def __str__(self) -> str:
        s = f"({self.num})"
        if self.den.degree > 0 or self.den.c != (Fraction(1),):
            s += f"/({self.den})"
        return f"{s}*W^[{self.degree}]"

    def __repr__(self) -> str:
        return f"VFraction({self})"


VF_ONE = VFraction.scalar(1)
VF_W = VFraction.scalar(1, degree=1)  # the weight W itself (dehomogenized to 1)
VF_V = VFraction(VPoly.v(), VPoly.one(), 1)


# ----------------------------------------------------------------------
# Small dense matrices over TruncSeries2 (4x4 is all we ever need)
# ----------------------------------------------------------------------

SeriesMatrix = List[List[TruncSeries2]]


def mat_zero(n: int, order: int) -> SeriesMatrix:
    return [[TruncSeries2.zero(order) for _ in range(n)] for _ in range(n)]


def mat_identity(n: int, order: int) -> SeriesMatrix:
    out = mat_zero(n, order)
    for i in range(n):
        out[i][i] = TruncSeries2.one(order)
    return out


def mat_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a: SeriesMatrix, b: SeriesMatrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_det(a: SeriesMatrix) -> TruncSeries2:
    """Determinant by Leibniz expansion; fine for the 4x4 matrices used here."""
    import itertools

    n = len(a)
    order = a[0][0].order
    det = TruncSeries2.zero(order)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # parity by counting inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = TruncSeries2.const(order, sign)
        for i in range(n):
            term = term * a[i][perm[i]]
        det = det + term
    return det
