"""Elliptic curves y^2 = x^3 + a2*x^2 + a4*x + a6 over Q or Q(param).

Scalars are either :class:`fractions.Fraction` or
:class:`~eulertriples.poly.RationalFunction`; one curve uses one kind.
Points are affine pairs or the point at infinity ``INFINITY``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .exact import format_rational, integer_sqrt
from .poly import Polynomial, RationalFunction, evaluate, poly_gcd, scalar_sqrt

__all__ = [
    "EllipticCurve",
    "Point",
    "INFINITY",
    "SingularCurveError",
    "on_curve",
    "add",
    "negate",
    "scalar_multiple",
    "two_torsion_points",
    "is_torsion_mazur",
    "two_isogeny",
    "specialize_curve",
    "specialize_point",
]

MAZUR_BOUND = 12


class SingularCurveError(ValueError):
    """The cubic has a repeated root."""


def as_scalar(s):
    """Promote ints to Fraction so that '/' stays exact."""
    if isinstance(s, int):
        return Fraction(s)
    return s


@dataclass(frozen=True)
class Point:
    x: Any = None
    y: Any = None

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __iter__(self):
        return iter((self.x, self.y))

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"[{_fmt(self.x)}, {_fmt(self.y)}]"


INFINITY = Point()


def _fmt(s) -> str:
    if isinstance(s, (int, Fraction)):
        return format_rational(s)
    return str(s)


def _is_zero(s) -> bool:
    return s == 0


@dataclass(frozen=True)
class EllipticCurve:
    a2: Any
    a4: Any
    a6: Any

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if _is_zero(self.discriminant()):
            raise SingularCurveError(f"singular curve {self}")

    def discriminant(self):
        """Discriminant of the cubic x^3 + a2 x^2 + a4 x + a6."""
        a2, a4, a6 = self.a2, self.a4, self.a6
        return (a2 * a2 * a4 * a4 - 4 * a4 * a4 * a4 - 4 * a2 * a2 * a2 * a6
                + 18 * a2 * a4 * a6 - 27 * a6 * a6)

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def c4(self):
        return 16 * self.a2 * self.a2 - 48 * self.a4

    def c6(self):
        return -64 * self.a2 ** 3 + 288 * self.a2 * self.a4 - 864 * self.a6

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def point(self, x, y) -> Point:
        P = Point(x, y)
        if not self.contains(P):
            raise ValueError(f"{P} is not on {self}")
        return P

    def lift_x(self, x) -> Optional[Point]:
        """A point with abscissa ``x`` (sqrt with positive leading sign), or None."""
        y = scalar_sqrt(self.rhs(x))
        if y is None:
            return None
        return Point(x, y)

    def negate(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, -P.y)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y != Q.y or _is_zero(P.y):
                return INFINITY
            slope = (3 * P.x * P.x + 2 * self.a2 * P.x + self.a4) / (2 * P.y)
        else:
            slope = (Q.y - P.y) / (Q.x - P.x)
        x3 = slope * slope - self.a2 - P.x - Q.x
        y3 = -(P.y + slope * (x3 - P.x))
        return Point(x3, y3)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.negate(Q))

    def multiply(self, P: Point, m: int) -> Point:
        if m < 0:
            return self.multiply(self.negate(P), -m)
        result = INFINITY
        addend = P
        while m:
            if m & 1:
                result = self.add(result, addend)
            m >>= 1
            if m:
                addend = self.add(addend, addend)
        return result

    def coefficients(self) -> list:
        """[a1, a2, a3, a4, a6] with a1 = a3 = 0."""
        return [0, self.a2, 0, self.a4, self.a6]

    def to_json(self) -> list[str]:
        return [_fmt(c) for c in self.coefficients()]

    def __str__(self) -> str:
        return "[" + ",".join(self.to_json()) + "]"


def on_curve(C: EllipticCurve, P: Point) -> bool:
    return C.contains(P)


def add(C: EllipticCurve, P: Point, Q: Point) -> Point:
    return C.add(P, Q)


def negate(C: EllipticCurve, P: Point) -> Point:
    return C.negate(P)


def scalar_multiple(C: EllipticCurve, m: int, P: Point) -> Point:
    return C.multiply(P, m)


def is_torsion_mazur(C: EllipticCurve, P: Point) -> bool:
    """True iff mP = O for some 1 <= m <= 12.

    Over Q, rational torsion points have order at most 12, so a False answer
    proves that P has infinite order.
    """
    Q = P
    for _ in range(MAZUR_BOUND):
        if Q.is_infinity:
            return True
        Q = C.add(Q, P)
    return False


def torsion_order(C: EllipticCurve, P: Point) -> Optional[int]:
    """Order of P if it is at most 12, else None."""
    Q = P
    for m in range(1, MAZUR_BOUND + 1):
        if Q.is_infinity:
            return m
        Q = C.add(Q, P)
    return None


def two_isogeny(C: EllipticCurve):
    """2-isogeny with kernel {O, (0,0)} for a curve y^2 = x(x^2 + a x + b).

    Returns ``(C', phi)`` with C': y^2 = x(x^2 - 2a x + a^2 - 4b) and
    phi(x, y) = (y^2/x^2, y(b - x^2)/x^2).
    """
    if not _is_zero(C.a6):
        raise ValueError("two_isogeny needs a6 = 0 (a 2-torsion point at (0,0))")
    a, b = C.a2, C.a4
    target = EllipticCurve(-2 * a, a * a - 4 * b, C.a6 * 0)

    def phi(P: Point) -> Point:
        if P.is_infinity or _is_zero(P.x):
            return INFINITY
        x2 = P.x * P.x
        return Point(P.y * P.y / x2, P.y * (b - x2) / x2)

    return target, phi


def specialize_scalar(s, x0):
    if isinstance(s, RationalFunction):
        return evaluate(s, x0)
    if isinstance(s, Polynomial):
        return s(Fraction(x0))
    return s


def specialize_curve(C: EllipticCurve, x0) -> EllipticCurve:
    """Evaluate every coefficient at the parameter value ``x0``."""
    a2 = specialize_scalar(C.a2, x0)
    a4 = specialize_scalar(C.a4, x0)
    a6 = specialize_scalar(C.a6, x0)
    return EllipticCurve(a2, a4, a6)


def specialize_point(P: Point, x0) -> Point:
    if P.is_infinity:
        return P
    return Point(specialize_scalar(P.x, x0), specialize_scalar(P.y, x0))


# -- 2-torsion -----------------------------------------------------------------

def _integer_cubic_roots(A: int, B: int, C: int) -> list[int]:
    """Integer roots of x^3 + A x^2 + B x + C, found by monotone bisection."""
    f = lambda x: ((x + A) * x + B) * x + C
    M = 1 + max(abs(A), abs(B), abs(C))
    disc = 4 * A * A - 12 * B  # discriminant of the derivative
    breaks = [-M, M]
    if disc > 0:
        s = integer_sqrt(disc)[0]
        for num in (-2 * A - s, -2 * A + s):
            c = num // 6
            breaks.extend([c - 1, c, c + 1, c + 2])
    breaks = sorted({b for b in breaks if -M <= b <= M})
    roots = set()
    for b in breaks:
        if f(b) == 0:
            roots.add(b)
    for lo, hi in zip(breaks, breaks[1:]):
        flo, fhi = f(lo), f(hi)
        if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            fm = f(mid)
            if fm == 0:
                roots.add(mid)
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
    return sorted(roots)


def rational_cubic_roots(a2: Fraction, a4: Fraction, a6: Fraction) -> list[Fraction]:
    """Rational roots of the monic cubic x^3 + a2 x^2 + a4 x + a6."""
    a2, a4, a6 = Fraction(a2), Fraction(a4), Fraction(a6)
    D = math.lcm(a2.denominator, a4.denominator, a6.denominator)
    # x = y/D makes the cubic monic with integer coefficients
    A = a2 * D
    B = a4 * D * D
    C = a6 * D ** 3
    roots = _integer_cubic_roots(int(A), int(B), int(C))
    return [Fraction(r, D) for r in roots]


def _poly_cubic_roots(a2: Polynomial, a4: Polynomial, a6: Polynomial) -> list[Polynomial]:
    """Roots in Q[t] of y^3 + a2 y^2 + a4 y + a6 with polynomial coefficients.

    Each simple rational root at a specialization t0 is Newton-lifted to a
    power series in (t - t0), truncated at the degree bound, and checked.
    """
    var = a2.var if not a2.is_constant() else (a4.var if not a4.is_constant() else a6.var)
    bound = 0
    for k, a in ((1, a2), (2, a4), (3, a6)):
        if not a.is_zero():
            bound = max(bound, int(a.degree) // k)
    y = Polynomial.gen(var)
    F = lambda r: ((r + a2) * r + a4) * r + a6
    Fp = lambda r: (3 * r + 2 * a2) * r + a4
    for t0 in range(0, 50):
        c2, c4, c6 = a2(Fraction(t0)), a4(Fraction(t0)), a6(Fraction(t0))
        disc = c2 * c2 * c4 * c4 - 4 * c4 ** 3 - 4 * c2 ** 3 * c6 + 18 * c2 * c4 * c6 - 27 * c6 * c6
        if disc != 0:
            break
    else:  # pragma: no cover - discriminant identically zero
        raise SingularCurveError("cubic is singular")
    shift = Polynomial([t0, 1], var)     # t = t0 + tau
    back = Polynomial([-t0, 1], var)     # tau = t - t0
    sa2, sa4, sa6 = a2(shift), a4(shift), a6(shift)
    if isinstance(sa2, (int, Fraction)):
        sa2 = Polynomial.constant(sa2, var)
    if isinstance(sa4, (int, Fraction)):
        sa4 = Polynomial.constant(sa4, var)
    if isinstance(sa6, (int, Fraction)):
        sa6 = Polynomial.constant(sa6, var)
    Fs = lambda r: ((r + sa2) * r + sa4) * r + sa6
    Fsp = lambda r: (3 * r + 2 * sa2) * r + sa4
    prec = bound + 1

    def trunc(p: Polynomial, n: int) -> Polynomial:
        return Polynomial(p.coeffs[:n], var)

    found = []
    for rho in rational_cubic_roots(c2, c4, c6):
        r = Polynomial.constant(rho, var)
        inv = Polynomial.constant(1 / Fsp(r).coeffs[0] if Fsp(r) else 0, var)
        n = 1
        while n < prec:
            n = min(2 * n, prec)
            # refresh inverse of F'(r) mod tau^n by one Newton step
            d = trunc(Fsp(r), n)
            inv = trunc(inv * (2 - trunc(d * inv, n)), n)
            r = trunc(r - trunc(Fs(r), n) * inv, n)
        cand = r(back)
        if isinstance(cand, (int, Fraction)):
            cand = Polynomial.constant(cand, var)
        if F(cand).is_zero():
            found.append(cand)
    return found


def _rf_cubic_roots(a2: RationalFunction, a4: RationalFunction, a6: RationalFunction) -> list:
    var = a2.var
    D = Polynomial.constant(1, var)
    for a in (a2, a4, a6):
        g = D * a.den
        D = g.exact_div(poly_gcd(D, a.den))
    Drf = RationalFunction(D)
    p2 = a2 * Drf
    p4 = a4 * Drf * Drf
    p6 = a6 * Drf * Drf * Drf
    roots = _poly_cubic_roots(p2.num, p4.num, p6.num)
    return [RationalFunction(r, D) for r in roots]


def two_torsion_points(C: EllipticCurve) -> list[Point]:
    """All points (x, 0) with x in the scalar field."""
    if isinstance(C.a2, RationalFunction) or isinstance(C.a4, RationalFunction) \
            or isinstance(C.a6, RationalFunction):
        var = next(s.var for s in (C.a2, C.a4, C.a6) if isinstance(s, RationalFunction))
        coerce = lambda s: s if isinstance(s, RationalFunction) else RationalFunction.constant(s, var)
        roots = _rf_cubic_roots(coerce(C.a2), coerce(C.a4), coerce(C.a6))
        zero = RationalFunction.constant(0, var)
        return [Point(r, zero) for r in roots]
    roots = rational_cubic_roots(C.a2, C.a4, C.a6)
    return [Point(r, Fraction(0)) for r in roots]


def torsion_difference(C: EllipticCurve, P: Point, G: Point) -> Optional[tuple[int, Point, int]]:
    """Find sign e and torsion T with P = e*G + T.

    Tries e = +1 first.  T is looked up among the 2-torsion points before
    falling back to the order-at-most-12 test.  Returns (e, T, order of T).
    """
    two_torsion = two_torsion_points(C)
    for sign in (1, -1):
        T = C.sub(P, C.multiply(G, sign))
        if T.is_infinity:
            return sign, T, 1
        if T in two_torsion:
            return sign, T, 2
        if is_torsion_mazur(C, T):
            return sign, T, torsion_order(C, T)
    return None
