"""Parametric families of strong rational D(-1)-pairs and triples.

Family A
    {1, b(u), c} where b(u) = (4u^4+1)/(4u^2) and c comes from multiples of
    P = [-4(4u^4+1), 16u(4u^4+1)] on Y^2 = X(X+32u^4+8)(X+16u^4-16u^2+4),
    pulled back to the quartic (16u^4+4)v^4 - 16u^2v^2 + 4u^4+1 = z^2.
Family B
    The rank-2 subfamily u = (14+w^2)/(4w), written as a curve C over Q(w)
    with two independent points P, Q; combinations mP + nQ give triples.
Family C
    Pairs {a, b} with a = (t^2+1)/(2t), from multiples of R = [-t^2+1, t^4-1]
    on Y^2 = (X+2t^2)(X^2+t^6-2t^4+t^2), the Jacobian of
    alpha^4 + 2alpha^2 + 1 - a^2 = gamma^2; then ab - 1 = alpha^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .curves import EllipticCurve, Point, specialize_curve, specialize_point
from .exact import RationalLike, format_rational
from .poly import PoleError, RationalFunction
from .quartic import BirationalBridge, ExceptionalPointError, QuarticModel, build_bridge
from .verify import TupleError, VerificationReport, check_dq_tuple, check_strong_eulerian

__all__ = [
    "DegenerateError",
    "StrongPair",
    "StrongTriple",
    "b_of_u",
    "c_of_v",
    "family_A_curve",
    "family_A_quartic",
    "family_A_bridge",
    "family_A_triple",
    "family_A_symbolic",
    "family_B_curve_and_points",
    "family_B_scaling",
    "family_B_b",
    "family_B_triple",
    "a_of_t",
    "family_C_curve",
    "family_C_bridge",
    "family_C_extension",
    "family_C_pair",
    "family_C_closed_form",
    "to_eulerian",
]


class DegenerateError(ValueError):
    """A construction produced no new tuple (exceptional point, repeated element...)."""


# -- tuple types ---------------------------------------------------------------

@dataclass(frozen=True)
class _StrongSet:
    elements: tuple
    family: str = ""
    params: dict = field(default_factory=dict, compare=False)
    report: VerificationReport = field(default=None, compare=False, repr=False)

    size = 0

    @classmethod
    def build(cls, elements: Sequence[RationalLike], family: str = "",
              params: dict | None = None):
        elems = [Fraction(a) for a in elements]
        if len(elems) != cls.size:
            raise ValueError(f"{cls.__name__} needs {cls.size} elements")
        # {a_i} and {-a_i} are equivalent; keep the positive representative
        if elems and elems[0] < 0:
            elems = [-a for a in elems]
        if any(a <= 0 for a in elems):
            raise DegenerateError(f"elements of mixed sign: {elems}")
        elems.sort()
        try:
            report = check_dq_tuple(elems, -1, strong=True)
        except TupleError as exc:
            raise DegenerateError(f"{exc}: {[format_rational(a) for a in elems]}") from None
        if not report.verdict:
            bad = ", ".join(c.label for c in report.failures())
            raise DegenerateError(f"not a strong D(-1) tuple (fails at {bad})")
        return cls(tuple(elems), family, dict(params or {}), report)

    def __iter__(self):
        return iter(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(format_rational(a) for a in self.elements) + "}"

    def to_dict(self) -> dict:
        return {
            "elements": [format_rational(a) for a in self.elements],
            "family": self.family,
            "params": {k: (format_rational(v) if isinstance(v, Fraction) else v)
                       for k, v in self.params.items()},
            "witnesses": self.report.witnesses(),
        }


class StrongTriple(_StrongSet):
    """Three positive rationals with all six a_i*a_j - 1 (i <= j) squares."""

    size = 3


class StrongPair(_StrongSet):
    size = 2


def _params(**kw) -> dict:
    return {k: (Fraction(v) if isinstance(v, int) and k in ("u", "w", "t") else v)
            for k, v in kw.items()}


# -- the b/c parametrization -----------------------------------------------------

def b_of_u(u):
    """(4u^4+1)/(4u^2): b - 1 and b + 1 are both squares."""
    if u == 0:
        raise ValueError("parameter must be nonzero")
    if isinstance(u, int):
        u = Fraction(u)
    return (4 * u ** 4 + 1) / (4 * u * u)


c_of_v = b_of_u


# -- Family A ----------------------------------------------------------------------

def family_A_curve(u) -> tuple[EllipticCurve, Point]:
    u = Fraction(u) if isinstance(u, int) else u
    u4 = u ** 4
    E = EllipticCurve(48 * u4 - 16 * u * u + 12, (32 * u4 + 8) * (16 * u4 - 16 * u * u + 4), 0)
    P = E.point(-4 * (4 * u4 + 1), 16 * u * (4 * u4 + 1))
    return E, P


def family_A_quartic(u) -> QuarticModel:
    u = Fraction(u) if isinstance(u, int) else u
    u4 = u ** 4
    return QuarticModel((4 * u4 + 1, 0, -16 * u * u, 0, 16 * u4 + 4), u, 4 * u4 - 1)


def family_A_bridge(u) -> BirationalBridge:
    """Bridge quartic -> curve sending (u, 4u^4-1) to O and (u, 1-4u^4) to P."""
    u = Fraction(u) if isinstance(u, int) else u
    E, P = family_A_curve(u)
    Q = family_A_quartic(u)
    return build_bridge(Q, E, anchor=((u, -Q.z0), P))


def _triple_from_point(bridge: BirationalBridge, X: Point, b, family: str, params: dict):
    try:
        v, _ = bridge.backward(X)
    except ExceptionalPointError as exc:
        raise DegenerateError(f"{family} {params}: {exc}") from None
    if v == 0:
        raise DegenerateError(f"{family} {params}: pullback has v = 0")
    c = c_of_v(v)
    if c == b or c == 1:
        raise DegenerateError(f"{family} {params}: c = {format_rational(c)} repeats an element")
    return StrongTriple.build((1, b, c), family, params)


def family_A_triple(u: RationalLike, m: int) -> StrongTriple:
    """{1, b(u), c} from the multiple mP (m = 1 only gives c = b)."""
    u = Fraction(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    E, P = family_A_curve(u)
    bridge = family_A_bridge(u)
    return _triple_from_point(bridge, E.multiply(P, m), b_of_u(u), "A", {"u": u, "m": m})


@lru_cache(maxsize=None)
def family_A_symbolic(m: int) -> tuple:
    """(1, b(u), c(u)) as rational functions of u, from mP over Q(u)."""
    if not 2 <= m <= 4:
        raise ValueError("symbolic family A is limited to 2 <= m <= 4")
    u = RationalFunction.gen("u")
    E, P = family_A_curve(u)
    v, _ = family_A_bridge(u).backward(E.multiply(P, m))
    return RationalFunction.constant(1, "u"), b_of_u(u), c_of_v(v)


# -- Family B ----------------------------------------------------------------------

def _u_of_w(w):
    return (14 + w * w) / (4 * w)


def family_B_b(w):
    """b as a function of w, i.e. b(u) at u = (14+w^2)/(4w)."""
    if isinstance(w, int):
        w = Fraction(w)
    if w == 0:
        raise ValueError("w must be nonzero")
    return b_of_u(_u_of_w(w))


def family_B_scaling(w):
    """Maps between the u-curve at u = (14+w^2)/(4w) and C: X = 16w^4 x, Y = 64w^6 y."""
    def to_C(P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(16 * w ** 4 * P.x, 64 * w ** 6 * P.y)

    def from_C(P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x / (16 * w ** 4), P.y / (64 * w ** 6))

    return to_C, from_C


def _family_B_xP(w):
    return -(w ** 8 + 56 * w ** 6 + 1240 * w ** 4 + 10976 * w ** 2 + 38416)


def _family_B_xQ(w):
    return (w * w - 14) ** 2 * (w ** 4 + 20 * w * w + 196) ** 2 / (64 * w * w)


def _family_B_C(w) -> EllipticCurve:
    a2 = 3 * w ** 8 + 152 * w ** 6 + 3272 * w ** 4 + 29792 * w ** 2 + 115248
    a4 = 2 * (w ** 8 + 56 * w ** 6 + 1240 * w ** 4 + 10976 * w ** 2 + 38416) \
        * (w ** 4 + 20 * w ** 2 + 196) ** 2
    return EllipticCurve(a2, a4, 0)


@lru_cache(maxsize=None)
def family_B_curve_and_points() -> tuple[EllipticCurve, Point, Point]:
    """Curve C over Q(w) and its points P, Q lifted from their x-coordinates.

    Also checks that the scaling map carries the u-curve under
    u = (14+w^2)/(4w) onto C, coefficient for coefficient.
    """
    w = RationalFunction.gen("w")
    C = _family_B_C(w)
    P = C.lift_x(_family_B_xP(w))
    Q = C.lift_x(_family_B_xQ(w))
    if P is None or Q is None:
        raise ArithmeticError("reference x-coordinate does not lift to a point of C")
    E, PE = family_A_curve(_u_of_w(w))
    if (E.a2 * 16 * w ** 4 != C.a2 or E.a4 * 256 * w ** 8 != C.a4 or E.a6 != 0):
        raise ArithmeticError("scaling map does not carry the u-curve onto C")
    if family_B_scaling(w)[0](PE).x != P.x:
        raise ArithmeticError("image of the u-curve point P has the wrong abscissa")
    return C, P, Q


def family_B_points_at(w: RationalLike) -> tuple[EllipticCurve, Point, Point]:
    w = Fraction(w)
    C, P, Q = family_B_curve_and_points()
    try:
        return specialize_curve(C, w), specialize_point(P, w), specialize_point(Q, w)
    except PoleError as exc:
        raise ValueError(f"w = {format_rational(w)} is a pole: {exc}") from None


def family_B_triple(w: RationalLike, combo: tuple[int, int]) -> StrongTriple:
    """{1, b(w), c} from the point mP + nQ on C at the given w."""
    w = Fraction(w)
    m, n = combo
    if (m, n) == (0, 0):
        raise ValueError("combination (0, 0) is the identity")
    if w == 0:
        raise ValueError("w must be nonzero")
    Cw, Pw, Qw = family_B_points_at(w)
    X = Cw.add(Cw.multiply(Pw, m), Cw.multiply(Qw, n))
    u = _u_of_w(w)
    _, from_C = family_B_scaling(w)
    params = {"w": w, "m": m, "n": n}
    return _triple_from_point(family_A_bridge(u), from_C(X), b_of_u(u), "B", params)


# -- Family C ----------------------------------------------------------------------

def a_of_t(t):
    """(t^2+1)/(2t): every a with a^2 - 1 a square has this form."""
    if isinstance(t, int):
        t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return (t * t + 1) / (2 * t)


def family_C_curve(t) -> tuple[EllipticCurve, Point]:
    t = Fraction(t) if isinstance(t, int) else t
    t2 = t * t
    E = EllipticCurve(2 * t2, t2 ** 3 - 2 * t2 ** 2 + t2, 2 * t2 * (t2 ** 3 - 2 * t2 ** 2 + t2))
    R = E.point(1 - t2, t2 * t2 - 1)
    return E, R


def family_C_bridge(t) -> BirationalBridge:
    """Bridge from alpha^4 + 2alpha^2 + 1 - a^2 = gamma^2 (marked at infinity)."""
    a = a_of_t(t)
    E, _ = family_C_curve(t)
    Q = QuarticModel.at_infinity((1 - a * a, 0, 2, 0, 1), 1)
    return build_bridge(Q, E)


def family_C_extension(t: RationalLike, k: int) -> tuple[Fraction, Fraction]:
    """(a, b) from kR with ab - 1 = alpha^2; b may equal a (k = 1 does)."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise ValueError("t must not be 0 or +-1")
    E, R = family_C_curve(t)
    try:
        alpha, _ = family_C_bridge(t).backward(E.multiply(R, k))
    except ExceptionalPointError as exc:
        raise DegenerateError(f"C {{t: {format_rational(t)}, k: {k}}}: {exc}") from None
    a = a_of_t(t)
    return a, (alpha * alpha + 1) / a


def family_C_pair(t: RationalLike, k: int) -> StrongPair:
    a, b = family_C_extension(t, k)
    if a == b:
        raise DegenerateError(f"C {{t: {format_rational(Fraction(t))}, k: {k}}}: b = a")
    return StrongPair.build((a, b), "C", {"t": Fraction(t), "k": k})


def family_C_closed_form(t: RationalLike) -> StrongPair:
    """{a(t), (t^4+18t^2+1)/(8t(t^2+1))}; over Q(t) this is the 2R extension."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise ValueError("t must not be 0 or +-1")
    b = (t ** 4 + 18 * t * t + 1) / (8 * t * (t * t + 1))
    return StrongPair.build((a_of_t(t), b), "C-closed", {"t": t})


# -- Eulerian view -----------------------------------------------------------------

def to_eulerian(s) -> list[Fraction]:
    """x_i = a_i - 1 for every element."""
    return [Fraction(a) - 1 for a in s]
