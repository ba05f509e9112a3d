"""Birational maps between quartic models z^2 = q(v) and Weierstrass curves.

A quartic with a marked rational point is an elliptic curve in disguise.
:func:`build_bridge` moves the marked point to v = 0 (or uses the point at
infinity when the marked point is there), applies the classical
quartic-to-cubic substitution, completes the square, and finally solves for
the change of variables X = L*x + mu, Y = lam^3*Y' (lam^2 = L) onto a
requested target curve.  The match is checked coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Optional

from .curves import INFINITY, EllipticCurve, Point, _fmt, as_scalar, specialize_curve, specialize_scalar
from .poly import scalar_sqrt

__all__ = [
    "QuarticModel",
    "BirationalBridge",
    "BridgeError",
    "ExceptionalPointError",
    "build_bridge",
    "pullback_point",
]


class BridgeError(ValueError):
    """The bridge cannot be built (no usable point, or target mismatch)."""


class ExceptionalPointError(ValueError):
    """A point lies where one of the bridge maps is undefined."""


@dataclass(frozen=True)
class QuarticModel:
    """z^2 = A0 + A1 v + A2 v^2 + A3 v^3 + A4 v^4 with a marked point.

    ``v0 is None`` marks the point at infinity whose branch has z/v^2 -> z0
    (so z0^2 = A4).
    """

    coeffs: tuple
    v0: Any
    z0: Any

    def __post_init__(self):
        if len(self.coeffs) != 5:
            raise ValueError("a quartic model needs exactly five coefficients")
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))
        object.__setattr__(self, "v0", as_scalar(self.v0))
        object.__setattr__(self, "z0", as_scalar(self.z0))
        if self.v0 is None:
            if self.z0 * self.z0 != self.coeffs[4]:
                raise ValueError("marked point at infinity needs z0^2 = leading coefficient")
        elif self.z0 * self.z0 != self.value(self.v0):
            raise ValueError(f"marked point ({_fmt(self.v0)}, {_fmt(self.z0)}) is not on the quartic")

    @classmethod
    def at_infinity(cls, coeffs, z0) -> "QuarticModel":
        return cls(tuple(coeffs), None, z0)

    def value(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def contains(self, v, z) -> bool:
        return z * z == self.value(v)

    def specialize(self, x0) -> "QuarticModel":
        sp = lambda s: None if s is None else specialize_scalar(s, x0)
        return QuarticModel(tuple(sp(c) for c in self.coeffs), sp(self.v0), sp(self.z0))


@dataclass(frozen=True)
class BirationalBridge:
    """Mutually inverse maps between a quartic model and ``target``.

    ``mode`` is ``"washington"`` (marked point with z0 != 0, finite or at
    infinity) or ``"cubic"`` (finite marked point with z0 = 0).
    """

    quartic: QuarticModel
    target: EllipticCurve
    mode: str
    # quartic in the local coordinate s: z'^2 = a s^4 + b s^3 + c s^2 + d s + q^2
    a: Any
    b: Any
    c: Any
    d: Any
    q: Any
    # intermediate long-Weierstrass coefficients
    a1: Any
    a3: Any
    wa2: Any
    L: Any
    lam: Any
    mu: Any
    exceptional_forward: tuple = field(default=())
    exceptional_backward: tuple = field(default=())

    # -- local coordinates ---------------------------------------------------

    def _to_local(self, v, z):
        if self.quartic.v0 is None:
            if v == 0:
                raise ExceptionalPointError("v = 0 lies on the exceptional locus of the forward map")
            s = 1 / v
            return s, z * s * s
        return v - self.quartic.v0, z

    def _from_local(self, s, zeta):
        if self.quartic.v0 is None:
            if s == 0:
                raise ExceptionalPointError("point maps to the second point at infinity of the quartic")
            return 1 / s, zeta / (s * s)
        return self.quartic.v0 + s, zeta

    # -- maps -----------------------------------------------------------------

    def forward(self, v, z) -> Point:
        """Quartic point (v, z) -> point on the target curve."""
        if not self.quartic.contains(v, z):
            raise ValueError("point is not on the quartic")
        s, zeta = self._to_local(v, z)
        if self.mode == "cubic":
            if s == 0:
                return INFINITY
            X = self.d / s
            return Point(X, zeta * X * X / self.d)
        q, c, d = self.q, self.c, self.d
        if s == 0:
            if zeta == q:
                return INFINITY
            x = -self.wa2
            y = self.a1 * self.wa2 - self.a3
        else:
            x = (2 * q * (zeta + q) + d * s) / (s * s)
            y = (4 * q * q * (zeta + q) + 2 * q * (d * s + c * s * s)
                 - d * d * s * s / (2 * q)) / (s * s * s)
        return self._to_target(x, y)

    def _to_target(self, x, y) -> Point:
        Yc = y + (self.a1 * x + self.a3) / 2
        return Point(self.L * x + self.mu, self.lam * self.L * Yc)

    def involution_point(self) -> Point:
        """Image P0 of the marked point's partner (v0, -z0); (v, -z) maps to P0 - X."""
        if self.mode == "cubic":
            return INFINITY
        return self._to_target(-self.wa2, self.a1 * self.wa2 - self.a3)

    def backward(self, P: Point, _involution_guard: bool = False):
        """Target point -> quartic point (v, z)."""
        if P.is_infinity:
            raise ExceptionalPointError("the point at infinity corresponds to the marked point")
        if self.mode == "cubic":
            if P.x == 0:
                raise ExceptionalPointError("X = 0 maps to infinity on the quartic")
            s = self.d / P.x
            return self._from_local(s, P.y * self.d / (P.x * P.x))
        x = (P.x - self.mu) / self.L
        y = P.y / (self.lam * self.L) - (self.a1 * x + self.a3) / 2
        q, c, d = self.q, self.c, self.d
        num = 2 * q * (x + c) - d * d / (2 * q)
        if y == 0:
            if num != 0 or _involution_guard:
                raise ExceptionalPointError(
                    f"{P} maps to a point at infinity of the local quartic")
            # 0/0: use (v, z) -> (v, -z), which acts as X -> P0 - X on the curve
            v, z = self.backward(self.target.sub(self.involution_point(), P),
                                 _involution_guard=True)
            return v, -z
        s = num / y
        zeta = -q + s * (s * x - d) / (2 * q)
        return self._from_local(s, zeta)

    def specialize(self, x0) -> "BirationalBridge":
        sp = lambda s: specialize_scalar(s, x0)
        return BirationalBridge(
            self.quartic.specialize(x0), specialize_curve(self.target, x0), self.mode,
            *(sp(getattr(self, k)) for k in ("a", "b", "c", "d", "q", "a1", "a3",
                                               "wa2", "L", "lam", "mu")),
            exceptional_forward=self.exceptional_forward,
            exceptional_backward=self.exceptional_backward,
        )

    def maps_json(self) -> dict:
        """The four component maps as strings."""
        return {
            "target": self.target.to_json(),
            "mode": self.mode,
            "marked_point": None if self.quartic.v0 is None else [_fmt(self.quartic.v0), _fmt(self.quartic.z0)],
            "local_coordinate": "s = 1/v, zeta = z/v^2" if self.quartic.v0 is None
            else f"s = v - ({_fmt(self.quartic.v0)}), zeta = z",
            "local_quartic": [_fmt(k) for k in (self.q * self.q, self.d, self.c, self.b, self.a)],
            "forward": {
                "x": "(2*q*(zeta+q) + d*s)/s^2",
                "y": "(4*q^2*(zeta+q) + 2*q*(d*s + c*s^2) - d^2*s^2/(2*q))/s^3",
                "X": "L*x + mu",
                "Y": "lam*L*(y + (a1*x + a3)/2)",
            } if self.mode == "washington" else {"X": "d/s", "Y": "zeta*X^2/d"},
            "backward": {
                "x": "(X - mu)/L",
                "y": "Y/(lam*L) - (a1*x + a3)/2",
                "s": "(2*q*(x + c) - d^2/(2*q))/y",
                "zeta": "-q + s*(s*x - d)/(2*q)",
            } if self.mode == "washington" else {"s": "d/X", "zeta": "Y*d/X^2"},
            "parameters": {k: _fmt(getattr(self, k)) for k in
                           ("q", "a", "b", "c", "d", "a1", "a3", "L", "lam", "mu")},
            "exceptional_forward": list(self.exceptional_forward),
            "exceptional_backward": list(self.exceptional_backward),
        }


def _local_quartic(Q: QuarticModel):
    """Coefficients (a, b, c, d, e) of the quartic in the local coordinate s."""
    A = Q.coeffs
    if Q.v0 is None:
        return A[0], A[1], A[2], A[3], A[4]
    v0 = Q.v0
    shifted = []
    for k in range(5):
        acc = 0
        for i in range(k, 5):
            acc = acc + A[i] * comb(i, k) * v0 ** (i - k)
        shifted.append(acc)
    return shifted[4], shifted[3], shifted[2], shifted[1], shifted[0]


def _solve_scaling(src: tuple, tgt: EllipticCurve):
    """L with target(L x + mu) = L^3 src(x), from the c4/c6 invariants."""
    s2, s4, s6 = src
    c4s = 16 * s2 * s2 - 48 * s4
    c6s = -64 * s2 ** 3 + 288 * s2 * s4 - 864 * s6
    c4t, c6t = tgt.c4(), tgt.c6()
    if c4s != 0 and c6s != 0:
        if c4t == 0 or c6t == 0:
            raise BridgeError("target has a different j-invariant")
        return [c6t * c4s / (c6s * c4t)]
    if c6s == 0 and c4s != 0:
        if c6t != 0 or c4t == 0:
            raise BridgeError("target has a different j-invariant")
        r = scalar_sqrt(c4t / c4s)
        if r is None:
            raise BridgeError("target is a twist of the quartic's Jacobian")
        return [r, -r]
    raise BridgeError("j-invariant 0 curves are not supported")


def build_bridge(Q: QuarticModel, target: Optional[EllipticCurve] = None,
                 anchor: Optional[tuple] = None) -> BirationalBridge:
    """Bridge from ``Q`` to a Weierstrass curve (``target`` if given).

    ``anchor = ((v, z), P)`` pins the automorphism sign so that the quartic
    point (v, z) goes to P.
    """
    a, b, c, d, e = _local_quartic(Q)
    if Q.v0 is not None and Q.z0 == 0:
        if d == 0:
            raise BridgeError("marked point with z0 = 0 is a multiple root")
        mode = "cubic"
        q = Q.z0
        a1 = a3 = wa2 = 0
        src = (c, b * d, a * d * d)
        exc_f = (f"v = {_fmt(Q.v0)} (marked point) -> O",)
        exc_b = ("O -> marked point", "X = 0 -> point at infinity of the quartic")
    else:
        if Q.v0 is None and Q.z0 == 0:
            raise BridgeError("marked point at infinity needs a nonzero leading coefficient")
        mode = "washington"
        q = Q.z0
        a1 = d / q
        wa2 = c - d * d / (4 * q * q)
        a3 = 2 * q * b
        wa4 = -4 * q * q * a
        wa6 = wa2 * wa4
        src = (wa2 + a1 * a1 / 4, wa4 + a1 * a3 / 2, wa6 + a3 * a3 / 4)
        exc_f = ("v = 0 (s = infinity)",) if Q.v0 is None else ()
        exc_b = ["O -> marked point",
                 "points with local y = 0 and (2*q*(x + c) - d^2/(2*q)) != 0 -> points at infinity"
                 " of the local quartic"]
        if Q.v0 is None:
            exc_b.append("x = d^2/(4*q^2) - c (s = 0, second point at infinity)")
        exc_b = tuple(exc_b)

    if target is None:
        target = EllipticCurve(*src)
        choices = [1]
    else:
        choices = _solve_scaling(src, target)

    candidates = []
    for L in choices:
        lam = scalar_sqrt(L)
        if lam is None:
            continue
        mu = (L * src[0] - target.a2) / 3
        ok = (3 * L * L * mu + target.a2 * L * L == L ** 3 * src[0]
              and 3 * L * mu * mu + 2 * target.a2 * L * mu + target.a4 * L == L ** 3 * src[1]
              and ((mu + target.a2) * mu + target.a4) * mu + target.a6 == L ** 3 * src[2])
        if not ok:
            continue
        for sign in (1, -1):
            candidates.append(BirationalBridge(
                Q, target, mode, a, b, c, d, q, a1, a3, wa2, L, sign * lam, mu,
                exceptional_forward=exc_f, exceptional_backward=exc_b))
    if not candidates:
        raise BridgeError(f"quartic Jacobian {EllipticCurve(*src)} does not match target {target}")
    if anchor is None:
        return candidates[0]
    (va, za), Pa = anchor
    for br in candidates:
        if br.forward(va, za) == Pa:
            return br
    raise BridgeError(f"no bridge sends ({_fmt(va)}, {_fmt(za)}) to {Pa}")


def pullback_point(B: BirationalBridge, P: Point):
    """(v, z) on the quartic corresponding to the target point P."""
    return B.backward(P)
