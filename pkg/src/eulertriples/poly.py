"""Dense univariate polynomials and rational functions over Q.

These are the scalars of the function fields Q(u), Q(w), Q(t) in which the
parametric curve computations are carried out.  Both types are immutable and
kept in canonical form, so ``==`` is structural equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Union

from .exact import square_root_exact

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PoleError",
    "poly_gcd",
    "poly_square_root",
    "scalar_sqrt",
    "evaluate",
]

Number = Union[int, Fraction]
_ZERO = Fraction(0)
_ONE = Fraction(1)

# prime used for the modular coprimality shortcut in poly_gcd
_GCD_PRIME = (1 << 61) - 1


class PoleError(ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Polynomial with Fraction coefficients in ascending degree order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Number] = (), var: str = "u"):
        self.coeffs = _strip([Fraction(c) for c in coeffs])
        self.var = var

    @classmethod
    def _raw(cls, coeffs: tuple, var: str) -> "Polynomial":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p.var = var
        return p

    @classmethod
    def constant(cls, c: Number, var: str = "u") -> "Polynomial":
        return cls((c,), var)

    @classmethod
    def gen(cls, var: str = "u") -> "Polynomial":
        return cls._raw((_ZERO, _ONE), var)

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], var: str = "u") -> "Polynomial":
        return cls(coeffs, var)

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Polynomial._raw(tuple(c / lc for c in self.coeffs), self.var)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _var_with(self, other: "Polynomial") -> str:
        if self.var == other.var or other.is_constant():
            return self.var
        if self.is_constant():
            return other.var
        raise ValueError(f"mixing polynomials in {self.var} and {other.var}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial._raw(_strip([Fraction(other)]), self.var)
        return NotImplemented

    # -- ring operations -----------------------------------------------------

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(tuple(-c for c in self.coeffs), self.var)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(_strip(out), self._var_with(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial._raw((), self.var)
            return Polynomial._raw(tuple(c * other for c in self.coeffs), self.var)
        if not isinstance(other, Polynomial):
            return NotImplemented
        var = self._var_with(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw((), var)
        # clear denominators and multiply over Z
        da = _lcm_den(a)
        db = _lcm_den(b)
        ia = [int(c * da) for c in a]
        ib = [int(c * db) for c in b]
        prod = _int_mul(ia, ib)
        d = da * db
        return Polynomial._raw(tuple(Fraction(c, d) for c in prod), var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial._raw((_ONE,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        var = self._var_with(other)
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(rem) - 1 < dq:
            return Polynomial._raw((), var), Polynomial._raw(self.coeffs, var)
        quot = [_ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lc
            quot[k - dq] = f
            for i, oc in enumerate(other.coeffs):
                rem[k - dq + i] -= f * oc
        return (Polynomial._raw(_strip(quot), var),
                Polynomial._raw(_strip(rem[:dq]), var))

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # -- evaluation and calculus ---------------------------------------------

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element (Fraction, RationalFunction...)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i),
                               self.var)

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Split into rational content and primitive integer coefficient list."""
        if not self.coeffs:
            return _ZERO, []
        d = _lcm_den(self.coeffs)
        ints = [int(c * d) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, d), [c // g for c in ints]

    # -- printing and parsing ------------------------------------------------

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if i == 0:
                term = mag_s
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                term = mono if mag == 1 else f"{mag_s}*{mono}"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += sign + term
        return out

    @classmethod
    def parse(cls, text: str, var: str = "u") -> "Polynomial":
        """Parse the grammar produced by str(), e.g. ``"4*u^4-16*u^2+1"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        term_re = re.compile(
            r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*(" + re.escape(var) + r")(?:\^(\d+))?)?"
            r"|(" + re.escape(var) + r")(?:\^(\d+))?)")
        pos = 0
        coeffs: dict[int, Fraction] = {}
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(2) is not None:
                c = Fraction(m.group(2))
                deg = 0 if m.group(3) is None else int(m.group(4) or 1)
            else:
                c = _ONE
                deg = int(m.group(6) or 1)
            coeffs[deg] = coeffs.get(deg, _ZERO) + sign * c
            pos = m.end()
        top = max(coeffs)
        return cls([coeffs.get(i, 0) for i in range(top + 1)], var)


def _lcm_den(coeffs: Iterable[Fraction]) -> int:
    d = 1
    for c in coeffs:
        cd = c.denominator
        if cd != 1:
            d = d * cd // math.gcd(d, cd)
    return d


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (ascending lists, no trailing zeros)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(a: list[int]) -> list[int]:
    g = reduce(math.gcd, a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _degree_mod_p(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); -1 if the reduction is unusable."""
    if a[-1] % p == 0 or b[-1] % p == 0:
        return -1
    x = [c % p for c in a]
    y = [c % p for c in b]
    while y:
        while y and y[-1] == 0:
            y.pop()
        if not y:
            break
        inv = pow(y[-1], p - 2, p)
        while len(x) >= len(y):
            f = x[-1] * inv % p
            shift = len(x) - len(y)
            for i, c in enumerate(y):
                x[shift + i] = (x[shift + i] - f * c) % p
            x.pop()
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return len(x) - 1


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials (not both zero)."""
    var = p._var_with(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if p.is_zero():
        return Polynomial._raw(q.monic().coeffs, var)
    if q.is_zero():
        return Polynomial._raw(p.monic().coeffs, var)
    a = p.content_primitive()[1]
    b = q.content_primitive()[1]
    if len(a) == 1 or len(b) == 1:
        return Polynomial._raw((_ONE,), var)
    if _degree_mod_p(a, b, _GCD_PRIME) == 0:
        return Polynomial._raw((_ONE,), var)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_primitive(r) if r else [])
    return Polynomial(a, var).monic()


def poly_square_root(p: Polynomial) -> Optional[Polynomial]:
    """Polynomial ``q`` with positive leading coefficient and ``q*q == p``, if any."""
    if p.is_zero():
        return p
    deg = len(p.coeffs) - 1
    if deg % 2:
        return None
    s = square_root_exact(p.coeffs[-1])
    if s is None:
        return None
    n = deg // 2
    # power-series square root in 1/x, top coefficient down
    top = list(reversed(p.coeffs))
    q = [s]
    for k in range(1, n + 1):
        acc = top[k]
        for i in range(1, k):
            acc -= q[i] * q[k - i]
        q.append(acc / (2 * s))
    root = Polynomial._raw(_strip(list(reversed(q))), p.var)
    if root * root != p:
        return None
    return root


class RationalFunction:
    """Reduced quotient ``num/den`` of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: Optional[str] = None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num, var or (den.var if isinstance(den, Polynomial) else "u"))
        if den is None:
            den = Polynomial._raw((_ONE,), num.var)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        var = num._var_with(den)
        if num.is_zero():
            self.num = Polynomial._raw((), var)
            self.den = Polynomial._raw((_ONE,), var)
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading
        if lc != 1:
            num = num * (1 / lc)
            den = den.monic()
        self.num = Polynomial._raw(num.coeffs, var)
        self.den = Polynomial._raw(den.coeffs, var)

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def gen(cls, var: str = "u") -> "RationalFunction":
        return cls._raw(Polynomial.gen(var), Polynomial._raw((_ONE,), var))

    @classmethod
    def constant(cls, c: Number, var: str = "u") -> "RationalFunction":
        return cls._raw(Polynomial.constant(c, var), Polynomial._raw((_ONE,), var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction._raw(Polynomial._raw(_strip([Fraction(other)]), self.var),
                                         Polynomial._raw((_ONE,), self.var))
        if isinstance(other, Polynomial):
            return RationalFunction._raw(other, Polynomial._raw((_ONE,), other.var))
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den.is_constant():
            return RationalFunction._raw(self.num + other.num * self.den, self.den)
        if self.den.is_constant():
            return RationalFunction._raw(self.num * other.den + other.num, other.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            return RationalFunction(self.num * other.den + other.num * self.den,
                                    self.den * other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RationalFunction(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self._zero()
            return RationalFunction._raw(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self._zero()
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.exact_div(g1)
        d2 = other.den if g1.is_constant() else other.den.exact_div(g1)
        n2 = other.num if g2.is_constant() else other.num.exact_div(g2)
        d1 = self.den if g2.is_constant() else self.den.exact_div(g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.leading
        if lc != 1:
            num = num * (1 / lc)
            den = den.monic()
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def _zero(self) -> "RationalFunction":
        return RationalFunction._raw(Polynomial._raw((), self.var),
                                     Polynomial._raw((_ONE,), self.var))

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.leading
        return RationalFunction._raw(self.den * (1 / lc), self.num.monic())

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("rational function divided by zero")
            return RationalFunction._raw(self.num * (1 / Fraction(other)), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self.inverse() * other

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num ** n, self.den ** n)

    def __call__(self, x):
        return evaluate(self, x)

    def sqrt(self) -> Optional["RationalFunction"]:
        """Square root in Q(var) with positive leading numerator coefficient, or None."""
        if self.is_zero():
            return self
        rd = poly_square_root(self.den)
        if rd is None:
            return None
        rn = poly_square_root(self.num)
        if rn is None:
            return None
        return RationalFunction._raw(rn, rd)

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    @classmethod
    def parse(cls, text: str, var: str = "u") -> "RationalFunction":
        """Parse ``"(num)/(den)"`` or a bare polynomial."""
        s = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
        if m:
            return cls(Polynomial.parse(m.group(1), var), Polynomial.parse(m.group(2), var))
        return cls(Polynomial.parse(s, var))


def evaluate(f: RationalFunction, x0):
    """Specialize ``f`` at ``x0`` (a rational, or another rational function)."""
    if isinstance(x0, (int, Fraction)):
        x0 = Fraction(x0)
        d = f.den(x0)
        if d == 0:
            raise PoleError(f"{f} has a pole at {x0}")
        return Fraction(f.num(x0)) / d
    d = f.den(x0)
    if d == 0:
        raise PoleError(f"{f} has a pole at {x0}")
    return f.num(x0) / d


def scalar_sqrt(x):
    """Exact square root of a field element (Fraction or RationalFunction), or None."""
    if isinstance(x, RationalFunction):
        return x.sqrt()
    return square_root_exact(x)
