"""Exact predicates for D(q)-tuples, strong tuples and Eulerian tuples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import RationalLike, format_rational, square_root_exact

__all__ = [
    "Condition",
    "VerificationReport",
    "TupleError",
    "check_dq_tuple",
    "check_strong_eulerian",
    "check_quadratic_field_strong",
    "is_squarefree",
]


class TupleError(ValueError):
    """Elements are zero or not pairwise distinct."""


@dataclass(frozen=True)
class Condition:
    """One requirement a_i*a_j + q = square (i == j for the diagonal ones).

    ``branch`` is ``"Q"`` when the value is a rational square, ``"d"`` when
    only d*value is (quadratic-field check), and ``None`` on failure.  For
    the ``"d"`` branch the witness w satisfies w^2 = d*value.
    """

    i: int
    j: int
    value: Fraction
    witness: Optional[Fraction]
    branch: Optional[str] = "Q"

    @property
    def ok(self) -> bool:
        return self.witness is not None

    @property
    def label(self) -> str:
        return f"{self.i + 1},{self.j + 1}"


@dataclass(frozen=True)
class VerificationReport:
    subject: tuple
    q: Fraction
    strong: bool
    conditions: tuple
    verdict: bool
    d: Optional[int] = None
    eulerian: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.verdict

    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.ok]

    def witnesses(self) -> dict[str, str]:
        return {c.label: format_rational(c.witness) for c in self.conditions if c.ok}

    def to_dict(self) -> dict:
        out = {
            "subject": [format_rational(a) for a in self.subject],
            "q": format_rational(self.q),
            "strong": self.strong,
            "verdict": self.verdict,
            "conditions": [
                {
                    "pair": [c.i + 1, c.j + 1],
                    "value": format_rational(c.value),
                    "witness": None if c.witness is None else format_rational(c.witness),
                    "branch": c.branch,
                }
                for c in self.conditions
            ],
        }
        if self.d is not None:
            out["d"] = self.d
        if self.eulerian is not None:
            out["eulerian"] = [format_rational(x) for x in self.eulerian]
        return out


def _pairs(m: int, strong: bool):
    for i in range(m):
        for j in range(i if strong else i + 1, m):
            yield i, j


def _check_elements(elements: Sequence[Fraction]) -> None:
    if any(a == 0 for a in elements):
        raise TupleError("elements must be nonzero")
    if len(set(elements)) != len(elements):
        raise TupleError("elements must be pairwise distinct")


def check_dq_tuple(elements: Sequence[RationalLike], q: RationalLike = -1,
                   strong: bool = True) -> VerificationReport:
    """Check every a_i*a_j + q (i < j, or i <= j when ``strong``) for squareness."""
    elems = tuple(Fraction(a) for a in elements)
    q = Fraction(q)
    _check_elements(elems)
    conds = []
    for i, j in _pairs(len(elems), strong):
        value = elems[i] * elems[j] + q
        root = square_root_exact(value)
        conds.append(Condition(i, j, value, root, "Q" if root is not None else None))
    return VerificationReport(elems, q, strong, tuple(conds), all(c.ok for c in conds))


def check_strong_eulerian(elements: Sequence[RationalLike]) -> VerificationReport:
    """Strong Eulerian check: x_i*x_j + x_i + x_j and x_i^2 + 2x_i all squares.

    Uses x_i*x_j + x_i + x_j = (x_i + 1)(x_j + 1) - 1.
    """
    xs = tuple(Fraction(x) for x in elements)
    if len(set(xs)) != len(xs):
        raise TupleError("elements must be pairwise distinct")
    shifted = tuple(x + 1 for x in xs)
    report = check_dq_tuple(shifted, -1, strong=True)
    return VerificationReport(report.subject, report.q, True, report.conditions,
                              report.verdict, eulerian=xs)


def is_squarefree(d: int) -> bool:
    if d == 0:
        return False
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def check_quadratic_field_strong(elements: Sequence[RationalLike], q: RationalLike,
                                 d: int, strong: bool = True) -> VerificationReport:
    """Strong D(q) check over Q(sqrt(d)).

    A rational is a square in Q(sqrt(d)) iff it or d times it is a rational
    square; each condition records which branch applied.
    """
    if not isinstance(d, int) or not is_squarefree(d):
        raise ValueError(f"d = {d} is not a nonzero squarefree integer")
    elems = tuple(Fraction(a) for a in elements)
    q = Fraction(q)
    _check_elements(elems)
    conds = []
    for i, j in _pairs(len(elems), strong):
        value = elems[i] * elems[j] + q
        root = square_root_exact(value)
        if root is not None:
            conds.append(Condition(i, j, value, root, "Q"))
            continue
        root = square_root_exact(d * value) if d != 1 else None
        conds.append(Condition(i, j, value, root, "d" if root is not None else None))
    return VerificationReport(elems, q, strong, tuple(conds), all(c.ok for c in conds), d=d)
