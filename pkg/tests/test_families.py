import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from eulertriples.curves import Point, specialize_point
from eulertriples.exact import square_root_exact
from eulertriples.families import (
    DegenerateError,
    StrongPair,
    StrongTriple,
    a_of_t,
    b_of_u,
    c_of_v,
    family_A_bridge,
    family_A_curve,
    family_A_symbolic,
    family_A_triple,
    family_B_b,
    family_B_curve_and_points,
    family_B_points_at,
    family_B_scaling,
    family_B_triple,
    family_C_closed_form,
    family_C_extension,
    family_C_pair,
    to_eulerian,
)
from eulertriples.poly import RationalFunction, evaluate
from eulertriples.verify import check_dq_tuple, check_strong_eulerian

W = RationalFunction.gen("w")


def test_b_of_u_examples():
    assert b_of_u(1) == F(5, 4)
    assert b_of_u(F(2, 5)) == F(689, 400)
    assert b_of_u(-1) == F(5, 4)
    with pytest.raises(ValueError):
        b_of_u(0)


def test_c_of_v_examples():
    assert c_of_v(F(-1, 11)) == F(14645, 484)
    assert c_of_v(F(1, 2)) == F(5, 4)
    with pytest.raises(ValueError):
        c_of_v(0)


@given(st.fractions(max_denominator=1000).filter(lambda x: x != 0))
def test_b_of_u_squares(u):
    b = b_of_u(u)
    assert square_root_exact(b - 1) is not None
    assert square_root_exact(b + 1) is not None


def test_family_A_examples():
    assert set(family_A_triple(1, 2)) == {F(1), F(5, 4), F(14645, 484)}
    assert set(family_A_triple(1, 3)) == {F(1), F(5, 4), F(330926870165, 318391604644)}
    with pytest.raises(DegenerateError, match="m"):
        family_A_triple(1, 1)
    with pytest.raises(ValueError):
        family_A_triple(0, 2)


def test_family_A_at_two_fifths():
    c = [x for x in family_A_triple(F(2, 5), 2) if x not in (1, F(689, 400))]
    assert c == [F(710390547822449, 245964644227600)]
    # -P pulls back to the same v as 2P
    assert family_A_triple(F(2, 5), -1).elements == family_A_triple(F(2, 5), 2).elements


def test_symbolic_agrees_with_numeric():
    rng = random.Random(17)
    _, b2, c2 = family_A_symbolic(2)
    _, b3, c3 = family_A_symbolic(3)
    for _ in range(10):
        u0 = F(rng.randint(1, 50), rng.randint(1, 50))
        if u0 == 1:
            continue
        for m, c in ((2, c2), (3, c3)):
            assert set(family_A_triple(u0, m)) == {F(1), b_of_u(u0), evaluate(c, u0)}


def test_symbolic_range():
    with pytest.raises(ValueError):
        family_A_symbolic(5)
    _, b4, c4 = family_A_symbolic(4)
    assert (b4 * c4 - 1).sqrt() is not None
    assert evaluate(c4, 1) == c_of_v(family_A_pullback_v(1, 4))


def family_A_pullback_v(u, m):
    E, P = family_A_curve(u)
    return family_A_bridge(u).backward(E.multiply(P, m))[0]


@given(st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20).filter(lambda x: x != 1),
       st.integers(2, 4))
@settings(max_examples=25, deadline=None)
def test_family_A_always_verifies(u, m):
    s = family_A_triple(u, m)
    assert check_dq_tuple(s.elements, -1, strong=True).verdict
    assert len(s.report.witnesses()) == 6


def test_family_B_b_closed_form():
    w = F(3, 2)
    expected = (w ** 8 + 56 * w ** 6 + 1240 * w ** 4 + 10976 * w ** 2 + 38416) / (16 * w ** 2 * (14 + w ** 2) ** 2)
    assert family_B_b(w) == expected
    assert family_B_b(1) == F(50689, 3600)


def test_family_B_examples():
    assert set(family_B_triple(1, (0, 1))) == {F(1), F(50689, 3600), F(104776974625, 104672955024)}
    v = F(1 + 18 - 100 - 392, 4 * (3 + 28 + 140))
    assert v == F(-473, 684)
    assert c_of_v(v) == F(104776974625, 104672955024)
    s = family_B_triple(6, (1, 1))
    assert check_dq_tuple(s.elements, -1, strong=True).verdict
    with pytest.raises(DegenerateError):
        family_B_triple(6, (1, 0))
    with pytest.raises(ValueError):
        family_B_triple(1, (0, 0))


def test_family_B_closed_form_c():
    rng = random.Random(23)
    for _ in range(5):
        w = F(rng.randint(1, 30), rng.randint(1, 30))
        c = [x for x in family_B_triple(w, (0, 1)) if x not in (1, family_B_b(w))]
        num = ((w ** 8 + 40 * w ** 6 + 4888 * w ** 4 + 7840 * w ** 2 + 38416)
               * (w ** 8 - 4 * w ** 7 + 24 * w ** 6 - 40 * w ** 5 + 152 * w ** 4 + 16 * w ** 3
                  + 608 * w ** 2 + 672 * w + 784)
               * (w ** 8 + 4 * w ** 7 + 24 * w ** 6 + 40 * w ** 5 + 152 * w ** 4 - 16 * w ** 3
                  + 608 * w ** 2 - 672 * w + 784))
        den = 16 * w ** 2 * (w ** 6 + 18 * w ** 4 - 100 * w ** 2 - 392) ** 2 * (3 * w ** 4 + 28 * w ** 2 + 140) ** 2
        assert c == [num / den]


def test_family_B_points():
    C, P, Q = family_B_curve_and_points()
    assert C.contains(P) and C.contains(Q)
    assert P.y.num.leading > 0 and Q.y.num.leading > 0
    to_C, from_C = family_B_scaling(W)
    assert from_C(to_C(P)) == P
    C6, P6, Q6 = family_B_points_at(6)
    assert Q6 == Point(F(37002889, 36), F(1971840224123, 216))
    assert P6.x == -(6 ** 8 + 56 * 6 ** 6 + 1240 * 6 ** 4 + 10976 * 6 ** 2 + 38416)
    assert specialize_point(P, 6) == P6


def test_family_C_examples():
    pair = family_C_closed_form(F(8, 25))
    assert pair.elements == (F(1114721, 1102400), F(689, 400))
    assert a_of_t(F(17, 481)) == F(115825, 8177)
    with pytest.raises(ValueError):
        family_C_closed_form(1)


def test_family_C_multiples():
    rng = random.Random(29)
    for _ in range(10):
        t = F(rng.randint(2, 90), rng.randint(1, 90))
        if t in (1, -1):
            continue
        a1, b1 = family_C_extension(t, 1)
        assert b1 == a1
        with pytest.raises(DegenerateError):
            family_C_pair(t, 1)
        a2, b2 = family_C_extension(t, 2)
        assert {a2, b2} == set(family_C_closed_form(t).elements)
        a3, b3 = family_C_extension(t, 3)
        assert check_dq_tuple(sorted({abs(a3), abs(b3)}), -1, strong=True).verdict
        assert family_C_extension(t, -2) == (a2, b2)


def test_strong_set_normalizes_and_rejects():
    s = StrongTriple.build((F(-14645, 484), -1, F(-5, 4)))
    assert s.elements == (F(1), F(5, 4), F(14645, 484))
    with pytest.raises(DegenerateError):
        StrongTriple.build((1, 2, 3))
    with pytest.raises(DegenerateError):
        StrongPair.build((1, 1))
    with pytest.raises(ValueError):
        StrongPair.build((1, F(5, 4), F(14645, 484)))
    d = s.to_dict()
    assert d["elements"] == ["1", "5/4", "14645/484"]
    assert d["witnesses"]["2,3"] == "267/44"


def test_to_eulerian():
    xs = to_eulerian(StrongTriple.build((1, F(5, 4), F(14645, 484))))
    assert xs == [0, F(1, 4), F(14161, 484)]
    assert square_root_exact(F(14161, 484)) == F(119, 22)
    assert check_strong_eulerian(xs).verdict
