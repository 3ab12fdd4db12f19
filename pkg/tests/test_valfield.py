from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import padic_order
from tropigusa.errors import InvalidField, ParseError
from tropigusa.valfield import (
    INF,
    NEG_INF,
    ExtRat,
    Poly,
    RatFunc,
    ValuedField,
    ext_combine,
    padic,
    tadic,
    val,
)

K5 = padic(5)
KT = tadic()


# -- ExtRat ---------------------------------------------------------------


def test_extrat_infinity_rules():
    assert INF + 3 == INF
    assert min(INF, ExtRat(2)) == 2
    assert INF.scale(4) == INF
    assert INF.scale(0) == 0
    assert INF.scale(-1).is_flag
    assert NEG_INF < ExtRat(-10**9) < ExtRat(0) < INF
    assert not (NEG_INF >= 0)


def test_extrat_arithmetic_exact():
    x = ExtRat(Fraction(1, 3))
    assert x + x + x == 1
    assert (x * 3) / 2 == Fraction(1, 2)
    assert str(ExtRat(Fraction(-6, 5))) == "-6/5"
    assert str(INF) == "+inf" and str(NEG_INF) == "-inf"


@pytest.mark.parametrize(
    "terms, expected",
    [
        ([(5, ExtRat(0)), (-1, ExtRat(3))], ExtRat(-3)),
        ([(6, INF), (-5, ExtRat(2))], INF),
        ([(-3, INF)], NEG_INF),
        ([(6, INF), (-1, INF)], NEG_INF),
        ([], ExtRat(0)),
    ],
)
def test_ext_combine(terms, expected):
    assert ext_combine(terms) == expected


def test_flag_fails_every_predicate():
    flag = ext_combine([(-3, INF)])
    assert not flag >= 0 and not flag > 0 and flag != 0


# -- valuations -----------------------------------------------------------


def test_val_examples():
    assert val(K5(Fraction(75, 2))) == 2
    assert val(K5(0)) == INF
    assert val(KT(0)) == INF
    t = KT.t
    assert val((t**3 + t**4) / (2 * t)) == 2
    assert val(KT.parse("(t^3 + t^4)/(2*t)")) == 2
    assert val(K5(Fraction(3, 25))) == -2


def test_residue_char_and_uniformizer():
    assert padic(7).residue_char == 7
    assert tadic().residue_char == 0
    assert val(padic(3).uniformizer) == 1
    assert val(KT.uniformizer) == 1


@pytest.mark.parametrize("p", [0, 1, 4, 6, 9, -3])
def test_padic_needs_prime(p):
    with pytest.raises(InvalidField):
        padic(p)


def test_unknown_kind():
    with pytest.raises(InvalidField):
        ValuedField("adic", 3)


rationals = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_padic_valuation_axioms(x, y):
    a, b = K5(x), K5(y)
    assert val(a * b) == val(a) + val(b)
    assert val(a) == padic_order(x, 5)
    s = a + b
    if s.is_zero():
        return
    assert val(s) >= min(val(a), val(b))
    if val(a) != val(b):
        assert val(s) == min(val(a), val(b))


small_poly = st.lists(st.integers(-6, 6), min_size=1, max_size=5).filter(any)


def _rf(num, den, shift):
    return KT(RatFunc(Poly(num).shift(shift), Poly(den)))


@settings(max_examples=200, deadline=None)
@given(small_poly, small_poly, st.integers(0, 3), small_poly, small_poly, st.integers(0, 3))
def test_tadic_valuation_axioms(n1, d1, s1, n2, d2, s2):
    a, b = _rf(n1, d1, s1), _rf(n2, d2, s2)
    assert val(a * b) == val(a) + val(b)
    s = a + b
    if s.is_zero():
        return
    assert val(s) >= min(val(a), val(b))
    if val(a) != val(b):
        assert val(s) == min(val(a), val(b))


# -- parsing -----------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/4", "3/4"),
        ("-6*t", "-6*t"),
        ("1 + 2*t + t^2", "1 + 2*t + t^2"),
        ("(1+t)^2", "1 + 2*t + t^2"),
        ("(t^2 - 1)/(t - 1)", "1 + t"),
        ("t/(2*t)", "1/2"),
        ("-(3 - t)", "-3 + t"),
    ],
)
def test_parse_and_print(text, expected):
    assert str(KT.parse(text)) == expected


@pytest.mark.parametrize("text", ["", "1/0", "2*", "(1+t", "t^-1", "1.5", "x", "t^(2)", "3 4"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        KT.parse(text)


def test_t_not_in_padic():
    with pytest.raises(ParseError):
        K5.parse("1 + t")


@settings(max_examples=100, deadline=None)
@given(small_poly, small_poly, st.integers(0, 3))
def test_round_trip(num, den, shift):
    x = _rf(num, den, shift)
    y = KT.parse(str(x))
    assert (x - y).is_zero()
    assert val(x) == val(y)


def test_padic_round_trip():
    x = K5(Fraction(-125, 6))
    y = K5.parse(str(x))
    assert x == y and val(y) == 3


# -- polynomial helpers ---------------------------------------------------------


def test_poly_divmod_and_gcd():
    a = Poly([-1, 0, 1])  # t^2 - 1
    b = Poly([-1, 1])
    q, r = a.divmod(b)
    assert q == Poly([1, 1]) and r.is_zero()
    assert a.gcd(Poly([1, 2, 1])).monic() == Poly([1, 1])


def test_ratfunc_equality_is_value_equality():
    assert RatFunc(Poly([-1, 0, 1]), Poly([-1, 1])) == RatFunc(Poly([1, 1]))
    assert RatFunc(Poly([0, 2]), Poly([0, 4])) == Fraction(1, 2)
