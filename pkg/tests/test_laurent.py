import pytest
from hypothesis import given, strategies as st

from schur.laurent import ONE, ZERO, InexactDivision, LaurentPoly, v

laurents = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=5).map(LaurentPoly)


def test_zero_coefficients_dropped():
    assert LaurentPoly({1: 0, 2: 3}).terms() == [(2, 3)]
    assert not LaurentPoly({0: 0})


def test_text_form():
    assert str(LaurentPoly({-1: 1, 1: 1})) == "v^-1 + v"
    assert str(LaurentPoly({0: 1, 2: -2})) == "1 - 2*v^2"
    assert str(ZERO) == "0"


def test_bar():
    assert LaurentPoly({1: 2, -3: 1}).bar() == LaurentPoly({-1: 2, 3: 1})


def test_exact_division():
    pi = LaurentPoly({-3: 1, -1: 2, 1: 2, 3: 1})
    assert pi.divexact(LaurentPoly({-1: 1, 1: 1})) == LaurentPoly({-2: 1, 0: 1, 2: 1})
    with pytest.raises(InexactDivision):
        LaurentPoly({0: 1}).divexact(LaurentPoly({0: 1, 1: 1}))


def test_parse_round_trip_examples():
    for text in ["v^-1 + v", "1 - 2*v^2", "-v^-3", "0", "7"]:
        assert str(LaurentPoly.parse(text)) == text


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    assert a * ONE == a


@given(laurents, laurents)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(laurents, laurents)
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a * b).divexact(b) == a


@given(laurents)
def test_text_and_json_round_trip(a):
    assert LaurentPoly.parse(str(a)) == a
    assert LaurentPoly.from_json(a.to_json()) == a


@given(laurents, st.integers(-5, 5))
def test_shift_is_multiplication_by_power_of_v(a, k):
    assert a.shift(k) == a * LaurentPoly.monomial(k)
    assert v ** 2 == LaurentPoly.monomial(2)
