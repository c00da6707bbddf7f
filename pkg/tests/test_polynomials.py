from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schur.polynomials import (InexactPolyDivision, RationalPoly, exact_rank, monomials,
                               nullity)

N = 3
coeffs = st.one_of(st.integers(-5, 5), st.fractions(max_denominator=4).filter(lambda q: abs(q) < 5))
monos = st.tuples(*[st.integers(0, 2)] * N)
polys = st.dictionaries(monos, coeffs, max_size=4).map(lambda d: RationalPoly(N, d))


def x(i):
    return RationalPoly.var(N, i)


def test_canonical_text():
    f = RationalPoly.parse(2, "1/2*x1^2 - x1*x2")
    assert str(f) == "1/2*x1^2 - x1*x2"
    assert str(x(1) - x(0)) == "-x1 + x2"
    assert str(RationalPoly(N)) == "0"


def test_degree_counts_variables_twice():
    assert (x(0) * x(1)).degree() == 4
    assert RationalPoly.const(N, 3).degree() == 0
    assert RationalPoly(N).degree() == -1


def test_division():
    f = x(0) * x(0) - x(1) * x(1)
    assert f.divexact(x(0) - x(1)) == x(0) + x(1)
    with pytest.raises(InexactPolyDivision):
        (x(0) * x(1) + 1).divexact(x(0) - x(1))


def test_signed_permute_and_substitute():
    f = x(0) * x(0) * x(1)
    assert f.signed_permute([1, 0, 2], [1, -1, 1]) == x(1) * x(1) * x(0) * -1
    assert (x(0) * x(1)).substitute_linear(0, {1: 1, 2: Fraction(1, 2)}) == \
        x(1) * x(1) + x(1) * x(2) * Fraction(1, 2)


def test_monomial_count():
    assert len(monomials(3, 2)) == 6
    assert monomials(2, 1) == [(1, 0), (0, 1)]


def test_exact_rank():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: Fraction(1, 3)}]
    assert exact_rank(rows, 3) == 2
    assert nullity(rows, 3) == 1
    assert exact_rank([], 4) == 0


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(polys, polys)
def test_divexact_inverts_product(a, b):
    if b:
        assert (a * b).divexact(b) == a


@given(polys)
def test_text_round_trip(a):
    assert RationalPoly.parse(N, str(a)) == a


@given(polys, st.permutations(range(N)), st.lists(st.sampled_from([1, -1]), min_size=N, max_size=N))
def test_signed_permutation_is_ring_map(a, perm, sign):
    b = a * a + 1
    assert (a * b).signed_permute(perm, sign) == a.signed_permute(perm, sign) * b.signed_permute(perm, sign)
