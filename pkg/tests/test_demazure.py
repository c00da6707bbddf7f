import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from schur.cosets import coset_of, double_cosets, kilmoyer
from schur.demazure import (RXElement, RepError, act, build_rep, demazure_left, demazure_right,
                            exact_sequence_check, exact_sequence_dims, graded_rank,
                            graded_rank_check, hilbert_parabolic, hilbert_parabolic_series,
                            invariant_dims, m_p, phi_basis, rx_dims, induced_prediction,
                            verify_induced_invariants)
from schur.laurent import LaurentPoly
from schur.polynomials import RationalPoly, monomials

from conftest import system


def _cosets(W):
    return [p for I in W.all_subsets() for J in W.all_subsets() for p in double_cosets(W, I, J)]


def test_type_a_roots(A2):
    rep = build_rep(A2)
    assert sorted(str(h) for h in rep.roots.values()) == ["x1 - x2", "x1 - x3", "x2 - x3"]
    assert rep.dim == 3


def test_type_b_roots(B2):
    rep = build_rep(B2)
    got = {B2.format(t): str(h) for t, h in rep.roots.items()}
    assert got == {"s1": "x1", "s2": "-x1 + x2", "s1.s2.s1": "x1 + x2", "s2.s1.s2": "x2"}


def test_dihedral_has_no_rep(I5):
    assert not I5.has_rep
    with pytest.raises(RepError):
        build_rep(I5)


def test_action_examples(A2):
    rep = build_rep(A2)
    s = A2.parse("s1")
    x1, x2 = RationalPoly.var(3, 0), RationalPoly.var(3, 1)
    assert act(rep, s, x1) == x2
    assert act(rep, s, x1 - x2) == x2 - x1


def test_action_is_ring_map_and_group_action(B2):
    rep = build_rep(B2)
    f = RationalPoly.parse(2, "x1^2 - 3*x1*x2 + 1/2*x2")
    g = RationalPoly.parse(2, "x2 + 2")
    for w in B2.all_elements():
        assert act(rep, w, f * g) == act(rep, w, f) * act(rep, w, g)
        for u in B2.all_elements():
            assert act(rep, B2.multiply(u, w), f) == act(rep, u, act(rep, w, f))


def test_reflections_negate_their_root(B3):
    rep = build_rep(B3)
    for t, h in rep.roots.items():
        assert act(rep, t, h) == -h


def test_membership_is_checked(A2):
    rep = build_rep(A2)
    X = [A2.identity, A2.parse("s1")]
    x1, x2 = RationalPoly.var(3, 0), RationalPoly.var(3, 1)
    RXElement(rep, X, {X[0]: x1, X[1]: x2})
    with pytest.raises(ValueError):
        RXElement(rep, X, {X[0]: x1, X[1]: RationalPoly.var(3, 2)})


def test_demazure_example(A2):
    rep = build_rep(A2)
    s = A2.parse("s1")
    X = [A2.identity, s]
    x1 = RationalPoly.var(3, 0)
    F = RXElement(rep, X, {A2.identity: x1, s: x1})
    got = demazure_left(rep, s, F)
    assert {A2.format(x): str(f) for x, f in got.comps.items()} == {"e": "1/2", "s1": "1/2"}


def test_phi_examples(A2):
    rep = build_rep(A2)
    s = A2.subset("s1")
    p = coset_of(A2, A2.identity, s, frozenset())
    assert graded_rank_check(rep, p) == LaurentPoly({0: 1, -2: 1})
    single = coset_of(A2, A2.parse("s2"), frozenset(), frozenset())
    assert graded_rank_check(rep, single) == LaurentPoly.const(1)
    S = A2.subset("s1,s2")
    full = coset_of(A2, A2.identity, S, S)
    assert graded_rank_check(rep, full) == full.poincare_tilde


@pytest.mark.parametrize("text,limit", [("A2", None), ("B2", None), ("A3", 30)])
def test_phi_basis_properties(text, limit):
    W = system(text)
    rep = build_rep(W)
    cos = _cosets(W)
    if limit:
        cos = random.Random(0).sample(cos, limit)
    for p in cos:
        a, b = phi_basis(rep, p), phi_basis(rep, p, "right")
        assert graded_rank(p, a) == p.poincare_tilde
        for x in p.elements:
            assert a[x].degree() == 2 * (p.p_plus.length - x.length)
            assert all(W.bruhat_leq(y, x) for y in a[x].support())
            assert a[x].proportional_to(b[x]) is not None
        m_p(rep, p)


def test_phi_degree_at_subcoset_tops(A2):
    # a (K,L)-coset q inside p: deg φ_{q+} = 2(l(p+) - l(q+))
    rep = build_rep(A2)
    for p in _cosets(A2):
        phi = phi_basis(rep, p)
        for K in A2.all_subsets():
            for L in A2.all_subsets():
                if not (K <= p.I and L <= p.J):
                    continue
                for q in double_cosets(A2, K, L):
                    if q.p_minus in p:
                        assert phi[q.p_plus].degree() == 2 * (p.p_plus.length - q.p_plus.length)


def _random_member(rep, p, rng):
    phi = phi_basis(rep, p)
    n = rep.dim
    F = None
    for f in phi.values():
        c = RationalPoly(n, {m: rng.randint(-3, 3) for m in monomials(n, rng.randint(0, 1))})
        term = f.left_mul(c)
        F = term if F is None else F + term
    return F


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_demazure_linearity_and_square_zero(seed):
    W = system("A2")
    rep = build_rep(W)
    rng = random.Random(seed)
    S = W.subset("s1,s2")
    whole = coset_of(W, W.identity, S, S)
    F = _random_member(rep, whole, rng)
    t = rng.choice(W.reflections())
    h = rep.h(t)
    g = RationalPoly(3, {m: rng.randint(-2, 2) for m in monomials(3, 1)})
    inv = h * h + g + act(rep, t, g)
    DF = demazure_left(rep, t, F)
    assert demazure_left(rep, t, F.left_mul(inv)) == DF.left_mul(inv)
    assert demazure_left(rep, t, F.right_mul(g)) == DF.right_mul(g)
    assert demazure_left(rep, t, DF).is_zero()
    RF = demazure_right(rep, t, F)
    assert demazure_right(rep, t, F.left_mul(g)) == RF.left_mul(g)
    assert demazure_right(rep, t, F.right_mul(inv)) == RF.right_mul(inv)
    assert demazure_right(rep, t, RF).is_zero()


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_demazure_support_spreads_by_one_reflection(seed):
    W = system("A2")
    rep = build_rep(W)
    rng = random.Random(seed)
    S = W.subset("s1,s2")
    X = coset_of(W, W.identity, S, S).elements
    A = rng.sample(X, rng.randint(1, 3))
    x1 = RationalPoly.var(3, 0)
    # products of all roots vanish on every difference, so each indicator is a member
    big = RationalPoly.const(3, 1)
    for h in rep.roots.values():
        big = big * h
    F = None
    for a in A:
        term = RXElement(rep, X, {a: big * (x1 + rng.randint(-2, 2))})
        F = term if F is None else F + term
    t = rng.choice(W.reflections())
    allowed = set(A) | {W.multiply(t, a) for a in A}
    assert set(demazure_left(rep, t, F).support()) <= allowed


def test_hilbert_examples():
    A1 = system("A1")
    rep = build_rep(A1)
    assert hilbert_parabolic(rep, A1.subset("s1"), 10) == [1, 1, 2, 2, 3, 3]
    assert hilbert_parabolic(rep, frozenset(), 6) == [comb(1 + k, k) for k in range(4)]


@pytest.mark.parametrize("text", ["A2", "B2"])
def test_hilbert_two_routes(text):
    W = system(text)
    rep = build_rep(W)
    for K in W.all_subsets():
        assert hilbert_parabolic(rep, K, 8) == hilbert_parabolic_series(W, rep.dim, K, 8)


def test_exact_sequence_examples():
    A1 = system("A1")
    rep = build_rep(A1)
    X = A1.all_elements()
    assert exact_sequence_dims(rep, X, 6) == rx_dims(rep, X, 6)
    single = [A1.identity]
    assert rx_dims(rep, single, 6) == [1, 2, 3, 4]
    A2 = system("A2")
    rep2 = build_rep(A2)
    X = [A2.parse(w) for w in ["e", "s1", "s2", "s1.s2"]]
    assert exact_sequence_check(rep2, X, 4)["status"] == "ok"


def test_invariant_examples(A2):
    rep = build_rep(A2)
    s, t = A2.subset("s1"), A2.subset("s2")
    for p in double_cosets(A2, s, t):
        assert invariant_dims(rep, p, s, t, 6) == hilbert_parabolic(rep, kilmoyer(p), 6)
    single = coset_of(A2, A2.parse("s1.s2"), frozenset(), frozenset())
    assert invariant_dims(rep, single, (), (), 6) == [comb(2 + k, k) for k in range(4)]
    p = coset_of(A2, A2.identity, s, t)
    # R(p) free over R with graded rank π̃(p)
    ranks = [p.poincare_tilde.coeff(-2 * k) for k in range(5)]
    hs = [comb(2 + k, k) for k in range(5)]
    expect = [sum(ranks[i] * hs[k - i] for i in range(k + 1)) for k in range(5)]
    assert invariant_dims(rep, p, (), (), 8) == expect
    assert verify_induced_invariants(rep, p, (), (), 8)["status"] == "ok"
    assert induced_prediction(rep, p, (), (), 8) == expect


def test_invariants_need_nested_subsets(A2):
    rep = build_rep(A2)
    p = coset_of(A2, A2.identity, A2.subset("s1"), frozenset())
    with pytest.raises(ValueError):
        invariant_dims(rep, p, A2.subset("s2"), (), 4)


def test_degree_cap_guard(A2, monkeypatch):
    rep = build_rep(A2)
    p = coset_of(A2, A2.identity, frozenset(), frozenset())
    monkeypatch.setenv("SCHUR_MAX_DEGREE", "4")
    with pytest.raises(ValueError):
        invariant_dims(rep, p, (), (), 6)
