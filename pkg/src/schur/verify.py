"""
Verification suites. Each suite returns a list of reports
``{"claim": str, "status": "ok" | "mismatch" | "skipped", "detail": dict}``.
"""

from __future__ import annotations

import random
from typing import Callable

from .algebroid import (SchurElement, bott_samelson_char, chains, decompose_kl,
                        embed_to_hecke, is_unitriangular, kl_elt,
                        schur_pairing, schur_pairing_closed, standard_elt,
                        standard_generator, star, translate_closed_form,
                        translation_sequence, sandwich, SearchExhausted)
from .cosets import (coset_of, double_cosets, howlett_factor, kilmoyer,
                     length_defect, minimal_left_reps, poincare_parabolic,
                     poincare_ratio, quotient)
from .coxeter import CoxeterSystem, GroupElement, _flatten
from .demazure import (build_rep, exact_sequence_check, graded_rank_check,
                       hilbert_parabolic, hilbert_parabolic_series, m_p,
                       phi_basis, rx_dims, verify_induced_invariants)
from .hecke import (H, HeckeElement, hecke_bar, hecke_multiply, kl_element,
                    kl_table, standard_inverse)
from .laurent import ONE, ZERO, LaurentPoly

__all__ = ["SUITES", "run_suite", "run_suites", "kl_by_bar_solve", "random_hecke",
           "report", "summarize"]


def report(claim: str, ok: bool | None, **detail) -> dict:
    status = "skipped" if ok is None else ("ok" if ok else "mismatch")
    return {"claim": claim, "status": status, "detail": detail}


class _Tally:
    """Counts checks for one claim and keeps the first few failures."""

    def __init__(self, claim: str, keep: int = 5):
        self.claim = claim
        self.checked = 0
        self.failures: list = []
        self.nfail = 0
        self.keep = keep

    def check(self, ok: bool, what) -> None:
        self.checked += 1
        if not ok:
            self.nfail += 1
            if len(self.failures) < self.keep:
                self.failures.append(what() if callable(what) else what)

    def report(self, **extra) -> dict:
        return report(self.claim, self.nfail == 0, checked=self.checked,
                      failed=self.nfail, examples=self.failures, **extra)


def random_hecke(W: CoxeterSystem, rng: random.Random, terms: int = 3, span: int = 2) -> HeckeElement:
    elems = W.all_elements()
    out = {}
    for _ in range(terms):
        w = rng.choice(elems)
        c = LaurentPoly({rng.randint(-span, span): rng.choice([-2, -1, 1, 2]) for _ in range(2)})
        out[w] = out.get(w, ZERO) + c
    return HeckeElement(W, out)


# ---------------------------------------------------------------------------
# Hecke algebra


def kl_by_bar_solve(W: CoxeterSystem, w: GroupElement) -> HeckeElement:
    """The KL element of w from bar invariance and degree bounds alone.

    Writing bar(H_x) = Σ_y r_{y,x} H_y, the coefficients c_y of a self-dual
    element with c_w = 1 satisfy c_y - bar(c_y) = Σ_{y<x≤w} bar(c_x) r_{y,x};
    requiring c_y ∈ vZ[v] picks the positive-exponent half of the right side.
    """
    below = sorted([x for x in W.all_elements() if W.bruhat_leq(x, w)],
                   key=lambda x: (-x.length, W.sort_key(x)))
    bars = {x: hecke_bar(H(W, x)) for x in below}
    c: dict[GroupElement, LaurentPoly] = {w: ONE}
    for y in below[1:]:
        rhs = ZERO
        for x, cx in c.items():
            if x != y:
                rhs = rhs + cx.bar() * bars[x].coeff(y)
        if rhs != -rhs.bar():
            raise ArithmeticError("bar-invariance system is inconsistent")
        pos = LaurentPoly({e: a for e, a in rhs.terms() if e > 0})
        if pos:
            c[y] = pos
    return HeckeElement(W, c)


def suite_hecke(W: CoxeterSystem, samples: int = 200, seed: int = 0) -> list[dict]:
    rng = random.Random(seed)
    assoc = _Tally("associativity of the Hecke product on random triples")
    for _ in range(samples):
        a, b, c = (random_hecke(W, rng) for _ in range(3))
        assoc.check(hecke_multiply(hecke_multiply(a, b), c) == hecke_multiply(a, hecke_multiply(b, c)),
                    lambda: [str(a), str(b), str(c)])
    bar_kl = _Tally("KL elements are bar invariant")
    tri = _Tally("KL elements are unitriangular with coefficients in vZ[v] below w")
    pos = _Tally("KL coefficients lie in vN[v]")
    inv = _Tally("standard inverses multiply back to the identity")
    for w in W.all_elements():
        h = kl_element(W, w)
        bar_kl.check(hecke_bar(h) == h, lambda: W.format(w))
        ok = h.coeff(w) == ONE and all(
            x == w or (W.bruhat_lt(x, w) and c.min_exp() >= 1) for x, c in h.terms.items())
        tri.check(ok, lambda: W.format(w))
        pos.check(all(c.is_nonneg() for c in h.terms.values()), lambda: W.format(w))
        inv.check(hecke_multiply(standard_inverse(W, w), H(W, w)) == H(W, W.identity),
                  lambda: W.format(w))
    invol = _Tally("bar is an involution on random elements")
    for _ in range(min(samples, 50)):
        a = random_hecke(W, rng)
        invol.check(hecke_bar(hecke_bar(a)) == a, lambda: str(a))
    out = [assoc.report(), bar_kl.report(), tri.report(), inv.report(), invol.report()]
    weyl = all(f.kind in ("A", "B") or (f.kind == "I2" and f.rank in (2, 3, 4, 6))
               for f in _flatten(W.spec))
    out.append(pos.report() if weyl else
               report(pos.claim, None, reason="not a Weyl group; positivity is reported only",
                      failed=pos.nfail))
    return out


def suite_kl_oracle(W: CoxeterSystem) -> list[dict]:
    t = _Tally("KL recursion agrees with the bar-invariance solver")
    for w in W.all_elements():
        t.check(kl_by_bar_solve(W, w) == kl_element(W, w), lambda: W.format(w))
    return [t.report()]


def suite_parabolic(W: CoxeterSystem) -> list[dict]:
    longest = _Tally("h_{w_I} = Σ_{x∈W_I} v^{l(w_I)-l(x)} H_x")
    mult = _Tally("H_x h_{w_I} = v^{-l(x)} h_{w_I} for x in W_I")
    square = _Tally("h_{w_K} h_{w_I} = π(K) h_{w_I} for K ⊂ I")
    for I in W.all_subsets():
        wI = W.longest_element(I)
        hI = kl_element(W, wI)
        elems = W.parabolic_elements(I)
        expect = HeckeElement(W, {x: LaurentPoly.monomial(wI.length - x.length) for x in elems})
        longest.check(hI == expect, lambda: W.format_subset(I))
        for x in elems:
            mult.check(hecke_multiply(H(W, x), hI) == hI.scale(LaurentPoly.monomial(-x.length)),
                       lambda: (W.format_subset(I), W.format(x)))
        for K in W.all_subsets():
            if K <= I:
                hK = kl_element(W, W.longest_element(K))
                square.check(hecke_multiply(hK, hI) == hI.scale(poincare_parabolic(W, K)[1]),
                             lambda: (W.format_subset(K), W.format_subset(I)))
    return [longest.report(), mult.report(), square.report()]


# ---------------------------------------------------------------------------
# double cosets


def suite_cosets(W: CoxeterSystem) -> list[dict]:
    part = _Tally("double cosets partition W")
    kil = _Tally("W_I ∩ p_- W_J p_-^-1 = W_K")
    how = _Tally("unique factorisation x = u p_- v with additive lengths")
    size = _Tally("|p| = |W_I| |W_J| / |W_K|")
    minmax = _Tally("p_- and p_+ are the unique shortest and longest elements")
    for I in W.all_subsets():
        WI = W.parabolic_elements(I)
        for J in W.all_subsets():
            WJ = W.parabolic_elements(J)
            cos = double_cosets(W, I, J)
            seen: dict[GroupElement, int] = {}
            for p in cos:
                for x in p.elements:
                    seen[x] = seen.get(x, 0) + 1
            part.check(len(seen) == W.order() and set(seen.values()) == {1},
                       lambda: (W.format_subset(I), W.format_subset(J)))
            for p in cos:
                K = p.kilmoyer
                pm, pmi = p.p_minus, W.inverse(p.p_minus)
                conj = {W.multiply(W.multiply(pm, y), pmi) for y in WJ}
                inter = {x for x in WI if x in conj}
                kil.check(inter == set(W.parabolic_elements(K)), lambda: repr(p))
                size.check(p.size * len(W.parabolic_elements(K)) == len(WI) * len(WJ),
                           lambda: repr(p))
                lens = [x.length for x in p.elements]
                minmax.check(lens.count(min(lens)) == 1 and lens.count(max(lens)) == 1
                             and p.p_minus.length == min(lens) and p.p_plus.length == max(lens),
                             lambda: repr(p))
                us = minimal_left_reps(W, I, K)
                counts: dict[GroupElement, int] = {}
                additive = True
                for u in us:
                    up = W.multiply(u, pm)
                    for y in WJ:
                        x = W.multiply(up, y)
                        counts[x] = counts.get(x, 0) + 1
                        if x.length != u.length + pm.length + y.length:
                            additive = False
                ok = additive and set(counts) == p.element_set and set(counts.values()) == {1}
                for x in p.elements:
                    u, y = howlett_factor(p, x)
                    ok = ok and W.multiply(W.multiply(u, pm), y) == x
                how.check(ok, lambda: repr(p))
    return [part.report(), kil.report(), how.report(), size.report(), minmax.report()]


def suite_poincare(W: CoxeterSystem) -> list[dict]:
    p1 = _Tally("l(p_+) - l(p_-) = l(w_I) + l(w_J) - l(w_K)")
    p2 = _Tally("π̃(p) π̃(K) = π̃(I) π̃(J)")
    p3 = _Tally("π(p) π(K) = π(I) π(J)")
    p4 = _Tally("π(p) is bar invariant")
    ratio = _Tally("π(K,q,L) / π(I,p,J) ∈ N[v, v^-1] for p ⊂ q")
    subsets = W.all_subsets()
    for I in subsets:
        tI, pI = poincare_parabolic(W, I)
        for J in subsets:
            tJ, pJ = poincare_parabolic(W, J)
            for p in double_cosets(W, I, J):
                tK, pK = p.poincare_IpJ
                K = p.kilmoyer
                p1.check(p.p_plus.length - p.p_minus.length
                         == W.longest_element(I).length + W.longest_element(J).length
                         - W.longest_element(K).length, lambda: repr(p))
                p2.check(p.poincare_tilde * tK == tI * tJ, lambda: repr(p))
                p3.check(p.poincare * pK == pI * pJ, lambda: repr(p))
                p4.check(p.poincare.bar() == p.poincare, lambda: repr(p))
                for Kb in subsets:
                    if not I <= Kb:
                        continue
                    for L in subsets:
                        if not J <= L:
                            continue
                        q = quotient(p, Kb, L)
                        try:
                            r = poincare_ratio(p, q)
                            ok = r.is_nonneg() and r * pK == q.poincare_IpJ[1]
                        except ArithmeticError:
                            ok = False
                        ratio.check(ok, lambda: (repr(p), repr(q)))
    return [p1.report(), p2.report(), p3.report(), p4.report(), ratio.report()]


def suite_length_defect(W: CoxeterSystem) -> list[dict]:
    t = _Tally("l(p_+) - l(x) = #{t ∈ T : x < tx ∈ p}")
    for I in W.all_subsets():
        for J in W.all_subsets():
            for p in double_cosets(W, I, J):
                for x in p.elements:
                    t.check(length_defect(x, p) == p.p_plus.length - x.length,
                            lambda: (repr(p), W.format(x)))
    return [t.report()]


# ---------------------------------------------------------------------------
# Schur algebroid


def _nested_pairs(W: CoxeterSystem):
    S = W.all_subsets()
    return [(J, K) for J in S for K in S if J <= K or K <= J]


def suite_translation(W: CoxeterSystem) -> list[dict]:
    t = _Tally("closed-form translation equals the *_J product with the standard generator")
    supp = _Tally("support of h *_J M(J,K) lies in the image or preimage of supp h")
    for I in W.all_subsets():
        for J, K in _nested_pairs(W):
            gen = standard_generator(W, J, K)
            for p in double_cosets(W, I, J):
                f = standard_elt(p)
                oracle = star(f, gen)
                t.check(translate_closed_form(f, K) == oracle,
                        lambda: (repr(p), W.format_subset(K)))
                if J <= K:
                    allowed = {quotient(p, I, K)}
                else:
                    allowed = {q for q in double_cosets(W, I, K) if quotient(q, I, J) == p}
                supp.check(set(oracle.coeffs) <= allowed, lambda: (repr(p), W.format_subset(K)))
    return [t.report(), supp.report()]


def suite_sandwich(W: CoxeterSystem) -> list[dict]:
    t = _Tally("M(I,∅) * H_x * M(∅,J) = v^{l(p_-)-l(x)} π(I,p,J) M_p")
    subsets = W.all_subsets()
    hw = {I: kl_element(W, W.longest_element(I)) for I in subsets}
    for x in W.all_elements():
        for J in subsets:
            right = hecke_multiply(H(W, x), hw[J])
            for I in subsets:
                prod = hecke_multiply(hw[I], right)
                scalar, p = sandwich(W, I, x, J)
                expect = embed_to_hecke(standard_elt(p)).scale(scalar)
                t.check(prod == expect, lambda: (W.format_subset(I), W.format(x), W.format_subset(J)))
    return [t.report()]


def suite_pairing(W: CoxeterSystem) -> list[dict]:
    t = _Tally("<M_p, M_q> = δ_{pq} v^{l(p_+)-l(p_-)} π(p)/π(J)")
    for I in W.all_subsets():
        for J in W.all_subsets():
            cos = double_cosets(W, I, J)
            for p in cos:
                f = standard_elt(p)
                for q in cos:
                    t.check(schur_pairing(f, standard_elt(q)) == schur_pairing_closed(p, q),
                            lambda: (repr(p), repr(q)))
    return [t.report()]


def suite_adjunction(W: CoxeterSystem, samples: int = 30, seed: int = 0) -> list[dict]:
    """<f *_J g, h> = <f, h *_K i(g)> on random triples."""
    from .algebroid import schur_i
    rng = random.Random(seed)
    t = _Tally("<f *_J g, h> = <f, h *_K i(g)>")
    assoc = _Tally("associativity of the algebroid product")
    subsets = W.all_subsets()

    def rnd(I, J):
        cos = double_cosets(W, I, J)
        return SchurElement(W, I, J, {rng.choice(cos): LaurentPoly.monomial(rng.randint(-2, 2),
                                                                        rng.choice([-1, 1, 2]))
                                      for _ in range(2)})
    for _ in range(samples):
        I, J, K, L = (rng.choice(subsets) for _ in range(4))
        f, g, h = rnd(I, J), rnd(J, K), rnd(I, K)
        t.check(schur_pairing(star(f, g), h) == schur_pairing(f, star(h, schur_i(g))),
                lambda: (str(f), str(g), str(h)))
        k = rnd(K, L)
        assoc.check(star(star(f, g), k) == star(f, star(g, k)), lambda: (str(f), str(g), str(k)))
    return [t.report(), assoc.report()]


def suite_kl_schur(W: CoxeterSystem) -> list[dict]:
    ident = _Tally("the KL element of p embeds as h_{p_+}")
    dual = _Tally("KL elements of the algebroid are bar invariant")
    for I in W.all_subsets():
        for J in W.all_subsets():
            for p in double_cosets(W, I, J):
                h = embed_to_hecke(kl_elt(p))
                ident.check(h == kl_element(W, p.p_plus), lambda: repr(p))
                dual.check(hecke_bar(h) == h, lambda: repr(p))
    return [ident.report(), dual.report()]


def suite_translation_chains(W: CoxeterSystem, cap: int = 12) -> list[dict]:
    t = _Tally("every coset has a unitriangular translation chain")
    longest = 0
    for I in W.all_subsets():
        for J in W.all_subsets():
            for p in double_cosets(W, I, J):
                try:
                    chain = translation_sequence(p, cap)
                except SearchExhausted as exc:
                    t.check(False, lambda: str(exc))
                    continue
                # replay through the *_J oracle
                f = standard_elt(coset_of(W, W.identity, chain[0], chain[0]))
                for a, b in zip(chain, chain[1:]):
                    f = star(f, standard_generator(W, a, b))
                longest = max(longest, len(chain) - 1)
                t.check(chain[0] == I and chain[-1] == J and is_unitriangular(f, p) == p,
                        lambda: (repr(p), [W.format_subset(c) for c in chain]))
    return [t.report(longest_chain=longest, cap=cap)]


def suite_bs_positivity(W: CoxeterSystem, max_steps: int = 5) -> list[dict]:
    t = _Tally("KL decompositions of Bott-Samelson characters have coefficients in N[v, v^-1]")
    memo: dict[SchurElement, bool] = {}
    nchains = 0
    for chain in chains(W, max_steps):
        nchains += 1
        f = bott_samelson_char(W, chain)
        ok = memo.get(f)
        if ok is None:
            ok = memo[f] = all(c.is_nonneg() for c in decompose_kl(f).values())
        t.check(ok, lambda: [W.format_subset(c) for c in chain])
    return [t.report(chains=nchains, distinct_characters=len(memo))]


# ---------------------------------------------------------------------------
# Demazure calculus


def _needs_rep(W: CoxeterSystem, claim: str) -> dict | None:
    if not W.has_rep:
        return report(claim, None, reason="no rational reflection representation")
    return None


def _coset_sample(W: CoxeterSystem, limit: int | None):
    out = [p for I in W.all_subsets() for J in W.all_subsets() for p in double_cosets(W, I, J)]
    if limit is not None and len(out) > limit:
        rng = random.Random(0)
        out = rng.sample(out, limit)
    return out


def suite_phi(W: CoxeterSystem, max_cosets: int | None = None, dims_cap: int = 4) -> list[dict]:
    skip = _needs_rep(W, "φ-basis")
    if skip:
        return [skip]
    rep = build_rep(W)
    basis = _Tally("φ_x has degree 2(l(p_+)-l(x)), support below x, and lies in R(p)")
    rank = _Tally("graded rank of the φ-basis equals π̃(p)")
    prop = _Tally("left-first and right-first constructions are proportional")
    span = _Tally("φ-basis degrees account for dim R(p)_d")
    mp = _Tally("m_p is invariant under the Kilmoyer subgroup")
    n = rep.dim
    for p in _coset_sample(W, max_cosets):
        try:
            a = phi_basis(rep, p)
            b = phi_basis(rep, p, "right")
        except AssertionError as exc:
            basis.check(False, lambda: (repr(p), str(exc)))
            continue
        basis.check(True, None)
        try:
            graded_rank_check(rep, p, a)
            rank.check(True, None)
        except AssertionError as exc:
            rank.check(False, lambda: (repr(p), str(exc)))
        prop.check(all(a[x].proportional_to(b[x]) is not None for x in p.elements),
                   lambda: repr(p))
        try:
            m_p(rep, p)
            mp.check(True, None)
        except AssertionError:
            mp.check(False, lambda: repr(p))
        if dims_cap >= 0 and len(p.elements) <= 6:
            from math import comb
            got = rx_dims(rep, p.elements, dims_cap)
            want = []
            for d in range(0, dims_cap + 1, 2):
                want.append(sum(comb(n - 1 + (d - f.degree()) // 2, (d - f.degree()) // 2)
                                for f in a.values() if f.degree() <= d))
            span.check(got == want, lambda: (repr(p), got, want))
    return [basis.report(), rank.report(), prop.report(), span.report(), mp.report()]


def suite_induced_invariants(W: CoxeterSystem, cap: int = 8) -> list[dict]:
    skip = _needs_rep(W, "induced invariants")
    if skip:
        return [skip]
    rep = build_rep(W)
    t = _Tally("W_K × W_L invariants of R(p) match R^K ⊗ R^{K''} ⊗ R^L degreewise")
    subsets = W.all_subsets()
    for I in subsets:
        for J in subsets:
            for p in double_cosets(W, I, J):
                for K in subsets:
                    if not K <= I:
                        continue
                    for L in subsets:
                        if L <= J:
                            r = verify_induced_invariants(rep, p, K, L, cap)
                            t.check(r["status"] == "ok", lambda: r["detail"])
    return [t.report(cap=cap)]


def suite_hilbert(W: CoxeterSystem, cap: int = 8) -> list[dict]:
    skip = _needs_rep(W, "parabolic invariants")
    if skip:
        return [skip]
    rep = build_rep(W)
    t = _Tally("dims of R^{W_K} equal HS(R)/π̃(K) degreewise")
    for K in W.all_subsets():
        a = hilbert_parabolic(rep, K, cap)
        b = hilbert_parabolic_series(W, rep.dim, K, cap)
        t.check(a == b, lambda: (W.format_subset(K), a, b))
    return [t.report(cap=cap)]


def suite_difference_kernel(W: CoxeterSystem, cap: int = 6) -> list[dict]:
    skip = _needs_rep(W, "exact sequence")
    if skip:
        return [skip]
    rep = build_rep(W)
    t = _Tally("kernel of the difference map equals R(X) degreewise")
    for I in W.all_subsets():
        for J in W.all_subsets():
            for p in double_cosets(W, I, J):
                r = exact_sequence_check(rep, p.elements, cap)
                t.check(r["status"] == "ok", lambda: r["detail"])
    return [t.report(cap=cap)]


SUITES: dict[str, Callable[..., list[dict]]] = {
    "hecke": suite_hecke,
    "kl_oracle": suite_kl_oracle,
    "parabolic": suite_parabolic,
    "cosets": suite_cosets,
    "poincare": suite_poincare,
    "length_defect": suite_length_defect,
    "translation": suite_translation,
    "sandwich": suite_sandwich,
    "pairing": suite_pairing,
    "adjunction": suite_adjunction,
    "kl_schur": suite_kl_schur,
    "translation_chains": suite_translation_chains,
    "bs_positivity": suite_bs_positivity,
    "phi": suite_phi,
    "induced_invariants": suite_induced_invariants,
    "hilbert": suite_hilbert,
    "difference_kernel": suite_difference_kernel,
}


def run_suite(W: CoxeterSystem, name: str, **caps) -> list[dict]:
    if name not in SUITES:
        raise KeyError(name)
    fn = SUITES[name]
    accepted = fn.__code__.co_varnames[:fn.__code__.co_argcount]
    reports = fn(W, **{k: v for k, v in caps.items() if k in accepted and v is not None})
    for r in reports:
        r["suite"] = name
    return reports


def run_suites(W: CoxeterSystem, names, **caps) -> list[dict]:
    out = []
    for name in names:
        out.extend(run_suite(W, name, **caps))
    return out


def summarize(reports: list[dict]) -> bool:
    return all(r["status"] != "mismatch" for r in reports)
