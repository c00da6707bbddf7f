"""
(W_I, W_J)-double cosets: minimal and maximal representatives, the Kilmoyer
subset ``K = I ∩ p_- J p_-^-1``, Howlett factorisations and Poincaré
polynomials.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable

from .coxeter import CoxeterSystem, GroupElement
from .laurent import LaurentPoly

__all__ = [
    "DoubleCoset", "double_cosets", "coset_of", "kilmoyer", "howlett_factor",
    "poincare_parabolic", "poincare_coset", "coset_bruhat_leq", "quotient",
    "length_defect", "poincare_ratio", "minimal_left_reps",
]


class DoubleCoset:
    """W_I p_- W_J, keyed by (I, J, p_-)."""

    def __init__(self, system: CoxeterSystem, I: frozenset[int], J: frozenset[int],
                 p_minus: GroupElement, elements: list[GroupElement] | None = None):
        self.system = system
        self.I = frozenset(I)
        self.J = frozenset(J)
        self.p_minus = p_minus
        if elements is not None:
            self.__dict__["elements"] = elements

    def __eq__(self, other):
        if not isinstance(other, DoubleCoset):
            return NotImplemented
        return (self.p_minus == other.p_minus and self.I == other.I
                and self.J == other.J)

    def __hash__(self):
        return hash((self.I, self.J, self.p_minus))

    def __repr__(self):
        W = self.system
        return (f"DoubleCoset(I={W.format_subset(self.I)}, J={W.format_subset(self.J)}, "
                f"p_min={W.format(self.p_minus)})")

    @cached_property
    def elements(self) -> list[GroupElement]:
        W = self.system
        seen = {self.p_minus}
        frontier = [self.p_minus]
        while frontier:
            nxt = []
            for w in frontier:
                for i in self.I:
                    x = W.lmul_gen(i, w)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
                for j in self.J:
                    x = W.rmul_gen(w, j)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return sorted(seen, key=W.sort_key)

    @cached_property
    def element_set(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    def __contains__(self, x: GroupElement) -> bool:
        return x in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def p_plus(self) -> GroupElement:
        return self.elements[-1]

    @cached_property
    def kilmoyer(self) -> frozenset[int]:
        return kilmoyer(self)

    @cached_property
    def w_IpJ(self) -> GroupElement:
        return self.system.longest_element(self.kilmoyer)

    @cached_property
    def poincare_tilde(self) -> LaurentPoly:
        """Σ_{x∈p} v^{-2(ℓ(x)-ℓ(p_-))}, normalised to constant term 1."""
        return LaurentPoly(_length_counts(self.elements, -2)).shift(2 * self.p_minus.length)

    @cached_property
    def poincare(self) -> LaurentPoly:
        return self.poincare_tilde.shift(self.p_plus.length - self.p_minus.length)

    @cached_property
    def poincare_IpJ(self) -> tuple[LaurentPoly, LaurentPoly]:
        """(π̃(I,p,J), π(I,p,J)), the Poincaré polynomials of the Kilmoyer subset."""
        return poincare_parabolic(self.system, self.kilmoyer)

    def to_json(self) -> dict:
        W = self.system
        return {"I": W.subset_labels(self.I), "J": W.subset_labels(self.J),
                "p_min": W.format(self.p_minus), "p_max": W.format(self.p_plus),
                "size": self.size}


def _length_counts(elems: Iterable[GroupElement], scale: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in elems:
        out[scale * w.length] = out.get(scale * w.length, 0) + 1
    return out


class _CosetIndex:
    def __init__(self, W: CoxeterSystem, I: frozenset[int], J: frozenset[int]):
        self.cosets: list[DoubleCoset] = []
        self.of: dict[GroupElement, DoubleCoset] = {}
        # ShortLex scan: the first unseen element of each coset is its p_-
        for w in W.all_elements():
            if w in self.of:
                continue
            p = DoubleCoset(W, I, J, w)
            self.cosets.append(p)
            for x in p.elements:
                self.of[x] = p


def _index(W: CoxeterSystem, I, J) -> _CosetIndex:
    I, J = frozenset(I), frozenset(J)
    return W._once(("cosets", I, J), lambda: _CosetIndex(W, I, J))


def double_cosets(W: CoxeterSystem, I: Iterable[int], J: Iterable[int]) -> list[DoubleCoset]:
    """All (W_I, W_J)-double cosets, ordered by (ℓ(p_-), ShortLex of p_-)."""
    return _index(W, I, J).cosets


def coset_of(W: CoxeterSystem, x: GroupElement, I: Iterable[int], J: Iterable[int]) -> DoubleCoset:
    return _index(W, I, J).of[x]


def kilmoyer(p: DoubleCoset) -> frozenset[int]:
    """K ⊂ I with W_I ∩ p_- W_J p_-^-1 = W_K: the s in I with p_-^-1 s p_- in J."""
    W = p.system
    pm, pmi = p.p_minus, W.inverse(p.p_minus)
    gens = {W.generators[j]: j for j in p.J}
    return frozenset(i for i in p.I
                     if W.multiply(W.multiply(pmi, W.generators[i]), pm) in gens)


def minimal_left_reps(W: CoxeterSystem, I: Iterable[int], K: Iterable[int]) -> list[GroupElement]:
    """D_K ∩ W_I: elements u of W_I with us > u for all s in K."""
    K = frozenset(K)
    return [u for u in W.parabolic_elements(I)
            if not any(W.is_right_descent(u, k) for k in K)]


def howlett_factor(p: DoubleCoset, x: GroupElement) -> tuple[GroupElement, GroupElement]:
    """The unique (u, v) with u in D_K ∩ W_I, v in W_J and x = u p_- v."""
    if x not in p:
        raise ValueError(f"{p.system.format(x)} is not in {p!r}")
    W = p.system
    pmi = W.inverse(p.p_minus)
    for u in minimal_left_reps(W, p.I, p.kilmoyer):
        y = W.multiply(W.multiply(pmi, W.inverse(u)), x)
        if W.in_parabolic(y, p.J):
            return u, y
    raise AssertionError(f"no Howlett factorisation of {W.format(x)} in {p!r}")


def poincare_parabolic(W: CoxeterSystem, I: Iterable[int]) -> tuple[LaurentPoly, LaurentPoly]:
    """(π̃(I), π(I)) with π̃(I) = Σ_{w in W_I} v^{-2ℓ(w)} and π(I) = v^{ℓ(w_I)} π̃(I)."""
    I = frozenset(I)

    def build():
        elems = W.parabolic_elements(I)
        pt = LaurentPoly(_length_counts(elems, -2))
        return pt, pt.shift(elems[-1].length)
    return W._once(("poincare", I), build)


def poincare_coset(p: DoubleCoset) -> tuple[LaurentPoly, LaurentPoly]:
    return p.poincare_tilde, p.poincare


def coset_bruhat_leq(p: DoubleCoset, q: DoubleCoset) -> bool:
    """p <= q iff p_- <= q_-."""
    if (p.I, p.J) != (q.I, q.J):
        raise ValueError("cosets for different (I, J)")
    return p.system.bruhat_leq(p.p_minus, q.p_minus)


def quotient(p: DoubleCoset, K: Iterable[int], L: Iterable[int]) -> DoubleCoset:
    """The (W_K, W_L)-coset containing p; needs I ⊂ K and J ⊂ L."""
    K, L = frozenset(K), frozenset(L)
    if not (p.I <= K and p.J <= L):
        raise ValueError("quotient needs I ⊂ K and J ⊂ L")
    return coset_of(p.system, p.p_minus, K, L)


def length_defect(x: GroupElement, p: DoubleCoset) -> int:
    """|{t in T : x < tx in p}|."""
    if x not in p:
        raise ValueError("x is not in p")
    W = p.system
    n = 0
    for t in W.reflections():
        tx = W.multiply(t, x)
        if tx.length > x.length and tx in p:
            n += 1
    return n


def poincare_ratio(p: DoubleCoset, q: DoubleCoset) -> LaurentPoly:
    """π(K,q,L) / π(I,p,J) for p ⊂ q, I ⊂ K, J ⊂ L; exact with nonnegative coefficients."""
    if not (p.I <= q.I and p.J <= q.J):
        raise ValueError("poincare_ratio needs I ⊂ K and J ⊂ L")
    if p.p_minus not in q:
        raise ValueError("poincare_ratio needs p ⊂ q")
    num = q.poincare_IpJ[1]
    den = p.poincare_IpJ[1]
    r = num.divexact(den)
    if not r.is_nonneg() and r:
        raise ArithmeticError(f"Poincaré ratio {r} has negative coefficients")
    return r

