"""
Hom-spaces ``ᴵHᴶ = h_{w_I} H ∩ H h_{w_J}`` of the Schur algebroid.

Elements are stored in the standard basis ``ᴵM_pᴶ = Σ_{x∈p} v^{ℓ(p_+)-ℓ(x)} H_x``.
The product ``*_J`` is computed in the Hecke algebra and divided exactly by
``π(J)``; the closed multiplication formulas are kept separate so they can be
checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterSystem, GroupElement
from .cosets import (DoubleCoset, coset_bruhat_leq, coset_of, double_cosets,
                     poincare_parabolic, quotient)
from .hecke import (HeckeElement, anti_involution_i, hecke_multiply, kl_element)
from .laurent import ONE, ZERO, InexactDivision, LaurentPoly

__all__ = [
    "SchurElement", "NotInSchurSpace", "SearchExhausted", "standard_elt",
    "kl_elt", "embed_to_hecke", "extract_from_hecke", "star",
    "standard_generator", "translate_closed_form", "sandwich", "schur_i",
    "schur_pairing", "schur_pairing_closed", "translation_sequence",
    "bott_samelson_char", "decompose_kl", "decomposition_report",
    "hom_rank_predict", "is_unitriangular", "bruhat_maxima", "chains",
    "TranslationStep", "chain_to_steps", "steps_to_chain",
]


class NotInSchurSpace(ValueError):
    """A Hecke element failed the ᴵHᴶ membership test; carries the remainder."""

    def __init__(self, remainder: HeckeElement, I, J):
        W = remainder.system
        super().__init__(
            f"element is not in {W.format_subset(I)}H{W.format_subset(J)}; "
            f"remainder {remainder}")
        self.remainder = remainder


class SearchExhausted(RuntimeError):
    pass


class SchurElement:
    """Element of ᴵHᴶ as a sparse map double coset -> Laurent coefficient."""

    __slots__ = ("system", "I", "J", "coeffs", "_hash")

    def __init__(self, system: CoxeterSystem, I, J,
                 coeffs: Mapping[DoubleCoset, LaurentPoly] | None = None):
        self.system = system
        self.I = frozenset(I)
        self.J = frozenset(J)
        self.coeffs: dict[DoubleCoset, LaurentPoly] = {}
        for p, c in (coeffs or {}).items():
            if (p.I, p.J) != (self.I, self.J):
                raise ValueError(f"{p!r} is not a ({self.I}, {self.J}) coset")
            if c:
                self.coeffs[p] = c
        self._hash = None

    def coeff(self, p: DoubleCoset) -> LaurentPoly:
        return self.coeffs.get(p, ZERO)

    def support(self) -> list[DoubleCoset]:
        W = self.system
        return sorted(self.coeffs, key=lambda p: W.sort_key(p.p_minus))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "SchurElement") -> None:
        if (other.system, other.I, other.J) != (self.system, self.I, self.J):
            raise ValueError("Schur elements from different hom-spaces")

    def __add__(self, other: "SchurElement") -> "SchurElement":
        self._same(other)
        c = dict(self.coeffs)
        for p, a in other.coeffs.items():
            c[p] = c.get(p, ZERO) + a
        return SchurElement(self.system, self.I, self.J, c)

    def __neg__(self) -> "SchurElement":
        return self.scale(-1)

    def __sub__(self, other: "SchurElement") -> "SchurElement":
        return self + (-other)

    def scale(self, a: LaurentPoly | int) -> "SchurElement":
        return SchurElement(self.system, self.I, self.J,
                            {p: c * a for p, c in self.coeffs.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def __eq__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        return ((self.system, self.I, self.J) == (other.system, other.I, other.J)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.I, self.J, frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self):
        if not self.coeffs:
            return "0"
        W = self.system
        parts = []
        for p in self.support():
            c = self.coeffs[p]
            basis = f"M[{W.format(p.p_minus)}]"
            parts.append(basis if c == ONE else f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        W = self.system
        return f"SchurElement({W.format_subset(self.I)}, {W.format_subset(self.J)}: {self})"

    def to_json(self) -> dict:
        W = self.system
        return {"I": W.subset_labels(self.I), "J": W.subset_labels(self.J),
                "terms": [{"p_min": W.format(p.p_minus), "coeff": self.coeffs[p].to_json()}
                          for p in self.support()]}

    @classmethod
    def from_json(cls, W: CoxeterSystem, obj: Mapping) -> "SchurElement":
        I, J = W.subset(obj["I"]), W.subset(obj["J"])
        return cls(W, I, J, {coset_of(W, W.parse(t["p_min"]), I, J): LaurentPoly.from_json(t["coeff"])
                             for t in obj["terms"]})


# ---------------------------------------------------------------------------
# bases and the Hecke embedding


def standard_elt(p: DoubleCoset) -> SchurElement:
    return SchurElement(p.system, p.I, p.J, {p: ONE})


def _standard_in_hecke(p: DoubleCoset) -> HeckeElement:
    cache = p.system._once("std_hecke", dict)
    h = cache.get(p)
    if h is None:
        top = p.p_plus.length
        h = cache[p] = HeckeElement(p.system, {x: LaurentPoly.monomial(top - x.length)
                                               for x in p.elements})
    return h


def embed_to_hecke(f: SchurElement) -> HeckeElement:
    W = f.system
    out: dict[GroupElement, LaurentPoly] = {}
    for p, c in f.coeffs.items():
        top = p.p_plus.length
        for x in p.elements:
            out[x] = c.shift(top - x.length)
    return HeckeElement(W, out)


def extract_from_hecke(h: HeckeElement, I, J) -> SchurElement:
    """Read the H_{p_+} coefficient per coset; anything left over is an error."""
    W = h.system
    I, J = frozenset(I), frozenset(J)
    coeffs = {}
    for p in double_cosets(W, I, J):
        a = h.coeff(p.p_plus)
        if a:
            coeffs[p] = a
    f = SchurElement(W, I, J, coeffs)
    rem = h - embed_to_hecke(f)
    if not rem.is_zero():
        raise NotInSchurSpace(rem, I, J)
    return f


def kl_elt(p: DoubleCoset) -> SchurElement:
    """ᴵH_pᴶ = h_{p_+}, read off in the standard basis."""
    cache = p.system._once("kl_elt", dict)
    f = cache.get(p)
    if f is None:
        h = kl_element(p.system, p.p_plus)
        try:
            f = extract_from_hecke(h, p.I, p.J)
        except NotInSchurSpace as exc:
            raise AssertionError(f"KL element of {p!r} left ᴵHᴶ: {exc}") from exc
        cache[p] = f
    return f


def schur_i(g: SchurElement) -> SchurElement:
    """The anti-involution i restricted to ᴵHᴶ -> ᴶHᴵ."""
    return extract_from_hecke(anti_involution_i(embed_to_hecke(g)), g.J, g.I)


# ---------------------------------------------------------------------------
# products


def star(f: SchurElement, g: SchurElement) -> SchurElement:
    """f *_J g = (1/π(J)) f g, computed in H."""
    if f.system is not g.system or f.J != g.I:
        raise ValueError("star needs f in ᴵHᴶ and g in ᴶHᴷ")
    W = f.system
    prod = hecke_multiply(embed_to_hecke(f), embed_to_hecke(g))
    piJ = poincare_parabolic(W, f.J)[1]
    try:
        prod = HeckeElement(W, {x: c.divexact(piJ) for x, c in prod.terms.items()})
    except InexactDivision as exc:
        raise ArithmeticError(f"product not divisible by π(J) = {piJ}") from exc
    return extract_from_hecke(prod, f.I, g.J)


def standard_generator(W: CoxeterSystem, J, K) -> SchurElement:
    """ᴶMᴷ = ᴶM_pᴷ for p = W_J W_K; needs J ⊂ K or K ⊂ J."""
    J, K = frozenset(J), frozenset(K)
    if not (J <= K or K <= J):
        raise ValueError("standard generators need J ⊂ K or K ⊂ J")
    return standard_elt(coset_of(W, W.identity, J, K))


def translate_closed_form(f: SchurElement, K) -> SchurElement:
    """f *_J ᴶMᴷ by the closed multiplication formulas on the standard basis."""
    W = f.system
    J, K = f.J, frozenset(K)
    I = f.I
    out: dict[DoubleCoset, LaurentPoly] = {}
    if K <= J:
        for p, c in f.coeffs.items():
            top = p.p_plus.length
            for q in _subcosets(p, K):
                out[q] = out.get(q, ZERO) + c.shift(top - q.p_plus.length)
    elif J <= K:
        for p, c in f.coeffs.items():
            q = quotient(p, I, K)
            r = q.poincare_IpJ[1].divexact(p.poincare_IpJ[1])
            out[q] = out.get(q, ZERO) + (c * r).shift(q.p_minus.length - p.p_minus.length)
    else:
        raise ValueError("translation needs J ⊂ K or K ⊂ J")
    return SchurElement(W, I, K, out)


def _subcosets(p: DoubleCoset, K: frozenset[int]) -> list[DoubleCoset]:
    """The (W_I, W_K)-cosets inside p (K ⊂ J)."""
    cache = p.system._once("subcosets", dict)
    key = (p, K)
    r = cache.get(key)
    if r is None:
        W = p.system
        seen: dict[DoubleCoset, None] = {}
        for x in p.elements:
            seen.setdefault(coset_of(W, x, p.I, K))
        r = cache[key] = list(seen)
    return r


def sandwich(W: CoxeterSystem, I, x: GroupElement, J) -> tuple[LaurentPoly, DoubleCoset]:
    """ᴵM^∅ * H_x * ^∅Mᴶ = scalar · ᴵM_pᴶ with scalar v^{ℓ(p_-)-ℓ(x)} π(I,p,J)."""
    p = coset_of(W, x, I, J)
    return p.poincare_IpJ[1].shift(p.p_minus.length - x.length), p


# ---------------------------------------------------------------------------
# bilinear form


def schur_pairing(f: SchurElement, g: SchurElement) -> LaurentPoly:
    """Coefficient of H_e in f *_J i(g)."""
    f._same(g)
    return embed_to_hecke(star(f, schur_i(g))).coeff(f.system.identity)


def schur_pairing_closed(p: DoubleCoset, q: DoubleCoset) -> LaurentPoly:
    """⟨ᴵM_pᴶ, ᴵM_qᴶ⟩ = v^{ℓ(p_+)-ℓ(p_-)} π(p)/π(J) δ_{p,q}."""
    if p != q:
        return ZERO
    piJ = poincare_parabolic(p.system, p.J)[1]
    return p.poincare.divexact(piJ).shift(p.p_plus.length - p.p_minus.length)


def hom_rank_predict(ch_delta: SchurElement, ch_nabla: SchurElement) -> LaurentPoly:
    """bar⟨ch_Δ(M), ch_∇(N)⟩: graded rank of Hom(M, N)[-ℓ(w_J)] over R^I."""
    return schur_pairing(ch_delta, ch_nabla).bar()


# ---------------------------------------------------------------------------
# translation sequences and Bott-Samelson characters


def bruhat_maxima(cosets: Iterable[DoubleCoset]) -> list[DoubleCoset]:
    cs = list(cosets)
    out = [p for p in cs if not any(q != p and coset_bruhat_leq(p, q) for q in cs)]
    return sorted(out, key=lambda p: p.system.sort_key(p.p_minus))


def is_unitriangular(f: SchurElement, p: DoubleCoset | None = None) -> DoubleCoset | None:
    """If f = M_q + Σ_{q'<q} λ M_{q'}, return q (checking q == p when given)."""
    tops = bruhat_maxima(f.coeffs)
    if len(tops) != 1:
        return None
    q = tops[0]
    if f.coeffs[q] != ONE or (p is not None and q != p):
        return None
    return q


@dataclass(frozen=True)
class TranslationStep:
    """One translation J -> K between nested subsets."""

    source: frozenset[int]
    target: frozenset[int]

    def __post_init__(self):
        if not (self.source <= self.target or self.target <= self.source):
            raise ValueError("translation step between non-nested subsets")

    @property
    def direction(self) -> str:
        return "onto_wall" if self.source <= self.target else "out_of_wall"


def chain_to_steps(chain: Sequence[Iterable[int]]) -> list[TranslationStep]:
    chain = [frozenset(c) for c in chain]
    return [TranslationStep(a, b) for a, b in zip(chain, chain[1:])]


def steps_to_chain(steps: Sequence[TranslationStep]) -> list[frozenset[int]]:
    if not steps:
        raise ValueError("empty step list")
    for a, b in zip(steps, steps[1:]):
        if a.target != b.source:
            raise ValueError("translation steps do not compose")
    return [steps[0].source] + [s.target for s in steps]


def _check_chain(W: CoxeterSystem, chain: Sequence[frozenset[int]]) -> None:
    if not chain:
        raise ValueError("empty translation chain")
    for a, b in zip(chain, chain[1:]):
        if not (a <= b or b <= a):
            raise ValueError(f"{W.format_subset(a)} and {W.format_subset(b)} are not nested")


def bott_samelson_char(W: CoxeterSystem,
                       chain: Sequence[Iterable[int]] | Sequence[TranslationStep]) -> SchurElement:
    """ᴶ⁰Mᴶ¹ *_{J_1} ᴶ¹Mᴶ² * ... for the chain (J_0, ..., J_n), starting from M of W_{J_0}."""
    if chain and isinstance(chain[0], TranslationStep):
        chain = steps_to_chain(chain)
    chain = [frozenset(c) for c in chain]
    _check_chain(W, chain)
    f = standard_elt(coset_of(W, W.identity, chain[0], chain[0]))
    for K in chain[1:]:
        f = translate_closed_form(f, K)
    return f


def _neighbours(W: CoxeterSystem, J: frozenset[int]) -> list[frozenset[int]]:
    return [K for K in W.all_subsets() if K != J and (K <= J or J <= K)]


def chains(W: CoxeterSystem, max_steps: int, start: Iterable[int] | None = None):
    """All strictly nested chains with at most ``max_steps`` translations, depth first."""
    starts = W.all_subsets() if start is None else [frozenset(start)]
    stack = [[s] for s in reversed(starts)]
    while stack:
        ch = stack.pop()
        yield ch
        if len(ch) <= max_steps:
            for K in reversed(_neighbours(W, ch[-1])):
                stack.append(ch + [K])


class _TranslationSearch:
    """Breadth-first search over chains from a fixed I, deduplicated by (J, product)."""

    def __init__(self, W: CoxeterSystem, I: frozenset[int]):
        self.W = W
        self.I = I
        start = standard_elt(coset_of(W, W.identity, I, I))
        self.found: dict[DoubleCoset, list[frozenset[int]]] = {}
        self.seen = {start}
        self.layer = [([I], start)]
        self.depth = 0
        self._record(self.layer)

    def _record(self, layer):
        for ch, f in layer:
            q = is_unitriangular(f)
            if q is not None and q not in self.found:
                self.found[q] = ch

    def step(self) -> bool:
        nxt = []
        for ch, f in self.layer:
            for K in _neighbours(self.W, ch[-1]):
                g = translate_closed_form(f, K)
                if g not in self.seen:
                    self.seen.add(g)
                    nxt.append((ch + [K], g))
        self.depth += 1
        self.layer = nxt
        self._record(nxt)
        return bool(nxt)


def translation_sequence(p: DoubleCoset, cap: int = 12) -> list[frozenset[int]]:
    """A nested chain I = J_0, ..., J_n = J whose product is ᴵM_pᴶ + lower terms."""
    W = p.system
    cache = W._once("translation_search", dict)
    search = cache.get(p.I)
    if search is None:
        search = cache[p.I] = _TranslationSearch(W, p.I)
    while p not in search.found:
        if search.depth >= cap or not search.step():
            raise SearchExhausted(
                f"no unitriangular chain for {p!r} within {cap} steps")
    ch = search.found[p]
    if len(ch) - 1 > cap:
        raise SearchExhausted(f"shortest chain for {p!r} exceeds {cap} steps")
    return ch


def decompose_kl(f: SchurElement) -> dict[DoubleCoset, LaurentPoly]:
    """Coefficients of f in the KL basis, eliminating from Bruhat-maximal cosets down."""
    out: dict[DoubleCoset, LaurentPoly] = {}
    while not f.is_zero():
        p = bruhat_maxima(f.coeffs)[0]
        c = f.coeffs[p]
        out[p] = c
        f = f - kl_elt(p).scale(c)
    return out


def decomposition_report(dec: Mapping[DoubleCoset, LaurentPoly]) -> list[dict]:
    return [{"p": p.system.format(p.p_minus), "coeff": c.to_json(),
             "positive": c.is_nonneg()} for p, c in dec.items()]
