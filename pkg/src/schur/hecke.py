"""
The Hecke algebra of a finite Coxeter group over ``Z[v, v^-1]``: standard
basis products, bar involution, the anti-involution ``i``, the bilinear form
and the Kazhdan-Lusztig basis.

Normalisation: ``H_s H_w = H_{sw}`` if ``sw > w`` and
``(v^-1 - v) H_w + H_{sw}`` otherwise, so ``h_s = H_s + v``.
"""

from __future__ import annotations

import threading
from typing import Iterable, Mapping

import numpy as np

from .coxeter import CoxeterSystem, GroupElement
from .laurent import ONE, ZERO, LaurentPoly, v

__all__ = [
    "HeckeElement", "KLTable", "H", "hecke_multiply", "standard_inverse",
    "hecke_bar", "anti_involution_i", "hecke_pairing", "kl_element",
    "kl_polynomial", "kl_table",
]

_V_MINUS_VINV = LaurentPoly({1: 1, -1: -1})


class HeckeElement:
    """Immutable sparse combination of standard basis elements ``H_w``."""

    __slots__ = ("system", "terms")

    def __init__(self, system: CoxeterSystem,
                 terms: Mapping[GroupElement, LaurentPoly] | None = None):
        self.system = system
        self.terms: dict[GroupElement, LaurentPoly] = {
            w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, system, terms):
        obj = cls.__new__(cls)
        obj.system = system
        obj.terms = terms
        return obj

    def coeff(self, w: GroupElement) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def support(self) -> list[GroupElement]:
        return sorted(self.terms, key=self.system.sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "HeckeElement") -> None:
        if other.system is not self.system:
            raise ValueError("Hecke elements from different systems")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, ZERO) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return HeckeElement._raw(self.system, t)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.system, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, a: LaurentPoly | int) -> "HeckeElement":
        if isinstance(a, int):
            a = LaurentPoly.const(a)
        if not a:
            return HeckeElement(self.system)
        return HeckeElement._raw(self.system, {w: c * a for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.system is other.system and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        W = self.system
        parts = []
        for w in sorted(self.terms, key=lambda x: (-x.length, W.word(x))):
            c = self.terms[w]
            basis = f"H_{W.format(w)}"
            if c == ONE:
                parts.append(basis)
            elif len(c.terms()) == 1:
                parts.append(f"{c}*{basis}")
            else:
                parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement({self})"

    def to_json(self) -> dict[str, dict[str, int]]:
        W = self.system
        return {W.format(w): self.terms[w].to_json() for w in self.support()}

    @classmethod
    def from_json(cls, system: CoxeterSystem, obj: Mapping) -> "HeckeElement":
        return cls(system, {system.parse(k): LaurentPoly.from_json(c)
                            for k, c in obj.items()})


def H(system: CoxeterSystem, w: GroupElement | str | Iterable[int]) -> HeckeElement:
    """Standard basis element ``H_w``."""
    if isinstance(w, str):
        w = system.parse(w)
    elif not isinstance(w, GroupElement):
        w = system.from_word(w)
    return HeckeElement._raw(system, {w: ONE})


# ---------------------------------------------------------------------------
# dense product kernel


class _Tables:
    """Left-multiplication tables over the enumerated group."""

    def __init__(self, W: CoxeterSystem):
        self.elems = W.all_elements()
        self.index = {w: k for k, w in enumerate(self.elems)}
        n = len(self.elems)
        self.perm = []
        self.down = []
        for i in range(W.rank):
            p = np.empty(n, dtype=np.intp)
            d = np.zeros(n, dtype=bool)
            for k, w in enumerate(self.elems):
                sw = W.lmul_gen(i, w)
                p[k] = self.index[sw]
                d[k] = sw.length < w.length
            self.perm.append(p)
            self.down.append(np.nonzero(d)[0])
        self.maxlen = self.elems[-1].length
        self.words = [W.word(w) for w in self.elems]


def _tables(W: CoxeterSystem) -> _Tables:
    return W._once("hecke_tables", lambda: _Tables(W))


def _apply_gen(T: _Tables, i: int, A: np.ndarray) -> np.ndarray:
    """H_{s_i} * A, where A has one row per group element, one column per exponent."""
    B = A[T.perm[i]]
    d = T.down[i]
    if len(d):
        D = A[d]
        B[d, :-1] += D[:, 1:]
        B[d, 1:] -= D[:, :-1]
    return B


def _l1(h: HeckeElement) -> int:
    return sum(abs(a) for c in h.terms.values() for _, a in c.terms())


def hecke_multiply(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """Product in H; the left factor is decomposed letter by letter along ShortLex words."""
    h1._same(h2)
    W = h1.system
    if not h1.terms or not h2.terms:
        return HeckeElement(W)
    T = _tables(W)
    L = T.maxlen
    lo2 = min(c.min_exp() for c in h2.terms.values())
    hi2 = max(c.max_exp() for c in h2.terms.values())
    lo1 = min(c.min_exp() for c in h1.terms.values())
    hi1 = max(c.max_exp() for c in h1.terms.values())
    width = hi2 - lo2 + 2 * L + 1
    off2 = lo2 - L  # exponent of column 0 in the H_x * h2 arrays
    # each generator step at most triples the l1 norm
    bound = _l1(h1) * _l1(h2) * 3 ** L
    dtype = np.int64 if bound < 2 ** 62 else object
    n = len(T.elems)
    A0 = np.zeros((n, width), dtype=dtype)
    for w, c in h2.terms.items():
        row = T.index[w]
        for e, a in c.terms():
            A0[row, e - off2] = a
    memo: dict[int, np.ndarray] = {0: A0}

    def left_times(k: int) -> np.ndarray:
        # H_{elems[k]} * h2, peeling the first letter of the ShortLex word
        r = memo.get(k)
        if r is None:
            wd = T.words[k]
            rest = T.index[W.lmul_gen(wd[0], T.elems[k])]
            r = memo[k] = _apply_gen(T, wd[0], left_times(rest))
        return r

    off = lo1 + off2
    R = np.zeros((n, hi1 - lo1 + width), dtype=dtype)
    for x, c in h1.terms.items():
        Ax = left_times(T.index[x])
        for e, a in c.terms():
            j = e - lo1
            R[:, j:j + width] += a * Ax
    out: dict[GroupElement, LaurentPoly] = {}
    rows, cols = np.nonzero(R)
    cur = -1
    acc: dict[int, int] = {}
    for r, col in zip(rows.tolist(), cols.tolist()):
        if r != cur:
            if acc:
                out[T.elems[cur]] = LaurentPoly._raw(acc)
            cur, acc = r, {}
        acc[col + off] = int(R[r, col])
    if acc:
        out[T.elems[cur]] = LaurentPoly._raw(acc)
    return HeckeElement._raw(W, out)


# ---------------------------------------------------------------------------


def _gen_inverse(W: CoxeterSystem, i: int) -> HeckeElement:
    # H_s^{-1} = H_s + (v - v^-1) H_e
    return HeckeElement._raw(W, {W.generators[i]: ONE, W.identity: _V_MINUS_VINV})


def standard_inverse(W: CoxeterSystem, w: GroupElement) -> HeckeElement:
    """``H_w^{-1}`` as the reversed product of generator inverses."""
    cache = W._once("hecke_inverse", dict)
    r = cache.get(w)
    if r is None:
        out = H(W, W.identity)
        for i in W.word(w):
            out = hecke_multiply(_gen_inverse(W, i), out)
        r = cache[w] = out
    return r


def hecke_bar(h: HeckeElement) -> HeckeElement:
    """Bar involution: ``v -> v^-1`` and ``H_w -> H_{w^-1}^{-1}``."""
    W = h.system
    out = HeckeElement(W)
    for w, c in h.terms.items():
        out = out + standard_inverse(W, W.inverse(w)).scale(c.bar())
    return out


def anti_involution_i(h: HeckeElement) -> HeckeElement:
    W = h.system
    return HeckeElement._raw(W, {W.inverse(w): c for w, c in h.terms.items()})


def hecke_pairing(f: HeckeElement, g: HeckeElement) -> LaurentPoly:
    """Coefficient of ``H_e`` in ``f * i(g)``."""
    f._same(g)
    return hecke_multiply(f, anti_involution_i(g)).coeff(f.system.identity)


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig basis


class KLTable:
    """Cache of KL basis elements; entries are only ever added."""

    def __init__(self, W: CoxeterSystem):
        self.system = W
        self.columns: dict[GroupElement, HeckeElement] = {}
        self.computed = 0  # elements produced by the recursion (not the cache)
        self._lock = threading.Lock()

    def get(self, w: GroupElement) -> HeckeElement:
        col = self.columns.get(w)
        if col is None:
            col = self._compute(w)
            with self._lock:
                # concurrent writers produce identical columns
                col = self.columns.setdefault(w, col)
        return col

    def _compute(self, w: GroupElement) -> HeckeElement:
        W = self.system
        if w.length == 0:
            return H(W, W.identity)
        s = W.word(w)[0]
        ws = W.lmul_gen(s, w)
        hs = HeckeElement._raw(W, {W.generators[s]: ONE, W.identity: v})
        prev = self.get(ws)
        out = hecke_multiply(hs, prev)
        for z, c in sorted(prev.terms.items(), key=lambda t: W.sort_key(t[0])):
            if z == ws:
                continue
            mu = c.coeff(1)
            if mu and W.is_left_descent(s, z):
                out = out - self.get(z).scale(mu)
        self.computed += 1
        return out

    def polynomial(self, x: GroupElement, w: GroupElement) -> LaurentPoly:
        return self.get(w).coeff(x)

    def entries(self) -> dict[tuple[GroupElement, GroupElement], LaurentPoly]:
        return {(x, w): c for w, col in self.columns.items() for x, c in col.terms.items()}

    def load(self, entries: Mapping[tuple[GroupElement, GroupElement], LaurentPoly]) -> None:
        cols: dict[GroupElement, dict] = {}
        for (x, w), c in entries.items():
            cols.setdefault(w, {})[x] = c
        with self._lock:
            for w, t in cols.items():
                self.columns.setdefault(w, HeckeElement(self.system, t))


def kl_table(W: CoxeterSystem) -> KLTable:
    return W._once("kl_table", lambda: KLTable(W))


def kl_element(W: CoxeterSystem, w: GroupElement) -> HeckeElement:
    """The self-dual ``h_w = H_w + sum_{x<w} h_{x,w} H_x`` with ``h_{x,w}`` in ``v Z[v]``."""
    return kl_table(W).get(w)


def kl_polynomial(W: CoxeterSystem, x: GroupElement, w: GroupElement) -> LaurentPoly:
    return kl_table(W).polynomial(x, w)
