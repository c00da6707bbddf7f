"""
Concrete finite Coxeter groups: permutations (type A), signed permutations
(type B), dihedral groups and direct products of these.

Elements are interned per system, carry their length, and serialize as the
ShortLex-minimal reduced word (``"s1.s2.s1"``; the identity is ``"e"``).

>>> W = CoxeterSystem(CoxeterSpec.parse("A2"))
>>> s, t = W.generators
>>> W.format(W.multiply(W.multiply(s, t), s))
's1.s2.s1'
>>> len(W.all_elements()), [W.format(r) for r in W.reflections()]
(6, ['s1', 's2', 's1.s2.s1'])
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "CoxeterSpec", "CoxeterSystem", "GroupElement", "Subset",
    "MAX_GENERATORS", "SpecError",
]

MAX_GENERATORS = 16

# a generator subset I, J, K, L of S, as indices into system.generators
Subset = frozenset


class SpecError(ValueError):
    """Invalid Coxeter group specification."""


@dataclass(frozen=True)
class CoxeterSpec:
    kind: str  # "A", "B", "I2" or "product"
    rank: int = 0  # n for A/B, m for I2
    factors: tuple["CoxeterSpec", ...] = ()
    labels: tuple[str, ...] | None = None

    @classmethod
    def type_a(cls, n: int) -> "CoxeterSpec":
        return cls("A", n)

    @classmethod
    def type_b(cls, n: int) -> "CoxeterSpec":
        return cls("B", n)

    @classmethod
    def dihedral(cls, m: int) -> "CoxeterSpec":
        return cls("I2", m)

    @classmethod
    def product(cls, *factors: "CoxeterSpec") -> "CoxeterSpec":
        return cls("product", 0, tuple(factors))

    @property
    def num_generators(self) -> int:
        if self.kind == "product":
            return sum(f.num_generators for f in self.factors)
        if self.kind == "I2":
            return 2
        return self.rank

    def validate(self, cap: int = MAX_GENERATORS) -> None:
        if self.kind == "A":
            if self.rank < 1:
                raise SpecError(f"TypeA needs rank >= 1, got {self.rank}")
        elif self.kind == "B":
            if self.rank < 2:
                raise SpecError(f"TypeB needs rank >= 2, got {self.rank}")
        elif self.kind == "I2":
            if self.rank < 2:
                raise SpecError(f"Dihedral(m) needs m >= 2, got {self.rank}")
        elif self.kind == "product":
            if not self.factors:
                raise SpecError("empty product of Coxeter groups")
            for f in self.factors:
                f.validate(cap)
        else:
            raise SpecError(f"unknown Coxeter type {self.kind!r}")
        if self.num_generators > cap:
            raise SpecError(
                f"{self.num_generators} generators exceeds the cap of {cap}")
        if self.labels is not None:
            if len(self.labels) != self.num_generators:
                raise SpecError("label count does not match generator count")
            if len(set(self.labels)) != len(self.labels):
                raise SpecError("generator labels must be distinct")

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "product":
            out = {"type": "product",
                   "factors": [f.to_json() for f in self.factors]}
        elif self.kind == "I2":
            out = {"type": "I2", "m": self.rank}
        else:
            out = {"type": self.kind, "rank": self.rank}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj: dict | str) -> "CoxeterSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "type" not in obj:
            raise SpecError(f"bad Coxeter spec {obj!r}")
        kind = obj["type"]
        labels = tuple(obj["labels"]) if "labels" in obj else None
        if kind == "product":
            facs = tuple(cls.from_json(f) for f in obj.get("factors", []))
            return cls("product", 0, facs, labels)
        try:
            if kind == "I2":
                return cls("I2", int(obj["m"]), (), labels)
            if kind in ("A", "B"):
                return cls(kind, int(obj["rank"]), (), labels)
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad Coxeter spec {obj!r}: {exc}") from None
        raise SpecError(f"unknown Coxeter type {kind!r}")

    @classmethod
    def parse(cls, text: str) -> "CoxeterSpec":
        """Short form: ``A3``, ``B2``, ``I2(5)``, ``A1xB2``; or a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(text)
        parts = [p for p in re.split(r"[x×]", text) if p]
        if not parts:
            raise SpecError("empty Coxeter spec")
        specs = []
        for p in parts:
            m = re.fullmatch(r"([AB])(\d+)|I2\((\d+)\)|I(\d+)", p.strip())
            if not m:
                raise SpecError(f"cannot parse Coxeter type {p!r}")
            if m.group(1):
                specs.append(cls(m.group(1), int(m.group(2))))
            else:
                specs.append(cls("I2", int(m.group(3) or m.group(4))))
        return specs[0] if len(specs) == 1 else cls.product(*specs)

    def __str__(self) -> str:
        if self.kind == "product":
            return "x".join(str(f) for f in self.factors)
        if self.kind == "I2":
            return f"I2({self.rank})"
        return f"{self.kind}{self.rank}"


# ---------------------------------------------------------------------------
# irreducible models; payloads are plain tuples


class _TypeA:
    """S_{n+1} acting on {0..n}; w[i] is the image of i."""
    has_rep = True

    def __init__(self, n: int):
        self.n = n
        self.dim = n + 1

    def identity(self):
        return tuple(range(self.n + 1))

    def generators(self):
        out = []
        for i in range(self.n):
            w = list(range(self.n + 1))
            w[i], w[i + 1] = w[i + 1], w[i]
            out.append(tuple(w))
        return out

    def mul(self, a, b):
        return tuple(a[j] for j in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def length(self, a):
        n = len(a)
        return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])

    def var_action(self, a):
        # w . x_i = x_{w(i)}
        return tuple(a), (1,) * len(a)

    def simple_roots(self):
        return [{i: 1, i + 1: -1} for i in range(self.n)]


class _TypeB:
    """Signed permutations of {±1..±n}; s1 negates 1, s_{i+1} swaps i, i+1."""
    has_rep = True

    def __init__(self, n: int):
        self.n = n
        self.dim = n

    def identity(self):
        return tuple(range(1, self.n + 1))

    def generators(self):
        out = [(-1,) + tuple(range(2, self.n + 1))]
        for i in range(1, self.n):
            w = list(range(1, self.n + 1))
            w[i - 1], w[i] = w[i], w[i - 1]
            out.append(tuple(w))
        return out

    def mul(self, a, b):
        return tuple(a[j - 1] if j > 0 else -a[-j - 1] for j in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a, start=1):
            out[abs(j) - 1] = i if j > 0 else -i
        return tuple(out)

    def length(self, a):
        n = len(a)
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])
        return inv - sum(x for x in a if x < 0)

    def var_action(self, a):
        return tuple(abs(j) - 1 for j in a), tuple(1 if j > 0 else -1 for j in a)

    def simple_roots(self):
        out = [{0: 1}]
        for i in range(1, self.n):
            out.append({i: 1, i - 1: -1})
        return out


class _Dihedral:
    """Affine maps x -> a*x + k on Z/m; s1 = (-1, 0), s2 = (-1, 1)."""
    has_rep = False

    def __init__(self, m: int):
        self.m = m
        self.dim = 0

    def identity(self):
        return (1, 0)

    def generators(self):
        return [(-1, 0), (-1, 1 % self.m)]

    def mul(self, a, b):
        return (a[0] * b[0], (a[0] * b[1] + a[1]) % self.m)

    def inv(self, a):
        if a[0] == 1:
            return (1, (-a[1]) % self.m)
        return a

    def length(self, a):
        m = self.m
        k = a[1]
        if a[0] == 1:
            return min(2 * k, 2 * (m - k))
        if k == 0:
            return 1
        return min(2 * k - 1, 2 * (m - k) + 1)


def _model(spec: CoxeterSpec):
    if spec.kind == "A":
        return _TypeA(spec.rank)
    if spec.kind == "B":
        return _TypeB(spec.rank)
    return _Dihedral(spec.rank)


def _flatten(spec: CoxeterSpec) -> list[CoxeterSpec]:
    if spec.kind == "product":
        return [g for f in spec.factors for g in _flatten(f)]
    return [spec]


# ---------------------------------------------------------------------------


class GroupElement:
    """An element of a concrete Coxeter group, compared by model payload."""

    __slots__ = ("system", "key", "length")

    def __init__(self, system: "CoxeterSystem", key: tuple, length: int):
        self.system = system
        self.key = key
        self.length = length

    @property
    def payload(self):
        return self.key[0] if len(self.key) == 1 else self.key

    @property
    def word(self) -> tuple[int, ...]:
        return self.system.word(self)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.key == other.key and self.system is other.system

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.system.multiply(self, other)

    def __repr__(self):
        return f"<{self.system.format(self)}>"


class CoxeterSystem:
    def __init__(self, spec: CoxeterSpec, cap: int = MAX_GENERATORS):
        spec.validate(cap)
        self.spec = spec
        self.factors = [_model(f) for f in _flatten(spec)]
        self._gen_owner: list[tuple[int, int]] = []
        for fi, f in enumerate(self.factors):
            for li in range(len(f.generators())):
                self._gen_owner.append((fi, li))
        self.rank = len(self._gen_owner)
        self.labels = list(spec.labels or [f"s{i + 1}" for i in range(self.rank)])
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._interned: dict[tuple, GroupElement] = {}
        self._words: dict[GroupElement, tuple[int, ...]] = {}
        self._lock = threading.RLock()
        self._bruhat: dict[tuple[GroupElement, GroupElement], bool] = {}
        self._rgen: dict[tuple[GroupElement, int], GroupElement] = {}
        self._lgen: dict[tuple[int, GroupElement], GroupElement] = {}
        # shared slot for caches owned by other modules (hecke, cosets, ...)
        self.cache: dict = {}
        self.identity = self._elem(tuple(f.identity() for f in self.factors))
        self.generators = []
        for fi, li in self._gen_owner:
            key = [f.identity() for f in self.factors]
            key[fi] = self.factors[fi].generators()[li]
            self.generators.append(self._elem(tuple(key)))
        self.S = frozenset(range(self.rank))

    def __repr__(self):
        return f"CoxeterSystem({self.spec})"

    # -- construction -----------------------------------------------------

    def _elem(self, key: tuple) -> GroupElement:
        e = self._interned.get(key)
        if e is None:
            ln = sum(f.length(k) for f, k in zip(self.factors, key))
            e = self._interned.setdefault(key, GroupElement(self, key, ln))
        return e

    def element(self, payload) -> GroupElement:
        """Element from its model payload (a tuple per factor for products)."""
        key = (tuple(payload),) if len(self.factors) == 1 else tuple(
            tuple(p) for p in payload)
        return self._elem(key)

    def _check(self, *ws: GroupElement) -> None:
        for w in ws:
            if w.system is not self:
                raise ValueError("group elements from different systems")

    # -- group operations -------------------------------------------------

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return self._elem(tuple(
            f.mul(x, y) for f, x, y in zip(self.factors, a.key, b.key)))

    def inverse(self, w: GroupElement) -> GroupElement:
        return self._elem(tuple(f.inv(x) for f, x in zip(self.factors, w.key)))

    def rmul_gen(self, w: GroupElement, i: int) -> GroupElement:
        """w * s_i"""
        r = self._rgen.get((w, i))
        if r is None:
            r = self._rgen[(w, i)] = self.multiply(w, self.generators[i])
        return r

    def lmul_gen(self, i: int, w: GroupElement) -> GroupElement:
        """s_i * w"""
        r = self._lgen.get((i, w))
        if r is None:
            r = self._lgen[(i, w)] = self.multiply(self.generators[i], w)
        return r

    def from_word(self, word: Iterable[int]) -> GroupElement:
        w = self.identity
        for i in word:
            w = self.rmul_gen(w, i)
        return w

    def length(self, w: GroupElement) -> int:
        return w.length

    def is_right_descent(self, w: GroupElement, i: int) -> bool:
        return self.rmul_gen(w, i).length < w.length

    def is_left_descent(self, i: int, w: GroupElement) -> bool:
        return self.lmul_gen(i, w).length < w.length

    def right_descents(self, w: GroupElement) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if self.is_right_descent(w, i))

    def left_descents(self, w: GroupElement) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if self.is_left_descent(i, w))

    def word(self, w: GroupElement) -> tuple[int, ...]:
        """ShortLex-minimal reduced word, by repeatedly peeling the smallest left descent."""
        wd = self._words.get(w)
        if wd is None:
            out = []
            x = w
            while x.length:
                i = min(self.left_descents(x))
                out.append(i)
                x = self.lmul_gen(i, x)
            wd = self._words[w] = tuple(out)
        return wd

    def format(self, w: GroupElement) -> str:
        wd = self.word(w)
        return ".".join(self.labels[i] for i in wd) if wd else "e"

    def parse(self, text: str) -> GroupElement:
        text = text.strip()
        if text in ("e", "", "id"):
            return self.identity
        try:
            return self.from_word(self._label_index[t] for t in text.split("."))
        except KeyError as exc:
            raise ValueError(f"unknown generator {exc.args[0]!r} in {text!r}") from None

    def sort_key(self, w: GroupElement) -> tuple:
        return (w.length, self.word(w))

    # -- subsets ----------------------------------------------------------

    def subset(self, spec: str | Iterable) -> frozenset[int]:
        """Parse ``"s1,s2"`` (empty string is the empty set) or an iterable of labels/indices."""
        if isinstance(spec, str):
            s = spec.strip().strip("{}")
            if s in ("", "∅"):
                return frozenset()
            items: Iterable = [t.strip() for t in s.split(",") if t.strip()]
        else:
            items = spec
        out = set()
        for it in items:
            if isinstance(it, int):
                if not 0 <= it < self.rank:
                    raise ValueError(f"generator index {it} out of range")
                out.add(it)
            elif it in self._label_index:
                out.add(self._label_index[it])
            else:
                raise ValueError(f"unknown generator label {it!r}")
        return frozenset(out)

    def subset_labels(self, I: frozenset[int]) -> list[str]:
        return [self.labels[i] for i in sorted(I)]

    def format_subset(self, I: frozenset[int]) -> str:
        return "{" + ",".join(self.subset_labels(I)) + "}" if I else "∅"

    def all_subsets(self) -> list[frozenset[int]]:
        return [frozenset(c) for k in range(self.rank + 1)
                for c in combinations(range(self.rank), k)]

    # -- enumeration ------------------------------------------------------

    def _once(self, name: str, build):
        val = self.cache.get(name)
        if val is None:
            with self._lock:
                val = self.cache.get(name)
                if val is None:
                    val = self.cache[name] = build()
        return val

    def parabolic_elements(self, I: Iterable[int] = None) -> list[GroupElement]:
        """All elements of W_I in ShortLex order."""
        I = self.S if I is None else frozenset(I)

        def build():
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in I:
                        x = self.rmul_gen(w, i)
                        if x not in seen:
                            seen.add(x)
                            nxt.append(x)
                frontier = nxt
            return sorted(seen, key=self.sort_key)
        return self._once(("parabolic", I), build)

    def all_elements(self) -> list[GroupElement]:
        return self.parabolic_elements(self.S)

    def order(self) -> int:
        return len(self.all_elements())

    def reflections(self) -> list[GroupElement]:
        def build():
            refl = set()
            for w in self.all_elements():
                winv = self.inverse(w)
                for s in self.generators:
                    refl.add(self.multiply(self.multiply(w, s), winv))
            return sorted(refl, key=self.sort_key)
        return self._once("reflections", build)

    def longest_element(self, I: Iterable[int] = None) -> GroupElement:
        return self.parabolic_elements(I)[-1]

    def in_parabolic(self, w: GroupElement, I: Iterable[int]) -> bool:
        # reduced words of elements of W_I only use letters from I
        return set(self.word(w)) <= set(I)

    # -- Bruhat order -----------------------------------------------------

    def bruhat_leq(self, x: GroupElement, w: GroupElement) -> bool:
        """x <= w via lifting: for ws < w, x <= w iff min(x, xs) <= ws."""
        self._check(x, w)
        if x.length > w.length:
            return False
        if x.length == w.length:
            return x == w
        if x.length == 0:
            return True
        key = (x, w)
        r = self._bruhat.get(key)
        if r is None:
            i = min(self.right_descents(w))
            ws = self.rmul_gen(w, i)
            xs = self.rmul_gen(x, i)
            r = self.bruhat_leq(xs if xs.length < x.length else x, ws)
            self._bruhat[key] = r
        return r

    def bruhat_lt(self, x: GroupElement, w: GroupElement) -> bool:
        return x != w and self.bruhat_leq(x, w)

    # -- reflection representation data -----------------------------------

    @property
    def has_rep(self) -> bool:
        return all(f.has_rep for f in self.factors)

    def rep_dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def var_action(self, w: GroupElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Signed permutation of coordinate forms: w . x_i = sign[i] * x_{perm[i]}."""
        perm: list[int] = []
        sign: list[int] = []
        off = 0
        for f, k in zip(self.factors, w.key):
            p, sg = f.var_action(k)
            perm.extend(off + j for j in p)
            sign.extend(sg)
            off += f.dim
        return tuple(perm), tuple(sign)

    def simple_roots(self) -> list[dict[int, int]]:
        """Linear forms (as {var: coeff}) for the simple reflections, in generator order."""
        out = []
        off = 0
        for f in self.factors:
            out.extend({off + j: c for j, c in r.items()} for r in f.simple_roots())
            off += f.dim
        return out


def word_to_str(system: CoxeterSystem, word: Sequence[int]) -> str:
    return ".".join(system.labels[i] for i in word) if word else "e"
