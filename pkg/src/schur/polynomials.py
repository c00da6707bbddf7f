"""Sparse multivariate polynomials over Q in x1..xn, plus exact rank helpers."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence, Union

import flint

__all__ = ["RationalPoly", "InexactPolyDivision", "monomials", "exact_rank",
           "nullity", "integer_row"]

Number = Union[int, Fraction]
Monomial = tuple[int, ...]


class InexactPolyDivision(ArithmeticError):
    pass


def _norm(a: Number) -> Number:
    # integral values are kept as int
    if isinstance(a, Fraction) and a.denominator == 1:
        return a.numerator
    return a


class RationalPoly:
    """Immutable map exponent tuple -> nonzero rational. Degree counts each x_i as 2."""

    __slots__ = ("nvars", "_c", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Number] | None = None):
        self.nvars = nvars
        c: dict[Monomial, Fraction] = {}
        for m, a in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has wrong arity for {nvars} variables")
            a = _norm(Fraction(a))
            if a:
                c[tuple(m)] = c.get(tuple(m), 0) + a
        self._c = {m: _norm(a) for m, a in c.items() if a}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, c: dict[Monomial, Fraction]) -> "RationalPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, nvars: int, a: Number) -> "RationalPoly":
        return cls(nvars, {(0,) * nvars: a})

    @classmethod
    def var(cls, nvars: int, i: int) -> "RationalPoly":
        m = [0] * nvars
        m[i] = 1
        return cls._raw(nvars, {tuple(m): 1})

    @classmethod
    def linear(cls, nvars: int, form: Mapping[int, Number]) -> "RationalPoly":
        out = {}
        for i, a in form.items():
            m = [0] * nvars
            m[i] = 1
            out[tuple(m)] = a
        return cls(nvars, out)

    @classmethod
    def monomial(cls, m: Monomial, a: Number = 1) -> "RationalPoly":
        return cls(len(m), {m: a})

    # -- inspection -------------------------------------------------------

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._c.items(), key=lambda t: _order_key(t[0]))

    def coeff(self, m: Monomial) -> Number:
        return self._c.get(tuple(m), 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        """Grading degree (twice the polynomial degree); -1 for zero."""
        if not self._c:
            return -1
        return 2 * max(sum(m) for m in self._c)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._c}) <= 1

    def homogeneous_part(self, d: int) -> "RationalPoly":
        """Component of grading degree d."""
        if d % 2:
            return RationalPoly._raw(self.nvars, {})
        k = d // 2
        return RationalPoly._raw(self.nvars, {m: a for m, a in self._c.items() if sum(m) == k})

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for m, a in other._c.items():
            s = c.get(m, 0) + a
            if s:
                c[m] = _norm(s)
            else:
                c.pop(m, None)
        return RationalPoly._raw(self.nvars, c)

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly._raw(self.nvars, {m: -a for m, a in self._c.items()})

    def __sub__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalPoly":
        return (-self) + other

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalPoly._raw(self.nvars, {})
            return RationalPoly._raw(self.nvars, {m: _norm(a * other) for m, a in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[Monomial, Fraction] = {}
        for m1, a in self._c.items():
            for m2, b in other._c.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c[m] = c.get(m, 0) + a * b
        return RationalPoly._raw(self.nvars, {m: _norm(a) for m, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        out = RationalPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def divexact(self, other: "RationalPoly | Number") -> "RationalPoly":
        """Exact quotient; raises InexactPolyDivision on a nonzero remainder."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        # lex division by one polynomial: remainder is zero iff divisible
        lead = max(other._c, key=_lex_key)
        lc = other._c[lead]
        rem = dict(self._c)
        quot: dict[Monomial, Fraction] = {}
        while rem:
            top = max(rem, key=_lex_key)
            shift = tuple(a - b for a, b in zip(top, lead))
            if min(shift) < 0:
                raise InexactPolyDivision(f"({self}) / ({other}) is not exact")
            q = _norm(Fraction(rem[top]) / lc)
            quot[shift] = quot.get(shift, 0) + q
            for m, a in other._c.items():
                mm = tuple(x + y for x, y in zip(m, shift))
                s = rem.get(mm, 0) - q * a
                if s:
                    rem[mm] = _norm(s)
                else:
                    rem.pop(mm, None)
        return RationalPoly._raw(self.nvars, {m: _norm(a) for m, a in quot.items() if a})

    def signed_permute(self, perm: Sequence[int], sign: Sequence[int]) -> "RationalPoly":
        """Substitute x_i -> sign[i] * x_{perm[i]}."""
        c: dict[Monomial, Fraction] = {}
        for m, a in self._c.items():
            new = [0] * self.nvars
            s = 1
            for i, e in enumerate(m):
                if e:
                    new[perm[i]] += e
                    if sign[i] < 0 and e % 2:
                        s = -s
            c[tuple(new)] = s * a
        return RationalPoly._raw(self.nvars, c)

    def substitute_linear(self, i: int, form: Mapping[int, Number]) -> "RationalPoly":
        """Replace x_i by the linear form (which must not involve x_i)."""
        if form.get(i):
            raise ValueError("substitution form involves the eliminated variable")
        lin = RationalPoly.linear(self.nvars, form)
        out = RationalPoly._raw(self.nvars, {})
        for m, a in self._c.items():
            rest = list(m)
            rest[i] = 0
            out = out + RationalPoly._raw(self.nvars, {tuple(rest): a}) * lin ** m[i]
        return out

    # -- comparison and text ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(self.nvars, other)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._c.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for k, (m, a) in enumerate(self.items()):
            mono = "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                            for i, e in enumerate(m) if e)
            mag = abs(a)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(("-" if a < 0 else "") + body)
            else:
                out.append((" - " if a < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"RationalPoly({self.nvars}, {str(self)!r})"

    _FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
    _NUMBER = re.compile(r"^\d+(?:/\d+)?$")

    @classmethod
    def parse(cls, nvars: int, text: str) -> "RationalPoly":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        c: dict[Monomial, Fraction] = {}
        for t in re.split(r"(?=[+-])", s):
            if not t:
                continue
            sign = -1 if t[0] == "-" else 1
            body = t.lstrip("+-")
            if not body:
                raise ValueError(f"dangling sign in {text!r}")
            coeff = Fraction(1)
            m = [0] * nvars
            for f in body.split("*"):
                if cls._NUMBER.match(f):
                    coeff *= Fraction(f)
                    continue
                g = cls._FACTOR.match(f)
                if not g:
                    raise ValueError(f"cannot parse factor {f!r} in {text!r}")
                i = int(g.group(1)) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable x{i + 1} out of range")
                m[i] += int(g.group(2) or 1)
            c[tuple(m)] = c.get(tuple(m), 0) + sign * coeff
        return cls(nvars, c)


def _order_key(m: Monomial) -> tuple:
    # ascending degree, then x1-heavy monomials first
    return (sum(m), tuple(-e for e in m))


def _lex_key(m: Monomial) -> Monomial:
    return m


# ---------------------------------------------------------------------------
# linear algebra over Q


def monomials(nvars: int, k: int) -> list[Monomial]:
    """Exponent tuples of total degree k, in the canonical text order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return sorted(out, key=_order_key)


def integer_row(row: Mapping[int, Number], ncols: int) -> list[int]:
    """Dense integer row proportional to a sparse rational row."""
    den = 1
    for a in row.values():
        if isinstance(a, Fraction):
            den = math.lcm(den, a.denominator)
    dense = [0] * ncols
    for j, a in row.items():
        dense[j] = int(a * den)
    return dense


def exact_rank(rows: Iterable[Mapping[int, Number]], ncols: int) -> int:
    dense = [integer_row(r, ncols) for r in rows if r]
    if not dense or not ncols:
        return 0
    return flint.fmpz_mat(dense).rank()


def nullity(rows: Iterable[Mapping[int, Number]], ncols: int) -> int:
    return ncols - exact_rank(rows, ncols)
