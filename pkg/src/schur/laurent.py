"""Sparse Laurent polynomials in ``Z[v, v^-1]`` with exact integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

__all__ = ["LaurentPoly", "InexactDivision", "v", "ONE", "ZERO"]


class InexactDivision(ArithmeticError):
    """Raised when an exact quotient was requested but a remainder is left."""


Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable sparse map exponent -> nonzero integer coefficient."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
        self._c = {e: a for e, a in c.items() if a}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        # c must already be free of zeros
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls.monomial(0, a)

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_nonneg(self) -> bool:
        """True iff every coefficient is >= 0 (membership in N[v, v^-1])."""
        return all(a > 0 for a in self._c.values())

    def is_self_dual(self) -> bool:
        return self == self.bar()

    def as_int(self) -> int | None:
        if not self._c:
            return 0
        if len(self._c) == 1 and 0 in self._c:
            return self._c[0]
        return None

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._c) == 1:
            (f, b), = other._c.items()
            return LaurentPoly._raw({e + f: a * b for e, a in self._c.items()})
        c: dict[int, int] = {}
        for e, a in self._c.items():
            for f, b in other._c.items():
                c[e + f] = c.get(e + f, 0) + a * b
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) == 1:
                (e, a), = self._c.items()
                if a in (1, -1):
                    return LaurentPoly._raw({-e * -n: a ** -n})
            raise InexactDivision(f"{self} is not a unit")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def divexact(self, other: Scalar) -> "LaurentPoly":
        """Exact quotient ``self / other``; raises InexactDivision otherwise."""
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._c:
            return ZERO
        if len(other._c) == 1:
            (f, b), = other._c.items()
            out = {}
            for e, a in self._c.items():
                q, r = divmod(a, b)
                if r:
                    raise InexactDivision(f"({self}) / ({other}) is not exact")
                out[e - f] = q
            return LaurentPoly._raw(out)
        # long division from the top exponent down
        rem = dict(self._c)
        g_top = other.max_exp()
        g_bot = other.min_exp()
        b = other._c[g_top]
        quot: dict[int, int] = {}
        f_bot = self.min_exp()
        while rem:
            top = max(rem)
            if top - g_top < f_bot - g_bot:
                raise InexactDivision(f"({self}) / ({other}) is not exact")
            a = rem[top]
            q, r = divmod(a, b)
            if r:
                raise InexactDivision(f"({self}) / ({other}) is not exact")
            k = top - g_top
            quot[k] = q
            for e, c in other._c.items():
                s = rem.get(e + k, 0) - q * c
                if s:
                    rem[e + k] = s
                else:
                    rem.pop(e + k, None)
        return LaurentPoly._raw(quot)

    __truediv__ = divexact

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- serialization ----------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, (e, a) in enumerate(self.terms()):
            sign = "-" if a < 0 else "+"
            m = abs(a)
            if e == 0:
                body = str(m)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if m == 1 else f"{m}*{var}"
            if i == 0:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TERM = re.compile(r"^(\d+)?(?:\*?v(?:\^(-?\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts e.g. ``"v^-1 + 2 + 3*v^2"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Laurent polynomial")
        if s == "0":
            return ZERO
        # split before each sign that is not part of an exponent
        terms = [t for t in re.split(r"(?<!\^)(?=[+-])", s) if t]
        c: dict[int, int] = {}
        for t in terms:
            sign = -1 if t[0] == "-" else 1
            body = t.lstrip("+-")
            m = cls._TERM.match(body)
            if not m or not body:
                raise ValueError(f"cannot parse Laurent term {t!r} in {text!r}")
            num, exp = m.group(1), m.group(2)
            has_v = "v" in body
            a = int(num) if num else 1
            e = (int(exp) if exp is not None else 1) if has_v else 0
            if not has_v and num is None:
                raise ValueError(f"cannot parse Laurent term {t!r}")
            c[e] = c.get(e, 0) + sign * a
        return cls(c)

    def to_json(self) -> dict[str, int]:
        return {str(e): a for e, a in self.terms()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(a) for e, a in obj.items()})


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
v = LaurentPoly._raw({1: 1})
