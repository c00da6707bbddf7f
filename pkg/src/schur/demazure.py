"""
Rational reflection representations of types A and B, the rings R(X) of
compatible polynomial tuples, Demazure operators and the φ-basis of R(p).

Grading: every variable x_i has degree 2, so all reported degrees are even.
"""

from __future__ import annotations

import os
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

from .coxeter import CoxeterSystem, GroupElement
from .cosets import DoubleCoset, poincare_parabolic
from .laurent import LaurentPoly
from .polynomials import RationalPoly, exact_rank, monomials

__all__ = [
    "ReflectionRep", "RXElement", "RepError", "build_rep", "act",
    "demazure_left", "demazure_right", "alpha", "m_p", "phi_basis",
    "graded_rank", "graded_rank_check", "rx_dims", "exact_sequence_dims",
    "invariant_dims", "hilbert_parabolic", "hilbert_parabolic_series",
    "induced_prediction", "verify_induced_invariants", "exact_sequence_check",
    "DEFAULT_DEG_CAP", "DIM_GUARD", "max_degree",
]

DEFAULT_DEG_CAP = 12
DIM_GUARD = 20000


def max_degree() -> int:
    """Degree cap, overridable through SCHUR_MAX_DEGREE."""
    raw = os.environ.get("SCHUR_MAX_DEGREE")
    if raw is None:
        return DEFAULT_DEG_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"SCHUR_MAX_DEGREE must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError("SCHUR_MAX_DEGREE must be nonnegative")
    return cap


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class ReflectionRep:
    system: CoxeterSystem
    dim: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]  # per generator, acting on V
    roots: dict[GroupElement, RationalPoly] = field(hash=False)  # t -> h_t
    vectors: dict[GroupElement, tuple[Fraction, ...]] = field(hash=False)  # t -> v_t

    def h(self, t: GroupElement) -> RationalPoly:
        return self.roots[t]

    def generator_root(self, i: int) -> RationalPoly:
        return self.roots[self.system.generators[i]]

    def matrix(self, w: GroupElement) -> list[list[int]]:
        perm, sign = self.system.var_action(w)
        M = [[0] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            M[perm[i]][i] = sign[i]
        return M

    def reflect(self, t: GroupElement, lam: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """λ - 2 h_t(λ) v_t."""
        h = self.roots[t]
        val = sum((h.coeff(_unit(self.dim, i)) * lam[i] for i in range(self.dim)), Fraction(0))
        return tuple(Fraction(lam[i]) - 2 * val * self.vectors[t][i] for i in range(self.dim))


def _unit(n: int, i: int) -> tuple[int, ...]:
    m = [0] * n
    m[i] = 1
    return tuple(m)


def act(rep: ReflectionRep | CoxeterSystem, w: GroupElement, f: RationalPoly) -> RationalPoly:
    """(w f)(λ) = f(w^{-1} λ), realised as x_i -> sign_i x_{perm_i}."""
    W = rep.system if isinstance(rep, ReflectionRep) else rep
    perm, sign = W.var_action(w)
    return f.signed_permute(perm, sign)


def _linear_vector(f: RationalPoly, n: int) -> list[Fraction]:
    return [f.coeff(_unit(n, i)) for i in range(n)]


def build_rep(W: CoxeterSystem) -> ReflectionRep:
    """Equations h_t and vectors v_t for every reflection, with all consistency checks."""
    if not W.has_rep:
        raise RepError(f"no rational reflection representation for {W.spec}")
    return W._once("reflection_rep", lambda: _build_rep(W))


def _build_rep(W: CoxeterSystem) -> ReflectionRep:
    n = W.rep_dim()
    simple = [RationalPoly.linear(n, r) for r in W.simple_roots()]
    roots: dict[GroupElement, RationalPoly] = {}
    for x in W.all_elements():
        for i in range(W.rank):
            xs = W.rmul_gen(x, i)
            t = W.multiply(xs, W.inverse(x))
            image = act(W, x, simple[i])
            expected = image if xs.length > x.length else -image
            if t not in roots:
                if xs.length > x.length:
                    roots[t] = image
                continue
            if xs.length > x.length and roots[t] != expected:
                raise RepError(f"x·h_s = h_t fails for x={W.format(x)}, s={W.labels[i]}")
    for x in W.all_elements():
        for i in range(W.rank):
            xs = W.rmul_gen(x, i)
            t = W.multiply(xs, W.inverse(x))
            sign = 1 if xs.length > x.length else -1
            if act(W, x, simple[i]) != roots[t] * sign:
                raise RepError(f"root of {W.format(t)} is not consistent under conjugation")
    T = W.reflections()
    if set(roots) != set(T):
        raise RepError("reflection set does not match the root system")
    rep_mats = []
    for g in W.generators:
        perm, sign = W.var_action(g)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[perm[i]][i] = sign[i]
        rep_mats.append(tuple(tuple(r) for r in M))
    vectors = {}
    for t in T:
        h = _linear_vector(roots[t], n)
        perm, sign = W.var_action(t)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[perm[i]][i] = sign[i]
        D = [[(1 if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]
        j = next(k for k in range(n) if h[k])
        vt = tuple(Fraction(D[i][j]) / (2 * h[j]) for i in range(n))
        if any(D[i][k] != 2 * vt[i] * h[k] for i in range(n) for k in range(n)):
            raise RepError(f"{W.format(t)} does not act as λ - 2h_t(λ)v_t")
        vectors[t] = vt
    rows = [_linear_vector(roots[t], n) for t in T]
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if exact_rank([dict(enumerate(rows[a])), dict(enumerate(rows[b]))], n) < 2:
                raise RepError("reflection equations are not pairwise independent")
    tset = set(T)
    for w in W.all_elements():
        perm, sign = W.var_action(w)
        D = [[(1 if i == j else 0) - (sign[j] if perm[j] == i else 0) for j in range(n)]
             for i in range(n)]
        codim = flint.fmpz_mat(D).rank() if n else 0
        if (codim == 1) != (w in tset):
            raise RepError(f"fixed space of {W.format(w)} has codimension {codim}")
    return ReflectionRep(W, n, tuple(rep_mats), roots, vectors)


# ---------------------------------------------------------------------------
# R(X)


class RXElement:
    """A tuple (f_x)_{x in X} in R(X); membership is checked on construction."""

    __slots__ = ("rep", "X", "comps")

    def __init__(self, rep: ReflectionRep, X: Sequence[GroupElement],
                 comps: Mapping[GroupElement, RationalPoly], check: bool = True):
        self.rep = rep
        self.X = tuple(X)
        zero = RationalPoly(rep.dim)
        self.comps = {x: comps.get(x, zero) for x in self.X}
        if set(comps) - set(self.X):
            raise ValueError("components outside X")
        if check:
            bad = membership_failure(self)
            if bad is not None:
                x, t = bad
                W = rep.system
                raise ValueError(f"f_{W.format(x)} - f_t{W.format(x)} not divisible by "
                                 f"h_t for t={W.format(t)}")

    def __getitem__(self, x: GroupElement) -> RationalPoly:
        return self.comps[x]

    def support(self) -> list[GroupElement]:
        return [x for x in self.X if self.comps[x]]

    def degree(self) -> int:
        degs = {f.degree() for f in self.comps.values() if f}
        if len(degs) > 1:
            raise ValueError("tuple is not homogeneous")
        return degs.pop() if degs else -1

    def is_homogeneous(self) -> bool:
        degs = {f.degree() for f in self.comps.values() if f}
        return len(degs) <= 1 and all(f.is_homogeneous() for f in self.comps.values())

    def is_zero(self) -> bool:
        return not any(self.comps.values())

    def __add__(self, other: "RXElement") -> "RXElement":
        if self.X != other.X:
            raise ValueError("different index sets")
        return RXElement(self.rep, self.X, {x: self[x] + other[x] for x in self.X}, check=False)

    def __sub__(self, other: "RXElement") -> "RXElement":
        return self + other.scale(-1)

    def scale(self, a) -> "RXElement":
        return RXElement(self.rep, self.X, {x: self[x] * a for x in self.X}, check=False)

    def __mul__(self, other):
        if isinstance(other, RXElement):
            if self.X != other.X:
                raise ValueError("different index sets")
            return RXElement(self.rep, self.X, {x: self[x] * other[x] for x in self.X}, check=False)
        return self.scale(other)

    def left_mul(self, f: RationalPoly) -> "RXElement":
        return RXElement(self.rep, self.X, {x: f * self[x] for x in self.X}, check=False)

    def right_mul(self, f: RationalPoly) -> "RXElement":
        """Right R-action: component x is multiplied by x(f)."""
        return RXElement(self.rep, self.X, {x: self[x] * act(self.rep, x, f) for x in self.X},
                         check=False)

    def __eq__(self, other):
        if not isinstance(other, RXElement):
            return NotImplemented
        return self.X == other.X and self.comps == other.comps

    def __hash__(self):
        return hash((self.X, frozenset(self.comps.items())))

    def proportional_to(self, other: "RXElement") -> Fraction | None:
        """c with self = c * other, or None."""
        if self.X != other.X:
            return None
        c = None
        for x in self.X:
            a, b = self[x], other[x]
            if not a and not b:
                continue
            if not a or not b:
                return None
            m, ca = a.items()[0]
            r = Fraction(ca) / b.coeff(m) if b.coeff(m) else None
            if r is None or a != b * r:
                return None
            if c is None:
                c = r
            elif c != r:
                return None
        return c

    def to_json(self) -> dict[str, str]:
        W = self.rep.system
        return {W.format(x): str(self[x]) for x in self.X}

    def __repr__(self):
        return f"RXElement({self.to_json()})"


def membership_failure(F: RXElement) -> tuple[GroupElement, GroupElement] | None:
    rep = F.rep
    W = rep.system
    Xs = set(F.X)
    for x in F.X:
        for t in W.reflections():
            tx = W.multiply(t, x)
            if tx in Xs and x.length < tx.length:
                diff = F[x] - F[tx]
                if diff:
                    try:
                        diff.divexact(rep.h(t))
                    except ArithmeticError:
                        return x, t
    return None


def indicator(rep: ReflectionRep, X: Sequence[GroupElement], x: GroupElement,
              f: RationalPoly) -> RXElement:
    return RXElement(rep, X, {x: f})


# ---------------------------------------------------------------------------
# Demazure operators


def demazure_left(rep: ReflectionRep, t: GroupElement, F: RXElement) -> RXElement:
    """(∂_t F)_x = (F_x - t·F_{tx}) / (2 h_t); needs tX = X."""
    W = rep.system
    if t not in rep.roots:
        raise ValueError(f"{W.format(t)} is not a reflection")
    Xs = set(F.X)
    if any(W.multiply(t, x) not in Xs for x in F.X):
        raise ValueError("left Demazure operator needs tX = X")
    h2 = rep.h(t) * 2
    out = {}
    for x in F.X:
        num = F[x] - act(rep, t, F[W.multiply(t, x)])
        out[x] = num.divexact(h2)
    return RXElement(rep, F.X, out)


def demazure_right(rep: ReflectionRep, t: GroupElement, F: RXElement) -> RXElement:
    """(F ∂_t)_x = (F_x - F_{xt}) / (2 x(h_t)); needs Xt = X."""
    W = rep.system
    if t not in rep.roots:
        raise ValueError(f"{W.format(t)} is not a reflection")
    Xs = set(F.X)
    if any(W.multiply(x, t) not in Xs for x in F.X):
        raise ValueError("right Demazure operator needs Xt = X")
    out = {}
    for x in F.X:
        num = F[x] - F[W.multiply(x, t)]
        out[x] = num.divexact(act(rep, x, rep.h(t)) * 2)
    return RXElement(rep, F.X, out)


# ---------------------------------------------------------------------------
# products of root equations


def _product(rep: ReflectionRep, ts: Iterable[GroupElement]) -> RationalPoly:
    out = RationalPoly.const(rep.dim, 1)
    for t in ts:
        out = out * rep.h(t)
    return out


def alpha(rep: ReflectionRep, x: GroupElement, p: DoubleCoset) -> RationalPoly:
    """Π h_t over reflections t with x < tx ∈ p."""
    if x not in p:
        raise ValueError("x is not in p")
    W = rep.system
    ts = []
    for t in W.reflections():
        tx = W.multiply(t, x)
        if tx.length > x.length and tx in p:
            ts.append(t)
    return _product(rep, ts)


def m_p(rep: ReflectionRep, p: DoubleCoset) -> RationalPoly:
    """Π h_t over reflections t with t p_- < p_-; invariant under W_K, K = kilmoyer(p)."""
    W = rep.system
    pm = p.p_minus
    f = _product(rep, [t for t in W.reflections() if W.multiply(t, pm).length < pm.length])
    for k in p.kilmoyer:
        if act(rep, W.generators[k], f) != f:
            raise AssertionError(f"m_p is not invariant under {W.labels[k]}")
    return f


# ---------------------------------------------------------------------------
# φ-basis


def phi_basis(rep: ReflectionRep, p: DoubleCoset, prefer: str = "left") -> dict[GroupElement, RXElement]:
    """φ_x for x in p, each step a Demazure operator along a descent inside p.

    ``prefer`` picks left steps (∂_s φ_{sy}, s in I) or right steps (φ_{yt} ∂_t, t in J)
    when both exist; within a side the smallest generator index wins.
    """
    if prefer not in ("left", "right"):
        raise ValueError("prefer must be 'left' or 'right'")
    W = rep.system
    X = p.elements
    top = p.p_plus.length
    phi: dict[GroupElement, RXElement] = {
        p.p_minus: indicator(rep, X, p.p_minus, alpha(rep, p.p_minus, p))}
    for y in sorted(X, key=W.sort_key):
        if y == p.p_minus:
            continue
        left = [s for s in sorted(p.I) if W.is_left_descent(s, y)]
        right = [t for t in sorted(p.J) if W.is_right_descent(y, t)]
        order = [("l", s) for s in left] + [("r", t) for t in right]
        if prefer == "right":
            order = [("r", t) for t in right] + [("l", s) for s in left]
        if not order:
            raise AssertionError(f"no descent step to {W.format(y)} inside {p!r}")
        side, i = order[0]
        g = W.generators[i]
        if side == "l":
            phi[y] = demazure_left(rep, g, phi[W.lmul_gen(i, y)])
        else:
            phi[y] = demazure_right(rep, g, phi[W.rmul_gen(y, i)])
    for x, f in phi.items():
        _check_phi(rep, p, x, f, top)
    return {x: phi[x] for x in X}


def _check_phi(rep: ReflectionRep, p: DoubleCoset, x: GroupElement, f: RXElement, top: int) -> None:
    W = rep.system
    want = 2 * (top - x.length)
    if not f.is_homogeneous() or f.degree() != want:
        raise AssertionError(f"φ_{W.format(x)} has degree {f.degree()}, expected {want}")
    if not f[x]:
        raise AssertionError(f"φ_{W.format(x)} vanishes at {W.format(x)}")
    for y in f.support():
        if not W.bruhat_leq(y, x):
            raise AssertionError(f"φ_{W.format(x)} is supported at {W.format(y)} ≰ {W.format(x)}")


def graded_rank(p: DoubleCoset, phi: Mapping[GroupElement, RXElement]) -> LaurentPoly:
    """Σ_x v^{-deg φ_x}."""
    total = LaurentPoly()
    for f in phi.values():
        total = total + LaurentPoly.monomial(-f.degree())
    return total


def graded_rank_check(rep: ReflectionRep, p: DoubleCoset,
                      phi: Mapping[GroupElement, RXElement] | None = None) -> LaurentPoly:
    """Graded rank of the φ-basis; raises unless it equals π̃(p)."""
    if phi is None:
        phi = phi_basis(rep, p)
    r = graded_rank(p, phi)
    if r != p.poincare_tilde:
        raise AssertionError(f"graded rank {r} differs from π̃(p) = {p.poincare_tilde}")
    return r


# ---------------------------------------------------------------------------
# degreewise linear algebra


def _degrees(cap: int) -> list[int]:
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    if cap > max_degree():
        raise ValueError(f"degree cap {cap} exceeds the limit {max_degree()}")
    return list(range(0, cap + 1, 2))


def _edges(W: CoxeterSystem, X: Sequence[GroupElement]) -> list[tuple[GroupElement, GroupElement]]:
    """Pairs (x, t) with x < tx and both in X."""
    Xs = set(X)
    out = []
    for x in X:
        for t in W.reflections():
            tx = W.multiply(t, x)
            if tx in Xs and x.length < tx.length:
                out.append((x, t))
    return out


class _Columns:
    """Sparse columns of a linear map, with interned row keys."""

    def __init__(self):
        self.rows: dict[object, int] = {}
        self.cols: list[dict[int, Fraction]] = []

    def add(self, col: Mapping[object, Fraction]) -> None:
        d: dict[int, Fraction] = {}
        for key, a in col.items():
            if a:
                r = self.rows.setdefault(key, len(self.rows))
                d[r] = d.get(r, 0) + a
        self.cols.append({r: a for r, a in d.items() if a})

    def nullity(self) -> int:
        # rank of the transpose equals rank of the map
        return len(self.cols) - exact_rank(self.cols, len(self.rows))


def _poly_col(tag, f: RationalPoly, sign: int = 1) -> dict:
    return {(tag, m): sign * a for m, a in f.items()}


def _merge(*cols: dict) -> dict:
    out: dict = {}
    for c in cols:
        for k, a in c.items():
            out[k] = out.get(k, 0) + a
    return out


def _membership_system(rep: ReflectionRep, X: Sequence[GroupElement], d: int,
                       K: Iterable[int] = (), L: Iterable[int] = ()) -> _Columns:
    """Columns for unknowns f_x in R_d and g_{x,t} in R_{d-2}, subject to
    f_x - f_{tx} = h_t g_{x,t}, s·f_{sx} = f_x (s in K) and f_{xt} = f_x (t in L)."""
    W = rep.system
    n = rep.dim
    k = d // 2
    edges = _edges(W, X)
    K, L = sorted(K), sorted(L)
    Xs = set(X)
    for s in K:
        if any(W.lmul_gen(s, x) not in Xs for x in X):
            raise ValueError("X is not stable under the left W_K action")
    for t in L:
        if any(W.rmul_gen(x, t) not in Xs for x in X):
            raise ValueError("X is not stable under the right W_L action")
    nunk = len(X) * len(monomials(n, k)) + (len(edges) * len(monomials(n, k - 1)) if k else 0)
    if nunk > DIM_GUARD:
        raise ValueError(f"{nunk} unknowns exceed the dimension guard {DIM_GUARD}")
    C = _Columns()
    low = {}
    high = {}
    for x, t in edges:
        low.setdefault(x, []).append((x, t))
        high.setdefault(W.multiply(t, x), []).append((x, t))
    for x in X:
        for m in monomials(n, k):
            e = RationalPoly.monomial(m)
            parts = []
            for key in low.get(x, []):
                parts.append(_poly_col(("edge", key), e))
            for key in high.get(x, []):
                parts.append(_poly_col(("edge", key), e, -1))
            for s in K:
                # equation (s, y): s·f_{sy} - f_y, y = sx
                parts.append(_poly_col(("left", s, W.lmul_gen(s, x)), act(rep, W.generators[s], e)))
                parts.append(_poly_col(("left", s, x), e, -1))
            for t in L:
                # equation (t, y): f_{yt} - f_y, y = xt
                parts.append(_poly_col(("right", t, W.rmul_gen(x, t)), e))
                parts.append(_poly_col(("right", t, x), e, -1))
            C.add(_merge(*parts))
    if k:
        for key in edges:
            h = rep.h(key[1])
            for m in monomials(n, k - 1):
                C.add(_poly_col(("edge", key), h * RationalPoly.monomial(m), -1))
    return C


def rx_dims(rep: ReflectionRep, X: Sequence[GroupElement], cap: int) -> list[int]:
    """dim R(X)_d for even d <= cap by solving the membership conditions."""
    return [_membership_system(rep, X, d).nullity() for d in _degrees(cap)]


def _eliminate(h: RationalPoly, n: int) -> tuple[int, dict[int, Fraction]]:
    """Variable i and form with h = 0 <=> x_i = form."""
    lin = _linear_vector(h, n)
    i = max(j for j in range(n) if lin[j])
    return i, {j: -lin[j] / lin[i] for j in range(n) if j != i and lin[j]}


def exact_sequence_dims(rep: ReflectionRep, X: Sequence[GroupElement], cap: int) -> list[int]:
    """dim ker(⊕_x R_x -> ⊕_{x<tx} R/(h_t)) per even degree, with signs ε_{x,tx}."""
    W = rep.system
    n = rep.dim
    edges = _edges(W, X)
    out = []
    for d in _degrees(cap):
        k = d // 2
        if len(X) * len(monomials(n, k)) > DIM_GUARD:
            raise ValueError("dimension guard exceeded")
        C = _Columns()
        elim = {key: _eliminate(rep.h(key[1]), n) for key in edges}
        for x in X:
            for m in monomials(n, k):
                e = RationalPoly.monomial(m)
                parts = []
                for (y, t), (i, form) in elim.items():
                    ty = W.multiply(t, y)
                    if x == y or x == ty:
                        other = ty if x == y else y
                        eps = 1 if x.length < other.length else -1
                        parts.append(_poly_col(("edge", y, t), e.substitute_linear(i, form), eps))
                C.add(_merge(*parts))
        out.append(C.nullity())
    return out


def invariant_dims(rep: ReflectionRep, p: DoubleCoset, K: Iterable[int], L: Iterable[int],
                   cap: int = DEFAULT_DEG_CAP) -> list[int]:
    """dim of the W_K × W_L-invariants of R(p)_d for even d <= cap."""
    K, L = frozenset(K), frozenset(L)
    if not (K <= p.I and L <= p.J):
        raise ValueError("invariants need K ⊂ I and L ⊂ J")
    return [_membership_system(rep, p.elements, d, K, L).nullity() for d in _degrees(cap)]


def hilbert_parabolic(rep: ReflectionRep, K: Iterable[int], cap: int = DEFAULT_DEG_CAP) -> list[int]:
    """dim (R^{W_K})_d for even d <= cap: kernel of Σ_g g - |W_K|·id on R_d."""
    W = rep.system
    group = W.parabolic_elements(K)
    n = rep.dim
    out = []
    for d in _degrees(cap):
        mons = monomials(n, d // 2)
        C = _Columns()
        for m in mons:
            e = RationalPoly.monomial(m)
            total = RationalPoly(n)
            for g in group:
                total = total + act(rep, g, e)
            total = total - e * len(group)
            C.add(_poly_col("R", total))
        out.append(C.nullity())
    return out


def _series_coeffs(f: LaurentPoly, length: int) -> list[int]:
    """Coefficients of f as a polynomial in t = v^{-2}."""
    out = [0] * length
    for e, a in f.terms():
        if e > 0 or e % 2:
            raise ValueError(f"{f} is not a polynomial in v^-2")
        if -e // 2 < length:
            out[-e // 2] += a
    return out


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def hilbert_parabolic_series(W: CoxeterSystem, n: int, K: Iterable[int], cap: int) -> list[int]:
    """Generating-function route: HS(R) / π̃_K(t), truncated at degree cap."""
    length = cap // 2 + 1
    hs = [comb(n - 1 + k, k) for k in range(length)]
    pk = _series_coeffs(poincare_parabolic(W, K)[0], length)
    # power series division by a polynomial with constant term 1
    out = []
    for k in range(length):
        out.append(hs[k] - sum(pk[i] * out[k - i] for i in range(1, k + 1)))
    return out


def induced_prediction(rep: ReflectionRep, p: DoubleCoset, K: Iterable[int], L: Iterable[int],
                       cap: int = DEFAULT_DEG_CAP) -> list[int]:
    """Degreewise dims of R^K ⊗_{R^I} R^{K''} ⊗_{R^J} R^L with K'' = kilmoyer(p),
    using the free ranks π̃(I)/π̃(K) and π̃(J)/π̃(L)."""
    W = rep.system
    K, L = frozenset(K), frozenset(L)
    length = len(_degrees(cap))
    left = poincare_parabolic(W, p.I)[0].divexact(poincare_parabolic(W, K)[0])
    right = poincare_parabolic(W, p.J)[0].divexact(poincare_parabolic(W, L)[0])
    base = hilbert_parabolic(rep, p.kilmoyer, cap)
    return _convolve(_convolve(_series_coeffs(left, length), _series_coeffs(right, length)), base)


def _report(claim: str, ok: bool, detail: dict) -> dict:
    return {"claim": claim, "status": "ok" if ok else "mismatch", "detail": detail}


def verify_induced_invariants(rep: ReflectionRep, p: DoubleCoset, K: Iterable[int], L: Iterable[int],
                   cap: int = DEFAULT_DEG_CAP) -> dict:
    W = rep.system
    K, L = frozenset(K), frozenset(L)
    lhs = invariant_dims(rep, p, K, L, cap)
    rhs = induced_prediction(rep, p, K, L, cap)
    detail = {"p": p.to_json(), "K": W.subset_labels(K), "L": W.subset_labels(L),
              "degrees": _degrees(cap), "invariants": lhs, "tensor": rhs}
    bad = [d for d, a, b in zip(_degrees(cap), lhs, rhs) if a != b]
    if bad:
        detail["first_bad_degree"] = bad[0]
    return _report("invariants of R(p) match the induced tensor product degreewise", not bad, detail)


def exact_sequence_check(rep: ReflectionRep, X: Sequence[GroupElement],
                         cap: int = DEFAULT_DEG_CAP) -> dict:
    W = rep.system
    a = exact_sequence_dims(rep, X, cap)
    b = rx_dims(rep, X, cap)
    detail = {"X": [W.format(x) for x in X], "degrees": _degrees(cap),
              "kernel": a, "membership": b}
    bad = [d for d, x, y in zip(_degrees(cap), a, b) if x != y]
    if bad:
        detail["first_bad_degree"] = bad[0]
    return _report("R(X) is the kernel of the difference map degreewise", not bad, detail)
