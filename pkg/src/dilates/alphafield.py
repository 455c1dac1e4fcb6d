"""Formal sums of fractional powers of alpha with an exact sign oracle.

An :class:`AlphaSum` is a finite integer combination ``sum g * a^q`` with
k-adic exponents ``q``.  It is a purely formal object: two different sums
can denote the same real number, so semantic comparisons always go
through :func:`alpha_sign`, which needs an :class:`AlphaContext`.

The context fixes ``(k, l)`` and ``P(x) = x^(k+1) + ... + x^(k+l) - x - ... - x^k``.
Its unique positive root ``rho`` gives ``alpha = rho**k``; alpha itself is
never materialised as a float.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import (
    IntPoly,
    KAdic,
    RatInterval,
    isolate_unique_positive_root,
    kadic_normalize,
    poly_eval_interval,
    poly_gcd,
    refine_root,
    sturm_count,
)

NEGATIVE, ZERO, POSITIVE = -1, 0, 1

# enclosure width the cache is driven to on first use
_INITIAL_WIDTH = Fraction(1, 2**64)


def relation_poly(k: int, l: int) -> IntPoly:
    """``sum_{i=k+1}^{k+l} x^i - sum_{i=1}^{k} x^i``."""
    c = [0] * (k + l + 1)
    for i in range(1, k + 1):
        c[i] = -1
    for i in range(k + 1, k + l + 1):
        c[i] = 1
    return IntPoly(c)


@dataclass(frozen=True)
class _Level:
    poly: IntPoly          # P(y^(k^(t-1))) with the x^m factor removed
    isolating: RatInterval  # strict isolating interval of gamma


class AlphaContext:
    """Arithmetic context for ``alpha = beta_{k,l}``.

    ``k <= l`` is enforced by swapping; ``swapped`` records whether that
    happened.  Enclosures of ``gamma_t = rho^(1/k^(t-1))`` are cached per
    lift level ``t`` and only ever shrink.
    """

    def __init__(self, k: int, l: int):
        if k < 1 or l < 1:
            raise ValueError("k and l must be positive integers")
        self.swapped = l < k
        if self.swapped:
            k, l = l, k
        self.k, self.l = k, l
        self.P = relation_poly(k, l)
        assert self.P(0) == 0 and self.P.derivative()(0) == -1
        self._levels: dict[int, _Level] = {}
        self._cache: dict[int, RatInterval] = {}
        self._lock = threading.Lock()
        self.rho_iv = self.level(1).isolating

    def __repr__(self) -> str:
        return f"AlphaContext(k={self.k}, l={self.l})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlphaContext) and (self.k, self.l) == (other.k, other.l)

    def __hash__(self) -> int:
        return hash((self.k, self.l))

    def level(self, t: int) -> _Level:
        if t < 1:
            raise ValueError("lift level starts at 1")
        lv = self._levels.get(t)
        if lv is None:
            poly, _ = self.P.compose_power(self.k ** (t - 1)).deflate()
            lv = _Level(poly, isolate_unique_positive_root(poly))
            self._levels[t] = lv
        return lv

    def enclosure(self, t: int, width: Fraction | None = None) -> RatInterval:
        """Current enclosure of gamma_t, refined to ``width`` if given."""
        lv = self.level(t)
        iv = self._cache.get(t)
        if iv is None:
            iv = refine_root(lv.poly, lv.isolating, _INITIAL_WIDTH)
        if width is not None and iv.width > width:
            iv = refine_root(lv.poly, iv, width)
        with self._lock:
            cur = self._cache.get(t)
            if cur is None or iv.width < cur.width:
                self._cache[t] = iv
            else:
                iv = cur
        return iv

    def rho(self, width: Fraction | None = None) -> RatInterval:
        return self.enclosure(1, width)


def ctx_new(k: int, l: int) -> AlphaContext:
    return AlphaContext(k, l)


# ---------------------------------------------------------------------------
# Formal sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaSum:
    """``sum g * a^q`` kept sorted by exponent; equality here is formal."""

    terms: tuple[tuple[KAdic, int], ...] = ()

    @classmethod
    def from_mapping(cls, terms: Mapping[KAdic, int]) -> "AlphaSum":
        items = [(q, g) for q, g in terms.items() if g]
        items.sort(key=lambda qg: qg[0].value)
        return cls(tuple(items))

    def is_formally_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlphaSum") -> "AlphaSum":
        return alpha_add(self, other)

    def __neg__(self) -> "AlphaSum":
        return alpha_neg(self)

    def __sub__(self, other: "AlphaSum") -> "AlphaSum":
        return alpha_add(self, alpha_neg(other))

    def __str__(self) -> str:
        return render_alpha(self)


ALPHA_ZERO = AlphaSum()


def alpha_monomial(g: int, q: KAdic) -> AlphaSum:
    return AlphaSum(((q, g),)) if g else ALPHA_ZERO


def alpha_add(x: AlphaSum, y: AlphaSum) -> AlphaSum:
    if not x.terms:
        return y
    if not y.terms:
        return x
    acc: dict[KAdic, int] = dict(x.terms)
    for q, g in y.terms:
        acc[q] = acc.get(q, 0) + g
    return AlphaSum.from_mapping(acc)


def alpha_sum(parts: Iterable[AlphaSum]) -> AlphaSum:
    acc: dict[KAdic, int] = {}
    for p in parts:
        for q, g in p.terms:
            acc[q] = acc.get(q, 0) + g
    return AlphaSum.from_mapping(acc)


def alpha_neg(x: AlphaSum) -> AlphaSum:
    return AlphaSum(tuple((q, -g) for q, g in x.terms))


def alpha_scale(x: AlphaSum, u: KAdic) -> AlphaSum:
    """Multiply by ``a^u``: shifts every exponent by ``u``."""
    if u.num == 0:
        return x
    return AlphaSum(tuple((q + u, g) for q, g in x.terms))


def relation_sum(ctx: AlphaContext) -> AlphaSum:
    """The defining relation written in alpha, which is zero in ``ctx``."""
    k = ctx.k
    acc = {kadic_normalize(i, 1, k): 1 for i in range(k + 1, k + ctx.l + 1)}
    for i in range(1, k + 1):
        acc[kadic_normalize(i, 1, k)] = -1
    return AlphaSum.from_mapping(acc)


# ---------------------------------------------------------------------------
# Sign decision
# ---------------------------------------------------------------------------

def _as_poly(x: AlphaSum, ctx: AlphaContext) -> tuple[IntPoly, int]:
    """Integer polynomial D and level t with sign(D(gamma_t)) = sign(x)."""
    t = max(1, max(q.t for q, _ in x.terms))
    for q, _ in x.terms:
        if q.k != ctx.k:
            raise ValueError(f"exponent base {q.k} does not match context k={ctx.k}")
    lifted = [(q.lift(t), g) for q, g in x.terms]
    low = min(h for h, _ in lifted)
    return IntPoly.from_terms({h - low: g for h, g in lifted}), t


def alpha_sign(x: AlphaSum, ctx: AlphaContext) -> int:
    """Exact sign (-1, 0, 1) of the real number ``x``."""
    if not x.terms:
        return ZERO
    if len(x.terms) == 1:
        return 1 if x.terms[0][1] > 0 else -1
    D, t = _as_poly(x, ctx)
    if D.is_zero():
        return ZERO
    if D.degree == 0:
        return 1 if D.lc > 0 else -1
    iv = ctx.enclosure(t)
    val = poly_eval_interval(D, iv)
    if val.excludes_zero():
        return 1 if val.lo > 0 else -1
    lv = ctx.level(t)
    G = poly_gcd(D, lv.poly)
    if G.degree > 0 and sturm_count(G, lv.isolating) == 1:
        return ZERO
    # D(gamma) != 0 is now certified, so shrinking the enclosure terminates
    width = iv.width
    while not val.excludes_zero():
        width /= 2
        iv = ctx.enclosure(t, width)
        val = poly_eval_interval(D, iv)
    return 1 if val.lo > 0 else -1


def alpha_eq(x: AlphaSum, y: AlphaSum, ctx: AlphaContext) -> bool:
    return alpha_sign(x - y, ctx) == ZERO


def alpha_cmp(x: AlphaSum, y: AlphaSum, ctx: AlphaContext) -> int:
    return alpha_sign(x - y, ctx)


def alpha_approx(x: AlphaSum, ctx: AlphaContext, width: Fraction | int) -> RatInterval:
    """Enclosure of the value of ``x`` no wider than ``width``."""
    width = Fraction(width)
    if not x.terms:
        return RatInterval(0, 0)
    D, t = _as_poly(x, ctx)
    low = min(q.lift(t) for q, _ in x.terms)
    # x = gamma^low * D(gamma); enclose both factors on a positive interval
    w = ctx.enclosure(t).width
    while True:
        iv = ctx.enclosure(t, w)
        d = poly_eval_interval(D, iv)
        if low >= 0:
            f = RatInterval(iv.lo**low, iv.hi**low)
        else:
            if iv.lo == 0:
                w /= 2
                continue
            f = RatInterval(iv.hi**low, iv.lo**low)
        prods = (d.lo * f.lo, d.lo * f.hi, d.hi * f.lo, d.hi * f.hi)
        out = RatInterval(min(prods), max(prods))
        if out.width <= width:
            return out
        w /= 2


# ---------------------------------------------------------------------------
# Text form:  3*a^(5/4) - a^(1/2) + 2
# ---------------------------------------------------------------------------

def _render_exp(q: KAdic) -> str:
    v = q.value
    if v.denominator == 1:
        return "a" if v == 1 else f"a^{v.numerator}"
    return f"a^({v.numerator}/{v.denominator})"


def render_alpha(x: AlphaSum) -> str:
    if not x.terms:
        return "0"
    out = []
    for q, g in reversed(x.terms):
        mag = abs(g)
        if q.num == 0:
            body = str(mag)
        else:
            e = _render_exp(q)
            body = e if mag == 1 else f"{mag}*{e}"
        out.append(("- " if g < 0 else "+ ") + body)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*(?P<a1>a(?:\^(?:\((?P<e1>-?\d+(?:/\d+)?)\)|(?P<f1>-?\d+)))?))?
        | (?P<a2>a(?:\^(?:\((?P<e2>-?\d+(?:/\d+)?)\)|(?P<f2>-?\d+)))?)
        )\s*""",
    re.VERBOSE,
)


def parse_alpha(text: str, k: int) -> AlphaSum:
    """Parse the grammar produced by :func:`render_alpha` (base ``k``)."""
    s = text.strip()
    if s == "0":
        return ALPHA_ZERO
    if not s:
        raise ValueError("empty alpha expression")
    acc: dict[KAdic, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse alpha expression at {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator before {s[pos:]!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        coef = int(m.group("coef")) if m.group("coef") else 1
        has_a = m.group("a1") or m.group("a2")
        if has_a:
            e = m.group("e1") or m.group("f1") or m.group("e2") or m.group("f2") or "1"
            q = KAdic.from_value(Fraction(e), k)
        else:
            q = kadic_normalize(0, 0, k)
        acc[q] = acc.get(q, 0) + sign * coef
        pos = m.end()
    return AlphaSum.from_mapping(acc)
