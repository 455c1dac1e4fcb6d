"""Exact rational building blocks: k-adic fractions, integer polynomials,
root isolation by bisection, Sturm counting and subresultant gcds.

Polynomials are stored low degree first, so ``IntPoly((-1, 1, 1))`` is
``x**2 + x - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = int | Fraction


# ---------------------------------------------------------------------------
# k-adic fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KAdic:
    """The rational ``num / k**t`` in canonical form.

    Build through :func:`kadic_normalize` (or :meth:`from_value`); the
    constructor does not normalize.
    """

    num: int
    t: int
    k: int

    @classmethod
    def from_value(cls, value: Rational, k: int) -> "KAdic":
        value = Fraction(value)
        den = value.denominator
        t = 0
        while k**t % den:
            t += 1
            if k == 1 or t > den.bit_length():
                raise ValueError(f"{value} is not a {k}-adic fraction")
        return kadic_normalize(value.numerator * (k**t // den), t, k)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.k**self.t)

    def lift(self, t: int) -> int:
        """Numerator of this fraction written over ``k**t`` (``t >= self.t``)."""
        if t < self.t:
            raise ValueError("cannot lift to a lower level")
        return self.num * self.k ** (t - self.t)

    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def __add__(self, other: "KAdic") -> "KAdic":
        return kadic_add(self, other)

    def __sub__(self, other: "KAdic") -> "KAdic":
        return kadic_add(self, kadic_neg(other))

    def __neg__(self) -> "KAdic":
        return kadic_neg(self)

    def __lt__(self, other: "KAdic") -> bool:
        return kadic_cmp(self, other) < 0

    def __le__(self, other: "KAdic") -> bool:
        return kadic_cmp(self, other) <= 0

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def kadic_normalize(num: int, t: int, k: int) -> KAdic:
    if k < 1:
        raise ValueError("k must be positive")
    if t < 0:
        raise ValueError("t must be a natural number")
    if num == 0 or k == 1:
        return KAdic(num, 0, k)
    while t > 0 and num % k == 0:
        num //= k
        t -= 1
    return KAdic(num, t, k)


def _same_base(a: KAdic, b: KAdic) -> int:
    if a.k != b.k:
        raise ValueError(f"k-adic bases differ: {a.k} vs {b.k}")
    return a.k


def kadic_add(a: KAdic, b: KAdic) -> KAdic:
    k = _same_base(a, b)
    t = max(a.t, b.t)
    return kadic_normalize(a.lift(t) + b.lift(t), t, k)


def kadic_neg(a: KAdic) -> KAdic:
    return KAdic(-a.num, a.t, a.k)


def kadic_cmp(a: KAdic, b: KAdic) -> int:
    """-1, 0 or 1 as a <, =, > b."""
    _same_base(a, b)
    t = max(a.t, b.t)
    d = a.lift(t) - b.lift(t)
    return (d > 0) - (d < 0)


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntPoly":
        if not terms:
            return cls(())
        c = [0] * (max(terms) + 1)
        for e, g in terms.items():
            if e < 0:
                raise ValueError("negative exponent")
            c[e] += g
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Rational) -> int:
        """Exact sign of p(x) using integer-only Horner on num/den."""
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        acc = 0
        bp = 1
        # sum c_i a^i b^(n-i); b > 0 so the sign is that of p(x)
        for c in reversed(self.coeffs):
            acc = acc * a + c * bp
            bp *= b
        return (acc > 0) - (acc < 0)

    def deflate(self) -> tuple["IntPoly", int]:
        """Remove the factor x**m; returns (quotient, m)."""
        m = 0
        while m < len(self.coeffs) and self.coeffs[m] == 0:
            m += 1
        return IntPoly(self.coeffs[m:]), m

    def compose_power(self, e: int) -> "IntPoly":
        """p(x**e)."""
        if e == 1:
            return self
        c = [0] * (self.degree * e + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            c[i * e] = a
        return IntPoly(c)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def sign_changes(self) -> int:
        signs = [c > 0 for c in self.coeffs if c]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo: Rational, hi: Rational):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def isolate_unique_positive_root(p: IntPoly) -> RatInterval:
    """Isolating interval ``(lo, hi)``, ``0 < lo < hi``, for the only positive
    root of ``p``.

    Requires exactly one sign change in the coefficients once the factor
    ``x**m`` is removed, so Descartes' rule pins down a single simple
    positive root.
    """
    q, _ = p.deflate()
    if q.sign_changes() != 1:
        raise ValueError(f"{p} does not have exactly one coefficient sign change")
    bound = 1 + max(abs(c) for c in q.coeffs)
    lo, hi = Fraction(0), Fraction(bound)
    s_lo = q.sign_at(lo)
    while lo == 0:
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            # root hit exactly: step off it on both sides
            return RatInterval((lo + mid) / 2, (mid + hi) / 2)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RatInterval(lo, hi)


def refine_root(p: IntPoly, iv: RatInterval, width: Rational) -> RatInterval:
    """Bisect ``iv`` until it is at most ``width`` wide.

    If a midpoint turns out to be the root itself the degenerate interval
    ``[m, m]`` is returned.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    s_lo = p.sign_at(lo)
    if s_lo == 0 or p.sign_at(hi) == s_lo:
        raise ValueError(f"{iv} does not bracket a sign change of {p}")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return RatInterval(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RatInterval(lo, hi)


# ---------------------------------------------------------------------------
# Remainder sequences
# ---------------------------------------------------------------------------

def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _to_int_primitive(a: Sequence[Fraction]) -> IntPoly:
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    p = IntPoly(int(c * den) for c in a)
    g = p.content() or 1
    return IntPoly(c // g for c in p.coeffs)


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of the square-free part of ``p``; every member is scaled
    by a positive constant, which leaves sign variations unchanged."""
    p = IntPoly(c // p.content() for c in p.coeffs) if p.coeffs else p
    sqf = p
    if p.degree > 0:
        g = poly_gcd(p, p.derivative())
        if g.degree > 0:
            sqf = poly_divexact(p, g)
    chain = [sqf, sqf.derivative()]
    while not chain[-1].is_zero():
        r = _frac_rem([Fraction(c) for c in chain[-2].coeffs],
                      [Fraction(c) for c in chain[-1].coeffs])
        chain.append(_to_int_primitive([-c for c in r]))
    return chain[:-1]


def _variations(chain: Sequence[IntPoly], x: Rational) -> int:
    signs = [s for s in (q.sign_at(x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: IntPoly, iv: RatInterval) -> int:
    """Number of distinct real roots of ``p`` strictly inside ``iv``."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.sign_at(iv.lo) == 0 or p.sign_at(iv.hi) == 0:
        raise ValueError(f"an endpoint of {iv} is a root of {p}")
    chain = sturm_sequence(p)
    return _variations(chain, iv.lo) - _variations(chain, iv.hi)


def _prem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b over the integers."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r.pop()
        e -= 1
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        r = [x * lb**e for x in r]
    return tuple(r)


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Gcd over the rationals, primitive with positive leading coefficient,
    by the subresultant remainder sequence."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    a, b = p.primitive().coeffs, q.primitive().coeffs
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return IntPoly(b).primitive()
        if len(r) == 1:
            return IntPoly((1,))
        a = b
        div = g * h**delta
        b = tuple(c // div for c in r)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def poly_divexact(p: IntPoly, d: IntPoly) -> IntPoly:
    """Quotient p / d over the rationals, scaled to a primitive integer
    polynomial with the sign of p's leading coefficient preserved."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in d.coeffs]
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        quo[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    if a:
        raise ValueError(f"{d} does not divide {p}")
    res = _to_int_primitive(quo)
    if (res.lc > 0) != ((p.lc > 0) == (d.lc > 0)):
        res = IntPoly(-c for c in res.coeffs)
    return res


def poly_eval_interval(p: IntPoly, iv: RatInterval) -> RatInterval:
    """Enclosure of ``{p(x) : x in iv}``.

    On non-negative intervals the positive and negative parts of ``p`` are
    each monotone, which gives a tight bound; elsewhere Horner's scheme is
    run in interval arithmetic.
    """
    if not p.coeffs:
        return RatInterval(0, 0)
    lo, hi = iv.lo, iv.hi
    if lo >= 0:
        pos = IntPoly(max(c, 0) for c in p.coeffs)
        neg = IntPoly(max(-c, 0) for c in p.coeffs)
        return RatInterval(pos(lo) - neg(hi), pos(hi) - neg(lo))
    a = b = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return RatInterval(a, b)
