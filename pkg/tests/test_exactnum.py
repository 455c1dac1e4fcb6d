from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dilates.exactnum import (
    IntPoly,
    KAdic,
    RatInterval,
    isolate_unique_positive_root,
    kadic_add,
    kadic_cmp,
    kadic_neg,
    kadic_normalize,
    poly_divexact,
    poly_eval_interval,
    poly_gcd,
    refine_root,
    sturm_count,
)

X = sympy.Symbol("x")


def P(*coeffs):
    return IntPoly(coeffs)


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], X)


# --- k-adic fractions -------------------------------------------------------

@pytest.mark.parametrize("num,t,k,want", [
    (6, 2, 2, (3, 1)),
    (0, 5, 3, (0, 0)),
    (7, 0, 1, (7, 0)),
    (9, 3, 3, (1, 1)),
    (-12, 2, 2, (-3, 0)),
])
def test_normalize_examples(num, t, k, want):
    q = kadic_normalize(num, t, k)
    assert (q.num, q.t) == want


def test_kadic_arithmetic_examples():
    half = kadic_normalize(1, 1, 2)
    assert kadic_add(half, half) == kadic_normalize(1, 0, 2)
    assert kadic_neg(kadic_normalize(3, 2, 2)).value == Fraction(-3, 4)
    assert kadic_cmp(kadic_normalize(3, 2, 2), half) == 1
    assert str(kadic_normalize(6, 2, 2)) == "3/2"


def test_kadic_from_value_rejects_non_kadic():
    with pytest.raises(ValueError):
        KAdic.from_value(Fraction(1, 3), 2)


kadic = st.builds(lambda n, t, k: kadic_normalize(n, t, k),
                  st.integers(-500, 500), st.integers(0, 5), st.just(3))


@given(kadic, kadic)
def test_kadic_matches_fractions(a, b):
    assert kadic_add(a, b).value == a.value + b.value
    assert kadic_neg(a).value == -a.value
    assert kadic_cmp(a, b) == (a.value > b.value) - (a.value < b.value)


@given(st.integers(-10**6, 10**6), st.integers(0, 8), st.integers(2, 6))
def test_normalize_idempotent_and_value_preserving(num, t, k):
    q = kadic_normalize(num, t, k)
    assert q == kadic_normalize(q.num, q.t, k)
    assert q.value == Fraction(num, k**t)
    assert q.t == 0 or q.num % k != 0


# --- root isolation ---------------------------------------------------------

def test_isolation_examples():
    iv = isolate_unique_positive_root(P(-1, 1, 1))
    assert (iv.lo, iv.hi) == (Fraction(1, 2), Fraction(1))
    iv = isolate_unique_positive_root(P(-1, 1))
    assert iv.contains(1)
    # x^3 + x^2 - x deflates to x^2 + x - 1
    iv = isolate_unique_positive_root(P(0, -1, 1, 1))
    assert (iv.lo, iv.hi) == (Fraction(1, 2), Fraction(1))


def test_isolation_rejects_multiple_sign_changes():
    with pytest.raises(ValueError):
        isolate_unique_positive_root(P(2, -3, 1))  # roots 1 and 2


def test_refine_examples():
    golden = (sympy.sqrt(5) - 1) / 2
    iv = refine_root(P(-1, 1, 1), RatInterval(Fraction(1, 2), 1), Fraction(1, 1000))
    assert iv.width <= Fraction(1, 1000)
    assert iv.lo <= golden <= iv.hi
    iv = refine_root(P(-1, 1), RatInterval(Fraction(1, 2), Fraction(3, 2)), Fraction(1, 10**6))
    assert iv.contains(1)
    iv = refine_root(P(-2, 0, 1), RatInterval(1, 2), Fraction(1, 100))
    assert iv.width <= Fraction(1, 100) and iv.lo ** 2 <= 2 <= iv.hi ** 2


@settings(max_examples=60)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=4),
       st.lists(st.integers(1, 9), min_size=1, max_size=4))
def test_isolation_sound_on_one_sign_change(neg, pos):
    # negative low coefficients, positive high ones: exactly one positive root
    p = IntPoly([-c for c in neg] + pos)
    iv = isolate_unique_positive_root(p)
    assert iv.lo > 0
    roots = [r for r in sympy.Poly(list(reversed(p.coeffs)), X).real_roots() if r > 0]
    assert len(roots) == 1
    assert iv.lo <= roots[0] <= iv.hi
    fine = refine_root(p, iv, Fraction(1, 2**40))
    assert fine.width <= Fraction(1, 2**40)
    assert fine.lo <= roots[0] <= fine.hi


# --- Sturm ------------------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(P(-2, 0, 1), RatInterval(1, 2)) == 1
    assert sturm_count(P(1, 0, 1), RatInterval(-10, 10)) == 0
    assert sturm_count(P(-1, 1, 1), RatInterval(0, 1)) == 1


@settings(max_examples=60)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4),
       st.integers(-20, 0), st.integers(1, 20))
def test_sturm_counts_known_roots(roots, lo, hi):
    expr = sympy.prod([X - r for r in roots])
    p = IntPoly(reversed(sympy.Poly(expr, X).all_coeffs()))
    # endpoints chosen off the integer roots
    iv = RatInterval(Fraction(2 * lo - 1, 2), Fraction(2 * hi + 1, 2))
    assert sturm_count(p, iv) == len({r for r in roots if iv.lo < r < iv.hi})


# --- gcd --------------------------------------------------------------------

def test_gcd_examples():
    assert poly_gcd(P(-1, 0, 1), P(-1, 0, 0, 1)) == P(-1, 1)
    assert poly_gcd(P(-1, 1, 1), P(-1, 1, 1)) == P(-1, 1, 1)
    assert poly_gcd(P(-1, 1, 1), P(0, 0, 0, 1)) == P(1)
    assert sympy.resultant(X**2 + X - 1, X**3) != 0


small_poly = st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(IntPoly)


@settings(max_examples=150)
@given(small_poly, small_poly, small_poly)
def test_gcd_against_sympy(a, b, c):
    # multiply by a common factor so the gcd is usually non-trivial
    pa = to_sympy(a) * to_sympy(c)
    pb = to_sympy(b) * to_sympy(c)
    A = IntPoly(reversed(pa.all_coeffs()))
    B = IntPoly(reversed(pb.all_coeffs()))
    if A.is_zero and B.is_zero:
        return
    g = poly_gcd(A, B)
    want = sympy.gcd(pa, pb)
    assert g.degree == want.degree()
    if not A.is_zero:
        poly_divexact(A, g)
    if not B.is_zero:
        poly_divexact(B, g)


# --- interval evaluation ----------------------------------------------------

def test_eval_interval_examples():
    out = poly_eval_interval(P(0, 0, 1), RatInterval(-1, 2))
    assert out.lo <= 0 and out.hi >= 4
    out = poly_eval_interval(P(1, 1), RatInterval(0, 1))
    assert (out.lo, out.hi) == (1, 2)
    out = poly_eval_interval(P(-1, 1, 1), RatInterval(Fraction(1, 2), 1))
    assert out.lo <= Fraction(-1, 4) and out.hi >= 1


fracs = st.fractions(min_value=-4, max_value=4, max_denominator=50)


@settings(max_examples=100)
@given(small_poly, fracs, fracs, st.floats(0, 1))
def test_eval_interval_encloses_every_point(p, a, b, s):
    lo, hi = min(a, b), max(a, b)
    x = lo + (hi - lo) * Fraction(s)
    out = poly_eval_interval(p, RatInterval(lo, hi))
    assert out.lo <= p(x) <= out.hi
