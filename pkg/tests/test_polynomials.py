import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.subresultants_qq_zz import sylvester

from pisotmod.errors import RejectedInputError
from pisotmod.polynomials import (
    IntPoly,
    RatPoly,
    bareiss_det,
    char_poly_of_element,
    discriminant,
    format_poly,
    invert_mod,
    is_algebraic_integer,
    monicize_mod,
    mul_mod,
    pow_mod,
    resultant,
)

X = sympy.Symbol("X")

int_coeffs = st.lists(st.integers(-9, 9), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)
monic = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(lambda c: c + [1])


def to_sympy(cs):
    return sum(sympy.Integer(c) * X**i for i, c in enumerate(cs))


def test_arithmetic_and_formatting():
    a = IntPoly((1, 1))
    b = IntPoly((-1, 1))
    assert (a * b).coeffs == (-1, 0, 1)
    assert (a + b).coeffs == (0, 2)
    assert (a - a).is_zero()
    assert format_poly((-1, -4, 1)) == "X^2 - 4X - 1"
    assert format_poly((0,)) == "0"
    assert str(IntPoly((3, 0, -1))) == "-X^2 + 3"


def test_divrem_over_q():
    a = RatPoly((1, 2, 3, 4))
    b = RatPoly((1, 0, 2))
    q, r = a.divrem(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_intpoly_divrem_needs_monic():
    with pytest.raises(RejectedInputError):
        IntPoly((1, 2, 3)).divrem(IntPoly((1, 2)))


@settings(max_examples=60, deadline=None)
@given(int_coeffs, int_coeffs)
def test_resultant_matches_sylvester_oracle(a, b):
    # sympy.resultant swaps the arguments when deg a < deg b, so the
    # oracle is the determinant of sympy's own Sylvester matrix.
    oracle = sylvester(to_sympy(a), to_sympy(b), X).det()
    assert resultant(IntPoly(a), IntPoly(b)) == oracle
    if len(a) >= len(b):
        assert oracle == sympy.resultant(to_sympy(a), to_sympy(b), X)


@settings(max_examples=60, deadline=None)
@given(int_coeffs, int_coeffs)
def test_resultant_sign_law(a, b):
    pa, pb = IntPoly(a), IntPoly(b)
    assert resultant(pa, pb) == (-1) ** (pa.degree * pb.degree) * resultant(pb, pa)


@settings(max_examples=60, deadline=None)
@given(int_coeffs)
def test_discriminant_matches_sympy(a):
    p = IntPoly(a)
    if p.degree < 2:
        return
    assert discriminant(p) == sympy.discriminant(to_sympy(a), X)


def test_discriminant_of_split_polynomials():
    for roots in ([1, 2, 5], [0, -3, 4, 7], [2, 3]):
        p = IntPoly((1,))
        for r in roots:
            p = p * IntPoly((-r, 1))
        direct = math.prod((x - y) ** 2 for i, x in enumerate(roots) for y in roots[i + 1 :])
        assert discriminant(p) == direct


def test_discriminant_against_vandermonde():
    rng = random.Random(11)
    for _ in range(60):
        k = rng.randint(2, 5)
        cs = [rng.randint(-6, 6) for _ in range(k)] + [1]
        d = discriminant(IntPoly(cs))
        if d == 0:
            continue
        roots = np.roots(cs[::-1])
        v = np.vander(roots, increasing=True)
        approx = np.linalg.det(v) ** 2
        assert abs(approx - d) <= 1e-6 * abs(d) + 1e-6


def test_bareiss_matches_sympy():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        m = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(m) == sympy.Matrix(m).det()


def test_char_poly_matches_resultant_oracle():
    rng = random.Random(7)
    Y = sympy.Symbol("Y")
    for _ in range(40):
        k = rng.randint(2, 4)
        p = [rng.randint(-5, 5) for _ in range(k)] + [1]
        g = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k)]
        cp = char_poly_of_element(IntPoly(p), RatPoly(g))
        gy = sum(sympy.Rational(c.numerator, c.denominator) * Y**i for i, c in enumerate(g))
        py = sum(sympy.Integer(c) * Y**i for i, c in enumerate(p))
        oracle = sympy.Poly(sympy.resultant(py, X - gy, Y), X).monic()
        assert [sympy.Rational(c.numerator, c.denominator) for c in reversed(cp.coeffs)] == oracle.all_coeffs()


def test_char_poly_vanishes_at_floating_value():
    rng = random.Random(3)
    for _ in range(30):
        k = rng.randint(2, 4)
        p = [rng.randint(-5, 5) for _ in range(k)] + [1]
        g = [rng.randint(-3, 3) for _ in range(k)]
        cp = char_poly_of_element(IntPoly(p), IntPoly(g))
        for root in np.roots(p[::-1]):
            val = sum(c * root**i for i, c in enumerate(g))
            f = sum(float(c) * val**i for i, c in enumerate(cp.coeffs))
            scale = sum(abs(float(c)) * abs(val) ** i for i, c in enumerate(cp.coeffs))
            assert abs(f) < 1e-6 * max(1.0, scale)


def test_invert_and_pow_mod():
    P = IntPoly((-1, -4, 1))
    g = RatPoly((3, 2))
    inv = invert_mod(g, P)
    assert mul_mod(g, inv, P) == RatPoly((1,))
    assert pow_mod(IntPoly((0, 1)), 3, P) == RatPoly((4, 17))


def test_invert_mod_not_coprime():
    with pytest.raises(ZeroDivisionError):
        invert_mod(IntPoly((-1, 1)), IntPoly((-1, 0, 1)))


def test_monicize_mod_postcondition():
    rng = random.Random(2024)
    done = 0
    while done < 100:
        k = rng.randint(2, 6)
        p = IntPoly([rng.randint(-6, 6) for _ in range(k)] + [1])
        r = rng.randint(0, k - 1)
        q_in = IntPoly([rng.randint(-6, 6) for _ in range(r)] + [rng.choice([-3, -2, -1, 1, 2, 3])])
        if q_in.content() != 1:
            continue
        if resultant(p, q_in) == 0:
            continue
        R = monicize_mod(p, q_in)
        assert (q_in * R % p)[k - 1] == 1
        done += 1


def test_non_integral_remark_cubic():
    # X^3 + 30X + 90: the discriminant has no factor 13, and
    # (20 - 4θ + θ^2)/13 is not an algebraic integer.
    P = IntPoly((90, 30, 0, 1))
    d = discriminant(P)
    assert d == -326700 == -(2**2) * 3**3 * 5**2 * 11**2
    assert d % 13 != 0
    assert not is_algebraic_integer(P, RatPoly((Fraction(20, 13), Fraction(-4, 13), Fraction(1, 13))))
    assert is_algebraic_integer(P, IntPoly((20, -4, 1)))
