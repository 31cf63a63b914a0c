"""Exact scalar field: canonical form, field laws, star, evaluation."""

import random
from fractions import Fraction

import pytest

from fuzzyqrg.scalars import GaussRational, ParamScalar, ZERO, ONE, I, LP


def rand_scalar(rng, max_deg=3):
    """Random nonzero-denominator rational function in lp."""
    def rand_poly():
        return tuple(
            GaussRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                          Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            for _ in range(rng.randint(1, max_deg + 1)))
    num = rand_poly()
    den = rand_poly()
    while not any(den):
        den = rand_poly()
    return ParamScalar(num, den)


def test_gauss_rational_basics():
    a = GaussRational(1, 2)
    b = GaussRational(Fraction(1, 3), -1)
    assert a + b == GaussRational(Fraction(4, 3), 1)
    assert a * b == GaussRational(Fraction(7, 3), Fraction(-1, 3))
    assert (a / a) == GaussRational(1)
    assert a.conjugate() == GaussRational(1, -2)
    assert complex(GaussRational(1, -1)) == 1 - 1j


def test_canonical_form_reduction():
    # (lp^2 - 1) / (lp - 1) reduces to lp + 1
    g1 = GaussRational(1)
    s = ParamScalar((GaussRational(-1), GaussRational(0), g1),
                    (GaussRational(-1), g1))
    assert s == LP + 1
    assert s.den == (g1,)


def test_canonical_form_monic_denominator():
    # 1 / (2 lp) has monic denominator lp and numerator 1/2
    s = ONE / (2 * LP)
    assert s.den == (GaussRational(0), GaussRational(1))
    assert s.num == (GaussRational(Fraction(1, 2)),)


def test_equality_is_structural():
    rng = random.Random(101)
    for _ in range(50):
        a = rand_scalar(rng)
        b = rand_scalar(rng)
        c = a * b
        assert (c / b) == a
        assert ((a - b) + b) == a
        d = a - a
        assert d.is_zero() and d == ZERO


def test_field_laws_random():
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a + b == b + a
        if not b.is_zero():
            assert (a / b) * b == a


def test_star_is_conjugation():
    two_i_lp = 2 * I * LP
    assert two_i_lp.star() == -2 * I * LP
    assert (ONE / (ONE - LP * LP)).star() == ONE / (ONE - LP * LP)
    rng = random.Random(13)
    for _ in range(30):
        a, b = rand_scalar(rng), rand_scalar(rng)
        assert (a * b).star() == a.star() * b.star()
        assert (a + b).star() == a.star() + b.star()
        assert a.star().star() == a


def test_eval_homomorphism():
    s = ONE / (2 * I * LP)
    assert abs(s.eval(0.5) - (-1j)) < 1e-12
    rng = random.Random(23)
    for _ in range(30):
        a, b = rand_scalar(rng), rand_scalar(rng)
        v = rng.uniform(0.1, 0.9)
        try:
            lhs = (a * b).eval(v)
            rhs = a.eval(v) * b.eval(v)
        except ZeroDivisionError:
            continue
        scale = max(1.0, abs(lhs))
        assert abs(lhs - rhs) <= 1e-9 * scale
        lhs = (a + b).eval(v)
        rhs = a.eval(v) + b.eval(v)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_eval_at_pole_raises():
    s = ONE / LP
    with pytest.raises(ZeroDivisionError):
        s.eval(0.0)


def test_pow():
    assert LP ** 3 == LP * LP * LP
    assert (2 * LP) ** -2 == ONE / (4 * LP * LP)
    assert LP ** 0 == ONE


def test_rendering_uses_lp():
    assert str(LP) == "lp"
    assert str(ONE - LP * LP) == "1 - lp^2"
    # denominators are normalized monic, so 1/(1 - lp^2) = (-1)/(lp^2 - 1)
    s = ONE / (ONE - LP * LP)
    assert str(s) == "(-1)/(-1 + lp^2)"
    assert str(2 * I * LP) == "2*i*lp"
