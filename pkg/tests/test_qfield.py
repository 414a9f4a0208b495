import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siegelp.errors import ContextError, DivisionByZero, NotInField
from siegelp.qfield import (
    Character,
    QElem,
    chi_p_minus_one,
    eps_p_half_power,
    field_disc,
    parse_qelem,
)


def q(a, b, d):
    return QElem(Fraction(a), Fraction(b), d)


class TestArithmetic:
    def test_multiplicative_identity(self):
        x = q(Fraction(3, 7), Fraction(-2, 5), 5)
        assert q(1, 0, 5) * x == x

    def test_sqrt_squares_to_d(self):
        assert q(0, 1, 5) * q(0, 1, 5) == q(5, 0, 5)

    def test_norm_form(self):
        # (1+w)(1-w) = 1 - d = 4 for d = -3
        assert q(1, 1, -3) * q(1, -1, -3) == q(4, 0, -3)
        assert q(1, 1, -3).norm() == 4

    def test_context_mismatch(self):
        with pytest.raises(ContextError):
            q(1, 1, 5) * q(1, 1, -3)

    def test_inverse_of_one(self):
        assert q(1, 0, 5).inverse() == q(1, 0, 5)

    def test_inverse_of_sqrt(self):
        assert q(0, 1, 5).inverse() == q(0, Fraction(1, 5), 5)

    def test_inverse_conjugate_over_norm(self):
        assert q(1, 1, -3).inverse() == q(Fraction(1, 4), Fraction(-1, 4), -3)

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            q(0, 0, 7).inverse()

    def test_int_coercion(self):
        x = q(2, 3, 5)
        assert x + 1 == q(3, 3, 5)
        assert 2 * x == q(4, 6, 5)
        assert x - Fraction(1, 2) == q(Fraction(3, 2), 3, 5)


small_rat = st.fractions(
    min_value=-4, max_value=4, max_denominator=5
)


@given(a1=small_rat, b1=small_rat, a2=small_rat, b2=small_rat, a3=small_rat, b3=small_rat)
def test_field_axioms(a1, b1, a2, b2, a3, b3):
    d = -3
    x, y, z = q(a1, b1, d), q(a2, b2, d), q(a3, b3, d)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == q(1, 0, d)


@given(a1=small_rat, b1=small_rat, a2=small_rat, b2=small_rat)
def test_norm_multiplicative(a1, b1, a2, b2):
    x, y = q(a1, b1, 7), q(a2, b2, 7)
    assert (x * y).norm() == x.norm() * y.norm()


class TestEpsHalfPower:
    def test_eps_times_sqrt_p_is_sqrt_d(self):
        for p in (3, 5, 7, 11, 13):
            got = eps_p_half_power(p, Character.QUADRATIC, k=1, eps_exponent=1)
            assert got == q(0, 1, field_disc(p, Character.QUADRATIC))

    def test_trivial_integer_power(self):
        assert eps_p_half_power(5, Character.TRIVIAL, k=2) == q(5, 0, 5)

    def test_not_in_field(self):
        # eps_7 = sqrt(-1), and sqrt(-1)*7 does not lie in Q(sqrt(-7))
        with pytest.raises(NotInField):
            eps_p_half_power(7, Character.QUADRATIC, k=2, eps_exponent=1)

    def test_trivial_sqrt_p(self):
        assert eps_p_half_power(7, Character.TRIVIAL, k=3) == q(0, 7, 7)

    def test_negative_exponents(self):
        assert eps_p_half_power(5, Character.TRIVIAL, k=-2) == q(
            Fraction(1, 5), 0, 5
        )
        got = eps_p_half_power(3, Character.QUADRATIC, k=-1, eps_exponent=-1)
        # (eps_3 sqrt(3))^-1 = sqrt(-3)^-1 = -w/3 for w = sqrt(-3)
        assert got == q(0, Fraction(-1, 3), -3)

    def test_multiplicativity_where_representable(self):
        for p in (3, 5, 7):
            for character in Character:
                vals = {}
                for e in range(-3, 4):
                    for k in range(-3, 4):
                        try:
                            vals[(e, k)] = eps_p_half_power(p, character, k, e)
                        except NotInField:
                            pass
                for (e1, k1), v1 in vals.items():
                    for (e2, k2), v2 in vals.items():
                        both = vals.get((e1 + e2, k1 + k2))
                        if both is not None:
                            assert v1 * v2 == both, (p, character, e1, k1, e2, k2)

    def test_eps_squared_is_chi_minus_one(self):
        for p in (3, 5, 7, 11):
            got = eps_p_half_power(p, Character.QUADRATIC, k=0, eps_exponent=2)
            want = q(chi_p_minus_one(p), 0, field_disc(p, Character.QUADRATIC))
            assert got == want


class TestText:
    def test_rational_round_trip(self):
        for a in (Fraction(3), Fraction(-5, 7), Fraction(0)):
            x = q(a, 0, 5)
            assert parse_qelem(str(x), 5) == x

    def test_mixed_round_trip(self):
        rng = random.Random(1)
        for _ in range(50):
            x = q(
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                -3,
            )
            assert parse_qelem(str(x), -3) == x
