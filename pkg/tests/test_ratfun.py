import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from siegelp.errors import DivisionByZero, NegativeExponent
from siegelp.qfield import QElem
from siegelp.ratfun import LaurentPoly, RatFunc

P, D = 3, 3  # default context for most tests


def lp(coeffs, d=D):
    return LaurentPoly(coeffs, d)


def rf(num, den=None, p=P, d=D):
    den_poly = LaurentPoly.one(d) if den is None else lp(den, d)
    return RatFunc(lp(num, d), den_poly, p)


class TestNormalization:
    def test_monomial_cancellation(self):
        assert rf({2: 1}, {1: 1}) == rf({1: 1})

    def test_gcd_cancellation(self):
        # (1 - X^2)/(1 - X) -> 1 + X
        assert rf({0: 1, 2: -1}, {0: 1, 1: -1}) == rf({0: 1, 1: 1})

    def test_scale_then_cancel(self):
        # (1 - 27 X^2) X / (2 - 54 X^2) -> X/2 at p = 3
        got = rf({1: 1, 3: -27}, {0: 2, 2: -54})
        assert got == rf({1: Fraction(1, 2)})

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZero):
            rf({0: 1}, {})

    def test_canonical_den_constant_one(self):
        x = rf({1: 2, 4: -5}, {0: 7, 1: 3, 2: 1})
        assert x.den.coeffs[0] == QElem.of(1, D)

    def test_idempotent(self):
        x = rf({-2: 3, 1: 5}, {0: 1, 2: -9})
        again = RatFunc(x.num, x.den, x.p)
        assert again == x


class TestArithmetic:
    def test_add_zero(self):
        x = rf({1: 2}, {0: 1, 1: -3})
        assert x + RatFunc.zero(P, D) == x

    def test_mul_inverse(self):
        x = rf({1: 2, 2: 5}, {0: 1, 1: -3})
        assert x * (1 / x) == RatFunc.one(P, D)

    def test_telescoping(self):
        one_minus_x = {0: 1, 1: -1}
        a = rf({0: 1}, one_minus_x)
        b = rf({1: 1}, one_minus_x)
        assert a - b == RatFunc.one(P, D)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            RatFunc.one(P, D) / RatFunc.zero(P, D)

    def test_cross_multiplication_equality(self):
        rng = random.Random(5)
        for _ in range(40):
            num1 = {rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(3)}
            den1 = {0: 1, rng.randint(1, 3): rng.randint(-4, 4)}
            num2 = {rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(3)}
            x, y = rf(num1, den1), rf(num2, den1)
            same = x == y
            cross = x.num * y.den == y.num * x.den
            assert same == cross


class TestSubstitutions:
    def test_shift_constant(self):
        c = rf({0: 7})
        assert c.shift_s() == c

    def test_shift_monomial(self):
        assert rf({1: 1}).shift_s() == rf({1: 3})

    def test_shift_geometric(self):
        # 1/(1 - p^2 X) -> 1/(1 - p^3 X) at p = 3
        got = rf({0: 1}, {0: 1, 1: -9}).shift_s()
        assert got == rf({0: 1}, {0: 1, 1: -27})

    def test_reflect_constant(self):
        c = rf({0: -5})
        assert c.reflect_s(2) == c

    def test_reflect_monomial(self):
        # X -> p^-(n+1) X^-1 = (1/9) X^-1 for n = 1, p = 3
        assert rf({1: 1}).reflect_s(1) == rf({-1: Fraction(1, 9)})

    def test_reflect_involution(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(1, 4)
            num = {rng.randint(-2, 4): rng.randint(-5, 5) for _ in range(3)}
            den = {0: 1, 1: rng.randint(-5, 5), 2: rng.randint(-5, 5)}
            x = rf(num, den)
            assert x.reflect_s(n).reflect_s(n) == x

    def test_shift_commutes_with_arithmetic(self):
        rng = random.Random(13)
        for _ in range(20):
            x = rf({rng.randint(-2, 3): rng.randint(1, 5)}, {0: 1, 1: -rng.randint(1, 4)})
            y = rf({rng.randint(-2, 3): rng.randint(1, 5)}, {0: 1, 2: rng.randint(1, 4)})
            assert (x + y).shift_s() == x.shift_s() + y.shift_s()
            assert (x * y).shift_s() == x.shift_s() * y.shift_s()


class TestTaylor:
    def test_geometric(self):
        got = rf({0: 1}, {0: 1, 1: -1}).taylor(3)
        assert got == [QElem.of(1, D)] * 4

    def test_shifted_geometric(self):
        got = rf({1: 1}, {0: 1, 1: -3}).taylor(3)
        assert [c.rational_part() for c in got] == [0, 1, 3, 9]

    def test_finite(self):
        got = rf({0: 1, 2: -1}, {0: 1, 1: -1}).taylor(2)
        assert [c.rational_part() for c in got] == [1, 1, 0]

    def test_laurent_rejected(self):
        with pytest.raises(NegativeExponent):
            rf({-1: 1}).taylor(2)

    def test_cauchy_product(self):
        rng = random.Random(17)
        for _ in range(20):
            x = rf({0: 1, 1: rng.randint(-3, 3)}, {0: 1, 1: -2, 3: rng.randint(-2, 2)})
            y = rf({0: rng.randint(1, 3), 2: 1}, {0: 1, 2: rng.randint(-2, 2)})
            K = 6
            tx, ty, txy = x.taylor(K), y.taylor(K), (x * y).taylor(K)
            for k in range(K + 1):
                acc = QElem.zero(D)
                for j in range(k + 1):
                    acc = acc + tx[j] * ty[k - j]
                assert acc == txy[k]


coeff = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60)
@given(
    n0=coeff, n1=coeff, n2=coeff, d1=coeff, d2=coeff,
    shift=st.integers(min_value=-2, max_value=2),
)
def test_constructor_invariants(n0, n1, n2, d1, d2, shift):
    num = lp({shift: n0, shift + 1: n1, shift + 3: n2})
    den = lp({0: 1, 1: d1, 2: d2})
    x = RatFunc(num, den, P)
    if x.is_zero():
        assert x.den == LaurentPoly.one(D)
        return
    assert min(x.den.coeffs) == 0
    assert x.den.coeffs[0] == QElem.of(1, D)
    assert RatFunc(x.num, x.den, P) == x


class TestJson:
    def test_round_trip(self):
        x = RatFunc(
            lp({-1: QElem(Fraction(1, 2), Fraction(3), -3), 2: 5}, -3),
            lp({0: 1, 1: QElem(Fraction(0), Fraction(-2, 7), -3)}, -3),
            3,
        )
        assert RatFunc.from_json(x.to_json()) == x

    def test_schema_shape(self):
        x = rf({1: 2}, {0: 1, 1: -3})
        obj = x.to_json()
        assert set(obj) == {"num", "den", "p", "d"}
        assert obj["num"]["1"] == ["2", "0"]
        assert obj["den"]["0"] == ["1", "0"]


def test_factored_str_peels_euler_factors():
    x = rf({0: 1}, {0: 1, 1: -3}) * rf({0: 1}, {0: 1, 1: -9})
    assert "1 - 3*X" in x.factored_str()
    assert "1 - 9*X" in x.factored_str()
