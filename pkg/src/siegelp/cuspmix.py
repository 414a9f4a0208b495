"""Change of basis between cusp series and U(p)-eigenseries.

The (n+1)x(n+1) upper-triangular matrices here convert between the two
families of ramified series: B (entries b_ij) expresses eigenseries in cusp
series, its inverse C (entries c_ij) goes back.  b_ij has both an inductive
definition, driven by the Hecke-action coefficients m_ij, and a closed
product form; keeping both is what lets the tests pin the closed form.  For
the quadratic character b, c vanish off the checkerboard i = j mod 2.

The two rational-function identities guarding the closed forms (telescoping
sums evaluating to -1 and to y^r - 1) are exposed at the bottom as plain
Fraction evaluations; they are test utilities, not part of the public API.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import PoleAtSample, PreconditionError
from .qfield import Character, chi_p_minus_one, field_disc
from .ratfun import RatFunc


def _range_prod(p: int, lo: int, hi: int) -> Fraction:
    """prod_{k=lo}^{hi} (p^k - 1), empty product = 1."""
    out = Fraction(1)
    for k in range(lo, hi + 1):
        out *= Fraction(p) ** k - 1
    return out


def m_coeff(character: Character, p: int, i: int, j: int) -> RatFunc:
    """Coefficient of the U(p) action on the cusp Eisenstein basis.

    Always a monomial c * X^(-i) with rational c; zero below the diagonal
    and, for the quadratic character, off the checkerboard.
    """
    d = field_disc(p, character)
    if i < 0 or j < 0:
        raise PreconditionError("indices must be non-negative")
    if i > j:
        return RatFunc.zero(p, d)
    r = j - i
    if character is Character.QUADRATIC:
        if r % 2:
            return RatFunc.zero(p, d)
        c = (
            Fraction(chi_p_minus_one(p)) ** (r // 2)
            * Fraction(p) ** (-j * (j + 1) // 2 + r * r // 4)
            * _range_prod(p, i + 1, j)
            / _range_prod2(p, r // 2)
        )
        return RatFunc.monomial(c, -i, p, d)
    if r % 2 == 0:
        c = (
            Fraction(p) ** (-j * (j + 1) // 2 + r * (r + 2) // 4)
            * _range_prod(p, i + 1, j)
            / _range_prod2(p, r // 2)
        )
    else:
        c = (
            Fraction(p) ** (-j * (j + 1) // 2 + (r * r - 1) // 4)
            * _range_prod(p, i + 1, j)
            / _range_prod2(p, (r - 1) // 2)
        )
    return RatFunc.monomial(c, -i, p, d)


def _range_prod2(p: int, t: int) -> Fraction:
    """prod_{k=1}^{t} (p^(2k) - 1)."""
    out = Fraction(1)
    for k in range(1, t + 1):
        out *= Fraction(p) ** (2 * k) - 1
    return out


@functools.lru_cache(maxsize=None)
def b_coeff_inductive(character: Character, p: int, i: int, j: int) -> RatFunc:
    """b_ij from its defining recursion in the m-coefficients."""
    d = field_disc(p, character)
    if i > j:
        return RatFunc.zero(p, d)
    if i == j:
        return RatFunc.one(p, d)
    if character is Character.QUADRATIC and (j - i) % 2:
        return RatFunc.zero(p, d)
    acc = RatFunc.zero(p, d)
    for k in range(i, j):
        mk = m_coeff(character, p, k, j)
        if mk.is_zero():
            continue
        acc = acc + mk * b_coeff_inductive(character, p, i, k)
    num = RatFunc.monomial(Fraction(p) ** (j * (j + 1) // 2), j, p, d)
    # (j-i)(j+i+1) is even, so the denominator exponent is integral
    den = RatFunc.monomial(
        Fraction(p) ** ((j - i) * (j + i + 1) // 2), j - i, p, d
    ) - RatFunc.one(p, d)
    return num / den * acc


def b_coeff_closed(character: Character, p: int, i: int, j: int) -> RatFunc:
    """The closed product form of b_ij."""
    d = field_disc(p, character)
    if i > j:
        return RatFunc.zero(p, d)
    if i == j:
        return RatFunc.one(p, d)
    r = j - i
    pr = Fraction(p)
    if character is Character.QUADRATIC:
        if r % 2:
            return RatFunc.zero(p, d)
        num = RatFunc.monomial(
            Fraction(-chi_p_minus_one(p)) ** (r // 2)
            * pr ** (r // 2)
            * _range_prod(p, i + 1, j),
            r,
            p,
            d,
        )
        den = RatFunc.one(p, d)
        for k in range(1, r // 2 + 1):
            den = den * RatFunc.one_minus(pr ** (2 * i + 1 + 2 * k), 2, p, d)
            den = den * RatFunc.const(pr ** (2 * k) - 1, p, d)
        return num / den
    half = r // 2 if r % 2 == 0 else (r - 1) // 2
    sign = Fraction(-1) ** (r // 2 if r % 2 == 0 else (r + 1) // 2)
    num = RatFunc.monomial(sign * _range_prod(p, i + 1, j), r, p, d)
    if r % 2 == 0:
        num = num * RatFunc.one_minus(pr ** (j + 1), 1, p, d)
    den = RatFunc.one_minus(pr ** (i + 1), 1, p, d)
    for k in range(1, half + 1):
        den = den * RatFunc.one_minus(pr ** (2 * i + 1 + 2 * k), 2, p, d)
        den = den * RatFunc.const(pr ** (2 * k) - 1, p, d)
    return num / den


def c_coeff(character: Character, p: int, i: int, j: int) -> RatFunc:
    """Entry of the inverse matrix C = B^-1, in closed form."""
    d = field_disc(p, character)
    if i > j:
        return RatFunc.zero(p, d)
    if i == j:
        return RatFunc.one(p, d)
    r = j - i
    pr = Fraction(p)
    if character is Character.QUADRATIC:
        if r % 2:
            return RatFunc.zero(p, d)
        num = RatFunc.monomial(
            Fraction(chi_p_minus_one(p)) ** (r // 2)
            * pr ** ((r // 2) ** 2)
            * _range_prod(p, i + 1, j),
            r,
            p,
            d,
        )
        den = RatFunc.one(p, d)
        for k in range(1, r // 2 + 1):
            den = den * RatFunc.one_minus(pr ** (i + j - 1 + 2 * k), 2, p, d)
            den = den * RatFunc.const(pr ** (2 * k) - 1, p, d)
        return num / den
    if r % 2 == 0:
        num = RatFunc.monomial(
            pr ** (r * (r + 2) // 4) * _range_prod(p, i + 1, j), r, p, d
        )
        num = num * RatFunc.one_minus(pr**i, 1, p, d)
        den = RatFunc.one_minus(pr**j, 1, p, d)
        for k in range(1, r // 2 + 1):
            den = den * RatFunc.one_minus(pr ** (i + j - 1 + 2 * k), 2, p, d)
            den = den * RatFunc.const(pr ** (2 * k) - 1, p, d)
        return num / den
    num = RatFunc.monomial(
        pr ** ((r * r - 1) // 4) * _range_prod(p, i + 1, j), r, p, d
    )
    den = RatFunc.one_minus(pr**j, 1, p, d)
    for k in range(1, (r - 1) // 2 + 1):
        den = den * RatFunc.one_minus(pr ** (i + j + 2 * k), 2, p, d)
        den = den * RatFunc.const(pr ** (2 * k) - 1, p, d)
    return num / den


@functools.lru_cache(maxsize=None)
def b_matrix(n: int, character: Character, p: int):
    """(n+1)x(n+1) matrix of closed-form b_ij."""
    return tuple(
        tuple(b_coeff_closed(character, p, i, j) for j in range(n + 1))
        for i in range(n + 1)
    )


@functools.lru_cache(maxsize=None)
def c_matrix(n: int, character: Character, p: int):
    """(n+1)x(n+1) matrix of c_ij."""
    return tuple(
        tuple(c_coeff(character, p, i, j) for j in range(n + 1))
        for i in range(n + 1)
    )


def mat_mul(A, B, p: int, d: int):
    size = len(A)
    return tuple(
        tuple(
            sum((A[i][k] * B[k][j] for k in range(size)), RatFunc.zero(p, d))
            for j in range(size)
        )
        for i in range(size)
    )


def is_identity(M, p: int, d: int) -> bool:
    one, zero = RatFunc.one(p, d), RatFunc.zero(p, d)
    return all(
        M[i][j] == (one if i == j else zero)
        for i in range(len(M))
        for j in range(len(M))
    )


# ---------------------------------------------------------------------------
# the two telescoping-sum identities (test utilities)


def lemma_sum_A(x: Fraction, y: Fraction, r: int) -> Fraction:
    """sum_{t=1}^{r} prod_{k=1}^{t} (x^(k-1)y-1)(x^(r+1-k)-1) / ((x^(r-k)-y)(x^k-1)).

    Identically -1 away from the poles.
    """
    x, y = Fraction(x), Fraction(y)
    total = Fraction(0)
    term = Fraction(1)
    for t in range(1, r + 1):
        k = t
        den = (x ** (r - k) - y) * (x**k - 1)
        if den == 0:
            raise PoleAtSample(f"denominator vanishes at k={k} for (x={x}, y={y})")
        term *= (x ** (k - 1) * y - 1) * (x ** (r + 1 - k) - 1) / den
        total += term
    return total


def lemma_sum_B(x: Fraction, y: Fraction, r: int) -> Fraction:
    """sum_{t=1}^{r} prod_{k=1}^{t} (y-x^(k-1))(x^(r+1-k)-1) / (x^k-1).

    Identically y^r - 1 away from the poles.
    """
    x, y = Fraction(x), Fraction(y)
    total = Fraction(0)
    term = Fraction(1)
    for t in range(1, r + 1):
        k = t
        den = x**k - 1
        if den == 0:
            raise PoleAtSample(f"x^{k} = 1 at x={x}")
        term *= (y - x ** (k - 1)) * (x ** (r + 1 - k) - 1) / den
        total += term
    return total
