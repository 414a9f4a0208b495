"""The ramified-series engine.

Two bases of ramified series are computed for a diagonal N at an odd prime
p: the U(p)-characteristic family S^(nu) (eigenbasis) and the cusp family
S^w_nu, related through the triangular c-matrix.  The engine anchors the
eigenbasis at its two ends -- S^(n) = 1 and the closed form of S^(0) coming
from the functional equation -- and fills 0 < nu < n with the two-term
recursion whose coefficient is the H-factor of the inductive relation
S(N') - S(N) = H(N) * S(N_0).

Every value is an exact RatFunc over Q(sqrt(d)); for the trivial character
the results are asserted to be plain rationals (a nonzero sqrt component can
only come from a parity bug and is a hard error).  The identity checkers at
the bottom (functional equation, scaling, inductive relations) recompute
both sides independently and return structured diffs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .cuspmix import b_coeff_closed, c_coeff
from .errors import NotInField, PreconditionError
from .localinv import (
    DiagonalForm,
    HalfIntMatrix,
    LocalData,
    jordan_diagonalize_Zp,
    local_data,
)
from .qfield import Character, QElem, eps_p_half_power, field_disc
from .ratfun import RatFunc


@dataclass(frozen=True)
class SeriesValue:
    """A computed series with its zeta-factor split S = beta * F."""

    S: RatFunc
    beta: RatFunc
    F: RatFunc
    local: LocalData


def _chi_factor(chi: int, p: int, half_exp2: int, x_exp: int, d: int) -> RatFunc:
    """1 - chi * p^(half_exp2/2) * X^x_exp, or 1 when chi = 0.

    ``half_exp2`` counts half-powers; it must be even whenever chi != 0.
    """
    if chi == 0:
        return RatFunc.one(p, d)
    assert half_exp2 % 2 == 0, "character factor with a half power of p"
    c = Fraction(chi) * Fraction(p) ** (half_exp2 // 2)
    return RatFunc.one_minus(c, x_exp, p, d)


def beta_factor(
    character: Character, p: int, n: int, nu: int, local: LocalData
) -> RatFunc:
    """The zeta factor of S^(nu): the Euler-type part split off before the FE."""
    if n < 1:
        raise PreconditionError("beta needs degree n >= 1")
    if not 0 <= nu <= n:
        raise PreconditionError(f"nu={nu} out of range 0..{n}")
    d = field_disc(p, character)
    pw = Fraction(p)
    num = RatFunc.one(p, d)
    for i in range(1, nu // 2 + 1):
        num = num * RatFunc.one_minus(pw ** (2 * nu + 1 - 2 * i), 2, p, d)
    for i in range(nu // 2 + 1, n // 2 + 1):
        num = num * RatFunc.one_minus(pw ** (2 * i), 2, p, d)
    if character is Character.TRIVIAL:
        num = num * RatFunc.one_minus(pw**nu, 1, p, d)
        den = _chi_factor(local.chiN_p, p, n, 1, d)
    else:
        # (eps_p p^(-1/2))^(-nu) from the denominator of the display
        num = num * RatFunc.const(
            eps_p_half_power(p, character, k=nu, eps_exponent=-nu), p, d
        )
        den = _chi_factor(local.chiNstar_p, p, n, 1, d)
    return num / den


def s0_closed(character: Character, p: int, N: DiagonalForm) -> RatFunc:
    """Closed form of S^(0), obtained from the FE applied to S^(n) = 1."""
    loc = local_data(N, p)
    n = N.n
    if n < 1:
        raise PreconditionError("degree must be >= 1")
    d = field_disc(p, character)
    pw = Fraction(p)
    if character is Character.TRIVIAL:
        lead = eps_p_half_power(p, character, k=(n + 1) * loc.e_p)
        lead = lead * loc.zeta_p
        num = RatFunc.monomial(lead, loc.e_p, p, d)
        num = num * RatFunc.one_minus(1, 1, p, d)
        num = num * _chi_factor(loc.chiN_p, p, -n - 2, -1, d)
        den = RatFunc.one_minus(pw**-1, -1, p, d)
        den = den * _chi_factor(loc.chiN_p, p, n, 1, d)
        for i in range(1, n // 2 + 1):
            num = num * RatFunc.one_minus(pw ** (2 * i), 2, p, d)
            den = den * RatFunc.one_minus(pw ** (-2 * i - 1), -2, p, d)
        out = num / den
        if not out.is_rational_coeffs():
            raise NotInField("trivial-character series left the rationals")
        return out
    e = loc.d_p + loc.a_N
    lead = eps_p_half_power(p, character, k=(n + 1) * e - n, eps_exponent=n)
    lead = lead * loc.eta_p
    num = RatFunc.monomial(lead, e, p, d)
    num = num * _chi_factor(loc.chiNstar_p, p, -n - 2, -1, d)
    den = _chi_factor(loc.chiNstar_p, p, n, 1, d)
    for j in range(1, n // 2 + 1):
        num = num * RatFunc.one_minus(pw ** (2 * j), 2, p, d)
        den = den * RatFunc.one_minus(pw ** (-1 - 2 * j), -2, p, d)
    return num / den


def h_factor(character: Character, p: int, N: DiagonalForm) -> RatFunc:
    """Coefficient H_n(psi, N, s) of the inductive relation S(N')-S(N) = H*S(N_0)."""
    n = N.n
    if n < 1:
        raise PreconditionError("H-factor needs degree n >= 1")
    d = field_disc(p, character)
    pw = Fraction(p)
    N0 = N.leading_block()
    loc = local_data(N, p)
    loc0 = local_data(N0, p)
    u_n = N.exponents[-1]

    if character is Character.TRIVIAL:
        if n % 2 == 0:
            x_exp = u_n - loc.a_N + 2
            lead = eps_p_half_power(
                p, character, k=loc0.d_p + (n + 1) * x_exp
            ) * loc0.zeta_p
            out = RatFunc.monomial(lead, x_exp, p, d)
            out = out * RatFunc.one_minus(pw**n, 2, p, d)
            out = out * _chi_factor(loc.chiN_p, p, -n - 2, -1, d)
            out = out / _chi_factor(loc.chiN_p, p, n, 1, d)
        else:
            x_exp = u_n - loc0.a_N + 2
            lead = eps_p_half_power(p, character, k=loc.d_p + n * x_exp) * (
                -loc.zeta_p
            )
            out = RatFunc.monomial(lead, x_exp, p, d)
            out = out * RatFunc.one_minus(pw ** (n + 1), 2, p, d)
            out = out * _chi_factor(loc0.chiN_p, p, -(n - 1), -1, d)
            out = out / _chi_factor(loc0.chiN_p, p, n + 1, 1, d)
        if not out.is_rational_coeffs():
            raise NotInField("trivial-character H-factor left the rationals")
        return out

    if n % 2 == 0:
        x_exp = u_n + loc.a_N + 1
        lead = eps_p_half_power(
            p, character, k=loc0.d_p + (n + 1) * x_exp, eps_exponent=1
        ) * loc0.eta_p
        out = RatFunc.monomial(lead, x_exp, p, d)
        out = out * RatFunc.one_minus(pw**n, 2, p, d)
        out = out * _chi_factor(loc.chiNstar_p, p, -n - 2, -1, d)
        out = out / _chi_factor(loc.chiNstar_p, p, n, 1, d)
    else:
        x_exp = u_n + loc0.a_N + 1
        lead = eps_p_half_power(
            p, character, k=loc.d_p + n * x_exp, eps_exponent=1
        ) * (-loc.eta_p)
        out = RatFunc.monomial(lead, x_exp, p, d)
        out = out * RatFunc.one_minus(pw ** (n + 1), 2, p, d)
        out = out * _chi_factor(loc0.chiNstar_p, p, -(n - 1), -1, d)
        out = out / _chi_factor(loc0.chiNstar_p, p, n + 1, 1, d)
    return out


@functools.lru_cache(maxsize=None)
def _s_char_cached(
    character: Character, p: int, units: tuple, exponents: tuple, nu: int
) -> RatFunc:
    N = DiagonalForm(p, units, exponents)
    n = N.n
    d = field_disc(p, character)
    if nu == n:
        return RatFunc.one(p, d)
    if nu == 0:
        return s0_closed(character, p, N)
    N0 = N.leading_block()
    s_up = _s_char_cached(character, p, N0.units, N0.exponents, nu - 1).shift_s()
    s_same = _s_char_cached(character, p, N0.units, N0.exponents, nu)
    pw = Fraction(p)
    fac = RatFunc.one_minus(pw ** (nu + 1), 2, p, d)
    den = RatFunc.one_minus(pw ** (n + 1), 2, p, d)
    H = h_factor(character, p, N)
    return fac / den * s_up - H / den * s_same


def s_characteristic(
    character: Character, p: int, N: DiagonalForm, nu: int
) -> SeriesValue:
    """The U(p)-characteristic series S^(nu) with its beta/F split."""
    if not 0 <= nu <= N.n:
        raise PreconditionError(f"nu={nu} out of range 0..{N.n}")
    if N.n < 1:
        raise PreconditionError("degree must be >= 1")
    if N.p != p:
        raise PreconditionError("DiagonalForm built for a different prime")
    canon = N.canonical()
    S = _s_char_cached(character, p, canon.units, canon.exponents, nu)
    loc = local_data(N, p)
    beta = beta_factor(character, p, N.n, nu, loc)
    F = S / beta
    if character is Character.TRIVIAL and not S.is_rational_coeffs():
        raise NotInField("trivial-character series left the rationals")
    return SeriesValue(S=S, beta=beta, F=F, local=loc)


def s_cusp(character: Character, p: int, N: DiagonalForm, nu: int) -> RatFunc:
    """The cusp series S^w_nu = sum_r c_nu,r S^(r)."""
    if not 0 <= nu <= N.n:
        raise PreconditionError(f"nu={nu} out of range 0..{N.n}")
    d = field_disc(p, character)
    out = RatFunc.zero(p, d)
    for r in range(nu, N.n + 1):
        c = c_coeff(character, p, nu, r)
        if c.is_zero():
            continue
        out = out + c * s_characteristic(character, p, N, r).S
    return out


def series_for_matrix(
    character: Character,
    p: int,
    M: HalfIntMatrix,
    nu: int,
    basis: str = "characteristic",
):
    """Series of a general non-degenerate N via Z_p-Jordan diagonalization.

    The ramified series are GL_n(Z_p)-congruence invariants, so no character
    twist is applied; the diagonalization's chi_p(det U) stays available as
    ``form.twist``.  Returns (value, form).
    """
    form = jordan_diagonalize_Zp(M, p)
    if basis == "characteristic":
        return s_characteristic(character, p, form, nu), form
    if basis == "cusp":
        return s_cusp(character, p, form, nu), form
    raise PreconditionError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# identity checkers


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    label: str
    lhs: RatFunc | None = None
    rhs: RatFunc | None = None

    def __bool__(self) -> bool:
        return self.ok

    def diff(self) -> str:
        if self.ok:
            return f"{self.label}: ok"
        return f"{self.label}: mismatch\n  lhs = {self.lhs}\n  rhs = {self.rhs}"


def fe_factor(character: Character, p: int, loc: LocalData, n: int) -> RatFunc:
    """The p-power side factor of the functional equation, at argument s."""
    d = field_disc(p, character)
    if character is Character.TRIVIAL:
        e = loc.e_p
        sign = loc.zeta_p
    else:
        e = loc.d_p + loc.a_N
        sign = loc.eta_p
    # p^((s-(n+1)/2)e) = p^(-(n+1)e/2) X^(-e); the exponent is integral
    lead = eps_p_half_power(p, character, k=-(n + 1) * e) * sign
    return RatFunc.monomial(lead, -e, p, d)


def check_functional_equation(
    character: Character, p: int, N: DiagonalForm, nu: int
) -> CheckResult:
    """F^(n-nu)(n+1-s) = (sign) p^((s-(n+1)/2)e) F^(nu)(s), exactly."""
    n = N.n
    val = s_characteristic(character, p, N, nu)
    mirror = s_characteristic(character, p, N, n - nu)
    lhs = mirror.F.reflect_s(n)
    rhs = fe_factor(character, p, val.local, n) * val.F
    label = f"FE p={p} {character} N={N.units}/{N.exponents} nu={nu}"
    return CheckResult(lhs == rhs, label, lhs, rhs)


def check_scaling(
    character: Character, p: int, N: DiagonalForm, nu: int
) -> CheckResult:
    """S^(nu)(pN, s) = p^(n(n+1)/2 - nu(nu+1)/2) X^(n-nu) S^(nu)(N, s)."""
    n = N.n
    d = field_disc(p, character)
    lhs = s_characteristic(character, p, N.scale_by_p(), nu).S
    c = Fraction(p) ** (n * (n + 1) // 2 - nu * (nu + 1) // 2)
    rhs = RatFunc.monomial(c, n - nu, p, d) * s_characteristic(character, p, N, nu).S
    label = f"scaling p={p} {character} N={N.units}/{N.exponents} nu={nu}"
    return CheckResult(lhs == rhs, label, lhs, rhs)


def check_inductive_relation(
    character: Character,
    p: int,
    N: DiagonalForm,
    nu: int,
    basis: str = "characteristic",
) -> CheckResult:
    """S(N') - S(N) = H(N) * S_(n-1)(N_0) in either basis (0 at nu = n)."""
    n = N.n
    d = field_disc(p, character)
    Np = N.bump_last()
    N0 = N.leading_block()
    if basis == "characteristic":
        lhs = (
            s_characteristic(character, p, Np, nu).S
            - s_characteristic(character, p, N, nu).S
        )
        if nu == n:
            lower = RatFunc.zero(p, d)
        elif N0.n == 0:  # empty block: the degree-0 series is 1
            lower = RatFunc.one(p, d)
        else:
            lower = s_characteristic(character, p, N0, nu).S
    elif basis == "cusp":
        lhs = s_cusp(character, p, Np, nu) - s_cusp(character, p, N, nu)
        if nu == n:
            lower = RatFunc.zero(p, d)
        elif N0.n == 0:
            lower = RatFunc.one(p, d)
        else:
            lower = s_cusp(character, p, N0, nu)
    else:
        raise PreconditionError(f"unknown basis {basis!r}")
    rhs = h_factor(character, p, N) * lower
    label = (
        f"inductive[{basis}] p={p} {character} N={N.units}/{N.exponents} nu={nu}"
    )
    return CheckResult(lhs == rhs, label, lhs, rhs)
