"""Reference fixtures for low degrees, quadratic character.

These are direct transcriptions of the published closed expressions for
degrees 1, 2 and 3, built from ratfun/localinv primitives only -- never from
the recursion engine -- so that engine-vs-fixture comparisons are a real
check.  Two of the printed displays drop the overall Gauss-sum unit eps_p
that both terms of their own derivations carry (without it the p^(3/2)-type
factors would not even live in the working field); the transcriptions
restore it, and the enumeration oracle confirms the restored versions.

``python -m siegelp.golden --write`` regenerates data/golden.json, the
versioned fixture file the acceptance suite reads.
"""

from __future__ import annotations

import json
import pathlib
from fractions import Fraction

from .localinv import (
    fundamental_discriminant,
    hilbert_symbol,
    least_nonresidue,
    legendre,
)
from .qfield import Character, chi_p_minus_one, eps_p_half_power, field_disc
from .ratfun import RatFunc

DATA_PATH = pathlib.Path(__file__).parent / "data" / "golden.json"


def degree1(p: int, alpha: int, m: int, nu: int) -> RatFunc:
    """Degree 1: chi_p(alpha) eps_p p^((1-s)m + 1/2 - s) at nu=0; 1 at nu=1."""
    d = field_disc(p, Character.QUADRATIC)
    if nu == 1:
        return RatFunc.one(p, d)
    lead = eps_p_half_power(p, Character.QUADRATIC, k=2 * m + 1, eps_exponent=1)
    return RatFunc.monomial(lead * legendre(alpha, p), m + 1, p, d)


def _chi_star_2x2(p: int, alpha: int, beta: int, m: int, r: int) -> int:
    """chi*_N(p) for N = p^m diag(alpha, beta p^r), from the definitions."""
    if r % 2 == 0:  # d_p even: conductor gains the factor p, so value 0
        return 0
    D = Fraction(-4) * alpha * beta * Fraction(p) ** (2 * m + r)
    fd = fundamental_discriminant(D)
    assert fd % p == 0
    return legendre(-(fd // p), p)


def degree2_nu1(p: int, alpha: int, beta: int, m: int, r: int) -> RatFunc:
    """S^(1) of N = p^m diag(alpha, beta p^r), quadratic character."""
    d = field_disc(p, Character.QUADRATIC)
    pw = Fraction(p)
    l_N = (r + 1) // 2
    chi_star = _chi_star_2x2(p, alpha, beta, m, r)
    lead = eps_p_half_power(
        p, Character.QUADRATIC, k=4 * m + 3, eps_exponent=1
    ) * legendre(alpha, p)
    head = RatFunc.monomial(lead, m + 1, p, d)
    head = head * RatFunc.one_minus(pw**2, 2, p, d)
    den = RatFunc.one_minus(pw**3, 2, p, d)
    if chi_star:
        den = den * RatFunc.one_minus(chi_star * pw, 1, p, d)
    tail = RatFunc.one(p, d) - RatFunc.monomial(pw ** (3 * l_N), 2 * l_N, p, d)
    if chi_star:
        tail = tail - RatFunc.monomial(chi_star * pw, 1, p, d) * (
            RatFunc.one(p, d)
            - RatFunc.monomial(pw ** (3 * (l_N - 1)), 2 * (l_N - 1), p, d)
        )
    return head / den * tail


def degree3_w0(
    p: int, alpha: int, beta: int, gamma: int, m: int, r: int, t: int
) -> RatFunc:
    """S^w_0 of N = p^m diag(alpha, beta p^r) + <gamma p^(m+r+t)>, quadratic."""
    d = field_disc(p, Character.QUADRATIC)
    pw = Fraction(p)
    chi_m1 = chi_p_minus_one(p)
    l0 = (r + 1) // 2
    f0 = m + r // 2
    d_p = 3 * m + 2 * r + t
    chi_star0 = _chi_star_2x2(p, alpha, beta, m, r)

    # eta_p(N) = chi_p(D'_N) zeta_p(N) for the odd-size N
    values = [
        Fraction(alpha) * pw**m,
        Fraction(beta) * pw ** (m + r),
        Fraction(gamma) * pw ** (m + r + t),
    ]
    det = values[0] * values[1] * values[2]
    hasse = 1
    for i in range(3):
        for j in range(i, 3):
            hasse *= hilbert_symbol(values[i], values[j], p)
    zeta = hasse * hilbert_symbol(det, -det, p) * hilbert_symbol(-1, -1, p)
    eta = legendre(Fraction(-4) * alpha * beta * gamma, p) * zeta

    head_lead = eps_p_half_power(
        p, Character.QUADRATIC, k=4 * d_p + 7, eps_exponent=1
    ) * (-chi_m1 * eta)
    head = RatFunc.monomial(head_lead, d_p + 3, p, d)
    head = head * RatFunc.one_minus(pw**2, 2, p, d)
    head = head / RatFunc.one_minus(pw**3, 2, p, d)

    # the nu=2 eigenseries, assembled from its two printed pieces
    a_lead = eps_p_half_power(
        p, Character.QUADRATIC, k=4 * d_p - 6 * f0 + 3, eps_exponent=1
    ) * eta
    part_a = RatFunc.monomial(a_lead, d_p - 2 * f0 + 1, p, d)
    if chi_star0:
        part_a = part_a * RatFunc.one_minus(chi_star0 * pw**-1, -1, p, d)
        part_a = part_a / RatFunc.one_minus(chi_star0 * pw**2, 1, p, d)

    b_lead = eps_p_half_power(
        p, Character.QUADRATIC, k=6 * m + 5, eps_exponent=1
    ) * legendre(alpha, p)
    part_b = RatFunc.monomial(b_lead, m + 1, p, d)
    part_b = part_b * RatFunc.one_minus(pw**3, 2, p, d)
    den_b = RatFunc.one_minus(pw**5, 2, p, d)
    if chi_star0:
        den_b = den_b * RatFunc.one_minus(chi_star0 * pw**2, 1, p, d)
    tail = RatFunc.one(p, d) - RatFunc.monomial(pw ** (5 * l0), 2 * l0, p, d)
    if chi_star0:
        tail = tail - RatFunc.monomial(chi_star0 * pw**2, 1, p, d) * (
            RatFunc.one(p, d)
            - RatFunc.monomial(pw ** (5 * (l0 - 1)), 2 * (l0 - 1), p, d)
        )
    s_2 = part_a + part_b / den_b * tail

    coeff = RatFunc.monomial(chi_m1 * (pw - 1) * pw, 2, p, d)
    coeff = coeff / RatFunc.one_minus(pw**3, 2, p, d)
    return head + coeff * s_2


# ---------------------------------------------------------------------------
# fixture grids (these are the acceptance grids)

DEGREE1_PRIMES = (3, 5, 7, 11)
DEGREE23_PRIMES = (3, 5)


def degree1_grid():
    for p in DEGREE1_PRIMES:
        for alpha in (1, least_nonresidue(p)):
            for m in range(5):
                for nu in (0, 1):
                    yield p, alpha, m, nu


def degree2_grid():
    for p in DEGREE23_PRIMES:
        r_np = least_nonresidue(p)
        for alpha in (1, r_np):
            for beta in (1, r_np):
                for m in range(4):
                    for r in range(4):
                        yield p, alpha, beta, m, r


def degree3_grid():
    for p in DEGREE23_PRIMES:
        r_np = least_nonresidue(p)
        for alpha in (1, r_np):
            for beta in (1, r_np):
                for gamma in (1, r_np):
                    for m in range(3):
                        for r in range(3):
                            for t in range(3):
                                yield p, alpha, beta, gamma, m, r, t


def build_fixtures() -> dict:
    return {
        "degree1": [
            {"p": p, "alpha": a, "m": m, "nu": nu,
             "value": degree1(p, a, m, nu).to_json()}
            for p, a, m, nu in degree1_grid()
        ],
        "degree2": [
            {"p": p, "alpha": a, "beta": b, "m": m, "r": r,
             "value": degree2_nu1(p, a, b, m, r).to_json()}
            for p, a, b, m, r in degree2_grid()
        ],
        "degree3": [
            {"p": p, "alpha": a, "beta": b, "gamma": g, "m": m, "r": r, "t": t,
             "value": degree3_w0(p, a, b, g, m, r, t).to_json()}
            for p, a, b, g, m, r, t in degree3_grid()
        ],
    }


def load_fixtures() -> dict:
    with open(DATA_PATH) as fh:
        return json.load(fh)


def write_fixtures(path=DATA_PATH) -> None:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(build_fixtures(), fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    import sys

    if "--write" in sys.argv:
        write_fixtures()
        print(f"wrote {DATA_PATH}")
    else:
        print("usage: python -m siegelp.golden --write")
