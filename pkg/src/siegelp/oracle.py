"""Brute-force evaluation of the defining character sum.

The exact engine is validated against a direct enumeration: all symmetric
matrices R with entries in (1/p^L)Z/Z are visited, each contributes
psi~(R) * exp(2*pi*i*Tr(NR)) to the coefficient of X^l, where p^l is the
denominator determinant of R and the stratum of R (the rank of its
denominator, here counted through the number of negative elementary-divisor
valuations) selects which cusp series it belongs to.  Coefficients of X^l
are complete finite sums whenever l <= L.

Enumeration is over raw entry grids, deliberately without orbit reduction;
a table keyed by (valuation data, psi~, diagonal of R) is cached per
(p, n, L) so that sweeps over many diagonal N reuse one pass.  Phases are
exact p^L-th roots of unity indexed by integers, so no drift accumulates.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, PreconditionError, ReductionFailure
from .localinv import DiagonalForm, HalfIntMatrix, legendre, ord_p, unit_part
from .qfield import Character, QElem, _check_odd_prime
from .ratfun import RatFunc

DEFAULT_BUDGET = 600_000


def enumeration_budget() -> int:
    """Grid-size cap; override with the SIEGELP_BUDGET environment variable."""
    raw = os.environ.get("SIEGELP_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class OracleSeries:
    """Truncated coefficients of a ramified series, enumerated directly."""

    coeffs: tuple[complex, ...]  # coefficient of X^0..X^order
    p: int
    character: Character
    n: int
    nu: int | None
    order: int


def _reduce_symmetric(rows: list[list[Fraction]], p: int) -> list[Fraction]:
    """Diagonalize a symmetric rational matrix by GL_n(Z_p) congruence.

    Returns the diagonal entries (zeros allowed).  Pivots of minimal
    p-valuation always reach the diagonal because p is odd.
    """
    a = [row[:] for row in rows]
    n = len(a)
    pivots: list[Fraction] = []
    INF = 10**9

    def val(x: Fraction) -> int:
        return ord_p(x, p) if x else INF

    for i in range(n):
        best, br, bc = INF, i, i
        for r in range(i, n):  # prefer diagonal entries on ties
            v = val(a[r][r])
            if v < best:
                best, br, bc = v, r, r
        for r in range(i, n):
            for c in range(r + 1, n):
                v = val(a[r][c])
                if v < best:
                    best, br, bc = v, r, c
        if best == INF:
            pivots.extend(Fraction(0) for _ in range(i, n))
            break
        if br != bc:
            # cross term dominates at odd p, so the sum keeps valuation best
            for k in range(n):
                a[br][k] += a[bc][k]
            for k in range(n):
                a[k][br] += a[k][bc]
        if br != i:
            a[i], a[br] = a[br], a[i]
            for k in range(n):
                a[k][i], a[k][br] = a[k][br], a[k][i]
        piv = a[i][i]
        if val(piv) != best:
            raise ReductionFailure("pivot lost minimal valuation (p even?)")
        inv = 1 / piv
        for k in range(i + 1, n):
            f = a[k][i] * inv
            if f:
                for c in range(n):
                    a[k][c] -= f * a[i][c]
                for c in range(n):
                    a[c][k] -= f * a[c][i]
        pivots.append(piv)
    return pivots


def stratum_data(R, p: int) -> tuple[int, int]:
    """(l, negcount) for symmetric rational R: the denominator-determinant
    exponent l = -sum of negative elementary-divisor valuations, and how
    many valuations are negative.  The stratum attached to the cusp w_nu
    consists of the R with negcount = n - nu."""
    _check_odd_prime(p)
    rows = [[Fraction(x) for x in row] for row in R]
    pivots = _reduce_symmetric(rows, p)
    l = 0
    neg = 0
    for piv in pivots:
        if piv and ord_p(piv, p) < 0:
            neg += 1
            l -= ord_p(piv, p)
    return l, neg


def psi_tilde(R, p: int, character: Character) -> int:
    """The character weight of R in the defining sum.

    1 for the trivial character.  For the quadratic character, diagonalize R
    by a GL_n(Z_p) congruence as diag(a_i / p^(l_i)) and take the product of
    legendre(a_i, p) over the entries with l_i > 0.  The value depends only
    on the class of R modulo integral matrices and is invariant under
    unimodular congruence (the det-U contributions of the P- and K-parts
    cancel for a quadratic character).
    """
    if character is Character.TRIVIAL:
        return 1
    rows = [[Fraction(x) for x in row] for row in R]
    out = 1
    for piv in _reduce_symmetric(rows, p):
        if piv and ord_p(piv, p) < 0:
            out *= legendre(unit_part(piv, p), p)
    return out


def _phase_index(x: Fraction, p: int, L: int) -> int:
    """Index t with x = t/p^L in Q_p/Z_p (prime-to-p denominators inverted)."""
    b = x.denominator
    j = 0
    while b % p == 0:
        b //= p
        j += 1
    if j > L:
        raise PreconditionError(f"denominator p^{j} exceeds grid level {L}")
    t = x.numerator * pow(b, -1, p**L) * p ** (L - j)
    return t % p**L


@functools.lru_cache(maxsize=8)
def _roots_of_unity(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * t / m) for t in range(m))


def _int_ord(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _int_jordan_data(mat: list[list[int]], den: int, p: int, half: int):
    """(l, negcount, psi) of the symmetric rational matrix mat/den.

    Works over integers via Schur complements: after pivoting on a minimal-
    valuation entry a, the true complement is (a*A_kl - A_k0*A_0l)/(a*den).
    Square scalings never change a Legendre class, so the quadratic weight
    psi comes out exactly.  ``half`` is (p-1)//2, passed to avoid recomputing.
    """
    l = 0
    neg = 0
    psi = 1
    v_den = _int_ord(den, p)
    while mat:
        k = len(mat)
        best, br, bc = None, 0, 0
        for r in range(k):  # diagonal entries first so ties pivot there
            x = mat[r][r]
            if x:
                v = _int_ord(x, p)
                if best is None or v < best:
                    best, br, bc = v, r, r
        for r in range(k):
            row = mat[r]
            for c in range(r + 1, k):
                x = row[c]
                if x:
                    v = _int_ord(x, p)
                    if best is None or v < best:
                        best, br, bc = v, r, c
        if best is None:
            break  # zero block: all remaining pivots integral
        if br != bc:
            # fold the partner row/col in; the cross term keeps valuation
            for t in range(k):
                mat[br][t] += mat[bc][t]
            for t in range(k):
                mat[t][br] += mat[t][bc]
        if br != 0:
            mat[0], mat[br] = mat[br], mat[0]
            for t in range(k):
                mat[t][0], mat[t][br] = mat[t][br], mat[t][0]
        piv = mat[0][0]
        v = best - v_den
        if v < 0:
            neg += 1
            l -= v
            u = (piv // p**best) * (den // p**v_den)
            if pow(u % p, half, p) != 1:
                psi = -psi
        # integer Schur complement, denominator multiplies by the pivot
        nxt = [
            [piv * mat[r][c] - mat[r][0] * mat[0][c] for c in range(1, k)]
            for r in range(1, k)
        ]
        mat = nxt
        den = den * piv  # sign is immaterial: classes are taken mod p
        v_den += best
    return l, neg, psi


@functools.lru_cache(maxsize=16)
def _grid_table(p: int, n: int, L: int):
    """One pass over the entry grid, folded over the off-diagonal entries.

    Maps (l, negcount, psi_quadratic, diagonal numerators) -> count.  The
    diagonal numerators are the integers k with R_ii = k/p^L, which is all a
    diagonal N needs to evaluate its phases.
    """
    q = p**L
    npairs = n * (n - 1) // 2
    half = (p - 1) // 2
    table: dict[tuple, int] = {}
    pairs_idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for diag in itertools.product(range(q), repeat=n):
        for off in itertools.product(range(q), repeat=npairs):
            mat = [[0] * n for _ in range(n)]
            for i in range(n):
                mat[i][i] = diag[i]
            for (i, j), k in zip(pairs_idx, off):
                mat[i][j] = mat[j][i] = k
            key = (*_int_jordan_data(mat, q, p, half), diag)
            table[key] = table.get(key, 0) + 1
    return table


def _diag_values(N) -> list[Fraction] | None:
    """Diagonal entries when N is (stored as) diagonal, else None."""
    if isinstance(N, DiagonalForm):
        return N.values()
    if isinstance(N, HalfIntMatrix):
        ent = N.entries()
        off = any(
            ent[i][j] for i in range(N.n) for j in range(N.n) if i != j
        )
        return None if off else [ent[i][i] for i in range(N.n)]
    return [Fraction(x) for x in N]


def truncated_series(
    character: Character,
    p: int,
    N,
    nu: int | None,
    order: int,
    budget: int | None = None,
) -> OracleSeries:
    """Coefficients X^0..X^order of the defining sum, enumerated exactly.

    ``N`` may be a DiagonalForm, a list of diagonal rational entries (zeros
    allowed), or a HalfIntMatrix.  ``nu`` selects the cusp stratum;
    ``nu=None`` drops the stratum filter (for the trivial character this is
    the ordinary, unramified-shape sum).  Coefficients with l <= order are
    exact; the grid has p^(order * n(n+1)/2) points and must fit the budget.
    """
    _check_odd_prime(p)
    diag = _diag_values(N)
    if isinstance(N, HalfIntMatrix):
        n = N.n
    elif isinstance(N, DiagonalForm):
        n = N.n
    else:
        n = len(diag)
    if n < 1:
        raise PreconditionError("need n >= 1")
    if nu is not None and not 0 <= nu <= n:
        raise PreconditionError(f"nu={nu} out of range 0..{n}")
    L = order
    cap = budget if budget is not None else enumeration_budget()
    size = p ** (L * n * (n + 1) // 2)
    if size > cap:
        raise BudgetExceeded(
            f"grid of {size} points exceeds budget {cap}; "
            "lower the order or raise SIEGELP_BUDGET"
        )
    q = p**L
    roots = _roots_of_unity(q)
    coeffs = [0j] * (L + 1)
    want_neg = None if nu is None else n - nu

    if diag is not None and L >= 1:
        table = _grid_table(p, n, L)
        # phase of Tr(NR) = sum_i N_ii k_i/p^L: fold each N_ii into an
        # integer multiplier mod p^L (prime-to-p denominators inverted)
        mults = []
        for v in diag:
            v = Fraction(v)
            if v == 0:
                mults.append(0)
            else:
                if v.denominator % p == 0:
                    raise PreconditionError("N must be p-integral")
                mults.append(v.numerator * pow(v.denominator, -1, q) % q)
        buckets = [dict() for _ in range(L + 1)]
        for (l, neg, psi, dk), count in table.items():
            if l > L:
                continue
            if want_neg is not None and neg != want_neg:
                continue
            w = count if character is Character.TRIVIAL else psi * count
            t = sum(m * k for m, k in zip(mults, dk)) % q
            b = buckets[l]
            b[t] = b.get(t, 0) + w
        for l in range(L + 1):
            coeffs[l] = sum(w * roots[t] for t, w in buckets[l].items())
        return OracleSeries(tuple(coeffs), p, character, n, nu, order)

    # general path: full half-integral N, smaller budgets
    if isinstance(N, HalfIntMatrix):
        ent = N.entries()
    else:
        ent = [[Fraction(0)] * n for _ in range(n)]
        for i, v in enumerate(diag or []):
            ent[i][i] = Fraction(v)
    if L == 0:
        # only R = 0 contributes at order 0
        if want_neg in (None, 0):
            coeffs[0] = 1
        return OracleSeries(tuple(coeffs), p, character, n, nu, order)
    pairs_idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for diag_k in itertools.product(range(q), repeat=n):
        for off_k in itertools.product(range(q), repeat=len(pairs_idx)):
            rows = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = Fraction(diag_k[i], q)
            for (i, j), k in zip(pairs_idx, off_k):
                rows[i][j] = rows[j][i] = Fraction(k, q)
            pivots = _reduce_symmetric(rows, p)
            l = 0
            neg = 0
            psi = 1
            for piv in pivots:
                if piv:
                    v = ord_p(piv, p)
                    if v < 0:
                        neg += 1
                        l -= v
                        psi *= legendre(unit_part(piv, p), p)
            if l > L or (want_neg is not None and neg != want_neg):
                continue
            tr = Fraction(0)
            for i in range(n):
                tr += ent[i][i] * rows[i][i]
            for (i, j), k in zip(pairs_idx, off_k):
                tr += 2 * ent[i][j] * rows[i][j]
            w = 1 if character is Character.TRIVIAL else psi
            coeffs[l] += w * roots[_phase_index(tr, p, L)]
    return OracleSeries(tuple(coeffs), p, character, n, nu, order)


def embed_scalar(c: QElem, p: int) -> complex:
    """Numerical embedding with sqrt(d) -> eps_p * sqrt(p) when |d| = p."""
    if abs(c.d) == p:
        sd = math.sqrt(p) * (1j if c.d < 0 else 1)
    else:
        sd = cmath.sqrt(c.d)
    return float(c.a) + float(c.b) * sd


def compare(
    character: Character,
    p: int,
    N: DiagonalForm,
    nu: int,
    order: int,
    tol: float = 1e-9,
    budget: int | None = None,
) -> dict:
    """Engine cusp series vs enumerated sum, coefficient by coefficient."""
    from .series import s_cusp  # local import to keep module layering acyclic

    exact = s_cusp(character, p, N, nu)
    taylor = [embed_scalar(c, p) for c in exact.taylor(order)]
    oracle = truncated_series(character, p, N, nu, order, budget=budget)
    per_order = []
    worst = 0.0
    for l in range(order + 1):
        diff = abs(taylor[l] - oracle.coeffs[l])
        worst = max(worst, diff)
        per_order.append(
            {
                "order": l,
                "exact": [taylor[l].real, taylor[l].imag],
                "oracle": [oracle.coeffs[l].real, oracle.coeffs[l].imag],
                "abs_diff": diff,
            }
        )
    return {
        "p": p,
        "character": str(character),
        "nu": nu,
        "order": order,
        "max_abs_diff": worst,
        "tol": tol,
        "ok": worst <= tol,
        "per_order": per_order,
    }


def compare_ratfunc_coeffs(
    rf: RatFunc, series: OracleSeries, order: int, p: int
) -> float:
    """Max |difference| between a RatFunc's Taylor line and oracle coefficients."""
    taylor = [embed_scalar(c, p) for c in rf.taylor(order)]
    return max(
        abs(t - o) for t, o in zip(taylor, series.coeffs[: order + 1])
    )
