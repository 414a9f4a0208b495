"""Canonical Laurent rational functions in X = p^(-s) over Q(sqrt(d)).

A power p^(b-as) occurring in a closed formula is stored as the monomial
p^b * X^a, so exponents of X may be negative (Laurent).  A RatFunc keeps

  * ``num``: a Laurent polynomial (exponents of any sign),
  * ``den``: an honest polynomial with constant term exactly 1,

with the polynomial part of num coprime to den.  This canonical form makes
equality component-wise and is preserved by all arithmetic.  Values are
immutable; do not mutate coefficient maps after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import ContextError, DivisionByZero, NegativeExponent
from .qfield import QElem, Rat


def _as_qelem(c, d: int) -> QElem:
    if isinstance(c, QElem):
        if c.d != d:
            raise ContextError(f"coefficient in Q(sqrt({c.d})) used with d={d}")
        return c
    return QElem(Fraction(c), Fraction(0), d)


class LaurentPoly:
    """Finite map exponent -> nonzero QElem coefficient; exponents in Z."""

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs, d: int):
        clean: dict[int, QElem] = {}
        for e, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
            q = _as_qelem(c, d)
            if q:
                clean[int(e)] = q
        self.coeffs = clean
        self.d = d

    @staticmethod
    def zero(d: int) -> "LaurentPoly":
        return LaurentPoly({}, d)

    @staticmethod
    def one(d: int) -> "LaurentPoly":
        return LaurentPoly({0: 1}, d)

    @staticmethod
    def monomial(c, e: int, d: int) -> "LaurentPoly":
        return LaurentPoly({e: c}, d)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def _check(self, other: "LaurentPoly") -> None:
        if self.d != other.d:
            raise ContextError(f"mixed coefficient fields d={self.d} and d={other.d}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.coeffs)
        zero = QElem.zero(self.d)
        for e, c in other.coeffs.items():
            v = out.get(e, zero) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(out, self.d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.d)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[int, QElem] = {}
        zero = QElem.zero(self.d)
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                v = out.get(e, zero) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(out, self.d)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by X^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.d)

    def scale(self, c) -> "LaurentPoly":
        q = _as_qelem(c, self.d)
        if not q:
            return LaurentPoly.zero(self.d)
        return LaurentPoly({e: v * q for e, v in self.coeffs.items()}, self.d)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.d == other.d
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.d, tuple(sorted(self.coeffs.items()))))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            cs = str(c) if c.is_rational() else f"({c})"
            if e == 0:
                parts.append(cs)
            else:
                xs = "X" if e == 1 else f"X^{e}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)


def _poly_divmod(a: dict, b: dict, d: int):
    """Division with remainder for maps with non-negative exponents, b != 0."""
    r = dict(a)
    q: dict[int, QElem] = {}
    db = max(b)
    lb_inv = b[db].inverse()
    zero = QElem.zero(d)
    while r and max(r) >= db:
        dr = max(r)
        f = r[dr] * lb_inv
        e = dr - db
        q[e] = f
        for eb, cb in b.items():
            ee = eb + e
            v = r.get(ee, zero) - f * cb
            if v:
                r[ee] = v
            else:
                r.pop(ee, None)
    return q, r


def _poly_gcd(a: dict, b: dict, d: int) -> dict:
    """Monic gcd over the coefficient field (Euclid)."""
    a, b = dict(a), dict(b)
    while b:
        _, r = _poly_divmod(a, b, d)
        a, b = b, r
    lead_inv = a[max(a)].inverse()
    return {e: c * lead_inv for e, c in a.items()}


class RatFunc:
    """num/den in canonical form; see module docstring for the invariants."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, p: int):
        if num.d != den.d:
            raise ContextError("numerator and denominator in different fields")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        d = num.d
        if num.is_zero():
            self.num = LaurentPoly.zero(d)
            self.den = LaurentPoly.one(d)
            self.p = p
            return
        # pull the denominator's lowest power of X into the numerator
        shift = den.min_exp()
        nc = num.shift(-shift).coeffs
        dc = den.shift(-shift).coeffs
        # split num into X^a * (ord-0 polynomial part)
        a = min(nc)
        n0 = {e - a: c for e, c in nc.items()}
        g = _poly_gcd(n0, dc, d)
        if max(g) > 0:
            n0, _ = _poly_divmod(n0, g, d)
            dc, _ = _poly_divmod(dc, g, d)
        # scale so den(0) = 1 (gcd is monic, so dc[0] survived nonzero)
        c0_inv = dc[0].inverse()
        self.num = LaurentPoly({e + a: c * c0_inv for e, c in n0.items()}, d)
        self.den = LaurentPoly({e: c * c0_inv for e, c in dc.items()}, d)
        self.p = p

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c, p: int, d: int) -> "RatFunc":
        return RatFunc(LaurentPoly({0: c}, d), LaurentPoly.one(d), p)

    @staticmethod
    def zero(p: int, d: int) -> "RatFunc":
        return RatFunc(LaurentPoly.zero(d), LaurentPoly.one(d), p)

    @staticmethod
    def one(p: int, d: int) -> "RatFunc":
        return RatFunc.const(1, p, d)

    @staticmethod
    def monomial(c, e: int, p: int, d: int) -> "RatFunc":
        """c * X^e."""
        return RatFunc(LaurentPoly({e: c}, d), LaurentPoly.one(d), p)

    @staticmethod
    def one_minus(c, e: int, p: int, d: int) -> "RatFunc":
        """1 - c * X^e, the ubiquitous Euler-type factor."""
        return RatFunc(
            LaurentPoly.one(d) - LaurentPoly({e: c}, d), LaurentPoly.one(d), p
        )

    # -- predicates ----------------------------------------------------

    @property
    def d(self) -> int:
        return self.num.d

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational_coeffs(self) -> bool:
        """True when every coefficient has zero sqrt(d) component."""
        return all(c.is_rational() for c in self.num.coeffs.values()) and all(
            c.is_rational() for c in self.den.coeffs.values()
        )

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "RatFunc") -> "RatFunc":
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction, QElem)):
                return RatFunc.const(other, self.p, self.d)
            return NotImplemented
        if other.p != self.p or other.d != self.d:
            raise ContextError("rational functions from different (p, d) contexts")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.p)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, self.p)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num, self.p)

    def __rtruediv__(self, other):
        if self.is_zero():
            raise DivisionByZero("division by the zero rational function")
        o = RatFunc.const(other, self.p, self.d)
        return RatFunc(o.num * self.den, o.den * self.num, self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QElem)):
            other = RatFunc.const(other, self.p, self.d)
        return (
            isinstance(other, RatFunc)
            and self.p == other.p
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.p, self.num, self.den))

    # -- the substitutions the identities need --------------------------

    def shift_s(self) -> "RatFunc":
        """s -> s-1, i.e. X -> pX."""
        pw = Fraction(self.p)
        num = LaurentPoly(
            {e: c * pw**e for e, c in self.num.coeffs.items()}, self.d
        )
        den = LaurentPoly(
            {e: c * pw**e for e, c in self.den.coeffs.items()}, self.d
        )
        return RatFunc(num, den, self.p)

    def reflect_s(self, n: int) -> "RatFunc":
        """s -> n+1-s, i.e. X -> p^-(n+1) X^-1 (an involution)."""
        w = Fraction(self.p) ** (n + 1)
        num = LaurentPoly(
            {-e: c * w**-e for e, c in self.num.coeffs.items()}, self.d
        )
        den = LaurentPoly(
            {-e: c * w**-e for e, c in self.den.coeffs.items()}, self.d
        )
        return RatFunc(num, den, self.p)

    def taylor(self, order: int) -> list[QElem]:
        """Coefficients of X^0..X^order of the expansion at X = 0."""
        if order < 0:
            raise ValueError("order must be >= 0")
        zero = QElem.zero(self.d)
        if self.is_zero():
            return [zero] * (order + 1)
        if self.num.min_exp() < 0:
            raise NegativeExponent(
                "not a power series at X=0: numerator has negative exponents"
            )
        # invert den as a power series (den(0) = 1 by canonical form)
        t = [self.den.coeffs.get(e, zero) for e in range(order + 1)]
        inv = [QElem.one(self.d)] + [zero] * order
        for k in range(1, order + 1):
            acc = zero
            for j in range(1, k + 1):
                if t[j]:
                    acc = acc + t[j] * inv[k - j]
            inv[k] = -acc
        out = []
        for k in range(order + 1):
            acc = zero
            for e, c in self.num.coeffs.items():
                if 0 <= e <= k:
                    acc = acc + c * inv[k - e]
            out.append(acc)
        return out

    # -- presentation and serialization ---------------------------------

    def __str__(self) -> str:
        if self.den == LaurentPoly.one(self.d):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self}, p={self.p}, d={self.d})"

    def factored_str(self) -> str:
        """Best-effort display with the denominator peeled into 1-c*X^m factors."""
        factors, rest = _peel_binomials(self.den, self.p, self.d)
        if rest == LaurentPoly.one(self.d):
            if not factors:
                return str(self.num)
            den_txt = " ".join(
                f"(1 - {c}*X^{m})" if m != 1 else f"(1 - {c}*X)" for c, m in factors
            )
        else:
            den_txt = f"({self.den})"
        return f"({self.num}) / {den_txt}"

    def to_json(self) -> dict:
        def enc(poly: LaurentPoly) -> dict:
            return {
                str(e): [str(c.a), str(c.b)]
                for e, c in sorted(poly.coeffs.items())
            }

        return {"num": enc(self.num), "den": enc(self.den), "p": self.p, "d": self.d}

    @staticmethod
    def from_json(obj: dict) -> "RatFunc":
        p, d = int(obj["p"]), int(obj["d"])

        def dec(m: dict) -> LaurentPoly:
            return LaurentPoly(
                {
                    int(e): QElem(Fraction(ab[0]), Fraction(ab[1]), d)
                    for e, ab in m.items()
                },
                d,
            )

        return RatFunc(dec(obj["num"]), dec(obj["den"]), p)


def _peel_binomials(poly: LaurentPoly, p: int, d: int):
    """Trial-divide a constant-term-1 polynomial by factors (1 - c*X^m).

    Every denominator this package produces is a product of such factors
    with c = +/- p^j (j possibly negative), so trying that candidate set is
    exhaustive in practice.  Purely cosmetic; callers fall back to the
    expanded form when a remainder survives.
    """
    factors: list[tuple[Fraction, int]] = []
    cur = dict(poly.coeffs)
    if not cur or 0 not in cur or not cur[0].is_rational():
        return factors, LaurentPoly(cur, d)
    biggest = max(
        max(abs(c.a.numerator), c.a.denominator) for c in cur.values()
    )
    jmax = 1
    while p**jmax <= biggest:
        jmax += 1
    candidates = [
        s * Fraction(p) ** j for j in range(-jmax, jmax + 1) for s in (1, -1)
    ]
    progress = True
    while progress and any(e > 0 for e in cur):
        progress = False
        deg = max(cur)
        for m in range(1, deg + 1):
            for c in candidates:
                cand = {0: QElem.one(d), m: QElem.of(-c, d)}
                q, r = _poly_divmod(cur, cand, d)
                if not r:
                    factors.append((c, m))
                    cur = q
                    progress = True
                    break
            if progress:
                break
    return factors, LaurentPoly(cur, d)


def prod(values: Iterable[RatFunc], p: int, d: int) -> RatFunc:
    out = RatFunc.one(p, d)
    for v in values:
        out = out * v
    return out
