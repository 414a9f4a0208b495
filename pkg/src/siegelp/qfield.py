"""Exact scalars: rationals and quadratic extensions Q(sqrt(d)).

Every series coefficient produced by this package lives in Q(sqrt(d)) for a
single d fixed per computation: d = p for the trivial character and
d = (-1)^((p-1)/2) * p for the quadratic character.  With that choice the
Gauss-sum unit eps_p (= 1 for p = 1 mod 4, sqrt(-1) for p = 3 mod 4) pairs
with sqrt(p) as eps_p * sqrt(p) = sqrt(d), so all half powers of p occurring
in the closed formulas are representable without ever leaving a degree-2
extension.

Rationals are plain ``fractions.Fraction`` (eagerly reduced, positive
denominator); ``Rat`` is an alias so signatures stay self-describing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContextError, DivisionByZero, NotInField, UnsupportedPrime

Rat = Fraction


class Character(enum.Enum):
    """Dirichlet character mod p attached to a computation."""

    TRIVIAL = "trivial"
    QUADRATIC = "quadratic"

    def __str__(self) -> str:
        return self.value


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise UnsupportedPrime(f"p must be an odd prime, got {p}")
    # trial division is plenty at the sizes this package handles
    f = 3
    while f * f <= p:
        if p % f == 0:
            raise UnsupportedPrime(f"p must be an odd prime, got {p}")
        f += 2


def chi_p_minus_one(p: int) -> int:
    """chi_p(-1) = (-1)^((p-1)/2), the sign governing eps_p^2."""
    return 1 if p % 4 == 1 else -1


def delta_p(p: int) -> int:
    """0 for p = 1 mod 4, 1 for p = 3 mod 4."""
    return 0 if p % 4 == 1 else 1


def field_disc(p: int, character: Character) -> int:
    """The extension base d used for coefficients under this character."""
    _check_odd_prime(p)
    if character is Character.TRIVIAL:
        return p
    return chi_p_minus_one(p) * p


@dataclass(frozen=True, slots=True)
class QElem:
    """a + b*sqrt(d) with a, b rational and d a fixed squarefree non-square.

    Elements only combine when they carry the same d; mixing raises
    ContextError.  Plain ints and Fractions coerce to (x, 0) in the other
    operand's context.
    """

    a: Rat
    b: Rat
    d: int

    @staticmethod
    def of(x, d: int) -> "QElem":
        if isinstance(x, QElem):
            if x.d != d:
                raise ContextError(f"scalar from Q(sqrt({x.d})) used in Q(sqrt({d}))")
            return x
        return QElem(Fraction(x), Fraction(0), d)

    @staticmethod
    def zero(d: int) -> "QElem":
        return QElem(Fraction(0), Fraction(0), d)

    @staticmethod
    def one(d: int) -> "QElem":
        return QElem(Fraction(1), Fraction(0), d)

    def _coerce(self, other) -> "QElem":
        if isinstance(other, QElem):
            if other.d != self.d:
                raise ContextError(
                    f"cannot combine Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QElem(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QElem":
        return QElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> Rat:
        """Field norm a^2 - d*b^2 (multiplicative)."""
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QElem":
        return QElem(self.a, -self.b, self.d)

    def inverse(self) -> "QElem":
        n = self.norm()
        if n == 0:
            # d is a non-square, so norm 0 forces a = b = 0
            raise DivisionByZero("inverse of zero")
        return QElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self) -> Rat:
        """The value as a Fraction; requires b = 0."""
        if self.b != 0:
            raise NotInField(f"{self} has a nonzero sqrt({self.d}) component")
        return self.a

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def __repr__(self) -> str:
        return f"QElem({self})@d={self.d}"


def parse_qelem(text: str, d: int) -> QElem:
    """Inverse of str(QElem): 'a' or 'a+b*w' / 'a-b*w' with w = sqrt(d)."""
    s = text.strip().replace(" ", "")
    if not s.endswith("*w"):
        return QElem(Fraction(s), Fraction(0), d)
    body = s[:-2]
    # split at the sign separating the rational and sqrt parts: skip a
    # leading sign and search from position 1
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "+-":
            a = Fraction(body[:i])
            b = Fraction(body[i:].replace("+", "", 1)) if body[i] == "+" else Fraction(body[i:])
            return QElem(a, b, d)
    raise ValueError(f"cannot parse QElem text {text!r}")


def eps_p_half_power(
    p: int, character: Character, k: int, eps_exponent: int = 0
) -> QElem:
    """eps_p^e * p^(k/2) as an exact element of Q(sqrt(d)).

    ``k`` counts half-powers of p (so k = 2 means p itself); ``eps_exponent``
    is the power e of eps_p and is only meaningful for the quadratic
    character, whose field Q(sqrt(d)) was chosen so that eps_p*sqrt(p)
    equals sqrt(d).  Raises NotInField when the combination does not land in
    the character's field, which in practice flags a parity error in an
    exponent computation upstream.
    """
    d = field_disc(p, character)
    q, r = divmod(k, 2)
    p_int = Fraction(p) ** q  # exact for negative q too
    # reduce eps_p^e to sign * eps_p^leftover with leftover in {0, 1}
    if p % 4 == 1:
        sign, leftover = Fraction(1), 0
    else:
        m = eps_exponent % 4  # eps_p = i
        sign = Fraction(1) if m in (0, 1) else Fraction(-1)
        leftover = m % 2
    if leftover == 0 and r == 0:
        return QElem(sign * p_int, Fraction(0), d)
    if leftover == 0 and r == 1:
        if d == p:  # bare sqrt(p) only exists when d = p
            return QElem(Fraction(0), sign * p_int, d)
        raise NotInField(f"p^({k}/2) not in Q(sqrt({d})) for p={p}")
    if leftover == 1 and r == 1:
        if d == -p:  # eps_p*sqrt(p) = sqrt(-p) = sqrt(d) for p = 3 mod 4
            return QElem(Fraction(0), sign * p_int, d)
        raise NotInField(
            f"eps_{p}^{eps_exponent}*p^({k}/2) not in Q(sqrt({d}))"
        )
    # leftover == 1, r == 0: a bare factor of sqrt(-1)
    raise NotInField(f"eps_{p}^{eps_exponent}*p^({k}/2) not in Q(sqrt({d}))")
