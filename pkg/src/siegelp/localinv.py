"""p-adic invariants of non-degenerate half-integral symmetric matrices.

Everything the series engine consumes about a matrix N at an odd prime p is
computed here: Legendre/Hilbert symbols, the Hasse invariant, fundamental
discriminants, the character values chi_N(p) and chi*_N(p), the unit signs
zeta_p / eta_p, and an exact Z_p-Jordan diagonalization realized over Q.

A half-integral N is stored through its doubled matrix G = 2N (integral with
even diagonal).  All arithmetic is exact over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, SingularMatrix, UnsupportedPrime
from .qfield import Rat, _check_odd_prime


def ord_p(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    m = x.denominator
    while m % p == 0:
        m //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    """x / p^ord_p(x), a p-unit."""
    return Fraction(x) / Fraction(p) ** ord_p(x, p)


def legendre(a, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, extended by 0 off the units.

    Fractions are accepted; any nonzero p-adic valuation gives 0, otherwise
    the symbol of numerator times denominator (a square never changes it).
    """
    _check_odd_prime(p)
    a = Fraction(a)
    if a == 0:
        return 0
    if ord_p(a, p) != 0:
        return 0
    v = (a.numerator * a.denominator) % p
    t = pow(v, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def least_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue mod p."""
    r = 2
    while legendre(r, p) != -1:
        r += 1
    return r


def hilbert_symbol(a, b, p: int) -> int:
    """(a, b)_p for an odd prime p and nonzero rationals a, b.

    With a = p^alpha u, b = p^beta v (u, v units) the symbol equals
    (u/p)^beta (v/p)^alpha (-1/p)^(alpha beta).
    """
    if p == 2 or p < 2:
        raise UnsupportedPrime("Hilbert symbol implemented for odd p only")
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionError("Hilbert symbol needs nonzero arguments")
    alpha, beta = ord_p(a, p), ord_p(b, p)
    u, v = unit_part(a, p), unit_part(b, p)
    out = 1
    if beta % 2:
        out *= legendre(u, p)
    if alpha % 2:
        out *= legendre(v, p)
    if alpha % 2 and beta % 2:
        out *= legendre(-1, p)
    return out


def squarefree_part(x) -> int:
    """The squarefree integer m with x = m * t^2 for rational t."""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("squarefree part of zero")
    n = abs(x.numerator) * x.denominator
    m = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            if e % 2:
                m *= f
        f += 1 if f == 2 else 2
    m *= n  # leftover prime
    return m if x > 0 else -m


def fundamental_discriminant(D) -> int:
    """Discriminant of Q(sqrt(D))/Q; 1 when D is a square."""
    m = squarefree_part(D)
    if m == 1:
        return 1
    return m if m % 4 == 1 else 4 * m


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class HalfIntMatrix:
    """Half-integral symmetric N of size n, stored doubled: G = 2N."""

    n: int
    G: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = tuple(tuple(int(v) for v in row) for row in self.G)
        object.__setattr__(self, "G", G)
        if len(G) != self.n or any(len(r) != self.n for r in G):
            raise PreconditionError("G must be an n x n matrix")
        for i in range(self.n):
            if G[i][i] % 2 != 0:
                raise PreconditionError("diagonal of 2N must be even")
            for j in range(self.n):
                if G[i][j] != G[j][i]:
                    raise PreconditionError("matrix must be symmetric")

    def entries(self) -> list[list[Fraction]]:
        """N itself, as exact rationals."""
        return [[Fraction(v, 2) for v in row] for row in self.G]

    def det(self) -> Fraction:
        return _det(self.entries())


def _det(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    a = [row[:] for row in a]
    out = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            out = -out
        out *= a[i][i]
        inv = 1 / a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] * inv
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return out


def diagonalize_over_Q(N: HalfIntMatrix) -> list[Fraction]:
    """Diagonal entries of a symmetric congruence diagonalization over Q."""
    a = N.entries()
    n = N.n
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][i] != 0), None)
            if j is None:
                raise SingularMatrix("zero row during diagonalization")
            # add +/- row j so the pivot becomes nonzero
            for c in (1, -1):
                if a[i][i] + 2 * c * a[i][j] + c * c * a[j][j] != 0:
                    _sym_add(a, i, j, Fraction(c))
                    break
        inv = 1 / a[i][i]
        for k in range(i + 1, n):
            if a[k][i]:
                _sym_add(a, k, i, -a[k][i] * inv)
    return [a[i][i] for i in range(n)]


def _sym_add(a: list[list[Fraction]], i: int, j: int, c: Fraction) -> None:
    """Congruence move row_i += c*row_j and col_i += c*col_j."""
    n = len(a)
    for k in range(n):
        a[i][k] += c * a[j][k]
    for k in range(n):
        a[k][i] += c * a[k][j]


def hasse_invariant(N: HalfIntMatrix, p: int) -> int:
    """prod_{i<=j} (a_i, a_j)_p over a Q-diagonalization diag(a_1..a_n)."""
    diag = diagonalize_over_Q(N)
    return _hasse_from_diag(diag, p)


def _hasse_from_diag(diag: list[Fraction], p: int) -> int:
    out = 1
    for i in range(len(diag)):
        for j in range(i, len(diag)):
            out *= hilbert_symbol(diag[i], diag[j], p)
    return out


def zeta_p_of(N: HalfIntMatrix, p: int, include_minus_one_factor: bool = True) -> int:
    """The sign zeta_p(N): 1 for even size, a Hasse/Hilbert product for odd."""
    det = N.det()
    if det == 0:
        raise SingularMatrix("zeta_p needs det N != 0")
    return _zeta_from(N.n, det, hasse_invariant(N, p), p, include_minus_one_factor)


def _zeta_from(
    n: int, det: Fraction, hasse: int, p: int, include_minus_one_factor: bool = True
) -> int:
    if n % 2 == 0:
        return 1
    out = hasse * hilbert_symbol(det, Fraction(-1) ** ((n - 1) // 2) * det, p)
    if include_minus_one_factor:
        # (-1,-1)_p = 1 at every odd p, so this factor is cosmetic here
        out *= hilbert_symbol(-1, -1, p) ** ((n * n - 1) // 8)
    return out


# ---------------------------------------------------------------------------
# diagonal forms and the local data bundle


@dataclass(frozen=True)
class DiagonalForm:
    """diag(alpha_1 p^u_1, ..., alpha_n p^u_n) with exponents non-decreasing.

    ``twist`` records chi_p(det U) of the congruence that produced the form
    (metadata; the series themselves are congruence invariants).
    ``provenance`` may keep the original unit values before canonicalization.
    """

    p: int
    units: tuple[int, ...]
    exponents: tuple[int, ...]
    twist: int = 1
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        _check_odd_prime(self.p)
        object.__setattr__(self, "units", tuple(int(a) for a in self.units))
        object.__setattr__(self, "exponents", tuple(int(u) for u in self.exponents))
        if len(self.units) != len(self.exponents):
            raise PreconditionError("units and exponents must have equal length")
        for a in self.units:
            if a % self.p == 0:
                raise PreconditionError(f"unit {a} divisible by p={self.p}")
        for u in self.exponents:
            if u < 0:
                raise PreconditionError("exponents must be >= 0")
        if any(
            self.exponents[i] > self.exponents[i + 1]
            for i in range(len(self.exponents) - 1)
        ):
            raise PreconditionError("exponents must be sorted ascending")
        if self.twist not in (1, -1):
            raise PreconditionError("twist must be +1 or -1")

    @staticmethod
    def make(p: int, units, exponents, twist: int = 1) -> "DiagonalForm":
        """Build with entries sorted by exponent (ties: residue class 1 first)."""
        pairs = sorted(
            zip(exponents, units), key=lambda t: (t[0], legendre(t[1], p) != 1)
        )
        return DiagonalForm(
            p,
            tuple(a for _, a in pairs),
            tuple(u for u, _ in pairs),
            twist,
        )

    @property
    def n(self) -> int:
        return len(self.units)

    def values(self) -> list[Fraction]:
        return [
            Fraction(a) * Fraction(self.p) ** u
            for a, u in zip(self.units, self.exponents)
        ]

    def det(self) -> Fraction:
        out = Fraction(1)
        for v in self.values():
            out *= v
        return out

    def leading_block(self) -> "DiagonalForm":
        """Drop the last (largest-exponent) entry."""
        return DiagonalForm(self.p, self.units[:-1], self.exponents[:-1], self.twist)

    def bump_last(self, by: int = 2) -> "DiagonalForm":
        """Raise the last exponent, the N -> N' move of the inductive relation."""
        if self.n == 0:
            raise PreconditionError("cannot bump an empty form")
        return DiagonalForm(
            self.p,
            self.units,
            self.exponents[:-1] + (self.exponents[-1] + by,),
            self.twist,
        )

    def scale_by_p(self) -> "DiagonalForm":
        return DiagonalForm(
            self.p, self.units, tuple(u + 1 for u in self.exponents), self.twist
        )

    def canonical(self) -> "DiagonalForm":
        """Units normalized to {1, r} (r the least non-residue), re-sorted."""
        r = least_nonresidue(self.p)
        units = tuple(1 if legendre(a, self.p) == 1 else r for a in self.units)
        pairs = sorted(zip(self.exponents, units))
        return DiagonalForm(
            self.p,
            tuple(a for _, a in pairs),
            tuple(u for u, _ in pairs),
            self.twist,
            provenance=self.units,
        )

    def to_half_int_matrix(self) -> HalfIntMatrix:
        vals = self.values()
        G = tuple(
            tuple(2 * int(vals[i]) if i == j else 0 for j in range(self.n))
            for i in range(self.n)
        )
        return HalfIntMatrix(self.n, G)


@dataclass(frozen=True)
class LocalData:
    """The invariants of N at p feeding beta, H and the closed formulas."""

    n: int
    detN: Rat
    D_N: Rat
    d_p: int
    Dprime: Rat
    a_N: int
    e_p: int
    zeta_p: int
    eta_p: int
    chiN_p: int
    chiNstar_p: int


def local_data(N, p: int) -> LocalData:
    """All §-invariants of a non-degenerate N (HalfIntMatrix or DiagonalForm)."""
    if isinstance(N, DiagonalForm):
        if N.p != p:
            raise PreconditionError("DiagonalForm built for a different prime")
        n = N.n
        det = N.det()
        diag = N.values()
    elif isinstance(N, HalfIntMatrix):
        n = N.n
        det = N.det()
        if det == 0:
            raise SingularMatrix("local data needs det N != 0")
        diag = diagonalize_over_Q(N)
    else:
        raise PreconditionError(f"unsupported matrix type {type(N)!r}")
    _check_odd_prime(p)

    D_N = Fraction(-4) ** (n // 2) * det
    d_p = ord_p(D_N, p) if D_N != 0 else 0
    if det == 0:
        raise SingularMatrix("local data needs det N != 0")
    Dprime = D_N / Fraction(p) ** d_p

    if n % 2 == 0:
        fd = fundamental_discriminant(D_N)
        e_p = d_p - (ord_p(fd, p) if fd != 1 else 0)
        assert e_p % 2 == 0, "e_p must be even for even size"
        a_N = d_p % 2
        if fd == 1:
            chi = 1  # trivial character of the split extension
        else:
            chi = legendre(fd, p)
        if fd % p != 0:
            chi_star = 0  # conductor of chi_N* picks up the factor p
        else:
            chi_star = legendre(-(fd // p), p)
        zeta = 1
        eta = 1
    else:
        a_N = 1
        e_p = d_p
        zeta = _zeta_from(n, det, _hasse_from_diag(diag, p), p)
        eta = legendre(Dprime, p) * zeta
        chi = 0
        chi_star = 0

    return LocalData(
        n=n,
        detN=det,
        D_N=D_N,
        d_p=d_p,
        Dprime=Dprime,
        a_N=a_N,
        e_p=e_p,
        zeta_p=zeta,
        eta_p=eta,
        chiN_p=chi,
        chiNstar_p=chi_star,
    )


def jordan_diagonalize_Zp(N: HalfIntMatrix, p: int) -> DiagonalForm:
    """U^t N U = diag(alpha_i p^u_i) with U in GL_n(Z_p), realized over Q.

    Pivots always exist at odd p (2 is a unit).  The returned ``twist`` is
    chi_p(det U); it is reported as metadata only, since the ramified series
    are invariant under GL_n(Z_p)-congruence.
    """
    _check_odd_prime(p)
    if N.det() == 0:
        raise SingularMatrix("Jordan diagonalization needs det N != 0")
    a = N.entries()
    n = N.n
    det_u = Fraction(1)

    def val(x) -> int:
        return ord_p(x, p) if x != 0 else 10**9

    for i in range(n):
        # locate the minimal-valuation entry of the trailing block
        best, br, bc = None, i, i
        for r in range(i, n):
            for c in range(r, n):
                v = val(a[r][c])
                if best is None or v < best:
                    best, br, bc = v, r, c
        if br != bc:
            # off-diagonal minimum: adding the partner row makes the
            # diagonal entry attain it (odd p: the cross term dominates)
            _sym_add(a, br, bc, Fraction(1))
        if br != i:
            _sym_swap(a, i, br)
            det_u = -det_u
        inv = 1 / a[i][i]
        for k in range(i + 1, n):
            if a[k][i]:
                _sym_add(a, k, i, -a[k][i] * inv)

    entries = []
    for i in range(n):
        piv = a[i][i]
        u = ord_p(piv, p)
        assert u >= 0, "half-integral input must have non-negative valuations"
        unit = unit_part(piv, p)
        # scale the basis vector by the denominator to make the unit integral
        alpha = unit.numerator * unit.denominator
        det_u *= unit.denominator
        entries.append((u, alpha))

    order = sorted(
        range(n), key=lambda i: (entries[i][0], legendre(entries[i][1], p) != 1)
    )
    det_u *= _perm_sign(order)
    units = tuple(entries[i][1] for i in order)
    exps = tuple(entries[i][0] for i in order)
    return DiagonalForm(p, units, exps, twist=legendre(det_u, p))


def _sym_swap(a: list[list[Fraction]], i: int, j: int) -> None:
    n = len(a)
    a[i], a[j] = a[j], a[i]
    for k in range(n):
        a[k][i], a[k][j] = a[k][j], a[k][i]


def _perm_sign(order: list[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
