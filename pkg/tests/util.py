"""Shared test helpers: brute-force oracles and random matrix generators."""

from __future__ import annotations

import random
from fractions import Fraction

from siegelp.localinv import HalfIntMatrix, ord_p, unit_part


def conic_solvable(a, b, p: int) -> bool:
    """Brute-force Hilbert symbol: does z^2 = a x^2 + b y^2 have a solution
    mod p^3 with (x, y, z) not all divisible by p?

    Arguments are first reduced modulo squares to valuation 0 or 1.  If both
    x and y are divisible by p then z would have to be a unit with z^2 = 0
    mod p, impossible, so only pairs with x or y a unit need checking.
    """

    def square_class_rep(x) -> int:
        x = Fraction(x)
        v = ord_p(x, p)
        u = unit_part(x, p)
        return int(u.numerator * u.denominator) * p ** (v % 2)

    a, b = square_class_rep(a), square_class_rep(b)
    mod = p**3
    squares = {z * z % mod for z in range(mod)}
    for x in range(mod):
        ax2 = a * x * x % mod
        for y in range(mod):
            if x % p == 0 and y % p == 0:
                continue
            if (ax2 + b * y * y) % mod in squares:
                return True
    return False


def random_unimodular(n: int, rng: random.Random, steps: int = 6):
    """Random integer matrix with determinant +-1 (shears, swaps, sign flips)."""
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.random()
        if n > 1 and kind < 0.7:
            i, j = rng.sample(range(n), 2)
            c = rng.randint(-2, 2)
            for k in range(n):
                U[i][k] += c * U[j][k]
        elif n > 1 and kind < 0.9:
            i, j = rng.sample(range(n), 2)
            U[i], U[j] = U[j], U[i]
        else:
            i = rng.randrange(n)
            c = rng.choice((1, -1))
            for k in range(n):
                U[i][k] *= c
    return U


def det_int(U) -> int:
    n = len(U)
    if n == 1:
        return U[0][0]
    out = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in U[1:]]
        out += (-1) ** j * U[0][j] * det_int(minor)
    return out


def congruent(M: HalfIntMatrix, U) -> HalfIntMatrix:
    """U^t N U as a HalfIntMatrix (G = 2N transforms the same way)."""
    n = M.n
    G = M.G
    out = [
        [
            sum(U[k][i] * G[k][l] * U[l][j] for k in range(n) for l in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return HalfIntMatrix(n, tuple(tuple(row) for row in out))


def random_half_int(n: int, rng: random.Random, bound: int = 6) -> HalfIntMatrix:
    """Random non-degenerate half-integral symmetric matrix."""
    while True:
        G = [[0] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = 2 * rng.randint(-bound, bound)
            for j in range(i + 1, n):
                G[i][j] = G[j][i] = rng.randint(-bound, bound)
        M = HalfIntMatrix(n, tuple(tuple(r) for r in G))
        if M.det() != 0:
            return M
