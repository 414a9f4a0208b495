import random
from fractions import Fraction

import pytest

from siegelp.errors import PreconditionError, SingularMatrix, UnsupportedPrime
from siegelp.localinv import (
    DiagonalForm,
    HalfIntMatrix,
    diagonalize_over_Q,
    fundamental_discriminant,
    hasse_invariant,
    hilbert_symbol,
    jordan_diagonalize_Zp,
    least_nonresidue,
    legendre,
    local_data,
    ord_p,
    squarefree_part,
    unit_part,
    zeta_p_of,
)

from util import congruent, conic_solvable, random_half_int, random_unimodular


def diag_matrix(vals):
    n = len(vals)
    G = tuple(
        tuple(2 * vals[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    return HalfIntMatrix(n, G)


class TestSymbols:
    def test_legendre_basics(self):
        assert legendre(1, 7) == 1
        assert legendre(3, 7) == -1  # 3 is a non-residue mod 7
        assert legendre(7, 7) == 0
        assert legendre(Fraction(2, 9), 7) == legendre(2, 7)

    def test_hilbert_one_is_square(self):
        for b in (2, -3, Fraction(5, 7), 11):
            assert hilbert_symbol(1, b, 5) == 1

    def test_hilbert_units(self):
        for u in (2, -1, 4):
            for v in (3, -2):
                if u % 5 and v % 5:
                    assert hilbert_symbol(u, v, 5) == 1

    def test_hilbert_p_unit(self):
        for p in (3, 5, 7):
            for u in range(1, p):
                assert hilbert_symbol(p, u, p) == legendre(u, p)

    def test_hilbert_even_prime_rejected(self):
        with pytest.raises(UnsupportedPrime):
            hilbert_symbol(3, 5, 2)

    def test_hilbert_against_conic_oracle(self):
        rng = random.Random(42)
        done = 0
        while done < 200:
            p = rng.choice((3, 3, 3, 5, 5, 7))
            a = rng.randint(-20, 20)
            b = rng.randint(-20, 20)
            if a == 0 or b == 0:
                continue
            a, b = a * p ** rng.randint(0, 2), b * p ** rng.randint(0, 2)
            want = 1 if conic_solvable(a, b, p) else -1
            assert hilbert_symbol(a, b, p) == want, (a, b, p)
            done += 1

    def test_hilbert_symmetric_and_antidiagonal(self):
        rng = random.Random(43)
        for _ in range(100):
            p = rng.choice((3, 5, 7))
            a = rng.choice((1, 2, 3, 5, -1, -2)) * p ** rng.randint(0, 2)
            b = rng.choice((1, 2, 3, 5, -1, -2)) * p ** rng.randint(0, 2)
            assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
            assert hilbert_symbol(a, -a, p) == 1
            # bilinear in square classes
            c = rng.choice((1, 2, 3, -1)) * p ** rng.randint(0, 1)
            assert hilbert_symbol(a * c * c, b, p) == hilbert_symbol(a, b, p)
            assert (
                hilbert_symbol(a * c, b, p)
                == hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p)
            )


class TestDiagonalization:
    def test_already_diagonal(self):
        assert diagonalize_over_Q(diag_matrix([2, 3])) == [2, 3]

    def test_identity(self):
        assert diagonalize_over_Q(diag_matrix([1, 1, 1])) == [1, 1, 1]

    def test_hyperbolic_plane(self):
        # N = [[0,1/2],[1/2,0]]: diagonal classes are {1, -1} up to squares
        M = HalfIntMatrix(2, ((0, 1), (1, 0)))
        diag = diagonalize_over_Q(M)
        prod = diag[0] * diag[1]
        assert prod < 0 and squarefree_part(prod) == -1
        assert squarefree_part(Fraction(prod)) == squarefree_part(M.det())
        for p in (3, 5, 7):
            assert hasse_invariant(M, p) == hilbert_symbol(1, -1, p)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            diagonalize_over_Q(HalfIntMatrix(2, ((2, 2), (2, 2))))


class TestHasse:
    def test_identity_matrix(self):
        for n in (1, 2, 3):
            assert hasse_invariant(diag_matrix([1] * n), 5) == 1

    def test_unit_tail(self):
        assert hasse_invariant(diag_matrix([1, 1, 3]), 5) == 1

    def test_diag_p_p(self):
        for p in (3, 5, 7, 11):
            want = legendre(-1, p)
            assert hasse_invariant(diag_matrix([p, p]), p) == want
            # cross-check (p, p)_p = (-1/p) via the solvability oracle
            assert (1 if conic_solvable(p, p, p) else -1) == want

    def test_congruence_invariance(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(1, 3)
            M = random_half_int(n, rng)
            U = random_unimodular(n, rng)
            for p in (3, 5):
                assert hasse_invariant(congruent(M, U), p) == hasse_invariant(M, p)


class TestZeta:
    def test_even_size_is_one(self):
        assert zeta_p_of(diag_matrix([1, 2]), 5) == 1
        assert zeta_p_of(diag_matrix([3, 5, 7, 1]), 3) == 1

    def test_unit_singleton(self):
        for p in (3, 5, 7):
            for u in (1, 2, -1):
                assert zeta_p_of(diag_matrix([u]), p) == 1

    def test_p_singleton(self):
        for p in (3, 5, 7, 11):
            assert zeta_p_of(diag_matrix([p]), p) == legendre(-1, p)

    def test_flag_is_cosmetic_at_odd_p(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.choice((1, 3))
            M = random_half_int(n, rng)
            for p in (3, 7):
                assert zeta_p_of(M, p, include_minus_one_factor=True) == zeta_p_of(
                    M, p, include_minus_one_factor=False
                )


class TestFundamentalDiscriminant:
    @pytest.mark.parametrize(
        "D,want",
        [
            (9, 1),
            (-4, -4),
            (5, 5),
            (12, 12),
            (8, 8),
            (-3, -3),
            (-24, -24),
            (Fraction(1, 2), 8),
            (Fraction(-4, 9), -4),
            (18, 8),
        ],
    )
    def test_values(self, D, want):
        assert fundamental_discriminant(D) == want


class TestLocalData:
    def test_unit_singleton(self):
        loc = local_data(DiagonalForm(5, (1,), (0,)), 5)
        assert (loc.D_N, loc.d_p, loc.a_N, loc.e_p) == (1, 0, 1, 0)
        assert (loc.zeta_p, loc.eta_p) == (1, 1)
        assert (loc.chiN_p, loc.chiNstar_p) == (0, 0)

    def test_identity_2x2(self):
        loc = local_data(DiagonalForm(5, (1, 1), (0, 0)), 5)
        assert loc.D_N == -4
        assert (loc.d_p, loc.a_N, loc.e_p) == (0, 0, 0)
        assert loc.chiN_p == 1  # kronecker(-4, 5)
        assert loc.chiNstar_p == 0  # conductor of chi* picks up p

    def test_diag_1_p(self):
        loc = local_data(DiagonalForm(3, (1, 1), (0, 1)), 3)
        assert loc.D_N == -12
        assert (loc.d_p, loc.a_N, loc.e_p) == (1, 1, 0)
        assert loc.chiN_p == 0  # 3 divides the discriminant -3
        assert loc.chiNstar_p == legendre(4, 3) == 1

    def test_empty_form(self):
        loc = local_data(DiagonalForm(5, (), ()), 5)
        assert (loc.n, loc.detN, loc.chiN_p, loc.a_N, loc.e_p) == (0, 1, 1, 0, 0)

    def test_e_p_even_for_even_size(self):
        rng = random.Random(9)
        for _ in range(40):
            n = rng.choice((2, 4))
            M = random_half_int(n, rng)
            for p in (3, 5):
                assert local_data(M, p).e_p % 2 == 0

    def test_d_p_additive_under_orthogonal_sum(self):
        rng = random.Random(10)
        for _ in range(30):
            p = rng.choice((3, 5))
            n = rng.randint(1, 3)
            units = tuple(rng.choice((1, 2, p + 1)) for _ in range(n))
            exps = tuple(sorted(rng.randint(0, 3) for _ in range(n)))
            N = DiagonalForm(p, units, exps)
            u = rng.randint(exps[-1], exps[-1] + 2)
            alpha = rng.choice((1, 2))
            bigger = DiagonalForm(p, units + (alpha,), exps + (u,))
            assert local_data(bigger, p).d_p == local_data(N, p).d_p + u


class TestJordan:
    def test_already_diagonal(self):
        M = diag_matrix([2, 9])  # diag(2, 3^2) at p = 3
        form = jordan_diagonalize_Zp(M, 3)
        assert form.units == (2, 1)
        assert form.exponents == (0, 2)
        assert form.twist == 1

    def test_hyperbolic(self):
        M = HalfIntMatrix(2, ((0, 1), (1, 0)))
        for p in (3, 5, 7):
            form = jordan_diagonalize_Zp(M, p)
            assert form.exponents == (0, 0)
            # det agreement up to squares: unit class of the product matches
            prod = Fraction(form.units[0] * form.units[1])
            assert legendre(prod, p) == legendre(M.det(), p)

    def test_permutation_twist(self):
        # diag(3p, 2) must sort to diag(2, 3p); the swap has det -1
        p = 3
        M = diag_matrix([3 * p, 2])
        form = jordan_diagonalize_Zp(M, p)
        assert form.exponents == (0, 2)
        assert (form.units[0], ord_p(form.units[1] * 3 * p, p)) == (2, 2)
        assert form.twist == legendre(-1, p)

    def test_local_data_matches_original(self):
        rng = random.Random(21)
        for _ in range(40):
            n = rng.randint(1, 3)
            M = random_half_int(n, rng)
            for p in (3, 5):
                form = jordan_diagonalize_Zp(M, p)
                a = local_data(M, p)
                b = local_data(form, p)
                assert (a.d_p, a.a_N, a.e_p) == (b.d_p, b.a_N, b.e_p)
                assert (a.zeta_p, a.eta_p) == (b.zeta_p, b.eta_p)
                assert (a.chiN_p, a.chiNstar_p) == (b.chiN_p, b.chiNstar_p)
                assert legendre(a.Dprime, p) == legendre(b.Dprime, p)

    def test_output_valuations_sorted(self):
        rng = random.Random(22)
        for _ in range(20):
            M = random_half_int(3, rng)
            form = jordan_diagonalize_Zp(M, 3)
            assert list(form.exponents) == sorted(form.exponents)
            assert all(u % 3 != 0 for u in form.units)


class TestDiagonalForm:
    def test_sorted_required(self):
        with pytest.raises(PreconditionError):
            DiagonalForm(3, (1, 1), (2, 0))

    def test_unit_coprimality(self):
        with pytest.raises(PreconditionError):
            DiagonalForm(3, (3,), (0,))

    def test_make_sorts_with_tie_break(self):
        f = DiagonalForm.make(3, (2, 1, 1), (1, 0, 1))
        assert f.exponents == (0, 1, 1)
        assert f.units == (1, 1, 2)  # residue class 1 before the non-residue

    def test_canonical(self):
        f = DiagonalForm(7, (5, 10), (0, 2)).canonical()
        r = least_nonresidue(7)
        assert f.units == (legendre(5, 7) == 1 and 1 or r, legendre(10, 7) == 1 and 1 or r)
        assert f.provenance == (5, 10)
