"""Grid sweeps of the exact identities; used by the CLI and the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import golden
from .cuspmix import (
    b_coeff_closed,
    b_coeff_inductive,
    b_matrix,
    c_matrix,
    is_identity,
    lemma_sum_A,
    lemma_sum_B,
    mat_mul,
)
from .errors import PoleAtSample
from .localinv import DiagonalForm, least_nonresidue
from .qfield import Character, field_disc
from .series import (
    check_functional_equation,
    check_inductive_relation,
    check_scaling,
    s_characteristic,
    s_cusp,
)

BOTH = (Character.TRIVIAL, Character.QUADRATIC)


@dataclass
class SuiteReport:
    name: str
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, label: str) -> None:
        self.total += 1
        if not ok:
            self.failures.append(label)

    def summary(self) -> str:
        state = "pass" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {self.total} checks, {state}"


def diagonal_grid(p: int, n: int, max_exp: int):
    """All sorted diagonal forms of size n with exponents <= max_exp and
    canonical unit classes."""
    r = least_nonresidue(p)
    for exps in itertools.combinations_with_replacement(range(max_exp + 1), n):
        for units in itertools.product((1, r), repeat=n):
            yield DiagonalForm.make(p, units, exps)


def run_fe_suite(ps=(3, 5), max_n: int = 4, max_exp: int = 2) -> SuiteReport:
    rep = SuiteReport("functional-equation")
    for p in ps:
        for character in BOTH:
            for n in range(1, max_n + 1):
                for N in diagonal_grid(p, n, max_exp):
                    for nu in range(n + 1):
                        res = check_functional_equation(character, p, N, nu)
                        rep.record(res.ok, res.label)
    return rep


def run_scaling_suite(ps=(3, 5), max_n: int = 4, max_exp: int = 2) -> SuiteReport:
    rep = SuiteReport("scaling")
    for p in ps:
        for character in BOTH:
            for n in range(1, max_n + 1):
                for N in diagonal_grid(p, n, max_exp):
                    for nu in range(n + 1):
                        res = check_scaling(character, p, N, nu)
                        rep.record(res.ok, res.label)
    return rep


def run_inductive_suite(ps=(3, 5), max_n: int = 4, max_exp: int = 2) -> SuiteReport:
    rep = SuiteReport("inductive-relation")
    for p in ps:
        for character in BOTH:
            for n in range(1, max_n + 1):
                for N in diagonal_grid(p, n, max_exp):
                    for nu in range(n + 1):
                        for basis in ("characteristic", "cusp"):
                            res = check_inductive_relation(
                                character, p, N, nu, basis
                            )
                            rep.record(res.ok, res.label)
    return rep


def run_matrix_suite(ps=(3, 5, 7), max_n: int = 8) -> SuiteReport:
    rep = SuiteReport("matrix-identities")
    for p in ps:
        for character in BOTH:
            d = field_disc(p, character)
            B = b_matrix(max_n, character, p)
            C = c_matrix(max_n, character, p)
            rep.record(
                is_identity(mat_mul(B, C, p, d), p, d),
                f"B*C=I p={p} {character} n={max_n}",
            )
            for i in range(max_n + 1):
                for j in range(max_n + 1):
                    ok = b_coeff_closed(character, p, i, j) == b_coeff_inductive(
                        character, p, i, j
                    )
                    rep.record(ok, f"b closed=inductive p={p} {character} ({i},{j})")
    return rep


def run_lemma_suite(seed: int = 20240901, samples: int = 50, max_r: int = 8) -> SuiteReport:
    rep = SuiteReport("lemma-identities")
    rng = random.Random(seed)
    for r in range(1, max_r + 1):
        done = 0
        while done < samples:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            y = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if x in (0, 1, -1) or y == 0:
                continue
            try:
                ok_a = lemma_sum_A(x, y, r) == -1
                ok_b = lemma_sum_B(x, y, r) == y**r - 1
            except PoleAtSample:
                continue
            rep.record(ok_a, f"sum-A r={r} x={x} y={y}")
            rep.record(ok_b, f"sum-B r={r} x={x} y={y}")
            done += 1
    return rep


def run_golden_suite() -> SuiteReport:
    """Engine output vs the transcribed low-degree fixtures, exact equality."""
    rep = SuiteReport("golden")
    for p, alpha, m, nu in golden.degree1_grid():
        N = DiagonalForm(p, (alpha,), (m,))
        got = s_characteristic(Character.QUADRATIC, p, N, nu).S
        want = golden.degree1(p, alpha, m, nu)
        rep.record(got == want, f"degree1 p={p} alpha={alpha} m={m} nu={nu}")
    for p, alpha, beta, m, r in golden.degree2_grid():
        N = DiagonalForm(p, (alpha, beta), (m, m + r))
        got = s_characteristic(Character.QUADRATIC, p, N, 1).S
        want = golden.degree2_nu1(p, alpha, beta, m, r)
        rep.record(
            got == want, f"degree2 p={p} units=({alpha},{beta}) m={m} r={r}"
        )
    for p, alpha, beta, gamma, m, r, t in golden.degree3_grid():
        N = DiagonalForm(p, (alpha, beta, gamma), (m, m + r, m + r + t))
        got = s_cusp(Character.QUADRATIC, p, N, 0)
        want = golden.degree3_w0(p, alpha, beta, gamma, m, r, t)
        rep.record(
            got == want,
            f"degree3 p={p} units=({alpha},{beta},{gamma}) m={m} r={r} t={t}",
        )
    return rep


SUITES = {
    "fe": run_fe_suite,
    "scaling": run_scaling_suite,
    "inductive": run_inductive_suite,
    "matrix": run_matrix_suite,
    "lemmas": run_lemma_suite,
    "golden": run_golden_suite,
}
