"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also repeated in the terminal summary.
"""
import cmath
import contextlib
import math
import time

import numpy as np
import pytest

from uqgl2.linalg import SquareMatrix
from uqgl2.reps import Branch, HighestWeightRep
from uqgl2.rings import RESIDUAL_TOL, root_of_unity
from uqgl2.rmatrix import build_r_series
from uqgl2.sampling import random_colors, random_generic_q, random_rep
from uqgl2.verify import (Family, check_colored_ybe, check_gauge_invariance, check_hopf_axioms,
                          check_intertwiner, check_twist, check_variants, check_ybe, colored_triple,
                          exact_colored_triple, hlavaty_identify)

DRAWS = 20
BRANCHES = (Branch.GENERIC, Branch.ROOT_OF_UNITY)


@contextlib.contextmanager
def criterion(log, number, title):
    """Record PASS/FAIL for one criterion; assertion failures propagate."""
    info = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException:
        status = "FAIL"
        raise
    else:
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        extra = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in info.items())
        line = f"criterion {number:2d} {status}: {title} ({extra}; {elapsed:.2f}s)"
        log[number] = line
        print("\n" + line, flush=True)


def dense(mat: SquareMatrix) -> np.ndarray:
    return mat.to_dense()


def ratio(a: np.ndarray) -> np.ndarray:
    return a / a[0, 0]


# literal golden forms, transcribed independently of the library ---------------------------

def golden_m2(s, gamma, branch):
    r = np.zeros((4, 4), complex)
    r[0, 0] = 1 / s
    r[1, 1] = gamma
    r[2, 1] = 1 / s - s
    r[2, 2] = 1 / gamma
    r[3, 3] = 1 / s if branch is Branch.GENERIC else -s
    return r


def golden_m3(q, s, gamma, a1b2, a2b1):
    q2 = q * q
    a1 = np.diag([q2 * s ** -4, q2 * s ** -2 * gamma, q2 * gamma ** 2])
    a2 = np.diag([q2 * s ** -2 / gamma, 1, s ** 2 * gamma / q2])
    a3 = np.diag([q2 / gamma ** 2, s ** 2 / (q2 * gamma), s ** 4 * q ** -6])
    b1 = np.zeros((3, 3), complex)
    b1[0, 1] = q2 * (s ** -4 - 1)
    b1[1, 2] = (1 - q2) * gamma * a2b1
    b2 = np.zeros((3, 3), complex)
    b2[0, 1] = (1 - q2) / gamma * a1b2
    b2[1, 2] = (1 + q ** -2) * (1 - s ** 4 / q2)
    c = np.zeros((3, 3), complex)
    c[0, 2] = (s ** -4 - 1) * (q2 - s ** 4)
    z = np.zeros((3, 3))
    return np.block([[a1, z, z], [b1, a2, z], [c, b2, a3]])


# shared corpora --------------------------------------------------------------------------

@pytest.fixture(scope="module")
def corpus3():
    """Criterion 3 draws: (m, branch, rep, R) with the build time."""
    start = time.perf_counter()
    out = []
    for m in range(2, 6):
        for branch in BRANCHES:
            rng = np.random.default_rng(1000 * m + (branch is Branch.GENERIC))
            for _ in range(DRAWS):
                rep = random_rep(m, branch, rng)
                out.append((m, branch, rep, build_r_series(rep).matrix))
    return out, time.perf_counter() - start


@pytest.fixture(scope="module")
def corpus4():
    """Criterion 4 draws: three distinct colours sharing q, with their three matrices."""
    out = []
    for m in (2, 3):
        for branch in BRANCHES:
            rng = np.random.default_rng(2000 * m + (branch is Branch.GENERIC))
            for _ in range(DRAWS):
                reps = random_colors(m, branch, rng, 3)
                out.append((m, branch, reps, colored_triple(reps)))
    return out


# criteria ----------------------------------------------------------------------------------

def test_criterion_01_golden_m2(acceptance_log):
    with criterion(acceptance_log, 1, "golden m=2 standard and nonstandard forms") as info:
        start = time.perf_counter()
        s, gamma = 2.0, 3.0
        worst = 0.0
        for q, branch in ((2.0, Branch.GENERIC), (1j, Branch.ROOT_OF_UNITY)):
            rep = HighestWeightRep.build(2, q, math.sqrt(s), math.sqrt(gamma))
            assert rep.branch is branch
            got = ratio(dense(build_r_series(rep).matrix))
            worst = max(worst, np.abs(got - ratio(golden_m2(s, gamma, branch))).max())
        runtime = time.perf_counter() - start
        info.update(max_entry_error=worst, runtime=runtime)
        assert worst <= 1e-12 and runtime < 1


def test_criterion_02_golden_m3(acceptance_log):
    with criterion(acceptance_log, 2, "golden m=3 block form, both branches") as info:
        start = time.perf_counter()
        rng = np.random.default_rng(2)
        reps = [HighestWeightRep.build(3, q, cmath.sqrt(q))
                for q in (2.0, 0.7 + 0.9j, -1.3 + 0.2j)]
        reps += [random_rep(3, Branch.GENERIC, rng) for _ in range(5)]
        reps += [random_rep(3, Branch.ROOT_OF_UNITY, rng, q=root_of_unity(1, 6)) for _ in range(8)]
        assert {r.branch for r in reps} == set(BRANCHES)
        worst = 0.0
        for rep in reps:
            assert rep.a == (1, 1)
            q, (b1, b2) = rep.q.value, rep.b
            expected = golden_m3(q, rep.s, rep.gamma, rep.a[0] * b2, rep.a[1] * b1)
            got = ratio(dense(build_r_series(rep).matrix))
            worst = max(worst, np.abs(got - ratio(expected)).max())
        runtime = time.perf_counter() - start
        info.update(max_entry_error=worst, runtime=runtime)
        assert worst <= 1e-10 and runtime < 1


def test_criterion_03_ybe(acceptance_log, corpus3):
    with criterion(acceptance_log, 3, "YBE m=2..5, 20 draws per m per branch") as info:
        draws, build_time = corpus3
        start = time.perf_counter()
        worst = max(check_ybe(r, m).residual for m, _, _, r in draws)
        runtime = build_time + time.perf_counter() - start
        info.update(draws=len(draws), max_residual=worst, runtime=runtime)
        assert len(draws) == 4 * 2 * DRAWS
        assert worst <= RESIDUAL_TOL
        assert runtime < 30


def test_criterion_04_colored_ybe(acceptance_log, corpus3, corpus4):
    with criterion(acceptance_log, 4, "coloured YBE m=2,3, equal-colour degeneration") as info:
        worst = max(check_colored_ybe(*mats, m).residual for m, _, _, mats in corpus4)
        identical = all(all(x == r for x in colored_triple([rep] * 3))
                        for m, _, rep, r in corpus3[0] if m <= 3)
        info.update(draws=len(corpus4), max_residual=worst, degeneration_bit_identical=identical)
        assert len(corpus4) == 2 * 2 * DRAWS
        assert worst <= RESIDUAL_TOL
        assert identical


def test_criterion_05_exact_certificate(acceptance_log):
    with criterion(acceptance_log, 5, "exact coloured certificate m=2,3 type b") as info:
        start = time.perf_counter()
        worst = 0.0
        zero = True
        for m in (2, 3):
            reps = random_colors(m, Branch.ROOT_OF_UNITY, np.random.default_rng(50 + m), 3)
            report = check_colored_ybe(*exact_colored_triple(reps), m)
            worst = max(worst, report.residual)
            zero &= report.exact_zero
        runtime = time.perf_counter() - start
        info.update(max_coefficient=worst, zero_polynomial=zero, runtime=runtime)
        assert zero and worst <= 1e-10
        assert runtime < 10


def test_criterion_06_intertwiner(acceptance_log, corpus3, corpus4):
    with criterion(acceptance_log, 6, "intertwiner on criteria 3-4 matrices") as info:
        worst = max(check_intertwiner(r, rep).residual for _, _, rep, r in corpus3[0])
        for _, _, reps, (r12, r13, r23) in corpus4:
            for mat, (i, j) in ((r12, (0, 1)), (r13, (0, 2)), (r23, (1, 2))):
                worst = max(worst, check_intertwiner(mat, reps[i], reps[j]).residual)
        info["max_residual"] = worst
        assert worst <= RESIDUAL_TOL


def test_criterion_07_hopf(acceptance_log):
    with criterion(acceptance_log, 7, "Hopf axioms m=2..4, both branches") as info:
        worst = 0.0
        for m in (2, 3, 4):
            for branch in BRANCHES:
                rng = np.random.default_rng(70 + m)
                for _ in range(5):
                    worst = max(worst, check_hopf_axioms(*random_colors(m, branch, rng, 3)).residual)
        info["max_residual"] = worst
        assert worst <= 1e-10


def test_criterion_08_variants(acceptance_log, corpus3):
    with criterion(acceptance_log, 8, "variants P R P, R^-1, P R^-1 P solve the YBE") as info:
        worst = 0.0
        for m, _, rep, r in corpus3[0]:
            details = check_variants(r, m, rep).details
            worst = max(worst, *(details[f"ybe[{k}]"] for k in ("plus", "minus", "bar")))
        info["max_residual"] = worst
        assert worst <= RESIDUAL_TOL


def test_criterion_09_twist(acceptance_log):
    with criterion(acceptance_log, 9, "twist u=4, lambda=lambda'=1/2, m=2,3") as info:
        conj = f12f21 = 0.0
        for m in (2, 3):
            q = root_of_unity(1, 2 * m)
            for mu1, mu2, t in ((0.3, -0.6, 1.2), (0.25, -0.5, 1.1), (0.1 + 0.2j, 0.7, 0.8)):
                r1 = HighestWeightRep.from_raw(m, q, mu1, 0.5, t, 4.0)
                r2 = HighestWeightRep.from_raw(m, q, mu2, 0.5, t, 4.0)
                details = check_twist(r1, r2).details
                conj = max(conj, details["conjugation"])
                f12f21 = max(f12f21, details["F12F21"])
        info.update(conjugation=conj, F12F21=f12f21)
        assert conj <= 1e-10 and f12f21 <= 1e-12


def test_criterion_10_gauge_invariance(acceptance_log):
    with criterion(acceptance_log, 10, "gauge invariance over 10 random splits") as info:
        spread = base = 0.0
        identical = True
        for m in (2, 3):
            for branch in BRANCHES:
                for seed in range(3):
                    reps = random_colors(m, branch, np.random.default_rng(100 * m + seed), 3)
                    details = check_gauge_invariance(reps, draws=10, seed=seed).details
                    spread = max(spread, details["max_excess"])
                    base = max(base, details["unit_a_residual"])
                    identical &= details["diagonal_bit_identical"]
        info.update(max_spread=spread, unit_a_residual=base, diagonal_bit_identical=identical)
        assert spread <= 10 * RESIDUAL_TOL and base <= RESIDUAL_TOL
        assert identical


def test_criterion_11_hlavaty(acceptance_log):
    with criterion(acceptance_log, 11, "Hlavaty R1 parameters and R2 W-entry") as info:
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(10):
            q = random_generic_q(2, rng).value
            a, b = (HighestWeightRep.build(2, q, cmath.sqrt(q), cmath.sqrt(1 + rng.random()))
                    for _ in range(2))
            hm = hlavaty_identify(build_r_series(a, b))
            assert hm.family is Family.R1
            worst = max(worst, hm.residual, abs(hm.k - q * q) / abs(q * q),
                        abs(hm.p_plus_lambda - q * a.gamma) / abs(q * a.gamma),
                        abs(hm.p_plus_mu - q * b.gamma) / abs(q * b.gamma))
        for _ in range(10):
            a, b = random_colors(2, Branch.ROOT_OF_UNITY, rng, 2)
            result = build_r_series(a, b)
            hm = hlavaty_identify(result)
            assert hm.family is Family.R2
            w = (1 - hm.p_plus_lambda * hm.p_minus_lambda) * hm.xi_ratio
            built = result.matrix / result.matrix[1, 1]
            worst = max(worst, hm.residual, abs(built[3, 2] - w) / abs(w))
        info["max_relative_error"] = worst
        assert worst <= 1e-12
