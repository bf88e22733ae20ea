import cmath
import math

import numpy as np
import pytest

from uqgl2.errors import (GaugeInconsistentError, MissingRawParametersError, NeitherBranchError,
                          QMismatchError, QSquaredOneError)
from uqgl2.linalg import SquareMatrix, residual_norm
from uqgl2.reps import (Branch, GaugeChoice, GaugeMode, Gen, HighestWeightRep, admissible_roots,
                        antipode_image, apply_gauge, classify_branch, coproduct_image,
                        products_ab, rep_matrices, require_raw)
from uqgl2.rings import close, q_integer, root_of_unity
from uqgl2.sampling import random_rep
from uqgl2.verify import check_commutation, hopf_residuals

SQRT2 = math.sqrt(2)


# branches ---------------------------------------------------------------------

def test_classify_examples():
    assert classify_branch(2, 2, SQRT2) is Branch.GENERIC
    assert classify_branch(2, 1j, math.sqrt(3)) is Branch.ROOT_OF_UNITY
    assert classify_branch(3, 2, cmath.sqrt(2j)) is Branch.GENERIC


def test_classify_errors():
    with pytest.raises(QSquaredOneError):
        classify_branch(2, -1, 1.3)
    with pytest.raises(NeitherBranchError):
        classify_branch(2, 2, 3)


def test_generic_label_wins_on_overlap():
    # q = i, m = 2 and s = q satisfy both conditions
    assert classify_branch(2, 1j, cmath.sqrt(1j)) is Branch.GENERIC


# products and gauges ------------------------------------------------------------

def test_products_examples():
    s, q = 1.7 + 0.2j, 0.8 + 0.9j
    (ab,) = products_ab(2, q, cmath.sqrt(s))
    assert close(ab, (s - 1 / s) / (q - 1 / q))
    (ab,) = products_ab(2, 1j, cmath.sqrt(s))
    assert close(ab, (1j / (2 * s)) * (1 - s * s))
    assert close(products_ab(2, 2, SQRT2)[0], 1)
    with pytest.raises(QSquaredOneError):
        products_ab(3, 1, 1)


def test_gauge_examples():
    assert apply_gauge((1,), GaugeChoice()) == ((1,), (1,))
    assert apply_gauge((4,), GaugeChoice(GaugeMode.BALANCED)) == ((2,), (2,))
    assert apply_gauge((6,), GaugeChoice.explicit([3], [2])) == ((3,), (2,))
    assert apply_gauge((6,), GaugeChoice.explicit([3]))[1] == (2,)
    with pytest.raises(GaugeInconsistentError):
        apply_gauge((6,), GaugeChoice.explicit([3], [3]))
    with pytest.raises(GaugeInconsistentError):
        apply_gauge((6, 1), GaugeChoice.explicit([3]))


def test_rep_validates_products():
    rep = HighestWeightRep.build(2, 2, SQRT2, 3)
    with pytest.raises(GaugeInconsistentError):
        HighestWeightRep(2, rep.q, rep.sigma, rep.g, (1,), (5,), rep.branch)


# matrices -----------------------------------------------------------------------

def test_rep_matrices_shapes():
    rep = HighestWeightRep.build(2, 2, SQRT2, 3, GaugeChoice.explicit([2.0]))
    mats = rep_matrices(rep)
    assert mats.xplus.entries == {(1, 2): 2.0}
    assert mats.xminus.entries == {(2, 1): rep.b[0]}
    rep3 = HighestWeightRep.build(3, root_of_unity(1, 6), 1.3, 1, GaugeChoice.explicit([2, 5]))
    assert rep_matrices(rep3).xplus.entries == {(1, 2): 2, (2, 3): 5}


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("branch", list(Branch))
def test_defining_relations(m, branch):
    rng = np.random.default_rng(m)
    rep = random_rep(m, branch, rng, gauge=GaugeChoice(GaugeMode.BALANCED))
    report = check_commutation(rep)
    assert report.passed, report.details


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_nilpotency(m):
    rep = random_rep(m, Branch.ROOT_OF_UNITY, np.random.default_rng(0))
    mats = rep_matrices(rep)
    xp, xm = mats.xplus, mats.xminus
    pp, pm = xp, xm
    for _ in range(m - 1):
        pp, pm = pp @ xp, pm @ xm
    assert pp.entries == {} and pm.entries == {}


# coproduct and antipode ---------------------------------------------------------------

def raw_pair(m):
    q = root_of_unity(1, 2 * m)
    return (HighestWeightRep.from_raw(m, q, 0.3, 0.7, 1.2, 1.9),
            HighestWeightRep.from_raw(m, q, -0.2 + 0.1j, 0.4, 1.2, 1.9))


def test_coproduct_examples():
    r1, r2 = raw_pair(2)
    dj = coproduct_image(r1, r2, Gen.J)
    assert residual_norm(dj, SquareMatrix.identity(4, r1.lam + r2.lam)) == 0
    assert coproduct_image(r1, r2, Gen.H) == coproduct_image(r1, r2, Gen.H, opposite=True)
    dx = coproduct_image(r1, r2, Gen.XPLUS)
    offsets = {c - r for (r, c) in dx.entries}
    assert offsets == {1, 2} and all(c > r for (r, c) in dx.entries)


def test_coproduct_needs_shared_q():
    a = HighestWeightRep.build(2, 1j, 1.3)
    b = HighestWeightRep.build(2, 2, SQRT2)
    with pytest.raises(QMismatchError):
        coproduct_image(a, b, Gen.H)


def test_antipode_examples():
    rep, _ = raw_pair(3)
    mats = rep_matrices(rep)
    q = rep.q.value
    assert antipode_image(rep, Gen.J) == SquareMatrix.identity(3, -rep.lam)
    assert residual_norm(antipode_image(rep, Gen.XPLUS), mats.xplus * -q) == 0


@pytest.mark.parametrize("gen", [Gen.XPLUS, Gen.XMINUS])
def test_antipode_squared_is_q_h_conjugation(gen):
    rep, _ = raw_pair(3)
    q = rep.q.value
    x = rep_matrices(rep).xplus if gen is Gen.XPLUS else rep_matrices(rep).xminus
    s_once = antipode_image(rep, gen)
    # S is linear on the span of X, so S^2 scales by the same factor twice
    factor = s_once.entries[next(iter(s_once.entries))] / x.entries[next(iter(x.entries))]
    s_twice = x * factor * factor
    qh = SquareMatrix.diag([q ** (rep.mu + 3 - 2 * k + 1) for k in range(1, 4)])
    qh_inv = SquareMatrix.diag([q ** -(rep.mu + 3 - 2 * k + 1) for k in range(1, 4)])
    assert residual_norm(s_twice, qh @ x @ qh_inv) < 1e-14


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("branch", list(Branch))
def test_counit_and_antipode_axioms(m, branch):
    rng = np.random.default_rng(10 + m)
    r1 = random_rep(m, branch, rng)
    r2 = random_rep(m, branch, rng, q=r1.q)
    res = hopf_residuals(r1, r2)
    assert max(res.values()) <= 1e-10, res


def test_counit_recovers_generator():
    rep = random_rep(3, Branch.GENERIC, np.random.default_rng(1))
    res = hopf_residuals(rep)
    assert res["counit[X+](rep1)"] <= 1e-14
    assert res["antipode[X+](rep1)"] <= 1e-14
    assert res["coassociativity[J]"] == 0


# roots -------------------------------------------------------------------------------

def test_admissible_roots_examples():
    roots2 = admissible_roots(2)
    assert [q.value for q in roots2] == [1j, -1j]
    roots3 = admissible_roots(3)
    q = root_of_unity(1, 6).value
    assert any(close(r.value, q) for r in roots3)
    assert abs(1 + q ** 2 + q ** 4) < 1e-12
    assert all(abs(r.value ** 2 - 1) > 1e-6 for r in admissible_roots(4))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_admissible_roots_vanish_and_flag(m):
    for q in admissible_roots(m):
        assert abs(q_integer(m, q)) <= 1e-12
        order_q2 = q.order // math.gcd(q.order, 2)
        assert (q.warning is not None) == (order_q2 < m)


def test_non_primitive_root_rep_is_degenerate_but_valid():
    q = admissible_roots(4)[1]  # q = i, q^2 has order 2
    assert q.warning
    rep = HighestWeightRep.build(4, q, 1.3, 0.9)
    assert rep.branch is Branch.ROOT_OF_UNITY
    assert any(abs(p) < 1e-12 for p in products_ab(4, q, 1.3))


# raw parameters ------------------------------------------------------------------------

def test_from_raw_conversion():
    m, q, mu, lam, t, u = 3, root_of_unity(1, 6), 0.4, 0.5, 1.3, 4.0
    rep = HighestWeightRep.from_raw(m, q, mu, lam, t, u)
    lhs = (rep.s / q.value) ** (m - 1)
    rhs = cmath.exp(mu * cmath.log(q.value) - lam * math.log(t))
    assert close(lhs, rhs) and close(rep.gamma, 2.0)
    assert require_raw(rep).u == 4.0


def test_require_raw():
    with pytest.raises(MissingRawParametersError):
        require_raw(HighestWeightRep.build(2, 1j, 1.1))
