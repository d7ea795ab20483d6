import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renyixent import markov as mk
from renyixent.closed_form import SHANNON
from renyixent.errors import (BudgetExceeded, InitialNotPositive, InvalidParameters, NonUniqueStationary,
                              QNotPositive, ZeroMatrix)
from renyixent.verify import MARKOV_PAIRS, random_irreducible

FAIR = [[0.5, 0.5], [0.5, 0.5]]
REF_P = [[0.9, 0.1], [0.5, 0.5]]


def iid(p):
    p = np.asarray(p, dtype=float)
    return mk.MarkovSource(np.tile(p, (p.size, 1)), p)


def test_stationary_two_state():
    np.testing.assert_allclose(mk.stationary_distribution(REF_P), [5 / 6, 1 / 6], atol=1e-15)


def test_stationary_ignores_transient_states():
    P = [[0.5, 0.5, 0.0], [0.0, 0.2, 0.8], [0.0, 0.6, 0.4]]
    pi = mk.stationary_distribution(P)
    assert pi[0] == 0.0
    np.testing.assert_allclose(pi @ np.asarray(P), pi, atol=1e-15)


@pytest.mark.parametrize("P", [np.eye(2), [[0.3, 0.7, 0, 0], [0.6, 0.4, 0, 0], [0, 0, 0.1, 0.9], [0, 0, 1, 0]]])
def test_two_closed_classes(P):
    with pytest.raises(NonUniqueStationary):
        mk.stationary_distribution(P)


@pytest.mark.parametrize("R, expected, kind", [
    ([[2, 0], [0, 3]], 3.0, "reducible"),
    ([[1, 1], [1, 1]], 2.0, "irreducible"),
    ([[0, 1], [1, 0]], 1.0, "irreducible"),      # periodic
    ([[0, 4], [0, 1]], 1.0, "reducible"),        # singleton without a self-loop has root 0
    ([[1, 1, 0], [0, 2, 1], [0, 0, 0.5]], 2.0, "reducible"),
])
def test_lambda_examples(R, expected, kind):
    res = mk.lambda_measure(R)
    assert res.value == pytest.approx(expected, rel=1e-13)
    assert res.classification == kind


def test_lambda_zero_matrix():
    with pytest.raises(ZeroMatrix):
        mk.lambda_measure(np.zeros((3, 3)))
    with pytest.raises(InvalidParameters):
        mk.lambda_measure([[1, -1], [0, 1]])


def test_scc_covers_all_states():
    adj = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]], dtype=bool)
    comps = mk.strongly_connected_components(adj)
    assert sorted(sorted(c) for c in comps) == [[0, 1], [2, 3]]


@pytest.mark.parametrize("seed", range(5))
def test_perron_residual_and_homogeneity(seed):
    rng = np.random.default_rng(seed)
    R = random_irreducible(rng, 8)
    res = mk.lambda_measure(R)
    v = res.eigenvector
    assert np.all(v > 0)
    assert np.max(np.abs(R @ v - res.value * v)) <= 1e-10 * res.value
    assert res.value == pytest.approx(max(abs(np.linalg.eigvals(R))), rel=1e-11)
    for c in (0.5, 2.0, 10.0):
        assert mk.lambda_measure(c * R).value == pytest.approx(c * res.value, rel=1e-12)


def test_fair_coin_examples():
    s = mk.MarkovSource(FAIR)
    assert mk.shannon_rate(s, s).value == pytest.approx(math.log(2), abs=1e-15)
    assert mk.renyi_rate(s, s, 2.0).value == pytest.approx(math.log(2), abs=1e-13)
    assert mk.natural_renyi_rate(s, s, 2.0).value == pytest.approx(math.log(2), abs=1e-13)
    for n in (1, 3, 7):
        assert mk.brute_force_rate(s, s, 2.0, n) == pytest.approx(math.log(2), abs=1e-13)


def test_shannon_zero_entries_contribute_nothing():
    s1 = mk.MarkovSource([[1.0, 0.0], [0.3, 0.7]])
    s2 = mk.MarkovSource([[0.4, 0.6], [0.5, 0.5]])
    assert mk.shannon_rate(s1, s2).value == pytest.approx(-math.log(0.4), abs=1e-15)


prob = st.lists(st.floats(0.05, 1.0), min_size=2, max_size=4)


@settings(max_examples=60, deadline=None)
@given(prob, prob, st.sampled_from([0.3, 0.5, 0.9, 1.1, 2.0, 3.0]))
def test_iid_reduction(p, q, a):
    m = min(len(p), len(q))
    p = np.array(p[:m]) / sum(p[:m])
    q = np.array(q[:m]) / sum(q[:m])
    s1, s2 = iid(p), iid(q)
    renyi = math.log(np.sum(p * q ** (a - 1))) / (1 - a)
    natural = math.log(np.sum(p**a * q ** (1 - a)) / np.sum(p**a)) / (a - 1)
    assert mk.renyi_rate(s1, s2, a).value == pytest.approx(renyi, abs=1e-12)
    assert mk.natural_renyi_rate(s1, s2, a).value == pytest.approx(natural, abs=1e-12)
    assert mk.shannon_rate(s1, s2).value == pytest.approx(-np.sum(p * np.log(q)), abs=1e-12)


def test_brute_force_single_letter():
    p, q = np.array([0.2, 0.8]), np.array([0.6, 0.4])
    s1 = mk.MarkovSource(REF_P, p)
    s2 = mk.MarkovSource(FAIR, q)
    assert mk.brute_force_rate(s1, s2, 2.0, 1) == pytest.approx(-math.log(np.sum(p * q)), abs=1e-15)


def test_reference_pair_converges():
    s1, s2 = mk.MarkovSource(REF_P), mk.MarkovSource(FAIR)
    target = mk.renyi_rate(s1, s2, 2.0).value
    errs = [abs(mk.brute_force_rate(s1, s2, 2.0, n) - target) for n in (2, 4, 8, 12)]
    assert errs[-1] <= 1e-2


@pytest.mark.parametrize("name", sorted(MARKOV_PAIRS))
@pytest.mark.parametrize("measure, alpha", [("renyi", 0.5), ("renyi", 2.0), ("natural", 0.3),
                                            ("natural", 3.0), ("shannon", SHANNON)])
def test_brute_force_at_twelve(name, measure, alpha):
    P, Q = MARKOV_PAIRS[name]
    s1, s2 = mk.MarkovSource(P), mk.MarkovSource(Q)
    value = mk.rate(measure, s1, s2, alpha).value
    assert abs(mk.brute_force_rate(s1, s2, alpha, 12, measure=measure) - value) <= 1e-2


def test_natural_with_equal_chains_is_entropy_rate():
    s = mk.MarkovSource(REF_P)
    a = 2.0
    expected = -math.log(mk.lambda_measure(np.asarray(REF_P) ** a).value) / (a - 1)
    assert mk.natural_renyi_rate(s, s, a).value == pytest.approx(expected, abs=1e-13)
    # the block value carries a c/n bias with c near 0.8 here; extrapolate it away
    b8, b16 = (mk.brute_force_rate(s, s, a, n, measure="natural") for n in (8, 16))
    assert abs(2 * b16 - b8 - expected) <= 1e-3


@pytest.mark.parametrize("measure", ["renyi", "natural"])
def test_initial_vector_does_not_matter(measure):
    P, Q = MARKOV_PAIRS["three_state"]
    a = mk.rate(measure, mk.MarkovSource(P, [0.1, 0.2, 0.7]), mk.MarkovSource(Q), 2.0).value
    b = mk.rate(measure, mk.MarkovSource(P), mk.MarkovSource(Q, [0.5, 0.25, 0.25]), 2.0).value
    assert a == b


def test_reducible_p_is_flagged():
    s1 = mk.MarkovSource([[1.0, 0.0], [0.5, 0.5]])
    s2 = mk.MarkovSource(FAIR)
    res = mk.natural_renyi_rate(s1, s2, 2.0)
    assert res.diagnostics["p_classification"] == "reducible"
    assert math.isfinite(res.value)


def test_precondition_errors():
    good = mk.MarkovSource(REF_P)
    with pytest.raises(QNotPositive):
        mk.renyi_rate(good, mk.MarkovSource([[1.0, 0.0], [0.5, 0.5]]), 2.0)
    with pytest.raises(InitialNotPositive):
        mk.renyi_rate(mk.MarkovSource(REF_P, [1.0, 0.0]), mk.MarkovSource(FAIR), 2.0)
    with pytest.raises(InvalidParameters):
        mk.MarkovSource([[0.5, 0.6], [0.5, 0.5]])
    with pytest.raises(InvalidParameters):
        mk.renyi_rate(good, mk.MarkovSource(np.full((3, 3), 1 / 3)), 2.0)
    with pytest.raises(BudgetExceeded):
        mk.brute_force_rate(good, good, 2.0, 30)
