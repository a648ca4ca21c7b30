from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcorr import epr, ghz, infotheory
from entcorr.tables import ProbTable

SPINS_UP_TO_5 = range(1, 11)
DEG1 = np.deg2rad(np.arange(360.0))


def brute_entropy(probs) -> float:
    # plain-Python summation, independent of the library's vector kernels
    return -sum(p * math.log(p, 2) for p in probs if p > 0)


def test_shannon_examples():
    assert infotheory.shannon_entropy([0.5, 0.5]) == 1.0
    assert infotheory.shannon_entropy([1.0, 0.0]) == 0.0
    assert infotheory.shannon_entropy(np.full(8, 0.125)) == pytest.approx(3.0, abs=1e-15)


def test_shannon_accepts_probtable():
    pt = ProbTable.from_array(np.full((2, 2), 0.25))
    assert infotheory.shannon_entropy(pt) == pytest.approx(2.0)


@pytest.mark.parametrize("bad", [[0.5, 0.6], [0.2, 0.2], [1.2, -0.2]])
def test_shannon_rejects_bad_tables(bad):
    with pytest.raises(ValueError):
        infotheory.shannon_entropy(bad)


def test_shannon_tolerates_rounding():
    assert infotheory.shannon_entropy([0.5, 0.5 + 5e-10]) == pytest.approx(1.0, abs=1e-8)


def test_binary_entropy_examples():
    assert infotheory.binary_entropy(0.5) == 1.0
    assert infotheory.binary_entropy(0.0) == 0.0
    assert infotheory.binary_entropy(1.0) == 0.0


def test_binary_entropy_reference_point():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    q = mpmath.sin(mpmath.pi / 8) ** 2
    ref = float(-(q * mpmath.log(q, 2) + (1 - q) * mpmath.log(1 - q, 2)))
    got = infotheory.binary_entropy(math.sin(math.pi / 8) ** 2)
    assert got == pytest.approx(ref, abs=1e-14)
    # the quoted four-digit value 0.60095 is within 1e-4 of the exact 0.600876
    assert abs(got - 0.60095) < 1e-4


@pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
def test_binary_entropy_domain(bad):
    with pytest.raises(ValueError):
        infotheory.binary_entropy(bad)


def test_binary_entropy_vectorized():
    q = np.linspace(0, 1, 11)
    np.testing.assert_allclose(infotheory.binary_entropy(q), [brute_entropy([x, 1 - x]) for x in q], atol=1e-15)


def test_conditional_entropy_examples():
    indep = np.full((2, 2), 0.25)
    assert infotheory.conditional_entropy(indep, np.full((2, 2), 0.5)) == pytest.approx(1.0)
    corr = np.array([[0.5, 0.0], [0.0, 0.5]])
    assert infotheory.conditional_entropy(corr, np.eye(2)) == 0.0


def test_conditional_entropy_rejects_inconsistent_tables():
    with pytest.raises(ValueError):
        infotheory.conditional_entropy(np.full((2, 2), 0.25), np.eye(2))
    with pytest.raises(ValueError):
        infotheory.conditional_entropy(np.full((2, 2), 0.25), np.full((2, 3), 0.5))


def test_conditional_entropy_spin_half_is_binary_entropy():
    for alpha in DEG1[::5]:
        ent = infotheory.epr_entropies(1, alpha)
        assert ent.H_a_given_b == pytest.approx(infotheory.binary_entropy(math.sin(alpha / 2) ** 2), abs=1e-12)
    assert infotheory.epr_entropies(1, math.pi / 2).H_a_given_b == pytest.approx(1.0, abs=1e-12)


def test_epr_entropy_examples():
    assert infotheory.epr_entropies(1, 0.3).H_a == pytest.approx(1.0, abs=1e-12)
    ent = infotheory.epr_entropies(1, math.pi)
    assert ent.H_joint == pytest.approx(1.0, abs=1e-12)
    assert ent.H_a_given_b == pytest.approx(0.0, abs=1e-12)


def test_epr_marginal_entropy_decays():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 30
    p = mpmath.mpf(1) / 101
    ref = float(-(p * mpmath.log(p, 2) + (1 - p) * mpmath.log(1 - p, 2)))
    # s = 50 gives 0.0801, a little above the 0.08 sometimes quoted
    assert infotheory.epr_marginal_entropy(100) == pytest.approx(ref, abs=1e-14)
    assert ref == pytest.approx(0.08014, abs=1e-5)
    values = [infotheory.epr_marginal_entropy(n) for n in range(1, 400)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert infotheory.epr_marginal_entropy(10**6) < 1e-4


@pytest.mark.parametrize("twice_s", SPINS_UP_TO_5)
def test_epr_generic_route_matches_brute_force_and_closed_form(twice_s):
    for alpha in DEG1[::3]:
        joint = epr.epr_joint(twice_s, alpha).table
        ent = infotheory.epr_entropies(twice_s, alpha)
        assert ent.H_joint == pytest.approx(brute_entropy(joint.ravel()), abs=1e-12)
        assert ent.H_a == pytest.approx(brute_entropy(joint.sum(axis=1)), abs=1e-12)
        assert ent.H_a == pytest.approx(infotheory.epr_marginal_entropy(twice_s), abs=1e-12)
        assert ent.H_a_given_b == pytest.approx(infotheory.epr_conditional_entropy(twice_s, alpha), abs=1e-12)


@pytest.mark.parametrize("twice_s", SPINS_UP_TO_5)
def test_chain_rule_and_conditioning_on_degree_grid(twice_s):
    for alpha in DEG1:
        e = infotheory.epr_entropies(twice_s, alpha)
        assert e.H_joint == pytest.approx(e.H_a_given_b + e.H_b, abs=1e-12)
        assert e.H_joint == pytest.approx(e.H_b_given_a + e.H_a, abs=1e-12)
        assert e.H_a_given_b <= e.H_a + 1e-12
        assert e.H_a <= e.H_joint + 1e-12
        assert abs(e.H_a - e.H_b) <= e.H_joint + 1e-12
        assert e.H_joint <= e.H_a + e.H_b + 1e-12


def test_entropy_bits_range():
    for twice_s in SPINS_UP_TO_5:
        for alpha in DEG1[::10]:
            e = infotheory.epr_entropies(twice_s, alpha)
            assert 0 <= e.H_joint <= 2 + 1e-12
            assert 0 <= e.H_a_given_b <= 1 + 1e-12


def test_vectorized_closed_form_has_no_nan():
    for twice_s in (1, 2, 40):
        vals = infotheory.epr_conditional_entropy(twice_s, DEG1)
        assert np.isfinite(vals).all()


@settings(max_examples=100)
@given(st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 3))
def test_ghz_entropy_constants(phis):
    e = infotheory.ghz_entropies(phis)
    np.testing.assert_allclose(e.H_singles, 1.0, atol=1e-12)
    np.testing.assert_allclose(list(e.H_pairs.values()), 2.0, atol=1e-12)
    assert e.H_triple == pytest.approx(2.0 + e.H_1_given_23, abs=1e-12)
    assert e.H_triple <= 3.0 + 1e-12


def test_ghz_triple_entropy_on_degree_grid():
    for phi in DEG1:
        table = ghz.ghz_full_distribution((phi, 0.0, 0.0)).table
        closed = 2.0 + infotheory.binary_entropy((1 - math.cos(phi)) / 2)
        assert infotheory.shannon_entropy(table) == pytest.approx(closed, abs=1e-12)
        assert infotheory.ghz_triple_entropy(phi) == pytest.approx(closed, abs=1e-12)


def test_ghz_triple_entropy_saturates_at_right_angle():
    assert infotheory.ghz_entropies((math.pi / 2, 0, 0)).H_triple == pytest.approx(3.0, abs=1e-12)
    assert infotheory.ghz_entropies((math.pi, 0, 0)).H_triple == pytest.approx(2.0, abs=1e-12)


@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=12), st.randoms(use_true_random=False))
def test_relabel_invariance(weights, rnd):
    w = np.array(weights)
    if w.sum() == 0:
        w[0] = 1.0
    p = w / w.sum()
    perm = list(range(len(p)))
    rnd.shuffle(perm)
    assert infotheory.shannon_entropy(p[perm]) == pytest.approx(infotheory.shannon_entropy(p), abs=1e-12)


def test_entropy_set_serialization():
    d = infotheory.ghz_entropies((0.1, 0.2, 0.3)).as_dict()
    assert set(d["H_pairs"]) == {"01", "02", "12"}
    assert set(infotheory.epr_entropies(2, 1.0).as_dict()) == {"H_a", "H_b", "H_joint", "H_a_given_b", "H_b_given_a"}
