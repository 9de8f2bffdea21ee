import math

import numpy as np
import pytest
from scipy.stats import chisquare

from shorbench.config import ResourceCapError
from shorbench.period_prob import PeriodSpec, RegisterSpec, m_k, p_tot_averaged, register_for, structure_factor
from shorbench.sampler import (
    RNG_ID,
    cf_recover,
    classify,
    convergents,
    make_rng,
    run_trials,
    sample_k,
    sample_x,
    trial_records,
    x_distribution,
)

R6 = register_for(PeriodSpec.of(6), 0)


@pytest.mark.parametrize("x,want", [(11, True), (0, False), (12, False), (32, True), (53, True), (63, False)])
def test_classify_examples(x, want):
    assert classify(x, R6) is want


def test_classify_vectorized_matches_scalar():
    g = register_for(PeriodSpec.of(12), -1)
    xs = np.arange(g.size)
    vec = classify(xs, g)
    assert vec.tolist() == [classify(int(x), g) for x in xs]
    g2 = register_for(PeriodSpec.of(6), 2)
    assert int(classify(np.arange(g2.size), g2).sum()) == 19


@pytest.mark.parametrize("x,want", [(53, 6), (32, 2), (0, None), (11, 6)])
def test_cf_recover_examples(x, want):
    assert cf_recover(x, R6) == want


def test_convergents_of_53_64():
    assert list(convergents(53, 64))[-1] == (53, 64)
    assert (5, 6) in list(convergents(53, 64))


def test_cf_recover_range():
    with pytest.raises(ValueError):
        cf_recover(64, R6)


def test_x_distribution_matches_structure_factor():
    g = register_for(PeriodSpec.of(10), 1)
    for k in (0, 9):
        d = x_distribution(k, g)
        assert d.sum() == pytest.approx(1.0, abs=1e-12)
        want = np.array([structure_factor(x, k, g) / g.size for x in range(g.size)])
        assert np.allclose(d, want, atol=1e-14)


def test_sample_k_law():
    # P(k) = m_k / 2^m
    g = register_for(PeriodSpec.of(6), -2)
    rng = make_rng(11)
    n = 60_000
    counts = np.bincount([sample_k(g, rng) for _ in range(n)], minlength=6)
    expected = np.array([m_k(k, g) for k in range(6)]) * n / g.size
    assert chisquare(counts, expected).pvalue > 1e-4


def test_sample_x_law():
    g = register_for(PeriodSpec.of(5), -1)
    rng = make_rng(5)
    n = 40_000
    counts = np.bincount([sample_x(2, g, rng) for _ in range(n)], minlength=g.size)
    p = x_distribution(2, g)
    keep = p * n >= 5
    exp = p[keep] * n
    obs = counts[keep]
    assert counts[~keep].sum() <= 5 * (~keep).sum() + 20
    assert chisquare(obs, exp * obs.sum() / exp.sum()).pvalue > 1e-4


def test_power_of_two_rate():
    s = run_trials(PeriodSpec.of(4), 0, 100_000, seed=1)
    assert s.predicted == pytest.approx(0.75)
    assert abs(s.z_score) <= 4


def test_determinism():
    a = run_trials(PeriodSpec.of(21), 0, 20_000, seed=42)
    b = run_trials(PeriodSpec.of(21), 0, 20_000, seed=42)
    assert a == b and a.rng_id == RNG_ID
    xa = [t.x for t in trial_records(PeriodSpec.of(21), 0, 500, seed=42)]
    xb = [t.x for t in trial_records(PeriodSpec.of(21), 0, 500, seed=43)]
    assert xa == [t.x for t in trial_records(PeriodSpec.of(21), 0, 500, seed=42)]
    assert xa != xb


def test_streams_are_distinct():
    a = make_rng(7, 0).random(4)
    b = make_rng(7, 1).random(4)
    assert not np.array_equal(a, b)
    with pytest.raises(ValueError):
        make_rng(-1)


@pytest.mark.parametrize("r", [6, 12, 15, 21])
@pytest.mark.parametrize("q", [-1, 0, 1])
def test_rate_within_four_sigma(r, q):
    s = run_trials(PeriodSpec.of(r), q, 100_000, seed=2024 + r + 10 * q)
    assert s.predicted == pytest.approx(p_tot_averaged(register_for(PeriodSpec.of(r), q)))
    assert abs(s.successes - s.trials * s.predicted) <= 4 * math.sqrt(s.trials * s.predicted * (1 - s.predicted))


@pytest.mark.parametrize("r,q", [(6, 0), (21, 0), (12, -1), (15, -1), (40, 0)])
def test_useful_x_recovers_divisor(r, q):
    for rec in trial_records(PeriodSpec.of(r), q, 3000, seed=9):
        if rec.in_window:
            assert rec.cf_denominator is not None and r % rec.cf_denominator == 0


def test_records_agree_with_summary():
    spec = PeriodSpec.of(15)
    recs = trial_records(spec, 1, 5000, seed=3)
    s = run_trials(spec, 1, 5000, seed=3)
    assert sum(r.in_window for r in recs) == s.successes
    assert sum(r.in_window and r.recovered_divisor for r in recs) == s.cf_recovered


def test_sampler_cap():
    with pytest.raises(ResourceCapError):
        run_trials(PeriodSpec.of(5000), 2, 10, seed=0)
    with pytest.raises(ValueError):
        run_trials(PeriodSpec.of(6), 0, 0, seed=0)


def test_summary_dict():
    d = run_trials(PeriodSpec.of(6), 0, 100, seed=0).to_dict()
    assert set(d) >= {"trials", "successes", "empirical_rate", "predicted", "z_score", "seed", "rng_id"}


def test_register_spec_is_hashable_cache_key():
    g1 = RegisterSpec(0, 6, PeriodSpec.of(6))
    assert hash(g1) == hash(R6) and g1 == R6
