import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shorbench.config import Caps, ResourceCapError
from shorbench.period_prob import (
    PeriodSpec,
    RegisterSpec,
    RegisterTooSmallError,
    delta_set,
    epsilon_k,
    k_weights,
    m_k,
    mu,
    p_tot_averaged,
    p_tot_exact,
    p_tot_oracle,
    probability_report,
    q_min,
    register_for,
    structure_factor,
    structure_factor_direct,
    useful_windows,
    useful_x_set,
    x_j,
)

# p_tot_oracle(0, r=21, q=0), frozen after a 50-digit mpmath cross-check
P21_K0_Q0 = 0.7354952947473656


def reg(r, q=0):
    return register_for(PeriodSpec.of(r), q)


@pytest.mark.parametrize("r,r_o,n_r", [(6, 3, 1), (4, 1, 2), (21, 21, 0), (96, 3, 5)])
def test_period_spec(r, r_o, n_r):
    s = PeriodSpec.of(r)
    assert (s.r_o, s.n_r) == (r_o, n_r)


@pytest.mark.parametrize("r", [0, 1, -4])
def test_period_spec_rejects(r):
    with pytest.raises(ValueError):
        PeriodSpec.of(r)


@pytest.mark.parametrize("r,want", [(6, -2), (2, -1), (4, -2)])
def test_q_min(r, want):
    assert q_min(PeriodSpec.of(r)) == want


@pytest.mark.parametrize("r,q,m", [(6, 0, 6), (4, 0, 5), (21, 2, 11)])
def test_register_size(r, q, m):
    assert reg(r, q).m == m


def test_register_below_q_min():
    with pytest.raises(RegisterTooSmallError, match=r"2\^m >= 2r"):
        reg(6, -3)


@given(st.integers(2, 5000), st.integers(0, 6))
def test_register_is_smallest(r, extra):
    s = PeriodSpec.of(r)
    q = q_min(s) + extra
    m = register_for(s, q).m
    assert Fraction(2) ** m > Fraction(2) ** q * r * r >= Fraction(2) ** (m - 1)
    assert 2**m >= 2 * r


def test_q_min_is_tight():
    for r in range(2, 300):
        s = PeriodSpec.of(r)
        m = register_for(s, q_min(s)).m
        assert 2**m >= 2 * r and 2 ** (m - 1) < 2 * r


@pytest.mark.parametrize("k,want", [(0, 11), (5, 10), (3, 11)])
def test_m_k_r6(k, want):
    assert m_k(k, reg(6)) == want


def test_m_k_exact_division():
    assert {m_k(k, reg(4)) for k in range(4)} == {8}


def test_k_weights():
    assert [w * 64 for w in k_weights(reg(6))] == [11, 11, 11, 11, 10, 10]


@pytest.mark.parametrize("j,want", [(1, 11), (3, 32), (5, 53)])
def test_x_j(j, want):
    assert x_j(j, reg(6)) == want


def test_x_j_out_of_range():
    with pytest.raises(ValueError):
        x_j(6, reg(6))


def test_x_j_unique_minimizer():
    for r in range(2, 101):
        g = reg(r)
        M = g.size
        for j in range(1, r):
            x = x_j(j, g)
            d = abs(Fraction(x) - Fraction(M * j, r))
            assert d < Fraction(1, 2)
            assert abs(Fraction(x + 1) - Fraction(M * j, r)) > d
            assert abs(Fraction(x - 1) - Fraction(M * j, r)) > d
            assert 2 * (M * j % r) != r


@pytest.mark.parametrize("r_o,want", [
    (3, {0, Fraction(1, 3), Fraction(-1, 3)}),
    (1, {0}),
    (5, {0, Fraction(1, 5), Fraction(-1, 5), Fraction(2, 5), Fraction(-2, 5)}),
])
def test_delta_set_examples(r_o, want):
    assert set(delta_set(PeriodSpec.of(2 * r_o))) == want


def test_delta_set_identity_sweep():
    # delta_set asserts equality with the harmonic construction internally;
    # r = 2 r_o so that m - n_r = mm
    for r_o in range(1, 202, 2):
        lo = (r_o - 1).bit_length() + 1
        for mm in range(lo, 25):
            assert len(delta_set(PeriodSpec.of(2 * r_o), mm + 1)) == r_o


def test_useful_x_examples():
    assert useful_x_set(reg(6, 0)) == [11, 21, 32, 43, 53]
    assert useful_x_set(RegisterSpec(0, 5, PeriodSpec.of(4))) == [8, 16, 24]


def test_useful_x_r6_q2_by_scan():
    g = reg(6, 2)
    assert g.m == 8
    scan = [x for x in range(g.size)
            if any(abs(Fraction(x) - Fraction(g.size * j, 6)) < 2 for j in range(1, 6))]
    got = useful_x_set(g)
    assert got == scan
    # 3 for the exact harmonic j=3, 4 for the others: 3 + 4*4
    assert len(got) == 19
    assert [len(w) for w in useful_windows(g).values()] == [4, 4, 3, 4, 4]


@pytest.mark.parametrize("r", [5, 6, 12, 21, 40])
@pytest.mark.parametrize("q", [-1, 0, 1, 2])
def test_useful_windows_disjoint(r, q):
    s = PeriodSpec.of(r)
    if q < q_min(s):
        return
    xs = useful_x_set(register_for(s, q))
    assert len(xs) == len(set(xs)) and xs == sorted(xs)


def test_epsilon_zero_for_nonpositive_q():
    assert epsilon_k(0, reg(6, 0)) == 0.0
    assert epsilon_k(0, reg(60, -3)) == 0.0


def test_epsilon_q1_value():
    g = reg(6, 1)
    assert epsilon_k(0, g) == structure_factor(1, 0, g) + structure_factor(-1, 0, g)


def test_epsilon_contribution_is_cubically_small():
    worst = 0.0
    for r in range(2, 65):
        s = PeriodSpec.of(r)
        for q in (1, 2, 3):
            g = register_for(s, q)
            for k in {0, r // 2, r - 1}:
                contrib = ((1 << s.n_r) - 1) * epsilon_k(k, g) / g.size
                worst = max(worst, contrib * r**3)
    assert worst < 2.0


@pytest.mark.parametrize("r,q", [(6, 0), (12, 1), (21, -1), (7, 2)])
def test_structure_factor_matches_direct_sum(r, q):
    g = reg(r, q)
    for k in {0, r // 2, r - 1}:
        for x in range(0, g.size, max(1, g.size // 97)):
            assert structure_factor(x, k, g) == pytest.approx(structure_factor_direct(x, k, g), abs=1e-9)


def test_structure_factor_periodicity():
    for r in (3, 6, 10, 21):
        g = reg(r, 1)
        shift = Fraction(g.size, r)
        for x in np.linspace(0.3, g.size - 1, 41):
            x = Fraction(float(x))
            assert abs(structure_factor(x, 0, g) - structure_factor(x + shift, 0, g)) < 1e-10


@given(st.integers(2, 64), st.data())
def test_structure_factor_sums_to_one(r, data):
    s = PeriodSpec.of(r)
    g = register_for(s, data.draw(st.integers(q_min(s), 1)))
    k = data.draw(st.integers(0, r - 1))
    total = math.fsum(structure_factor(x, k, g) for x in range(g.size))
    assert total / g.size == pytest.approx(1.0, abs=1e-12)


def test_mu_bound():
    for r in range(2, 65):
        s = PeriodSpec.of(r)
        for q in range(q_min(s), 4):
            g = register_for(s, q)
            bound = Fraction(r, g.size)
            assert bound < Fraction(1, r) / Fraction(2) ** q
            for k in {0, r // 2, r - 1}:
                assert abs(mu(k, g)) < bound


@pytest.mark.parametrize("r,m,k,q,want", [(4, 5, 3, 0, 0.75), (2, 3, 0, 1, 0.5)])
def test_oracle_power_of_two(r, m, k, q, want):
    g = RegisterSpec(q, m, PeriodSpec.of(r))
    assert p_tot_oracle(k, g) == pytest.approx(want, abs=1e-12)
    assert p_tot_exact(k, g) == pytest.approx(want, abs=1e-12)


def test_r8_q1():
    g = reg(8, 1)
    for k in range(8):
        assert p_tot_exact(k, g) == pytest.approx(0.875, abs=1e-12)


def test_oracle_r21_pinned():
    g = reg(21, 0)
    assert p_tot_oracle(0, g) == pytest.approx(P21_K0_Q0, abs=1e-12)
    assert p_tot_exact(0, g) == pytest.approx(P21_K0_Q0, abs=1e-10)


@pytest.mark.parametrize("r", [6, 10, 15, 24, 37])
def test_exact_matches_oracle_sample(r):
    s = PeriodSpec.of(r)
    for q in range(q_min(s), 4):
        g = register_for(s, q)
        for k in {0, r // 2, r - 1}:
            assert abs(p_tot_exact(k, g) - p_tot_oracle(k, g)) <= 1e-10


def test_oracle_cap():
    g = reg(5000, 2)
    assert g.m > 26
    with pytest.raises(ResourceCapError):
        p_tot_oracle(0, g)
    with pytest.raises(ResourceCapError):
        p_tot_oracle(0, reg(6, 0), Caps(oracle_max_m=4))


def test_averaged_is_convex_combination():
    g = reg(6, 0)
    vals = [p_tot_exact(k, g) for k in range(6)]
    assert min(vals) <= p_tot_averaged(g) <= max(vals)
    assert p_tot_averaged(RegisterSpec(0, 5, PeriodSpec.of(4))) == pytest.approx(0.75, abs=1e-15)


def test_probability_report():
    rep = probability_report(6, 0, k=0, oracle=True)
    assert abs(rep.exact - rep.oracle) <= 1e-10
    d = rep.to_dict()
    assert d["m"] == 6 and d["k"] == 0 and d["limit"] == pytest.approx(0.7737, abs=5e-5)
    avg = probability_report(4, 0)
    assert avg.k == "averaged" and avg.exact == pytest.approx(0.75)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        p_tot_exact(6, reg(6))
