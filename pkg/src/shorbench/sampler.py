"""Monte-Carlo simulation of the period-finding measurement.

Each trial measures the oracle register (fixing k), then the input register
after the Fourier transform (x drawn from S_k(x)/2^m), and counts a success
when x falls in a useful window. Continued-fraction recovery of the period
is tracked as a diagnostic only.
"""

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CAPS, ResourceCapError
from .period_prob import PeriodSpec, RegisterSpec, m_k, p_tot_averaged, register_for

RNG_ID = "numpy-philox4x64-10/block-counter"
BLOCK = 4096


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by `seed`; `stream` occupies the top counter word."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, stream]))


@dataclass(frozen=True)
class TrialRecord:
    k: int
    x: int
    in_window: bool
    cf_denominator: int | None
    recovered_divisor: bool


@dataclass(frozen=True)
class TrialSummary:
    trials: int
    successes: int
    empirical_rate: float
    predicted: float
    z_score: float
    seed: int
    rng_id: str
    cf_recovered: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def sample_k(reg: RegisterSpec, rng: np.random.Generator) -> int:
    # k is the residue mod r of a uniformly random basis state, so P(k) = m_k / 2^m
    return int(rng.integers(0, reg.size)) % reg.r


def _sin_pi_ratio_vec(n: np.ndarray, d: int) -> np.ndarray:
    t = n % (2 * d)
    t = np.where(t > d, t - 2 * d, t)
    t = np.where(2 * t > d, d - t, t)
    t = np.where(2 * t < -d, -d - t, t)
    return np.sin(np.pi * t / d)


def _x_cdf(k: int, reg: RegisterSpec, max_m: int) -> np.ndarray:
    # P(x|k) depends on k only through m_k, which takes at most two values
    return _x_cdf_by_count(m_k(k, reg), reg, max_m)


@lru_cache(maxsize=16)
def _x_cdf_by_count(n: int, reg: RegisterSpec, max_m: int) -> np.ndarray:
    if reg.m > max_m:
        raise ResourceCapError(f"sampling table for m={reg.m} exceeds cap {max_m}")
    M = reg.size
    step = (np.arange(M, dtype=np.int64) * reg.r) % M
    num = _sin_pi_ratio_vec(step * n, M)
    den = _sin_pi_ratio_vec(step, M)
    zero = step == 0
    S = np.where(zero, float(n), num * num / (n * np.where(zero, 1.0, den * den)))
    total = math.fsum(S) / M
    if abs(total - 1.0) > 1e-9:
        raise ArithmeticError(f"P(x|k) sums to {total}, not 1")
    cdf = np.cumsum(S / M)
    cdf /= cdf[-1]
    cdf.flags.writeable = False
    return cdf


def x_distribution(k: int, reg: RegisterSpec) -> np.ndarray:
    """P(x|k) for all x in [0, 2^m)."""
    cdf = _x_cdf(k, reg, DEFAULT_CAPS.sampler_max_m)
    return np.diff(cdf, prepend=0.0)


def sample_x(k: int, reg: RegisterSpec, rng: np.random.Generator) -> int:
    cdf = _x_cdf(k, reg, DEFAULT_CAPS.sampler_max_m)
    return int(np.searchsorted(cdf, rng.random(), side="right"))


def classify(x, reg: RegisterSpec):
    """True when |x - j 2^m / r| < 2^(q-1) for some j in 1..r-1.

    Works on a single int or an integer numpy array. Only the nearest
    harmonic can qualify because the windows are narrower than their spacing.
    """
    M, r, q = reg.size, reg.r, reg.q
    xa = np.asarray(x, dtype=np.int64)
    j = (2 * xa * r + M) // (2 * M)
    dev2 = 2 * np.abs(xa * r - j * M)
    inside = dev2 < (r << q) if q >= 0 else (dev2 << -q) < r
    ok = inside & (j >= 1) & (j <= r - 1)
    return bool(ok) if np.ndim(ok) == 0 else ok


def convergents(num: int, den: int):
    """Continued-fraction convergents (h, k) of num/den."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    while den:
        a, rem = divmod(num, den)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield h1, k1
        num, den = den, rem


def cf_recover(x: int, reg: RegisterSpec, r_max_hint: int | None = None) -> int | None:
    """Largest convergent denominator of x/2^m not exceeding the bound.

    The bound defaults to 2^floor(m/2). Returns None for x = 0, where the
    measurement carries no information.
    """
    if not 0 <= x < reg.size:
        raise ValueError(f"x={x} outside [0, 2^{reg.m})")
    if x == 0:
        return None
    bound = r_max_hint if r_max_hint is not None else 1 << (reg.m // 2)
    best = None
    for _, den in convergents(x, reg.size):
        if den > bound:
            break
        best = den
    return best


def _simulate(reg: RegisterSpec, trials: int, seed: int):
    ks = np.empty(trials, dtype=np.int64)
    xs = np.empty(trials, dtype=np.int64)
    for b, start in enumerate(range(0, trials, BLOCK)):
        nb = min(BLOCK, trials - start)
        rng = make_rng(seed, b)
        k = rng.integers(0, reg.size, size=nb) % reg.r
        u = rng.random(nb)
        x = np.empty(nb, dtype=np.int64)
        for kv in np.unique(k):
            sel = k == kv
            x[sel] = np.searchsorted(_x_cdf(int(kv), reg, DEFAULT_CAPS.sampler_max_m), u[sel], side="right")
        ks[start:start + nb] = k
        xs[start:start + nb] = x
    return ks, xs


def _check_run(spec: PeriodSpec, q: int, trials: int) -> RegisterSpec:
    if trials < 1:
        raise ValueError("trials must be positive")
    reg = register_for(spec, q)
    if reg.m > DEFAULT_CAPS.sampler_max_m:
        raise ResourceCapError(f"register m={reg.m} exceeds sampler cap {DEFAULT_CAPS.sampler_max_m}")
    return reg


def trial_records(spec: PeriodSpec, q: int, trials: int, seed: int) -> list[TrialRecord]:
    """Per-trial detail for the same draws run_trials would aggregate.

    Continued fractions are bounded by r itself here.
    """
    reg = _check_run(spec, q, trials)
    ks, xs = _simulate(reg, trials, seed)
    hits = classify(xs, reg)
    out = []
    for k, x, hit in zip(ks.tolist(), xs.tolist(), hits.tolist()):
        d = cf_recover(x, reg, spec.r)
        out.append(TrialRecord(k, x, hit, d, d is not None and spec.r % d == 0))
    return out


def run_trials(spec: PeriodSpec, q: int, trials: int, seed: int) -> TrialSummary:
    reg = _check_run(spec, q, trials)
    ks, xs = _simulate(reg, trials, seed)
    hits = classify(xs, reg)
    successes = int(hits.sum())
    p = p_tot_averaged(reg)
    var = trials * p * (1 - p)
    z = (successes - trials * p) / math.sqrt(var) if var > 0 else 0.0
    cf_ok = 0
    for x, c in zip(*np.unique(xs[hits], return_counts=True)):
        d = cf_recover(int(x), reg, spec.r)
        if d is not None and spec.r % d == 0:
            cf_ok += int(c)
    return TrialSummary(trials, successes, successes / trials, p, z, seed, RNG_ID, cf_ok)
