"""Exact success probability of period finding.

Register sizing, the structure factor of the arithmetic-progression state,
the windows of useful measurement outcomes, the closed-form total
probability and an independent brute-force oracle for it.

Window membership and register sizing are decided in exact integer or
rational arithmetic; floating point only appears in sines.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .asymptotics import _sin_pi_ratio, p_asym, p_inf, residue_half_width
from .config import DEFAULT_CAPS, ResourceCapError
from .numthy import pow2_decompose

ORACLE_TOLERANCE = 1e-10


class RegisterTooSmallError(ValueError):
    """q < q_min: the register cannot hold 2r basis states."""


@dataclass(frozen=True)
class PeriodSpec:
    r: int
    r_o: int
    n_r: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"period must be >= 2, got {self.r}")
        if self.r_o % 2 == 0 or self.r_o << self.n_r != self.r:
            raise ValueError("inconsistent odd-part decomposition")

    @classmethod
    def of(cls, r: int) -> "PeriodSpec":
        if r < 2:
            raise ValueError(f"period must be >= 2, got {r}")
        odd, v = pow2_decompose(r)
        return cls(r, odd, v)


@dataclass(frozen=True)
class RegisterSpec:
    q: int
    m: int
    period: PeriodSpec

    @property
    def r(self) -> int:
        return self.period.r

    @property
    def size(self) -> int:
        return 1 << self.m


def q_min(spec: PeriodSpec) -> int:
    """ceil(log2 r) - floor(2 log2 r), by bit lengths."""
    r = spec.r
    return (r - 1).bit_length() - ((r * r).bit_length() - 1)


def register_for(spec: PeriodSpec, q: int) -> RegisterSpec:
    """Smallest m with 2^m > 2^q r^2."""
    if q < q_min(spec):
        raise RegisterTooSmallError(
            f"q={q} is below q_min={q_min(spec)} for r={spec.r}: register would violate 2^m >= 2r"
        )
    m = (spec.r * spec.r).bit_length() + q
    assert (1 << m) >= 2 * spec.r and m > spec.n_r
    if q >= 0:
        assert (1 << m) > (spec.r * spec.r) << q >= (1 << (m - 1))
    else:
        assert (1 << (m - q)) > spec.r * spec.r >= (1 << (m - q - 1))
    return RegisterSpec(q, m, spec)


def _check_k(k: int, reg: RegisterSpec):
    if not 0 <= k < reg.r:
        raise ValueError(f"k={k} outside [0, {reg.r})")


def m_k(k: int, reg: RegisterSpec) -> int:
    """Number of terms k, k+r, k+2r, ... below 2^m."""
    _check_k(k, reg)
    n = 1 + (reg.size - 1 - k) // reg.r
    assert n >= 2
    return n


def structure_factor(x, k: int, reg: RegisterSpec) -> float:
    """S_k(x) = m_k [sinc(m_k r x / 2^m) / sinc(r x / 2^m)]^2.

    x may be an int, Fraction or float (floats are taken at their exact
    binary value). S_k is m_k wherever r x / 2^m is an integer.
    """
    n = m_k(k, reg)
    theta = Fraction(x) * reg.r / reg.size
    a, b = theta.numerator, theta.denominator
    if b == 1:
        return float(n)
    num = _sin_pi_ratio(n * a, b)
    den = _sin_pi_ratio(a, b)
    return num * num / (n * den * den)


def structure_factor_direct(x, k: int, reg: RegisterSpec) -> float:
    """|sum_l exp(2 pi i l r x / 2^m)|^2 / m_k, summed term by term.

    Phases are reduced modulo one in integers before any rounding.
    """
    n = m_k(k, reg)
    theta = Fraction(x) * reg.r / reg.size
    a, b = theta.numerator % theta.denominator, theta.denominator
    if n * b < 2**62:
        idx = (np.arange(n, dtype=np.int64) * a) % b
    else:
        idx = np.array([(l * a) % b for l in range(n)], dtype=np.float64)
    ang = (2 * np.pi / b) * idx
    re, im = np.cos(ang).sum(), np.sin(ang).sum()
    return float((re * re + im * im) / n)


def x_j(j: int, reg: RegisterSpec) -> int:
    """Nearest integer to j 2^m / r, as floor((2^(m+1) j + r) / (2 r))."""
    if not 1 <= j < reg.r:
        raise ValueError(f"j={j} outside [1, {reg.r})")
    return ((reg.size << 1) * j + reg.r) // (2 * reg.r)


def absolute_least_residues(bound) -> list[int]:
    """B[bound] = {0, +-1, ..., +-floor(bound/2)} in increasing order."""
    h = math.floor(Fraction(bound) / 2)
    return list(range(-h, h + 1))


def delta_set(spec: PeriodSpec, m: int | None = None) -> list[Fraction]:
    """The r_o distinct offsets x_j - j 2^m / r, i.e. {j/r_o : j in B[r_o]}.

    Cross-checked against the offsets computed directly from the harmonics
    for register size m (default: the q = 0 register).
    """
    if m is None:
        m = register_for(spec, 0).m
    if m <= spec.n_r:
        raise ValueError("register too small for this period")
    out = [Fraction(j, spec.r_o) for j in absolute_least_residues(spec.r_o)]
    scale = 1 << (m - spec.n_r)
    direct = set()
    for j in range(spec.r_o):
        v = Fraction(scale * j, spec.r_o)
        direct.add(math.floor(v + Fraction(1, 2)) - v)
    assert direct == set(out), "offset set disagrees with the harmonic construction"
    return out


def useful_windows(reg: RegisterSpec) -> dict[int, range]:
    """For each j in 1..r-1, the integers x with |x - j 2^m / r| < 2^(q-1)."""
    half = Fraction(2) ** (reg.q - 1)
    out = {}
    prev_hi = -1
    for j in range(1, reg.r):
        c = Fraction(reg.size * j, reg.r)
        lo = math.floor(c - half) + 1
        hi = math.ceil(c + half) - 1
        assert lo > prev_hi and lo >= 0 and hi < reg.size
        out[j] = range(lo, hi + 1)
        if hi >= lo:
            prev_hi = hi
        if reg.q >= 1:
            exact = j % reg.period.r_o == 0
            assert len(out[j]) == (1 << reg.q) - (1 if exact else 0)
    return out


def useful_x_set(reg: RegisterSpec) -> list[int]:
    """Sorted list of all useful outcomes x in [0, 2^m)."""
    return [x for w in useful_windows(reg).values() for x in w]


def epsilon_k(k: int, reg: RegisterSpec) -> float:
    """Endpoint correction S_k(2^(q-1)) + S_k(-2^(q-1)); zero for q <= 0."""
    if reg.q <= 0:
        _check_k(k, reg)
        return 0.0
    e = 1 << (reg.q - 1)
    return structure_factor(e, k, reg) + structure_factor(-e, k, reg)


def p_tot_exact(k: int, reg: RegisterSpec) -> float:
    """Closed-form success probability for hidden offset k.

    (r/2^m) [ (1/r_o) sum_{B[2^q r_o]} S_k(j/r_o) - (1/r) sum_{B[2^q]} S_k(j)
              - (1/r_o - 1/r) eps_k ]
    """
    r_o, n_r = reg.period.r_o, reg.period.n_r
    h = residue_half_width(r_o, reg.q)
    main = math.fsum(structure_factor(Fraction(j, r_o), k, reg) for j in range(-h, h + 1))
    h2 = 1 << (reg.q - 1) if reg.q >= 1 else 0
    second = math.fsum(structure_factor(j, k, reg) for j in range(-h2, h2 + 1))
    eps = epsilon_k(k, reg)
    # multiply through by r: the bracket becomes 2^n_r main - second - (2^n_r - 1) eps
    scaled = math.fsum([(1 << n_r) * main, -second, -((1 << n_r) - 1) * eps])
    return scaled / reg.size


def p_tot_oracle(k: int, reg: RegisterSpec, caps=DEFAULT_CAPS) -> float:
    """Brute force: sum of S_k(x)/2^m over every useful x, with S_k summed term by term."""
    if reg.m > caps.oracle_max_m:
        raise ResourceCapError(f"oracle register m={reg.m} exceeds cap {caps.oracle_max_m}")
    n = m_k(k, reg)
    M = reg.size
    ls = np.arange(n, dtype=np.int64)
    vals = []
    for x in useful_x_set(reg):
        step = (reg.r * x) % M
        ang = (2 * np.pi / M) * ((ls * step) % M)
        re, im = np.cos(ang).sum(), np.sin(ang).sum()
        vals.append((re * re + im * im) / n)
    return math.fsum(vals) / M


def k_weights(reg: RegisterSpec) -> list[Fraction]:
    """Probability m_k / 2^m of each hidden offset k."""
    w = [Fraction(m_k(k, reg), reg.size) for k in range(reg.r)]
    assert sum(w) == 1
    return w


def p_tot_averaged(reg: RegisterSpec) -> float:
    return math.fsum(m_k(k, reg) * p_tot_exact(k, reg) for k in range(reg.r)) / reg.size


def mu(k: int, reg: RegisterSpec) -> Fraction:
    """Relative deviation of m_k from 2^m / r."""
    return Fraction(m_k(k, reg) * reg.r, reg.size) - 1


@dataclass
class ProbabilityReport:
    exact: float
    spec: PeriodSpec
    reg: RegisterSpec
    k: int | str = "averaged"
    oracle: float | None = None
    asymptotic: float | None = None
    limit: float | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        for name in ("exact", "oracle", "asymptotic"):
            v = getattr(self, name)
            if v is not None and not -1e-12 <= v <= 1 + 1e-12:
                raise ValueError(f"{name}={v} is not a probability")
        if self.oracle is not None and abs(self.exact - self.oracle) > ORACLE_TOLERANCE:
            raise AssertionError(f"exact {self.exact} and oracle {self.oracle} disagree")

    def to_dict(self) -> dict:
        return {
            "r": self.spec.r, "r_o": self.spec.r_o, "n_r": self.spec.n_r,
            "q": self.reg.q, "m": self.reg.m, "k": self.k,
            "exact": self.exact, "oracle": self.oracle,
            "asymptotic": self.asymptotic, "limit": self.limit,
            "notes": list(self.notes),
        }


def probability_report(r: int, q: int, k: int | None = None, oracle: bool = False) -> ProbabilityReport:
    """Exact, optional oracle, dominant-sum and limit values side by side.

    With k=None the exact and oracle values are averaged over k with
    weights m_k / 2^m.
    """
    spec = PeriodSpec.of(r)
    reg = register_for(spec, q)
    if k is None:
        exact = p_tot_averaged(reg)
        orc = None
        if oracle:
            orc = math.fsum(m_k(i, reg) * p_tot_oracle(i, reg) for i in range(r)) / reg.size
        label: int | str = "averaged"
        notes = ["k averaged with weights m_k/2^m"]
    else:
        exact = p_tot_exact(k, reg)
        orc = p_tot_oracle(k, reg) if oracle else None
        label, notes = k, []
    return ProbabilityReport(exact=exact, spec=spec, reg=reg, k=label, oracle=orc,
                             asymptotic=p_asym(spec, q), limit=p_inf(q), notes=notes)
