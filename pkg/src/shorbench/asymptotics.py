"""Large-period behaviour of the success probability.

Holds the special-function kernels (normalized sinc, sine integral), the
dominant finite sum over absolute least residues, its r_o -> infinity limit
and the leading corrections to that limit.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

import numpy as np

SI_SWITCH = 16.0
_SERIES_DIGITS = 45


def _odd_part(spec) -> int:
    # accepts a bare odd integer or anything carrying an r_o attribute
    r_o = getattr(spec, "r_o", spec)
    if r_o < 1 or r_o % 2 == 0:
        raise ValueError(f"r_o must be a positive odd integer, got {r_o}")
    return r_o


def _sin_pi_ratio(n: int, d: int) -> float:
    """sin(pi*n/d) with the argument reduced exactly in integers."""
    if d < 0:
        n, d = -n, -d
    t = n % (2 * d)
    if t > d:
        t -= 2 * d
    if 2 * t > d:
        t = d - t
    elif 2 * t < -d:
        t = -d - t
    if t == 0:
        return 0.0
    return math.sin(math.pi * t / d)


def sin_pi(x) -> float:
    """sin(pi*x). Rationals (incl. ints) are reduced exactly; floats via fmod."""
    if isinstance(x, Rational):
        x = Fraction(x)
        return _sin_pi_ratio(x.numerator, x.denominator)
    y = math.fmod(x, 2.0)
    if y > 1.0:
        y -= 2.0
    elif y < -1.0:
        y += 2.0
    if y > 0.5:
        y = 1.0 - y
    elif y < -0.5:
        y = -1.0 - y
    return math.sin(math.pi * y)


def cos_pi(x) -> float:
    if isinstance(x, Rational):
        return sin_pi(Fraction(x) + Fraction(1, 2))
    return sin_pi(x + 0.5)


def sinc(x) -> float:
    """Normalized sinc, sin(pi x)/(pi x), exactly 1 at 0 and 0 at other integers."""
    if isinstance(x, Rational):
        x = Fraction(x)
        if x == 0:
            return 1.0
        if x.denominator == 1:
            return 0.0
        return _sin_pi_ratio(x.numerator, x.denominator) / (math.pi * float(x))
    if x == 0.0:
        return 1.0
    return sin_pi(x) / (math.pi * x)


def _si_series(x: float) -> float:
    # Taylor series in 45-digit decimal: at x = 16 the terms reach ~1e6,
    # which would cost ~7 digits in binary64
    with localcontext() as ctx:
        ctx.prec = _SERIES_DIGITS
        xd = Decimal(x)
        x2 = xd * xd
        term = xd  # x^(2n+1)/(2n+1)!
        total = xd
        n = 0
        tiny = Decimal(10) ** -(_SERIES_DIGITS - 5)
        while True:
            n += 1
            term = -term * x2 / ((2 * n) * (2 * n + 1))
            contrib = term / (2 * n + 1)
            total += contrib
            if abs(contrib) < tiny:
                break
        return float(total)


def _aux_fg(x: float) -> tuple[float, float]:
    """Auxiliary functions f(x), g(x) for x > 2.

    e^{ix} E1(ix) = g(x) - i f(x); E1 is evaluated by its continued fraction
    with the modified Lentz algorithm.
    """
    z = complex(0.0, x)
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 4e-16:
            break
    else:  # pragma: no cover
        raise ArithmeticError(f"continued fraction for E1({z}) did not converge")
    return -h.imag, h.real


def sine_integral(x: float) -> float:
    """Si(x) = integral of sin(t)/t over [0, x]; odd in x."""
    if x < 0:
        return -sine_integral(-x)
    if x == 0:
        return 0.0
    if x <= SI_SWITCH:
        return _si_series(x)
    f, g = _aux_fg(x)
    return math.pi / 2 - f * math.cos(x) - g * math.sin(x)


def sinc2_integral(a: float) -> float:
    """Integral of sinc^2 over [-a, a], via integration by parts."""
    if a == 0:
        return 0.0
    return 2 / math.pi * sine_integral(2 * math.pi * a) - 2 * sin_pi(a) ** 2 / (math.pi**2 * a)


def p_inf(q: float) -> float:
    """Limit success probability for register increment q (any real q)."""
    s = sin_pi(2.0 ** (q - 1)) / (2.0 ** (q / 2 - 1) * math.pi)
    return 2 / math.pi * sine_integral(2.0**q * math.pi) - s * s


def residue_half_width(r_o: int, q: int) -> int:
    """floor(2^q r_o / 2): largest index in the absolute-least-residue set B[2^q r_o]."""
    return r_o << (q - 1) if q >= 1 else r_o >> (1 - q)


def p_asym(spec, q: int) -> float:
    """Dominant sum (1/r_o) * sum of sinc^2(j/r_o) over |j| <= floor(2^q r_o / 2)."""
    r_o = _odd_part(spec)
    if r_o == 1:
        return 1.0
    h = residue_half_width(r_o, q)
    terms = [1.0]
    for j in range(1, h + 1):
        s = _sin_pi_ratio(j, r_o) / (math.pi * j / r_o)
        terms.append(2 * s * s)
    return math.fsum(terms) / r_o


@dataclass(frozen=True)
class ExpansionResult:
    leading: float
    correction: float
    order_exponent: int
    nu: int | None = None

    @property
    def value(self) -> float:
        return self.leading + self.correction


def expansion(spec, q: int) -> ExpansionResult:
    """Leading term and first correction of p_asym in powers of 1/r_o."""
    r_o = _odd_part(spec)
    if r_o == 1:
        raise ValueError("r_o = 1 is the exact power-of-two case; no expansion")
    if q >= 1:
        lead = 2 / math.pi * sine_integral(2.0**q * math.pi)
        return ExpansionResult(lead, 4 / (15 * 8**q) / r_o**4, 4)
    if q == 0:
        lead = 2 / math.pi * (sine_integral(math.pi) - 2 / math.pi)
        return ExpansionResult(lead, 4 / (3 * math.pi**2) / r_o**2, 2)
    nu = r_o % 2 ** (1 - q)
    lead = 2 / math.pi * sine_integral(2.0**q * math.pi) - 2.0**q * sinc(Fraction(1, 2 ** (1 - q))) ** 2
    return ExpansionResult(lead, deviation_limit(nu, q) / r_o, 1, nu)


def deviation_limit(nu: int, q: int) -> float:
    """Large-r_o limit of r_o (p_asym - p_inf) for q < 0 and r_o = nu mod 2^(|q|+1)."""
    if q >= 0 or not (0 <= nu < 2 ** (1 - q) and nu % 2):
        raise ValueError("need q < 0 and nu an odd residue modulo 2^(|q|+1)")
    return sinc(Fraction(1, 2 ** (1 - q))) ** 2 * (1 - nu / 2 ** (-q))


def scaled_deviation(spec, q: int) -> float:
    """r_o * (p_asym - p_inf)."""
    r_o = _odd_part(spec)
    if r_o == 1:
        raise ValueError("scaled deviation is not defined for r_o = 1")
    return r_o * (p_asym(r_o, q) - p_inf(q))


def _sinc_derivs(x: float) -> tuple[float, float, float, float]:
    # derivatives in u = pi*x of sin(u)/u, times pi^n for d^n/dx^n
    u = math.pi * x
    s, c = sin_pi(x), cos_pi(x)
    d0 = s / u
    d1 = (u * c - s) / u**2
    d2 = (-u * u * s - 2 * u * c + 2 * s) / u**3
    d3 = (-u**3 * c + 3 * u * u * s + 6 * u * c - 6 * s) / u**4
    return d0, math.pi * d1, math.pi**2 * d2, math.pi**3 * d3


def em_sum(spec, q: int, terms: int = 4) -> float:
    """Euler-Maclaurin partial sum for p_asym when q >= 1.

    Terms, in order: the integral, f(a)/r_o, f'(a)/(6 r_o^2), -f'''(a)/(360 r_o^4)
    with f = sinc^2 and a = 2^(q-1).
    """
    if q < 1:
        raise ValueError("em_sum covers q >= 1 only")
    if not 1 <= terms <= 4:
        raise ValueError("terms must be between 1 and 4")
    r_o = _odd_part(spec)
    a = 2.0 ** (q - 1)
    s0, s1, s2, s3 = _sinc_derivs(a)
    f = s0 * s0
    f1 = 2 * s0 * s1
    f3 = 6 * s1 * s2 + 2 * s0 * s3
    parts = [sinc2_integral(a), f / r_o, f1 / (6 * r_o**2), -f3 / (360 * r_o**4)]
    return math.fsum(parts[:terms])


def convergence_slope(q: int, r_o_values) -> float:
    """Least-squares slope of log|p_asym - p_inf| against log r_o."""
    r = np.asarray(list(r_o_values), dtype=float)
    dev = np.array([abs(p_asym(int(v), q) - p_inf(q)) for v in r])
    slope, _ = np.polyfit(np.log(r), np.log(dev), 1)
    return float(slope)


def fig1_series(q_lo: float, q_hi: float, step: float):
    """Samples of p_inf on [q_lo, q_hi] plus its values at the integers inside.

    Returns (curve, markers), both lists of (q, p_inf(q)).
    """
    if not q_lo < q_hi or step <= 0:
        raise ValueError("need q_lo < q_hi and step > 0")
    n = int(math.floor((q_hi - q_lo) / step + 1e-9))
    curve = [(q_lo + i * step, p_inf(q_lo + i * step)) for i in range(n + 1)]
    markers = [(float(q), p_inf(q)) for q in range(math.ceil(q_lo), math.floor(q_hi) + 1)]
    return curve, markers


def fig3_series(r_o_values=range(3, 32, 2), q_values=(-1, -2, -3, -4)):
    """Rows (q, r_o, p_asym, p_inf) for negative register increments."""
    return [(q, r_o, p_asym(r_o, q), p_inf(q)) for q in q_values for r_o in r_o_values]
