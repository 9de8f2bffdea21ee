"""Exhaustive checks of the group structure behind choices L and Lbar.

Covers order censuses of (Z/hZ)^x, counts of element pairs whose orders carry
the same power of two (split by parity of the discrete logs), and the exact
rational form of Leander's conditional probability.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT_CAPS, ResourceCapError
from .factor_bench import leander_prob
from .numthy import (
    SemiprimeSpec,
    carmichael,
    factorize,
    is_prime,
    jacobi,
    legendre_euler,
    order_dividing,
    pow2_decompose,
    semiprimes_below,
)


@dataclass(frozen=True)
class OrderCensus:
    h: int
    generator: int
    orders: tuple  # orders[b] for b in 0..h-1, orders[0] unused
    counts: dict
    valuation_counts: dict


@dataclass(frozen=True)
class CosetMatrix:
    ee: int
    eo: int
    oe: int
    oo: int

    def as_tuple(self) -> tuple:
        return (self.ee, self.eo, self.oe, self.oo)


def primitive_root(h: int) -> int:
    """Smallest generator of (Z/hZ)^x for an odd prime h."""
    primes = list(factorize(h - 1))
    for g in range(2, h):
        if all(pow(g, (h - 1) // ell, h) != 1 for ell in primes):
            return g
    raise ValueError(f"{h} has no primitive root")


def order_census(h: int, caps=DEFAULT_CAPS) -> OrderCensus:
    """Orders of every element mod the odd prime h, cross-checked against a generator.

    For g^k the order must be (h-1)/gcd(k, h-1); for even k = 2j it must
    also be 2^(c-1)d / gcd(j, 2^(c-1)d).
    """
    if h > caps.census_max_h:
        raise ResourceCapError(f"census of h={h} exceeds cap {caps.census_max_h}")
    if h < 3 or not is_prime(h):
        raise ValueError(f"{h} is not an odd prime")
    n = h - 1
    orders = [0] + [order_dividing(b, h, n) for b in range(1, h)]
    g = primitive_root(h)
    d, c = pow2_decompose(n)
    half = n // 2
    x = 1
    for k in range(1, h):
        x = x * g % h
        assert orders[x] == n // math.gcd(k, n)
        if k % 2 == 0:
            assert orders[x] == half // math.gcd(k // 2, half)
    counts = Counter(orders[1:])
    vals = Counter(pow2_decompose(o).valuation for o in orders[1:])
    assert sum(counts.values()) == n
    assert vals[0] == d and all(vals[l] == (d << (l - 1)) for l in range(1, c + 1))
    return OrderCensus(h, g, tuple(orders), dict(sorted(counts.items())), dict(sorted(vals.items())))


def predicted_coset_counts(spec: SemiprimeSpec) -> CosetMatrix:
    S = 4 ** (spec.c_q - 1) * spec.d_p * spec.d_q
    delta = 1 if spec.c_p == spec.c_q else 0
    ee3 = S + 2 * spec.d_p * spec.d_q - 3
    if ee3 % 3:
        raise ArithmeticError("even-even count formula is not integral")
    return CosetMatrix(ee3 // 3, S * (1 - delta), 0, S * delta)


def coset_counts(spec: SemiprimeSpec, caps=DEFAULT_CAPS) -> CosetMatrix:
    """Brute-force count of pairs (b_p, b_q) != (1, 1) whose orders share a power of two.

    Parity of a discrete log is read off the Legendre symbol; the result is
    checked against the closed-form counts.
    """
    if spec.N > caps.exhaustive_max_n:
        raise ResourceCapError(f"N={spec.N} exceeds exhaustive cap {caps.exhaustive_max_n}")

    def classes(h):
        return [(b, legendre_euler(b, h) == 1, pow2_decompose(order_dividing(b, h, h - 1)).valuation)
                for b in range(1, h)]

    cp, cq = classes(spec.p), classes(spec.q)
    tally = Counter()
    for bp, even_p, lp in cp:
        for bq, even_q, lq in cq:
            if lp == lq and not (bp == 1 and bq == 1):
                tally[("e" if even_p else "o") + ("e" if even_q else "o")] += 1
    got = CosetMatrix(tally["ee"], tally["eo"], tally["oe"], tally["oo"])
    assert got == predicted_coset_counts(spec), (spec.N, got, predicted_coset_counts(spec))
    return got


def leander_counts(spec: SemiprimeSpec) -> tuple[int, int]:
    """(#good, #total) over b with (b/N) = -1, good meaning r even and b^(r/2) != -1."""
    N = spec.N
    lam = carmichael(spec)
    good = total = 0
    for b in range(1, N):
        if math.gcd(b, N) != 1 or jacobi(b, N) != -1:
            continue
        total += 1
        r = order_dividing(b, N, lam)
        if r % 2 == 0 and pow(b, r // 2, N) != N - 1:
            good += 1
    return good, total


def leander_empirical(spec: SemiprimeSpec, caps=DEFAULT_CAPS) -> Fraction:
    if spec.N > caps.exhaustive_max_n:
        raise ResourceCapError(f"N={spec.N} exceeds exhaustive cap {caps.exhaustive_max_n}")
    good, total = leander_counts(spec)
    assert total == (spec.p - 1) * (spec.q - 1) // 2
    value = Fraction(good, total)
    assert value == leander_prob(spec.c_p, spec.c_q)
    return value


@dataclass
class AuditRow:
    N: int
    p: int
    q: int
    c_p: int
    c_q: int
    matrix: tuple
    predicted: tuple
    leander: str
    leander_predicted: str
    passed: bool
    error: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def audit_semiprime(spec: SemiprimeSpec) -> AuditRow:
    pred = predicted_coset_counts(spec).as_tuple()
    lp = leander_prob(spec.c_p, spec.c_q)
    try:
        m = coset_counts(spec).as_tuple()
        le = leander_empirical(spec)
        return AuditRow(spec.N, spec.p, spec.q, spec.c_p, spec.c_q, m, pred, str(le), str(lp), True)
    except AssertionError as exc:
        return AuditRow(spec.N, spec.p, spec.q, spec.c_p, spec.c_q, (), pred, "", str(lp), False, str(exc))


@dataclass
class AuditReport:
    max_n: int
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def audit(max_n: int, caps=DEFAULT_CAPS) -> AuditReport:
    """Coset-count and Leander audits for every odd semiprime N < max_n."""
    if max_n > caps.exhaustive_max_n:
        raise ResourceCapError(f"max_n={max_n} exceeds cap {caps.exhaustive_max_n}")
    return AuditReport(max_n, [audit_semiprime(s) for s in semiprimes_below(max_n)])
