"""Integer kernel: gcd/lcm, modular powers, Legendre and Jacobi symbols,
multiplicative orders, 2-adic splitting and semiprime bookkeeping.

Python ints are arbitrary precision, so nothing here ever truncates.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .config import DEFAULT_CAPS, ResourceCapError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_DIVISION_LIMIT = 10**6


class Pow2Decomposition(NamedTuple):
    odd_part: int
    valuation: int


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("gcd expects non-negative integers")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("lcm expects positive integers")
    return a // math.gcd(a, b) * b


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Right-to-left square-and-multiply."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = 1
    base %= modulus
    while exponent:
        if exponent & 1:
            result = result * base % modulus
        base = base * base % modulus
        exponent >>= 1
    return result


def pow2_decompose(n: int) -> Pow2Decomposition:
    """Split n = odd_part * 2**valuation."""
    if n < 1:
        raise ValueError("pow2_decompose expects a positive integer")
    v = (n & -n).bit_length() - 1
    return Pow2Decomposition(n >> v, v)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) by binary quadratic reciprocity."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"jacobi needs odd n >= 3, got {n}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre_euler(a: int, h: int) -> int:
    """Legendre symbol (a/h) as the least absolute residue of a^((h-1)/2).

    Raises ValueError when that residue is not in {-1, 0, 1}, which can only
    happen for composite h.
    """
    if h < 3 or h % 2 == 0:
        raise ValueError(f"legendre_euler needs an odd prime, got {h}")
    e = mod_pow(a, (h - 1) // 2, h)
    if e == h - 1:
        return -1
    if e in (0, 1):
        return e
    raise ValueError(f"{h} is not prime: a^((h-1)/2) = {e} (mod {h})")


def is_prime(n: int) -> bool:
    """Deterministic primality.

    Trial division below 10**6, Miller-Rabin with the first thirteen prime
    witnesses above (exact for n < 3.3e24).
    """
    if n < 2:
        return False
    if n < _TRIAL_DIVISION_LIMIT:
        if n % 2 == 0:
            return n == 2
        i = 3
        while i * i <= n:
            if n % i == 0:
                return False
            i += 2
        return True
    if n >= DEFAULT_CAPS.prime_max:  # the bound itself is a strong pseudoprime to all 13 bases
        raise ResourceCapError(f"is_prime is only deterministic below {DEFAULT_CAPS.prime_max}")
    d, s = pow2_decompose(n - 1)
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, for the small moduli used in audits."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def order(b: int, n: int, cap: int | None = None) -> int:
    """Multiplicative order of b modulo n by repeated multiplication.

    The loop stops after `cap` steps (default: the configured iteration cap)
    and raises ResourceCapError rather than running on.
    """
    if n < 2:
        raise ValueError("modulus must be >= 2")
    b %= n
    if math.gcd(b, n) != 1:
        raise ValueError(f"{b} is not a unit modulo {n}")
    limit = DEFAULT_CAPS.order_iterations if cap is None else cap
    x, r = b, 1
    while x != 1:
        if r >= limit:
            raise ResourceCapError(f"order of {b} mod {n} exceeds {limit} iterations")
        x = x * b % n
        r += 1
    return r


def order_dividing(b: int, n: int, multiple: int) -> int:
    """Order of b modulo n given any multiple of it (e.g. the Carmichael value).

    Strips prime factors off `multiple` while b^(multiple/l) stays 1.
    """
    b %= n
    if math.gcd(b, n) != 1:
        raise ValueError(f"{b} is not a unit modulo {n}")
    if pow(b, multiple, n) != 1:
        raise ValueError(f"{multiple} is not a multiple of the order of {b} mod {n}")
    r = multiple
    for ell in factorize(multiple):
        while r % ell == 0 and pow(b, r // ell, n) == 1:
            r //= ell
    return r


@dataclass(frozen=True)
class SemiprimeSpec:
    """N = p*q with p = 2^c_p d_p + 1, q = 2^c_q d_q + 1, labelled so c_p >= c_q."""

    p: int
    q: int
    N: int
    c_p: int
    c_q: int
    d_p: int
    d_q: int

    def __post_init__(self):
        if self.p == self.q or self.p % 2 == 0 or self.q % 2 == 0:
            raise ValueError("factors must be distinct odd primes")
        if not (is_prime(self.p) and is_prime(self.q)):
            raise ValueError(f"{self.p} and {self.q} must both be prime")
        if self.N != self.p * self.q:
            raise ValueError("N must equal p*q")
        if (self.p - 1, self.q - 1) != (self.d_p << self.c_p, self.d_q << self.c_q):
            raise ValueError("inconsistent 2-adic parametrisation")
        if self.d_p % 2 == 0 or self.d_q % 2 == 0 or self.c_q < 1:
            raise ValueError("d_p, d_q must be odd and c_q positive")
        if self.c_p < self.c_q:
            raise ValueError("labels must satisfy c_p >= c_q")

    @classmethod
    def from_factors(cls, a: int, b: int) -> "SemiprimeSpec":
        da, ca = pow2_decompose(a - 1)
        db, cb = pow2_decompose(b - 1)
        if cb > ca:
            a, b, ca, cb, da, db = b, a, cb, ca, db, da
        return cls(p=a, q=b, N=a * b, c_p=ca, c_q=cb, d_p=da, d_q=db)

    @property
    def scheme(self) -> str:
        """A when c_p > c_q, B when they are equal."""
        return "A" if self.c_p > self.c_q else "B"

    def to_dict(self) -> dict:
        return {"N": self.N, "p": self.p, "q": self.q, "c_p": self.c_p,
                "c_q": self.c_q, "d_p": self.d_p, "d_q": self.d_q}


def carmichael(spec: SemiprimeSpec) -> int:
    return lcm(spec.p - 1, spec.q - 1)


def is_qnr(b: int, spec: SemiprimeSpec) -> bool:
    """Quadratic non-residuosity mod N, decided with the known factors.

    b is a residue exactly when it is a residue modulo both p and q.
    """
    if math.gcd(b % spec.N, spec.N) != 1:
        raise ValueError(f"{b} is not a unit modulo {spec.N}")
    return not (legendre_euler(b, spec.p) == 1 and legendre_euler(b, spec.q) == 1)


def semiprimes_below(limit: int) -> list[SemiprimeSpec]:
    """All N = p*q < limit with p, q distinct odd primes, in increasing N."""
    primes = [h for h in range(3, limit // 3 + 1, 2) if is_prime(h)]
    out = []
    for i, a in enumerate(primes):
        for b in primes[i + 1:]:
            if a * b >= limit:
                break
            out.append(SemiprimeSpec.from_factors(a, b))
    out.sort(key=lambda s: s.N)
    return out
