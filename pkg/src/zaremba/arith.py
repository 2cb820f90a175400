"""Exact integer arithmetic over divisors.

Factorizations are the canonical input for every divisor computation in the
package: z, h, H, tau and sigma are all evaluated from prime-power pairs
rather than by re-factoring.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

MAX_INPUT = 2**63
MAX_VALUE = 2**127
TRIAL_LIMIT = 10**6
DEFAULT_SIEVE_CAP = 10**8


class OutOfRangeError(ValueError):
    """Input outside the supported integer range."""


class CapacityError(ValueError):
    """Request exceeds a configured capacity (sieve size, subset-sum cap)."""


class UndefinedError(ValueError):
    """Function undefined at this input, e.g. v(1)."""


# ---------------------------------------------------------------------------
# Prime sieve
# ---------------------------------------------------------------------------


def _sieve(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p)


class PrimeTable:
    """Grow-on-demand prime sieve shared read-only by the whole package."""

    def __init__(self, cap: int = DEFAULT_SIEVE_CAP):
        self.cap = cap
        self._limit = 0
        self._primes: np.ndarray = np.empty(0, dtype=np.int64)
        self._as_list: list[int] = []
        self.extend(TRIAL_LIMIT)

    def extend(self, limit: int) -> None:
        if limit <= self._limit:
            return
        if limit > self.cap:
            raise CapacityError(f"sieve limit {limit} exceeds capacity {self.cap}")
        limit = min(self.cap, max(limit, 2 * self._limit))
        self._primes = _sieve(limit)
        self._as_list = self._primes.tolist()
        self._limit = limit

    @property
    def limit(self) -> int:
        return self._limit

    def up_to(self, x: int) -> list[int]:
        self.extend(x)
        return self._as_list[: bisect_right(self._as_list, x)]

    def array_up_to(self, x: int) -> np.ndarray:
        self.extend(x)
        return self._primes[: bisect_right(self._as_list, x)]

    def nth(self, k: int) -> int:
        if k < 1:
            raise ValueError("prime index starts at 1")
        while len(self._as_list) < k:
            if k >= 6:
                bound = int(k * (math.log(k) + math.log(math.log(k)))) + 1
            else:
                bound = 15
            self.extend(max(bound, 2 * self._limit))
        return self._as_list[k - 1]

    def first(self, k: int) -> list[int]:
        if k > 0:
            self.nth(k)
        return self._as_list[:k]

    def contains(self, p: int) -> bool:
        i = bisect_right(self._as_list, p)
        return i > 0 and self._as_list[i - 1] == p


PRIMES = PrimeTable()


def set_sieve_cap(cap: int) -> None:
    PRIMES.cap = cap


def primes_up_to(x: int) -> list[int]:
    return PRIMES.up_to(x)


def nth_prime(k: int) -> int:
    return PRIMES.nth(k)


def primorial(k: int) -> int:
    """Product of the first ``k`` primes."""
    return math.prod(PRIMES.first(k))


# ---------------------------------------------------------------------------
# Primality and factoring
# ---------------------------------------------------------------------------

# deterministic for every n < 3.3e24, which covers 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= PRIMES.limit:
        return PRIMES.contains(n)
    for p in _MR_BASES:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, seed: int) -> int:
    """Return a non-trivial factor of composite odd ``n``."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, seed=n)
    _split_large(d, out)
    _split_large(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition ``((p1, a1), (p2, a2), ...)`` with p1 < p2 < ..."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple((int(p), int(a)) for p, a in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        prev = 1
        for p, a in pairs:
            if p <= prev:
                raise ValueError(f"primes must be strictly increasing: {pairs}")
            if a < 1:
                raise ValueError(f"exponent of {p} must be >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
        if self.value >= MAX_VALUE:
            raise OutOfRangeError("represented value exceeds the 127-bit range")

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, a) for p, a in d.items() if a)))

    @cached_property
    def value(self) -> int:
        return math.prod(p**a for p, a in self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.pairs)

    def exponent_of(self, p: int) -> int:
        for q, a in self.pairs:
            if q == p:
                return a
        return 0

    def without(self, p: int) -> "Factorization":
        return Factorization(tuple(pa for pa in self.pairs if pa[0] != p))

    def times(self, other: "Factorization") -> "Factorization":
        d = dict(self.pairs)
        for p, a in other.pairs:
            d[p] = d.get(p, 0) + a
        return Factorization.from_dict(d)


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**63``.

    Trial division by primes up to 10**6; a cofactor that survives and exceeds
    10**12 is handled by Miller-Rabin plus Pollard-Brent.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError("factorize expects an integer")
    n = int(n)
    if not 1 <= n < MAX_INPUT:
        raise OutOfRangeError(f"{n} outside [1, 2**63)")
    out: dict[int, int] = {}
    m = n
    PRIMES.extend(TRIAL_LIMIT)
    for p in PRIMES._as_list:
        if p * p > m or p > TRIAL_LIMIT:
            break
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out[p] = a
    if m > 1:
        if m <= TRIAL_LIMIT**2:
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return Factorization.from_dict(out)


# ---------------------------------------------------------------------------
# Divisor functions
# ---------------------------------------------------------------------------


def divisors(f: Factorization) -> list[int]:
    """All divisors of ``f.value`` in increasing order (d_0 = 1)."""
    if f.value > MAX_INPUT:
        raise OutOfRangeError("divisor enumeration limited to values <= 2**63")
    divs = [1]
    for p, a in f.pairs:
        new = []
        pk = 1
        for _ in range(a):
            pk *= p
            new.extend(d * pk for d in divs)
        divs += new
    divs.sort()
    return divs


def divisors_with_totient(f: Factorization) -> list[tuple[int, int]]:
    """(d, phi(d)) for every divisor d, sorted by d."""
    out = [(1, 1)]
    for p, a in f.pairs:
        new = []
        pk, ph = 1, 1
        for j in range(a):
            pk *= p
            ph = p - 1 if j == 0 else ph * p
            new.extend((d * pk, t * ph) for d, t in out)
        out += new
    out.sort()
    return out


def tau(f: Factorization) -> int:
    return math.prod(a + 1 for _, a in f.pairs)


def sigma(f: Factorization) -> int:
    return math.prod((p ** (a + 1) - 1) // (p - 1) for p, a in f.pairs)


def sigma_k(f: Factorization, k: int) -> int | Fraction:
    """sigma_0 = tau, sigma_1 = sigma, sigma_{-1} = h = sigma/n (exact)."""
    if k == 0:
        return tau(f)
    if k == 1:
        return sigma(f)
    if k == -1:
        return Fraction(sigma(f), f.value)
    raise ValueError("k must be one of -1, 0, 1")


def totient(f: Factorization) -> int:
    return math.prod((p - 1) * p ** (a - 1) for p, a in f.pairs)


def h_and_H(f: Factorization) -> tuple[Fraction, Fraction]:
    """Abundancy h = sigma(n)/n and H = n/phi(n), both exact."""
    h = Fraction(sigma(f), f.value)
    H = Fraction(math.prod(p for p in f.primes), math.prod(p - 1 for p in f.primes))
    return h, H


def local_h(p: int, a: int) -> float:
    """h(p^a) = (p^(a+1) - 1) / ((p - 1) p^a), correctly rounded."""
    return (p ** (a + 1) - 1) / ((p - 1) * p**a)


def is_perfect(f: Factorization) -> bool:
    return sigma(f) == 2 * f.value


def is_deficient(f: Factorization) -> bool:
    return sigma(f) < 2 * f.value


def is_abundant(f: Factorization) -> bool:
    return sigma(f) > 2 * f.value


def smallest_prime_factor_table(limit: int) -> np.ndarray:
    """spf[m] for 0 <= m <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in PRIMES.up_to(limit):
        if p * p > limit:
            break
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.arange(limit + 1)
    mask = spf == 0
    spf[mask] = idx[mask]
    spf[:2] = 0
    return spf


def factorizations_up_to(limit: int) -> Iterable[Factorization]:
    """Yield factorize(n) for n = 1..limit using a smallest-prime-factor table."""
    spf = smallest_prime_factor_table(limit).tolist()
    for n in range(1, limit + 1):
        d: dict[int, int] = {}
        m = n
        while m > 1:
            p = spf[m]
            d[p] = d.get(p, 0) + 1
            m //= p
        yield Factorization(tuple(sorted(d.items())))
