"""Zaremba's function z(n) = sum_{d|n} log(d)/d and the ratio v(n) = z(n)/log tau(n)."""

from __future__ import annotations

import math

import numpy as np

from .arith import CapacityError, Factorization, UndefinedError, divisors, local_h, tau

PARTIAL_SUM_CAP = 10**8
_CHUNK = 1 << 20


def z_direct(f: Factorization) -> float:
    """Sum (log d)/d over every divisor, largest divisor first.

    ``math.fsum`` keeps the result correctly rounded regardless of tau(n).
    """
    return math.fsum(math.log(d) / d for d in reversed(divisors(f)))


def _power_weight(p: int, a: int) -> float:
    """sum_{j=1}^{a} j log(p) / p^j."""
    lp = math.log(p)
    return math.fsum(j * lp / p**j for j in range(a, 0, -1))


def z_rearranged(f: Factorization) -> float:
    """z(n) = sum_i h(n / p_i^a_i) * sum_{j<=a_i} j log(p_i) / p_i^j.

    Cost is O(sum a_i) plus one local h factor per prime; no divisor list.
    """
    locals_ = [local_h(p, a) for p, a in f.pairs]
    terms = []
    for i, (p, a) in enumerate(f.pairs):
        h_rest = math.prod(locals_[:i]) * math.prod(locals_[i + 1 :])
        terms.append(_power_weight(p, a) * h_rest)
    return math.fsum(terms)


z = z_rearranged


def v(f: Factorization) -> float:
    t = tau(f)
    if t < 2:
        raise UndefinedError("v(1) is undefined: log tau(1) = 0")
    return z_rearranged(f) / math.log(t)


def z_partial_sum(x: int, cap: int = PARTIAL_SUM_CAP) -> tuple[float, float]:
    """(sum_{n<=x} z(n), x * (-zeta'(2))).

    Uses sum_{n<=x} z(n) = sum_{d<=x} floor(x/d) log(d)/d, evaluated in fixed
    chunks whose partial sums are combined with fsum, so the result does not
    depend on how the work is split.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if x > cap:
        raise CapacityError(f"x={x} exceeds partial-sum capacity {cap}")
    partials = []
    for lo in range(1, x + 1, _CHUNK):
        d = np.arange(lo, min(x, lo + _CHUNK - 1) + 1, dtype=np.float64)
        w = np.floor_divide(x, np.arange(lo, min(x, lo + _CHUNK - 1) + 1, dtype=np.int64))
        partials.append(math.fsum((w * np.log(d) / d).tolist()))
    return math.fsum(partials), x * minus_zeta_prime_2()


def minus_zeta_prime_2(terms: int = 10**5) -> float:
    """-zeta'(2) = sum_{d>=1} log(d)/d^2.

    Direct sum to ``terms`` plus the Euler-Maclaurin tail
    int_N^inf f - f(N)/2 - f'(N)/12 + f'''(N)/720 with f(t) = log(t)/t^2.
    """
    n = terms
    d = np.arange(2, n + 1, dtype=np.float64)
    head = math.fsum((np.log(d) / d**2).tolist())
    ln = math.log(n)
    integral = (ln + 1) / n
    f_n = ln / n**2
    f1 = (1 - 2 * ln) / n**3
    f3 = (-26 + 24 * ln) / n**5
    return head + integral - f_n / 2 - f1 / 12 + f3 / 720
