"""Upper and lower bounds for z(n), explicit prime estimates, and the
reverse-bootstrapping bound on omega(n) for v record setters.

Bounds evaluate in floating point; every hypothesis (perfect, deficient,
exponent one) is decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

from . import arith
from .arith import (
    CapacityError,
    Factorization,
    UndefinedError,
    divisors,
    h_and_H,
    is_deficient,
    is_perfect,
    is_prime,
    nth_prime,
    primes_up_to,
    tau,
)
from .zfunc import z_rearranged

EULER_GAMMA = 0.57721566490153286061
E_GAMMA = math.exp(EULER_GAMMA)
RS_PRIME_MIN_K = 20
RS_MERTENS_MIN_PRIME = 29
SQUARES_MIN_OMEGA = 19
EVEN_PERFECT_EXPONENTS = (2, 3, 5, 7, 13, 17, 19, 31)
# (sum_i log 2^i / 2^i)(sum_i log 3^i / 3^i); exceeded by z(28)
EVEN_PERFECT_CEILING_AS_PRINTED = 1.5 * math.log(2) * math.log(3)
EVEN_PERFECT_CAP = 2 * 1.5 * (math.log(2) + math.log(3) / 3)


def _require_gt1(f: Factorization) -> None:
    if f.value < 2:
        raise UndefinedError("bound needs n >= 2")


def _sum_inv_sq_gt1(f: Factorization) -> float:
    return math.fsum(1.0 / (d * d) for d in reversed(divisors(f)[1:]))


# ---------------------------------------------------------------------------
# Upper bounds on z(n)
# ---------------------------------------------------------------------------


def weber_upper(f: Factorization) -> float:
    """H(n) * sum_{p|n} log(p)/(p-1)."""
    _require_gt1(f)
    H = math.prod(p / (p - 1) for p in f.primes)
    return H * math.fsum(math.log(p) / (p - 1) for p in f.primes)


def tightened_weber(f: Factorization, square_free_primes: Iterable[int] = ()) -> float:
    """Weber's bound with exponent-one primes q traded to log(q)/q and (q+1)/q."""
    _require_gt1(f)
    q_set = set(square_free_primes)
    exps = dict(f.pairs)
    for q in q_set:
        if exps.get(q) != 1:
            raise ValueError(f"{q} does not divide n exactly once")
    s = []
    prod = 1.0
    for p in f.primes:
        if p in q_set:
            s.append(math.log(p) / p)
            prod *= (p + 1) / p
        else:
            s.append(math.log(p) / (p - 1))
            prod *= p / (p - 1)
    return math.fsum(s) * prod


def square_free_part_primes(f: Factorization) -> tuple[int, ...]:
    return tuple(p for p, a in f.pairs if a == 1)


def h_log_tau_upper(f: Factorization) -> float:
    """(h - 1) log((tau - 1)/(h - 1)); equality at primes."""
    _require_gt1(f)
    h, _ = h_and_H(f)
    hm1 = float(h - 1)
    return hm1 * math.log((tau(f) - 1) / hm1)


def perfect_tau_upper(f: Factorization) -> float:
    """log(tau - 1); valid for perfect n (strict)."""
    return math.log(tau(f) - 1)


def deficient_tau_upper(f: Factorization) -> float:
    """log(tau + 2 - h); valid for deficient n."""
    h, _ = h_and_H(f)
    return math.log(float(tau(f) + 2 - h))


def tau_harmonic_upper(f: Factorization) -> float:
    """sum_{i<=tau+1} log(i)/i, valid for every n."""
    return math.fsum(math.log(i) / i for i in range(tau(f) + 1, 1, -1))


def modified_jensen_upper(f: Factorization) -> float:
    """Perfect n, smallest prime p: concavity of log x + p/(2x) on [p, inf) gives
    z <= log(tau - 1) + (p/2)(1/(tau - 1) - sum_{d>1} 1/d^2)."""
    p = f.primes[0]
    t = tau(f)
    return math.log(t - 1) + p / 2 * (1 / (t - 1) - _sum_inv_sq_gt1(f))


def sababheh_refined_upper(f: Factorization) -> float:
    """Perfect n: weights 1/d on divisors d > 1 with the (A/G)^{k a_min} factor."""
    n = f.value
    t = tau(f)
    k = t - 1
    am = (2 * n - 1) / k
    log_gm = t * math.log(n) / (2 * k)
    return math.log(k) - (k / n) * (math.log(am) - log_gm)


# ---------------------------------------------------------------------------
# Lower bounds on z(n)
# ---------------------------------------------------------------------------


def jensen_lower(f: Factorization) -> float:
    """(h - 1) log((h - 1) / sum_{d>1} 1/d^2); equality iff n is prime."""
    _require_gt1(f)
    h, _ = h_and_H(f)
    hm1 = float(h - 1)
    return hm1 * math.log(hm1 / _sum_inv_sq_gt1(f))


def jensen_lower_as_printed(f: Factorization) -> tuple[float, float]:
    """The two literal forms (h-1) log sum 1/d^2 and (h-1) log(2p)."""
    _require_gt1(f)
    h, _ = h_and_H(f)
    hm1 = float(h - 1)
    return hm1 * math.log(_sum_inv_sq_gt1(f)), hm1 * math.log(2 * f.primes[0])


def smallest_prime_lower(f: Factorization) -> float:
    """(log p)(h - 1) with p the smallest prime factor."""
    _require_gt1(f)
    h, _ = h_and_H(f)
    return math.log(f.primes[0]) * float(h - 1)


def odd_perfect_lower(f: Factorization) -> float:
    """log(4p); stated for odd perfect n only (none known)."""
    _require_gt1(f)
    return math.log(4 * f.primes[0])


# ---------------------------------------------------------------------------
# BoundReport
# ---------------------------------------------------------------------------


@dataclass
class BoundEntry:
    source: str
    kind: str  # "upper" | "lower"
    value: float | None
    applicable: bool
    reason: str


@dataclass
class BoundReport:
    n: int
    z: float
    entries: list[BoundEntry] = field(default_factory=list)

    def violations(self, tol: float = 1e-9) -> list[BoundEntry]:
        bad = []
        for e in self.entries:
            if not e.applicable or e.value is None:
                continue
            if e.kind == "upper" and e.value < self.z - tol:
                bad.append(e)
            if e.kind == "lower" and e.value > self.z + tol:
                bad.append(e)
        return bad

    def to_dict(self) -> dict:
        return {"n": self.n, "z": self.z, "entries": [asdict(e) for e in self.entries]}


def bound_report(f: Factorization) -> BoundReport:
    _require_gt1(f)
    n = f.value
    rep = BoundReport(n, z_rearranged(f))
    perfect = is_perfect(f)
    deficient = is_deficient(f)
    odd = n % 2 == 1
    add = rep.entries.append

    add(BoundEntry("weber", "upper", weber_upper(f), True, "all n >= 2"))
    sq = square_free_part_primes(f)
    add(BoundEntry("tightened_weber", "upper", tightened_weber(f, sq), True,
                   f"exponent-one primes {list(sq)}"))
    add(BoundEntry("h_log_tau", "upper", h_log_tau_upper(f), True, "all n >= 2"))
    add(BoundEntry("tau_harmonic", "upper", tau_harmonic_upper(f), True, "all n"))
    add(BoundEntry("perfect_log_tau_minus_1", "upper", perfect_tau_upper(f), perfect,
                   "n perfect" if perfect else "requires perfect n"))
    add(BoundEntry("deficient_log_tau_plus_2_minus_h", "upper", deficient_tau_upper(f), deficient,
                   "n deficient" if deficient else "requires deficient n"))
    even_perfect = perfect and not odd
    add(BoundEntry("even_perfect_ceiling_as_printed", "upper", EVEN_PERFECT_CEILING_AS_PRINTED, False,
                   "as-printed form; fails at n=28"))
    add(BoundEntry("even_perfect_cap", "upper", EVEN_PERFECT_CAP, even_perfect,
                   "n even perfect" if even_perfect else "requires even perfect n"))
    add(BoundEntry("modified_jensen_logx_plus_A_over_2x", "upper",
                   modified_jensen_upper(f) if perfect else None, perfect,
                   "n perfect" if perfect else "requires perfect n"))
    add(BoundEntry("sababheh_refined", "upper",
                   sababheh_refined_upper(f) if perfect else None, perfect,
                   "n perfect" if perfect else "requires perfect n"))

    add(BoundEntry("jensen_corrected", "lower", jensen_lower(f), True,
                   "all n >= 2; equality iff prime"))
    add(BoundEntry("smallest_prime", "lower", smallest_prime_lower(f), True, "all n >= 2"))
    if perfect:
        add(BoundEntry("perfect_minus_log_sum_inv_sq", "lower", -math.log(_sum_inv_sq_gt1(f)),
                       True, "n perfect"))
    printed_sum, printed_2p = jensen_lower_as_printed(f)
    add(BoundEntry("jensen_as_printed_log_sum", "lower", printed_sum, False,
                   "as-printed form; trivially weak"))
    add(BoundEntry("jensen_as_printed_log_2p", "lower", printed_2p, False,
                   "as-printed form; fails at n=12"))
    add(BoundEntry("odd_perfect_log_4p", "lower", odd_perfect_lower(f), perfect and odd,
                   "odd perfect only; formula evaluator"))
    return rep


# ---------------------------------------------------------------------------
# Explicit prime estimates
# ---------------------------------------------------------------------------


def mertens_product(x: int) -> float:
    """M(x) = prod_{p<=x} p/(p-1)."""
    if x < 2:
        raise ValueError("x must be >= 2")
    return math.prod(p / (p - 1) for p in primes_up_to(x))


def rs_prime_upper(k: int) -> float:
    """k(log k + log log k - 1/2), an upper bound for the k-th prime when k >= 20."""
    if k < RS_PRIME_MIN_K:
        raise ValueError(f"bound holds only for k >= {RS_PRIME_MIN_K} (fails at k=19)")
    lk = math.log(k)
    return k * (lk + math.log(lk) - 0.5)


def rs_prime_upper_check(k_max: int = 10**5) -> list[int]:
    """Indices 20 <= k <= k_max where nth_prime(k) >= the bound (expected empty)."""
    nth_prime(k_max)
    ps = arith.PRIMES.first(k_max)
    return [k for k in range(RS_PRIME_MIN_K, k_max + 1) if ps[k - 1] >= rs_prime_upper(k)]


def rs_mertens_upper(p_k: int) -> float:
    """e^gamma log(p)(1 + 1/(1.2 log^2 p)), for primes p >= 29."""
    if p_k < RS_MERTENS_MIN_PRIME:
        raise ValueError(f"bound needs p_k >= {RS_MERTENS_MIN_PRIME}")
    lp = math.log(p_k)
    return E_GAMMA * lp * (1 + 1 / (1.2 * lp * lp))


def rs_mertens_check(lo: int = 29, hi: int = 293) -> list[int]:
    """Primes in [lo, hi] where M(p) exceeds the bound (expected empty)."""
    return [p for p in primes_up_to(hi) if p >= lo and mertens_product(p) > rs_mertens_upper(p)]


def sum_log_p_bound(k: int) -> tuple[float, float]:
    """(sum_{i<=k} log p_i/(p_i - 1), 1 + log(k(log k + log log k - 1/2)))."""
    ps = arith.PRIMES.first(k)
    lhs = math.fsum(math.log(p) / (p - 1) for p in ps)
    return lhs, 1 + math.log(rs_prime_upper(k))


def omega_bound_f(k: int) -> float:
    """Upper bound on v(n) for n with k >= 20 distinct primes.

    Numerator: (1 + log a) bounds sum log p/(p-1) and the Mertens estimate
    at a = k(t + log t - 1/2), t = log k. Denominator: 4, 9, 25, 49 all
    divide such n, so log tau >= (k - 4) log 2 + 4 log 3.
    """
    if k < RS_PRIME_MIN_K:
        raise ValueError(f"f(k) defined for k >= {RS_PRIME_MIN_K}")
    t = math.log(k)
    a = k * (t + math.log(t) - 0.5)
    la = math.log(a)
    num = (1 + la) * E_GAMMA * la * (1 + 1 / (1.2 * la * la))
    return num / ((k - 4) * math.log(2) + 4 * math.log(3))


def omega_start(v_threshold: float, k_max: int = 10**4) -> int:
    """Largest k with f(k) > threshold; 19 if none (f is decreasing)."""
    best = SQUARES_MIN_OMEGA
    for k in range(RS_PRIME_MIN_K, k_max + 1):
        if omega_bound_f(k) > v_threshold:
            best = k
        else:
            break
    return best


# ---------------------------------------------------------------------------
# Reverse bootstrapping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BootstrapStep:
    omega_cap: int
    prime_used: int
    z_cap: float
    next_omega_cap: int
    squares_refinement: bool


def weber_first_primes(k: int) -> float:
    """Weber's bound over the first k primes: M(p_k) * sum log p/(p-1)."""
    ps = arith.PRIMES.first(k)
    M = math.exp(math.fsum(math.log(p / (p - 1)) for p in ps))
    return M * math.fsum(math.log(p) / (p - 1) for p in ps)


def reverse_bootstrap(v_threshold: float, start: int | None = None) -> list[BootstrapStep]:
    """Shrink the cap on omega(n) for n with v(n) >= v_threshold.

    From cap k: z(n) <= Weber over the first k primes, and
    2^omega <= tau <= exp(z_cap/threshold). When that stops decreasing the cap
    and the cap is at least 19, switch to 2^(omega-4) 3^4 <= tau and keep it on.
    Stops when the cap no longer decreases.
    """
    if v_threshold <= 0:
        raise ValueError("threshold must be positive")
    k = omega_start(v_threshold) if start is None else start
    steps: list[BootstrapStep] = []
    squares = False
    while k >= 1:
        z_cap = weber_first_primes(k)
        log2_tau = z_cap / (v_threshold * math.log(2))
        plain = math.floor(log2_tau)
        refined = math.floor(log2_tau + 4 - 4 * math.log2(3))
        if not squares and plain >= k and k >= SQUARES_MIN_OMEGA:
            squares = True
        nxt = refined if squares else plain
        nxt = min(max(nxt, 0), k)
        steps.append(BootstrapStep(k, nth_prime(k), z_cap, nxt, squares))
        if nxt >= k or nxt == 0:
            break
        k = nxt
    return steps


def repeated_prime_condition(l_prime: int, k_prime: int) -> bool:
    """Conditions 1 and 2 under which p_k | n forces p_l^2 | n for z/v records."""
    if not (is_prime(l_prime) and is_prime(k_prime)):
        raise ValueError("both arguments must be prime")
    if not l_prime < k_prime:
        raise ValueError("need l_prime < k_prime")
    pl, pk = l_prime, k_prime
    cond1 = pk > pl * (pl + 1)
    lpl, lpk = math.log(pl), math.log(pk)
    cond2 = lpl + 2 * lpl / pl >= lpl * (pk + 1) / pk + lpk / pk * (pl + 1)
    return cond1 and cond2


def forced_square_threshold(l_prime: int, limit: int = 10**4) -> int | None:
    """Smallest prime p_k with the condition holding for every prime >= p_k up to limit."""
    ps = [p for p in primes_up_to(limit) if p > l_prime]
    ok = [repeated_prime_condition(l_prime, p) for p in ps]
    for i in range(len(ps)):
        if all(ok[i:]):
            return ps[i]
    return None


# ---------------------------------------------------------------------------
# Perfect-number and divisor-weight checks
# ---------------------------------------------------------------------------


def sababheh_perfect_check(f: Factorization, certificate=None) -> tuple[float, float, bool]:
    """Evaluate |S| log n/(3n) + sum_{d in S} log d/d <= log(|S| - 1).

    With no certificate n must be perfect and S is every divisor. Evaluated
    and reported; not asserted.
    """
    n = f.value
    if certificate is None:
        if not is_perfect(f):
            raise ValueError("n is not perfect; pass a strongly pseudoperfect certificate")
        members = divisors(f)
    else:
        if certificate.n != n or not certificate.symmetric:
            raise ValueError("certificate must be a symmetric S1 set for n")
        members = list(certificate.members)
    size = len(members)
    lhs = size * math.log(n) / (3 * n) + math.fsum(math.log(d) / d for d in reversed(members))
    rhs = math.log(size - 1)
    return lhs, rhs, lhs <= rhs


def dual_weight_check(f: Factorization) -> tuple[float, float, bool]:
    """log(tau/2) >= sum_{d|n} d log(n/d)/(2n); weights d/2n need perfect n."""
    n = f.value
    lhs = math.log(tau(f) / 2)
    rhs = math.fsum(d * math.log(n / d) / (2 * n) for d in divisors(f))
    return lhs, rhs, lhs >= rhs - 1e-12


def phi_weight_check(f: Factorization) -> tuple[float, float, bool]:
    """sum phi(d) log(d)/n <= log sum phi(d) d/n over d | n."""
    n = f.value
    pairs = arith.divisors_with_totient(f)
    lhs = math.fsum(ph * math.log(d) / n for d, ph in pairs)
    rhs = math.log(sum(ph * d for d, ph in pairs) / n)
    return lhs, rhs, lhs <= rhs + 1e-12


# ---------------------------------------------------------------------------
# Sequences with bounded h
# ---------------------------------------------------------------------------


@dataclass
class SequenceReport:
    kind: str
    members: list[tuple[Factorization, float]]
    cap: float | None = None
    note: str = ""


def _even_perfect(count: int) -> list[Factorization]:
    if count > len(EVEN_PERFECT_EXPONENTS):
        raise CapacityError(f"only {len(EVEN_PERFECT_EXPONENTS)} even perfect numbers fit in range")
    return [Factorization(((2, p - 1), (2**p - 1, 1))) for p in EVEN_PERFECT_EXPONENTS[:count]]


def _p_times_power_of_two(count: int, start: int) -> list[Factorization]:
    out = []
    p = start
    while len(out) < count:
        if p > 2 and is_prime(p):
            e = p.bit_length() - 1
            out.append(Factorization(((2, e), (p, 1))))
        p += 1
    return out


def _prime_run_c(count: int) -> list[Factorization]:
    out = []
    for j in range(1, count + 1):
        h = Fraction(1)
        k = j
        while True:
            p = nth_prime(k)
            h *= Fraction(p + 1, p)
            if h >= 2:
                break
            k += 1
            if math.prod(arith.PRIMES.first(k)) >= arith.MAX_VALUE:
                raise CapacityError(f"c_{j} exceeds the 127-bit range")
        ps = [nth_prime(i) for i in range(j, k + 1)]
        if math.prod(ps) >= arith.MAX_VALUE:
            raise CapacityError(f"c_{j} exceeds the 127-bit range")
        out.append(Factorization(tuple((p, 1) for p in ps)))
    return out


def sequence_z_limits(kind: str, count: int, start: int = 3) -> SequenceReport:
    """z along even perfects, p*2^floor(log2 p), or minimal non-deficient prime runs."""
    if kind == "even_perfect":
        fs = _even_perfect(count)
        cap = EVEN_PERFECT_CAP
        note = "empirical limit candidate 2 log 2 = %.12g" % (2 * math.log(2))
    elif kind == "p_times_power_of_two":
        fs = _p_times_power_of_two(count, start)
        cap, note = None, "empirical limit candidate 2 log 2 = %.12g" % (2 * math.log(2))
    elif kind == "prime_run_c":
        fs = _prime_run_c(count)
        cap, note = None, "z(c_j) = O(log p_j)"
    else:
        raise ValueError(f"unknown sequence kind {kind!r}")
    return SequenceReport(kind, [(f, z_rearranged(f)) for f in fs], cap, note)
