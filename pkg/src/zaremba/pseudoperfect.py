"""Pseudoperfect-family classification with divisor-set certificates.

S0 sets are proper divisors summing to n; S1 sets are divisors summing to
2n. A symmetric S1 set is closed under d <-> n/d, so it is a union of
divisor pairs and the search runs over pair sums d + n/d.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .arith import (
    CapacityError,
    Factorization,
    divisors,
    divisors_with_totient,
    factorize,
    factorizations_up_to,
    sigma,
)
from .subset_sum import DEFAULT_NODE_BUDGET, reachable, search_subset, smallest_subset

DEFAULT_CAP = 10**7


class TargetKind(str, Enum):
    S0 = "S0_proper_sum_n"
    S1 = "S1_sum_2n"


@dataclass(frozen=True)
class DivisorSetCertificate:
    n: int
    members: tuple[int, ...]
    target_kind: TargetKind

    def __post_init__(self):
        members = tuple(sorted(self.members))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "target_kind", TargetKind(self.target_kind))
        if len(set(members)) != len(members):
            raise ValueError("certificate members must be distinct")
        if any(d < 1 or self.n % d for d in members):
            raise ValueError("every member must divide n")
        want = self.n if self.target_kind is TargetKind.S0 else 2 * self.n
        if self.target_kind is TargetKind.S0 and self.n in members:
            raise ValueError("S0 sets use proper divisors only")
        if sum(members) != want:
            raise ValueError(f"members sum to {sum(members)}, expected {want}")

    @property
    def symmetric(self) -> bool:
        s = set(self.members)
        return all(self.n // d in s for d in s)

    @property
    def contains_one(self) -> bool:
        return 1 in self.members

    @property
    def contains_n(self) -> bool:
        return self.n in self.members

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "members": list(self.members),
            "target_kind": self.target_kind.value,
            "symmetric": self.symmetric,
            "contains_one": self.contains_one,
            "contains_n": self.contains_n,
        }


def _pairs(n: int, divs: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Pair weight -> members; the square root of a square stands alone."""
    out = {}
    for d in divs:
        e = n // d
        if d < e:
            out[d + e] = (d, e)
        elif d == e:
            out[d] = (d,)
    return out


def _solve(items: Sequence[int], target: int, n: int, cap: int, budget: int) -> list[int] | None:
    if n <= cap:
        return smallest_subset(items, target)
    return search_subset(items, target, budget)


def _feasible(items: Sequence[int], target: int, n: int, cap: int, budget: int) -> bool:
    if n <= cap:
        return reachable(items, target)
    return search_subset(items, target, budget) is not None


def _problem(f: Factorization, kind: TargetKind, symmetric: bool, require_one: bool, require_n: bool):
    """Reduce a certificate request to (items, target, forced members, expand)."""
    n = f.value
    divs = divisors(f)
    if kind is TargetKind.S0:
        if symmetric:
            raise ValueError("symmetric sets are S1 sets")
        if require_n:
            raise ValueError("S0 sets exclude n")
        target, pool = n, divs[:-1]
    else:
        target, pool = 2 * n, divs
    forced: list[int] = []
    if symmetric:
        pairs = _pairs(n, pool)
        if require_one or require_n:
            if n == 1:
                forced = [1]
                pairs.pop(1, None)
            else:
                forced = [1, n]
                pairs.pop(n + 1)
        target -= sum(forced)
        return list(pairs), target, forced, pairs
    if require_one:
        forced.append(1)
    if require_n and n != 1:
        forced.append(n)
    items = [d for d in pool if d not in forced]
    return items, target - sum(forced), forced, None


def find_certificate(
    f: Factorization,
    target_kind: TargetKind | str = TargetKind.S1,
    require_symmetric: bool = False,
    require_one: bool = False,
    require_n: bool = False,
    cap: int = DEFAULT_CAP,
    budget: int = DEFAULT_NODE_BUDGET,
) -> DivisorSetCertificate | None:
    """Witnessing divisor set, or None if none exists.

    Up to ``cap`` the bitset DP returns the lexicographically least member
    list; above it a budgeted branch and bound is used.
    """
    kind = TargetKind(target_kind)
    items, target, forced, pairs = _problem(f, kind, require_symmetric, require_one, require_n)
    chosen = _solve(items, target, f.value, cap, budget)
    if chosen is None:
        return None
    members = list(forced)
    for w in chosen:
        members.extend(pairs[w] if pairs is not None else (w,))
    return DivisorSetCertificate(f.value, tuple(members), kind)


def _has(f: Factorization, kind, symmetric, require_one, require_n, cap, budget) -> bool:
    items, target, _, _ = _problem(f, kind, symmetric, require_one, require_n)
    return _feasible(items, target, f.value, cap, budget)


# ---------------------------------------------------------------------------
# Arithmetic families
# ---------------------------------------------------------------------------


def prime_reciprocal_sum(f: Factorization) -> Fraction:
    return sum((Fraction(1, p) for p in f.primes), Fraction(0))


def sondow_mu(f: Factorization) -> int:
    """mu with sum_{p|n} n/p = -mu (mod n), taken in (-n/2, n/2]."""
    n = f.value
    r = (-sum(n // p for p in f.primes)) % n
    return r - n if r > n // 2 else r


def is_primary_pseudoperfect(f: Factorization) -> bool:
    return f.value > 1 and Fraction(1, f.value) + prime_reciprocal_sum(f) == 1


def is_weak_primary_pseudoperfect(f: Factorization) -> bool:
    s = Fraction(1, f.value) + prime_reciprocal_sum(f)
    return s.denominator == 1 and s >= 1


def is_giuga(f: Factorization) -> bool:
    s = prime_reciprocal_sum(f) - Fraction(1, f.value)
    return s.denominator == 1 and s >= 1


def near_perfect_divisor(f: Factorization) -> int | None:
    """The omitted proper divisor k with sigma(n) - n - k = n, if any."""
    n = f.value
    k = sigma(f) - 2 * n
    if 1 <= k < n and n % k == 0:
        return k
    return None


def is_primitive_non_deficient(f: Factorization) -> bool:
    """sigma(n) >= 2n and every proper divisor deficient.

    h is monotone under divisibility, so checking n/p for each prime p
    covers every proper divisor.
    """
    n = f.value
    if sigma(f) < 2 * n:
        return False
    for p, a in f.pairs:
        d = dict(f.pairs)
        d[p] = a - 1
        g = Factorization.from_dict(d)
        if sigma(g) >= 2 * g.value:
            return False
    return True


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass
class ClassificationFlags:
    n: int
    perfect: bool
    abundant: bool
    deficient: bool
    pseudoperfect: bool | None
    strongly_pseudoperfect: bool | None
    extremely_strongly_pseudoperfect: bool | None
    near_perfect: bool
    near_perfect_omitted: int | None
    primitive_non_deficient: bool
    primary_pseudoperfect: bool
    weak_primary_pseudoperfect: bool
    giuga: bool
    sondow_mu: int
    odd: bool

    def to_dict(self) -> dict:
        return asdict(self)


def classify(f: Factorization, cap: int = DEFAULT_CAP, budget: int = DEFAULT_NODE_BUDGET) -> ClassificationFlags:
    """Every flag for n. Subset-sum flags are None when n exceeds ``cap`` and
    the fallback search runs out of budget."""
    n = f.value
    s = sigma(f)
    perfect, abundant, deficient = s == 2 * n, s > 2 * n, s < 2 * n
    k = near_perfect_divisor(f)
    pseudo = strong = extreme = None
    if deficient:
        pseudo = strong = extreme = False
    elif perfect:
        pseudo = strong = extreme = True
    else:
        try:
            pseudo = _has(f, TargetKind.S0, False, False, False, cap, budget)
            strong = _has(f, TargetKind.S1, True, False, False, cap, budget)
            extreme = strong and _has(f, TargetKind.S1, True, True, True, cap, budget)
        except CapacityError:
            pass
    return ClassificationFlags(
        n=n,
        perfect=perfect,
        abundant=abundant,
        deficient=deficient,
        pseudoperfect=pseudo,
        strongly_pseudoperfect=strong,
        extremely_strongly_pseudoperfect=extreme,
        near_perfect=k is not None,
        near_perfect_omitted=k,
        primitive_non_deficient=is_primitive_non_deficient(f),
        primary_pseudoperfect=is_primary_pseudoperfect(f),
        weak_primary_pseudoperfect=is_weak_primary_pseudoperfect(f),
        giuga=is_giuga(f),
        sondow_mu=sondow_mu(f),
        odd=n % 2 == 1,
    )


def is_strongly_pseudoperfect(f: Factorization, cap: int = DEFAULT_CAP, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    if sigma(f) < 2 * f.value:
        return False
    return _has(f, TargetKind.S1, True, False, False, cap, budget)


def is_pseudoperfect(f: Factorization, cap: int = DEFAULT_CAP, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    if sigma(f) < 2 * f.value:
        return False
    return _has(f, TargetKind.S0, False, False, False, cap, budget)


SEARCH_FLAGS = (
    "perfect",
    "abundant",
    "deficient",
    "pseudoperfect",
    "strongly_pseudoperfect",
    "extremely_strongly_pseudoperfect",
    "near_perfect",
    "primitive_non_deficient",
    "primary_pseudoperfect",
    "weak_primary_pseudoperfect",
    "giuga",
)


def search(flag: str, max_n: int, min_n: int = 1, cap: int = DEFAULT_CAP) -> list[int]:
    """All n in [min_n, max_n] carrying ``flag``."""
    if flag not in SEARCH_FLAGS:
        raise ValueError(f"unknown flag {flag!r}")
    fast = {
        "strongly_pseudoperfect": is_strongly_pseudoperfect,
        "pseudoperfect": is_pseudoperfect,
        "giuga": is_giuga,
        "primary_pseudoperfect": is_primary_pseudoperfect,
        "weak_primary_pseudoperfect": is_weak_primary_pseudoperfect,
        "primitive_non_deficient": is_primitive_non_deficient,
        "near_perfect": lambda g: near_perfect_divisor(g) is not None,
    }
    out = []
    for f in factorizations_up_to(max_n):
        if f.value < min_n:
            continue
        n = f.value
        if flag in fast:
            fn = fast[flag]
            hit = fn(f, cap) if flag in ("strongly_pseudoperfect", "pseudoperfect") else fn(f)
        else:
            hit = getattr(classify(f, cap), flag)
        if hit:
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# Totient functionals and special constructions
# ---------------------------------------------------------------------------


def abc_functionals(cert: DivisorSetCertificate) -> tuple[float, float, float]:
    """A = sum d/(2n) log phi(d), B = log sum phi(d) d/(2n), C = log sum phi(n/d)/(2d)."""
    if cert.target_kind is not TargetKind.S1:
        raise ValueError("A, B, C are defined for S1 sets")
    if not cert.members:
        raise ValueError("empty set")
    n = cert.n
    phi = dict(divisors_with_totient(factorize(n)))
    A = math.fsum(d / (2 * n) * math.log(phi[d]) for d in cert.members)
    B = math.log(math.fsum(phi[d] * d / (2 * n) for d in cert.members))
    C = math.log(math.fsum(phi[n // d] / (2 * d) for d in cert.members))
    return A, B, C


def euclid_strong(m: int) -> Factorization:
    """Factorization of 2^(m-1) (2^m - 1)."""
    if not 2 <= m <= 62:
        raise ValueError("m must be in [2, 62]")
    return Factorization(((2, m - 1),)).times(factorize(2**m - 1))


def euclid_certificate(m: int) -> DivisorSetCertificate:
    """Explicit symmetric S1 set {2^i} u {2^i (2^m - 1)} for 2^(m-1)(2^m - 1)."""
    f = euclid_strong(m)
    q = 2**m - 1
    members = [2**i for i in range(m)] + [2**i * q for i in range(m)]
    return DivisorSetCertificate(f.value, tuple(members), TargetKind.S1)


@dataclass
class ObstructionReport:
    n: int
    mod4_is_3: bool
    mod3_is_2: bool
    large_prime: int | None

    @property
    def excluded(self) -> bool:
        return self.mod4_is_3 or self.mod3_is_2 or self.large_prime is not None


def obstruction_checks(f: Factorization) -> ObstructionReport:
    """Reasons n cannot be strongly pseudoperfect: a residue class, or a prime
    p dividing n exactly once with p > sigma(n/p)."""
    n = f.value
    big = None
    for p, a in f.pairs:
        if a == 1 and p > sigma(f.without(p)):
            big = p
            break
    return ObstructionReport(n, n % 4 == 3, n % 3 == 2, big)


# ---------------------------------------------------------------------------
# Spoofs
# ---------------------------------------------------------------------------


@dataclass
class SpoofResult:
    value: int
    sigma_formula: int
    is_spoof_perfect: bool


def spoof_sigma(pretend: Sequence[tuple[int, int]]) -> SpoofResult:
    """Apply the sigma product formula to bases treated as distinct primes."""
    value = 1
    sig = 1
    for base, e in pretend:
        if base == 0:
            raise ValueError("base 0 is not allowed")
        if e < 1:
            raise ValueError("exponents must be >= 1")
        value *= base**e
        sig *= sum(base**j for j in range(e + 1))
    return SpoofResult(value, sig, sig == 2 * value)


def parse_spoof(text: str) -> list[tuple[int, int]]:
    """Parse ``"3^2,7^2,(-19)^2,-127"`` into (base, exponent) pairs."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        base, _, exp = tok.partition("^")
        base = base.strip("()")
        out.append((int(base), int(exp) if exp else 1))
    return out


# ---------------------------------------------------------------------------
# Report-only scans
# ---------------------------------------------------------------------------


def question_scan(max_n: int, cap: int = DEFAULT_CAP) -> dict[str, list[int]]:
    """Empirical hits for three open questions; empty lists are reported, not proved."""
    near_and_strong, square_root_omitted, primary_and_strong = [], [], []
    for n in range(2, max_n + 1):
        f = factorize(n)
        k = near_perfect_divisor(f)
        if k is not None:
            if is_strongly_pseudoperfect(f, cap):
                near_and_strong.append(n)
            r = math.isqrt(n)
            if r * r == n and k == r:
                square_root_omitted.append(n)
        if is_primary_pseudoperfect(f) and is_strongly_pseudoperfect(f, cap):
            primary_and_strong.append(n)
    return {
        "near_perfect_and_strongly_pseudoperfect": near_and_strong,
        "square_near_perfect_omitting_root": square_root_omitted,
        "primary_and_strongly_pseudoperfect": primary_and_strong,
    }


# ---------------------------------------------------------------------------
# OEIS b-files
# ---------------------------------------------------------------------------


def read_bfile(path) -> list[tuple[int, int]]:
    """(index, value) pairs from a b-file; blank and '#' lines are skipped."""
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected 'index value'")
            out.append((int(parts[0]), int(parts[1])))
    return out


def first_divergence(expected: Sequence[int], computed: Sequence[int]) -> tuple[int, int | None, int | None] | None:
    """(position, expected, computed) at the first disagreement over the
    common prefix, or None when the shorter sequence is a prefix of the other."""
    for i, (a, b) in enumerate(zip(expected, computed)):
        if a != b:
            return i, a, b
    return None
