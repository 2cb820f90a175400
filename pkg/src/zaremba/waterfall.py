"""Waterfall numbers as products of primorials.

A waterfall number 2^a1 3^a2 ... p_k^ak (a1 >= a2 >= ... >= ak >= 1) is
encoded by the exponents of successive primorials: ``[3, 0, 1]`` is
2^3 * 6^0 * 30^1 = 240. The empty list is 1.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .arith import MAX_VALUE, PRIMES, Factorization, OutOfRangeError, primorial

PrimorialExponents = tuple[int, ...]


def canonical(exponents: Sequence[int]) -> PrimorialExponents:
    """Drop trailing zeros; reject negative entries."""
    e = list(exponents)
    if any(x < 0 for x in e):
        raise ValueError("primorial exponents must be non-negative")
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def prime_exponents(exponents: Sequence[int]) -> list[int]:
    """a_i = sum of primorial exponents from position i onward."""
    out = []
    acc = 0
    for x in reversed(canonical(exponents)):
        acc += x
        out.append(acc)
    return out[::-1]


def to_value_and_factorization(exponents: Sequence[int]) -> tuple[int, Factorization]:
    a = prime_exponents(exponents)
    primes = PRIMES.first(len(a))
    value = 1
    for p, e in zip(primes, a):
        value *= p**e
        if value >= MAX_VALUE:
            raise OutOfRangeError("waterfall value exceeds the 127-bit range")
    return value, Factorization(tuple(zip(primes, a)))


def from_factorization(f: Factorization) -> PrimorialExponents:
    """Inverse of :func:`to_value_and_factorization` for waterfall input."""
    if not is_waterfall(f):
        raise ValueError(f"{f} is not a waterfall number")
    a = list(f.exponents) + [0]
    return tuple(a[i] - a[i + 1] for i in range(len(a) - 1))


def is_waterfall(f: Factorization) -> bool:
    k = len(f)
    if k == 0:
        return True
    if f.primes != tuple(PRIMES.first(k)):
        return False
    ex = f.exponents
    return all(ex[i] >= ex[i + 1] for i in range(k - 1))


def _max_depth(max_n: int) -> int:
    k = 0
    while primorial(k + 1) <= max_n:
        k += 1
    return k


def enumerate_exponents(max_n: int, first: int | None = None) -> Iterator[PrimorialExponents]:
    """Every canonical exponent list with value <= max_n, in recursion order.

    Each frame owns one slot: it repeatedly bumps that slot's exponent,
    emitting the list while the slot is non-zero, and before each bump
    recurses into a fresh trailing slot. With ``first`` set, only lists whose
    leading entry equals ``first`` are produced; the empty list belongs to
    partition 0. Partitions are disjoint and cover the full enumeration.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    depth = _max_depth(max_n)
    prims = [primorial(i + 1) for i in range(depth)]
    exps: list[int] = []

    def frame(value: int, fixed: bool) -> Iterator[PrimorialExponents]:
        i = len(exps) - 1
        while True:
            if exps[i]:
                yield tuple(exps)
            if i + 1 < depth and value * prims[i + 1] <= max_n:
                exps.append(0)
                yield from frame(value, False)
                exps.pop()
            if fixed or value * prims[i] > max_n:
                return
            value *= prims[i]
            exps[i] += 1

    if first is None:
        yield ()
        if depth:
            exps.append(0)
            yield from frame(1, False)
        return
    if first < 0:
        raise ValueError("partition index must be >= 0")
    if first == 0:
        yield ()
    if depth and 2**first <= max_n:
        exps.append(first)
        yield from frame(2**first, True)


def partitions(max_n: int) -> list[int]:
    """Leading-exponent values that label the non-empty partitions."""
    e = 0
    while 2 ** (e + 1) <= max_n:
        e += 1
    return list(range(e + 1))


def enumerate_waterfall(max_n: int, first: int | None = None) -> Iterator[tuple[int, Factorization]]:
    """Yield (value, factorization) for every waterfall number <= max_n.

    Order is recursion order, not sorted; see :func:`sorted_waterfall`.
    """
    for e in enumerate_exponents(max_n, first):
        yield to_value_and_factorization(e)


def sorted_waterfall(max_n: int) -> list[tuple[int, Factorization]]:
    return sorted(enumerate_waterfall(max_n), key=lambda t: t[0])
