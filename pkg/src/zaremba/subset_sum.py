"""Exact subset-sum over distinct positive integers, with witness extraction.

Bitsets are Python ints: bit s of a reach set is 1 when sum s is attainable.
"""

from __future__ import annotations

import math
from typing import Sequence

from .arith import CapacityError

DEFAULT_NODE_BUDGET = 2_000_000


def reachable(items: Sequence[int], target: int) -> bool:
    """True if some subset of ``items`` sums to ``target``."""
    if target < 0:
        return False
    if target == 0:
        return True
    total = sum(items)
    if total < target:
        return False
    if total == target:
        return True
    mask = (1 << (target + 1)) - 1
    reach = 1
    bit = 1 << target
    for w in sorted(items):
        if w > target:
            break
        reach |= (reach << w) & mask
        if reach & bit:
            return True
    return False


def _suffix(items: Sequence[int], lo: int, hi: int, base: int, mask: int) -> list[int]:
    """Reach sets R_lo..R_hi where R_i uses items[i:], given R_hi = base."""
    out = [0] * (hi - lo + 1)
    out[-1] = base
    r = base
    for i in range(hi - 1, lo - 1, -1):
        r |= (r << items[i]) & mask
        out[i - lo] = r
    return out


def smallest_subset(items: Sequence[int], target: int) -> list[int] | None:
    """Lexicographically smallest sorted subset of distinct ``items`` summing to ``target``.

    Greedy in ascending order: take an item whenever the remainder stays
    attainable from the items after it. Suffix reach sets are kept only at
    block boundaries (every ~sqrt(m) items) and rebuilt per block.
    """
    ws = sorted(items)
    if len(set(ws)) != len(ws):
        raise ValueError("items must be distinct")
    if target < 0:
        return None
    if target == 0:
        return []
    m = len(ws)
    mask = (1 << (target + 1)) - 1
    block = max(1, math.isqrt(m))
    starts = list(range(0, m, block))
    checkpoints: dict[int, int] = {m: 1}
    r = 1
    for s in reversed(starts):
        end = min(s + block, m)
        for i in range(end - 1, s - 1, -1):
            r |= (r << ws[i]) & mask
        checkpoints[s] = r
    if not (checkpoints[0] >> target) & 1:
        return None

    chosen = []
    t = target
    for s in starts:
        end = min(s + block, m)
        local = _suffix(ws, s, end, checkpoints[end], mask)
        for i in range(s, end):
            w = ws[i]
            if w <= t and (local[i + 1 - s] >> (t - w)) & 1:
                chosen.append(w)
                t -= w
                if t == 0:
                    return chosen
    return chosen if t == 0 else None


def search_subset(items: Sequence[int], target: int, budget: int = DEFAULT_NODE_BUDGET) -> list[int] | None:
    """Branch and bound over items in descending order, take-first.

    Exact when it returns: a list is a witness and None means no subset
    exists. Raises CapacityError if ``budget`` nodes are exhausted first.
    Witnesses are deterministic but not necessarily lexicographically least.
    """
    ws = sorted(items, reverse=True)
    m = len(ws)
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ws[i]
    failed: set[tuple[int, int]] = set()
    nodes = 0
    chosen: list[int] = []

    def go(i: int, t: int) -> bool:
        nonlocal nodes
        if t == 0:
            return True
        if i == m or suffix[i] < t or (i, t) in failed:
            return False
        if suffix[i] == t:
            chosen.extend(ws[i:])
            return True
        nodes += 1
        if nodes > budget:
            raise CapacityError(f"subset search exceeded {budget} nodes")
        w = ws[i]
        if w <= t:
            chosen.append(w)
            if go(i + 1, t - w):
                return True
            chosen.pop()
        if go(i + 1, t):
            return True
        failed.add((i, t))
        return False

    if target < 0:
        return None
    return sorted(chosen) if go(0, target) else None
