"""Weighted AM-GM and its refinements as numeric predicates.

Each variant maps a weighted system to a pair (lhs, rhs) such that the
inequality reads ``lhs <= rhs``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

SLACK = 1e-12


class Variant(str, Enum):
    WEIGHTED_AM_GM = "weighted_am_gm"
    ALDAZ_2008 = "aldaz_2008"
    ALDAZ_SQ_DEFICIT = "aldaz_sq_deficit"
    SABABHEH = "sababheh"
    KY_FAN = "ky_fan"
    LEVINSON = "levinson"
    JENSEN_LOGX_PLUS_A_OVER_2X = "jensen_logx_plus_A_over_2x"


@dataclass(frozen=True)
class WeightedSystem:
    weights: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        x = tuple(float(v) for v in self.values)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "values", x)
        if not w or len(w) != len(x):
            raise ValueError("weights and values must be non-empty and of equal length")
        if any(a <= 0 for a in w) or any(v <= 0 for v in x):
            raise ValueError("weights and values must be positive")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {math.fsum(w)!r}, not 1")

    @classmethod
    def normalized(cls, weights: Sequence[float], values: Sequence[float]) -> "WeightedSystem":
        s = math.fsum(weights)
        return cls(tuple(a / s for a in weights), tuple(values))

    @property
    def arithmetic(self) -> float:
        return math.fsum(a * x for a, x in zip(self.weights, self.values))

    @property
    def geometric(self) -> float:
        return math.exp(math.fsum(a * math.log(x) for a, x in zip(self.weights, self.values)))


@dataclass
class InequalityResult:
    lhs: float
    rhs: float
    holds: bool
    detail: dict = field(default_factory=dict)


def _holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + SLACK * max(1.0, abs(lhs), abs(rhs))


def _am_gm(w: WeightedSystem) -> tuple[float, float]:
    return w.geometric, w.arithmetic


def _aldaz_2008(w: WeightedSystem) -> tuple[float, float]:
    # log A >= log G + 2(1 - sum a sqrt(x) / sqrt(A)), exponentiated
    A = w.arithmetic
    s = math.fsum(a * math.sqrt(x) for a, x in zip(w.weights, w.values))
    return w.geometric, A * math.exp(-2.0 * (1.0 - s / math.sqrt(A)))


def _aldaz_sq_deficit(w: WeightedSystem) -> tuple[float, float]:
    # G <= A - sum a (sqrt(x) - sum a sqrt(x))^2
    s = math.fsum(a * math.sqrt(x) for a, x in zip(w.weights, w.values))
    var = math.fsum(a * (math.sqrt(x) - s) ** 2 for a, x in zip(w.weights, w.values))
    return w.geometric, w.arithmetic - var


def _unweighted_ratio(w: WeightedSystem) -> float:
    n = len(w.values)
    am = math.fsum(w.values) / n
    gm = math.exp(math.fsum(math.log(x) for x in w.values) / n)
    return max(am / gm, 1.0)


def _sababheh(w: WeightedSystem) -> tuple[float, float]:
    # (A/G)^{n a_min} G_w <= A_w, with A, G the unweighted means
    n = len(w.values)
    r = _unweighted_ratio(w)
    return w.geometric, w.arithmetic / r ** (n * min(w.weights))


def _sababheh_upper(w: WeightedSystem) -> tuple[float, float]:
    # A_w <= (A/G)^{n a_max} G_w
    n = len(w.values)
    r = _unweighted_ratio(w)
    return w.arithmetic, w.geometric * r ** (n * max(w.weights))


def _ky_fan(w: WeightedSystem) -> tuple[float, float]:
    if any(x > 0.5 for x in w.values):
        raise ValueError("ky_fan requires every value <= 1/2")
    comp = WeightedSystem(w.weights, tuple(1.0 - x for x in w.values))
    return w.geometric / comp.geometric, w.arithmetic / comp.arithmetic


LEVINSON_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "log": math.log,
    "cube": lambda t: t**3,
    "exp": math.exp,
}


def _levinson(w: WeightedSystem, a: float, fn: str = "log") -> tuple[float, float]:
    if a <= 0 or any(x >= a for x in w.values):
        raise ValueError("levinson requires a > 0 and every value in (0, a)")
    f = LEVINSON_FUNCTIONS[fn]
    lhs = math.fsum(al * f(x) for al, x in zip(w.weights, w.values)) - f(w.arithmetic)
    mirrored = [2 * a - x for x in w.values]
    rhs = math.fsum(al * f(y) for al, y in zip(w.weights, mirrored)) - f(
        math.fsum(al * y for al, y in zip(w.weights, mirrored))
    )
    return lhs, rhs


def _jensen_shifted(w: WeightedSystem, A: float) -> tuple[float, float]:
    # f(x) = log x + A/(2x) is concave on [A, inf)
    if A <= 0 or any(x < A for x in w.values):
        raise ValueError("jensen_logx_plus_A_over_2x requires every value >= A > 0")
    lhs = math.fsum(a * (math.log(x) + A / (2 * x)) for a, x in zip(w.weights, w.values))
    m = w.arithmetic
    return lhs, math.log(m) + A / (2 * m)


def check_inequality(variant: Variant | str, w: WeightedSystem, **extra) -> InequalityResult:
    """Evaluate one inequality on ``w``.

    Extra parameters: ``a`` (and optional ``f`` in log/cube/exp) for
    levinson, ``A`` for jensen_logx_plus_A_over_2x. The sababheh variant
    also checks the matching upper estimate; ``holds`` covers both sides.
    """
    variant = Variant(variant)
    detail: dict = {}
    if variant is Variant.WEIGHTED_AM_GM:
        lhs, rhs = _am_gm(w)
    elif variant is Variant.ALDAZ_2008:
        lhs, rhs = _aldaz_2008(w)
    elif variant is Variant.ALDAZ_SQ_DEFICIT:
        lhs, rhs = _aldaz_sq_deficit(w)
    elif variant is Variant.SABABHEH:
        lhs, rhs = _sababheh(w)
        ul, ur = _sababheh_upper(w)
        detail = {"upper_lhs": ul, "upper_rhs": ur, "upper_holds": _holds(ul, ur)}
    elif variant is Variant.KY_FAN:
        lhs, rhs = _ky_fan(w)
    elif variant is Variant.LEVINSON:
        if "a" not in extra:
            raise ValueError("levinson needs the interval parameter a")
        lhs, rhs = _levinson(w, float(extra["a"]), extra.get("f", "log"))
    else:
        A = extra.get("A", min(w.values))
        lhs, rhs = _jensen_shifted(w, float(A))
    holds = _holds(lhs, rhs) and detail.get("upper_holds", True)
    return InequalityResult(lhs, rhs, holds, detail)


def random_system(rng, dim: int, lo: float = 1e-3, hi: float = 1e3) -> WeightedSystem:
    """Seeded corpus member: Dirichlet-ish weights, log-uniform values."""
    raw = [rng.random() + 1e-9 for _ in range(dim)]
    values = [math.exp(rng.uniform(math.log(lo), math.log(hi))) for _ in range(dim)]
    return WeightedSystem.normalized(raw, values)
