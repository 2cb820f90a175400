"""Zaremba's function, waterfall record setters, bounds and pseudoperfect numbers."""

from .arith import Factorization, divisors, factorize, sigma, tau, totient
from .zfunc import v, z, z_direct, z_rearranged

__all__ = [
    "Factorization",
    "divisors",
    "factorize",
    "sigma",
    "tau",
    "totient",
    "v",
    "z",
    "z_direct",
    "z_rearranged",
]
