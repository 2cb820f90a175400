"""Empirical scans around strongly pseudoperfect numbers.

Counts hits for three open questions and checks the A <= B and C > 0
properties over all certificates. Nothing here is a proof.
"""

import argparse
from dataclasses import dataclass

from zaremba.arith import factorizations_up_to, sigma
from zaremba.pseudoperfect import TargetKind, abc_functionals, find_certificate, question_scan, search


@dataclass
class Config:
    max_n: int = 10**5
    certificate_max: int = 10**4


def run(cfg: Config) -> None:
    for name, hits in question_scan(cfg.max_n).items():
        print(f"{name} (n <= {cfg.max_n}): {hits if hits else 'none found'}")

    strong = search("strongly_pseudoperfect", cfg.max_n)
    odd = [n for n in strong if n % 2]
    print(f"strongly pseudoperfect n <= {cfg.max_n}: {len(strong)}; odd: {odd[:10]}")

    a_gt_c = []
    worst_ab = -float("inf")
    for f in factorizations_up_to(cfg.certificate_max):
        if sigma(f) < 2 * f.value:
            continue
        c = find_certificate(f, TargetKind.S1)
        if c is None:
            continue
        A, B, C = abc_functionals(c)
        worst_ab = max(worst_ab, A - B)
        if A > C:
            a_gt_c.append(f.value)
    print(f"max A - B over least S1 certificates: {worst_ab:.3e}")
    print(f"A > C for {len(a_gt_c)} least certificates, first: {a_gt_c[:10]}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max", type=int, default=Config.max_n)
    p.add_argument("--certificate-max", type=int, default=Config.certificate_max)
    a = p.parse_args()
    run(Config(a.max, a.certificate_max))
