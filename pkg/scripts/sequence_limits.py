"""z along sequences with bounded abundancy, compared with 2 log 2."""

import argparse
import math
from dataclasses import dataclass

from zaremba.bounds import sequence_z_limits


@dataclass
class Config:
    count: int = 8
    start: int = 3


def run(cfg: Config) -> None:
    print(f"2 log 2 = {2 * math.log(2):.12f}")
    for kind, count in (("even_perfect", min(cfg.count, 8)), ("p_times_power_of_two", cfg.count),
                        ("prime_run_c", min(cfg.count, 4))):
        rep = sequence_z_limits(kind, count, cfg.start)
        print(f"\n{kind}  {rep.note}" + (f"  cap {rep.cap:.6f}" if rep.cap else ""))
        for f, zv in rep.members:
            print(f"  {f.value:>40}  z = {zv:.12f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--start", type=int, default=Config.start)
    a = p.parse_args()
    run(Config(a.count, a.start))
