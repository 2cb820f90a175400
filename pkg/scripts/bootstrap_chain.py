"""Print the reverse-bootstrapping chain for the omega cap, with the f(k) start."""

import argparse
from dataclasses import dataclass

from zaremba.bounds import omega_bound_f, omega_start, reverse_bootstrap, rs_mertens_check, rs_prime_upper_check


@dataclass
class Config:
    threshold: float = 1.705
    start: int | None = None


def run(cfg: Config) -> None:
    k0 = omega_start(cfg.threshold) if cfg.start is None else cfg.start
    print(f"threshold {cfg.threshold}: start cap {k0}")
    if k0 >= 20:
        print(f"  f({k0}) = {omega_bound_f(k0):.6f}   f({k0 + 1}) = {omega_bound_f(k0 + 1):.6f}")
    print(f"{'cap':>4} {'prime':>6} {'z cap':>10} {'next':>5}  squares")
    for s in reverse_bootstrap(cfg.threshold, cfg.start):
        print(f"{s.omega_cap:>4} {s.prime_used:>6} {s.z_cap:>10.4f} {s.next_omega_cap:>5}  {s.squares_refinement}")
    print(f"prime-size estimate failures for 20 <= k <= 1e5: {rs_prime_upper_check(10**5)}")
    print(f"Mertens estimate failures for primes 29..293: {rs_mertens_check()}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--threshold", type=float, default=Config.threshold)
    p.add_argument("--start", type=int)
    a = p.parse_args()
    run(Config(a.threshold, a.start))
