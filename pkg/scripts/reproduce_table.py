"""Scan z and v record setters and compare them with the shipped table."""

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from zaremba.records import DEFAULT_MARGIN, load_table, scan_records, verify_golden_table, write_tsv

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    max_n: int = 950_000_000_000_000_000
    workers: int = os.cpu_count() or 1
    margin: float = DEFAULT_MARGIN
    table: Path = ROOT / "fixtures" / "records.tsv"
    out: Path | None = None


def run(cfg: Config) -> int:
    t0 = time.perf_counter()
    ambiguous = []
    entries = scan_records(cfg.max_n, cfg.margin, cfg.workers, ambiguous)
    elapsed = time.perf_counter() - t0
    if cfg.out:
        with open(cfg.out, "w") as fh:
            write_tsv(entries, fh)
    rep = verify_golden_table(load_table(cfg.table), entries)
    last_v = max(e.n for e in entries if e.record_type.v)
    print(f"records: {len(entries)}  scan time: {elapsed:.2f}s  workers: {cfg.workers}")
    print(f"largest v record: {last_v}")
    print(f"ambiguous candidates: {len(ambiguous)}")
    print(f"table rows checked: {rep.rows_checked}  mismatches: {len(rep.mismatches)}")
    for m in rep.mismatches:
        print(f"  n={m.n} {m.field}: table={m.expected} computed={m.computed}")
    return 0 if rep.ok else 2


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max", type=lambda s: int(float(s)) if "e" in s else int(s), default=Config.max_n)
    p.add_argument("--workers", type=int, default=Config.workers)
    p.add_argument("--margin", type=float, default=Config.margin)
    p.add_argument("--table", type=Path, default=Config.table)
    p.add_argument("--out", type=Path)
    a = p.parse_args()
    return run(Config(a.max, a.workers, a.margin, a.table, a.out))


if __name__ == "__main__":
    sys.exit(main())
