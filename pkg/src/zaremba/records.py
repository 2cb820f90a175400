"""Record setters of z and v over waterfall candidates, and table verification."""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Sequence, TextIO

from .arith import Factorization, factorizations_up_to, factorize, tau
from .waterfall import enumerate_waterfall, partitions
from .zfunc import z

DEFAULT_MARGIN = 1e-9
LARGEST_V_RECORD = 321253732800
FULL_TABLE_RANGE = 9 * 10**17
EXCEPTIONAL = 3
FIELDS = ("n", "z", "tau", "v", "record_type")


class RecordType(str, Enum):
    Z_ONLY = "z_only"
    V_ONLY = "v_only"
    BOTH = "both"

    @property
    def z(self) -> bool:
        return self is not RecordType.V_ONLY

    @property
    def v(self) -> bool:
        return self is not RecordType.Z_ONLY


@dataclass(frozen=True)
class RecordEntry:
    n: int
    z: float
    tau: int
    v: float | None
    record_type: RecordType

    def to_dict(self) -> dict:
        d = asdict(self)
        d["record_type"] = self.record_type.value
        return d


@dataclass(frozen=True)
class Ambiguity:
    n: int
    function: str
    value: float
    running_max: float


def _evaluate(pairs: Iterable[tuple[int, Factorization]]) -> list[tuple[int, float, int]]:
    return [(n, z(f), tau(f)) for n, f in pairs]


def _partition_task(args: tuple[int, int]) -> list[tuple[int, float, int]]:
    max_n, first = args
    return _evaluate(enumerate_waterfall(max_n, first))


def candidate_values(max_n: int, workers: int = 1) -> list[tuple[int, float, int]]:
    """(n, z(n), tau(n)) for waterfall n <= max_n plus 3, sorted by n.

    Work is split by leading primorial exponent; results are merged by n, so
    the output does not depend on ``workers``.
    """
    parts = partitions(max_n)
    if workers <= 1 or len(parts) <= 1:
        chunks = [_partition_task((max_n, a)) for a in parts]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(parts))) as ex:
            chunks = list(ex.map(_partition_task, [(max_n, a) for a in parts]))
    rows = [r for chunk in chunks for r in chunk]
    if max_n >= EXCEPTIONAL:
        rows.extend(_evaluate([(EXCEPTIONAL, factorize(EXCEPTIONAL))]))
    rows.sort(key=lambda r: r[0])
    return rows


def detect_records(
    rows: Sequence[tuple[int, float, int]],
    margin: float = DEFAULT_MARGIN,
    ambiguous: list[Ambiguity] | None = None,
) -> list[RecordEntry]:
    """Serial prefix-max pass over (n, z, tau) sorted by n.

    A value within ``margin`` of the running maximum is logged, not emitted.
    n = 1 takes part in z records only.
    """
    zmax = vmax = -math.inf
    out = []
    for n, zn, t in rows:
        vn = zn / math.log(t) if t > 1 else None
        zrec = _step(n, "z", zn, zmax, margin, ambiguous)
        zmax = max(zmax, zn)
        vrec = False
        if vn is not None:
            vrec = _step(n, "v", vn, vmax, margin, ambiguous)
            vmax = max(vmax, vn)
        if zrec or vrec:
            kind = RecordType.BOTH if zrec and vrec else (RecordType.Z_ONLY if zrec else RecordType.V_ONLY)
            out.append(RecordEntry(n, zn, t, vn, kind))
    return out


def _step(n, name, value, running, margin, log) -> bool:
    if value > running + margin:
        return True
    if abs(value - running) <= margin and log is not None:
        log.append(Ambiguity(n, name, value, running))
    return False


def scan_records(
    max_n: int,
    margin: float = DEFAULT_MARGIN,
    workers: int = 1,
    ambiguous: list[Ambiguity] | None = None,
) -> list[RecordEntry]:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if margin < 0:
        raise ValueError("margin must be >= 0")
    return detect_records(candidate_values(max_n, workers), margin, ambiguous)


def brute_force_records(max_n: int, margin: float = DEFAULT_MARGIN) -> list[RecordEntry]:
    """Same scan over every integer 1..max_n."""
    rows = [(f.value, z(f), tau(f)) for f in factorizations_up_to(max_n)]
    return detect_records(rows, margin)


def filter_function(entries: Sequence[RecordEntry], function: str) -> list[RecordEntry]:
    if function == "both":
        return list(entries)
    if function == "z":
        return [e for e in entries if e.record_type.z]
    if function == "v":
        return [e for e in entries if e.record_type.v]
    raise ValueError(f"function must be z, v or both, not {function!r}")


@dataclass
class VMaximum:
    last_v_record: int
    confirmed: bool | None
    full_range: bool


def confirm_v_maximum(max_n: int, workers: int = 1) -> VMaximum:
    """Largest v record up to ``max_n``.

    ``confirmed`` is None when the range stops short of 321253732800; below
    the full table range it only says the scan agrees so far.
    """
    entries = scan_records(max_n, workers=workers)
    last = max(e.n for e in entries if e.record_type.v)
    confirmed = None if max_n < LARGEST_V_RECORD else last == LARGEST_V_RECORD
    return VMaximum(last, confirmed, max_n >= FULL_TABLE_RANGE)


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def format_float(x: float | None, digits: int = 12) -> str:
    """Fixed-point with ``digits`` places after the point; None prints as '-'."""
    return "-" if x is None else f"{x:.{digits}f}"


def write_tsv(entries: Iterable[RecordEntry], fh: TextIO, digits: int = 12) -> None:
    fh.write("\t".join(FIELDS) + "\n")
    for e in entries:
        fh.write(f"{e.n}\t{format_float(e.z, digits)}\t{e.tau}\t{format_float(e.v, digits)}\t{e.record_type.value}\n")


def write_json(entries: Iterable[RecordEntry], fh: TextIO) -> None:
    json.dump([e.to_dict() for e in entries], fh, indent=1)
    fh.write("\n")


def read_tsv(fh: TextIO) -> list[RecordEntry]:
    reader = csv.DictReader(fh, delimiter="\t")
    missing = set(FIELDS) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"missing columns: {sorted(missing)}")
    out = []
    for row in reader:
        v = row["v"].strip()
        out.append(
            RecordEntry(
                n=int(row["n"]),
                z=float(row["z"]),
                tau=int(row["tau"]),
                v=None if v in ("-", "") else float(v),
                record_type=RecordType(row["record_type"].strip().lower()),
            )
        )
    return out


def load_table(path) -> list[RecordEntry]:
    with open(path, newline="") as fh:
        return read_tsv(fh)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class Mismatch:
    n: int
    field: str
    expected: object
    computed: object


@dataclass
class VerificationReport:
    rows_checked: int
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_golden_table(
    table: Sequence[RecordEntry], computed: Sequence[RecordEntry], tol: float = 1e-9
) -> VerificationReport:
    """Row-by-row comparison; computed rows past the table's last n are ignored."""
    if any(a.n >= b.n for a, b in zip(table, table[1:])):
        raise ValueError("table rows must be sorted by n")
    top = table[-1].n if table else 0
    comp = {e.n: e for e in computed if e.n <= top}
    report = VerificationReport(len(table))
    bad = report.mismatches.append
    for row in table:
        got = comp.pop(row.n, None)
        if got is None:
            bad(Mismatch(row.n, "n", row.n, None))
            continue
        if got.tau != row.tau:
            bad(Mismatch(row.n, "tau", row.tau, got.tau))
        if abs(got.z - row.z) > tol:
            bad(Mismatch(row.n, "z", row.z, got.z))
        if (row.v is None) != (got.v is None) or (row.v is not None and abs(got.v - row.v) > tol):
            bad(Mismatch(row.n, "v", row.v, got.v))
        if got.record_type is not row.record_type:
            bad(Mismatch(row.n, "record_type", row.record_type.value, got.record_type.value))
    for n in sorted(comp):
        bad(Mismatch(n, "n", None, n))
    return report
