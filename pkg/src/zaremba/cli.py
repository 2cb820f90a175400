"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification mismatch.
Errors go to stderr as ``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from decimal import Decimal, InvalidOperation
from typing import Sequence

from . import arith, bounds, inequalities, pseudoperfect, records, waterfall, zfunc
from .arith import MAX_INPUT, factorize

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int(text: str) -> int:
    """Integer from '360', '1e12', '9.5e17' or '2**40'; non-integral values are rejected."""
    s = text.strip().replace("_", "")
    if "**" in s:
        base, _, exp = s.partition("**")
        return parse_int(base) ** parse_int(exp)
    try:
        d = Decimal(s)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def positive_int(text: str) -> int:
    n = parse_int(text)
    if not 1 <= n < MAX_INPUT:
        raise argparse.ArgumentTypeError(f"{text!r} outside [1, 2**63)")
    return n


def float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


class Output:
    def __init__(self, fmt: str, digits: int, stream=None):
        self.fmt = fmt
        self.digits = digits
        self.stream = stream or sys.stdout

    def num(self, x) -> str:
        if isinstance(x, float):
            return records.format_float(x, self.digits)
        if x is None:
            return "-"
        return str(x)

    def table(self, header: Sequence[str], rows: Sequence[Sequence]) -> None:
        if self.fmt == "json":
            json.dump([dict(zip(header, r)) for r in rows], self.stream, indent=1)
            self.stream.write("\n")
            return
        self.stream.write("\t".join(header) + "\n")
        for r in rows:
            self.stream.write("\t".join(self.num(x) for x in r) + "\n")

    def value(self, x) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(x) + "\n")
        else:
            self.stream.write(self.num(x) + "\n")

    def mapping(self, d: dict) -> None:
        if self.fmt == "json":
            json.dump(d, self.stream, indent=1, default=str)
            self.stream.write("\n")
            return
        for k, v in d.items():
            if isinstance(v, (list, tuple)):
                v = ",".join(self.num(x) for x in v)
            self.stream.write(f"{k}\t{self.num(v)}\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_z(args, out: Output) -> int:
    f = factorize(args.n)
    out.value(zfunc.z_direct(f) if args.direct else zfunc.z(f))
    return EXIT_OK


def cmd_v(args, out: Output) -> int:
    out.value(zfunc.v(factorize(args.n)))
    return EXIT_OK


def cmd_zsum(args, out: Output) -> int:
    total, main = zfunc.z_partial_sum(args.x, cap=args.zsum_cap)
    c = zfunc.minus_zeta_prime_2()
    out.mapping({
        "x": args.x,
        "sum": total,
        "x_times_minus_zeta_prime_2": main,
        "mean": total / args.x,
        "minus_zeta_prime_2": c,
        "deviation": total / args.x - c,
    })
    return EXIT_OK


def cmd_factor(args, out: Output) -> int:
    f = factorize(args.n)
    h, H = arith.h_and_H(f)
    out.mapping({
        "n": f.value,
        "factorization": str(f),
        "tau": arith.tau(f),
        "sigma": arith.sigma(f),
        "phi": arith.totient(f),
        "h": float(h),
        "H": float(H),
        "waterfall": waterfall.is_waterfall(f),
    })
    return EXIT_OK


def cmd_bounds(args, out: Output) -> int:
    rep = bounds.bound_report(factorize(args.n))
    if out.fmt == "json":
        out.mapping(rep.to_dict())
    else:
        out.stream.write(f"# n={rep.n} z={out.num(rep.z)}\n")
        out.table(
            ["source", "kind", "value", "applicable", "reason"],
            [(e.source, e.kind, e.value, e.applicable, e.reason) for e in rep.entries],
        )
    return EXIT_OK


def cmd_bootstrap(args, out: Output) -> int:
    steps = bounds.reverse_bootstrap(args.threshold, args.start)
    out.table(
        ["omega_cap", "prime_used", "z_cap", "next_omega_cap", "squares_refinement"],
        [(s.omega_cap, s.prime_used, s.z_cap, s.next_omega_cap, s.squares_refinement) for s in steps],
    )
    return EXIT_OK


def _extra(args) -> dict:
    extra = {}
    if args.a is not None:
        extra["a"] = args.a
    if args.A is not None:
        extra["A"] = args.A
    if args.f is not None:
        extra["f"] = args.f
    return extra


def cmd_ineq(args, out: Output) -> int:
    variants = [inequalities.Variant(args.variant)] if args.variant else list(inequalities.Variant)
    if args.random:
        rng = random.Random(args.seed)
        counts = {v.value: [0, 0] for v in variants}
        for _ in range(args.random):
            w = inequalities.random_system(rng, rng.randint(1, args.dim))
            for var in variants:
                sysw, extra = w, {}
                if var is inequalities.Variant.KY_FAN:
                    top = max(w.values)
                    sysw = inequalities.WeightedSystem(w.weights, tuple(x / (2 * top) for x in w.values))
                elif var is inequalities.Variant.LEVINSON:
                    extra = {"a": max(w.values) * 1.5}
                res = inequalities.check_inequality(var, sysw, **extra)
                counts[var.value][0] += 1
                counts[var.value][1] += not res.holds
        out.table(["variant", "checked", "violations"], [(k, c, b) for k, (c, b) in counts.items()])
        return EXIT_OK
    if args.weights is None or args.values is None:
        raise UsageError("ineq needs --weights and --values, or --random COUNT")
    w = inequalities.WeightedSystem.normalized(args.weights, args.values)
    rows = []
    for var in variants:
        try:
            res = inequalities.check_inequality(var, w, **_extra(args))
        except ValueError as exc:
            if args.variant:
                raise
            rows.append((var.value, None, None, f"n/a: {exc}"))
            continue
        rows.append((var.value, res.lhs, res.rhs, res.holds))
    out.table(["variant", "lhs", "rhs", "holds"], rows)
    return EXIT_OK


def cmd_waterfall(args, out: Output) -> int:
    if args.count:
        out.value(sum(1 for _ in waterfall.enumerate_exponents(args.max)))
        return EXIT_OK
    rows = []
    for n, f in waterfall.sorted_waterfall(args.max):
        rows.append((n, ",".join(map(str, waterfall.from_factorization(f))), str(f)))
    out.table(["n", "primorial_exponents", "factorization"], rows)
    return EXIT_OK


def _scan(args):
    amb: list[records.Ambiguity] = []
    entries = records.scan_records(args.max, args.margin, args.workers, amb)
    for a in amb:
        print(f"ambiguous: {a.function}: n={a.n} value={a.value!r} running_max={a.running_max!r}", file=sys.stderr)
    return entries


def cmd_records(args, out: Output) -> int:
    entries = records.filter_function(_scan(args), args.function)
    if out.fmt == "json":
        records.write_json(entries, out.stream)
    else:
        records.write_tsv(entries, out.stream, out.digits)
    return EXIT_OK


def cmd_verify_table(args, out: Output) -> int:
    table = records.load_table(args.path)
    if not table:
        raise UsageError(f"{args.path} has no rows")
    if args.max is None:
        args.max = table[-1].n
    computed = _scan(args)
    rep = records.verify_golden_table(table, computed, args.tol)
    for m in rep.mismatches:
        out.stream.write(f"mismatch\t{m.n}\t{m.field}\t{out.num(m.expected)}\t{out.num(m.computed)}\n")
    status = "ok" if rep.ok else "FAIL"
    out.stream.write(f"{status}\trows={rep.rows_checked}\tmismatches={len(rep.mismatches)}\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_classify(args, out: Output) -> int:
    f = factorize(args.n)
    flags = pseudoperfect.classify(f, cap=args.cap)
    d = flags.to_dict()
    if args.certificates:
        kinds = [
            ("certificate_pseudoperfect", dict(target_kind="S0_proper_sum_n")),
            ("certificate_strongly", dict(require_symmetric=True)),
            ("certificate_extremely_strongly", dict(require_symmetric=True, require_one=True, require_n=True)),
        ]
        for name, kw in kinds:
            try:
                cert = None if flags.deficient else pseudoperfect.find_certificate(f, cap=args.cap, **kw)
            except arith.CapacityError as exc:
                d[name] = f"unknown: {exc}"
                continue
            d[name] = list(cert.members) if cert else None
    out.mapping(d)
    return EXIT_OK


def cmd_search(args, out: Output) -> int:
    hits = pseudoperfect.search(args.flag, args.max, args.min, cap=args.cap)
    if args.oeis_bfile:
        terms = [v for _, v in pseudoperfect.read_bfile(args.oeis_bfile)]
        # a b-file is a finite prefix: compare only up to its last term
        top = min(args.max, max(terms, default=0))
        ref = [v for v in terms if args.min <= v <= top]
        hits = [n for n in hits if n <= top]
        div = pseudoperfect.first_divergence(ref, hits)
        if div is None and len(ref) != len(hits):
            k = min(len(ref), len(hits))
            div = (k, ref[k] if k < len(ref) else None, hits[k] if k < len(hits) else None)
        if div is not None:
            i, a, b = div
            out.stream.write(f"divergence\tposition={i}\tbfile={out.num(a)}\tcomputed={out.num(b)}\n")
            return EXIT_MISMATCH
        out.stream.write(f"ok\tmatched={len(hits)}\n")
        return EXIT_OK
    out.table(["n"], [(n,) for n in hits])
    return EXIT_OK


def cmd_spoof(args, out: Output) -> int:
    res = pseudoperfect.spoof_sigma(pseudoperfect.parse_spoof(args.factors))
    out.mapping({"value": res.value, "sigma_formula": res.sigma_formula, "is_spoof_perfect": res.is_spoof_perfect})
    return EXIT_OK


def cmd_sondow(args, out: Output) -> int:
    f = factorize(args.n)
    out.mapping({
        "n": f.value,
        "mu": pseudoperfect.sondow_mu(f),
        "primary_pseudoperfect": pseudoperfect.is_primary_pseudoperfect(f),
        "weak_primary_pseudoperfect": pseudoperfect.is_weak_primary_pseudoperfect(f),
        "giuga": pseudoperfect.is_giuga(f),
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--digits", type=int, default=12, help="digits after the decimal point")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--sieve-cap", type=parse_int, default=arith.DEFAULT_SIEVE_CAP)
    common.add_argument("--cap", type=parse_int, default=pseudoperfect.DEFAULT_CAP,
                        help="largest n for exact subset-sum classification")

    p = _Parser(prog="zaremba", description="Zaremba's function, record setters and pseudoperfect numbers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("z", cmd_z, "z(n) = sum over d | n of log(d)/d")
    sp.add_argument("n", type=positive_int)
    sp.add_argument("--direct", action="store_true", help="sum over divisors instead of the product form")

    add("v", cmd_v, "z(n)/log tau(n)").add_argument("n", type=positive_int)

    sp = add("zsum", cmd_zsum, "partial sum of z up to x")
    sp.add_argument("x", type=positive_int)
    sp.add_argument("--zsum-cap", type=parse_int, default=zfunc.PARTIAL_SUM_CAP)

    add("factor", cmd_factor, "factorization and divisor functions").add_argument("n", type=positive_int)
    add("bounds", cmd_bounds, "upper and lower bounds for z(n)").add_argument("n", type=positive_int)

    sp = add("bootstrap", cmd_bootstrap, "reverse bootstrapping of the omega cap")
    sp.add_argument("--threshold", type=float, default=1.705)
    sp.add_argument("--start", type=int, default=None)

    sp = add("ineq", cmd_ineq, "weighted AM-GM and refinements")
    sp.add_argument("--variant", choices=[v.value for v in inequalities.Variant])
    sp.add_argument("--weights", type=float_list)
    sp.add_argument("--values", type=float_list)
    sp.add_argument("--a", type=float)
    sp.add_argument("--A", type=float)
    sp.add_argument("--f", choices=sorted(inequalities.LEVINSON_FUNCTIONS))
    sp.add_argument("--random", type=int, default=0, metavar="COUNT")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=8)

    sp = add("waterfall", cmd_waterfall, "waterfall numbers up to --max")
    sp.add_argument("--max", type=positive_int, required=True)
    sp.add_argument("--count", action="store_true")

    sp = add("records", cmd_records, "z and v record setters")
    sp.add_argument("--max", type=positive_int, required=True)
    sp.add_argument("--function", choices=("z", "v", "both"), default="both")
    sp.add_argument("--margin", type=float, default=records.DEFAULT_MARGIN)

    sp = add("verify-table", cmd_verify_table, "compare a record table with a fresh scan")
    sp.add_argument("path")
    sp.add_argument("--max", type=positive_int, default=None)
    sp.add_argument("--margin", type=float, default=records.DEFAULT_MARGIN)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("classify", cmd_classify, "pseudoperfect-family flags")
    sp.add_argument("n", type=positive_int)
    sp.add_argument("--certificates", action="store_true")

    sp = add("search", cmd_search, "all n up to --max with a flag")
    sp.add_argument("--flag", choices=pseudoperfect.SEARCH_FLAGS, required=True)
    sp.add_argument("--max", type=positive_int, required=True)
    sp.add_argument("--min", type=positive_int, default=1)
    sp.add_argument("--oeis-bfile", default=None)

    sp = add("spoof", cmd_spoof, "formal sigma of a spoof factorization")
    sp.add_argument("--factors", required=True, help='e.g. "3^2,7^2,11^2,13^2,22021"')

    add("sondow", cmd_sondow, "mu-Sondow value, primary pseudoperfect and Giuga tests").add_argument(
        "n", type=positive_int
    )
    return p


def _error(kind: str, msg: str) -> None:
    print(f"error: {kind}: {msg}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _error("usage", str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.digits < 0 or args.workers < 1:
        _error("usage", "--digits must be >= 0 and --workers >= 1")
        return EXIT_USAGE
    arith.set_sieve_cap(args.sieve_cap)
    out = Output(args.format, args.digits)
    try:
        return args.func(args, out)
    except UsageError as exc:
        _error("usage", str(exc))
    except arith.UndefinedError as exc:
        _error("undefined", str(exc))
    except arith.OutOfRangeError as exc:
        _error("range", str(exc))
    except arith.CapacityError as exc:
        _error("capacity", str(exc))
    except (OSError, ValueError) as exc:
        _error("input", str(exc))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
