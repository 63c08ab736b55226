"""Command-line surface: counting, enumeration, verification, canonicalization.

Exit codes: 0 all checks pass, 1 a verification found a counterexample,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import canonical
from .canonical import parse_circuit
from .census import (DEFAULT_SEED, VerificationReport,
                     count_sets, count_tdepth_one, count_tuples,
                     emit_table, enumerate_sets, growth_check,
                     verify_distinctness, verify_hamming_weight,
                     verify_oracle, verify_spectrum, verify_unit_rows)
from .clifford import group_order
from .pauli import PauliSet


def _seed_arg(value: str) -> int:
    """Integer seed, or the literal word "random" for a fresh one."""
    if value == "random":
        return random.SystemRandom().randrange(1 << 31)
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"seed must be an integer or 'random', got {value!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tcanon",
        description="Exact census and canonical forms of T-depth-one "
                    "Clifford+T unitaries.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="counting formulas for one (n, m) or all m")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--tcount", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="per-size census table (TSV)")
    p.add_argument("--max-qubits", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("enumerate", help="stream every set, one per line")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--tcount", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true")

    p = sub.add_parser("verify", help="machine-check one of the lemmas")
    p.add_argument("check", choices=["distinctness", "unit-rows",
                                     "hamming-weight", "spectrum", "oracle"])
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=_seed_arg, default=DEFAULT_SEED)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--kmax", type=int, default=3,
                   help="largest family size for hamming-weight")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("growth", help="witness the 2^(n^2) lower bound")
    p.add_argument("--max-qubits", type=int, default=16)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("canonicalize", help="normalize a layered circuit file")
    p.add_argument("--in", dest="infile", default=None,
                   help="circuit file (default: stdin)")
    p.add_argument("--out", default=None)
    return top


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_count(args) -> int:
    n = args.qubits
    if args.tcount is not None:
        m = args.tcount
        row = {"n": n, "m": m, "tuples": count_tuples(n, m),
               "sets": count_sets(n, m), "clifford_order": group_order(n),
               "unitaries": count_sets(n, m) * group_order(n)}
        if args.json:
            print(json.dumps(row, indent=2))
        else:
            for k, v in row.items():
                print(f"{k}\t{v}")
        return 0
    g, total = count_tdepth_one(n)
    rows = {"n": n, "clifford_order": group_order(n),
            "sets_per_tcount": {str(m): count_sets(n, m)
                                for m in range(1, n + 1)},
            "total_classes": g, "total_unitaries": total}
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"n\t{n}")
        print(f"clifford_order\t{group_order(n)}")
        for m in range(1, n + 1):
            print(f"tcount_{m}\t{count_sets(n, m)}")
        print(f"total_classes\t{g}")
        print(f"total_unitaries\t{total}")
    return 0


def _cmd_enumerate(args) -> int:
    stream = enumerate_sets(args.qubits, args.tcount,
                            allow_large=args.allow_large,
                            workers=args.workers)

    def lines():
        for s in stream:
            yield ", ".join(p.to_string() for p in s) + "\n"

    if args.out is None:
        for line in lines():
            sys.stdout.write(line)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            for line in lines():
                fh.write(line)
    return 0


def _report_out(report: VerificationReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.summary())
        for f in report.failures:
            print(f"  counterexample: {f}")
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    n = args.qubits
    mode = "exhaustive" if args.exhaustive else "sampled"
    if args.check == "distinctness":
        trials = 1000 if args.trials is None else args.trials
        report = verify_distinctness(n, mode=mode, trials=trials,
                                     seed=args.seed)
    elif args.check == "unit-rows":
        trials = 100 if args.trials is None else args.trials
        report = verify_unit_rows(n, trials=trials, seed=args.seed)
    elif args.check == "hamming-weight":
        report = verify_hamming_weight(n, k_max=args.kmax)
    elif args.check == "spectrum":
        trials = 500 if args.trials is None else args.trials
        report = verify_spectrum(n, mode=mode, trials=trials, seed=args.seed)
    else:
        trials = 100 if args.trials is None else args.trials
        report = verify_oracle(n, trials=trials, seed=args.seed)
    return _report_out(report, args.json)


def _cmd_canonicalize(args) -> int:
    if args.infile is None:
        text = sys.stdin.read()
    else:
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    circ = parse_circuit(text)
    if circ.depth <= 1:
        if circ.depth == 0:
            form = canonical.CanonicalForm(
                PauliSet.empty(circ.n), circ.cliffords[0])
        else:
            form = canonical.canonicalize_depth_one(
                circ.cliffords[0], circ.layers[0], circ.cliffords[1])
        out = form.render() + f"\ntcount: {form.m}\n"
    else:
        sets, tail = canonical.canonicalize_depth_d(circ)
        lines = []
        for k, s in enumerate(sets, start=1):
            body = ", ".join(p.to_string() for p in s)
            lines.append(f"layer {k}: {body}")
        from .clifford import CliffordTableau
        if tail == CliffordTableau.identity(circ.n):
            lines.append("C: id")
        else:
            lines.append("C: " + ", ".join(tail.to_strings()))
        lines.append(f"tgates: {sum(len(s) for s in sets)}")
        out = "\n".join(lines) + "\n"
    _write(out, args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "table":
            _write(emit_table(args.max_qubits), args.out)
            return 0
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "growth":
            return _report_out(growth_check(args.max_qubits), args.json)
        if args.command == "canonicalize":
            return _cmd_canonicalize(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
