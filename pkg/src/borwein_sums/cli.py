"""Command-line entry point: ``borwein-sums <command> [options]``.

Exit status: 0 success, 2 verification failure, 3 budget exceeded,
4 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import charsieve, formats, progression, spectral, theorems
from .errors import BudgetExceededError, InvalidSpecError, VerificationError
from .polycore import ProductSpec, expand_product, resolve_budget

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4

MSUM_FIELDS = ["p", "s", "n", "b", "m_direct", "m_charsum", "modulus"]
RECURSION_FIELDS = ["n", "ok", "name", "index", "expected", "actual"]
TREND_FIELDS = ["p", "s", "n", "max_abs_coeff", "log_p_ratio", "supnorm_estimate", "samples", "ok"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _residue(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generated-at header")
    common.add_argument("--budget", type=int, default=None,
                        help="coefficient cap (default: $BORWEIN_BUDGET or 2**26)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--verbose", "-v", action="store_true")

    parser = _Parser(prog="borwein-sums", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="coefficients of T_{p,s,n}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("msum", parents=[common], help="progression sums M(b)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=_residue, default="all")
    p.add_argument("--method", choices=["direct", "charsum", "both"], default="both")
    p.add_argument("--ell", type=int, default=None,
                   help="sum over residues mod p*ell (default ell = n+1; other values: direct only)")

    p = sub.add_parser("verify", parents=[common], help="check the bound and sign theorems on a grid")
    p.add_argument("--suite", choices=["main1", "signs", "all"], default="all")
    p.add_argument("--p", type=_int_list, default=[3, 5])
    p.add_argument("--s", type=_int_list, default=[1, 2])
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--method", choices=["direct", "both"], default="both")

    p = sub.add_parser("maxcoeff", parents=[common], help="max |t_i| trend table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("supnorm", parents=[common], help="sampled sup norm on |q| = 1")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--no-refine", action="store_true")

    p = sub.add_parser("recursions", parents=[common], help="Andrews recursions for A_n, B_n, C_n")
    p.add_argument("--n-max", type=int, default=8)
    return parser


# -- command handlers: each returns (payload for JSON, csv rows, csv fields, ok) --


def _cmd_expand(args, budget):
    spec = ProductSpec(args.p, args.s, args.n)
    poly = expand_product(spec, budget)
    rows = [{"i": i, "coeff": str(c)} for i, c in enumerate(poly.coeffs)]
    return formats.coefficient_dump(spec, poly), rows, ["i", "coeff"], True


def _cmd_msum(args, budget):
    spec = ProductSpec(args.p, args.s, args.n)
    ell = spec.n + 1 if args.ell is None else args.ell
    modulus = spec.p * ell
    if ell != spec.n + 1 and args.method != "direct":
        raise UsageError("the character-sum method only covers ell = n+1; use --method direct")
    if args.b == "all":
        residues = range(modulus)
    elif 0 <= args.b < modulus:
        residues = [args.b]
    else:
        raise UsageError(f"--b {args.b} outside [0, {modulus})")
    poly = expand_product(spec, budget) if args.method != "charsum" else None
    rows, ok = [], True
    for b in residues:
        direct = alt = None
        if poly is not None:
            direct = progression.direct_progression_sum(poly, progression.ProgressionQuery(spec.p, modulus, b))
        if args.method != "direct":
            alt = charsieve.m_charsum_exact(spec, b)
        if args.method == "both" and direct != alt:
            logging.error("M(%d): direct %s != character sum %s", b, direct, alt)
            ok = False
        rows.append({"p": spec.p, "s": spec.s, "n": spec.n, "b": b,
                     "m_direct": None if direct is None else str(direct),
                     "m_charsum": None if alt is None else str(alt),
                     "modulus": modulus})
    return {"command": "msum", "rows": rows}, rows, MSUM_FIELDS, ok


def _cmd_verify(args, budget):
    rows = theorems.verify_grid(args.p, args.s, args.n_max, n_min=args.n_min,
                                use_charsum=args.method == "both",
                                threads=max(1, args.threads), budget=budget)
    bad = []
    for r in rows:
        if args.suite in ("main1", "all") and not r.within_bound:
            bad.append(r)
        elif args.suite in ("signs", "all") and r.sign_ok is False:
            bad.append(r)
    for r in bad:
        logging.error("failed: p=%d s=%d n=%d b=%d M=%d", r.p, r.s, r.n, r.b, r.m_value)
    records = [r.as_record() for r in rows]
    payload = {"command": "verify", "suite": args.suite, "failures": len(bad), "rows": records}
    return payload, records, theorems.CSV_FIELDS, not bad


def _cmd_maxcoeff(args, budget):
    ns = range(args.n_min, args.n_max + 1)
    if args.p in spectral.BORWEIN_SMALL_PRIMES:
        rows = spectral.borw1_check(args.p, args.s, ns, args.samples, budget)
        fields = TREND_FIELDS
    elif args.p > 15:
        rows = spectral.borw2_check(args.p, args.s, ns, args.samples, budget)
        fields = TREND_FIELDS + ["borw2_ratio"]
    else:
        raise UsageError(f"no max-coefficient statement for p={args.p}")
    records = [r.as_record() for r in rows]
    return {"command": "maxcoeff", "rows": records}, records, fields, all(r.ok for r in rows)


def _cmd_supnorm(args, budget):
    spec = ProductSpec(args.p, args.s, args.n)
    est = spectral.supnorm_sample(spec, args.samples, refine=not args.no_refine)
    rec = {"p": spec.p, "s": spec.s, "n": spec.n, "supnorm_estimate": repr(est.value),
           "theta": repr(est.theta), "samples": est.samples, "refined": est.refined}
    return rec, [rec], list(rec), True


def _cmd_recursions(args, budget):
    results = progression.check_andrews_recursions(args.n_max)
    rows = []
    for r in results:
        if r.ok:
            rows.append({"n": r.n, "ok": True})
        for name, idx, want, got in r.failures:
            rows.append({"n": r.n, "ok": False, "name": name, "index": idx,
                         "expected": str(want), "actual": str(got)})
    return {"command": "recursions", "rows": rows}, rows, RECURSION_FIELDS, all(r.ok for r in results)


HANDLERS = {
    "expand": _cmd_expand,
    "msum": _cmd_msum,
    "verify": _cmd_verify,
    "maxcoeff": _cmd_maxcoeff,
    "supnorm": _cmd_supnorm,
    "recursions": _cmd_recursions,
}


def run(args: argparse.Namespace) -> int:
    budget = resolve_budget(args.budget)
    payload, rows, fields, ok = HANDLERS[args.command](args, budget)
    stamp = None if args.no_timestamp else formats.timestamp()
    if args.format == "json":
        text = formats.to_json(payload, stamp)
    else:
        text = formats.to_csv(rows, fields, stamp)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return run(args)
    except BudgetExceededError as exc:
        print(f"borwein-sums: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"borwein-sums: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, InvalidSpecError) as exc:
        parser.print_usage(sys.stderr)
        print(f"borwein-sums: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
