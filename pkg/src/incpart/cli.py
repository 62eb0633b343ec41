"""Command-line front end.

Exit status: 0 success / verified, 1 verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import random
import sys
from collections import Counter
from fractions import Fraction

from . import lawfile
from .coefficients import genfun_expand, r_table, r_via_formula
from .combinatorics import (
    DEFAULT_PARTITION_LIMIT,
    DomainError,
    all_compositions,
    block_sizes,
    count_partitions_with_sizes,
    enumerate_compositions,
    enumerate_set_partitions,
)
from .gaps import BinarySequenceLaw, check_gap_representation
from .laws import (
    IncrementLaw,
    PartitionLaw,
    forward_map,
    invert_map,
    random_partition_law,
)
from .models import (
    CrpParameter,
    NotApplicableError,
    TwoParameter,
    crp_increment_probs,
    crp_law,
    sample_crp,
    sample_two_parameter,
    two_parameter_law,
    verify_theorem2,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(c) -> str:
    return ",".join(map(str, c))


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _theta(text: str) -> CrpParameter:
    try:
        return CrpParameter.parse(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _cap(n: int, args) -> None:
    if n > DEFAULT_PARTITION_LIMIT and not args.force:
        raise UsageError(f"n={n} exceeds {DEFAULT_PARTITION_LIMIT}; pass --force to run anyway")


def _read_law(path: str, kind, fill_missing: bool = False):
    try:
        with open(path) as fh:
            law = lawfile.load(fh, fill_missing)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except lawfile.LawFileError as e:
        raise UsageError(f"{path}: {e}") from None
    if not isinstance(law, kind):
        want = "partition" if kind is PartitionLaw else "increment"
        raise UsageError(f"{path}: expected a {want} law")
    return law


def _write_law(law, path: str | None, out) -> None:
    if path is None or path == "-":
        lawfile.dump(law, out)
    else:
        with open(path, "w") as fh:
            lawfile.dump(law, fh)


def cmd_compositions(args, out):
    ks = [args.k] if args.k else range(1, args.n + 1)
    for k in ks:
        for c in enumerate_compositions(args.n, k):
            out.write(" ".join(map(str, c)) + "\n")
    return OK


def cmd_partitions(args, out):
    _cap(args.n, args)
    for p in enumerate_set_partitions(args.n, limit=None):
        out.write(" ".join(map(str, p)) + "\n")
    return OK


def cmd_rtable(args, out):
    if args.method == "bruteforce":
        _cap(args.n, args)
    comps, rows = r_table(args.n, args.k, args.method)
    # printed with block compositions b down the side, gap encodings d across
    out.write("b\\d\t" + "\t".join(fmt(d) for d in comps) + "\n")
    for j, b in enumerate(comps):
        out.write(fmt(b) + "\t" + "\t".join(str(rows[i][j]) for i in range(len(comps))) + "\n")
    return OK


def cmd_forward(args, out):
    p = _read_law(args.inp, PartitionLaw, args.allow_sparse)
    _write_law(forward_map(p), args.out, out)
    return OK


def cmd_invert(args, out):
    q = _read_law(args.inp, IncrementLaw, args.allow_sparse)
    result = invert_map(q)
    _write_law(result.law, args.out, out)
    if not result.feasible:
        sys.stderr.write("infeasible: q is not the increment law of a partially exchangeable partition\n")
        for problem in result.problems:
            sys.stderr.write(f"  {problem}\n")
        return FAILED
    return OK


def cmd_crp(args, out):
    _write_law(crp_law(args.n, args.theta), args.out, out)
    return OK


def cmd_sample(args, out):
    if args.model == "crp":
        if args.alpha is not None:
            raise UsageError("--alpha only applies to two-param")
        try:
            params = CrpParameter.parse(args.theta)
        except DomainError as e:
            raise UsageError(str(e)) from None
        sampler = sample_crp
        exact = crp_law(args.n, params)
    else:
        try:
            params = TwoParameter(args.alpha or Fraction(0), Fraction(args.theta))
        except (DomainError, ValueError, ZeroDivisionError) as e:
            raise UsageError(str(e)) from None
        sampler = sample_two_parameter
        exact = two_parameter_law(args.n, params)
    comps: Counter = Counter()
    for index in range(args.count):
        part = sampler(args.n, params, args.seed, index)
        if args.summary:
            comps[block_sizes(part)] += 1
        else:
            out.write(" ".join(map(str, part)) + "\n")
    if args.summary:
        out.write("# Monte Carlo summary (floats are estimates)\n")
        out.write("composition\tcount\tempirical\texact\tz\n")
        for b in all_compositions(args.n):
            prob = exact[b] * count_partitions_with_sizes(b)
            freq = comps[b] / args.count
            se = math.sqrt(float(prob * (1 - prob)) / args.count)
            z = (freq - float(prob)) / se if se else 0.0
            out.write(f"{fmt(b)}\t{comps[b]}\t{freq:.6f}\t{prob}\t{z:+.3f}\n")
    return OK


def cmd_check_theorem1(args, out):
    _cap(args.n, args)
    rng = random.Random(args.seed)
    n = args.n
    failures = 0
    for k in range(1, n + 1):
        comps = enumerate_compositions(n, k)
        for i, y in enumerate(comps):
            for j, z in enumerate(comps):
                r = r_via_formula(y, z)
                if (j > i and r != 0) or (i == j and r != 1):
                    out.write(f"FAIL triangular r({fmt(y)};{fmt(z)}) = {r}\n")
                    failures += 1
    out.write(f"{'PASS' if not failures else 'FAIL'} unit triangular system, n={n}\n")
    bad = 0
    for _ in range(args.trials):
        p = random_partition_law(n, rng)
        if invert_map(forward_map(p)).law != p:
            bad += 1
    out.write(f"{'PASS' if not bad else 'FAIL'} round trip, {args.trials - bad}/{args.trials} laws recovered exactly\n")
    return OK if not failures and not bad else FAILED


def cmd_check_theorem2(args, out):
    q = _read_law(args.inp, IncrementLaw)
    try:
        result = verify_theorem2(q)
    except NotApplicableError as e:
        out.write(f"not applicable: {e}\n")
        return FAILED
    if not result.verified:
        out.write(f"counterexample: {result.counterexample}\n")
        return FAILED
    out.write(f"theta = {result.param}\n")
    return OK


def cmd_check_genfun(args, out):
    _cap(args.n, args)
    failures = 0
    checked = 0
    for k in range(1, args.n + 1):
        comps = enumerate_compositions(args.n, k)
        for d in comps:
            poly = genfun_expand(d)
            checked += 1
            for b in poly.compositions():
                if sum(b) != args.n:
                    out.write(f"FAIL d={fmt(d)}: stray monomial for {fmt(b)}\n")
                    failures += 1
            for b in comps:
                if poly.coefficient(b) != r_via_formula(d, b):
                    out.write(f"FAIL d={fmt(d)} b={fmt(b)}: {poly.coefficient(b)} != {r_via_formula(d, b)}\n")
                    failures += 1
            mass = math.prod(i ** (x - 1) for i, x in enumerate(d, start=1))
            if poly.evaluate([1] * k) != mass:
                out.write(f"FAIL d={fmt(d)}: value at ones {poly.evaluate([1] * k)} != {mass}\n")
                failures += 1
    out.write(f"{'PASS' if not failures else 'FAIL'} generating function, {checked} gap encodings, n={args.n}\n")
    return OK if not failures else FAILED


def cmd_check_gaps(args, out):
    first, reason = check_gap_representation(
        lambda n: crp_law(n, args.theta),
        lambda n: BinarySequenceLaw.independent(crp_increment_probs(n, args.theta)),
        args.n,
    )
    if first is not None:
        out.write(f"FAIL n={first}: {reason}\n")
        return FAILED
    out.write(f"PASS gap representation of CRP({args.theta}) for n=1..{args.n}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compositions", help="list compositions in decreasing dictionary order")
    s.add_argument("n", type=_positive)
    s.add_argument("--k", type=_positive)
    s.set_defaults(func=cmd_compositions)

    s = sub.add_parser("partitions", help="list set partitions as restricted-growth sequences")
    s.add_argument("n", type=_positive)
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("rtable", help="table of r(d; b) over S(n,k)")
    s.add_argument("n", type=_positive)
    s.add_argument("k", type=_positive)
    s.add_argument("--method", choices=["formula", "bruteforce", "genfun"], default="formula")
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_rtable)

    for name, func, helptext in (
        ("forward", cmd_forward, "partition law -> increment law"),
        ("invert", cmd_invert, "increment law -> partition law"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--in", dest="inp", required=True)
        s.add_argument("--out")
        s.add_argument("--allow-sparse", action="store_true", help="treat missing compositions as 0")
        s.set_defaults(func=func)

    s = sub.add_parser("crp", help="write the CRP(theta) partition law")
    s.add_argument("n", type=_positive)
    s.add_argument("--theta", type=_theta, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_crp)

    s = sub.add_parser("sample", help="draw seeded samples")
    s.add_argument("model", choices=["crp", "two-param"])
    s.add_argument("n", type=_positive)
    s.add_argument("--theta", required=True, help="rational, or zero/inf for crp")
    s.add_argument("--alpha", type=_rational_arg)
    s.add_argument("--count", type=_positive, required=True)
    s.add_argument("--seed", type=_seed, required=True)
    s.add_argument("--summary", action="store_true", help="print composition frequencies instead of samples")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("check-theorem1", help="triangular structure and random round trips")
    s.add_argument("n", type=_positive)
    s.add_argument("--trials", type=_positive, default=100)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_check_theorem1)

    s = sub.add_parser("check-theorem2", help="recover theta from an increment law")
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(func=cmd_check_theorem2)

    s = sub.add_parser("check-genfun", help="generating polynomial against the r table")
    s.add_argument("n", type=_positive)
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_check_genfun)

    s = sub.add_parser("check-gaps", help="CRP gap representation for n = 1..N")
    s.add_argument("n", type=_positive)
    s.add_argument("--theta", type=_theta, required=True)
    s.set_defaults(func=cmd_check_gaps)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as e:
        sys.stderr.write(f"incpart {args.command}: {e}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
