"""Command-line entry point: latticemax <subcommand> [flags]."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
from typing import List, Optional

import numpy as np

from . import exact_counting as ec
from . import krawtchouk as kw
from . import maximal_sim as ms
from . import multipliers as mu
from . import rm_inequality as rm
from . import saddle_point as sp
from .errors import GuardError


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _floats(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()]




class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.buf = io.StringIO()

    def table(self, header, rows):
        if self.fmt == "json":
            self.obj([dict(zip(header, r)) for r in rows])
            return
        w = csv.writer(self.buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)

    def obj(self, value):
        if self.fmt == "csv" and isinstance(value, dict):
            w = csv.writer(self.buf, lineterminator="\n")
            w.writerow(list(value))
            w.writerow([json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else v
                        for v in value.values()])
            return
        self.buf.write(json.dumps(value, separators=(",", ":")) + "\n")

    def text(self, line: str):
        self.buf.write(line + "\n")


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(32)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit(f"error: {args.command} needs {' '.join(missing)}")


# ---------------------------------------------------------------- commands

def cmd_count(args, out):
    _need(args, "d")
    nmax = args.nmax if args.nmax is not None else args.n
    if nmax is None:
        raise SystemExit("error: count needs --nmax or --n")
    coeffs = ec.theta_coeffs(args.d, nmax, args.K).coeffs
    if args.format == "json":
        obj = {"d": args.d, "counts": [str(c) for c in coeffs]}
        if args.K is not None:
            obj["K"] = args.K
        out.obj(obj)
    else:
        out.table(["d", "n", "count"], [[args.d, n, c] for n, c in enumerate(coeffs)])


def cmd_estimate(args, out):
    if args.alpha is not None:
        sol = sp.solve_saddle(args.alpha, args.K)
        out.obj({"alpha": sol.alpha, "r": sol.r, "h_at_r": sol.h_at_r,
                 "hprime_at_r": sol.hprime_at_r, "beta_second": sol.beta_second})
        return
    _need(args, "d")
    if args.n is not None:
        ns = [args.n]
    else:
        nmax = args.nmax if args.nmax is not None else max(1, args.d // 20)
        ns = list(range(1, nmax + 1))
    counts = ec.theta_coeffs(args.d, max(ns)).coeffs
    rows = []
    for n in ns:
        exact = math.log(counts[n]) if counts[n] else -math.inf
        est = sp.log_estimate(n, args.d)
        rows.append([args.d, n, repr(exact), repr(est), repr(exact - est)])
    out.table(["d", "n", "ln_exact", "ln_estimate", "log_ratio"], rows)


def cmd_coeffs(args, out):
    terms = args.terms if args.terms is not None else 4
    if args.kind == "a":
        vals = sp.inversion_coeffs(terms)
        rows = [[k, kw.fmt(v)] for k, v in enumerate(vals, start=1)]
    else:
        vals = sp.b_coeffs(terms)
        rows = [[k, kw.fmt(v)] for k, v in enumerate(vals)]
    out.table(["k", args.kind], rows)


def cmd_krawtchouk(args, out):
    _need(args, "n")
    n = args.n
    if args.k is not None and args.x is not None and not args.format_given:
        out.text(kw.fmt(kw.kr(args.k, n, args.x)))
        return
    ks = [args.k] if args.k is not None else range(n + 1)
    xs = [args.x] if args.x is not None else range(n + 1)
    out.table(["n", "k", "x", "value"], [[n, k, x, kw.fmt(kw.kr(k, n, x))] for k in ks for x in xs])


def cmd_beta(args, out):
    _need(args, "nbar", "d")
    nbar = _ints(args.nbar)
    seed = _seed(args)
    rng = np.random.default_rng(seed)
    if args.xi is not None:
        points = [np.array(_floats(args.xi))]
        if len(points[0]) != args.d:
            raise SystemExit("error: --xi must have d entries")
    else:
        points = [rng.random(args.d) for _ in range(args.samples or 1)]
    brute_ok = args.d <= mu.BRUTE_MAX_D and sum(nbar) <= mu.BRUTE_MAX_MASS
    rows = []
    for i, xi in enumerate(points):
        val = mu.beta_eval(nbar, xi)
        ref = mu.beta_bruteforce(nbar, xi) if brute_ok else None
        rows.append([i, " ".join(repr(float(v)) for v in xi), repr(val),
                     "" if ref is None else repr(ref)])
    out.table(["sample", "xi", "beta", "beta_bruteforce"], rows)
    if not brute_ok:
        sys.stderr.write("note: brute-force column skipped (guard beta-bruteforce)\n")
    if args.seed is None and args.xi is None:
        sys.stderr.write(f"seed: {seed}\n")


def cmd_bounds(args, out):
    _need(args, "suite")
    seed = _seed(args)
    samples = args.samples or (10_000 if args.suite == "dyadic-sum" else 500)
    out.obj(mu.check_bounds(args.suite, samples, seed).to_dict())


def cmd_concentration(args, out):
    _need(args, "d", "n", "K", "a")
    out.obj(ec.concentration_report(args.d, args.n, args.K, args.a).to_dict())


def cmd_simulate(args, out):
    seed = _seed(args)
    M = args.M or 8
    trials = args.trials or 8
    family = args.family or "spheres"
    nmax = args.nmax if args.nmax is not None else 4
    K = args.K or 1
    if args.d is not None:
        rep = ms.empirical_norm_ratio(family, args.d, M, trials, seed, nmax=nmax, K=K)
        out.obj(rep.to_dict())
        return
    reps = ms.norm_ratio_trend(family, [1, 2, 3, 4], M, trials, seed, nmax=nmax, K=K)
    out.table(["d", "max_ratio"], [[r.d, repr(r.max_ratio)] for r in reps])
    sys.stderr.write(f"{ms.CAVEAT}; family={family} M={M} trials={trials} seed={seed}\n")


def cmd_rm_check(args, out):
    K = args.K or 1
    sbar = _ints(args.s) if args.s else [4] * K
    mbar = _ints(args.m) if args.m else [2 ** s for s in sbar]
    seed = _seed(args)
    rep = rm.rm_check(K, sbar, mbar, trials=args.trials or 100, seed=seed)
    out.obj(rep.to_dict())


COMMANDS = {
    "count": cmd_count, "estimate": cmd_estimate, "coeffs": cmd_coeffs,
    "krawtchouk": cmd_krawtchouk, "beta": cmd_beta, "bounds": cmd_bounds,
    "concentration": cmd_concentration, "simulate": cmd_simulate, "rm-check": cmd_rm_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--K", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--x", type=int)
    common.add_argument("--nbar")
    common.add_argument("--xi")
    common.add_argument("--alpha", type=float)
    common.add_argument("--terms", type=int)
    common.add_argument("--kind", choices=["a", "b"], default="b")
    common.add_argument("--suite", choices=list(mu.SUITES))
    common.add_argument("--samples", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--M", type=int)
    common.add_argument("--family", choices=["spheres", "dbar", "semigroup"])
    common.add_argument("--s", help="comma-separated dyadic depths")
    common.add_argument("--m", help="comma-separated upper indices")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out")
    parser = argparse.ArgumentParser(prog="latticemax", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format_given = args.format is not None
    if args.format is None:
        args.format = "csv"
    out = Output(args.format)
    try:
        COMMANDS[args.command](args, out)
    except GuardError as exc:
        sys.stderr.write(f"error: guard {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    text = out.buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
