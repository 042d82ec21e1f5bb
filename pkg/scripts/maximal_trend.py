"""Empirical l2 ratios of maximal functions on small tori, for d = 1..4.

These are finite-torus numbers only; they cannot confirm or refute a
dimension-free bound.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from latticemax.maximal_sim import CAVEAT, norm_ratio_trend


@dataclass
class TrendConfig:
    M: int = 8
    trials: int = 16
    seed: int = 0
    nmax: int = 4
    K: int = 1


def run(cfg: TrendConfig, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["family", "d", "max_ratio", "mean_ratio"])
    for family in ("spheres", "dbar", "semigroup"):
        for r in norm_ratio_trend(family, [1, 2, 3, 4], cfg.M, cfg.trials, cfg.seed, cfg.nmax, cfg.K):
            w.writerow([family, r.d, repr(r.max_ratio), repr(r.mean_ratio)])
    sys.stderr.write(f"{CAVEAT} (M={cfg.M}, trials={cfg.trials}, seed={cfg.seed})\n")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(TrendConfig()).items():
        p.add_argument(f"--{name}", type=int, default=default)
    run(TrendConfig(**vars(p.parse_args())), sys.stdout)
