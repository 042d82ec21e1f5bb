"""Saddle-point log-estimate vs exact shell counts over a (d, n) grid.

    python scripts/estimator_grid.py --dims 200 500 1000 --out grid.csv
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from typing import List

from latticemax.exact_counting import theta_coeffs
from latticemax.saddle_point import binom_estimate, log_estimate


@dataclass
class GridConfig:
    dims: List[int] = field(default_factory=lambda: [200, 500, 1000, 2000])
    alpha_max: float = 0.05


def run(cfg: GridConfig, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["d", "n", "alpha", "ln_exact", "saddle_gap", "binom_gap"])
    for d in cfg.dims:
        nmax = max(1, int(cfg.alpha_max * d))
        counts = theta_coeffs(d, nmax).coeffs
        for n in range(1, nmax + 1):
            exact = math.log(counts[n])
            w.writerow([d, n, n / d, repr(exact), repr(log_estimate(n, d) - exact),
                        repr(binom_estimate(n, d) - exact)])


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--dims", type=int, nargs="+", default=GridConfig().dims)
    p.add_argument("--alpha-max", type=float, default=GridConfig.alpha_max)
    p.add_argument("--out")
    a = p.parse_args()
    cfg = GridConfig(a.dims, a.alpha_max)
    if a.out:
        with open(a.out, "w", newline="") as fh:
            run(cfg, fh)
    else:
        run(cfg, sys.stdout)
