"""Fraction of shell points with small mass on small coordinates, as d doubles."""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from typing import List

from latticemax.exact_counting import concentration_report


@dataclass
class DecayConfig:
    K: int = 2
    a: int = 4
    ns: List[int] = field(default_factory=lambda: [20, 40, 80])
    dims: List[int] = field(default_factory=lambda: [250, 500, 1000, 2000, 4000])


def run(cfg: DecayConfig, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["d", "n", "K", "a", "small_mass_fraction", "few_ones_fraction", "ratio_to_half_d"])
    for n in cfg.ns:
        prev = None
        for d in cfg.dims:
            fr = concentration_report(d, n, cfg.K, cfg.a).fractions
            ratio = "" if prev in (None, 0.0) else repr(fr["small_mass"] / prev)
            w.writerow([d, n, cfg.K, cfg.a, repr(fr["small_mass"]), repr(fr["few_ones"]), ratio])
            prev = fr["small_mass"]


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--K", type=int, default=DecayConfig.K)
    p.add_argument("--a", type=int, default=DecayConfig.a)
    p.add_argument("--ns", type=int, nargs="+", default=DecayConfig().ns)
    p.add_argument("--dims", type=int, nargs="+", default=DecayConfig().dims)
    a = p.parse_args()
    run(DecayConfig(a.K, a.a, a.ns, a.dims), sys.stdout)
