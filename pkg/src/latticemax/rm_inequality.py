"""Multi-parameter Rademacher-Menshov inequality over even indices.

The inequality bounds sup_{nbar <= mbar, even} |a_nbar| by square functions
of mixed differences summed over dyadic blocks.  Everything here is literal:
both sides are computed directly from the sequence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np


def nu2(n: int) -> float:
    """2-adic valuation, with nu2(0) = infinity."""
    if n == 0:
        return math.inf
    return (n & -n).bit_length() - 1


def dyadic_decompose(n: int, k: int, s: int) -> List[Tuple[int, int]]:
    """Split the even interval (n, k] into dyadic pieces ((j-1)2^i, j2^i].

    0 <= n < k <= 2^s, both even.  Pieces come in increasing order and every
    length appears at most twice.
    """
    if n % 2 or k % 2 or not (0 <= n < k <= 2 ** s):
        raise ValueError(f"need even 0 <= n < k <= 2^{s}, got ({n}, {k}]")
    l = (n ^ k).bit_length() - 1  # highest differing binary digit
    points = [n]
    if nu2(n) < l:
        u = n
        while nu2(u) < l:
            u += 1 << int(nu2(u))
            points.append(u)
    else:
        points.append(n + (1 << l))
    v = points[-1]
    for i in range(l - 1, 0, -1):
        if (k >> i) & 1:
            v += 1 << i
            points.append(v)
    assert points[-1] == k
    return list(zip(points[:-1], points[1:]))


def is_dyadic_piece(lo: int, hi: int, s: int) -> bool:
    length = hi - lo
    if length < 2 or length & (length - 1):
        return False
    return lo % length == 0 and hi <= 2 ** s


# ------------------------------------------------------------------- sides

def _even_grid(sequence, mbar):
    shape = tuple(m // 2 + 1 for m in mbar)
    if callable(sequence):
        A = np.zeros(shape, dtype=complex)
        for idx in np.ndindex(*shape):
            A[idx] = sequence(tuple(2 * i for i in idx))
        return A
    A = np.asarray(sequence, dtype=complex)
    if A.shape != shape:
        raise ValueError(f"sequence grid must have shape {shape}, got {A.shape}")
    return A


def rm_sides(A: np.ndarray, sbar: Sequence[int], mbar: Sequence[int]) -> Tuple[float, float]:
    """(lhs, rhs) for the sequence a_{2i} = A[i], without any constant."""
    K = len(sbar)
    lhs = float(np.abs(A).max())
    rhs = float(abs(A[(0,) * K]))
    for r in range(1, K + 1):
        for U in itertools.combinations(range(K), r):
            # restrict to the face where coordinates outside U vanish
            face = A[tuple(slice(None) if j in U else 0 for j in range(K))]
            D = face
            for ax in range(r):
                D = np.diff(D, axis=ax)  # entry i-1 <-> index k = 2i
            # pad each axis to 2^(s_u - 1) so blocks tile it
            pad = [(0, 2 ** (sbar[u] - 1) - D.shape[ax]) for ax, u in enumerate(U)]
            D = np.pad(D, pad)
            for levels in itertools.product(*[range(1, sbar[u] + 1) for u in U]):
                B = D
                for ax, (u, i) in enumerate(zip(U, levels)):
                    nblocks = 2 ** (sbar[u] - i)
                    B = np.moveaxis(B, ax, -1)
                    B = B.reshape(B.shape[:-1] + (nblocks, 2 ** (i - 1))).sum(axis=-1)
                    B = np.moveaxis(B, -1, ax)
                rhs += float(np.sqrt(np.sum(np.abs(B) ** 2)))
    return lhs, rhs


@dataclass
class RMReport:
    K: int
    sbar: Tuple[int, ...]
    mbar: Tuple[int, ...]
    lhs: float
    rhs: float
    fitted_constant: float
    trials: int
    seed: Optional[int]

    def to_dict(self):
        return {
            "K": self.K, "sbar": list(self.sbar), "mbar": list(self.mbar),
            "lhs": self.lhs, "rhs": self.rhs, "fitted_constant": self.fitted_constant,
            "trials": self.trials, "seed": self.seed,
        }


def rm_check(K: int, sbar: Sequence[int], mbar: Sequence[int],
             sequence: Optional[Callable] = None, trials: int = 1,
             seed: Optional[int] = 0) -> RMReport:
    """Worst lhs/rhs over the trials.

    With sequence=None the trials alternate between independent complex
    Gaussians and random walks (Gaussian steps summed along every axis),
    which sit much closer to the extremal case; otherwise sequence(nbar) supplies the values and one trial is
    run.  The reported lhs and rhs belong to the worst trial.
    """
    sbar, mbar = tuple(sbar), tuple(mbar)
    if not (len(sbar) == len(mbar) == K):
        raise ValueError("sbar and mbar must have length K")
    for s, m in zip(sbar, mbar):
        if s < 1 or not (0 <= m <= 2 ** s):
            raise ValueError("need s >= 1 and 0 <= m <= 2^s")
    rng = np.random.default_rng(seed)
    if sequence is not None:
        trials = 1
    worst = (-1.0, 0.0, 0.0)
    shape = tuple(m // 2 + 1 for m in mbar)
    for t in range(trials):
        if sequence is None:
            A = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            if t % 2:
                for ax in range(K):
                    A = np.cumsum(A, axis=ax)
        else:
            A = _even_grid(sequence, mbar)
        lhs, rhs = rm_sides(A, sbar, mbar)
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
        if ratio > worst[0]:
            worst = (ratio, lhs, rhs)
    return RMReport(K, sbar, mbar, worst[1], worst[2], worst[0], trials, seed)
