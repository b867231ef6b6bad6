"""Corpus statistics: n, sigma, z, BWT runs r and empirical entropies H_0..H_k."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from holz import _kernels
from holz.errors import InvalidArgumentError
from holz.lz import greedy_parse_nsvpsv
from holz.suffix import static_bwt_runs
from holz.text import Text

CSV_FIELDS = ("name", "n", "sigma", "z", "r")


def _context_keys(s, k):
    """One integer id per length-``k`` window ending before positions ``k..n-1``."""
    n = s.shape[0]
    width = int(s.max()) + 1 if n else 1
    if width ** k < 2**62:
        keys = np.zeros(n - k, dtype=np.int64)
        for j in range(k):
            keys = keys * width + s[j : n - k + j]
        return keys
    windows = np.lib.stride_tricks.sliding_window_view(s, k)[: n - k]
    return np.unique(windows, axis=0, return_inverse=True)[1].reshape(-1)


def context_table(symbols, k):
    """``(contexts, next_symbols)``: the k-context and successor of every counted position."""
    s = np.asarray(symbols, dtype=np.int64)
    if k == 0:
        return np.zeros(s.shape[0], dtype=np.int64), s
    return _context_keys(s, k), s[k:]


def empirical_entropy(text, k):
    """H_k in bits per symbol, normalised by the full body length.

    Only positions with a complete k-symbol context inside the body count.
    """
    if k < 0:
        raise InvalidArgumentError(f"k must be >= 0, got {k}")
    s = text.symbols if isinstance(text, Text) else np.asarray(text)
    n = s.shape[0]
    if n <= k:
        return 0.0
    ctx, nxt = context_table(s, k)
    width = int(nxt.max()) + 1
    _, ctx_id = np.unique(ctx, return_inverse=True)
    pair = ctx_id.reshape(-1).astype(np.int64) * width + nxt
    pairs, n_wc = np.unique(pair, return_counts=True)
    n_w = np.bincount(ctx_id.reshape(-1))[pairs // width]
    return float(np.sum(n_wc * np.log2(n_w / n_wc)) / n)


@dataclass(frozen=True)
class StatsReport:
    name: str
    n: int
    sigma: int
    z: int
    r: int
    h: tuple = field(default_factory=tuple)

    def header(self):
        return ",".join(CSV_FIELDS + tuple(f"H{k}" for k in range(len(self.h))))

    def csv_row(self):
        cols = [self.name, str(self.n), str(self.sigma), str(self.z), str(self.r)]
        cols += [f"{truncate2(x):.2f}" for x in self.h]
        return ",".join(cols)


def truncate2(x):
    """Cut to two decimals the way the published tables do (4.5677 -> 4.56)."""
    return math.floor(x * 100 + 1e-9) / 100


def dataset_stats(text, name="", max_k=4):
    """Statistics of one body; ``sigma`` counts only symbols that occur."""
    if max_k < 0:
        raise InvalidArgumentError(f"max_k must be >= 0, got {max_k}")
    n = text.n
    sigma = int(np.unique(text.symbols).shape[0])
    z = greedy_parse_nsvpsv(text).z if n else 0
    r = static_bwt_runs(text)[1] if n else 0
    h = tuple(empirical_entropy(text, k) for k in range(max_k + 1))
    return StatsReport(name, n, sigma, z, r, h)


def literal_lz_count(symbols):
    """Greedy LZ factor count without the virtual prefix.

    A symbol with no earlier occurrence becomes a one-symbol literal factor.
    This is the convention behind the published corpus tables.
    """
    s = np.ascontiguousarray(symbols, dtype=np.int32)
    n = s.shape[0]
    if n == 0:
        return 0
    idx = _kernels.TextIndex(s)
    psv, nsv = _kernels.psv_nsv(idx.sa)
    sa, isa = idx.sa, idx.isa
    p = z = 0
    while p < n:
        i = isa[p]
        ell = 0
        for j in (psv[i], nsv[i]):
            if j >= 0:
                ell = max(ell, idx.lcp_min(min(i, j) + 1, max(i, j)))
        p += max(ell, 1)
        z += 1
    return z
