"""Static text indexes: suffix array, LCE, PSV/NSV, BWT runs, wavelet matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydivsufsort import divsufsort

from holz._kernels import StaticWM, TextIndex, psv_nsv
from holz.text import Text

# static wavelet matrix over integers; queries use half-open ranges
StaticWaveletTree = StaticWM

TERMINATOR = -1


class SuffixIndex:
    """Suffix array of ``T'`` with a terminator smaller than every symbol.

    ``sa[0]`` is the terminator suffix (position ``N``); ``lcp[i]`` is the
    longest common prefix of suffixes ``sa[i-1]`` and ``sa[i]``.
    """

    def __init__(self, full_text):
        self._idx = TextIndex(full_text)
        self.sa = self._idx.sa
        self.isa = self._idx.isa
        self.lcp = self._idx.lcp

    @property
    def n_full(self):
        return self._idx.n_full

    def lce(self, i, j):
        return self._idx.lce(i, j)

    def rmq(self, lo, hi):
        """Minimum of ``lcp[lo..hi]`` (inclusive)."""
        return self._idx.lcp_min(lo, hi)

    @property
    def kernel(self):
        return self._idx


def build_suffix_index(text):
    """Index of the full logical text of ``text`` (a :class:`Text` or symbol array)."""
    full = text.full() if isinstance(text, Text) else np.asarray(text, dtype=np.int32)
    return SuffixIndex(full)


def lce(idx, i, j):
    return idx.lce(i, j)


@dataclass(frozen=True)
class PsvNsv:
    psv: np.ndarray
    nsv: np.ndarray


def build_psv_nsv(idx):
    """Nearest SA indices to the left/right holding a smaller text position (-1 if none)."""
    sa = idx.sa if isinstance(idx, SuffixIndex) else np.asarray(idx)
    psv, nsv = psv_nsv(sa)
    return PsvNsv(psv, nsv)


def static_bwt(symbols):
    """BWT of ``symbols`` followed by one terminator (reported as ``TERMINATOR``).

    This indexes the body alone, without the virtual prefix.
    """
    body = np.ascontiguousarray(symbols, dtype=np.int32)
    n = body.shape[0]
    if n == 0:
        return np.array([TERMINATOR], dtype=np.int32)
    src = body.astype(np.uint8) if body.max() < 256 else body
    sa = np.empty(n + 1, dtype=np.int64)
    sa[0] = n
    sa[1:] = divsufsort(src)
    prev = sa - 1
    bwt = np.where(prev >= 0, body[np.maximum(prev, 0)], TERMINATOR).astype(np.int32)
    return bwt


def static_bwt_runs(text):
    """``(bwt, r)`` where ``r`` counts maximal runs of equal BWT symbols."""
    body = text.symbols if isinstance(text, Text) else text
    bwt = static_bwt(body)
    runs = 1 + int(np.count_nonzero(bwt[1:] != bwt[:-1]))
    return bwt, runs


def wt_range_pred(wt, lo, hi, v):
    """Largest value ``< v`` in positions ``[lo, hi)`` as ``(index, value)``, or None."""
    return wt.range_pred(lo, hi, v)


def wt_range_succ(wt, lo, hi, v):
    """Smallest value ``> v`` in positions ``[lo, hi)`` as ``(index, value)``, or None."""
    return wt.range_succ(lo, hi, v)
