import numpy as np
import pytest

from holz.suffix import (
    TERMINATOR,
    StaticWaveletTree,
    build_psv_nsv,
    build_suffix_index,
    static_bwt,
    static_bwt_runs,
    wt_range_pred,
    wt_range_succ,
)
from holz.text import Text

from conftest import random_text


def _naive_sa(t):
    t = list(t)
    return sorted(range(len(t) + 1), key=lambda i: t[i:])


@pytest.mark.parametrize("sigma", [1, 2, 4, 30])
def test_suffix_array_lcp_against_sort(rng, sigma):
    for _ in range(40):
        text = random_text(rng, int(rng.integers(1, 120)), sigma)
        full = text.full().tolist()
        idx = build_suffix_index(text)
        assert idx.sa.tolist() == _naive_sa(full)
        assert all(idx.sa[idx.isa[i]] == i for i in range(len(full) + 1))
        for k in range(1, len(full) + 1):
            a, b = idx.sa[k - 1], idx.sa[k]
            ell = 0
            while max(a, b) + ell < len(full) and full[a + ell] == full[b + ell]:
                ell += 1
            assert idx.lcp[k] == ell


def test_lce_and_rmq(rng):
    text = random_text(rng, 300, 3)
    full = text.full().tolist()
    idx = build_suffix_index(text)
    for _ in range(500):
        i, j = rng.integers(0, len(full), size=2)
        ell = 0
        while max(i, j) + ell < len(full) and full[i + ell] == full[j + ell]:
            ell += 1
        assert idx.lce(int(i), int(j)) == (len(full) - i if i == j else ell)
        lo, hi = sorted(rng.integers(1, len(full) + 1, size=2))
        assert idx.rmq(int(lo), int(hi)) == int(idx.lcp[lo : hi + 1].min())


def test_psv_nsv(rng):
    text = random_text(rng, 200, 4)
    idx = build_suffix_index(text)
    pn = build_psv_nsv(idx)
    sa = idx.sa.tolist()
    for i, v in enumerate(sa):
        left = [k for k in range(i) if sa[k] < v]
        right = [k for k in range(i + 1, len(sa)) if sa[k] < v]
        assert pn.psv[i] == (left[-1] if left else -1)
        assert pn.nsv[i] == (right[0] if right else -1)


def test_static_bwt_small():
    # banana$ -> annb$aa
    text = Text.from_string("banana", "abn")
    bwt = static_bwt(text.symbols)
    assert bwt.tolist() == [0, 2, 2, 1, TERMINATOR, 0, 0]
    assert static_bwt_runs(text)[1] == 5


def test_bwt_runs_empty_and_single():
    assert static_bwt_runs(Text([], 1))[1] == 1
    assert static_bwt_runs(Text([0, 0, 0], 1))[1] == 2


def test_wavelet_range_queries(rng):
    vals = rng.integers(0, 50, size=400)
    wt = StaticWaveletTree(vals)
    for _ in range(600):
        lo, hi = sorted(rng.integers(0, 401, size=2))
        v = int(rng.integers(0, 52))
        window = vals[lo:hi].tolist()
        below = [x for x in window if x < v]
        above = [x for x in window if x > v]
        got = wt_range_pred(wt, int(lo), int(hi), v)
        if below:
            w = max(below)
            assert got == (lo + window.index(w), w)
        else:
            assert got is None
        got = wt_range_succ(wt, int(lo), int(hi), v)
        if above:
            w = min(above)
            assert got == (lo + window.index(w), w)
        else:
            assert got is None


def test_wavelet_access_rank_select(rng):
    vals = rng.integers(0, 9, size=300)
    wt = StaticWaveletTree(vals)
    for i in range(0, 300, 7):
        assert wt.access(i) == vals[i]
        v = int(vals[i])
        assert wt.rank(v, i) == int(np.sum(vals[:i] == v))
        assert wt.select(v, wt.rank(v, i)) == i
