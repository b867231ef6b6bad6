"""Randomized operation fuzz of the dynamic structures against plain lists."""

import numpy as np
import pytest

from holz.dynamic import DOLLAR, BlockedString, DynBitVector, DynBWT, DynSequence, InsertMarks
from holz.errors import InvalidArgumentError
from holz.suffix import TERMINATOR, build_suffix_index, static_bwt
from holz.text import Text

from conftest import random_text

FUZZ_OPS = 100_000


def _fuzz_sequence(rng, make, sigma, n_ops, with_pred=False, max_len=4000):
    """Mixed inserts and queries; a fresh instance starts every ``2 * max_len`` operations."""
    ops = 0
    while ops < n_ops:
        seq = make()
        ref = _fuzz_one(rng, seq, sigma, min(n_ops - ops, 2 * max_len), with_pred)
        assert seq.tolist() == ref
        ops += 2 * max_len
    return ref


def _fuzz_one(rng, seq, sigma, n_ops, with_pred):
    ref = []
    for _ in range(n_ops):
        kind = rng.random()
        n = len(ref)
        if kind < 0.5 or n == 0:
            i = int(rng.integers(0, n + 1))
            v = int(rng.integers(0, sigma))
            seq.insert(i, v)
            ref.insert(i, v)
        elif kind < 0.6:
            i = int(rng.integers(0, n))
            assert seq.access(i) == ref[i]
        elif kind < 0.75:
            i = int(rng.integers(0, n + 1))
            v = int(rng.integers(0, sigma))
            assert seq.rank(v, i) == ref[:i].count(v)
        elif kind < 0.9 or not with_pred:
            v = ref[int(rng.integers(0, n))]
            j = int(rng.integers(0, ref.count(v)))
            pos = [k for k, x in enumerate(ref) if x == v][j]
            assert seq.select(v, j) == pos
        else:
            lo, hi = sorted(int(x) for x in rng.integers(0, n + 1, size=2))
            v = int(rng.integers(0, sigma))
            window = ref[lo:hi]
            below = [x for x in window if x < v]
            above = [x for x in window if x > v]
            exp = (lo + window.index(max(below)), max(below)) if below else None
            assert seq.range_pred(lo, hi, v) == exp
            exp = (lo + window.index(min(above)), min(above)) if above else None
            assert seq.range_succ(lo, hi, v) == exp
    return ref


class _BitAdapter:
    def __init__(self, bv):
        self.bv = bv

    def insert(self, i, v):
        self.bv.insert(i, v)

    def access(self, i):
        return self.bv.access(i)

    def rank(self, v, i):
        return self.bv.rank1(i) if v else self.bv.rank0(i)

    def select(self, v, j):
        return self.bv.select1(j) if v else self.bv.select0(j)

    def tolist(self):
        return self.bv.tolist()


def test_bitvector_fuzz(rng):
    # tiny blocks force many splits and rebuilds
    _fuzz_sequence(rng, lambda: _BitAdapter(DynBitVector(words_per_block=2)), 2, FUZZ_OPS)


def test_bitvector_default_blocks(rng):
    ref = _fuzz_sequence(rng, lambda: _BitAdapter(DynBitVector()), 2, 20_000, max_len=10_000)
    assert len(ref) > 5000


def test_blocked_string_fuzz(rng):
    _fuzz_sequence(rng, lambda: BlockedString(7, cap=8), 7, FUZZ_OPS)


def test_sequence_fuzz(rng):
    _fuzz_sequence(rng, lambda: DynSequence(37, words_per_block=2), 37, FUZZ_OPS, with_pred=True)


def test_sequence_large_alphabet(rng):
    _fuzz_sequence(rng, lambda: DynSequence(1 << 17), 1 << 17, 20_000, with_pred=True)


def test_sequence_rejects_bad_arguments():
    seq = DynSequence(4)
    with pytest.raises(InvalidArgumentError):
        seq.insert(0, 4)
    with pytest.raises(InvalidArgumentError):
        seq.insert(1, 0)
    seq.insert(0, 2)
    with pytest.raises(InvalidArgumentError):
        seq.select(1, 0)
    with pytest.raises(InvalidArgumentError):
        seq.range_pred(1, 0, 3)


def _rows_by_prefix(full):
    """Map colex row -> prefix length via the suffix array of the reversed text."""
    m = len(full)
    sa = build_suffix_index(np.asarray(full[::-1], dtype=np.int32)).sa
    return [m - int(s) for s in sa]


def test_bwt_fuzz(rng):
    sigma = 5
    ops = 0
    while ops < FUZZ_OPS:
        if ops % 20_000 == 0:
            bwt = DynBWT(sigma, virtual_prefix=False, cap=16)
            text = []
        for _ in range(400):
            c = int(rng.integers(0, sigma))
            text.append(c)
            bwt.extend(c)
            ops += 1
        expect = static_bwt(np.asarray(text[::-1]))
        assert bwt.symbols() == [DOLLAR if x == TERMINATOR else int(x) for x in expect]
        prefix_of = _rows_by_prefix(text)
        row_of = {L: k for k, L in enumerate(prefix_of)}
        assert bwt.dollar_row == row_of[len(text)]
        for _ in range(600):
            row = int(rng.integers(0, len(bwt)))
            L = prefix_of[row]
            kind = rng.integers(0, 4)
            if kind == 0:
                assert bwt.access(row) == (text[L] if L < len(text) else DOLLAR)
            elif kind == 1 and L < len(text):
                assert bwt.lf(row) == row_of[L + 1]
            elif kind == 2 and L > 0:
                assert bwt.fl(row) == row_of[L - 1]
            else:
                lo = int(rng.integers(0, len(bwt) + 1))
                hi = min(len(bwt), lo + int(rng.integers(0, 64)))
                c = int(rng.integers(0, sigma))
                rows = sorted(row_of[prefix_of[k] + 1] for k in range(lo, hi)
                              if prefix_of[k] < len(text) and text[prefix_of[k]] == c)
                got = bwt.backward_step(lo, hi, c)
                if rows:
                    assert got == (rows[0], rows[-1] + 1)
                    assert rows == list(range(rows[0], rows[-1] + 1))
                else:
                    assert got is None
            ops += 1


@pytest.mark.parametrize("sigma", [1, 2, 3, 8, 26])
def test_bwt_matches_static_reversed(rng, sigma):
    for n in list(range(1, 20)) + [64, 128, 256]:
        text = random_text(rng, n, sigma)
        plain = DynBWT(sigma, virtual_prefix=False)
        for c in text.symbols.tolist():
            plain.extend(c)
        expect = static_bwt(text.symbols[::-1])
        assert plain.symbols() == [DOLLAR if x == TERMINATOR else int(x) for x in expect]
        # with the virtual prefix the index covers the full logical text
        virt = DynBWT(sigma)
        for c in text.symbols.tolist():
            virt.extend(c)
        expect = static_bwt(text.full()[::-1])
        assert virt.symbols() == [DOLLAR if x == TERMINATOR else int(x) for x in expect]


def test_bwt_virtual_prefix_start():
    bwt = DynBWT(2)
    # T' = "ba": prefixes "", "b", "ba" in colex order are "", "ba", "b"
    assert bwt.symbols() == [1, DOLLAR, 0]
    assert bwt.dollar_row == 1


def test_bwt_errors():
    bwt = DynBWT(3)
    with pytest.raises(InvalidArgumentError):
        bwt.extend(3)
    with pytest.raises(InvalidArgumentError):
        bwt.lf(bwt.dollar_row)
    with pytest.raises(InvalidArgumentError):
        bwt.fl(0)
    with pytest.raises(InvalidArgumentError):
        DynBWT(0)


def test_insert_marks():
    marks = InsertMarks()
    marks.add(5)
    marks.add(2)  # shifts 5 -> 6
    assert list(marks) == [2, 6]
    marks.on_insert(3)
    assert list(marks) == [2, 7]
    assert marks.count_between(0, 10) == 2
    assert marks.count_between(7, 2) == 0
    assert marks.count_between(1, 7) == 1
    marks.reset()
    assert len(marks) == 0


def test_text_full_layout():
    t = Text.from_string("abba", "ab")
    assert t.full().tolist() == [1, 0, 0, 1, 1, 0]
