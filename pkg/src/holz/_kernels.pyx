# cython: language_level=3
"""Compiled inner loops: static indexes, parsers, arc generation, DP, bit packing.

Text positions are indices into the full logical text ``T'`` (virtual
prefix included); ``N = len(T')`` and the terminator suffix is ``N``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint64_t, uint8_t

from holz._dynamic cimport DynBWT, DynSequence, BlockedString, i64
from holz.errors import CorruptInputError, DecodeError, HolzError, InvalidArgumentError

cnp.import_array()

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long x) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long x) nogil
    int clz64 "__builtin_clzll"(unsigned long long x) nogil

GAMMA = 0
DELTA = 1
BINARY_LENGTH = 2

cdef i64 INF = 0x3FFFFFFFFFFFFFFF


cdef inline int floor_log2(i64 x) noexcept nogil:
    return 63 - clz64(<unsigned long long>x)


cdef inline int code_bits(int code, i64 x) noexcept nogil:
    cdef int lg = floor_log2(x)
    if code == 0:
        return 2 * lg + 1
    if code == 1:
        return lg + 2 * floor_log2(lg + 1) + 1
    return lg + 1


def code_len(int code, i64 x):
    if x < 1:
        raise InvalidArgumentError(f"code length is defined for x >= 1, got {x}")
    if code < 0 or code > 2:
        raise InvalidArgumentError(f"unknown code {code}")
    return code_bits(code, x)


cdef inline int _select_in_word(uint64_t w, int j) noexcept nogil:
    while j > 0:
        w &= w - 1
        j -= 1
    return ctz64(w)


# ---------------------------------------------------------------------------
# static wavelet matrix


cdef class StaticWM:
    """Wavelet matrix over a fixed non-negative integer array."""

    cdef readonly Py_ssize_t length
    cdef readonly int height
    cdef readonly i64 sigma
    cdef uint64_t[:, ::1] bits
    cdef int64_t[:, ::1] ranks
    cdef int64_t[::1] zeros

    def __init__(self, values, i64 sigma=-1):
        cur = np.ascontiguousarray(values, dtype=np.int64)
        n = cur.shape[0]
        if n and cur.min() < 0:
            raise InvalidArgumentError("wavelet matrix values must be non-negative")
        if sigma < 0:
            sigma = int(cur.max()) + 1 if n else 1
        elif n and cur.max() >= sigma:
            raise InvalidArgumentError("value exceeds sigma")
        self.sigma = sigma
        self.length = n
        self.height = max(1, int(sigma - 1).bit_length())
        nwords = (n >> 6) + 1
        bits = np.zeros((self.height, nwords), dtype=np.uint64)
        ranks = np.zeros((self.height, nwords + 1), dtype=np.int64)
        zeros = np.zeros(self.height, dtype=np.int64)
        for l in range(self.height):
            b = ((cur >> (self.height - 1 - l)) & 1).astype(np.uint8)
            padded = np.zeros(nwords * 64, dtype=np.uint8)
            padded[:n] = b
            bits[l] = np.packbits(padded, bitorder="little").view("<u8")
            ranks[l, 1:] = np.cumsum(padded.reshape(nwords, 64).sum(axis=1, dtype=np.int64))
            zeros[l] = n - int(b.sum())
            cur = np.concatenate([cur[b == 0], cur[b == 1]])
        self.bits = bits
        self.ranks = ranks
        self.zeros = zeros

    cdef inline i64 _rank1(self, int l, i64 i) noexcept nogil:
        cdef i64 w = i >> 6
        cdef int r = <int>(i & 63)
        if r == 0:
            return self.ranks[l, w]
        return self.ranks[l, w] + popcount64(self.bits[l, w] & ((<uint64_t>1 << r) - 1))

    cdef i64 _select_bit(self, int l, int b, i64 j) noexcept nogil:
        # position of the j-th (0-based) bit b on level l
        cdef i64 lo = 0, hi = self.ranks.shape[1] - 1, mid, c
        cdef uint64_t w
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            c = self.ranks[l, mid] if b else mid * 64 - self.ranks[l, mid]
            if c <= j:
                lo = mid
            else:
                hi = mid
        c = self.ranks[l, lo] if b else lo * 64 - self.ranks[l, lo]
        w = self.bits[l, lo] if b else ~self.bits[l, lo]
        return lo * 64 + _select_in_word(w, <int>(j - c))

    cdef i64 _access(self, i64 i) noexcept nogil:
        cdef int l, h = self.height, b
        cdef i64 v = 0
        for l in range(h):
            b = (self.bits[l, i >> 6] >> (i & 63)) & 1
            if b:
                i = self.zeros[l] + self._rank1(l, i)
            else:
                i = i - self._rank1(l, i)
            v = (v << 1) | b
        return v

    cdef i64 _rank(self, i64 v, i64 i) noexcept nogil:
        cdef int l, h = self.height
        cdef i64 s = 0, e = i
        for l in range(h):
            if (v >> (h - 1 - l)) & 1:
                s = self.zeros[l] + self._rank1(l, s)
                e = self.zeros[l] + self._rank1(l, e)
            else:
                s = s - self._rank1(l, s)
                e = e - self._rank1(l, e)
            if s >= e:
                return 0
        return e - s

    cdef i64 _select(self, i64 v, i64 j) noexcept nogil:
        cdef int l, h = self.height
        cdef i64 s = 0, pos
        for l in range(h):
            if (v >> (h - 1 - l)) & 1:
                s = self.zeros[l] + self._rank1(l, s)
            else:
                s = s - self._rank1(l, s)
        pos = s + j
        for l in range(h - 1, -1, -1):
            if (v >> (h - 1 - l)) & 1:
                pos = self._select_bit(l, 1, pos - self.zeros[l])
            else:
                pos = self._select_bit(l, 0, pos)
        return pos

    cdef i64 _prev_value(self, i64 lo, i64 hi, i64 v) noexcept nogil:
        # largest value < v in [lo, hi), -1 if none
        cdef int l, h = self.height, fb_l = -1
        cdef i64 x, prefix = 0, fb_prefix = 0
        cdef i64 s = lo, e = hi, s1, e1, fb_s = 0, fb_e = 0
        if v <= 0 or lo >= hi:
            return -1
        x = v - 1
        if x >= (<i64>1 << h):
            x = (<i64>1 << h) - 1
        for l in range(h):
            s1 = self._rank1(l, s)
            e1 = self._rank1(l, e)
            if (x >> (h - 1 - l)) & 1:
                if (e - e1) > (s - s1):
                    fb_l = l
                    fb_s = s - s1
                    fb_e = e - e1
                    fb_prefix = prefix << 1
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
            else:
                s = s - s1
                e = e - e1
                prefix = prefix << 1
            if s >= e:
                break
        if s < e:
            return x
        if fb_l < 0:
            return -1
        s = fb_s
        e = fb_e
        prefix = fb_prefix
        for l in range(fb_l + 1, h):
            s1 = self._rank1(l, s)
            e1 = self._rank1(l, e)
            if e1 > s1:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
            else:
                s = s - s1
                e = e - e1
                prefix = prefix << 1
        return prefix

    cdef i64 _next_value(self, i64 lo, i64 hi, i64 v) noexcept nogil:
        # smallest value > v in [lo, hi), -1 if none
        cdef int l, h = self.height, fb_l = -1
        cdef i64 x, prefix = 0, fb_prefix = 0
        cdef i64 s = lo, e = hi, s1, e1, fb_s = 0, fb_e = 0
        if lo >= hi:
            return -1
        x = v + 1 if v >= 0 else 0
        if x >= (<i64>1 << h):
            return -1
        for l in range(h):
            s1 = self._rank1(l, s)
            e1 = self._rank1(l, e)
            if (x >> (h - 1 - l)) & 1:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
            else:
                if e1 > s1:
                    fb_l = l
                    fb_s = self.zeros[l] + s1
                    fb_e = self.zeros[l] + e1
                    fb_prefix = (prefix << 1) | 1
                s = s - s1
                e = e - e1
                prefix = prefix << 1
            if s >= e:
                break
        if s < e:
            return x
        if fb_l < 0:
            return -1
        s = fb_s
        e = fb_e
        prefix = fb_prefix
        for l in range(fb_l + 1, h):
            s1 = self._rank1(l, s)
            e1 = self._rank1(l, e)
            if (e - e1) > (s - s1):
                s = s - s1
                e = e - e1
                prefix = prefix << 1
            else:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
        return prefix

    def _check_range(self, i64 lo, i64 hi):
        if lo < 0 or hi > self.length or lo > hi:
            raise InvalidArgumentError(f"range [{lo}, {hi}) invalid for length {self.length}")

    def __len__(self):
        return self.length

    def access(self, i64 i):
        if i < 0 or i >= self.length:
            raise InvalidArgumentError(f"position {i} outside [0, {self.length})")
        return self._access(i)

    def rank(self, i64 v, i64 i):
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"rank bound {i} outside [0, {self.length}]")
        if v < 0 or v >= (<i64>1 << self.height):
            return 0
        return self._rank(v, i)

    def select(self, i64 v, i64 j):
        if j < 0 or j >= self.rank(v, self.length):
            raise InvalidArgumentError(f"value {v} has no occurrence #{j}")
        return self._select(v, j)

    def range_pred(self, i64 lo, i64 hi, i64 v):
        """Largest value ``< v`` in ``[lo, hi)`` as ``(leftmost index, value)``, or None."""
        self._check_range(lo, hi)
        cdef i64 w = self._prev_value(lo, hi, v)
        if w < 0:
            return None
        return self._select(w, self._rank(w, lo)), w

    def range_succ(self, i64 lo, i64 hi, i64 v):
        """Smallest value ``> v`` in ``[lo, hi)`` as ``(leftmost index, value)``, or None."""
        self._check_range(lo, hi)
        cdef i64 w = self._next_value(lo, hi, v)
        if w < 0:
            return None
        return self._select(w, self._rank(w, lo)), w


# ---------------------------------------------------------------------------
# range minimum and the suffix index


cdef class RangeMin:
    """Range-minimum over an int32 array: sparse table over 32-wide blocks."""

    cdef int32_t[::1] a
    cdef int32_t[:, ::1] table
    cdef readonly Py_ssize_t length

    def __init__(self, values):
        a = np.ascontiguousarray(values, dtype=np.int32)
        self.a = a
        self.length = a.shape[0]
        nb = max(1, (self.length + 31) >> 5)
        padded = np.full(nb * 32, np.iinfo(np.int32).max, dtype=np.int32)
        padded[: self.length] = a
        prev = padded.reshape(nb, 32).min(axis=1)
        levels = [prev]
        k = 1
        while (1 << k) <= nb:
            half = 1 << (k - 1)
            cur = prev.copy()
            cur[: nb - half] = np.minimum(prev[: nb - half], prev[half:])
            levels.append(cur)
            prev = cur
            k += 1
        self.table = np.ascontiguousarray(np.vstack(levels))

    cdef int32_t _query(self, i64 lo, i64 hi) noexcept nogil:
        # minimum over a[lo..hi], inclusive, lo <= hi
        cdef i64 bl = lo >> 5, bh = hi >> 5, t
        cdef int32_t m = 0x7FFFFFFF, x
        cdef int k
        if bl == bh:
            for t in range(lo, hi + 1):
                if self.a[t] < m:
                    m = self.a[t]
            return m
        for t in range(lo, (bl + 1) << 5):
            if self.a[t] < m:
                m = self.a[t]
        for t in range(bh << 5, hi + 1):
            if self.a[t] < m:
                m = self.a[t]
        if bh - bl > 1:
            k = floor_log2(bh - bl - 1)
            x = self.table[k, bl + 1]
            if x < m:
                m = x
            x = self.table[k, bh - (1 << k)]
            if x < m:
                m = x
        return m

    def query(self, i64 lo, i64 hi):
        """Minimum over the inclusive range ``[lo, hi]``."""
        if lo < 0 or hi >= self.length or lo > hi:
            raise InvalidArgumentError(f"range [{lo}, {hi}] invalid for length {self.length}")
        return self._query(lo, hi)


cdef class TextIndex:
    """Suffix array, inverse and LCP of ``T'`` plus a smallest terminator.

    ``sa[0] == N`` is the terminator; ``lcp[i]`` is the common-prefix length
    of ``sa[i-1]`` and ``sa[i]`` (``lcp[0] == 0``).
    """

    cdef readonly Py_ssize_t n_full
    cdef int32_t[::1] text
    cdef int64_t[::1] sa_v
    cdef int64_t[::1] isa_v
    cdef int32_t[::1] lcp_v
    cdef RangeMin rmq
    cdef readonly object sa, isa, lcp

    def __init__(self, text):
        from pydivsufsort import divsufsort, kasai

        t = np.ascontiguousarray(text, dtype=np.int32)
        N = t.shape[0]
        self.n_full = N
        self.text = t
        if N and t.max() < 256:
            src = t.astype(np.uint8)
        else:
            src = t
        sa = np.empty(N + 1, dtype=np.int64)
        sa[0] = N
        lcp = np.zeros(N + 1, dtype=np.int32)
        if N:
            raw = divsufsort(src)
            sa[1:] = raw
            if N > 1:
                lcp[2:] = kasai(src, raw)[: N - 1]
        isa = np.empty(N + 1, dtype=np.int64)
        isa[sa] = np.arange(N + 1, dtype=np.int64)
        self.sa = sa
        self.isa = isa
        self.lcp = lcp
        self.sa_v = sa
        self.isa_v = isa
        self.lcp_v = lcp
        self.rmq = RangeMin(lcp)

    cdef inline i64 _lce_rank(self, i64 a, i64 b) noexcept nogil:
        # common prefix of the suffixes with ranks a != b
        if a > b:
            a, b = b, a
        return self.rmq._query(a + 1, b)

    cdef inline i64 _lce(self, i64 i, i64 j) noexcept nogil:
        if i == j:
            return self.n_full - i
        return self._lce_rank(self.isa_v[i], self.isa_v[j])

    def lcp_min(self, i64 lo, i64 hi):
        """Minimum of ``lcp[lo..hi]`` (inclusive)."""
        return self.rmq.query(lo, hi)

    def lce(self, i64 i, i64 j):
        """Longest common extension of the suffixes starting at ``i`` and ``j``."""
        if i < 0 or j < 0 or i > self.n_full or j > self.n_full:
            raise InvalidArgumentError(f"positions ({i}, {j}) outside [0, {self.n_full}]")
        return self._lce(i, j)


def psv_nsv(sa_values):
    """Previous/next smaller value indices over ``sa_values`` (``-1`` if none)."""
    cdef int64_t[::1] sa = np.ascontiguousarray(sa_values, dtype=np.int64)
    cdef Py_ssize_t m = sa.shape[0], i, top = 0
    psv = np.full(m, -1, dtype=np.int64)
    nsv = np.full(m, -1, dtype=np.int64)
    cdef int64_t[::1] ps = psv, ns = nsv
    cdef int64_t[::1] stack = np.empty(m + 1, dtype=np.int64)
    for i in range(m):
        while top > 0 and sa[stack[top - 1]] > sa[i]:
            ns[stack[top - 1]] = i
            top -= 1
        if top > 0:
            ps[i] = stack[top - 1]
        stack[top] = i
        top += 1
    return psv, nsv


# ---------------------------------------------------------------------------
# greedy textual parsers


def greedy_nsvpsv(TextIndex idx, int sigma):
    """Greedy parse; source = lex neighbour with the larger LCE (tie: larger start)."""
    cdef i64 N = idx.n_full, P = sigma, i, s, l, s2, l2
    psv_a, nsv_a = psv_nsv(idx.sa)
    cdef int64_t[::1] psv = psv_a, nsv = nsv_a, sa = idx.sa_v, isa = idx.isa_v
    offs = np.empty(max(N - sigma, 0), dtype=np.int64)
    lens = np.empty(max(N - sigma, 0), dtype=np.int64)
    cdef int64_t[::1] ov = offs, lv = lens
    cdef Py_ssize_t z = 0
    while P < N:
        i = isa[P]
        s = -1
        l = 0
        if psv[i] >= 0:
            s = sa[psv[i]]
            l = idx._lce_rank(psv[i], i)
        if nsv[i] >= 0:
            s2 = sa[nsv[i]]
            l2 = idx._lce_rank(nsv[i], i)
            if s < 0 or l2 > l or (l2 == l and s2 > s):
                s = s2
                l = l2
        if l < 1:
            raise HolzError(f"no source for position {P}; the virtual prefix is inconsistent")
        ov[z] = P - s
        lv[z] = l
        z += 1
        P += l
    return offs[:z].copy(), lens[:z].copy()


cdef i64 _interval_lo(TextIndex idx, i64 i, i64 l) noexcept nogil:
    # smallest lo <= i with lcp[lo+1..i] >= l
    cdef i64 step = 1, good = i, bad = -1, mid
    while True:
        mid = i - step
        if mid < 0:
            break
        if idx.rmq._query(mid + 1, i) >= l:
            good = mid
            step <<= 1
        else:
            bad = mid
            break
    if bad < 0:
        bad = -1
    while good - bad > 1:
        mid = (good + bad) >> 1
        if idx.rmq._query(mid + 1, i) >= l:
            good = mid
        else:
            bad = mid
    return good


cdef i64 _interval_hi(TextIndex idx, i64 i, i64 l) noexcept nogil:
    # largest hi >= i with lcp[i+1..hi] >= l
    cdef i64 last = idx.n_full, step = 1, good = i, bad = last + 1, mid
    while True:
        mid = i + step
        if mid > last:
            break
        if idx.rmq._query(i + 1, mid) >= l:
            good = mid
            step <<= 1
        else:
            bad = mid
            break
    while bad - good > 1:
        mid = (good + bad) >> 1
        if idx.rmq._query(i + 1, mid) >= l:
            good = mid
        else:
            bad = mid
    return good


def greedy_rightmost(TextIndex idx, StaticWM wm_sa, int sigma):
    """Greedy parse whose source is the closest earlier occurrence."""
    cdef i64 N = idx.n_full, P = sigma, i, l, l2, lo, hi, s
    psv_a, nsv_a = psv_nsv(idx.sa)
    cdef int64_t[::1] psv = psv_a, nsv = nsv_a, isa = idx.isa_v
    offs = np.empty(max(N - sigma, 0), dtype=np.int64)
    lens = np.empty(max(N - sigma, 0), dtype=np.int64)
    cdef int64_t[::1] ov = offs, lv = lens
    cdef Py_ssize_t z = 0
    while P < N:
        i = isa[P]
        l = 0
        if psv[i] >= 0:
            l = idx._lce_rank(psv[i], i)
        if nsv[i] >= 0:
            l2 = idx._lce_rank(nsv[i], i)
            if l2 > l:
                l = l2
        if l < 1:
            raise HolzError(f"no source for position {P}; the virtual prefix is inconsistent")
        lo = _interval_lo(idx, i, l)
        hi = _interval_hi(idx, i, l)
        s = wm_sa._prev_value(lo, hi + 1, P)
        ov[z] = P - s
        lv[z] = l
        z += 1
        P += l
    return offs[:z].copy(), lens[:z].copy()


def decode_text(offs, lens, int sigma, i64 n):
    """Rebuild the body from textual (offset, length) pairs."""
    cdef int64_t[::1] ov = np.ascontiguousarray(offs, dtype=np.int64)
    cdef int64_t[::1] lv = np.ascontiguousarray(lens, dtype=np.int64)
    cdef i64 N = sigma + n, P = sigma, k, off, l, f
    out = np.empty(N, dtype=np.int32)
    cdef int32_t[::1] t = out
    for k in range(sigma):
        t[k] = sigma - 1 - k
    for f in range(ov.shape[0]):
        off = ov[f]
        l = lv[f]
        if l < 1 or l > N - P:
            raise CorruptInputError(f"factor {f}: length {l} overruns the text")
        if off < 1 or off > P:
            raise CorruptInputError(f"factor {f}: offset {off} outside [1, {P}]")
        for k in range(l):
            t[P] = t[P - off]
            P += 1
    if P != N:
        raise CorruptInputError(f"factors cover {P - sigma} symbols, expected {n}")
    return out[sigma:].copy()


# ---------------------------------------------------------------------------
# HOLZ


def holz_encode(text, int sigma, int cap=2048):
    """Greedy HOLZ parse of ``T'``; returns signed colex offsets and lengths."""
    cdef int32_t[::1] t = np.ascontiguousarray(text, dtype=np.int32)
    cdef i64 N = t.shape[0], P = sigma, l, lo, hi, a, b, c, d
    cdef i64 rp, tp, ts, k, m, between, off_p, off_s, best
    cdef bint has_p, has_s
    cdef DynBWT bwt = DynBWT(sigma, True, cap)
    cdef BlockedString seq = bwt.seq
    offs = np.empty(max(N - sigma, 0), dtype=np.int64)
    lens = np.empty(max(N - sigma, 0), dtype=np.int64)
    cdef int64_t[::1] ov = offs, lv = lens
    cdef int64_t[::1] marks = np.empty(max(N - sigma, 1), dtype=np.int64)
    cdef Py_ssize_t z = 0
    while P < N:
        lo = 0
        hi = P + 1
        l = 0
        while P + l < N:
            c = t[P + l]
            a = bwt.C[c] + seq._rank(<int>c + 1, lo)
            b = bwt.C[c] + seq._rank(<int>c + 1, hi)
            if a >= b:
                break
            bwt._extend(<int>c)
            lo = a
            hi = b + 1
            l += 1
        d = bwt.dollar
        has_p = d - 1 >= lo
        has_s = d + 1 < hi
        # walk the $ row and both neighbours back l steps; the $ path visits
        # exactly the rows inserted for this factor
        rp = d
        tp = d - 1
        ts = d + 1
        for k in range(l):
            marks[k] = rp
            rp = bwt._fl(rp)
            if has_p:
                tp = bwt._fl(tp)
            if has_s:
                ts = bwt._fl(ts)
        off_p = 0
        off_s = 0
        if has_p:
            between = 0
            for m in range(l):
                if tp < marks[m] < rp:
                    between += 1
            off_p = (rp - tp) - between
        if has_s:
            between = 0
            for m in range(l):
                if rp < marks[m] < ts:
                    between += 1
            off_s = (rp - ts) + between
        if has_p and (not has_s or off_p <= -off_s):
            best = off_p
        else:
            best = off_s
        if l < 1 or best == 0:
            raise HolzError(f"no admissible source at position {P}")
        ov[z] = best
        lv[z] = l
        z += 1
        P += l
    return offs[:z].copy(), lens[:z].copy()


def holz_decode(offs, lens, int sigma, i64 n, int cap=2048):
    """Rebuild the body from colex (offset, length) pairs."""
    cdef int64_t[::1] ov = np.ascontiguousarray(offs, dtype=np.int64)
    cdef int64_t[::1] lv = np.ascontiguousarray(lens, dtype=np.int64)
    cdef DynBWT bwt = DynBWT(sigma, True, cap)
    cdef i64 N = sigma + n, P = sigma, f, l, off, tr, nt, x, k, rows
    cdef int c
    out = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] o = out
    for f in range(ov.shape[0]):
        off = ov[f]
        l = lv[f]
        rows = P + 1
        if l < 1 or l > N - P:
            raise CorruptInputError(f"factor {f}: length {l} overruns the text")
        tr = bwt.dollar - off
        if off == 0 or tr < 0 or tr >= rows:
            raise CorruptInputError(f"factor {f}: offset {off} points outside the prefix table")
        for k in range(l):
            if tr == bwt.dollar:
                raise CorruptInputError(f"factor {f}: source runs into the current position")
            c = bwt._symbol(tr)
            nt = bwt._lf(tr)
            x = bwt._extend(c)
            if x <= nt:
                nt += 1
            o[P - sigma] = c
            P += 1
            tr = nt
    if P != N:
        raise CorruptInputError(f"factors cover {P - sigma} symbols, expected {n}")
    return out


# ---------------------------------------------------------------------------
# bit-optimal parsing


cdef class _ArcBuffer:
    cdef int64_t[::1] off
    cdef int64_t[::1] ln
    cdef int32_t[::1] bits
    cdef Py_ssize_t size
    cdef object _o, _l, _b

    def __init__(self, Py_ssize_t cap):
        cap = max(cap, 16)
        self._o = np.empty(cap, dtype=np.int64)
        self._l = np.empty(cap, dtype=np.int64)
        self._b = np.empty(cap, dtype=np.int32)
        self.off = self._o
        self.ln = self._l
        self.bits = self._b
        self.size = 0

    cdef void push(self, i64 off, i64 ln, int bits):
        if self.size == self.off.shape[0]:
            m = self.size * 2
            self._o = np.resize(self._o, m)
            self._l = np.resize(self._l, m)
            self._b = np.resize(self._b, m)
            self.off = self._o
            self.ln = self._l
            self.bits = self._b
        self.off[self.size] = off
        self.ln[self.size] = ln
        self.bits[self.size] = bits
        self.size += 1

    def result(self):
        k = self.size
        return self._o[:k].copy(), self._l[:k].copy(), self._b[:k].copy()


def gen_arcs_text(TextIndex idx, StaticWM wm_isa, int sigma, cls_lo, cls_hi, cls_bits):
    """Maximal arcs with textual offsets for every body position (CSR layout)."""
    cdef int64_t[::1] clo = np.ascontiguousarray(cls_lo, dtype=np.int64)
    cdef int64_t[::1] chi = np.ascontiguousarray(cls_hi, dtype=np.int64)
    cdef int32_t[::1] cbits = np.ascontiguousarray(cls_bits, dtype=np.int32)
    cdef int64_t[::1] sa = idx.sa_v, isa = idx.isa_v
    cdef i64 N = idx.n_full, n = N - sigma, P, v, u, lmax, run, wlo, whi, best, bpos, l1, k
    cdef int ncls = clo.shape[0]
    ptr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] pv = ptr
    cdef _ArcBuffer buf = _ArcBuffer(4 * n)
    for P in range(sigma, N):
        v = isa[P]
        lmax = 0
        u = wm_isa._prev_value(0, P, v)
        if u >= 0:
            lmax = idx._lce_rank(u, v)
        u = wm_isa._next_value(0, P, v)
        if u >= 0:
            l1 = idx._lce_rank(u, v)
            if l1 > lmax:
                lmax = l1
        run = 0
        for k in range(ncls):
            if clo[k] > P or run >= lmax:
                break
            whi = P - clo[k] + 1
            wlo = P - chi[k] if chi[k] < P else 0
            best = 0
            bpos = -1
            u = wm_isa._prev_value(wlo, whi, v)
            if u >= 0:
                best = idx._lce_rank(u, v)
                bpos = sa[u]
            u = wm_isa._next_value(wlo, whi, v)
            if u >= 0:
                l1 = idx._lce_rank(u, v)
                if l1 > best or (l1 == best and sa[u] > bpos):
                    best = l1
                    bpos = sa[u]
            if best > run:
                buf.push(P - bpos, best, cbits[k])
                run = best
        pv[P - sigma + 1] = buf.size
    o, l, b = buf.result()
    return ptr, o, l, b


def gen_arcs_colex(text, TextIndex idx, int sigma, cls_lo, cls_hi, cls_bits, int cap=2048):
    """Maximal arcs with signed colex offsets, driven by a dynamic BWT and DyWa.

    DyWa maps the colex row of prefix ``L`` to the lexicographic rank of the
    suffix starting at ``L``, so a range predecessor/successor of the rank
    of suffix ``P`` inside a row window finds that window's best source.
    Offset bits include the sign bit.
    """
    cdef int32_t[::1] t = np.ascontiguousarray(text, dtype=np.int32)
    cdef int64_t[::1] clo = np.ascontiguousarray(cls_lo, dtype=np.int64)
    cdef int64_t[::1] chi = np.ascontiguousarray(cls_hi, dtype=np.int64)
    cdef int32_t[::1] cbits = np.ascontiguousarray(cls_bits, dtype=np.int32)
    cdef int64_t[::1] isa = idx.isa_v
    cdef i64 N = idx.n_full, n = N - sigma, P, L, v, u, d, rows, lmax, run, k, l1
    cdef i64 best, bval, wlo, whi, side, row, reach
    cdef int ncls = clo.shape[0]
    cdef DynBWT bwt = DynBWT(sigma, False, cap)
    cdef DynSequence dywa = DynSequence(N + 1, 8)
    cdef i64 x
    dywa._insert(0, isa[0])
    for L in range(sigma):
        x = bwt._extend(t[L])
        dywa._insert(x, isa[L + 1])
    ptr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] pv = ptr
    cdef _ArcBuffer buf = _ArcBuffer(4 * n)
    for P in range(sigma, N):
        v = isa[P]
        d = bwt.dollar
        rows = P + 1
        lmax = 0
        for side in range(2):
            if side == 0:
                wlo = 0
                whi = d
            else:
                wlo = d + 1
                whi = rows
            u = dywa._prev_value(wlo, whi, v)
            if u >= 0:
                l1 = idx._lce_rank(u, v)
                if l1 > lmax:
                    lmax = l1
            u = dywa._next_value(wlo, whi, v)
            if u >= 0:
                l1 = idx._lce_rank(u, v)
                if l1 > lmax:
                    lmax = l1
        reach = d if d > rows - 1 - d else rows - 1 - d
        run = 0
        for k in range(ncls):
            if clo[k] > reach or run >= lmax:
                break
            best = 0
            bval = -1
            for side in range(2):
                if side == 0:
                    whi = d - clo[k] + 1
                    wlo = d - chi[k] if chi[k] < d else 0
                    if whi <= 0:
                        continue
                else:
                    wlo = d + clo[k]
                    whi = d + chi[k] + 1 if chi[k] < rows - d else rows
                    if wlo >= rows:
                        continue
                # within a class both sides cost the same; the first side
                # (positive offsets) wins ties
                u = dywa._prev_value(wlo, whi, v)
                if u >= 0:
                    l1 = idx._lce_rank(u, v)
                    if l1 > best:
                        best = l1
                        bval = u
                u = dywa._next_value(wlo, whi, v)
                if u >= 0:
                    l1 = idx._lce_rank(u, v)
                    if l1 > best:
                        best = l1
                        bval = u
            if best > run:
                row = dywa._select(bval, 0)
                buf.push(d - row, best, cbits[k] + 1)
                run = best
        pv[P - sigma + 1] = buf.size
        x = bwt._extend(t[P])
        dywa._insert(x, isa[P + 1])
    o, l, b = buf.result()
    return ptr, o, l, b


def shortest_path(i64 n, arc_ptr, arc_off, arc_len, arc_bits, int code):
    """Minimum-bit parse over per-node maximal arcs.

    Node ``i`` arcs must be ordered by increasing offset cost with strictly
    increasing lengths, so lengths in ``(len[k-1], len[k]]`` are priced by
    arc ``k``.  A backward DP with a range-min segment tree over the suffix
    distances handles every length, not only the arc maxima.  Ties: fewer
    factors, then the cheaper-offset arc, then the longer factor.

    Returns ``(bits, offs, lens)``.
    """
    cdef int64_t[::1] ptr = np.ascontiguousarray(arc_ptr, dtype=np.int64)
    cdef int64_t[::1] aoff = np.ascontiguousarray(arc_off, dtype=np.int64)
    cdef int64_t[::1] alen = np.ascontiguousarray(arc_len, dtype=np.int64)
    cdef int32_t[::1] abits = np.ascontiguousarray(arc_bits, dtype=np.int32)
    cdef i64 K = n + 1, size = 1, i, a, s, e, prev, bestkey, bestlen, bestarc, cand, q
    cdef i64 qk, qi, lo, hi, pos
    cdef int lb
    if ptr.shape[0] != n + 1:
        raise InvalidArgumentError("arc_ptr must have n + 1 entries")
    while size < n + 1:
        size <<= 1
    tkey_a = np.full(2 * size, INF, dtype=np.int64)
    tidx_a = np.full(2 * size, -1, dtype=np.int64)
    cdef int64_t[::1] tkey = tkey_a, tidx = tidx_a
    choice_len = np.zeros(n, dtype=np.int64)
    choice_arc = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] cl = choice_len, ca = choice_arc
    # leaf n carries distance 0
    pos = size + n
    tkey[pos] = 0
    tidx[pos] = n
    pos >>= 1
    while pos >= 1:
        _pull(tkey, tidx, pos)
        pos >>= 1
    for i in range(n - 1, -1, -1):
        bestkey = INF
        bestlen = 0
        bestarc = -1
        prev = 0
        for a in range(ptr[i], ptr[i + 1]):
            if alen[a] <= prev:
                continue
            s = prev + 1
            while s <= alen[a]:
                e = (<i64>2 << floor_log2(s)) - 1
                if e > alen[a]:
                    e = alen[a]
                lb = code_bits(code, s)
                # range min over dist[i+s .. i+e], largest index on ties
                qk = INF
                qi = -1
                lo = i + s + size
                hi = i + e + size + 1
                while lo < hi:
                    if lo & 1:
                        if tkey[lo] < qk or (tkey[lo] == qk and tidx[lo] > qi):
                            qk = tkey[lo]
                            qi = tidx[lo]
                        lo += 1
                    if hi & 1:
                        hi -= 1
                        if tkey[hi] < qk or (tkey[hi] == qk and tidx[hi] > qi):
                            qk = tkey[hi]
                            qi = tidx[hi]
                    lo >>= 1
                    hi >>= 1
                if qk < INF:
                    cand = qk + (abits[a] + lb) * K + 1
                    if cand < bestkey or (cand == bestkey and a == bestarc):
                        bestkey = cand
                        bestlen = qi - i
                        bestarc = a
                s = e + 1
            prev = alen[a]
        if bestarc < 0:
            raise HolzError(f"node {i} has no outgoing arc")
        cl[i] = bestlen
        ca[i] = bestarc
        pos = size + i
        tkey[pos] = bestkey
        tidx[pos] = i
        pos >>= 1
        while pos >= 1:
            _pull(tkey, tidx, pos)
            pos >>= 1
    offs = []
    lens = []
    i = 0
    while i < n:
        offs.append(aoff[ca[i]])
        lens.append(cl[i])
        i += cl[i]
    bits = tkey[size] // K if n else 0
    return int(bits), np.array(offs, dtype=np.int64), np.array(lens, dtype=np.int64)


cdef inline void _pull(int64_t[::1] tkey, int64_t[::1] tidx, i64 p) noexcept nogil:
    cdef i64 l = 2 * p, r = 2 * p + 1
    if tkey[r] < tkey[l] or (tkey[r] == tkey[l] and tidx[r] > tidx[l]):
        tkey[p] = tkey[r]
        tidx[p] = tidx[r]
    else:
        tkey[p] = tkey[l]
        tidx[p] = tidx[l]


# ---------------------------------------------------------------------------
# bit packing


cdef inline void _put(uint8_t* buf, i64* pos, uint64_t v, int k) noexcept nogil:
    cdef int j
    cdef i64 p = pos[0]
    for j in range(k - 1, -1, -1):
        if (v >> j) & 1:
            buf[p >> 3] |= 0x80 >> (p & 7)
        p += 1
    pos[0] = p


cdef inline void _put_code(uint8_t* buf, i64* pos, int code, uint64_t x) noexcept nogil:
    cdef int lg = floor_log2(x), lg2
    if code == 0:
        pos[0] += lg
        _put(buf, pos, x, lg + 1)
    else:
        lg2 = floor_log2(lg + 1)
        pos[0] += lg2
        _put(buf, pos, lg + 1, lg2 + 1)
        _put(buf, pos, x, lg)


def pack_factors(offs, lens, int code, bint signed):
    """Serialize factors MSB-first; returns ``(payload, offset_bits, length_bits)``.

    Offset bits include the sign bit when ``signed``.
    """
    cdef int64_t[::1] ov = np.ascontiguousarray(offs, dtype=np.int64)
    cdef int64_t[::1] lv = np.ascontiguousarray(lens, dtype=np.int64)
    cdef Py_ssize_t z = ov.shape[0], f
    cdef i64 obits = 0, lbits = 0, pos = 0, o
    if code != 0 and code != 1:
        raise InvalidArgumentError("only gamma (0) and delta (1) can be serialized")
    for f in range(z):
        o = ov[f]
        if o == 0 or (o < 0 and not signed):
            raise InvalidArgumentError(f"factor {f}: offset {o} cannot be encoded")
        if lv[f] < 1:
            raise InvalidArgumentError(f"factor {f}: length {lv[f]} must be positive")
        obits += code_bits(code, o if o > 0 else -o) + (1 if signed else 0)
        lbits += code_bits(code, lv[f])
    out = bytearray((obits + lbits + 7) >> 3)
    cdef uint8_t[::1] ob = out
    cdef uint8_t* buf = &ob[0] if ob.shape[0] else NULL
    for f in range(z):
        o = ov[f]
        if signed:
            _put(buf, &pos, 1 if o < 0 else 0, 1)
        _put_code(buf, &pos, code, o if o > 0 else -o)
        _put_code(buf, &pos, code, lv[f])
    return bytes(out), obits, lbits


cdef inline int _get(const uint8_t* buf, i64 nbits, i64* pos, int k, uint64_t* v) noexcept nogil:
    cdef i64 p = pos[0]
    cdef uint64_t r = 0
    cdef int j
    if p + k > nbits:
        return -1
    for j in range(k):
        r = (r << 1) | ((buf[p >> 3] >> (7 - (p & 7))) & 1)
        p += 1
    pos[0] = p
    v[0] = r
    return 0


cdef inline int _get_gamma(const uint8_t* buf, i64 nbits, i64* pos, uint64_t* v) noexcept nogil:
    cdef int zeros = 0
    cdef i64 p = pos[0]
    while True:
        if p >= nbits:
            return -1
        if (buf[p >> 3] >> (7 - (p & 7))) & 1:
            break
        zeros += 1
        p += 1
        if zeros > 62:
            return -2
    pos[0] = p
    return _get(buf, nbits, pos, zeros + 1, v)


cdef inline int _get_code(const uint8_t* buf, i64 nbits, i64* pos, int code, uint64_t* v) noexcept nogil:
    cdef uint64_t lg1, low
    cdef int rc
    if code == 0:
        return _get_gamma(buf, nbits, pos, v)
    rc = _get_gamma(buf, nbits, pos, &lg1)
    if rc:
        return rc
    if lg1 > 63:
        return -2
    rc = _get(buf, nbits, pos, <int>(lg1 - 1), &low)
    if rc:
        return rc
    v[0] = (<uint64_t>1 << (lg1 - 1)) | low
    return 0


def unpack_factors(const uint8_t[::1] payload, i64 z, int code, bint signed):
    """Inverse of :func:`pack_factors`; the payload must hold exactly ``z`` factors."""
    cdef i64 nbits = payload.shape[0] * 8, pos = 0, f
    cdef uint64_t o, l, sgn
    cdef int rc
    cdef const uint8_t* buf = &payload[0] if payload.shape[0] else NULL
    if code != 0 and code != 1:
        raise InvalidArgumentError("only gamma (0) and delta (1) can be decoded")
    if z < 0 or z > nbits:
        raise CorruptInputError(f"factor count {z} cannot fit in {payload.shape[0]} bytes")
    offs = np.empty(z, dtype=np.int64)
    lens = np.empty(z, dtype=np.int64)
    cdef int64_t[::1] ov = offs, lv = lens
    for f in range(z):
        sgn = 0
        if signed:
            rc = _get(buf, nbits, &pos, 1, &sgn)
            if rc:
                raise DecodeError(f"payload ends inside factor {f}")
        rc = _get_code(buf, nbits, &pos, code, &o)
        if rc == 0:
            rc = _get_code(buf, nbits, &pos, code, &l)
        if rc == -1:
            raise DecodeError(f"payload ends inside factor {f}")
        if rc:
            raise CorruptInputError(f"factor {f}: code word too long")
        if o > 0x3FFFFFFFFFFFFFFF or l > 0x3FFFFFFFFFFFFFFF:
            raise CorruptInputError(f"factor {f}: value out of range")
        ov[f] = -<i64>o if sgn else <i64>o
        lv[f] = <i64>l
    if (pos + 7) >> 3 != payload.shape[0]:
        raise CorruptInputError("trailing bytes after the last factor")
    return offs, lens
