# cython: language_level=3
"""Dynamic rank/select structures.

Everything here is insert-only: the parsers never delete, so no deletion
support is provided.  Positions and rows are 0-based.
"""

import numpy as np
cimport numpy as cnp
from libc.string cimport memmove, memcpy

from holz.errors import InvalidArgumentError

cnp.import_array()

DOLLAR = -1


cdef class BlockedString:
    """Insertable string over ``[0, nsym)`` with rank/select.

    Symbols live in fixed-capacity blocks; a block that fills up is split in
    two.  Per-symbol Fenwick trees over the logical block order give prefix
    counts in O(log B), a block scan finishes the query.
    """

    def __init__(self, int nsym, int cap=1024):
        if nsym < 1 or nsym > 65535:
            raise InvalidArgumentError(f"nsym must be in [1, 65535], got {nsym}")
        if cap < 4:
            raise InvalidArgumentError("block capacity must be at least 4")
        self.nsym = nsym
        self.cap = cap
        self.length = 0
        self.maxblocks = 4
        self.nblocks = 1
        self.data = np.zeros((self.maxblocks, cap), dtype=np.uint16)
        self.order = np.zeros(self.maxblocks, dtype=np.intc)
        self.bsize = np.zeros(self.maxblocks, dtype=np.intc)
        self.bcnt = np.zeros((self.maxblocks, nsym), dtype=np.intc)
        self.fsize = np.zeros(self.maxblocks + 1, dtype=np.intc)
        self.fcnt = np.zeros((nsym, self.maxblocks + 1), dtype=np.intc)
        self.total = np.zeros(nsym, dtype=np.intp)
        self._rebuild()

    # -- internals ---------------------------------------------------------

    cdef void _rebuild(self) noexcept:
        cdef int nb = self.nblocks, k, j, c, slot
        for k in range(1, nb + 1):
            slot = self.order[k - 1]
            self.fsize[k] = self.bsize[slot]
            for c in range(self.nsym):
                self.fcnt[c, k] = self.bcnt[slot, c]
        for k in range(1, nb + 1):
            j = k + (k & -k)
            if j <= nb:
                self.fsize[j] += self.fsize[k]
                for c in range(self.nsym):
                    self.fcnt[c, j] += self.fcnt[c, k]
        self.top = 1
        while self.top * 2 <= nb:
            self.top *= 2

    cdef void _grow(self):
        cdef int m = self.maxblocks * 2
        data = np.zeros((m, self.cap), dtype=np.uint16)
        data[: self.maxblocks] = self.data
        order = np.zeros(m, dtype=np.intc)
        order[: self.maxblocks] = self.order
        bsize = np.zeros(m, dtype=np.intc)
        bsize[: self.maxblocks] = self.bsize
        bcnt = np.zeros((m, self.nsym), dtype=np.intc)
        bcnt[: self.maxblocks] = self.bcnt
        self.data = data
        self.order = order
        self.bsize = bsize
        self.bcnt = bcnt
        self.fsize = np.zeros(m + 1, dtype=np.intc)
        self.fcnt = np.zeros((self.nsym, m + 1), dtype=np.intc)
        self.maxblocks = m

    cdef void _split(self, int k):
        if self.nblocks == self.maxblocks:
            self._grow()
        cdef int slot = self.order[k]
        cdef int s2 = self.nblocks
        cdef int half = self.cap // 2
        cdef int rest = self.cap - half
        cdef int t, c
        memcpy(&self.data[s2, 0], &self.data[slot, half], rest * sizeof(cnp.uint16_t))
        self.bsize[slot] = half
        self.bsize[s2] = rest
        for c in range(self.nsym):
            self.bcnt[slot, c] = 0
            self.bcnt[s2, c] = 0
        for t in range(half):
            self.bcnt[slot, self.data[slot, t]] += 1
        for t in range(rest):
            self.bcnt[s2, self.data[s2, t]] += 1
        t = self.nblocks
        while t > k + 1:
            self.order[t] = self.order[t - 1]
            t -= 1
        self.order[k + 1] = s2
        self.nblocks += 1
        self._rebuild()

    cdef int _locate(self, Py_ssize_t i, Py_ssize_t* off) noexcept:
        # logical block holding position i; i == length maps past the last symbol
        cdef int pos = 0, step = self.top
        cdef Py_ssize_t rem = i
        if i >= self.length:
            off[0] = self.bsize[self.order[self.nblocks - 1]]
            return self.nblocks - 1
        while step > 0:
            if pos + step <= self.nblocks and self.fsize[pos + step] <= rem:
                pos += step
                rem -= self.fsize[pos]
            step >>= 1
        off[0] = rem
        return pos

    cdef Py_ssize_t _prefix_size(self, int k) noexcept:
        cdef Py_ssize_t s = 0
        while k > 0:
            s += self.fsize[k]
            k -= k & -k
        return s

    cdef Py_ssize_t _prefix_count(self, int c, int k) noexcept:
        cdef Py_ssize_t s = 0
        while k > 0:
            s += self.fcnt[c, k]
            k -= k & -k
        return s

    cdef void _fen_add(self, int k, int c, int delta) noexcept:
        # k is the 0-based logical block; delta applies to symbol c only
        k += 1
        while k <= self.nblocks:
            self.fcnt[c, k] += delta
            k += k & -k

    cdef Py_ssize_t _rank(self, int c, Py_ssize_t i) noexcept:
        cdef Py_ssize_t off, r, t
        cdef int k
        cdef cnp.uint16_t* p
        cdef cnp.uint16_t cc = <cnp.uint16_t>c
        if i <= 0:
            return 0
        if i >= self.length:
            return self.total[c]
        k = self._locate(i, &off)
        r = self._prefix_count(c, k)
        p = &self.data[self.order[k], 0]
        for t in range(off):
            r += p[t] == cc
        return r

    cdef int _access(self, Py_ssize_t i) noexcept:
        cdef Py_ssize_t off
        cdef int k = self._locate(i, &off)
        return self.data[self.order[k], off]

    cdef void _insert(self, Py_ssize_t i, int c):
        cdef Py_ssize_t off
        cdef int k = self._locate(i, &off)
        cdef int slot = self.order[k]
        cdef int sz = self.bsize[slot]
        cdef cnp.uint16_t* p = &self.data[slot, 0]
        cdef int j
        if off < sz:
            memmove(p + off + 1, p + off, (sz - off) * sizeof(cnp.uint16_t))
        p[off] = <cnp.uint16_t>c
        self.bsize[slot] = sz + 1
        self.bcnt[slot, c] += 1
        self.total[c] += 1
        self.length += 1
        j = k + 1
        while j <= self.nblocks:
            self.fsize[j] += 1
            self.fcnt[c, j] += 1
            j += j & -j
        if sz + 1 == self.cap:
            self._split(k)

    cdef void _set(self, Py_ssize_t i, int c) noexcept:
        cdef Py_ssize_t off
        cdef int k = self._locate(i, &off)
        cdef int slot = self.order[k]
        cdef int old = self.data[slot, off]
        if old == c:
            return
        self.data[slot, off] = <cnp.uint16_t>c
        self.bcnt[slot, old] -= 1
        self.bcnt[slot, c] += 1
        self.total[old] -= 1
        self.total[c] += 1
        self._fen_add(k, old, -1)
        self._fen_add(k, c, 1)

    cdef Py_ssize_t _select(self, int c, Py_ssize_t j) noexcept:
        cdef int pos = 0, step = self.top
        cdef Py_ssize_t rem = j, base, t
        cdef cnp.uint16_t* p
        cdef cnp.uint16_t cc = <cnp.uint16_t>c
        while step > 0:
            if pos + step <= self.nblocks and self.fcnt[c, pos + step] <= rem:
                pos += step
                rem -= self.fcnt[c, pos]
            step >>= 1
        base = self._prefix_size(pos)
        p = &self.data[self.order[pos], 0]
        t = 0
        while True:
            if p[t] == cc:
                if rem == 0:
                    return base + t
                rem -= 1
            t += 1

    # -- Python API ----------------------------------------------------------

    def _check_symbol(self, int c):
        if c < 0 or c >= self.nsym:
            raise InvalidArgumentError(f"symbol {c} outside [0, {self.nsym})")

    def __len__(self):
        return self.length

    def insert(self, Py_ssize_t i, int c):
        """Insert symbol ``c`` before position ``i`` (``i == len`` appends)."""
        self._check_symbol(c)
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"insert position {i} outside [0, {self.length}]")
        self._insert(i, c)

    def access(self, Py_ssize_t i):
        if i < 0 or i >= self.length:
            raise InvalidArgumentError(f"position {i} outside [0, {self.length})")
        return self._access(i)

    def set(self, Py_ssize_t i, int c):
        self._check_symbol(c)
        if i < 0 or i >= self.length:
            raise InvalidArgumentError(f"position {i} outside [0, {self.length})")
        self._set(i, c)

    def rank(self, int c, Py_ssize_t i):
        """Occurrences of ``c`` in positions ``[0, i)``."""
        self._check_symbol(c)
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"rank bound {i} outside [0, {self.length}]")
        return self._rank(c, i)

    def select(self, int c, Py_ssize_t j):
        """Position of the ``j``-th occurrence of ``c`` (0-based ``j``)."""
        self._check_symbol(c)
        if j < 0 or j >= self.total[c]:
            raise InvalidArgumentError(f"symbol {c} occurs {self.total[c]} times, asked for #{j}")
        return self._select(c, j)

    def count(self, int c):
        self._check_symbol(c)
        return self.total[c]

    def tolist(self):
        out = []
        cdef int k, slot
        for k in range(self.nblocks):
            slot = self.order[k]
            out.extend(np.asarray(self.data[slot, : self.bsize[slot]]).tolist())
        return out


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long x) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long x) nogil


cdef inline int _select_in_word(cnp.uint64_t w, int j) noexcept nogil:
    # position of the j-th (0-based) set bit of w
    while j > 0:
        w &= w - 1
        j -= 1
    return ctz64(w)


cdef class DynBitVector:
    """Insertable bit vector with rank and select.

    Bits are packed 64 per word in blocks of ``words_per_block`` words.
    ``select1(j)`` returns the position of the ``j``-th one counting from
    zero, so ``rank1(select1(j)) == j``.
    """

    def __init__(self, int words_per_block=32):
        if words_per_block < 2 or words_per_block % 2:
            raise InvalidArgumentError("words_per_block must be even and >= 2")
        self.wpb = words_per_block
        self.length = 0
        self.ones = 0
        self.maxblocks = 4
        self.nblocks = 1
        self.words = np.zeros((self.maxblocks, words_per_block), dtype=np.uint64)
        self.order = np.zeros(self.maxblocks, dtype=np.intc)
        self.bsize = np.zeros(self.maxblocks, dtype=np.intc)
        self.bones = np.zeros(self.maxblocks, dtype=np.intc)
        self.fsize = np.zeros(self.maxblocks + 1, dtype=np.intc)
        self.fones = np.zeros(self.maxblocks + 1, dtype=np.intc)
        self._rebuild()

    cdef void _rebuild(self) noexcept:
        cdef int nb = self.nblocks, k, j, slot
        for k in range(1, nb + 1):
            slot = self.order[k - 1]
            self.fsize[k] = self.bsize[slot]
            self.fones[k] = self.bones[slot]
        for k in range(1, nb + 1):
            j = k + (k & -k)
            if j <= nb:
                self.fsize[j] += self.fsize[k]
                self.fones[j] += self.fones[k]
        self.top = 1
        while self.top * 2 <= nb:
            self.top *= 2

    cdef void _grow(self):
        cdef int m = self.maxblocks * 2
        words = np.zeros((m, self.wpb), dtype=np.uint64)
        words[: self.maxblocks] = self.words
        order = np.zeros(m, dtype=np.intc)
        order[: self.maxblocks] = self.order
        bsize = np.zeros(m, dtype=np.intc)
        bsize[: self.maxblocks] = self.bsize
        bones = np.zeros(m, dtype=np.intc)
        bones[: self.maxblocks] = self.bones
        self.words = words
        self.order = order
        self.bsize = bsize
        self.bones = bones
        self.fsize = np.zeros(m + 1, dtype=np.intc)
        self.fones = np.zeros(m + 1, dtype=np.intc)
        self.maxblocks = m

    cdef void _split(self, int k):
        # block k is full; its upper half of words moves to a fresh slot
        if self.nblocks == self.maxblocks:
            self._grow()
        cdef int slot = self.order[k]
        cdef int s2 = self.nblocks
        cdef int half = self.wpb // 2, t, c = 0
        for t in range(half):
            self.words[s2, t] = self.words[slot, half + t]
            self.words[slot, half + t] = 0
            c += popcount64(self.words[s2, t])
        self.bsize[slot] = half * 64
        self.bsize[s2] = half * 64
        self.bones[s2] = c
        self.bones[slot] -= c
        t = self.nblocks
        while t > k + 1:
            self.order[t] = self.order[t - 1]
            t -= 1
        self.order[k + 1] = s2
        self.nblocks += 1
        self._rebuild()

    cdef int _locate(self, Py_ssize_t i, Py_ssize_t* off) noexcept:
        cdef int pos = 0, step = self.top
        cdef Py_ssize_t rem = i
        if i >= self.length:
            off[0] = self.bsize[self.order[self.nblocks - 1]]
            return self.nblocks - 1
        while step > 0:
            if pos + step <= self.nblocks and self.fsize[pos + step] <= rem:
                pos += step
                rem -= self.fsize[pos]
            step >>= 1
        off[0] = rem
        return pos

    cdef Py_ssize_t _rank1(self, Py_ssize_t i) noexcept:
        cdef Py_ssize_t off, r = 0
        cdef int k, kk, w, nw
        cdef cnp.uint64_t* p
        if i <= 0:
            return 0
        if i >= self.length:
            return self.ones
        k = self._locate(i, &off)
        kk = k
        while kk > 0:
            r += self.fones[kk]
            kk -= kk & -kk
        p = &self.words[self.order[k], 0]
        nw = <int>(off >> 6)
        for w in range(nw):
            r += popcount64(p[w])
        if off & 63:
            r += popcount64(p[nw] & ((<cnp.uint64_t>1 << (off & 63)) - 1))
        return r

    cdef int _access(self, Py_ssize_t i) noexcept:
        cdef Py_ssize_t off
        cdef int k = self._locate(i, &off)
        return (self.words[self.order[k], off >> 6] >> (off & 63)) & 1

    cdef void _insert(self, Py_ssize_t i, int b):
        cdef Py_ssize_t off
        cdef int k = self._locate(i, &off)
        cdef int slot = self.order[k]
        cdef int sz = self.bsize[slot]
        cdef cnp.uint64_t* p = &self.words[slot, 0]
        cdef int wi = <int>(off >> 6), bit = <int>(off & 63), w, j
        cdef cnp.uint64_t low, high
        w = sz >> 6
        while w > wi:
            p[w] = (p[w] << 1) | (p[w - 1] >> 63)
            w -= 1
        low = p[wi] & ((<cnp.uint64_t>1 << bit) - 1)
        high = p[wi] & ~((<cnp.uint64_t>1 << bit) - 1)
        p[wi] = low | (high << 1) | (<cnp.uint64_t>(b & 1) << bit)
        self.bsize[slot] = sz + 1
        self.length += 1
        j = k + 1
        if b:
            self.bones[slot] += 1
            self.ones += 1
            while j <= self.nblocks:
                self.fsize[j] += 1
                self.fones[j] += 1
                j += j & -j
        else:
            while j <= self.nblocks:
                self.fsize[j] += 1
                j += j & -j
        if sz + 1 == self.wpb * 64:
            self._split(k)

    cdef Py_ssize_t _select(self, int b, Py_ssize_t j) noexcept:
        cdef int pos = 0, step = self.top, w, c
        cdef Py_ssize_t rem = j, base = 0, f
        cdef cnp.uint64_t* p
        cdef cnp.uint64_t x
        while step > 0:
            if pos + step <= self.nblocks:
                f = self.fones[pos + step] if b else self.fsize[pos + step] - self.fones[pos + step]
                if f <= rem:
                    pos += step
                    rem -= f
                    base += self.fsize[pos]
            step >>= 1
        p = &self.words[self.order[pos], 0]
        w = 0
        while True:
            x = p[w] if b else ~p[w]
            c = popcount64(x)
            if c > rem:
                return base + w * 64 + _select_in_word(x, <int>rem)
            rem -= c
            w += 1

    def __len__(self):
        return self.length

    def _check_bit(self, int b):
        if b != 0 and b != 1:
            raise InvalidArgumentError(f"bit must be 0 or 1, got {b}")

    def insert(self, Py_ssize_t i, int b):
        """Insert bit ``b`` before position ``i`` (``i == len`` appends)."""
        self._check_bit(b)
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"insert position {i} outside [0, {self.length}]")
        self._insert(i, b)

    def access(self, Py_ssize_t i):
        if i < 0 or i >= self.length:
            raise InvalidArgumentError(f"position {i} outside [0, {self.length})")
        return self._access(i)

    def rank1(self, Py_ssize_t i):
        """Number of ones in ``[0, i)``."""
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"rank bound {i} outside [0, {self.length}]")
        return self._rank1(i)

    def rank0(self, Py_ssize_t i):
        return i - self.rank1(i)

    def select1(self, Py_ssize_t j):
        if j < 0 or j >= self.ones:
            raise InvalidArgumentError(f"only {self.ones} ones, asked for #{j}")
        return self._select(1, j)

    def select0(self, Py_ssize_t j):
        if j < 0 or j >= self.length - self.ones:
            raise InvalidArgumentError(f"only {self.length - self.ones} zeros, asked for #{j}")
        return self._select(0, j)

    def count(self, int b):
        self._check_bit(b)
        return self.ones if b else self.length - self.ones

    def tolist(self):
        return [self._access(i) for i in range(self.length)]


cdef class DynSequence:
    """Dynamic wavelet matrix over integers in ``[0, sigma)``.

    Each level is a :class:`DynBitVector`; an insertion touches one bit per
    level.  Range predecessor/successor queries cost O(height) rank calls.
    """

    def __init__(self, i64 sigma, int words_per_block=32):
        if sigma < 1:
            raise InvalidArgumentError("sigma must be positive")
        self.sigma = sigma
        self.height = max(1, int(sigma - 1).bit_length())
        self.levels = [DynBitVector(words_per_block) for _ in range(self.height)]
        self.zeros = np.zeros(self.height, dtype=np.intp)
        self.length = 0

    cdef void _insert(self, Py_ssize_t i, i64 v):
        cdef int l, h = self.height, b
        cdef Py_ssize_t ni
        cdef DynBitVector bv
        for l in range(h):
            bv = <DynBitVector>self.levels[l]
            b = (v >> (h - 1 - l)) & 1
            if b == 0:
                ni = i - bv._rank1(i)
                self.zeros[l] += 1
            else:
                ni = self.zeros[l] + bv._rank1(i)
            bv._insert(i, b)
            i = ni
        self.length += 1

    cdef i64 _access(self, Py_ssize_t i) noexcept:
        cdef int l, b
        cdef i64 v = 0
        cdef DynBitVector bv
        for l in range(self.height):
            bv = <DynBitVector>self.levels[l]
            b = bv._access(i)
            if b == 0:
                i = i - bv._rank1(i)
            else:
                i = self.zeros[l] + bv._rank1(i)
            v = (v << 1) | b
        return v

    cdef Py_ssize_t _rank(self, i64 v, Py_ssize_t i) noexcept:
        cdef int l, h = self.height
        cdef Py_ssize_t s = 0, e = i, s1, e1
        cdef DynBitVector bv
        for l in range(h):
            bv = <DynBitVector>self.levels[l]
            s1 = bv._rank1(s)
            e1 = bv._rank1(e)
            if (v >> (h - 1 - l)) & 1:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
            else:
                s = s - s1
                e = e - e1
            if s >= e:
                return 0
        return e - s

    cdef Py_ssize_t _select(self, i64 v, Py_ssize_t j) noexcept:
        cdef int l, h = self.height
        cdef Py_ssize_t s = 0, pos
        cdef DynBitVector bv
        for l in range(h):
            bv = <DynBitVector>self.levels[l]
            if (v >> (h - 1 - l)) & 1:
                s = self.zeros[l] + bv._rank1(s)
            else:
                s = s - bv._rank1(s)
        pos = s + j
        for l in range(h - 1, -1, -1):
            bv = <DynBitVector>self.levels[l]
            if (v >> (h - 1 - l)) & 1:
                pos = bv._select(1, pos - self.zeros[l])
            else:
                pos = bv._select(0, pos)
        return pos

    cdef i64 _prev_value(self, Py_ssize_t lo, Py_ssize_t hi, i64 v) noexcept:
        # largest value < v in [lo, hi), -1 if none
        cdef int l, h = self.height, fb_l = -1
        cdef i64 x, prefix = 0, fb_prefix = 0
        cdef Py_ssize_t s = lo, e = hi, s1, e1, fb_s = 0, fb_e = 0
        cdef DynBitVector bv
        if v <= 0 or lo >= hi:
            return -1
        x = v - 1
        if x >= (<i64>1 << h):
            x = (<i64>1 << h) - 1
        for l in range(h):
            bv = <DynBitVector>self.levels[l]
            s1 = bv._rank1(s)
            e1 = bv._rank1(e)
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
            bv = <DynBitVector>self.levels[l]
            s1 = bv._rank1(s)
            e1 = bv._rank1(e)
            if e1 > s1:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
            else:
                s = s - s1
                e = e - e1
                prefix = prefix << 1
        return prefix

    cdef i64 _next_value(self, Py_ssize_t lo, Py_ssize_t hi, i64 v) noexcept:
        # smallest value > v in [lo, hi), -1 if none
        cdef int l, h = self.height, fb_l = -1
        cdef i64 x, prefix = 0, fb_prefix = 0
        cdef Py_ssize_t s = lo, e = hi, s1, e1, fb_s = 0, fb_e = 0
        cdef DynBitVector bv
        if lo >= hi:
            return -1
        x = v + 1 if v >= 0 else 0
        if x >= (<i64>1 << h):
            return -1
        for l in range(h):
            bv = <DynBitVector>self.levels[l]
            s1 = bv._rank1(s)
            e1 = bv._rank1(e)
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
            bv = <DynBitVector>self.levels[l]
            s1 = bv._rank1(s)
            e1 = bv._rank1(e)
            if (e - e1) > (s - s1):
                s = s - s1
                e = e - e1
                prefix = prefix << 1
            else:
                s = self.zeros[l] + s1
                e = self.zeros[l] + e1
                prefix = (prefix << 1) | 1
        return prefix

    # -- Python API ----------------------------------------------------------

    def _check_value(self, i64 v):
        if v < 0 or v >= self.sigma:
            raise InvalidArgumentError(f"value {v} outside [0, {self.sigma})")

    def _check_range(self, Py_ssize_t lo, Py_ssize_t hi):
        if lo < 0 or hi > self.length or lo > hi:
            raise InvalidArgumentError(f"range [{lo}, {hi}) invalid for length {self.length}")

    def __len__(self):
        return self.length

    def insert(self, Py_ssize_t i, i64 v):
        self._check_value(v)
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"insert position {i} outside [0, {self.length}]")
        self._insert(i, v)

    def access(self, Py_ssize_t i):
        if i < 0 or i >= self.length:
            raise InvalidArgumentError(f"position {i} outside [0, {self.length})")
        return self._access(i)

    def rank(self, i64 v, Py_ssize_t i):
        self._check_value(v)
        if i < 0 or i > self.length:
            raise InvalidArgumentError(f"rank bound {i} outside [0, {self.length}]")
        return self._rank(v, i)

    def select(self, i64 v, Py_ssize_t j):
        self._check_value(v)
        if j < 0 or j >= self._rank(v, self.length):
            raise InvalidArgumentError(f"value {v} has no occurrence #{j}")
        return self._select(v, j)

    def range_pred(self, Py_ssize_t lo, Py_ssize_t hi, i64 v):
        """Largest value ``< v`` among positions ``[lo, hi)``.

        Returns ``(index, value)`` with the leftmost such index, or ``None``.
        """
        self._check_range(lo, hi)
        cdef i64 w = self._prev_value(lo, hi, v)
        if w < 0:
            return None
        return self._select(w, self._rank(w, lo)), w

    def range_succ(self, Py_ssize_t lo, Py_ssize_t hi, i64 v):
        """Smallest value ``> v`` among positions ``[lo, hi)``, or ``None``."""
        self._check_range(lo, hi)
        cdef i64 w = self._next_value(lo, hi, v)
        if w < 0:
            return None
        return self._select(w, self._rank(w, lo)), w

    def tolist(self):
        return [self._access(i) for i in range(self.length)]


cdef class DynBWT:
    """BWT of the reversed processed text followed by ``$``.

    Row ``k`` is the ``k``-th prefix in co-lexicographic order (0-based, the
    empty prefix is row 0); its BWT symbol is the character that follows
    that prefix in the text, or ``$`` for the full processed prefix.  The
    ``$`` row is therefore the co-lexicographic rank of the whole prefix.
    """

    def __init__(self, int sigma, bint virtual_prefix=True, int cap=2048):
        if sigma < 1 or sigma > 65534:
            raise InvalidArgumentError(f"sigma must be in [1, 65534], got {sigma}")
        self.sigma = sigma
        self.seq = BlockedString(sigma + 1, cap)
        self.seq._insert(0, 0)
        self.dollar = 0
        self.C = np.ones(sigma + 1, dtype=np.int64)
        cdef int c
        if virtual_prefix:
            for c in range(sigma - 1, -1, -1):
                self._extend(c)

    cdef Py_ssize_t _extend(self, int c):
        cdef Py_ssize_t d = self.dollar
        cdef Py_ssize_t rk = self.seq._rank(c + 1, d)
        cdef Py_ssize_t nr
        cdef int k
        self.seq._set(d, c + 1)
        nr = self.C[c] + rk
        for k in range(c + 1, self.sigma + 1):
            self.C[k] += 1
        self.seq._insert(nr, 0)
        self.dollar = nr
        return nr

    cdef Py_ssize_t _lf(self, Py_ssize_t row) noexcept:
        cdef int code = self.seq._access(row)
        return self.C[code - 1] + self.seq._rank(code, row)

    cdef Py_ssize_t _fl(self, Py_ssize_t row) noexcept:
        cdef int lo = 0, hi = self.sigma - 1, mid
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if self.C[mid] <= row:
                lo = mid
            else:
                hi = mid - 1
        return self.seq._select(lo + 1, row - self.C[lo])

    cdef int _symbol(self, Py_ssize_t row) noexcept:
        return self.seq._access(row) - 1

    # -- Python API ----------------------------------------------------------

    def _check_row(self, Py_ssize_t row):
        if row < 0 or row >= self.seq.length:
            raise InvalidArgumentError(f"row {row} outside [0, {self.seq.length})")

    def __len__(self):
        return self.seq.length

    @property
    def dollar_row(self):
        return self.dollar

    def extend(self, int c):
        """Append ``c`` to the indexed text; returns the new ``$`` row."""
        if c < 0 or c >= self.sigma:
            raise InvalidArgumentError(f"symbol {c} outside [0, {self.sigma})")
        return self._extend(c)

    def access(self, Py_ssize_t row):
        """Symbol following the row's prefix, or ``DOLLAR`` for the ``$`` row."""
        self._check_row(row)
        return self._symbol(row)

    def rank(self, int c, Py_ssize_t i):
        if c < 0 or c >= self.sigma:
            raise InvalidArgumentError(f"symbol {c} outside [0, {self.sigma})")
        if i < 0 or i > self.seq.length:
            raise InvalidArgumentError(f"rank bound {i} outside [0, {self.seq.length}]")
        return self.seq._rank(c + 1, i)

    def first_row(self, int c):
        """Row of the first prefix ending with ``c``."""
        return self.C[c]

    def lf(self, Py_ssize_t row):
        """Row of the prefix one symbol longer than ``row``'s prefix."""
        self._check_row(row)
        if row == self.dollar:
            raise InvalidArgumentError("LF is undefined on the $ row")
        return self._lf(row)

    def fl(self, Py_ssize_t row):
        """Inverse of :meth:`lf`; undefined on row 0 (the empty prefix)."""
        self._check_row(row)
        if row == 0:
            raise InvalidArgumentError("FL is undefined on the empty prefix")
        return self._fl(row)

    def backward_step(self, Py_ssize_t lo, Py_ssize_t hi, int c):
        """Narrow ``[lo, hi)`` to the prefixes that extend a member by ``c``.

        Returns the new half-open range, or ``None`` when it is empty.
        """
        if c < 0 or c >= self.sigma:
            raise InvalidArgumentError(f"symbol {c} outside [0, {self.sigma})")
        if lo < 0 or hi > self.seq.length or lo > hi:
            raise InvalidArgumentError(f"row range [{lo}, {hi}) invalid")
        cdef Py_ssize_t a = self.C[c] + self.seq._rank(c + 1, lo)
        cdef Py_ssize_t b = self.C[c] + self.seq._rank(c + 1, hi)
        if a >= b:
            return None
        return a, b

    def symbols(self):
        return [code - 1 for code in self.seq.tolist()]
