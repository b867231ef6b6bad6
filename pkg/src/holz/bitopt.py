"""Bit-optimal parsing: maximal arcs per offset cost class and a shortest path over them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from holz import _kernels
from holz.bitio import Code, code_len, cost_classes
from holz.colex import colex_order, prefix_ranks
from holz.errors import InvalidArgumentError
from holz.lz import COLEX, TEXTUAL, Parsing, _naive_lce


@dataclass(frozen=True)
class CostModel:
    """Prices a factor exactly as the serializer writes it.

    ``signed`` adds the sign bit that colex offsets carry.
    """

    code: Code = Code.DELTA
    signed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "code", Code.parse(self.code))

    @classmethod
    def for_semantics(cls, code, semantics):
        return cls(code, semantics == COLEX)

    def offset_bits(self, off):
        if off == 0:
            raise InvalidArgumentError("offsets are nonzero")
        return code_len(self.code, abs(off)) + (1 if self.signed else 0)

    def length_bits(self, ell):
        return code_len(self.code, ell)

    def factor_bits(self, off, ell):
        return self.offset_bits(off) + self.length_bits(ell)

    def parsing_bits(self, parsing):
        return sum(self.factor_bits(o, l) for o, l in parsing)


class Arc(NamedTuple):
    start: int
    end: int
    off: int
    bits: int

    @property
    def len(self):
        return self.end - self.start


class ArcSet:
    """Maximal arcs of every body position in CSR form.

    Arcs of a node are ordered by increasing offset cost with strictly
    increasing lengths; ``off_bits`` already includes any sign bit.
    """

    __slots__ = ("ptr", "offs", "lens", "off_bits", "cost")

    def __init__(self, ptr, offs, lens, off_bits, cost):
        self.ptr = ptr
        self.offs = offs
        self.lens = lens
        self.off_bits = off_bits
        self.cost = cost

    @property
    def n(self):
        return int(self.ptr.shape[0]) - 1

    def __len__(self):
        return int(self.offs.shape[0])

    def at(self, p):
        """Arcs leaving body position ``p`` (0-based)."""
        if p < 0 or p >= self.n:
            raise InvalidArgumentError(f"position {p} outside [0, {self.n})")
        out = []
        for a in range(self.ptr[p], self.ptr[p + 1]):
            ell = int(self.lens[a])
            bits = int(self.off_bits[a]) + self.cost.length_bits(ell)
            out.append(Arc(p, p + ell, int(self.offs[a]), bits))
        return out


def _class_arrays(code, max_mag):
    classes = cost_classes(code, max(1, max_mag))
    lo = np.array([c.lo for c in classes], dtype=np.int64)
    hi = np.array([c.hi for c in classes], dtype=np.int64)
    bits = np.array([c.bits for c in classes], dtype=np.int32)
    return lo, hi, bits


def gen_arcs_text(text, cost):
    """Arcs with textual offsets, one window query pair per offset cost class."""
    if text.n == 0:
        return ArcSet(np.zeros(1, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int32), cost)
    idx = _kernels.TextIndex(text.full())
    wm = _kernels.StaticWM(idx.isa[:-1], idx.n_full + 1)
    lo, hi, bits = _class_arrays(cost.code, idx.n_full)
    if cost.signed:
        bits = bits + 1
    ptr, offs, lens, ob = _kernels.gen_arcs_text(idx, wm, text.sigma, lo, hi, bits)
    return ArcSet(ptr, offs, lens, ob, cost)


def gen_arcs_colex(text, cost):
    """Arcs with signed colex offsets from the dynamic BWT plus DyWa mapping."""
    if text.n == 0:
        return ArcSet(np.zeros(1, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int32), cost)
    if not cost.signed:
        raise InvalidArgumentError("colex offsets need a signed cost model")
    full = text.full()
    idx = _kernels.TextIndex(full)
    lo, hi, bits = _class_arrays(cost.code, idx.n_full)
    ptr, offs, lens, ob = _kernels.gen_arcs_colex(full, idx, text.sigma, lo, hi, bits)
    return ArcSet(ptr, offs, lens, ob, cost)


def shortest_path(n, arcs, cost, semantics=None):
    """Minimum-bit path from node 0 to node ``n``; returns ``(bits, Parsing)``."""
    if semantics is None:
        semantics = COLEX if cost.signed else TEXTUAL
    if arcs.n != n:
        raise InvalidArgumentError(f"arc set covers {arcs.n} nodes, expected {n}")
    bits, offs, lens = _kernels.shortest_path(
        n, arcs.ptr, arcs.offs, arcs.lens, arcs.off_bits, int(cost.code)
    )
    return bits, Parsing(offs, lens, semantics)


def parse_bitopt_text(text, code=Code.DELTA):
    cost = CostModel(code, False)
    return shortest_path(text.n, gen_arcs_text(text, cost), cost, TEXTUAL)[1]


def parse_bitopt_colex(text, code=Code.DELTA):
    cost = CostModel(code, True)
    return shortest_path(text.n, gen_arcs_colex(text, cost), cost, COLEX)[1]


def _better(a, b):
    # smaller magnitude wins, positive on a tie
    if b is None:
        return True
    return abs(a) < abs(b) or (abs(a) == abs(b) and a > b)


def min_offset_table(text, semantics):
    """For every body position, the cheapest admissible offset per length (naive).

    Entry ``p`` is a list ``best`` with ``best[ell - 1]`` the minimal-magnitude
    offset of a length-``ell`` factor starting at body position ``p``.
    """
    t = text.full().tolist()
    n_full = len(t)
    sigma = text.sigma
    order = colex_order(t) if semantics == COLEX else None
    table = []
    for p in range(sigma, n_full):
        if order is not None:
            ranks = prefix_ranks(order, p)
            r = ranks[p]
        best = [None] * (n_full - p + 1)
        for src in range(p):
            ell = _naive_lce(t, src, p)
            if ell == 0:
                continue
            off = r - ranks[src] if order is not None else p - src
            if _better(off, best[ell]):
                best[ell] = off
        for ell in range(len(best) - 2, 0, -1):
            if best[ell + 1] is not None and _better(best[ell + 1], best[ell]):
                best[ell] = best[ell + 1]
        table.append([b for b in best[1:] if b is not None])
    return table


def bitopt_oracle(text, cost, semantics=None, table=None):
    """Exhaustive DP over every (position, length) candidate; returns ``(bits, Parsing)``."""
    if semantics is None:
        semantics = COLEX if cost.signed else TEXTUAL
    if table is None:
        table = min_offset_table(text, semantics)
    n = text.n
    dist = [0] * (n + 1)
    nfac = [0] * (n + 1)
    choice = [None] * n
    for p in range(n - 1, -1, -1):
        best = None
        for ell, off in enumerate(table[p], start=1):
            key = (cost.factor_bits(off, ell) + dist[p + ell], nfac[p + ell] + 1)
            if best is None or key < best[0]:
                best = (key, off, ell)
        (dist[p], nfac[p]), off, ell = best
        choice[p] = (off, ell)
    factors = []
    p = 0
    while p < n:
        factors.append(choice[p])
        p += choice[p][1]
    return dist[0], Parsing.from_factors(factors, semantics)
