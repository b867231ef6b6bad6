"""Greedy LZ parsing with textual offsets, its decoder and a brute-force oracle."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from holz import _kernels
from holz.errors import InvalidArgumentError
from holz.text import Text

TEXTUAL = "textual"
COLEX = "colex"


class Factor(NamedTuple):
    off: int
    len: int


class Parsing:
    """A factor sequence plus the meaning of its offsets (``textual`` or ``colex``)."""

    __slots__ = ("offs", "lens", "semantics")

    def __init__(self, offs, lens, semantics):
        if semantics not in (TEXTUAL, COLEX):
            raise InvalidArgumentError(f"unknown offset semantics {semantics!r}")
        self.offs = np.asarray(offs, dtype=np.int64).reshape(-1)
        self.lens = np.asarray(lens, dtype=np.int64).reshape(-1)
        if self.offs.shape != self.lens.shape:
            raise InvalidArgumentError("offsets and lengths differ in count")
        self.semantics = semantics

    @classmethod
    def from_factors(cls, factors, semantics):
        factors = list(factors)
        return cls([f[0] for f in factors], [f[1] for f in factors], semantics)

    @property
    def z(self):
        return int(self.offs.shape[0])

    @property
    def n(self):
        return int(self.lens.sum())

    @property
    def factors(self):
        return [Factor(int(o), int(l)) for o, l in zip(self.offs, self.lens)]

    def starts(self):
        """Body position of each factor."""
        return np.concatenate([[0], np.cumsum(self.lens)[:-1]]).astype(np.int64) if self.z else self.lens.copy()

    def __len__(self):
        return self.z

    def __iter__(self):
        return iter(self.factors)

    def __eq__(self, other):
        if not isinstance(other, Parsing):
            return NotImplemented
        return (
            self.semantics == other.semantics
            and np.array_equal(self.offs, other.offs)
            and np.array_equal(self.lens, other.lens)
        )

    def __repr__(self):
        shown = " ".join(f"({o},{l})" for o, l in self.factors[:12])
        more = " ..." if self.z > 12 else ""
        return f"Parsing[{self.semantics}, z={self.z}] {shown}{more}"


def _empty(semantics):
    return Parsing([], [], semantics)


def greedy_parse_nsvpsv(text):
    """Greedy parse; each source is the lex neighbour (via PSV/NSV) with the longer match."""
    if text.n == 0:
        return _empty(TEXTUAL)
    idx = _kernels.TextIndex(text.full())
    offs, lens = _kernels.greedy_nsvpsv(idx, text.sigma)
    return Parsing(offs, lens, TEXTUAL)


def greedy_parse_rightmost(text):
    """Greedy parse where every factor copies from its closest earlier occurrence."""
    if text.n == 0:
        return _empty(TEXTUAL)
    idx = _kernels.TextIndex(text.full())
    wm = _kernels.StaticWM(idx.sa, idx.n_full + 1)
    offs, lens = _kernels.greedy_rightmost(idx, wm, text.sigma)
    return Parsing(offs, lens, TEXTUAL)


def decode_text(parsing, sigma, alphabet=None):
    """Rebuild the body; overlapping copies are resolved symbol by symbol."""
    if parsing.semantics != TEXTUAL:
        raise InvalidArgumentError("decode_text needs textual offsets")
    n = parsing.n
    if n and sigma < 1:
        raise InvalidArgumentError("a nonempty body needs sigma >= 1")
    body = _kernels.decode_text(parsing.offs, parsing.lens, sigma, n)
    return Text(body, sigma, alphabet)


def _naive_lce(t, i, j):
    n = len(t)
    k = 0
    while j + k < n and t[i + k] == t[j + k]:
        k += 1
    return k


def oracle_greedy_parse(text, tie="rightmost"):
    """Quadratic greedy parse.  ``tie="rightmost"`` picks the closest source, ``"any"`` the first."""
    if tie not in ("rightmost", "any"):
        raise InvalidArgumentError(f"unknown tie rule {tie!r}")
    t = text.full().tolist()
    n_full = len(t)
    p = text.sigma
    factors = []
    while p < n_full:
        best_len, best_src = 0, -1
        for s in range(p):
            ell = _naive_lce(t, s, p)
            if ell > best_len or (ell == best_len and ell and tie == "rightmost"):
                best_len, best_src = ell, s
        factors.append((p - best_src, best_len))
        p += best_len
    return Parsing.from_factors(factors, TEXTUAL)


def factor_sources_valid(parsing, text):
    """Re-scan check: every textual factor copies an earlier, matching substring."""
    t = text.full()
    p = text.sigma
    for off, ell in parsing:
        src = p - off
        if off < 1 or src < 0 or p + ell > t.shape[0]:
            return False
        for k in range(ell):
            if t[src + k] != t[p + k]:
                return False
        p += ell
    return p == t.shape[0]
