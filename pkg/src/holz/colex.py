"""HOLZ: greedy LZ factors whose offsets are distances in co-lexicographic prefix order."""

from __future__ import annotations

from holz import _kernels
from holz.errors import InvalidArgumentError
from holz.lz import COLEX, Parsing, _naive_lce
from holz.text import Text


def holz_parse(text):
    """Greedy HOLZ parse.

    Each factor has the greedy-longest length; its offset is ``r - t`` where
    ``r`` is the colex rank of the prefix ending just before the factor and
    ``t`` that of the closest admissible source prefix.  On a distance tie
    the source with ``t < r`` (positive offset) wins.
    """
    if text.n == 0:
        return Parsing([], [], COLEX)
    offs, lens = _kernels.holz_encode(text.full(), text.sigma)
    return Parsing(offs, lens, COLEX)


def holz_decode(parsing, sigma, alphabet=None):
    if parsing.semantics != COLEX:
        raise InvalidArgumentError("holz_decode needs colex offsets")
    n = parsing.n
    if n == 0:
        return Text([], sigma, alphabet)
    if sigma < 1:
        raise InvalidArgumentError("a nonempty body needs sigma >= 1")
    body = _kernels.holz_decode(parsing.offs, parsing.lens, sigma, n)
    return Text(body, sigma, alphabet)


def colex_order(full):
    """Prefix lengths ``0..N`` of ``full`` sorted co-lexicographically (naive)."""
    t = list(full)
    return sorted(range(len(t) + 1), key=lambda L: t[:L][::-1])


def prefix_ranks(order, p):
    """0-based colex rank of each prefix length ``L <= p`` among prefixes ``0..p``."""
    ranks = {}
    for L in order:
        if L <= p:
            ranks[L] = len(ranks)
    return ranks


def holz_oracle_parse(text):
    """Definitional HOLZ parse by explicit prefix sorting (small inputs only)."""
    t = text.full().tolist()
    n_full = len(t)
    order = colex_order(t)
    p = text.sigma
    factors = []
    while p < n_full:
        lces = [_naive_lce(t, L, p) for L in range(p)]
        ell = max(lces)
        ranks = prefix_ranks(order, p)
        r = ranks[p]
        best = None
        for L in range(p):
            if lces[L] < ell:
                continue
            off = r - ranks[L]
            if best is None or abs(off) < abs(best) or (abs(off) == abs(best) and off > 0):
                best = off
        factors.append((best, ell))
        p += ell
    return Parsing.from_factors(factors, COLEX)
