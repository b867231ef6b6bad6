"""Dynamic rank/select layer: bit vector, wavelet matrix, BWT, insert marks."""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort

from holz._dynamic import DOLLAR, BlockedString, DynBitVector, DynBWT, DynSequence

__all__ = [
    "DOLLAR",
    "BlockedString",
    "DynBitVector",
    "DynBWT",
    "DynSequence",
    "InsertMarks",
    "marks_count_between",
]


class InsertMarks:
    """Rows inserted while extending the current factor.

    Marks are kept sorted; :meth:`on_insert` shifts them when another row is
    inserted into the BWT, so they stay valid row numbers.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows=()):
        self._rows = sorted(rows)

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    def reset(self):
        self._rows.clear()

    def on_insert(self, row):
        """Account for a BWT insertion at ``row`` (rows ``>= row`` move down one)."""
        k = bisect_left(self._rows, row)
        for i in range(k, len(self._rows)):
            self._rows[i] += 1

    def add(self, row):
        """Record a freshly inserted row, shifting existing marks first."""
        self.on_insert(row)
        insort(self._rows, row)

    def count_between(self, a, b):
        """Marks strictly between ``min(a, b)`` and ``max(a, b)``."""
        lo, hi = min(a, b), max(a, b)
        if hi - lo < 2:
            return 0
        return bisect_left(self._rows, hi) - bisect_right(self._rows, lo)


def marks_count_between(marks, a, b):
    return marks.count_between(a, b)
