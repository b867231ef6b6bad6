"""Texts over a mapped alphabet with the virtual alphabet prefix."""

from __future__ import annotations

import numpy as np

from holz.errors import InvalidArgumentError


class Text:
    """A body over ``[0, sigma)`` plus the logical virtual prefix.

    The full text ``T'`` is ``sigma-1, sigma-2, ..., 0`` followed by the
    body, so every symbol has an occurrence before the first body position.
    Body position ``p`` (0-based) sits at ``T'`` index ``sigma + p``.
    ``alphabet`` maps each symbol back to its original byte when known.
    """

    __slots__ = ("symbols", "sigma", "alphabet")

    def __init__(self, symbols, sigma, alphabet=None):
        arr = np.ascontiguousarray(symbols, dtype=np.int32)
        if arr.ndim != 1:
            raise InvalidArgumentError("symbols must be one-dimensional")
        if sigma < 0 or sigma > 65534:
            raise InvalidArgumentError(f"sigma must be in [0, 65534], got {sigma}")
        if arr.size and (arr.min() < 0 or arr.max() >= sigma):
            raise InvalidArgumentError(f"symbols must lie in [0, {sigma})")
        if alphabet is not None:
            alphabet = bytes(alphabet)
            if len(alphabet) != sigma:
                raise InvalidArgumentError("alphabet length must equal sigma")
        self.symbols = arr
        self.sigma = int(sigma)
        self.alphabet = alphabet

    @classmethod
    def from_bytes(cls, data):
        """Map the distinct bytes of ``data``, ascending, onto ``[0, sigma)``."""
        raw = np.frombuffer(bytes(data), dtype=np.uint8)
        present = np.flatnonzero(np.bincount(raw, minlength=256))
        lut = np.zeros(256, dtype=np.int32)
        lut[present] = np.arange(present.size, dtype=np.int32)
        return cls(lut[raw], present.size, present.astype(np.uint8).tobytes())

    @classmethod
    def from_symbols(cls, symbols, sigma=None):
        arr = np.asarray(symbols if hasattr(symbols, "__len__") else list(symbols), dtype=np.int64)
        if sigma is None:
            sigma = int(arr.max()) + 1 if arr.size else 1
        return cls(arr, sigma)

    @classmethod
    def from_string(cls, s, alphabet):
        """Map characters through ``alphabet`` (a string listing the symbols in order)."""
        pos = {ch: i for i, ch in enumerate(alphabet)}
        try:
            syms = [pos[ch] for ch in s]
        except KeyError as exc:
            raise InvalidArgumentError(f"character {exc.args[0]!r} not in alphabet") from None
        return cls(syms, len(alphabet))

    @property
    def n(self):
        return int(self.symbols.shape[0])

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Text):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.symbols, other.symbols)

    def __repr__(self):
        head = self.symbols[:16].tolist()
        more = ", ..." if self.n > 16 else ""
        return f"Text(sigma={self.sigma}, n={self.n}, symbols={head}{more})"

    def prefix(self):
        return np.arange(self.sigma - 1, -1, -1, dtype=np.int32)

    def full(self):
        """``T'`` as an int32 array of length ``sigma + n``."""
        return np.concatenate([self.prefix(), self.symbols])

    def to_bytes(self):
        if self.alphabet is None:
            raise InvalidArgumentError("text has no byte alphabet")
        lut = np.frombuffer(self.alphabet, dtype=np.uint8)
        return lut[self.symbols].tobytes()
