"""Bit streams and universal integer codes (Elias gamma and delta)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from holz._kernels import code_len as _code_len
from holz.errors import DecodeError, InvalidArgumentError


class Code(enum.IntEnum):
    """Integer codes.  ``BINARY_LENGTH`` only prices values, it never emits bits."""

    GAMMA = 0
    DELTA = 1
    BINARY_LENGTH = 2

    @property
    def decodable(self):
        return self is not Code.BINARY_LENGTH

    @property
    def label(self):
        return {0: "gamma", 1: "delta", 2: "binary-length"}[int(self)]

    @classmethod
    def parse(cls, value):
        """Accept a ``Code``, its integer value or its label."""
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            for code in cls:
                if code.label == value.lower():
                    return code
            raise InvalidArgumentError(f"unknown code {value!r}")
        try:
            return cls(int(value))
        except ValueError:
            raise InvalidArgumentError(f"unknown code {value!r}") from None


class BitStream:
    """Growable MSB-first bit buffer with a read cursor.

    Bits past ``bit_len`` in the last byte are always zero.
    """

    __slots__ = ("_buf", "bit_len", "cursor")

    def __init__(self, data=b"", bit_len=None):
        self._buf = bytearray(data)
        if bit_len is None:
            bit_len = 8 * len(self._buf)
        if bit_len < 0 or bit_len > 8 * len(self._buf):
            raise InvalidArgumentError(f"bit_len {bit_len} does not fit {len(self._buf)} bytes")
        self.bit_len = bit_len
        self.cursor = 0
        # drop anything beyond bit_len so the padding invariant holds
        del self._buf[(bit_len + 7) >> 3:]
        if bit_len & 7:
            self._buf[-1] &= (0xFF << (8 - (bit_len & 7))) & 0xFF

    @classmethod
    def from_bits(cls, bits):
        """Build from a string of ``0``/``1`` characters (other characters ignored)."""
        out = cls()
        for ch in bits:
            if ch in "01":
                out.write_bit(ch == "1")
        return out

    @property
    def bytes(self):
        return bytes(self._buf)

    def __len__(self):
        return self.bit_len

    def __repr__(self):
        return f"BitStream({self.to_bits()!r})"

    def to_bits(self):
        return "".join(str(self._bit(i)) for i in range(self.bit_len))

    def remaining(self):
        return self.bit_len - self.cursor

    def _bit(self, i):
        return (self._buf[i >> 3] >> (7 - (i & 7))) & 1

    def write_bit(self, bit):
        if not self.bit_len & 7:
            self._buf.append(0)
        if bit:
            self._buf[-1] |= 0x80 >> (self.bit_len & 7)
        self.bit_len += 1

    def write_bits(self, value, width):
        """Append the low ``width`` bits of ``value``, most significant first."""
        if width < 0 or value < 0 or value >> width:
            raise InvalidArgumentError(f"{value} does not fit in {width} bits")
        for shift in range(width - 1, -1, -1):
            self.write_bit((value >> shift) & 1)

    def read_bit(self):
        if self.cursor >= self.bit_len:
            raise DecodeError("bit stream exhausted")
        bit = self._bit(self.cursor)
        self.cursor += 1
        return bit

    def read_bits(self, width):
        if self.cursor + width > self.bit_len:
            raise DecodeError(f"need {width} bits, {self.remaining()} left")
        value = 0
        for _ in range(width):
            value = (value << 1) | self.read_bit()
        return value


def _check_positive(x):
    if x < 1:
        raise InvalidArgumentError(f"universal codes need x >= 1, got {x}")


def gamma_encode(x, out):
    _check_positive(x)
    lg = x.bit_length() - 1
    out.write_bits(0, lg)
    out.write_bits(x, lg + 1)


def gamma_decode(stream):
    zeros = 0
    while stream.read_bit() == 0:
        zeros += 1
    return (1 << zeros) | stream.read_bits(zeros)


def delta_encode(x, out):
    _check_positive(x)
    lg = x.bit_length() - 1
    gamma_encode(lg + 1, out)
    out.write_bits(x & ((1 << lg) - 1), lg)


def delta_decode(stream):
    lg = gamma_decode(stream) - 1
    return (1 << lg) | stream.read_bits(lg)


def encode(code, x, out):
    code = Code.parse(code)
    if code is Code.GAMMA:
        gamma_encode(x, out)
    elif code is Code.DELTA:
        delta_encode(x, out)
    else:
        raise InvalidArgumentError("binary-length is a cost model and cannot emit bits")


def decode(code, stream):
    code = Code.parse(code)
    if code is Code.GAMMA:
        return gamma_decode(stream)
    if code is Code.DELTA:
        return delta_decode(stream)
    raise InvalidArgumentError("binary-length is a cost model and cannot decode bits")


def code_len(code, x):
    """Bits used by ``code`` for ``x >= 1``."""
    return _code_len(int(Code.parse(code)), x)


def signed_encode(off, code, out):
    """Sign bit (0 = positive) followed by the code of ``|off|``."""
    if off == 0:
        raise InvalidArgumentError("signed offsets must be nonzero")
    out.write_bit(off < 0)
    encode(code, abs(off), out)


def signed_decode(code, stream):
    negative = stream.read_bit()
    mag = decode(code, stream)
    return -mag if negative else mag


@dataclass(frozen=True)
class CostClass:
    lo: int
    hi: int
    bits: int


def cost_classes(code, max_mag):
    """Maximal runs of equal code length covering ``[1, max_mag]``.

    All supported codes depend only on ``floor(log2 x)``, so runs are unions
    of power-of-two ranges; equal neighbours are merged all the same.
    """
    code = Code.parse(code)
    if max_mag < 1:
        raise InvalidArgumentError(f"max_mag must be >= 1, got {max_mag}")
    out = []
    lo = 1
    while lo <= max_mag:
        hi = min(2 * lo - 1, max_mag)
        bits = code_len(code, lo)
        if out and out[-1].bits == bits:
            out[-1] = CostClass(out[-1].lo, hi, bits)
        else:
            out.append(CostClass(lo, hi, bits))
        lo = hi + 1
    return out
