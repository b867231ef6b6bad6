"""The ``.holz`` file format and the compress/decompress entry points.

Layout (little-endian integers)::

    "HOLZ" | version u8 | method u8 | code u8 | flags u8 | sigma u16
    | alphabet (sigma ascending bytes) | n u64 | z u64 | payload

``flags`` bit 0 marks a zero-escaped body.  The payload stores each factor
MSB-first as ``[sign] enc(|off|) enc(len)``; the sign bit (0 = positive)
is present only for the colex methods.  The last byte is zero-padded.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from holz import _kernels
from holz.bitio import Code
from holz.bitopt import parse_bitopt_colex, parse_bitopt_text
from holz.colex import holz_decode, holz_parse
from holz.errors import CorruptInputError, InvalidArgumentError, UnsupportedFormatError
from holz.lz import COLEX, TEXTUAL, Parsing, decode_text, greedy_parse_nsvpsv, greedy_parse_rightmost
from holz.text import Text

MAGIC = b"HOLZ"
VERSION = 1
FLAG_ESCAPED = 0x01
ESCAPE = 254

_HEAD = struct.Struct("<4sBBBBH")
_SIZES = struct.Struct("<QQ")


class Method(enum.IntEnum):
    LZ_NSVPSV = 0
    LZ_RIGHTMOST = 1
    LZ_OPT = 2
    HOLZ = 3
    HOLZ_OPT = 4

    @property
    def label(self):
        return self.name.lower().replace("_", "-")

    @property
    def signed(self):
        return self in (Method.HOLZ, Method.HOLZ_OPT)

    @property
    def semantics(self):
        return COLEX if self.signed else TEXTUAL

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            for m in cls:
                if m.label == value.lower():
                    return m
            raise InvalidArgumentError(f"unknown method {value!r}")
        try:
            return cls(int(value))
        except ValueError:
            raise InvalidArgumentError(f"unknown method {value!r}") from None


METHOD_LABELS = tuple(m.label for m in Method)


def escape_zeros(raw):
    """Replace 0 by (254, 1) and 254 by (254, 254); the result has no zero byte."""
    return bytes(raw).replace(b"\xfe", b"\xfe\xfe").replace(b"\x00", b"\xfe\x01")


def unescape_zeros(data):
    data = bytes(data)
    out = bytearray()
    start = 0
    while True:
        k = data.find(b"\xfe", start)
        if k < 0:
            out += data[start:]
            return bytes(out)
        out += data[start:k]
        if k + 1 >= len(data):
            raise CorruptInputError("escaped body ends with a lone 254")
        nxt = data[k + 1]
        if nxt == 1:
            out.append(0)
        elif nxt == ESCAPE:
            out.append(ESCAPE)
        else:
            raise CorruptInputError(f"invalid escape pair (254, {nxt}) at offset {k}")
        start = k + 2


def parse(text, method, code=Code.DELTA):
    """Factorize ``text`` with one of the five methods."""
    method = Method.parse(method)
    code = Code.parse(code)
    if method is Method.LZ_NSVPSV:
        return greedy_parse_nsvpsv(text)
    if method is Method.LZ_RIGHTMOST:
        return greedy_parse_rightmost(text)
    if method is Method.LZ_OPT:
        return parse_bitopt_text(text, code) if text.n else Parsing([], [], TEXTUAL)
    if method is Method.HOLZ:
        return holz_parse(text)
    return parse_bitopt_colex(text, code) if text.n else Parsing([], [], COLEX)


@dataclass(frozen=True)
class CompressionInfo:
    method: Method
    code: Code
    escaped: bool
    n: int
    z: int
    header_bytes: int
    offset_bits: int
    length_bits: int
    output_bytes: int


def compress_with_info(raw, method=Method.HOLZ, code=Code.DELTA, escape=False):
    method = Method.parse(method)
    code = Code.parse(code)
    if not code.decodable:
        raise InvalidArgumentError("the container stores gamma or delta codes only")
    body = escape_zeros(raw) if escape else bytes(raw)
    text = Text.from_bytes(body)
    parsing = parse(text, method, code)
    payload, obits, lbits = _kernels.pack_factors(parsing.offs, parsing.lens, int(code), method.signed)
    head = _HEAD.pack(MAGIC, VERSION, int(method), int(code), FLAG_ESCAPED if escape else 0, text.sigma)
    head += (text.alphabet or b"") + _SIZES.pack(text.n, parsing.z)
    blob = head + payload
    info = CompressionInfo(method, code, bool(escape), text.n, parsing.z, len(head), int(obits), int(lbits), len(blob))
    return blob, info


def compress(raw, method=Method.HOLZ, code=Code.DELTA, escape=False):
    return compress_with_info(raw, method, code, escape)[0]


@dataclass(frozen=True)
class Header:
    method: Method
    code: Code
    escaped: bool
    sigma: int
    alphabet: bytes
    n: int
    z: int
    size: int


def read_header(blob):
    blob = bytes(blob)
    if len(blob) < _HEAD.size or blob[:4] != MAGIC:
        raise UnsupportedFormatError("unsupported format: missing HOLZ magic")
    magic, version, method, code, flags, sigma = _HEAD.unpack_from(blob)
    if version != VERSION:
        raise UnsupportedFormatError(f"unsupported format version {version}")
    try:
        method = Method(method)
    except ValueError:
        raise UnsupportedFormatError(f"unsupported method id {method}") from None
    if code not in (Code.GAMMA, Code.DELTA):
        raise UnsupportedFormatError(f"unsupported code id {code}")
    if flags & ~FLAG_ESCAPED:
        raise UnsupportedFormatError(f"unknown flag bits {flags:#04x}")
    pos = _HEAD.size
    if sigma > 256:
        raise CorruptInputError(f"byte alphabet cannot have {sigma} symbols")
    if len(blob) < pos + sigma + _SIZES.size:
        raise CorruptInputError("truncated header")
    alphabet = blob[pos : pos + sigma]
    if any(a >= b for a, b in zip(alphabet, alphabet[1:])):
        raise CorruptInputError("alphabet is not strictly ascending")
    n, z = _SIZES.unpack_from(blob, pos + sigma)
    return Header(method, Code(code), bool(flags & FLAG_ESCAPED), sigma, alphabet, n, z, pos + sigma + _SIZES.size)


def decompress(blob):
    blob = bytes(blob)
    head = read_header(blob)
    if head.n == 0:
        if head.z or len(blob) != head.size:
            raise CorruptInputError("empty body with a nonempty payload")
        return b""
    if head.sigma == 0 or head.z == 0 or head.z > head.n:
        raise CorruptInputError(f"inconsistent header: n={head.n} z={head.z} sigma={head.sigma}")
    payload = np.frombuffer(blob, dtype=np.uint8, offset=head.size)
    offs, lens = _kernels.unpack_factors(payload, head.z, int(head.code), head.method.signed)
    if np.any(lens < 1) or np.any(lens > head.n) or sum(lens.tolist()) != head.n:
        raise CorruptInputError("factor lengths do not add up to the body length")
    parsing = Parsing(offs, lens, head.method.semantics)
    if head.method.signed:
        text = holz_decode(parsing, head.sigma, head.alphabet)
    else:
        text = decode_text(parsing, head.sigma, head.alphabet)
    body = text.to_bytes()
    return unescape_zeros(body) if head.escaped else body
