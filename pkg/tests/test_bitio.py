import pytest
from hypothesis import given
from hypothesis import strategies as st

from holz.bitio import (
    BitStream,
    Code,
    code_len,
    cost_classes,
    decode,
    delta_decode,
    delta_encode,
    encode,
    gamma_decode,
    gamma_encode,
    signed_decode,
    signed_encode,
)
from holz.errors import DecodeError, InvalidArgumentError


def _bits(fn, x):
    out = BitStream()
    fn(x, out)
    return out.to_bits()


@pytest.mark.parametrize(
    "x, gamma, delta",
    [(1, "1", "1"), (2, "010", "0100"), (3, "011", "0101"), (4, "00100", "01100"), (5, "00101", "01101"),
     (17, "000010001", "001010001")],
)
def test_known_codewords(x, gamma, delta):
    assert _bits(gamma_encode, x) == gamma
    assert _bits(delta_encode, x) == delta


@given(st.lists(st.integers(1, 1 << 40), min_size=1, max_size=50), st.sampled_from([Code.GAMMA, Code.DELTA]))
def test_roundtrip_and_lengths(values, code):
    out = BitStream()
    for v in values:
        before = len(out)
        encode(code, v, out)
        assert len(out) - before == code_len(code, v)
    back = BitStream(out.bytes, len(out))
    assert [decode(code, back) for _ in values] == values
    assert back.remaining() == 0


def test_signed_roundtrip():
    out = BitStream()
    for off in (1, -1, 7, -300):
        signed_encode(off, Code.DELTA, out)
    assert out.to_bits().startswith("01")  # +1: sign 0, delta(1) = 1
    back = BitStream(out.bytes, len(out))
    assert [signed_decode(Code.DELTA, back) for _ in range(4)] == [1, -1, 7, -300]
    with pytest.raises(InvalidArgumentError):
        signed_encode(0, Code.GAMMA, BitStream())


def test_padding_is_zero_and_msb_first():
    s = BitStream.from_bits("101")
    assert s.bytes == b"\xa0"
    assert BitStream(b"\xff", 3).bytes == b"\xe0"


def test_truncated_stream_raises():
    s = BitStream.from_bits("0001")  # gamma prefix promises 3 more bits
    with pytest.raises(DecodeError):
        gamma_decode(s)
    with pytest.raises(DecodeError):
        delta_decode(BitStream())


def test_invalid_values():
    with pytest.raises(InvalidArgumentError):
        gamma_encode(0, BitStream())
    with pytest.raises(InvalidArgumentError):
        encode(Code.BINARY_LENGTH, 3, BitStream())
    with pytest.raises(InvalidArgumentError):
        Code.parse("huffman")
    with pytest.raises(InvalidArgumentError):
        BitStream(b"\x00", 9)


def test_binary_length_prices_only():
    assert [code_len(Code.BINARY_LENGTH, x) for x in (1, 2, 3, 4, 255, 256)] == [1, 2, 2, 3, 8, 9]
    assert not Code.BINARY_LENGTH.decodable


@pytest.mark.parametrize("code", list(Code))
def test_cost_classes_partition(code):
    classes = cost_classes(code, 5000)
    assert classes[0].lo == 1 and classes[-1].hi == 5000
    for a, b in zip(classes, classes[1:]):
        assert b.lo == a.hi + 1 and b.bits > a.bits
    for c in classes:
        assert {code_len(code, x) for x in (c.lo, (c.lo + c.hi) // 2, c.hi)} == {c.bits}


def test_delta_classes_merge_equal_neighbours():
    # delta(2..3) = 4 bits and delta(4..7) = 5 bits differ, delta(8..15) = 8 bits
    spans = [(c.lo, c.hi) for c in cost_classes(Code.DELTA, 15)]
    assert spans == [(1, 1), (2, 3), (4, 7), (8, 15)]
