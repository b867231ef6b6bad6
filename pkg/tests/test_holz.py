import pytest

from holz.colex import holz_decode, holz_oracle_parse, holz_parse
from holz.errors import CorruptInputError, InvalidArgumentError
from holz.lz import COLEX, TEXTUAL, Parsing, greedy_parse_rightmost
from holz.text import Text

from conftest import binary_texts, random_text


def test_abbabb_example(abbabb):
    expect = Parsing.from_factors([(-1, 1), (1, 1), (4, 2), (2, 2)], COLEX)
    assert holz_parse(abbabb) == expect
    assert holz_oracle_parse(abbabb) == expect
    assert holz_decode(expect, 2) == abbabb


def test_exhaustive_binary_up_to_12():
    for text in binary_texts(12):
        got = holz_parse(text)
        assert got == holz_oracle_parse(text), text.symbols.tolist()
        assert holz_decode(got, 2) == text


def test_random_against_oracle(rng):
    for _ in range(1000):
        text = random_text(rng, int(rng.integers(1, 257)), int(rng.integers(1, 9)))
        got = holz_parse(text)
        assert got == holz_oracle_parse(text)


def test_lengths_match_greedy(rng):
    # both parsers are greedy-longest, only the offsets differ
    for _ in range(100):
        text = random_text(rng, 500, 4)
        assert holz_parse(text).lens.tolist() == greedy_parse_rightmost(text).lens.tolist()


@pytest.mark.parametrize("sigma", [1, 2, 16, 255])
def test_roundtrip_long(rng, sigma):
    text = random_text(rng, 20_000, sigma)
    assert holz_decode(holz_parse(text), sigma) == text


def test_periodic_text():
    text = Text.from_string("ab" * 500, "ab")
    parse = holz_parse(text)
    assert parse.z <= 3
    assert holz_decode(parse, 2) == text


def test_decode_rejects_bad_offsets():
    with pytest.raises(CorruptInputError):
        holz_decode(Parsing([50], [1], COLEX), 2)
    with pytest.raises(CorruptInputError):
        holz_decode(Parsing([0], [1], COLEX), 2)  # the $ row itself
    with pytest.raises(InvalidArgumentError):
        holz_decode(Parsing([1], [1], TEXTUAL), 2)


def test_empty():
    text = Text([], 2)
    assert holz_parse(text).z == 0
    assert holz_decode(Parsing([], [], COLEX), 2).n == 0
