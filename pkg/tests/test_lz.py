import numpy as np
import pytest

from holz.errors import InvalidArgumentError
from holz.lz import (
    COLEX,
    TEXTUAL,
    Parsing,
    decode_text,
    factor_sources_valid,
    greedy_parse_nsvpsv,
    greedy_parse_rightmost,
    oracle_greedy_parse,
)
from holz.text import Text

from conftest import binary_texts, random_text


def test_abbabb_example(abbabb):
    expect = Parsing.from_factors([(1, 1), (3, 1), (4, 2), (3, 2)], TEXTUAL)
    assert greedy_parse_rightmost(abbabb) == expect
    assert oracle_greedy_parse(abbabb) == expect
    assert greedy_parse_nsvpsv(abbabb).lens.tolist() == [1, 1, 2, 2]


@pytest.mark.parametrize("sigma", [1, 2, 4, 16, 64])
def test_rightmost_matches_oracle(rng, sigma):
    for _ in range(60):
        text = random_text(rng, int(rng.integers(1, 150)), sigma)
        assert greedy_parse_rightmost(text) == oracle_greedy_parse(text)


@pytest.mark.parametrize("sigma", [1, 2, 4, 16, 64])
def test_nsvpsv_boundaries_and_sources(rng, sigma):
    for _ in range(60):
        text = random_text(rng, int(rng.integers(1, 150)), sigma)
        got = greedy_parse_nsvpsv(text)
        assert got.starts().tolist() == oracle_greedy_parse(text, tie="any").starts().tolist()
        assert factor_sources_valid(got, text)


def test_exhaustive_binary():
    for text in binary_texts(10):
        oracle = oracle_greedy_parse(text)
        assert greedy_parse_rightmost(text) == oracle
        nsv = greedy_parse_nsvpsv(text)
        assert nsv.lens.tolist() == oracle.lens.tolist()
        assert factor_sources_valid(nsv, text)


def test_decode_roundtrip(rng):
    for sigma in (1, 3, 200):
        text = random_text(rng, 2000, sigma)
        for parser in (greedy_parse_nsvpsv, greedy_parse_rightmost):
            assert decode_text(parser(text), sigma) == text


def test_overlapping_copy():
    text = Text.from_string("aaaaaaaa", "a")
    parse = greedy_parse_rightmost(text)
    assert parse.factors == [(1, 8)]
    assert decode_text(parse, 1) == text


def test_empty_body():
    text = Text([], 3)
    assert greedy_parse_rightmost(text).z == 0
    assert greedy_parse_nsvpsv(text).z == 0
    assert decode_text(Parsing([], [], TEXTUAL), 3).n == 0


def test_factor_validity_rejects_bad_source(abbabb):
    bad = Parsing.from_factors([(1, 1), (1, 1), (4, 2), (3, 2)], TEXTUAL)
    assert not factor_sources_valid(bad, abbabb)


def test_decode_rejects_colex_and_bad_offsets():
    with pytest.raises(InvalidArgumentError):
        decode_text(Parsing([1], [1], COLEX), 2)
    with pytest.raises(Exception):
        decode_text(Parsing([9], [1], TEXTUAL), 2)


def test_parsing_accessors():
    p = Parsing.from_factors([(2, 3), (1, 4)], TEXTUAL)
    assert p.z == 2 and p.n == 7
    assert p.starts().tolist() == [0, 3]
    assert list(p) == [(2, 3), (1, 4)]
    assert isinstance(p.offs, np.ndarray)
