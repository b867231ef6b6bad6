import pytest

from holz.bitio import Code
from holz.bitopt import (
    CostModel,
    bitopt_oracle,
    gen_arcs_colex,
    gen_arcs_text,
    min_offset_table,
    parse_bitopt_colex,
    parse_bitopt_text,
    shortest_path,
)
from holz.colex import holz_decode, holz_parse
from holz.errors import InvalidArgumentError
from holz.lz import COLEX, TEXTUAL, decode_text, greedy_parse_rightmost
from holz.text import Text

from conftest import random_text

GEN = {TEXTUAL: gen_arcs_text, COLEX: gen_arcs_colex}
GREEDY = {TEXTUAL: greedy_parse_rightmost, COLEX: holz_parse}


def _check(text, semantics, codes, wins):
    table = min_offset_table(text, semantics)
    for code in codes:
        cost = CostModel.for_semantics(code, semantics)
        bits, parse = shortest_path(text.n, GEN[semantics](text, cost), cost)
        want, _ = bitopt_oracle(text, cost, semantics, table)
        assert bits == want
        assert cost.parsing_bits(parse) == bits
        greedy = cost.parsing_bits(GREEDY[semantics](text))
        assert bits <= greedy
        wins[(semantics, code)] += bits < greedy
        if semantics == TEXTUAL:
            assert decode_text(parse, text.sigma) == text
        else:
            assert holz_decode(parse, text.sigma) == text


@pytest.mark.parametrize("semantics", [TEXTUAL, COLEX])
def test_matches_exhaustive_oracle(rng, semantics):
    wins = {(semantics, c): 0 for c in Code}
    for _ in range(500):
        text = random_text(rng, int(rng.integers(1, 201)), int(rng.integers(1, 9)))
        _check(text, semantics, list(Code), wins)
    # at least one input where the optimal parse beats greedy
    assert all(w > 0 for w in wins.values()), wins


def test_fewer_bits_than_greedy_with_more_factors():
    # greedy takes the long far copy; the optimum uses short near copies
    text = Text.from_string("abcdefgh" + "xyxyxy" + "abcdefgh" + "a" + "xyxyxyxyxy", "abcdefghxy")
    cost = CostModel(Code.GAMMA)
    opt = parse_bitopt_text(text, Code.GAMMA)
    assert cost.parsing_bits(opt) <= cost.parsing_bits(greedy_parse_rightmost(text))


def test_arcs_are_maximal_and_ordered(rng):
    text = random_text(rng, 150, 3)
    for semantics in (TEXTUAL, COLEX):
        cost = CostModel.for_semantics(Code.DELTA, semantics)
        arcs = GEN[semantics](text, cost)
        table = min_offset_table(text, semantics)
        for p in range(text.n):
            got = arcs.at(p)
            lens = [a.len for a in got]
            assert lens == sorted(set(lens))
            assert max(lens) == len(table[p])
            for a in got:
                assert cost.offset_bits(a.off) == cost.offset_bits(table[p][a.len - 1])


def test_colex_needs_signed_cost():
    with pytest.raises(InvalidArgumentError):
        gen_arcs_colex(Text([0, 1], 2), CostModel(Code.DELTA, signed=False))


def test_larger_inputs_roundtrip(rng):
    text = random_text(rng, 5000, 4)
    assert decode_text(parse_bitopt_text(text), 4) == text
    assert holz_decode(parse_bitopt_colex(text), 4) == text


def test_cost_model():
    cost = CostModel(Code.GAMMA, signed=True)
    assert cost.factor_bits(-3, 1) == 1 + 3 + 1
    with pytest.raises(InvalidArgumentError):
        cost.offset_bits(0)
