"""HOLZ compression toolkit.

LZ-style parsing where a factor points to an earlier prefix by its
co-lexicographic rank distance, plus the classic textual parsers,
bit-optimal variants and a small container format.
"""

from holz.bitio import BitStream, Code
from holz.bitopt import CostModel, parse_bitopt_colex, parse_bitopt_text
from holz.colex import holz_decode, holz_parse
from holz.container import Method, compress, compress_with_info, decompress, parse
from holz.errors import (
    CorruptInputError,
    DecodeError,
    HolzError,
    InvalidArgumentError,
    UnsupportedFormatError,
)
from holz.estimator import HolzCompressor
from holz.lz import COLEX, TEXTUAL, Factor, Parsing, decode_text, greedy_parse_nsvpsv, greedy_parse_rightmost
from holz.stats import dataset_stats, empirical_entropy
from holz.text import Text

__version__ = "0.1.0"

__all__ = [
    "BitStream",
    "COLEX",
    "Code",
    "CorruptInputError",
    "CostModel",
    "DecodeError",
    "Factor",
    "HolzCompressor",
    "HolzError",
    "InvalidArgumentError",
    "Method",
    "Parsing",
    "TEXTUAL",
    "Text",
    "UnsupportedFormatError",
    "compress",
    "compress_with_info",
    "dataset_stats",
    "decode_text",
    "decompress",
    "empirical_entropy",
    "greedy_parse_nsvpsv",
    "greedy_parse_rightmost",
    "holz_decode",
    "holz_parse",
    "parse",
    "parse_bitopt_colex",
    "parse_bitopt_text",
]
