import itertools
import os
from pathlib import Path

import numpy as np
import pytest

from holz.text import Text

DATA = Path(__file__).parent / "data"
CANTERBURY = DATA / "canterbury"


def corpus_file(name):
    """Path to a corpus file, looked up in the bundled data and ``HOLZ_CORPUS_DIR``."""
    dirs = [CANTERBURY]
    if os.environ.get("HOLZ_CORPUS_DIR"):
        dirs.insert(0, Path(os.environ["HOLZ_CORPUS_DIR"]))
    for d in dirs:
        if (d / name).is_file():
            return d / name
    return None


def random_text(rng, n, sigma):
    return Text(rng.integers(0, sigma, size=n), sigma)


def binary_texts(max_n):
    for n in range(1, max_n + 1):
        for bits in itertools.product((0, 1), repeat=n):
            yield Text(bits, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


@pytest.fixture
def abbabb():
    return Text.from_string("abbabb", "ab")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
