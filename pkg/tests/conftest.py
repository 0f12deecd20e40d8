import random

import pytest

from gsynth.graph import Digraph, mask_of
from gsynth.realize import DegreeSpec
from gsynth.setfunc import Explicit

ACCEPTANCE_LINES: list[str] = []

NAMES = "abcd"  # T-nodes of the four-by-four counterexample, in index order


def tmask(letters: str) -> int:
    return mask_of(NAMES.index(c) for c in letters)


def counterexample_p() -> Explicit:
    vals = {tmask(c): v for c, v in zip("abcd", (3, 3, 3, 2))}
    for pair in ("ab", "ac", "ad", "bc", "bd"):
        vals[tmask(pair)] = 1
    vals[tmask("cd")] = 4
    vals.update({tmask("acd"): 3, tmask("bcd"): 3, tmask("abc"): 2, tmask("abd"): 2, tmask("abcd"): 4})
    return Explicit.from_dict(4, vals)


@pytest.fixture
def p_counter():
    return counterexample_p()


@pytest.fixture
def m_counter():
    return DegreeSpec((4, 4, 3, 2), (4, 4, 3, 2))


@pytest.fixture
def path3():
    return Digraph(3, ((0, 1), (1, 2)))


@pytest.fixture
def d4():
    return Digraph(3, ((0, 1), (1, 2), (0, 2), (2, 1)))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def report():
    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
