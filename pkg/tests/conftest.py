from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from coverable.core import Block

Q3_ROWS = ["bba", "bbb", "abb"]
AB_ROWS = ["ab", "bb"]


@pytest.fixture
def q3() -> Block:
    return Block.from_rows(Q3_ROWS)


@pytest.fixture
def q_ab() -> Block:
    return Block.from_rows(AB_ROWS)


@st.composite
def blocks(draw, max_w: int = 8, max_h: int = 8, letters: str = "ab", min_w: int = 1, min_h: int = 1) -> Block:
    w = draw(st.integers(min_w, max_w))
    h = draw(st.integers(min_h, max_h))
    cells = draw(st.lists(st.sampled_from(letters), min_size=w * h, max_size=w * h))
    return Block.from_rows(["".join(cells[i * w : (i + 1) * w]) for i in range(h)])


def random_block(rng: np.random.Generator, w: int, h: int, letters: str = "ab") -> Block:
    idx = rng.integers(0, len(letters), size=(h, w))
    return Block.from_rows(["".join(letters[i] for i in row) for row in idx])


def admissible_matrix(extra: int = 34, seed: int = 0) -> list[Block]:
    """Fixed covers plus seeded random two-letter blocks whose root has a diagonal border."""
    from coverable.core import power
    from coverable.covers import admits_aperiodic_2d

    fixed = [Block.from_rows(r) for r in (Q3_ROWS, AB_ROWS, ["aba", "bab", "aba"], ["aab", "abb"], ["abc", "cab", "bca"])]
    fixed.append(power(fixed[0], 2, 2))
    rng = np.random.default_rng(seed)
    out = list(fixed)
    while len(out) < len(fixed) + extra:
        q = random_block(rng, int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        if admits_aperiodic_2d(q) and q not in out:
            out.append(q)
    return out


def entropy_matrix(extra: int = 10, seed: int = 1) -> list[Block]:
    """Covers with a border-free corner pair and no full-width or full-height border."""
    from coverable.covers import border_free_corner

    out = [Block.from_rows(AB_ROWS), Block.from_rows(["aab", "abb"]), Block.from_rows(["abb", "aab", "bab"])]
    out = [q for q in out if border_free_corner(q).entropy_hypothesis]
    rng = np.random.default_rng(seed)
    while len(out) < 3 + extra:
        q = random_block(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)))
        if border_free_corner(q).entropy_hypothesis and q not in out:
            out.append(q)
    return out


# acceptance lines are collected here and printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
