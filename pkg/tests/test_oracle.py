from __future__ import annotations

from conftest import Q3_ROWS, blocks
from hypothesis import given, settings
from hypothesis import strategies as st

from coverable import oracle
from coverable.analysis import block_complexity
from coverable.construct import gen_periodic
from coverable.core import Block, Window, evaluate, periodicity_vectors, power
from coverable.covers import is_cover, is_cover_block, primitive_root_2d


def test_oracle_cover_trivial_cases():
    q3 = oracle.grid_of(Block.from_rows(Q3_ROWS))
    window = oracle.grid_of(evaluate(gen_periodic(Block.from_rows(Q3_ROWS)), Window(-2, -2, 7, 7)))
    assert oracle.oracle_is_cover(q3, window, (2, 2))
    big = oracle.grid_of(power(Block.from_rows(Q3_ROWS), 2, 2))
    assert oracle.oracle_is_cover(big, big, (0, 0))


def test_oracle_roots_and_periods():
    assert oracle.oracle_primitive_root(oracle.grid_of(Block.filled("a", 6, 4))) == [["a"]]
    q3 = oracle.grid_of(Block.from_rows(Q3_ROWS))
    assert oracle.oracle_primitive_root(q3) == q3
    assert len(oracle.oracle_periodic(oracle.grid_of(Block.filled("a", 5, 5)), 2)) == 24


def test_oracle_complexity_examples():
    b = evaluate(gen_periodic(Block.from_rows(Q3_ROWS)), Window(0, 0, 30, 30))
    assert oracle.oracle_complexity(oracle.grid_of(b), 3, 3) == 9
    assert oracle.oracle_complexity(oracle.grid_of(Block.filled("a", 9, 9)), 4, 2) == 1


def test_oracle_smallest_period():
    assert oracle.oracle_smallest_period("abaab") == 3
    assert oracle.oracle_smallest_period("aaaa") == 1
    assert oracle.oracle_smallest_period("abc") == 3


@settings(max_examples=500, deadline=None)
@given(blocks(4, 4), st.integers(0, 10**6))
def test_cover_check_differential(q, seed):
    # windows of the q-periodic picture perturbed in one cell
    import numpy as np

    rng = np.random.default_rng(seed)
    W, H = int(rng.integers(1, 10)), int(rng.integers(1, 10))
    win = Window(int(rng.integers(-5, 5)), int(rng.integers(-5, 5)), W, H)
    ext = evaluate(gen_periodic(q), win.grow(q.width - 1, q.height - 1))
    g = oracle.grid_of(ext)
    if rng.random() < 0.5:
        y, x = int(rng.integers(0, len(g))), int(rng.integers(0, len(g[0])))
        g[y][x] = "c"
        ext = Block.from_rows(["".join(r) for r in reversed(g)])
    got = bool(is_cover_block(q, ext, (q.width - 1, q.height - 1)))
    assert got == oracle.oracle_is_cover(oracle.grid_of(q), g, (q.width - 1, q.height - 1))


@settings(max_examples=500, deadline=None)
@given(blocks(12, 12))
def test_root_differential(q):
    assert oracle.grid_of(primitive_root_2d(q)) == oracle.oracle_primitive_root(oracle.grid_of(q))


@settings(max_examples=500, deadline=None)
@given(blocks(3, 3), st.integers(1, 4), st.integers(1, 4))
def test_root_differential_on_powers(r, n, m):
    q = power(r, n, m)
    assert oracle.grid_of(primitive_root_2d(q)) == oracle.oracle_primitive_root(oracle.grid_of(q))


@settings(max_examples=500, deadline=None)
@given(blocks(10, 10), st.integers(1, 6))
def test_periodicity_differential(b, norm):
    assert periodicity_vectors(b, norm) == oracle.oracle_periodic(oracle.grid_of(b), norm)


@settings(max_examples=500, deadline=None)
@given(blocks(16, 16, letters="abc"), st.integers(1, 4), st.integers(1, 4))
def test_complexity_differential(b, n, m):
    n, m = min(n, b.width), min(m, b.height)
    p = gen_periodic(b)
    got = block_complexity(p, Window(0, 0, b.width, b.height), n, m).count
    assert got == oracle.oracle_complexity(oracle.grid_of(b), n, m)


def test_is_cover_on_picture_matches_oracle_on_window():
    q = Block.from_rows(Q3_ROWS)
    from coverable.construct import gen_aperiodic

    p = gen_aperiodic(q)
    for x0 in range(-30, 30, 7):
        win = Window(x0, -x0, 9, 8)
        g = oracle.grid_of(evaluate(p, win.grow(2, 2)))
        assert bool(is_cover(q, p, win)) == oracle.oracle_is_cover(oracle.grid_of(q), g, (2, 2))
