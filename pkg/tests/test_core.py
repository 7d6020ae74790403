from __future__ import annotations

import pytest
from conftest import Q3_ROWS, blocks
from hypothesis import given, settings
from hypothesis import strategies as st

from coverable import oracle
from coverable.construct import gen_aperiodic, gen_periodic
from coverable.core import (
    Alphabet,
    Block,
    ConflictError,
    PartialPicture,
    Placed,
    Window,
    constant_picture,
    evaluate,
    occurrences,
    occurrences_in_union,
    periodicity_vectors,
    power,
    superpose,
)


def test_alphabet_rejects_empty_and_duplicates():
    with pytest.raises(ValueError):
        Alphabet.of("")
    with pytest.raises(ValueError):
        Alphabet.of("aa")
    assert list(Alphabet.of("ab")) == ["a", "b"]


def test_block_coordinates_bottom_left(q3):
    assert q3[0, 0] == "a"
    assert q3[2, 2] == "a"
    assert q3[0, 2] == "b"
    assert q3.rows() == Q3_ROWS
    assert (q3.width, q3.height) == (3, 3)


def test_empty_block():
    e = Block.empty()
    assert e.is_empty() and e.width == 0 and e.height == 0


def test_window_helpers():
    w = Window.centered(2)
    assert w.as_list() == [-2, -2, 5, 5]
    assert Window.parse("1,2,3,4") == Window(1, 2, 3, 4)
    assert w.grow(1, 2).shrink(1, 2) == w
    with pytest.raises(ValueError):
        Window(0, 0, 0, 3)


def test_evaluate_constant():
    assert evaluate(constant_picture("a"), Window(5, -7, 3, 3)) == Block.filled("a", 3, 3)


def test_evaluate_periodic_anchored_at_origin(q3):
    p = gen_periodic(q3)
    assert evaluate(p, Window(0, 0, 3, 3)) == q3
    assert evaluate(p, Window(3, 3, 3, 3)) == q3
    assert evaluate(p, Window(-3, -6, 3, 3)) == q3


def test_evaluate_is_repeatable(q3):
    p = gen_aperiodic(q3)
    w = Window(-17, 40, 31, 29)
    assert evaluate(p, w) == evaluate(p, w)


def test_occurrences_examples(q3):
    assert occurrences(Block.from_word("aba"), Block.from_word("ababaaba")) == [(0, 0), (2, 0), (5, 0)]
    assert occurrences(q3, q3) == [(0, 0)]
    assert occurrences(Block.from_word("a"), q3) == [(0, 0), (2, 2)]
    with pytest.raises(ValueError):
        occurrences(Block.empty(), q3)


def test_occurrences_larger_pattern_has_none(q3):
    assert occurrences(power(q3, 2, 1), q3) == []


def test_occurrences_in_union_examples():
    ab = Block.from_word("ab")
    a, b = Block.from_word("a"), Block.from_word("b")
    v = Block.from_word("abab")
    assert occurrences_in_union(ab, [Placed(v)]) == len(occurrences(ab, v))
    assert occurrences_in_union(ab, [Placed(a, 0, 0), Placed(b, 1, 0)]) == 1
    assert occurrences_in_union(ab, [Placed(a, 0, 0), Placed(b, 2, 0)]) == 0
    with pytest.raises(ValueError):
        occurrences_in_union(ab, [Placed(v, 0, 0), Placed(a, 1, 0)])


def test_superpose_examples():
    w1 = PartialPicture({(0, 0): "a"})
    assert superpose(w1, PartialPicture({(1, 0): "b"})).assignments == {(0, 0): "a", (1, 0): "b"}
    assert superpose(w1, PartialPicture({(0, 0): "a"})).assignments == {(0, 0): "a"}
    with pytest.raises(ConflictError) as ei:
        superpose(w1, PartialPicture({(0, 0): "b"}))
    assert ei.value.coord == (0, 0)
    assert ei.value.letters == ("a", "b")


def test_periodicity_examples(q3):
    vecs = periodicity_vectors(evaluate(gen_periodic(q3), Window(0, 0, 9, 9)), 4)
    assert {(3, 0), (0, 3)} <= vecs
    const = periodicity_vectors(Block.filled("a", 5, 5), 2)
    assert len(const) == 24
    with pytest.raises(ValueError):
        periodicity_vectors(Block.empty(), 2)


def test_thue_morse_product_window_has_no_short_period(q3):
    from coverable import sequences as sq
    from coverable.construct import suitable_from_sequences

    b = evaluate(suitable_from_sequences(sq.tm(), sq.tm()), Window(0, 0, 64, 64))
    assert periodicity_vectors(b, 16) == set()
    assert oracle.oracle_periodic(oracle.grid_of(b), 16) == set()


def test_power_examples(q3):
    assert power(q3, 1, 1) == q3
    assert power(Block.from_word("ab"), 2, 1) == Block.from_word("abab")
    six = power(q3, 2, 2)
    assert (six.width, six.height) == (6, 6)
    assert {(3, 0), (0, 3)} <= periodicity_vectors(six, 3)
    with pytest.raises(ValueError):
        power(q3, 0, 1)


@settings(max_examples=1000, deadline=None)
@given(blocks(5, 5), blocks(12, 12))
def test_occurrences_match_oracle(u, v):
    assert occurrences(u, v) == sorted(oracle.oracle_occurrences(oracle.grid_of(u), oracle.grid_of(v)))


@settings(max_examples=100, deadline=None)
@given(blocks(4, 4), st.integers(1, 4), st.integers(1, 4))
def test_power_occurrences_without_self_overlap(u, n, m):
    from coverable.covers import borders

    if borders(u):
        return
    # a border-free block can only occur at the tiling positions
    assert len(occurrences(u, power(u, n, m))) == n * m


@st.composite
def partials(draw):
    cells = draw(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.sampled_from("ab"), max_size=12))
    return PartialPicture(cells)


@settings(max_examples=200, deadline=None)
@given(partials(), partials(), partials())
def test_superpose_commutative_associative(a, b, c):
    try:
        ab = superpose(a, b)
        abc = superpose(ab, c)
    except ConflictError:
        return
    assert superpose(b, a) == ab
    assert superpose(a, superpose(b, c)) == abc


def test_block_rejects_bad_input():
    with pytest.raises(ValueError):
        Block.from_rows(["ab", "a"])
    with pytest.raises(IndexError):
        Block.from_rows(["ab"]).sub(0, 0, 3, 1)
