import random

import pytest
from hypothesis import given, settings, strategies as st

from fgb.errors import IllegalGenerator, RankMismatch
from fgb.words import (CyclicWord, Kind, Rank, Word, are_conjugate, cyclic_reduce, invert,
                       multiply, parse_word, reduce)

R = Rank(2, 2)
RX = Rank(2, 2, extended=True)


def w(text, rank=R):
    return parse_word(rank, text)


letters = st.lists(st.integers(1, R.size).flatmap(lambda g: st.sampled_from((g, -g))), max_size=12)
words = letters.map(lambda ls: reduce(R, ls))


def test_reduce_examples():
    assert reduce(R, [1, -1]) == Word.identity(R)
    assert reduce(R, [1, 2, -2, 1]) == w("x1·x1")


def test_reduce_rejects_illegal_letters():
    with pytest.raises(IllegalGenerator):
        reduce(R, [5])
    with pytest.raises(IllegalGenerator):
        w("u1")
    assert str(w("u1·v2^-1", RX)) == "u1·v2^-1"


def test_generator_numbering():
    assert [RX.x(1), RX.x(2), RX.y(1), RX.y(2), RX.u(1), RX.u(2), RX.v(1), RX.v(2)] == list(range(1, 9))
    assert RX.generator_id(6).kind is Kind.U
    with pytest.raises(IllegalGenerator):
        R.gen("y", 3)


def test_multiply_and_invert_examples():
    assert multiply(Word.identity(R), w("x2·y1")) == w("x2·y1")
    assert multiply(w("x1"), w("x1^-1")).is_identity()
    assert multiply(w("x1·x2"), w("x2^-1·y1")) == w("x1·y1")
    assert invert(w("1")).is_identity()
    assert invert(w("x1·y1^-1")) == w("y1·x1^-1")
    with pytest.raises(RankMismatch):
        multiply(w("x1"), Word.gen(Rank(2, 1), "x", 1))


def test_text_grammar_round_trip():
    for text in ["1", "x1", "x1·y2^-1·x1", "y1^-1·x2·x2"]:
        assert str(w(text)) == text
    assert w("x1^3") == w("x1·x1·x1")
    assert w("x1*y1") == w("x1.y1") == w("x1·y1")


@settings(max_examples=200, deadline=None)
@given(letters)
def test_word_times_inverse_is_empty(ls):
    assert reduce(R, ls + [-a for a in reversed(ls)]).is_identity()
    u = reduce(R, ls)
    assert reduce(R, u.letters) == u
    assert invert(invert(u)) == u
    assert multiply(u, invert(u)).is_identity() and multiply(invert(u), u).is_identity()


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=200, deadline=None)
@given(words)
def test_cyclic_reduce_reconstructs(u):
    core, t = cyclic_reduce(u)
    assert ~t * core.representative * t == u
    rep = core.representative.letters
    assert not rep or rep[0] != -rep[-1]


def test_cyclic_reduce_examples():
    core, t = cyclic_reduce(w("x1^-1·y1·x1"))
    assert core.representative == w("y1") and t == w("x1")
    core, t = cyclic_reduce(w("y1"))
    assert t.is_identity()
    core, t = cyclic_reduce(w("x2·x1^-1·y1·x1·x2^-1"))
    assert core.representative == w("y1") and t == w("x1·x2^-1")
    assert cyclic_reduce(w("1"))[0].representative.is_identity()


def test_cyclic_word_equality_is_rotation():
    a = CyclicWord.from_reduced(w("x1·y1·x2"))
    b = CyclicWord.from_reduced(w("y1·x2·x1"))
    assert a == b and hash(a) == hash(b)
    assert a != CyclicWord.from_reduced(w("x1·x2·y1"))
    # X < Y, then index, positive before negative
    assert a.canonical == (1, 3, 2)
    assert CyclicWord.from_reduced(w("x2·x1^-1")).canonical == (-1, 2)
    assert CyclicWord.from_reduced(w("x1^-1·x2^-1·x1·x2")).canonical == (1, 2, -1, -2)


def test_are_conjugate_examples():
    assert are_conjugate(w("y1"), w("x1^-1·y1·x1")) == w("x1")
    assert are_conjugate(w("x1"), w("x2")) is None


def test_are_conjugate_random_pairs():
    rng = random.Random(11)
    for _ in range(100):
        a = reduce(R, [rng.choice([1, -1]) * rng.randint(1, 4) for _ in range(rng.randint(0, 8))])
        u = reduce(R, [rng.choice([1, -1]) * rng.randint(1, 4) for _ in range(rng.randint(0, 6))])
        b = ~u * a * u
        t = are_conjugate(a, b)
        assert t is not None and ~t * a * t == b
        s = are_conjugate(b, a)
        assert s is not None and ~s * b * s == a
        assert are_conjugate(a, a) is not None
