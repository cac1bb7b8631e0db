import random

import numpy as np
import pytest

from fgb.boundary import theta_generator
from fgb.endos import (Endomorphism, ShortMove, WhiteheadAut, abelianized_matrix, apply, compose,
                       identity, is_automorphism, nielsen_reduce, realize)
from fgb.errors import IllegalSymbol
from fgb.words import Rank, Word, parse_word

R2 = Rank(2, 0)
R = Rank(2, 2)


def w(text, rank=R):
    return parse_word(rank, text)


def endo(rank, **images):
    return Endomorphism.from_words(rank, [parse_word(rank, images.get(rank.name(g), rank.name(g)))
                                          for g in rank.generators()])


def random_aut(rank, rng, moves=6):
    acc = identity(rank)
    for _ in range(moves):
        src = rng.randint(1, rank.size)
        by = rng.choice([g for g in rank.generators() if g != src]) * rng.choice((1, -1))
        acc = compose(acc, realize(ShortMove(src, rng.choice((1, -1, 0)), by), rank))
    return acc


def random_word(rank, rng, length):
    return Word.of(rank, [rng.choice((1, -1)) * rng.randint(1, rank.size) for _ in range(length)])


def test_apply_examples():
    e = endo(R2, x1="x1·x2")
    assert apply(e, w("x1^-1", R2)) == w("x2^-1·x1^-1", R2)
    u = w("x1·y2^-1·x2")
    assert apply(identity(R), u) == u


def test_homomorphism_law():
    rng = random.Random(3)
    for _ in range(300):
        e = Endomorphism.from_words(R, [random_word(R, rng, rng.randint(0, 4)) for _ in R.generators()])
        u, v = random_word(R, rng, 6), random_word(R, rng, 6)
        assert apply(e, u * v) == apply(e, u) * apply(e, v)
        assert apply(e, ~u) == ~apply(e, u)


def test_compose_order_is_first_then():
    f = endo(R2, x1="x1·x2")
    g = endo(R2, x2="x2·x1")
    u = w("x1·x2^-1", R2)
    assert apply(compose(f, g), u) == apply(g, apply(f, u))
    assert compose(f, identity(R2)) == f
    assert compose(f, endo(R2)).image(1) == w("x1·x2", R2)
    rng = random.Random(4)
    for _ in range(200):
        a, b, c = (random_aut(R, rng, 3) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))
        assert compose(a, b, c) == compose(compose(a, b), c)


def test_nielsen_examples():
    out, log = nielsen_reduce([w("x1·x2", R2), w("x2", R2)])
    assert out == [w("x1", R2), w("x2", R2)] and len(log) == 1
    out, _ = nielsen_reduce([w("x1", R2), w("x1", R2)])
    assert sorted(map(str, out)) == ["1", "x1"]
    out, log = nielsen_reduce([w("x1^2", R2), w("x2", R2)])
    assert out == [w("x1^2", R2), w("x2", R2)] and log == []


def test_is_automorphism_examples():
    inv = is_automorphism(endo(R2, x1="x1·x2"))
    assert inv == endo(R2, x1="x1·x2^-1")
    assert is_automorphism(endo(R2, x1="x1^2")) is None
    t = theta_generator(1, Rank(1, 1))
    assert is_automorphism(t) == compose(t, t)


def test_is_automorphism_random():
    rng = random.Random(5)
    for _ in range(100):
        e = random_aut(R, rng)
        inv = is_automorphism(e)
        assert inv is not None
        assert compose(e, inv).is_identity() and compose(inv, e).is_identity()
        assert round(abs(np.linalg.det(abelianized_matrix(e)))) == 1
    for _ in range(300):
        e = Endomorphism.from_words(R, [random_word(R, rng, rng.randint(1, 3)) for _ in R.generators()])
        if is_automorphism(e) is not None:
            assert round(abs(np.linalg.det(abelianized_matrix(e)))) == 1


def test_realize_examples():
    assert realize(ShortMove(R.y(1), 0, R.y(2)), R) == endo(R, y1="y2^-1·y1·y2")
    assert realize(ShortMove(R.x(1), 1, R.x(2)), R) == endo(R, x1="x1·x2")
    a = R.x(2)
    e = realize(WhiteheadAut.type2({a, R.y(1), -R.y(1)}, a), R)
    assert e.image(R.y(1)) == w("x2^-1·y1·x2")
    assert e.image(R.x(1)) == w("x1")
    with pytest.raises(IllegalSymbol):
        WhiteheadAut.type2({a, -a}, a)
    with pytest.raises(IllegalSymbol):
        realize(ShortMove(1, 1, -1), R)


def test_short_move_inverses():
    for g in R.generators():
        for h in R.generators():
            if g == h:
                continue
            for eps in (1, -1, 0):
                for eta in (1, -1):
                    m = ShortMove(g, eps, eta * h)
                    assert compose(realize(m, R), realize(m.inverse(), R)).is_identity()


def test_abelianized_matrix():
    assert (abelianized_matrix(identity(R2)) == np.eye(2, dtype=int)).all()
    assert abelianized_matrix(endo(R2, x1="x1·x2")).tolist() == [[1, 0], [1, 1]]
    rng = random.Random(6)
    for _ in range(100):
        f, g = random_aut(R, rng, 3), random_aut(R, rng, 3)
        # with columns as images, composing "f then g" multiplies as M_g · M_f
        assert (abelianized_matrix(compose(f, g)) == abelianized_matrix(g) @ abelianized_matrix(f)).all()


def test_json_round_trip():
    e = endo(R, x1="x1·y2^-1", y1="x2^-1·y1·x2")
    assert Endomorphism.from_json(e.to_json(), R) == e
