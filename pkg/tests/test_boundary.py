import itertools
import random

import pytest

from fgb import boundary as bd
from fgb.boundary import (BoundaryElement, SigmaBoundaryElement, alpha, beta_embed, boundary_word,
                          central_inclusion, fixes_boundary_word, inverse, is_ank_member, kernel_check,
                          multiply, normalizes_theta, power, section_lift, theta_generator, unit,
                          vcd_witness_family)
from fgb.endos import Endomorphism, ShortMove, compose, identity, is_automorphism, realize
from fgb.errors import IndexOutOfRange, KZero, NotAMember, NotInvertible, OddRank
from fgb.presentations import enumerate_generators, random_element, symbol_realize
from fgb.words import Rank, Word, parse_word

NK = [(1, 1), (2, 1), (2, 2), (3, 1)]


def w(text, rank):
    return parse_word(rank, text)


def elem(n, k, nu, ws):
    r = Rank(n, k)
    return BoundaryElement.create(n, k, [w(s, r) for s in nu], [w(s, r) for s in ws])


def randoms(n, k, count, seed):
    rng = random.Random(seed)
    return [random_element(n, k, rng) for _ in range(count)]


def test_alpha_examples():
    assert alpha(unit(2, 2)).is_identity()
    assert alpha(central_inclusion(2, [1, 0])).is_identity()
    e = elem(1, 1, ["x1"], ["x1"])
    assert alpha(e).image(2) == w("x1^-1·y1·x1", Rank(1, 1))


def test_create_verifies_automorphism():
    with pytest.raises(NotInvertible):
        elem(2, 1, ["x1", "x1"], ["1"])


@pytest.mark.parametrize("n,k", NK)
def test_alpha_is_homomorphism(n, k):
    xs = randoms(n, k, 120, n * 10 + k)
    for a, b in zip(xs, xs[1:]):
        assert alpha(a * b) == compose(alpha(a), alpha(b))


@pytest.mark.parametrize("n,k", NK)
def test_group_laws(n, k):
    xs = randoms(n, k, 60, 7 + n + k)
    u = unit(n, k)
    for a, b, c in zip(xs, xs[1:], xs[2:]):
        assert (a * b) * c == a * (b * c)
        assert a * u == a == u * a
        assert (a * inverse(a)) == u == inverse(a) * a


def test_inverse_examples():
    assert inverse(unit(1, 2)) == unit(1, 2)
    assert inverse(central_inclusion(1, [2, -1])) == central_inclusion(1, [-2, 1])
    assert power(central_inclusion(1, [1, 2]), 3) == central_inclusion(1, [3, 6])


def test_central_inclusion_examples():
    assert central_inclusion(2, [0, 0]) == unit(2, 2)
    r = Rank(1, 2)
    assert central_inclusion(1, [1, -3]).w == (w("y1", r).letters, w("y2^-3", r).letters)
    assert central_inclusion(1, [1, 2]) * central_inclusion(1, [3, -5]) == central_inclusion(1, [4, -3])


@pytest.mark.parametrize("n,k", NK + [(0, 2), (0, 3)])
def test_centrality_against_generators(n, k):
    gens = [symbol_realize(s, n, k, "bdy") for s in enumerate_generators(n, k, "bdy")]
    rng = random.Random(n + 3 * k)
    for _ in range(5):
        z = central_inclusion(n, [rng.randint(-3, 3) for _ in range(k)])
        for g in gens:
            assert z * g == g * z


@pytest.mark.parametrize("n,k", NK)
def test_exactness(n, k):
    rng = random.Random(n * k)
    for e in randoms(n, k, 60, 99):
        z = kernel_check(e)
        assert (z is not None) == alpha(e).is_identity()
        if z is not None:
            assert central_inclusion(n, z) == e
    for _ in range(50):
        z = tuple(rng.randint(-6, 6) for _ in range(k))
        assert kernel_check(central_inclusion(n, z)) == z
    assert kernel_check(unit(n, k)) == (0,) * k


def test_ank_membership():
    r = Rank(1, 1)
    assert is_ank_member(realize(ShortMove(r.y(1), 0, r.x(1)), r))
    swap = Endomorphism.from_words(r, [w("y1", r), w("x1", r)])
    assert not is_ank_member(swap)
    for e in randoms(2, 2, 20, 1):
        assert is_ank_member(alpha(e))


def test_section_lift():
    r = Rank(1, 1)
    assert section_lift(identity(r)) == unit(1, 1)
    s = section_lift(realize(ShortMove(r.y(1), 0, r.x(1)), r))
    assert s.w == ((r.x(1),),) and s.nu == ((r.x(1),),)
    with pytest.raises(NotAMember):
        section_lift(Endomorphism.from_words(r, [w("y1", r), w("x1", r)]))
    rank = Rank(2, 2)
    for e in randoms(2, 2, 40, 5):
        g = alpha(e)
        assert alpha(section_lift(g)) == g
    xs = [alpha(e) for e in randoms(2, 2, 101, 6)]
    for g, h in zip(xs, xs[1:]):
        c = section_lift(g) * section_lift(h) * inverse(section_lift(compose(g, h)))
        assert kernel_check(c) is not None
    assert rank.size == 4


def test_theta_generators():
    r = Rank(1, 3)
    ts = [theta_generator(j, r) for j in (1, 2, 3)]
    big = ts[0].rank
    assert big.size == 1 + 9
    assert ts[0].image(big.u(1)) == Word(big, (big.v(1),))
    for t in ts:
        assert compose(t, t, t).is_identity() and not compose(t, t).is_identity()
    for a, b in itertools.combinations(ts, 2):
        assert compose(a, b) == compose(b, a)
    group = {compose(*[t for t, e in zip(ts, es) for _ in range(e)] or [identity(big)])
             for es in itertools.product(range(3), repeat=3)}
    assert len(group) == 27
    with pytest.raises(IndexOutOfRange):
        theta_generator(4, r)


def test_beta_examples():
    assert beta_embed(SigmaBoundaryElement.plain(unit(1, 2))).is_identity()
    b = beta_embed(SigmaBoundaryElement.plain(central_inclusion(1, [1, 0])))
    r = b.rank
    y = Word(r, (r.y(1),))
    for g in (r.y(1), r.u(1), r.v(1)):
        assert b.image(g) == ~y * Word(r, (g,)) * y
    assert not b.is_identity()


def test_normalizes_theta_examples():
    big = Rank(1, 2, extended=True)
    assert normalizes_theta(identity(big)) == (1, 2)
    swap = beta_embed(SigmaBoundaryElement.permutation(1, 2, (2, 1)))
    assert swap.image(big.y(1)) == Word(big, (big.y(2),))
    assert normalizes_theta(swap) == (2, 1)
    not_normal = Endomorphism.from_mapping(big, {big.u(1): (big.u(1), big.x(1))})
    assert normalizes_theta(not_normal) is None
    with pytest.raises(NotInvertible):
        normalizes_theta(Endomorphism.from_mapping(big, {big.u(1): (big.u(1), big.u(1))}))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (1, 3)])
def test_beta_and_sigma_products(n, k):
    rng = random.Random(17 * k + n)

    def sample():
        return SigmaBoundaryElement.twist(random_element(n, k, rng), tuple(rng.sample(range(1, k + 1), k)))

    for _ in range(40):
        a, b, c = sample(), sample(), sample()
        assert normalizes_theta(beta_embed(a)) == a.sigma
        assert beta_embed(a * b) == compose(beta_embed(a), beta_embed(b))
        assert (a * b) * c == a * (b * c)
        assert (a * a.inverse()).is_identity()
        assert SigmaBoundaryElement.from_json(a.to_json()) == a
        assert is_automorphism(a.automorphism()) is not None


def test_sigma_create_rejects_mismatched_conjugacy():
    e = unit(1, 2)
    # x1 -> y2 together with the swap y1 <-> y2 hits y2 twice
    bad = BoundaryElement.trusted(1, 2, [(3,)], [(), ()])
    with pytest.raises(NotInvertible):
        SigmaBoundaryElement.create((2, 1), bad)
    with pytest.raises(ValueError):
        SigmaBoundaryElement.create((1, 1), e)
    assert SigmaBoundaryElement.create((2, 1), elem(1, 2, ["x1·y1"], ["1", "1"])).sigma == (2, 1)
    assert SigmaBoundaryElement.create((2, 1), e).sigma == (2, 1)


def test_boundary_word_and_mcg():
    r = Rank(2, 1)
    assert boundary_word(1, 1) == w("x1·x2·x1^-1·x2^-1·y1", r)
    assert fixes_boundary_word(unit(2, 1), 1)
    assert fixes_boundary_word(central_inclusion(2, [4]), 1)
    g = elem(2, 1, ["x1·y1", "x2"], ["1"])
    assert not fixes_boundary_word(g, 1)
    with pytest.raises(OddRank):
        fixes_boundary_word(unit(3, 1), 1)


def test_mcg_subgroup_closure():
    # Dehn-twist style elements that fix c: x1 -> x1 x2, x2 -> x2 (a twist about x2)
    r = Rank(2, 1)
    t1 = elem(2, 1, ["x1·x2", "x2"], ["1"])
    t2 = elem(2, 1, ["x1", "x2·x1"], ["1"])
    assert fixes_boundary_word(t1, 1) == (alpha(t1).image(1) * alpha(t1).image(2) * ~alpha(t1).image(1)
                                          * ~alpha(t1).image(2) * Word(r, (3,)) == boundary_word(1, 1))
    passing = [x for x in (t1, t2, inverse(t1), inverse(t2), central_inclusion(2, [1]))
               if fixes_boundary_word(x, 1)]
    assert len(passing) >= 3
    rng = random.Random(2)
    for _ in range(50):
        a = rng.choice(passing)
        for _ in range(rng.randint(1, 4)):
            a = a * rng.choice(passing)
        assert fixes_boundary_word(a, 1) and fixes_boundary_word(inverse(a), 1)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (2, 2)])
def test_vcd_witness_family(n, k):
    fam = vcd_witness_family(n, k)
    assert len(fam) == 2 * n + 2 * k - 1
    pairs = list(itertools.combinations(fam, 2))
    assert len(pairs) == (2 * n + 2 * k - 1) * (2 * n + 2 * k - 2) // 2
    for a, b in pairs:
        assert a * b == b * a
    for g in fam:
        acc = g
        for _ in range(10):
            assert acc != unit(n, k)
            acc = acc * g
    central = [g for g in fam if kernel_check(g) is not None]
    assert sorted(kernel_check(g) for g in central) == sorted(
        tuple(int(i == j) for i in range(k)) for j in range(k))


def test_vcd_needs_k():
    with pytest.raises(KZero):
        vcd_witness_family(2, 0)


def test_json_round_trip():
    for e in randoms(2, 2, 10, 3):
        assert BoundaryElement.from_json(e.to_json()) == e
    assert unit(2, 1).to_json() == {"n": 2, "k": 1, "nu": ["x1", "x2"], "w": ["1"]}
