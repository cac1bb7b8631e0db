import random
from collections import Counter

import pytest

from fgb import boundary as bd
from fgb.errors import BudgetExceeded, IllegalSymbol
from fgb.presentations import (GenSymbol, RelationInstance, abelianized_relation_matrix,
                               enumerate_generators, enumerate_relations, evaluate, h1,
                               q2_symbol_level_extras, symbol_realize, verify_all, verify_mccool_R,
                               verify_relation)
from fgb.snf import AbelianGroupShape
from fgb.words import Rank

GRID = [(0, 2), (0, 3), (1, 1), (2, 1), (2, 2), (3, 1)]


def kinds(gens):
    return Counter(g.kind for g in gens)


@pytest.mark.parametrize("n,k", GRID + [(3, 0), (1, 3)])
def test_generator_counts(n, k):
    c = kinds(enumerate_generators(n, k, "conj"))
    assert c["P"] == n * (n - 1) // 2 and c["I"] == n
    assert c["X"] == 2 * n * (n + k - 1) and c["Y"] == k * (n + k - 1)
    b = enumerate_generators(n, k, "bdy")
    assert len(b) == sum(c.values()) + k and len(set(b)) == len(b)


def test_generator_examples():
    assert len(enumerate_generators(3, 1)) == 27
    assert [str(g) for g in enumerate_generators(0, 2)] == ["(y1^±;y2)", "(y2^±;y1)"]
    assert len(enumerate_generators(0, 2, "bdy")) == 4


def test_symbol_checks():
    with pytest.raises(IllegalSymbol):
        GenSymbol.XMove(1, 1, "x", 1)
    with pytest.raises(IllegalSymbol):
        GenSymbol.YMove(2, "y", 2)
    with pytest.raises(IllegalSymbol):
        symbol_realize(GenSymbol.YSelf(1), 1, 1, "conj")
    with pytest.raises(IllegalSymbol):
        symbol_realize(GenSymbol.P(1, 3), 2, 1)


def test_symbol_realize_examples():
    assert symbol_realize(GenSymbol.YSelf(1), 2, 2, "bdy") == bd.central_inclusion(2, [1, 0])
    e = symbol_realize(GenSymbol.YMove(1, "x", 1), 1, 1, "bdy")
    assert e.w == ((1,),) and e.nu == ((1,),)
    p = symbol_realize(GenSymbol.P(1, 2), 2, 1, "bdy")
    assert p.nu == ((2,), (1,)) and p.w == ((),)


@pytest.mark.parametrize("n,k", GRID)
def test_bdy_projects_to_conj(n, k):
    for g in enumerate_generators(n, k, "conj"):
        assert bd.alpha(symbol_realize(g, n, k, "bdy")) == symbol_realize(g, n, k, "conj")
        assert bd.is_ank_member(symbol_realize(g, n, k, "conj"))
    shared = {r for r in enumerate_relations(n, k, "conj") if r.schema != "Q5"}
    for r in list(shared)[:80]:
        lhs = evaluate(r.word(), n, k, "bdy")
        assert bd.alpha(lhs) == evaluate(r.word(), n, k, "conj")


def test_relation_examples():
    # at k = 2 no Z-schema has enough distinct indices: A_0^2 is free on its two generators
    assert enumerate_relations(0, 2) == []
    z3 = enumerate_relations(0, 3)
    assert {r.schema for r in z3} == {"Z1", "Z3"}
    assert all(verify_relation(r, 0, 3) for r in z3)
    assert len([r for r in enumerate_relations(1, 1) if r.schema == "Q5"]) == 2
    assert not [r for r in enumerate_relations(0, 2, "bdy") if r.schema == "Q5'"]


def test_deterministic_and_duplicate_free():
    a = enumerate_relations(2, 2, "bdy")
    b = enumerate_relations(2, 2, "bdy")
    assert a == b
    assert len({(r.lhs, r.rhs) for r in a}) == len(a)


def test_q5_prime_is_central_minus_e():
    rels = enumerate_relations(1, 1, "bdy", ["Q5'"])
    assert rels
    for r in rels:
        lhs = evaluate(r.lhs, 1, 1, "bdy")
        assert lhs == bd.central_inclusion(1, [-1])
        assert bd.kernel_check(lhs) == (-1,)
        assert verify_relation(r, 1, 1, "bdy")


def test_corrupted_relation_fails_with_witness():
    a = (GenSymbol.XMove(1, 1, "x", 2), 1)
    b = (GenSymbol.XMove(2, 1, "x", 1), 1)
    bad = RelationInstance("Q2", (a, b), (b, a))
    res = verify_relation(bad, 2, 1)
    assert not res and res.witness in ("x1", "x2")
    res = verify_relation(bad, 2, 1, "bdy")
    assert not res and res.witness is not None


def test_q2_letter_level_reading():
    assert q2_symbol_level_extras(1, 1) == []
    for n, k, count in [(2, 1, 4), (1, 2, 7), (2, 2, 21)]:
        extras = q2_symbol_level_extras(n, k)
        assert len(extras) == count
        assert not any(verify_relation(r, n, k) for r in extras)


@pytest.mark.parametrize("n,k", GRID)
@pytest.mark.parametrize("group", ["conj", "bdy"])
def test_soundness(n, k, group):
    rep = verify_all(n, k, group)
    assert rep or (n, k, group) == (0, 2, "conj")
    for schema, entry in rep.items():
        assert entry["passed"] == entry["count"], (schema, entry["failures"][:1])
    if group == "bdy" and n:
        assert "Q5'" in rep and "Q5" not in rep
        assert "Q2'" in rep


def test_schema_filter():
    rels = enumerate_relations(2, 1, schemas=["Q5"])
    assert rels and {r.schema for r in rels} == {"Q5"}


def test_enumeration_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_relations(3, 3)


@pytest.mark.parametrize("n,k", [(2, 0), (1, 1), (2, 1)])
def test_mccool_R(n, k):
    rep = verify_mccool_R(n, k)
    for schema, entry in rep.items():
        assert entry["passed"] == entry["count"], (schema, entry["failures"][:1])
    if n == 2 and k == 0:
        assert {s: e["count"] for s, e in rep.items()} == {
            "R1": 16, "R2": 32, "R3": 4, "R4": 8, "R5": 8, "R6": 128, "R7": 6, "R8": 32, "R9": 8, "R10": 8}


def test_abelianized_rows():
    rows, gens = abelianized_relation_matrix(2, 1)
    rels = enumerate_relations(2, 1)
    for r, row in zip(rels, rows):
        if r.schema == "Q2":
            assert not any(row)
    rows, gens = abelianized_relation_matrix(2, 1, "bdy")
    col = {g: c for c, g in enumerate(gens)}
    s = col[GenSymbol.YSelf(1)]
    for r, row in zip(enumerate_relations(2, 1, "bdy"), rows):
        if r.schema == "Q5'":
            assert row[s] == 1 and any(row[c] for c in range(len(gens)) if c != s)


@pytest.mark.parametrize("n,k,group,shape", [
    (3, 1, "conj", (0, (2,))), (3, 1, "bdy", (0, (2,))), (3, 2, "conj", (0, (2,))),
    (3, 2, "bdy", (0, (2,))), (0, 2, "conj", (2, ())), (0, 3, "conj", (6, ())),
    (3, 0, "conj", (0, (2,))), (2, 0, "conj", (0, (2, 2))), (0, 2, "bdy", (4, ())),
])
def test_h1(n, k, group, shape):
    assert h1(n, k, group) == AbelianGroupShape(*shape)


def test_h1_shuffle_invariant():
    rows, gens = abelianized_relation_matrix(2, 1, "bdy")
    rng = random.Random(8)
    base = AbelianGroupShape.cokernel(rows, len(gens))
    for _ in range(3):
        perm = list(range(len(gens)))
        rng.shuffle(perm)
        shuffled = [[row[p] for p in perm] for row in rows]
        rng.shuffle(shuffled)
        assert AbelianGroupShape.cokernel(shuffled, len(gens)) == base
