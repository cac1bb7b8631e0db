"""Presentations of A_n^k and A_{n,k}: symbols, relation instances, soundness checks, H_1.

A relation word is a tuple of ``(GenSymbol, exponent)`` pairs read left to right,
so ``[(a, 1), (b, -1)]`` evaluates to ``compose(realize(a), realize(b)^-1)``.

Two target groups are supported:

* ``"conj"``: A_n^k, symbols realized as automorphisms of F_{n+k};
* ``"bdy"``:  A_{n,k}, symbols realized as :class:`~fgb.boundary.BoundaryElement`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import boundary as bd
from .endos import (Endomorphism, ShortMove, _apply_images, compose, identity,
                    realize, signed_permutation, whitehead_type2)
from .errors import BudgetExceeded, EvaluationRankMismatch, IllegalSymbol
from .snf import AbelianGroupShape, smith_normal_form
from .words import Rank

__all__ = [
    "GenSymbol", "RelationInstance", "VerifyResult", "GROUPS", "SCHEMAS",
    "enumerate_generators", "enumerate_relations", "symbol_realize",
    "verify_relation", "verify_all", "verify_mccool_R", "abelianized_relation_matrix",
    "h1", "evaluate", "AbelianGroupShape", "smith_normal_form", "ENUMERATION_CAP",
    "q2_symbol_level_extras", "random_word", "random_element",
]

GROUPS = ("conj", "bdy")
SCHEMAS = ("Q1", "Q2", "Q3.1", "Q3.2", "Q4.1", "Q4.2", "Q5", "Q2'", "Q5'", "Z1", "Z2", "Z3")
ENUMERATION_CAP = 5          # n + k above this needs allow_large=True
MCCOOL_SET_CAP = 3           # |A| bound for input Whitehead sets inside Q1


# -- symbols --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GenSymbol:
    """One presentation generator.

    ``kind`` is one of ``P``, ``I``, ``X``, ``Y``, ``S``:

    * ``P(i, j)`` with i < j, ``I(i)``;
    * ``X``: ``(x_i^eps; z)``; ``Y``: ``(y_i^±; z)``; the target ``z`` is ``(zk, zi)``
      with ``zk`` in ``"xy"`` and is always a positive generator;
    * ``S``: ``(y_i^±; y_i)``, only in A_{n,k}.
    """

    kind: str
    i: int
    j: int = 0
    eps: int = 0
    zk: str = ""
    zi: int = 0

    @staticmethod
    def P(i: int, j: int) -> "GenSymbol":
        if i == j:
            raise IllegalSymbol("P_{i,i} is not a generator")
        return GenSymbol("P", min(i, j), max(i, j))

    @staticmethod
    def I(i: int) -> "GenSymbol":
        return GenSymbol("I", i)

    @staticmethod
    def XMove(i: int, eps: int, zk: str, zi: int) -> "GenSymbol":
        if zk == "x" and zi == i:
            raise IllegalSymbol(f"(x{i};x{i}) is not a generator")
        if eps not in (1, -1):
            raise IllegalSymbol(f"bad exponent {eps}")
        return GenSymbol("X", i, eps=eps, zk=zk, zi=zi)

    @staticmethod
    def YMove(i: int, zk: str, zi: int) -> "GenSymbol":
        if zk == "y" and zi == i:
            raise IllegalSymbol(f"(y{i}^±;y{i}) is the YSelf symbol")
        return GenSymbol("Y", i, zk=zk, zi=zi)

    @staticmethod
    def YSelf(i: int) -> "GenSymbol":
        return GenSymbol("S", i)

    def target(self, rank: Rank) -> int:
        return rank.gen(self.zk, self.zi)

    def check(self, n: int, k: int, group: str) -> None:
        def bad():
            raise IllegalSymbol(f"{self} is not a generator at (n,k)=({n},{k}), group {group}")
        if self.kind in "PIX" and not 1 <= self.i <= n:
            bad()
        if self.kind == "P" and not (self.i < self.j <= n):
            bad()
        if self.kind in "YS" and not 1 <= self.i <= k:
            bad()
        if self.kind in "XY" and not 1 <= self.zi <= (n if self.zk == "x" else k):
            bad()
        if self.kind == "S" and group != "bdy":
            bad()

    def __str__(self):
        if self.kind == "P":
            return f"P{self.i},{self.j}"
        if self.kind == "I":
            return f"I{self.i}"
        z = f"{self.zk}{self.zi}"
        if self.kind == "X":
            return f"(x{self.i}{'' if self.eps > 0 else '^-1'};{z})"
        if self.kind == "Y":
            return f"(y{self.i}^±;{z})"
        return f"(y{self.i}^±;y{self.i})"


Letter = tuple  # (GenSymbol, ±1)


def _fmt_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return "".join(str(s) + ("" if e > 0 else "^-1") for s, e in word)


@dataclass(frozen=True)
class RelationInstance:
    schema: str
    lhs: tuple
    rhs: tuple
    params: tuple = ()

    def word(self) -> tuple:
        """``lhs · rhs^-1``."""
        return self.lhs + tuple((s, -e) for s, e in reversed(self.rhs))

    def symbols(self) -> set[GenSymbol]:
        return {s for s, _ in self.lhs + self.rhs}

    def __str__(self):
        return f"{self.schema}: {_fmt_word(self.lhs)} = {_fmt_word(self.rhs)}"

    def to_json(self) -> dict:
        return {"schema": self.schema, "relation": f"{_fmt_word(self.lhs)} = {_fmt_word(self.rhs)}",
                "params": {k: v for k, v in self.params}}


# -- generators -----------------------------------------------------------------------

def _targets(n: int, k: int):
    return [("x", j) for j in range(1, n + 1)] + [("y", j) for j in range(1, k + 1)]


def enumerate_generators(n: int, k: int, group: str = "conj") -> list[GenSymbol]:
    _check_group(group)
    out = [GenSymbol.P(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
    out += [GenSymbol.I(i) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for eps in (1, -1):
            out += [GenSymbol.XMove(i, eps, zk, zi) for zk, zi in _targets(n, k)
                    if (zk, zi) != ("x", i)]
    for i in range(1, k + 1):
        out += [GenSymbol.YMove(i, zk, zi) for zk, zi in _targets(n, k) if (zk, zi) != ("y", i)]
    if group == "bdy":
        out += [GenSymbol.YSelf(i) for i in range(1, k + 1)]
    return out


def _check_group(group: str) -> None:
    if group not in GROUPS:
        raise ValueError(f"group must be one of {GROUPS}, got {group!r}")


# -- realization ----------------------------------------------------------------------

def _endo(s: GenSymbol, rank: Rank) -> Endomorphism:
    n = rank.n
    if s.kind == "P":
        perm = list(rank.generators())
        perm[s.i - 1], perm[s.j - 1] = s.j, s.i
        return signed_permutation(rank, perm)
    if s.kind == "I":
        perm = list(rank.generators())
        perm[s.i - 1] = -s.i
        return signed_permutation(rank, perm)
    if s.kind == "X":
        return realize(ShortMove(s.i, s.eps, s.target(rank)), rank)
    if s.kind == "Y":
        return realize(ShortMove(n + s.i, 0, s.target(rank)), rank)
    return identity(rank)


def symbol_realize(s: GenSymbol, n: int, k: int, group: str = "conj"):
    """Endomorphism of F_{n+k} (``conj``) or BoundaryElement (``bdy``)."""
    _check_group(group)
    s.check(n, k, group)
    rank = Rank(n, k)
    if group == "conj":
        return _endo(s, rank)
    if s.kind == "S":
        z = [0] * k
        z[s.i - 1] = 1
        return bd.central_inclusion(n, z)
    e = _endo(s, rank)
    w = [()] * k
    if s.kind == "Y":
        w[s.i - 1] = (s.target(rank),)
    return bd.BoundaryElement(n, k, e.images[:n], tuple(w))


class _Realizer:
    """Caches symbol realizations and their inverses for one (n, k, group)."""

    def __init__(self, n: int, k: int, group: str):
        self.n, self.k, self.group = n, k, group
        self.cache: dict = {}

    def get(self, s: GenSymbol, e: int):
        key = (s, e)
        if key not in self.cache:
            base = symbol_realize(s, self.n, self.k, self.group)
            if e < 0:
                base = _inverse(base)
            self.cache[key] = base
        return self.cache[key]

    def unit(self):
        if self.group == "conj":
            return identity(Rank(self.n, self.k))
        return bd.unit(self.n, self.k)


def _inverse(x):
    if isinstance(x, bd.BoundaryElement):
        return bd.inverse(x)
    if x.rank.size and all(len(img) == 1 for img in x.images):
        inv = [()] * x.rank.size
        for g, img in enumerate(x.images, 1):
            a = img[0]
            inv[abs(a) - 1] = (g,) if a > 0 else (-g,)
        return Endomorphism(x.rank, tuple(inv))
    from .endos import is_automorphism
    return is_automorphism(x)


def evaluate(word: Sequence[Letter], n: int, k: int, group: str = "conj", _r: _Realizer | None = None):
    """Product of the realized symbols, left to right."""
    r = _r or _Realizer(n, k, group)
    acc = r.unit()
    for s, e in word:
        x = r.get(s, e)
        if group == "conj":
            if x.rank != acc.rank:
                raise EvaluationRankMismatch(f"{x.rank} vs {acc.rank}")
            acc = Endomorphism(acc.rank, tuple(_apply_images(x.images, img) for img in acc.images))
        else:
            if (x.n, x.k) != (acc.n, acc.k):
                raise EvaluationRankMismatch("tuple ranks differ")
            acc = bd.multiply(acc, x)
    return acc


# -- relation enumeration -------------------------------------------------------------

# A "source" is the left slot of a move symbol: ("x", j, delta) or ("y", j).

def _sources(n: int, k: int):
    out = [("x", j, d) for j in range(1, n + 1) for d in (1, -1)]
    return out + [("y", j) for j in range(1, k + 1)]


def _src_base(src) -> tuple[str, int]:
    return (src[0], src[1])


def _src_letters(src, n: int) -> set[int]:
    if src[0] == "x":
        return {src[1] * src[2]}
    g = n + src[1]
    return {g, -g}


def _mv(src, zk: str, zi: int, eta: int = 1) -> Letter | None:
    """The symbol ``(src; z^eta)`` as a generator or inverse, None if it is not one."""
    if (zk, zi) == _src_base(src):
        return None
    if src[0] == "x":
        return (GenSymbol.XMove(src[1], src[2], zk, zi), eta)
    return (GenSymbol.YMove(src[1], zk, zi), eta)


def _zgen(n: int, zk: str, zi: int) -> int:
    return zi if zk == "x" else n + zi


def _rel(out: list, schema: str, lhs, rhs, **params) -> None:
    if any(x is None for x in lhs) or any(x is None for x in rhs):
        return
    out.append(RelationInstance(schema, tuple(lhs), tuple(rhs), tuple(sorted(params.items()))))


def _q2(n: int, k: int) -> tuple[list[RelationInstance], list[RelationInstance]]:
    """Q2 instances, plus those admitted only by a symbol-level side-condition reading."""
    out, symbol_only = [], []
    srcs = _sources(n, k)
    moves = [(s, z) for s in srcs for z in _targets(n, k) if z != _src_base(s)]
    for (w1, z1), (w2, z2) in itertools.combinations(moves, 2):
        if w1 == w2:
            continue
        letters = _src_letters(w1, n) | _src_letters(w2, n)
        blocked = any({_zgen(n, *z), -_zgen(n, *z)} & letters for z in (z1, z2))
        a, b = _mv(w1, *z1), _mv(w2, *z2)
        target = symbol_only if blocked else out
        if blocked:
            # symbol-level reading only blocks z equal to an x-source letter
            sym = {(w[0], w[1]) for w in (w1, w2) if w[0] == "x"}
            if any(z in sym for z in (z1, z2)):
                continue
        _rel(target, "Q2", [a, b], [b, a], w1=str(w1), z1=str(z1), w2=str(w2), z2=str(z2))
    return out, symbol_only


def _q3(n: int, k: int) -> list[RelationInstance]:
    out = []
    for i in range(1, k + 1):
        for j, l in itertools.permutations(range(1, n + 1), 2):
            P = (GenSymbol.P(j, l), 1)
            _rel(out, "Q3.1", [(GenSymbol.YMove(i, "x", j), 1), P],
                 [P, (GenSymbol.YMove(i, "x", l), 1)], i=i, j=j, l=l)
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            I = (GenSymbol.I(j), 1)
            _rel(out, "Q3.2", [(GenSymbol.YMove(i, "x", j), 1), I],
                 [I, (GenSymbol.YMove(i, "x", j), -1)], i=i, j=j)
    return out


def _q4(n: int, k: int) -> list[RelationInstance]:
    out = []
    for w in _sources(n, k):
        for j in range(1, n + 1):
            for eta in (1, -1):
                xj = ("x", j, eta)
                for z in _targets(n, k):
                    if z == ("x", j) or z == _src_base(w):
                        continue
                    _rel(out, "Q4.1",
                         [_mv(w, "x", j, eta), _mv(xj, *z), _mv(w, "x", j, -eta)],
                         [_mv(w, *z), _mv(xj, *z)], w=str(w), j=j, eta=eta, z=str(z))
    for i in range(1, k + 1):
        yi = ("y", i)
        for z in _targets(n, k):
            if z == ("y", i):
                continue
            for eps in (1, -1):
                for w in _sources(n, k):
                    if _src_base(w) in (("y", i), z):
                        continue
                    _rel(out, "Q4.2",
                         [_mv(yi, *z, eps), _mv(w, "y", i), _mv(yi, *z, -eps)],
                         [_mv(w, *z, -eps), _mv(w, "y", i), _mv(w, *z, eps)],
                         i=i, z=str(z), eps=eps, w=str(w))
    return out


def _q5(n: int, k: int, lifted: bool) -> list[RelationInstance]:
    out = []
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            for eta in (1, -1):
                yx = lambda e: (GenSymbol.YMove(i, "x", j), e)
                xy = lambda d: (GenSymbol.XMove(j, d, "y", i), 1)
                if not lifted:
                    _rel(out, "Q5", [yx(eta), xy(-eta)],
                         [(GenSymbol.XMove(j, eta, "y", i), -1), yx(eta)], i=i, j=j, eta=eta)
                else:
                    _rel(out, "Q5'", [yx(eta), xy(-eta), yx(-eta), xy(eta)],
                         [(GenSymbol.YSelf(i), -1)], i=i, j=j, eta=eta)
    return out


def _z(k: int) -> list[RelationInstance]:
    out = []
    Y = lambda a, b: (GenSymbol.YMove(a, "y", b), 1)
    idx = range(1, k + 1)
    for i, l, j in itertools.permutations(idx, 3):
        if i < l:
            _rel(out, "Z1", [Y(i, j), Y(l, j)], [Y(l, j), Y(i, j)], i=i, l=l, j=j)
    for i, j, l, m in itertools.permutations(idx, 4):
        if (i, j) < (l, m):
            _rel(out, "Z2", [Y(i, j), Y(l, m)], [Y(l, m), Y(i, j)], i=i, j=j, l=l, m=m)
    for i, j, l in itertools.permutations(idx, 3):
        _rel(out, "Z3", [Y(i, j), Y(l, j), Y(i, l)], [Y(i, l), Y(i, j), Y(l, j)], i=i, j=j, l=l)
    return out


def _q2_prime(n: int, k: int) -> list[RelationInstance]:
    out = []
    others = [g for g in enumerate_generators(n, k, "conj")]
    for i in range(1, k + 1):
        S = (GenSymbol.YSelf(i), 1)
        for g in others:
            a = (g, 1)
            _rel(out, "Q2'", [S, a], [a, S], i=i, a=str(g))
        for l in range(i + 1, k + 1):
            T = (GenSymbol.YSelf(l), 1)
            _rel(out, "Q2'", [S, T], [T, S], i=i, a=str(T[0]))
    return out


# -- Q1: hyperoctahedral relations plus McCool relations over L_n ----------------------

def _omega_relations(n: int) -> list[RelationInstance]:
    out = []
    P = lambda i, j: (GenSymbol.P(i, j), 1)
    I = lambda i: (GenSymbol.I(i), 1)
    idx = range(1, n + 1)
    for i, j in itertools.combinations(idx, 2):
        _rel(out, "Q1", [P(i, j), P(i, j)], [], omega="P^2", i=i, j=j)
    for i in idx:
        _rel(out, "Q1", [I(i), I(i)], [], omega="I^2", i=i)
    for i, j in itertools.combinations(idx, 2):
        _rel(out, "Q1", [I(i), I(j)], [I(j), I(i)], omega="II", i=i, j=j)
    for i, j in itertools.permutations(idx, 2):
        _rel(out, "Q1", [P(i, j), I(i), P(i, j)], [I(j)], omega="PIP", i=i, j=j)
    for i, j in itertools.combinations(idx, 2):
        for l in idx:
            if l not in (i, j):
                _rel(out, "Q1", [P(i, j), I(l)], [I(l), P(i, j)], omega="PI", i=i, j=j, l=l)
    for i, j, l in itertools.permutations(idx, 3):
        _rel(out, "Q1", [P(i, j), P(j, l), P(i, j)], [P(i, l)], omega="PPP", i=i, j=j, l=l)
    for (i, j), (l, m) in itertools.combinations(itertools.combinations(idx, 2), 2):
        if len({i, j, l, m}) == 4:
            _rel(out, "Q1", [P(i, j), P(l, m)], [P(l, m), P(i, j)], omega="PP", i=i, j=j, l=l, m=m)
    return out


@dataclass(frozen=True)
class _W:
    """A Whitehead automorphism item: type II ``(A; a)`` or type I letter map ``perm``."""

    A: frozenset = frozenset()
    a: int = 0
    perm: tuple = ()

    def __str__(self):
        if self.perm:
            return "T" + str(list(self.perm))
        return f"({sorted(self.A, key=lambda z: (abs(z), z < 0))};{self.a})"


def _perm_letter(perm: tuple, z: int) -> int:
    img = perm[abs(z) - 1]
    return img if z > 0 else -img


def _mccool_instances(letters: list[int], rank_size: int, type2: list[_W], type1: list[_W], ok):
    """Yield ``(schema, lhs, rhs, params)`` for R1-R10 built from the given inputs.

    ``lhs``/``rhs`` are lists of ``(_W, exponent)``; ``ok`` filters the auxiliary
    Whitehead automorphisms that the relation introduces.
    """
    L = frozenset(letters)

    def W(A, a):
        return _W(frozenset(A), a)

    for x in type2:
        A, a = x.A, x.a
        y = W(A - {a} | {-a}, -a)
        if ok(y):
            yield "R1", [(x, -1)], [(y, 1)], {}
        lhs_inner = W(L - {-a}, a)
        other = W(L - A, -a)
        if ok(lhs_inner) and ok(other):
            yield "R8", [(x, 1)], [(lhs_inner, 1), (other, 1)], {"order": 1}
            yield "R8", [(x, 1)], [(other, 1), (lhs_inner, 1)], {"order": 2}
        for b in letters:
            if b in A or -b in A:
                continue
            c1, c2 = W(L - {b}, -b), W(L - {-b}, b)
            if ok(c1) and ok(c2):
                yield "R9", [(c1, 1), (x, 1), (c2, 1)], [(x, 1)], {"b": b}
        for b in letters:
            if b == a or b not in A or -b in A:
                continue
            c1, c2, r = W(L - {b}, -b), W(L - {-b}, b), W(L - A, -a)
            if ok(c1) and ok(c2) and ok(r):
                yield "R10", [(c1, 1), (x, 1), (c2, 1)], [(r, 1)], {"b": b}
            # R5
            B1 = W(A - {a} | {-a}, b)
            B2 = W(A - {b} | {-b}, a)
            perm = list(range(1, rank_size + 1))
            for src, dst in ((a, -b), (b, a)):
                perm[abs(src) - 1] = dst if src > 0 else -dst
            T = _W(perm=tuple(perm))
            if ok(B1) and ok(B2) and ok(T):
                yield "R5", [(x, 1), (B1, 1)], [(T, 1), (B2, 1)], {"b": b}
        for T in type1:
            AT = W({_perm_letter(T.perm, z) for z in A}, _perm_letter(T.perm, a))
            if ok(AT):
                yield "R6", [(T, -1), (x, 1), (T, 1)], [(AT, 1)], {"T": str(T)}
    for x, y in itertools.product(type2, repeat=2):
        A, a, B, b = x.A, x.a, y.A, y.a
        if a == b and A & B == {a} and x != y:
            u = W(A | B, a)
            if ok(u):
                yield "R2", [(x, 1), (y, 1)], [(u, 1)], {}
        if not A & B and -a not in B and -b not in A and x < y:
            yield "R3", [(x, 1), (y, 1)], [(y, 1), (x, 1)], {}
        if not A & B and -a not in B and -b in A:
            u = W(A | B - {b}, a)
            if ok(u):
                yield "R4", [(y, -1), (x, 1), (y, 1)], [(u, 1)], {}


_W.__lt__ = lambda s, o: (sorted(s.A), s.a, s.perm) < (sorted(o.A), o.a, o.perm)


def _type2_sets(letters: list[int], y_letters: list[int], cap: int | None):
    """Loop-type ``(X ⊔ y-pairs ⊔ {a}; a)`` with X drawn from the x letters."""
    xs = [z for z in letters if z not in y_letters]
    ys = sorted({abs(z) for z in y_letters})
    out = []
    for a in letters:
        pool_x = [z for z in xs if abs(z) != abs(a)]
        pool_y = [g for g in ys if g != abs(a)]
        for rx in range(len(pool_x) + 1):
            for X in itertools.combinations(pool_x, rx):
                for ry in range(len(pool_y) + 1):
                    for Yp in itertools.combinations(pool_y, ry):
                        A = frozenset(X) | {a} | {s * g for g in Yp for s in (1, -1)}
                        if cap is not None and len(A) > cap:
                            continue
                        out.append(_W(A, a))
    return out


def _is_loop(item: _W, n: int, ys: set[int]) -> bool:
    if item.perm:
        return all(item.perm[g - 1] == g for g in ys)
    rest = item.A - {item.a}
    return all((-z in rest) for z in rest if abs(z) in ys)


def _signed_perms(n: int, size: int) -> list[_W]:
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            perm = tuple(s * g for s, g in zip(signs, p)) + tuple(range(n + 1, size + 1))
            out.append(_W(perm=perm))
    return out


def _w_endo(item: _W, rank: Rank) -> Endomorphism:
    if item.perm:
        return signed_permutation(rank, item.perm)
    return whitehead_type2(rank, item.A, item.a)


def _decompose(item: _W, n: int) -> list[Letter]:
    """Q1 symbol word realizing a Whitehead automorphism on the x letters."""
    if item.perm:
        perm = item.perm[:n]
        word = [(GenSymbol.I(g), 1) for g in range(1, n + 1) if perm[g - 1] < 0]
        pi = [abs(p) for p in perm]
        seen = set()
        for start in range(1, n + 1):
            if start in seen:
                continue
            cyc, c = [], start
            while c not in seen:
                seen.add(c)
                cyc.append(c)
                c = pi[c - 1]
            word += [(GenSymbol.P(cyc[0], c2), 1) for c2 in cyc[1:]]
        return word
    a = item.a
    target = ("x", abs(a))
    eta = 1 if a > 0 else -1
    word = []
    for g in range(1, n + 1):
        if g == abs(a):
            continue
        for d in (1, -1):
            if d * g in item.A:
                word.append((GenSymbol.XMove(g, d, *target), eta))
    return word


def _q1(n: int, k: int) -> list[RelationInstance]:
    out = _omega_relations(n)
    if n < 2:
        return out
    letters = [s * g for g in range(1, n + 1) for s in (1, -1)]
    type2 = [w for w in _type2_sets(letters, [], MCCOOL_SET_CAP) if len(w.A) > 1]
    type1 = [_W(perm=tuple(_transposition(n, i, j)))
             for i, j in itertools.combinations(range(1, n + 1), 2)]
    type1 += [_W(perm=tuple(-g if g == i else g for g in range(1, n + 1))) for i in range(1, n + 1)]
    for schema, lhs, rhs, params in _mccool_instances(letters, n, type2, type1, lambda w: True):
        dl = [s for it, e in lhs for s in _power(_decompose(it, n), e)]
        dr = [s for it, e in rhs for s in _power(_decompose(it, n), e)]
        _rel(out, "Q1", dl, dr, mccool=schema, w_lhs=" ".join(f"{it}^{e}" for it, e in lhs),
             w_rhs=" ".join(f"{it}^{e}" for it, e in rhs), **{k2: str(v) for k2, v in params.items()})
    return out


def _transposition(n: int, i: int, j: int) -> list[int]:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return p


def _power(word: list[Letter], e: int) -> list[Letter]:
    if e > 0:
        return list(word)
    return [(s, -x) for s, x in reversed(word)]


def _dedup(rels: Iterable[RelationInstance]) -> list[RelationInstance]:
    seen, out = set(), []
    for r in rels:
        key = (r.schema, r.lhs, r.rhs)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def enumerate_relations(n: int, k: int, group: str = "conj", schemas: Sequence[str] | None = None,
                        allow_large: bool = False) -> list[RelationInstance]:
    """All relation instances of the presentation at ``(n, k)``.

    For ``n = 0`` the Q-list is replaced by Z1-Z3.  For ``group="bdy"`` the
    Q5 schema is replaced by Q5' and the commutation schema Q2' is added.
    """
    _check_group(group)
    if n + k > ENUMERATION_CAP and not allow_large:
        raise BudgetExceeded(f"n + k = {n + k} exceeds the enumeration cap {ENUMERATION_CAP}")
    want = set(schemas) if schemas else None
    use = lambda s: want is None or s in want
    out: list[RelationInstance] = []
    if n == 0:
        out += [r for r in _z(k) if use(r.schema)]
    else:
        if use("Q1"):
            out += _q1(n, k)
        if use("Q2"):
            out += _q2(n, k)[0]
        out += [r for r in _q3(n, k) if use(r.schema)]
        out += [r for r in _q4(n, k) if use(r.schema)]
        if group == "conj" and use("Q5"):
            out += _q5(n, k, lifted=False)
        if group == "bdy" and use("Q5'"):
            out += _q5(n, k, lifted=True)
    if group == "bdy" and use("Q2'"):
        out += _q2_prime(n, k)
    out = _dedup(out)
    order = {s: i for i, s in enumerate(SCHEMAS)}
    return sorted(out, key=lambda r: (order[r.schema], r.params, r.lhs, r.rhs))


def q2_symbol_level_extras(n: int, k: int) -> list[RelationInstance]:
    """Q2 instances that only a symbol-level side-condition reading would admit."""
    return _q2(n, k)[1]


# -- verification ---------------------------------------------------------------------

@dataclass
class VerifyResult:
    ok: bool
    relation: RelationInstance
    witness: str | None = None
    lhs_value: str | None = None
    rhs_value: str | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        d = self.relation.to_json()
        d.update(ok=self.ok, witness=self.witness, lhs_value=self.lhs_value, rhs_value=self.rhs_value)
        return d


def _diff(a, b, n: int, k: int) -> str | None:
    rank = Rank(n, k)
    if isinstance(a, Endomorphism):
        for g in rank.generators():
            if a.images[g - 1] != b.images[g - 1]:
                return rank.name(g)
        return None
    for i in range(n):
        if a.nu[i] != b.nu[i]:
            return f"x{i + 1}"
    for j in range(k):
        if a.w[j] != b.w[j]:
            return f"w{j + 1}"
    return None


def verify_relation(r: RelationInstance, n: int, k: int, group: str = "conj",
                    _r: _Realizer | None = None) -> VerifyResult:
    """Evaluate both sides and compare; on failure name the first differing generator."""
    _check_group(group)
    for s in r.symbols():
        s.check(n, k, group)
    realizer = _r or _Realizer(n, k, group)
    lv = evaluate(r.lhs, n, k, group, realizer)
    rv = evaluate(r.rhs, n, k, group, realizer)
    w = _diff(lv, rv, n, k)
    if w is None:
        return VerifyResult(True, r)
    return VerifyResult(False, r, w, str(lv), str(rv))


def verify_all(n: int, k: int, group: str = "conj", schemas: Sequence[str] | None = None,
               allow_large: bool = False) -> dict:
    """Report ``{schema: {"count", "passed", "failures"}}`` sorted by schema."""
    realizer = _Realizer(n, k, group)
    report: dict[str, dict] = {}
    for r in enumerate_relations(n, k, group, schemas, allow_large):
        res = verify_relation(r, n, k, group, realizer)
        entry = report.setdefault(r.schema, {"count": 0, "passed": 0, "failures": []})
        entry["count"] += 1
        if res.ok:
            entry["passed"] += 1
        else:
            entry["failures"].append(res.to_json())
    return dict(sorted(report.items(), key=lambda kv: SCHEMAS.index(kv[0])))


def verify_mccool_R(n: int, k: int) -> dict:
    """Check R1-R10 on loop-type Whitehead automorphisms of F_{n+k} directly.

    Returns ``{schema: {"count", "passed", "failures"}}``; failures are strings.
    """
    rank = Rank(n, k)
    ys = set(range(n + 1, n + k + 1))
    letters = [s * g for g in rank.generators() for s in (1, -1)]
    y_letters = [z for z in letters if abs(z) in ys]
    type2 = _type2_sets(letters, y_letters, None)
    type1 = _signed_perms(n, rank.size)
    ok = lambda w: _is_loop(w, n, ys)
    cache: dict = {}

    def ev(word):
        acc = identity(rank)
        for it, e in word:
            key = (it, e)
            if key not in cache:
                x = _w_endo(it, rank)
                cache[key] = x if e > 0 else _inverse(x)
            acc = compose(acc, cache[key])
        return acc

    report: dict[str, dict] = {}
    for schema, lhs, rhs, params in _mccool_instances(letters, rank.size, type2, type1, ok):
        entry = report.setdefault(schema, {"count": 0, "passed": 0, "failures": []})
        entry["count"] += 1
        if ev(lhs) == ev(rhs):
            entry["passed"] += 1
        else:
            entry["failures"].append(f"{[f'{i}^{e}' for i, e in lhs]} = {[f'{i}^{e}' for i, e in rhs]}")
    # R7: the hyperoctahedral relations among the type I elements
    r7 = {"count": 0, "passed": 0, "failures": []}
    for r in _omega_relations(n):
        r7["count"] += 1
        if verify_relation(r, n, k, "conj").ok:
            r7["passed"] += 1
        else:
            r7["failures"].append(str(r))
    report["R7"] = r7
    return dict(sorted(report.items(), key=lambda kv: int(kv[0][1:])))


# -- abelianization and H_1 ------------------------------------------------------------

def abelianized_relation_matrix(n: int, k: int, group: str = "conj",
                                relations: Sequence[RelationInstance] | None = None,
                                allow_large: bool = False) -> tuple[list[list[int]], list[GenSymbol]]:
    """Rows are exponent sums of each generator in ``lhs · rhs^-1``."""
    gens = enumerate_generators(n, k, group)
    col = {g: c for c, g in enumerate(gens)}
    if relations is None:
        relations = enumerate_relations(n, k, group, allow_large=allow_large)
    rows = []
    for r in relations:
        row = [0] * len(gens)
        for s, e in r.word():
            row[col[s]] += e
        rows.append(row)
    return rows, gens


def h1(n: int, k: int, group: str = "conj", allow_large: bool = False) -> AbelianGroupShape:
    rows, gens = abelianized_relation_matrix(n, k, group, allow_large=allow_large)
    uniq = sorted({tuple(r) for r in rows if any(r)})
    return AbelianGroupShape.cokernel([list(r) for r in uniq], len(gens))


# -- seeded random elements -----------------------------------------------------------

def random_word(n: int, k: int, rng, length: int = 6, group: str = "conj") -> list[Letter]:
    """``length`` uniformly chosen generator letters (with random exponents)."""
    gens = enumerate_generators(n, k, group)
    return [(rng.choice(gens), rng.choice((1, -1))) for _ in range(length)]


def random_element(n: int, k: int, rng, length: int = 6) -> bd.BoundaryElement:
    """A product of ``length`` random A_{n,k} generators and inverses."""
    return evaluate(random_word(n, k, rng, length, "bdy"), n, k, "bdy")
