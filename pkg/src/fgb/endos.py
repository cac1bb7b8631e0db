"""Endomorphisms of free groups, Nielsen reduction, and Whitehead automorphisms.

Composition convention: ``compose(f, g)`` applies ``f`` first and then ``g``,
so ``apply(compose(f, g), w) == apply(g, apply(f, w))``.  Products of
presentation symbols are always evaluated left to right under this rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

import numpy as np

from .errors import IllegalSymbol, RankMismatch
from .words import (Rank, Word, inv_letters, mul_letters, parse_word,
                    reduce_letters)

__all__ = [
    "Endomorphism", "apply", "compose", "identity", "nielsen_reduce",
    "is_automorphism", "abelianized_matrix", "WhiteheadAut", "ShortMove",
    "realize", "whitehead_type2", "signed_permutation",
]


def _apply_images(images: Sequence[tuple[int, ...]], letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        img = images[a - 1] if a > 0 else inv_letters(images[-a - 1])
        for b in img:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


@dataclass(frozen=True)
class Endomorphism:
    """Dense image table: ``images[g-1]`` is the reduced image of generator ``g``."""

    rank: Rank
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.rank.size:
            raise RankMismatch("image table does not match the rank")

    @classmethod
    def from_words(cls, rank: Rank, words: Sequence[Word]) -> "Endomorphism":
        for w in words:
            if w.rank != rank:
                raise RankMismatch(f"{w.rank} vs {rank}")
        return cls(rank, tuple(w.letters for w in words))

    @classmethod
    def from_mapping(cls, rank: Rank, mapping: dict[int, Iterable[int]]) -> "Endomorphism":
        """Identity except on the generator numbers listed in ``mapping``."""
        images = [(g,) for g in rank.generators()]
        for g, img in mapping.items():
            img = tuple(img)
            rank.check_letters(img)
            images[g - 1] = reduce_letters(img)
        return cls(rank, tuple(images))

    def image(self, g: int) -> Word:
        return Word(self.rank, self.images[g - 1])

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def is_identity(self) -> bool:
        return all(img == (g,) for g, img in zip(self.rank.generators(), self.images))

    def restrict(self, rank: Rank) -> "Endomorphism":
        """Restrict to the first ``rank.size`` generators (images must stay inside)."""
        imgs = self.images[: rank.size]
        for img in imgs:
            rank.check_letters(img)
        return Endomorphism(rank, imgs)

    def to_json(self) -> dict[str, str]:
        return {self.rank.name(g): str(self.image(g)) for g in self.rank.generators()}

    @classmethod
    def from_json(cls, data: dict[str, str], rank: Rank | None = None) -> "Endomorphism":
        if rank is None:
            rank = _infer_rank(data.keys())
        images = []
        for g in rank.generators():
            name = rank.name(g)
            images.append(parse_word(rank, data[name]).letters if name in data else (g,))
        return cls(rank, tuple(images))

    def __str__(self):
        parts = [f"{self.rank.name(g)}↦{self.image(g)}"
                 for g in self.rank.generators() if self.images[g - 1] != (g,)]
        return "{" + ", ".join(parts) + "}" if parts else "id"


def _infer_rank(names) -> Rank:
    n = k = 0
    ext = False
    for name in names:
        kind, idx = name[0], int(name[1:])
        if kind == "x":
            n = max(n, idx)
        else:
            k = max(k, idx)
            ext = ext or kind in "uv"
    return Rank(n, k, ext)


def identity(rank: Rank) -> Endomorphism:
    return Endomorphism(rank, tuple((g,) for g in rank.generators()))


def apply(e: Endomorphism, w: Word) -> Word:
    if e.rank != w.rank:
        raise RankMismatch(f"{e.rank} vs {w.rank}")
    return Word(e.rank, _apply_images(e.images, w.letters))


def compose(first: Endomorphism, *then: Endomorphism) -> Endomorphism:
    """``first`` followed by each endomorphism in ``then``, left to right."""
    def two(f, g):
        if f.rank != g.rank:
            raise RankMismatch(f"{f.rank} vs {g.rank}")
        return Endomorphism(f.rank, tuple(_apply_images(g.images, img) for img in f.images))
    return _fold(two, then, first)


def abelianized_matrix(e: Endomorphism) -> np.ndarray:
    """Exponent-sum matrix; column ``g`` is the abelianized image of generator ``g``.

    With this convention ``M(compose(f, g)) == M(g) @ M(f)``.
    """
    r = e.rank.size
    m = np.zeros((r, r), dtype=np.int64)
    for col, img in enumerate(e.images):
        for a in img:
            m[abs(a) - 1, col] += 1 if a > 0 else -1
    return m


# -- Nielsen reduction --------------------------------------------------------------

def _moves(r: int):
    # scan order: kind, then pivot j, then target i, then sign
    for kind in ("right", "left"):
        for j in range(r):
            for i in range(r):
                if i == j:
                    continue
                for s in (1, -1):
                    yield (kind, i, j, s)
    for i in range(r):
        yield ("invert", i, i, 1)


def _apply_move(tup: list[tuple[int, ...]], move) -> tuple[int, ...]:
    kind, i, j, s = move
    if kind == "invert":
        return inv_letters(tup[i])
    other = tup[j] if s > 0 else inv_letters(tup[j])
    if kind == "right":
        return mul_letters(tup[i], other)
    return mul_letters(other, tup[i])


def _best_descent(tup):
    best = None
    best_gain = 0
    for move in _moves(len(tup)):
        if move[0] == "invert":
            continue
        i = move[1]
        gain = len(tup[i]) - len(_apply_move(tup, move))
        if gain > best_gain:
            best, best_gain = move, gain
    return best


def _plateau_escape(tup, exprs, limit=400):
    """Search length-preserving moves for a state that admits a strict descent."""
    start = tuple(tup)
    seen = {start}
    frontier = [(list(tup), list(exprs), [])]
    while frontier and len(seen) < limit:
        nxt = []
        for state, ex, path in frontier:
            for move in _moves(len(state)):
                i = move[1]
                new = _apply_move(state, move)
                if len(new) != len(state[i]):
                    continue
                s2 = list(state)
                s2[i] = new
                key = tuple(s2)
                if key in seen:
                    continue
                seen.add(key)
                e2 = list(ex)
                e2[i] = _apply_move(ex, move)
                p2 = path + [move]
                if _best_descent(s2) is not None:
                    return s2, e2, p2
                nxt.append((s2, e2, p2))
        frontier = nxt
    return None


def _nielsen(tup, exprs):
    tup, exprs = list(tup), list(exprs)
    log = []
    while True:
        move = _best_descent(tup)
        if move is None:
            if _is_signed_perm(tup) or all(len(t) <= 1 for t in tup):
                break
            escaped = _plateau_escape(tup, exprs)
            if escaped is None:
                break
            tup, exprs, path = escaped
            log.extend(path)
            continue
        i = move[1]
        tup[i], exprs[i] = _apply_move(tup, move), _apply_move(exprs, move)
        log.append(move)
    return tup, exprs, log


def _is_signed_perm(tup) -> bool:
    if any(len(t) != 1 for t in tup):
        return False
    return sorted(abs(t[0]) for t in tup) == list(range(1, len(tup) + 1))


def nielsen_reduce(words: Sequence[Word]) -> tuple[list[Word], list[tuple]]:
    """Greedy Nielsen reduction of a tuple of words.

    Each step applies the elementary move with the largest length decrease;
    ties go to the first move in the scan order ``(kind, j, i, sign)``.
    When no move decreases the length, a bounded search over length-preserving
    moves looks for an escape.  Returns the reduced tuple and the move log,
    where moves are ``("right", i, j, s)`` for ``u_i <- u_i u_j^s``,
    ``("left", i, j, s)`` for ``u_i <- u_j^s u_i`` and ``("invert", i, i, 1)``.
    """
    if not words:
        return [], []
    rank = words[0].rank
    for w in words:
        if w.rank != rank:
            raise RankMismatch("tuple mixes ranks")
    tup, _, log = _nielsen([w.letters for w in words], [(i + 1,) for i in range(len(words))])
    return [Word(rank, t) for t in tup], log


def is_automorphism(e: Endomorphism) -> Endomorphism | None:
    """Return the inverse of ``e`` if it is an automorphism, else None."""
    r = e.rank.size
    # expressions track each entry as a word in the original tuple entries
    tup, exprs, _ = _nielsen(list(e.images), [(i + 1,) for i in range(r)])
    if not _is_signed_perm(tup):
        return None
    inv_images: list[tuple[int, ...]] = [()] * r
    for t, ex in zip(tup, exprs):
        a = t[0]
        inv_images[abs(a) - 1] = ex if a > 0 else inv_letters(ex)
    inv = Endomorphism(e.rank, tuple(inv_images))
    if not (compose(e, inv).is_identity() and compose(inv, e).is_identity()):
        raise AssertionError("Nielsen inverse failed verification")
    return inv


# -- Whitehead vocabulary ---------------------------------------------------------

@dataclass(frozen=True)
class WhiteheadAut:
    """Type I: ``perm`` gives the signed letter image of each generator.
    Type II: ``(A; a)`` with ``a`` in ``A`` and ``a^-1`` not in ``A``."""

    perm: tuple[int, ...] | None = None
    A: frozenset[int] | None = None
    a: int | None = None

    @classmethod
    def type1(cls, perm: Sequence[int]) -> "WhiteheadAut":
        return cls(perm=tuple(perm))

    @classmethod
    def type2(cls, A: Iterable[int], a: int) -> "WhiteheadAut":
        A = frozenset(A)
        if a not in A or -a in A:
            raise IllegalSymbol(f"({sorted(A)}; {a}) needs a in A and a^-1 not in A")
        return cls(A=A, a=a)

    @property
    def is_type1(self) -> bool:
        return self.perm is not None


@dataclass(frozen=True)
class ShortMove:
    """``(z_i^eps; z_j^eta)`` when ``eps`` is +1/-1, ``(z_i^±; z_j^eta)`` when ``eps`` is 0.

    ``source`` is the generator number of ``z_i`` and ``by`` the signed letter ``z_j^eta``.
    """

    source: int
    eps: int
    by: int

    def inverse(self) -> "ShortMove":
        return ShortMove(self.source, self.eps, -self.by)


def whitehead_type2(rank: Rank, A: Iterable[int], a: int) -> Endomorphism:
    A = frozenset(A)
    rank.check_letters(A)
    if a not in A or -a in A:
        raise IllegalSymbol(f"({sorted(A)}; {a}) needs a in A and a^-1 not in A")
    images = []
    for g in rank.generators():
        if g == abs(a):
            images.append((g,))
            continue
        img = ((-a,) if -g in A else ()) + (g,) + ((a,) if g in A else ())
        images.append(img)
    return Endomorphism(rank, tuple(images))


def signed_permutation(rank: Rank, perm: Sequence[int]) -> Endomorphism:
    if sorted(abs(p) for p in perm) != list(rank.generators()):
        raise IllegalSymbol(f"{perm} is not a signed permutation")
    return Endomorphism(rank, tuple((p,) for p in perm))


def realize(m: ShortMove | WhiteheadAut, rank: Rank) -> Endomorphism:
    if isinstance(m, WhiteheadAut):
        if m.is_type1:
            return signed_permutation(rank, m.perm)
        return whitehead_type2(rank, m.A, m.a)
    rank.check_letters((m.source, m.by))
    if m.source == abs(m.by):
        raise IllegalSymbol("a short move cannot act on its own letter")
    g, b = m.source, m.by
    if m.eps == 1:
        img = (g, b)
    elif m.eps == -1:
        img = (-b, g)
    elif m.eps == 0:
        img = (-b, g, b)
    else:
        raise IllegalSymbol(f"bad exponent {m.eps}")
    return Endomorphism.from_mapping(rank, {g: img})
