"""Reduced words in free groups on the letters x_i, y_j (and u_j, v_j).

Letters are stored as nonzero signed integers: generator number ``g`` (1-based)
is the letter ``g`` and its inverse is ``-g``.  A :class:`Rank` fixes how the
generator numbers map to named generators::

    x_1..x_n -> 1..n
    y_1..y_k -> n+1..n+k
    u_1..u_k -> n+k+1..n+2k      (extended rank only)
    v_1..v_k -> n+2k+1..n+3k     (extended rank only)

The raw-tuple helpers (``reduce_letters``, ``mul_letters``, ``inv_letters``)
are used directly by the hot loops in the other modules.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import IllegalGenerator, RankMismatch

__all__ = [
    "Kind", "GeneratorId", "Rank", "Word", "CyclicWord",
    "reduce", "multiply", "invert", "cyclic_reduce", "are_conjugate",
    "reduce_letters", "mul_letters", "inv_letters", "parse_word",
]


class Kind(Enum):
    X = "x"
    Y = "y"
    U = "u"
    V = "v"


_KIND_ORDER = {Kind.X: 0, Kind.Y: 1, Kind.U: 2, Kind.V: 3}


@dataclass(frozen=True, order=True)
class Rank:
    """Rank descriptor ``(n, k)``; ``extended`` adds the u_j, v_j generators."""

    n: int
    k: int
    extended: bool = False

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("ranks must be non-negative")

    @property
    def size(self) -> int:
        return self.n + (3 if self.extended else 1) * self.k

    def extend(self) -> "Rank":
        return Rank(self.n, self.k, True)

    def base(self) -> "Rank":
        return Rank(self.n, self.k, False)

    def gen(self, kind: Kind | str, index: int) -> int:
        """Generator number of ``kind_index``; raises IllegalGenerator."""
        kind = Kind(kind)
        if kind is Kind.X:
            bound, offset = self.n, 0
        else:
            if kind in (Kind.U, Kind.V) and not self.extended:
                raise IllegalGenerator(f"{kind.value}{index} needs an extended rank")
            bound = self.k
            offset = self.n + self.k * ("yuv".index(kind.value))
        if not 1 <= index <= bound:
            raise IllegalGenerator(f"{kind.value}{index} is not legal in {self}")
        return offset + index

    def x(self, i: int) -> int:
        return self.gen(Kind.X, i)

    def y(self, j: int) -> int:
        return self.gen(Kind.Y, j)

    def u(self, j: int) -> int:
        return self.gen(Kind.U, j)

    def v(self, j: int) -> int:
        return self.gen(Kind.V, j)

    def generator_id(self, g: int) -> "GeneratorId":
        if not 1 <= g <= self.size:
            raise IllegalGenerator(f"generator {g} out of range for {self}")
        if g <= self.n:
            return GeneratorId(Kind.X, g)
        g -= self.n
        block, idx = divmod(g - 1, self.k)
        return GeneratorId((Kind.Y, Kind.U, Kind.V)[block], idx + 1)

    def name(self, g: int) -> str:
        gid = self.generator_id(g)
        return f"{gid.kind.value}{gid.index}"

    def letter_name(self, letter: int) -> str:
        s = self.name(abs(letter))
        return s if letter > 0 else s + "^-1"

    def generators(self) -> range:
        return range(1, self.size + 1)

    def check_letters(self, letters: Iterable[int]) -> None:
        size = self.size
        for a in letters:
            if a == 0 or abs(a) > size:
                raise IllegalGenerator(f"letter {a} is not legal in {self}")

    def __str__(self):
        return f"F(n={self.n}, k={self.k}{', extended' if self.extended else ''})"


@dataclass(frozen=True)
class GeneratorId:
    kind: Kind
    index: int

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.index)


# -- raw letter-tuple arithmetic ------------------------------------------------

def reduce_letters(seq: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in seq:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def mul_letters(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    i = 0
    la, lb = len(a), len(b)
    while i < la and i < lb and a[la - 1 - i] == -b[i]:
        i += 1
    return tuple(a[: la - i]) + tuple(b[i:])


def inv_letters(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(a))


def letter_key(a: int) -> tuple[int, int]:
    # x < y < u < v by generator number, positive before negative
    return (abs(a), 0 if a > 0 else 1)


def _least_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    keyed = [letter_key(a) for a in letters]
    best = 0
    n = len(letters)
    for r in range(1, n):
        for t in range(n):
            ka, kb = keyed[(r + t) % n], keyed[(best + t) % n]
            if ka != kb:
                if ka < kb:
                    best = r
                break
    return letters[best:] + letters[:best]


# -- Word ----------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A freely reduced word; construct through :func:`reduce` or ``Word.of``."""

    rank: Rank
    letters: tuple[int, ...] = ()

    @classmethod
    def of(cls, rank: Rank, letters: Iterable[int] = ()) -> "Word":
        letters = tuple(letters)
        rank.check_letters(letters)
        return cls(rank, reduce_letters(letters))

    @classmethod
    def identity(cls, rank: Rank) -> "Word":
        return cls(rank, ())

    @classmethod
    def gen(cls, rank: Rank, kind: Kind | str, index: int, power: int = 1) -> "Word":
        g = rank.gen(kind, index)
        return cls(rank, (g,) * power if power >= 0 else (-g,) * (-power))

    @classmethod
    def parse(cls, rank: Rank, text: str) -> "Word":
        return parse_word(rank, text)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, m: int) -> "Word":
        base = self if m >= 0 else invert(self)
        out = Word(self.rank, ())
        for _ in range(abs(m)):
            out = multiply(out, base)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def to_rank(self, rank: Rank) -> "Word":
        """Re-home the word in another rank that contains all its letters."""
        rank.check_letters(self.letters)
        return Word(rank, self.letters)

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank.size
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    def __str__(self):
        if not self.letters:
            return "1"
        return "·".join(self.rank.letter_name(a) for a in self.letters)

    def __repr__(self):
        return f"Word({self})"


def _check_same(a: Word, b: Word) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"{a.rank} vs {b.rank}")


def reduce(rank: Rank, raw: Iterable[int]) -> Word:
    """Freely reduce a sequence of signed generator numbers."""
    return Word.of(rank, raw)


def multiply(a: Word, b: Word) -> Word:
    _check_same(a, b)
    return Word(a.rank, mul_letters(a.letters, b.letters))


def invert(w: Word) -> Word:
    return Word(w.rank, inv_letters(w.letters))


@dataclass(frozen=True)
class CyclicWord:
    representative: Word
    canonical: tuple[int, ...] = field(compare=True)

    @classmethod
    def from_reduced(cls, w: Word) -> "CyclicWord":
        return cls(w, _least_rotation(w.letters))

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return (self.representative.rank == other.representative.rank
                and self.canonical == other.canonical)

    def __hash__(self):
        return hash((self.representative.rank, self.canonical))


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split ``w`` as ``conjugator^-1 · core · conjugator`` with ``core`` cyclically reduced."""
    a = w.letters
    i, j = 0, len(a) - 1
    while i < j and a[i] == -a[j]:
        i += 1
        j -= 1
    core = Word(w.rank, a[i:j + 1])
    conjugator = Word(w.rank, inv_letters(a[:i]))
    return CyclicWord.from_reduced(core), conjugator


def are_conjugate(a: Word, b: Word) -> Word | None:
    """Return ``u`` with ``u^-1 · a · u == b``, or None if a and b are not conjugate."""
    _check_same(a, b)
    ca, pa = cyclic_reduce(a)
    cb, pb = cyclic_reduce(b)
    if ca.canonical != cb.canonical:
        return None
    ra, rb = ca.representative.letters, cb.representative.letters
    if not ra:
        witness = Word(a.rank, ())
    else:
        n = len(ra)
        # rb = ra[s:] + ra[:s] = t^-1 · ra · t with t = ra[:s]
        s = next(s for s in range(n) if ra[s:] + ra[:s] == rb)
        t = ra[:s]
        # a = pa^-1 ra pa, b = pb^-1 rb pb  =>  u = pa^-1 t pb
        witness = Word(a.rank, mul_letters(mul_letters(inv_letters(pa.letters), t), pb.letters))
    check = mul_letters(mul_letters(inv_letters(witness.letters), a.letters), witness.letters)
    assert check == b.letters, "conjugacy witness failed verification"
    return witness


# -- text grammar ----------------------------------------------------------------

_TOKEN = re.compile(r"^([xyuv])(\d+)(?:\^(-?\d+))?$")


def parse_word(rank: Rank, text: str) -> Word:
    """Parse ``x1·y2^-1·x1``; ``1`` (or the empty string) is the identity.

    ``*`` and ``.`` are accepted as separators as well as ``·``.
    """
    text = text.strip()
    if text in ("", "1", "ε"):
        return Word(rank, ())
    letters: list[int] = []
    for tok in re.split(r"[·*.\s]+", text):
        if not tok:
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise IllegalGenerator(f"cannot parse letter {tok!r}")
        g = rank.gen(m.group(1), int(m.group(2)))
        p = int(m.group(3)) if m.group(3) is not None else 1
        letters.extend([g] * p if p >= 0 else [-g] * (-p))
    return Word(rank, reduce_letters(letters))
