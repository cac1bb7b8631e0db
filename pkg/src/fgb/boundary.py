"""The groups A_{n,k}, their Σ_k-extension, and the quotient A_n^k inside Aut(F_{n+k}).

An element of A_{n,k} is a tuple ``<nu, w>``: ``nu[i]`` is the image of
``x_{i+1}`` and ``w[j]`` is the conjugator of ``y_{j+1}``, so that the induced
automorphism is ``alpha<nu, w>``::

    x_i -> nu_i
    y_j -> w_j^-1 · y_j · w_j

Multiplication is ``<nu,w> . <nu',w'> = <alpha'(nu), w' · alpha'(w)>`` with
``alpha' = alpha<nu',w'>`` applied componentwise, which makes ``alpha`` a
homomorphism for the left-to-right composition used in :mod:`fgb.endos`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .endos import Endomorphism, compose, identity, is_automorphism, _apply_images
from .errors import (IndexOutOfRange, KZero, NotAMember, NotInvertible, OddRank,
                     RankMismatch)
from .words import (Rank, Word, are_conjugate, inv_letters, mul_letters,
                    parse_word)

__all__ = [
    "BoundaryElement", "SigmaBoundaryElement", "alpha", "multiply", "inverse",
    "unit", "central_inclusion", "kernel_check", "is_ank_member", "section_lift",
    "theta_generator", "beta_embed", "normalizes_theta", "boundary_word",
    "fixes_boundary_word", "vcd_witness_family", "power",
]


@dataclass(frozen=True, eq=False)
class BoundaryElement:
    n: int
    k: int
    nu: tuple[tuple[int, ...], ...]
    w: tuple[tuple[int, ...], ...]

    @classmethod
    def create(cls, n: int, k: int, nu: Sequence[Word | Sequence[int]],
               w: Sequence[Word | Sequence[int]]) -> "BoundaryElement":
        """Build and verify that ``alpha`` of the tuple is an automorphism."""
        e = cls.trusted(n, k, nu, w)
        if is_automorphism(alpha(e)) is None:
            raise NotInvertible("alpha<nu, w> is not an automorphism of F_{n+k}")
        return e

    @classmethod
    def trusted(cls, n, k, nu, w) -> "BoundaryElement":
        """Skip the automorphism check; for products of verified elements."""
        rank = Rank(n, k)
        nu = tuple(_letters(x) for x in nu)
        w = tuple(_letters(x) for x in w)
        if len(nu) != n or len(w) != k:
            raise RankMismatch(f"expected {n} images and {k} conjugators")
        for word in nu + w:
            rank.check_letters(word)
        return cls(n, k, nu, w)

    @property
    def rank(self) -> Rank:
        return Rank(self.n, self.k)

    def nu_words(self) -> list[Word]:
        return [Word(self.rank, x) for x in self.nu]

    def w_words(self) -> list[Word]:
        return [Word(self.rank, x) for x in self.w]

    def __mul__(self, other: "BoundaryElement") -> "BoundaryElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, BoundaryElement):
            return NotImplemented
        return (self.n, self.k, self.nu, self.w) == (other.n, other.k, other.nu, other.w)

    def __hash__(self):
        return hash((self.n, self.k, self.nu, self.w))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "nu": [str(x) for x in self.nu_words()],
                "w": [str(x) for x in self.w_words()]}

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryElement":
        n, k = int(data["n"]), int(data["k"])
        rank = Rank(n, k)
        return cls.create(n, k, [parse_word(rank, s) for s in data["nu"]],
                          [parse_word(rank, s) for s in data["w"]])

    def __repr__(self):
        nu = ", ".join(str(x) for x in self.nu_words())
        w = ", ".join(str(x) for x in self.w_words())
        return f"<{nu} | {w}>"


def _letters(x) -> tuple[int, ...]:
    return x.letters if isinstance(x, Word) else tuple(x)


def unit(n: int, k: int) -> BoundaryElement:
    return BoundaryElement(n, k, tuple((i,) for i in range(1, n + 1)), ((),) * k)


def alpha(e: BoundaryElement) -> Endomorphism:
    n = e.n
    images = list(e.nu)
    for j, wj in enumerate(e.w):
        images.append(mul_letters(mul_letters(inv_letters(wj), (n + j + 1,)), wj))
    return Endomorphism(e.rank, tuple(images))


def _check(a: BoundaryElement, b: BoundaryElement):
    if (a.n, a.k) != (b.n, b.k):
        raise RankMismatch(f"A_({a.n},{a.k}) vs A_({b.n},{b.k})")


def multiply(a: BoundaryElement, b: BoundaryElement) -> BoundaryElement:
    _check(a, b)
    imgs = alpha(b).images
    nu = tuple(_apply_images(imgs, x) for x in a.nu)
    w = tuple(mul_letters(wb, _apply_images(imgs, wa)) for wa, wb in zip(a.w, b.w))
    return BoundaryElement(a.n, a.k, nu, w)


def inverse(e: BoundaryElement) -> BoundaryElement:
    psi = is_automorphism(alpha(e))
    if psi is None:
        raise NotInvertible("element does not induce an automorphism")
    nu = tuple(psi.images[: e.n])
    w = tuple(inv_letters(_apply_images(psi.images, wj)) for wj in e.w)
    return BoundaryElement(e.n, e.k, nu, w)


def power(e: BoundaryElement, m: int) -> BoundaryElement:
    base = e if m >= 0 else inverse(e)
    out = unit(e.n, e.k)
    for _ in range(abs(m)):
        out = multiply(out, base)
    return out


def central_inclusion(n: int, z: Sequence[int]) -> BoundaryElement:
    """``i(z) = (x_1, ..., x_n, y_1^{z_1}, ..., y_k^{z_k})``."""
    k = len(z)
    w = tuple(((n + j + 1,) * zj if zj >= 0 else (-(n + j + 1),) * (-zj))
              for j, zj in enumerate(z))
    return BoundaryElement(n, k, tuple((i,) for i in range(1, n + 1)), w)


def kernel_check(e: BoundaryElement) -> tuple[int, ...] | None:
    """Return ``z`` with ``e == i(z)``; None exactly when ``alpha(e)`` is not the identity."""
    if not alpha(e).is_identity():
        return None
    z = []
    for j, wj in enumerate(e.w):
        g = e.n + j + 1
        # alpha = id forces w_j into the centralizer <y_j>
        if any(abs(a) != g for a in wj) or len(set(wj)) > 1:
            raise AssertionError("identity alpha with a non-central conjugator")
        z.append(len(wj) if not wj or wj[0] > 0 else -len(wj))
    return tuple(z)


def is_ank_member(e: Endomorphism) -> bool:
    """True iff ``e`` is an automorphism of F_{n+k} sending each y_j to a conjugate of itself."""
    rank = e.rank
    if rank.extended:
        raise RankMismatch("A_n^k lives in Aut(F_{n+k})")
    for j in range(1, rank.k + 1):
        y = Word(rank, (rank.y(j),))
        if are_conjugate(y, e(y)) is None:
            return False
    return is_automorphism(e) is not None


def section_lift(e: Endomorphism) -> BoundaryElement:
    """Set-theoretic section A_n^k -> A_{n,k} with ``section_lift(id) == unit``."""
    if not is_ank_member(e):
        raise NotAMember("endomorphism is not in A_n^k")
    rank = e.rank
    w = []
    for j in range(1, rank.k + 1):
        y = Word(rank, (rank.y(j),))
        wit = are_conjugate(y, e(y))
        w.append(wit.letters)
    return BoundaryElement(rank.n, rank.k, e.images[: rank.n], tuple(w))


# -- the Θ subgroup and the embedding into Aut(F_{n+3k}) ----------------------------------

def theta_generator(j: int, rank: Rank) -> Endomorphism:
    """``theta_j``: u_j -> v_j, v_j -> v_j^-1 u_j^-1, all else fixed (order 3)."""
    if not rank.extended:
        rank = rank.extend()
    if not 1 <= j <= rank.k:
        raise IndexOutOfRange(f"theta_{j} needs 1 <= j <= {rank.k}")
    u, v = rank.u(j), rank.v(j)
    return Endomorphism.from_mapping(rank, {u: (v,), v: (-v, -u)})


@dataclass(frozen=True)
class SigmaBoundaryElement:
    """An element of Σ_k ⋉ A_{n,k} stored as ``(sigma, nu, w)``.

    The induced automorphism of F_{n+k} sends ``x_i -> nu_i`` and
    ``y_j -> w_j^-1 · y_{sigma(j)} · w_j``; ``sigma`` is one-line notation, 1-based.
    Products follow left-to-right composition of these automorphisms:
    ``(s, nu, w) . (s', nu', w') = (s' ∘ s, phi'(nu), (w'_{s(j)} · phi'(w_j))_j)``.
    """

    sigma: tuple[int, ...]
    element: BoundaryElement

    @classmethod
    def create(cls, sigma: Sequence[int], element: BoundaryElement) -> "SigmaBoundaryElement":
        s = cls(tuple(sigma), element)
        if sorted(s.sigma) != list(range(1, element.k + 1)):
            raise ValueError(f"{sigma} is not a permutation of 1..{element.k}")
        if is_automorphism(s.automorphism()) is None:
            raise NotInvertible("twisted tuple is not an automorphism")
        return s

    @classmethod
    def plain(cls, element: BoundaryElement) -> "SigmaBoundaryElement":
        return cls(tuple(range(1, element.k + 1)), element)

    @classmethod
    def permutation(cls, n: int, k: int, sigma: Sequence[int]) -> "SigmaBoundaryElement":
        """The pure permutation ``y_j -> y_{sigma(j)}``."""
        return cls.create(sigma, unit(n, k))

    @classmethod
    def twist(cls, element: BoundaryElement, sigma: Sequence[int]) -> "SigmaBoundaryElement":
        """``element`` followed by the permutation ``sigma``; always a valid element."""
        return cls.plain(element) * cls.permutation(element.n, element.k, sigma)

    @property
    def n(self):
        return self.element.n

    @property
    def k(self):
        return self.element.k

    def automorphism(self) -> Endomorphism:
        e = self.element
        images = list(e.nu)
        for j, wj in enumerate(e.w):
            y = (e.n + self.sigma[j],)
            images.append(mul_letters(mul_letters(inv_letters(wj), y), wj))
        return Endomorphism(e.rank, tuple(images))

    def inverse(self) -> "SigmaBoundaryElement":
        psi = is_automorphism(self.automorphism())
        if psi is None:
            raise NotInvertible("not an automorphism")
        e = self.element
        inv_sigma = [0] * e.k
        w = [()] * e.k
        for j, s in enumerate(self.sigma):
            inv_sigma[s - 1] = j + 1
            w[s - 1] = inv_letters(_apply_images(psi.images, e.w[j]))
        return SigmaBoundaryElement(tuple(inv_sigma),
                                    BoundaryElement(e.n, e.k, tuple(psi.images[: e.n]), tuple(w)))

    def is_identity(self) -> bool:
        return self.sigma == tuple(range(1, self.k + 1)) and self.element == unit(self.n, self.k)

    def to_json(self) -> dict:
        d = self.element.to_json()
        d["sigma"] = list(self.sigma)
        return d

    @classmethod
    def from_json(cls, data: dict) -> "SigmaBoundaryElement":
        n, k = int(data["n"]), int(data["k"])
        rank = Rank(n, k)
        e = BoundaryElement.trusted(n, k, [parse_word(rank, s) for s in data["nu"]],
                                    [parse_word(rank, s) for s in data["w"]])
        return cls.create([int(s) for s in data.get("sigma", range(1, k + 1))], e)

    def __mul__(self, other: "SigmaBoundaryElement") -> "SigmaBoundaryElement":
        _check(self.element, other.element)
        imgs = other.automorphism().images
        a, b = self.element, other.element
        nu = tuple(_apply_images(imgs, x) for x in a.nu)
        w = tuple(mul_letters(b.w[self.sigma[j] - 1], _apply_images(imgs, a.w[j]))
                  for j in range(a.k))
        sigma = tuple(other.sigma[self.sigma[j] - 1] for j in range(a.k))
        return SigmaBoundaryElement(sigma, BoundaryElement(a.n, a.k, nu, w))


def beta_embed(s: SigmaBoundaryElement | BoundaryElement) -> Endomorphism:
    """Embed into Aut(F_{n+3k}): x_i -> nu_i, and y_j, u_j, v_j -> w_j^-1 (·)_{sigma(j)} w_j."""
    if isinstance(s, BoundaryElement):
        s = SigmaBoundaryElement.plain(s)
    e = s.element
    rank = Rank(e.n, e.k, True)
    images = list(e.nu)
    for base in (e.n, e.n + e.k, e.n + 2 * e.k):
        for j, wj in enumerate(e.w):
            g = (base + s.sigma[j],)
            images.append(mul_letters(mul_letters(inv_letters(wj), g), wj))
    return Endomorphism(rank, tuple(images))


def normalizes_theta(e: Endomorphism) -> tuple[int, ...] | None:
    """Return ``sigma`` with ``e ∘ theta_l ∘ e^-1 == theta_{sigma(l)}`` for all l, else None.

    ``∘`` is function composition here; in the left-to-right convention of
    :func:`compose` the tested identity is ``compose(e^-1, theta_l, e) == theta_{sigma(l)}``.
    """
    rank = e.rank
    if not rank.extended:
        raise RankMismatch("Θ lives in Aut(F_{n+3k})")
    inv = is_automorphism(e)
    if inv is None:
        raise NotInvertible("not an automorphism")
    thetas = [theta_generator(l, rank) for l in range(1, rank.k + 1)]
    sigma = []
    for th in thetas:
        conj = compose(inv, th, e)
        match = [m + 1 for m, t in enumerate(thetas) if t == conj]
        if not match:
            return None
        sigma.append(match[0])
    return tuple(sigma)


# -- mapping class subgroup ---------------------------------------------------------------

def boundary_word(g: int, k: int) -> Word:
    """``c = [x1,x2]···[x_{2g-1},x_{2g}] · y1···yk`` with ``[a,b] = a b a^-1 b^-1``."""
    rank = Rank(2 * g, k)
    letters = []
    for i in range(g):
        a, b = 2 * i + 1, 2 * i + 2
        letters += [a, b, -a, -b]
    letters += [2 * g + j for j in range(1, k + 1)]
    return Word.of(rank, letters)


def fixes_boundary_word(e: BoundaryElement, g: int) -> bool:
    if e.n != 2 * g:
        raise OddRank(f"n = {e.n} is not 2g for g = {g}")
    c = boundary_word(g, e.k)
    return alpha(e)(c) == c


# -- commuting family of rank 2n+2k-1 -----------------------------------------------------

def vcd_witness_family(n: int, k: int) -> list[BoundaryElement]:
    """x_i -> x_i y_k, x_i -> y_k x_i, y_j conjugated by y_k, y_j (j != k) conjugated by y_j."""
    if k == 0:
        raise KZero("the family needs at least one boundary")
    yk = n + k
    fam = []
    base_nu = [(i,) for i in range(1, n + 1)]
    for i in range(n):
        nu = list(base_nu)
        nu[i] = (i + 1, yk)
        fam.append(BoundaryElement(n, k, tuple(nu), ((),) * k))
    for i in range(n):
        nu = list(base_nu)
        nu[i] = (yk, i + 1)
        fam.append(BoundaryElement(n, k, tuple(nu), ((),) * k))
    for j in range(k):
        w = [()] * k
        w[j] = (yk,)
        fam.append(BoundaryElement(n, k, tuple(base_nu), tuple(w)))
    for j in range(k - 1):
        z = [0] * k
        z[j] = 1
        fam.append(central_inclusion(n, z))
    return fam


def identity_element(n, k):
    return unit(n, k)


def identity_endo(n, k):
    return identity(Rank(n, k))
