"""The fiber poset Z^k × (Z/2)^k, finite windows of it, and order complexes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

__all__ = ["FiberElement", "fiber_leq", "fiber_translate", "Poset", "fiber_window",
           "order_complex", "euler_characteristic", "cube_elements", "point_poset"]


@dataclass(frozen=True, order=True)
class FiberElement:
    z: tuple[int, ...]
    p: tuple[int, ...]

    def __post_init__(self):
        if len(self.z) != len(self.p) or any(b not in (0, 1) for b in self.p):
            raise ValueError("need integer z and bit p of equal length")

    def embed(self) -> tuple[float, ...]:
        """Position in R^k: each coordinate is ``z_i + p_i / 2``."""
        return tuple(z + b / 2 for z, b in zip(self.z, self.p))


def fiber_leq(a: FiberElement, b: FiberElement) -> bool:
    for z, p, z2, p2 in zip(a.z, a.p, b.z, b.p):
        if p == p2:
            if z != z2:
                return False
        elif p < p2:
            if z not in (z2, z2 + 1):
                return False
        else:
            return False
    return True


def fiber_translate(x: FiberElement, t: Sequence[int]) -> FiberElement:
    if len(t) != len(x.z):
        raise ValueError("translation length differs from k")
    return FiberElement(tuple(a + b for a, b in zip(x.z, t)), x.p)


@dataclass(frozen=True)
class Poset:
    elements: tuple
    less: frozenset          # strict relations (i, j): elements[i] < elements[j]

    def leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.less

    def check_axioms(self) -> list[str]:
        out = []
        for i, j in self.less:
            if (j, i) in self.less:
                out.append(f"antisymmetry fails at {self.elements[i]}, {self.elements[j]}")
        for (i, j), (j2, l) in itertools.product(self.less, repeat=2):
            if j == j2 and (i, l) not in self.less and i != l:
                out.append(f"transitivity fails at {self.elements[i]} < {self.elements[j]} < {self.elements[l]}")
        return out

    def maximal(self, subset: Sequence[int] | None = None) -> list[int]:
        idx = list(range(len(self.elements))) if subset is None else list(subset)
        s = set(idx)
        return [i for i in idx if not any((i, j) in self.less for j in s)]

    def minimal(self) -> list[int]:
        return [j for j in range(len(self.elements))
                if not any((i, j) in self.less for i in range(len(self.elements)))]


def point_poset() -> Poset:
    return Poset(("pt",), frozenset())


def fiber_window(k: int, m: int) -> Poset:
    """Restriction of the order to ``{-m..m}^k × {0,1}^k``."""
    elems = tuple(FiberElement(z, p)
                  for z in itertools.product(range(-m, m + 1), repeat=k)
                  for p in itertools.product((0, 1), repeat=k))
    less = frozenset((i, j) for i, a in enumerate(elems) for j, b in enumerate(elems)
                     if i != j and fiber_leq(a, b))
    return Poset(elems, less)


def cube_elements(poset: Poset, corner: Sequence[int]) -> list[int]:
    """Indices of elements whose embedding lies in the unit cube ``corner + [0,1]^k``."""
    out = []
    for i, x in enumerate(poset.elements):
        if all(c <= t <= c + 1 for c, t in zip(corner, x.embed())):
            out.append(i)
    return out


def order_complex(poset: Poset) -> list[list[tuple[int, ...]]]:
    """Strictly increasing chains grouped by dimension: ``result[d]`` holds the d-simplices."""
    up: dict[int, list[int]] = {i: [] for i in range(len(poset.elements))}
    for i, j in poset.less:
        up[i].append(j)
    for v in up.values():
        v.sort()
    faces: list[list[tuple[int, ...]]] = [[(i,) for i in range(len(poset.elements))]]
    while faces[-1]:
        nxt = [c + (j,) for c in faces[-1] for j in up[c[-1]]]
        if not nxt:
            break
        faces.append(nxt)
    return faces


def euler_characteristic(complex_: list[list[tuple[int, ...]]]) -> int:
    return sum((-1) ** d * len(f) for d, f in enumerate(complex_))
