"""Walk through A_{n,k}: tuples, the map to Aut(F_{n+k}), its kernel, and the Θ normalizer."""
import random

from fgb import boundary as bd
from fgb.endos import compose
from fgb.presentations import GenSymbol, random_element, symbol_realize
from fgb.words import Rank

n, k = 2, 1
rank = Rank(n, k)

# A generator conjugating y1 by x1, and its image in Aut(F_3).
g = symbol_realize(GenSymbol.YMove(1, "x", 1), n, k, "bdy")
print("element:", g)
print("alpha:  ", bd.alpha(g))

# Central elements i(z) die under alpha; kernel_check recovers z.
z = bd.central_inclusion(n, [3])
print("i(3) =", z, " alpha trivial:", bd.alpha(z).is_identity(), " z =", bd.kernel_check(z))

# Conjugating y1 by itself is trivial in Aut(F_3) but not in A_{n,k}.
y_self = symbol_realize(GenSymbol.YSelf(1), n, k, "bdy")
print("(y1;y1) in the kernel:", bd.kernel_check(y_self))

# The boundary word [x1,x2]·y1 and the mapping-class test.
print("c =", bd.boundary_word(1, 1))
twist = bd.BoundaryElement.create(n, k, [(rank.x(1), rank.x(2)), (rank.x(2),)], [()])
print("x1 -> x1·x2 fixes c:", bd.fixes_boundary_word(twist, 1))
print("x1 -> x1·y1 fixes c:", bd.fixes_boundary_word(
    bd.BoundaryElement.create(n, k, [(rank.x(1), rank.y(1)), (rank.x(2),)], [()]), 1))

# β sends Σ_k ⋉ A_{n,k} into the normalizer of Θ inside Aut(F_{n+3k}).
rng = random.Random(0)
a = bd.SigmaBoundaryElement.twist(random_element(2, 2, rng), (2, 1))
b = bd.SigmaBoundaryElement.twist(random_element(2, 2, rng), (1, 2))
print("sigma recovered from beta(a):", bd.normalizes_theta(bd.beta_embed(a)))
print("beta(ab) == beta(a)·beta(b):", bd.beta_embed(a * b) == compose(bd.beta_embed(a), bd.beta_embed(b)))

# A rank 2n+2k-1 family of commuting elements.
fam = bd.vcd_witness_family(2, 2)
print(len(fam), "commuting witnesses; all pairs commute:",
      all(x * y == y * x for i, x in enumerate(fam) for y in fam[i + 1:]))
