"""Enumerate marked-cycle graphs by blowing up the rose and compare with the census formulas."""
from collections import Counter

from fgb.graphs import census, enumerate_graphs, expected_dimension, max_forest_avoiding, to_text

for n, k, variant in [(0, 2, "nk"), (1, 1, "nk"), (1, 1, "kn"), (1, 2, "nk")]:
    en = enumerate_graphs(n, k, variant)
    dim = max(len(max_forest_avoiding(g)) for g in en.graphs)
    sizes = Counter(g.nv for g in en.graphs)
    print(f"({n},{k},{variant}): {len(en.graphs)} graphs, vertices {dict(sorted(sizes.items()))}, "
          f"dimension {dim} (formula {expected_dimension(n, k, variant)})")

rows = census(1, 2)
print("census (1,2):", sorted(Counter((r["v"], r["e"], r["c"]) for r in rows).items()))

# A maximal graph with two separate cycle components, and its 6-edge forest.
en = enumerate_graphs(1, 2)
g = next(g for g, mx in zip(en.graphs, en.maximal) if mx and g.cycle_components() == 2)
print(to_text(g))
print("forest:", max_forest_avoiding(g))
