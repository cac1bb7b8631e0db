"""Check the finite presentations relation by relation, then read off H_1."""
from fgb.presentations import enumerate_relations, h1, q2_symbol_level_extras, verify_all

for n, k, group in [(2, 1, "conj"), (2, 1, "bdy"), (0, 3, "conj")]:
    rep = verify_all(n, k, group)
    line = ", ".join(f"{s} {e['passed']}/{e['count']}" for s, e in rep.items())
    print(f"({n},{k}) {group}: {line}")

# One relation of each new schema in the central extension.
for r in enumerate_relations(1, 1, "bdy", ["Q5'", "Q2'"])[:3]:
    print("  ", r)

# Reading the commutation side condition on symbols instead of letters would
# admit these instances; every one of them is false.
for r in q2_symbol_level_extras(2, 1):
    print("  rejected:", r)

for n, k, group in [(3, 1, "conj"), (3, 1, "bdy"), (0, 3, "conj"), (0, 2, "bdy"), (2, 0, "conj")]:
    print(f"H_1 at ({n},{k}) {group}: {h1(n, k, group)}")
