"""Lower sets of the subsets containing one system, and the facet rows they give."""

from monocone import enumerate_lower_sets, single_system_facets

for n in range(1, 6):
    print(f"n={n}: {len(enumerate_lower_sets(1, n))} lower sets containing system 1")

# n=3, anchor 1: the poset is {1} < {1,2}, {1,3} < {1,2,3}
for L in enumerate_lower_sets(1, 3):
    print("  ", L)

h = single_system_facets(1, 3)
print(f"\n{len(h.inequalities)} inequalities, {len(h.equalities)} equality")
# each inequality is the indicator of a lower set: sum of alpha_I over I in L >= 0
for row in h.inequalities:
    print("  ", [int(x) for x in row], ">= 0")
print("  ", [int(x) for x in h.equalities[0]], "= 0")
