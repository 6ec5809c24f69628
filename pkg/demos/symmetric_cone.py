"""Permutation-invariant monotones: closed-form facets and generators."""

from monocone import dd_convert, embed_symmetric, is_extremal, symmetric_facets, symmetric_generators
from monocone.monotonicity import is_monotone

for n in (3, 6, 10):
    h = symmetric_facets(n)
    v = dd_convert(h)
    g = symmetric_generators(n)
    print(f"n={n}: equality row {[int(x) for x in h.equalities[0]]}")
    for r in g.rays:
        print("   ", [str(x) for x in r], "extremal:", is_extremal(h, r))
    print("   DD rays (integer scaled):", len(v.rays))

# embedded into subset coordinates, the second n=3 generator is half of J
print(embed_symmetric(symmetric_generators(3).rays[1]).pretty())
print(all(is_monotone(embed_symmetric(r)) for r in symmetric_generators(5).rays))
