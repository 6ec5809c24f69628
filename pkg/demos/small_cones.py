"""Extreme rays of the full monotonicity cone for two, three and four systems."""

import time

from monocone import enumerate_monotone_rays
from monocone.catalog import identify
from monocone.functional import Functional

for n in (2, 3, 4):
    t = time.time()
    res = enumerate_monotone_rays(n, group=True)
    print(f"n={n}: {len(res.rays)} rays in {len(res.orbits)} orbits ({time.time() - t:.1f} s)")
    for o in res.orbits:
        f = Functional(n, o.representative)
        names = identify(f)
        tag = f"  <- {', '.join(names)}" if names else ""
        print(f"   x{o.size:<3d} {f.pretty()}{tag}")

# n=5 works the same way but takes a minute or two:
#   res = enumerate_monotone_rays(5, progress=lambda s, t, r: print(s, t, r))
