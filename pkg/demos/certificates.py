"""Membership and violation certificates for catalog formulas."""

import json

from monocone import Functional, check_monotone, decompose_monotone, violation_certificate
from monocone.catalog import lookup

u = lookup("u-monotone")
for v in check_monotone(u):
    print(v.describe())

cert = decompose_monotone(u, 1)
print("\nU under processing of system 1, as nonnegative SSA-type terms:")
for (j, rest), c in sorted(cert.v.items()):
    lo = 1 | rest
    term = Functional.from_masks(4, {lo: 1, lo | 1 << (j - 1): -1})
    print(f"   {c} * ({term.pretty()})")
free = Functional.from_masks(4, dict(cert.w))
print("   plus a free part on subsets avoiding 1:", free.pretty())
assert cert.reconstruct() == u

zy = lookup("zhang-yeung")
print()
for v in check_monotone(zy):
    print(v.describe())

bad = violation_certificate(zy)
print(f"\nsystem {bad.system}: f goes from {bad.f_before} to {bad.f_after} "
      f"after a local '{bad.operation}'")
print("witness distribution:")
print(json.dumps(bad.witness.to_json(), indent=1)[:600], "...")
print("re-verified:", bad.verify())
