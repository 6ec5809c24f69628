"""Evaluating formulas on explicit distributions.

Dyadic distributions give exact rationals; anything else falls back to
mpmath and is marked approximate.
"""

from fractions import Fraction

from monocone import JointDistribution, evaluate, shannon_entropy_vector
from monocone.catalog import lookup

xor = JointDistribution.from_samples((1, 2, 3), (2, 2, 2),
                                     [(a, b, a ^ b) for a in (0, 1) for b in (0, 1)])
h = shannon_entropy_vector(xor)
print("XOR triple:", {k: str(x) for k, x in h.to_json()["values"].items()})
print("J =", evaluate(lookup("dual-total-correlation"), h))

skew = JointDistribution((1, 2), (2, 2), (((0, 0), Fraction(1, 3)), ((1, 1), Fraction(2, 3))))
h = shannon_entropy_vector(skew, precision_bits=100)
print("I(1;2) on a 1/3-2/3 perfectly correlated pair:", evaluate(lookup("mutual-information"), h),
      "(exact)" if h.exact else "(approximate)")
