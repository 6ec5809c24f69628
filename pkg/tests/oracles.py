"""Slow, obviously-correct reference implementations used by the tests.

Nothing here imports from the package's linear algebra or lattice code;
subsets are frozensets, ranks and kernels come from sympy.
"""

from fractions import Fraction
from itertools import chain, combinations
from math import gcd, log2

import sympy


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r)
                                                         for r in range(len(items) + 1))]


def coordinate_sets(n):
    """Nonempty subsets of 1..n in coordinate order (bitmask order)."""
    out = []
    for m in range(1, 1 << n):
        out.append(frozenset(k + 1 for k in range(n) if m >> k & 1))
    return out


def poset(i, n):
    return [s for s in powerset(range(1, n + 1)) if i in s]


def lower_sets(i, n):
    """All downward closed subfamilies of the subsets containing ``i``,
    by filtering every subfamily against the definition."""
    P = poset(i, n)
    found = []
    for r in range(len(P) + 1):
        for fam in combinations(P, r):
            fam = set(fam)
            if all(b in fam for a in fam for b in P if b <= a):
                found.append(frozenset(fam))
    return found


def indicator(family, n):
    return tuple(1 if s in family else 0 for s in coordinate_sets(n))


def primitive(v):
    """Coprime integer vector on the same ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def extreme_rays(inequalities, equalities, dim):
    """Extreme rays of a pointed cone by exhausting tight-row subsets.

    A ray is extreme iff the equalities plus the inequalities tight at it
    have rank ``dim - 1``; so every extreme ray spans the kernel of some
    choice of ``dim - 1 - rank(E)`` inequality rows together with E.
    """
    E = [list(r) for r in equalities]
    rE = sympy.Matrix(E).rank() if E else 0
    need = dim - 1 - rE
    found = set()
    for rows in combinations(range(len(inequalities)), need):
        M = sympy.Matrix(E + [list(inequalities[k]) for k in rows]) if E or rows \
            else sympy.zeros(1, dim)
        ker = M.nullspace()
        if len(ker) != 1:
            continue
        v = [sympy.Rational(x) for x in ker[0]]
        for sign in (1, -1):
            w = [sign * x for x in v]
            if all(sum(a * x for a, x in zip(r, w)) >= 0 for r in inequalities):
                found.add(primitive([Fraction(int(x.p), int(x.q)) for x in w]))
    return found


def entropy_vector(outcomes, probs, n):
    """Joint entropies in bits, keyed by frozenset, for dyadic distributions
    (exact) or float otherwise."""
    out = {}
    for s in coordinate_sets(n):
        marg = {}
        for o, p in zip(outcomes, probs):
            key = tuple(o[k - 1] for k in sorted(s))
            marg[key] = marg.get(key, 0) + Fraction(p)
        h = Fraction(0)
        exact = True
        for p in marg.values():
            if p.numerator == 1 and p.denominator & (p.denominator - 1) == 0:
                h += p * (p.denominator.bit_length() - 1)
            else:
                exact = False
        out[s] = h if exact else -sum(float(p) * log2(float(p)) for p in marg.values())
    return out
