"""Exact linear algebra over the rationals.

Everything here works on plain sequences of ``int``/``Fraction`` and never
touches floating point.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Vector = Tuple[Fraction, ...]

# Mersenne prime 2**127 - 1; modular rank is exact once the Hadamard bound of
# the matrix stays below it
PRIME_BITS = 127
_PRIME = (1 << PRIME_BITS) - 1


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    return Fraction(x)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v) if a and b)


def integerize(v: Sequence) -> Tuple[int, ...]:
    """Scale ``v`` by a positive rational so its entries are coprime integers.

    The zero vector maps to itself.
    """
    v = [as_fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                return tuple(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                rk, rr = m[k], m[r]
                m[k] = [a - f * b for a, b in zip(rk, rr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def log2_norm_bound(row: Sequence[int]) -> float:
    """Upper bound on log2 of the Euclidean norm of an integer row."""
    from math import log2

    sq = sum(x * x for x in row)
    return 0.5 * log2(sq) + 1e-9 if sq else 0.0


def rank_mod_p(rows: Sequence[Sequence[int]], p: int = _PRIME) -> int:
    """Rank of an integer matrix over GF(p); never exceeds the rational rank."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        rr = [(x * inv) % p for x in m[r]]
        m[r] = rr
        for k in range(r + 1, len(m)):
            f = m[k][c]
            if f:
                m[k] = [(a - f * b) % p for a, b in zip(m[k], rr)]
        r += 1
        if r == len(m):
            break
    return r


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rational rank, computed modulo a large prime when that is provably exact.

    Rows are scaled to integers first. If the product of the ``r`` largest
    row norms (``r`` = the most rows a minor can use) is below the modulus,
    no nonzero minor can vanish mod p and the modular rank is the true rank.
    """
    if not rows:
        return 0
    ints = [integerize(r) for r in rows]
    r = min(len(ints), len(ints[0]))
    logs = sorted((log2_norm_bound(x) for x in ints), reverse=True)
    if sum(logs[:r]) < PRIME_BITS - 1:
        return rank_mod_p(ints)
    return rank(ints)


def kernel(rows: Sequence[Sequence], ncols: int) -> List[Tuple[int, ...]]:
    """Integer basis of the right null space ``{x : rows @ x = 0}``.

    The basis is the canonical one read off the reduced row echelon form (one
    vector per free column, in increasing column order), scaled to coprime
    integers.
    """
    if not rows:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(integerize(v))
    return basis


def row_space_basis(rows: Sequence[Sequence]) -> List[Tuple[int, ...]]:
    """Canonical integer basis (scaled RREF rows) of the span of ``rows``."""
    red, _ = rref(rows)
    return [integerize(r) for r in red]


def solve_square(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve ``a x = b`` for a nonsingular square ``a``."""
    n = len(a)
    aug = [list(r) + [bb] for r, bb in zip(a, b)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [red[k][n] for k in range(n)]


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(basis)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return row_space_basis(a) == row_space_basis(b)


def orthogonal_projection(v: Sequence, basis: Sequence[Sequence]) -> List[Fraction]:
    """Project ``v`` onto the orthogonal complement of ``span(basis)``.

    ``basis`` must be linearly independent.
    """
    v = [as_fraction(x) for x in v]
    if not basis:
        return v
    gram = [[as_fraction(dot(p, q)) for q in basis] for p in basis]
    rhs = [as_fraction(dot(p, v)) for p in basis]
    coef = solve_square(gram, rhs)
    out = list(v)
    for c, p in zip(coef, basis):
        if c:
            out = [x - c * y for x, y in zip(out, p)]
    return out
