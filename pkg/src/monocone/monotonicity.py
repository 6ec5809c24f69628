"""Cones of entropic formulas that are monotone under local processing.

A formula ``alpha`` is monotone under processing of system ``i`` iff for
every lower set ``L`` of ``P_i(N)`` the coefficients on ``L`` sum to a
nonnegative number and the coefficients on all of ``P_i(N)`` sum to zero.
The cone for a set of systems is the intersection of the single-system
cones.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .cone import (
    HRep,
    NonNegCombination,
    VRep,
    dd_convert,
    solve_nonneg_combination,
)
from .errors import NotAMonotone
from .functional import Functional, SystemSet, check_n, members_of, subset_label
from .lattice import LowerSetFamily, enumerate_lower_sets, permute_mask

Systems = Union[Iterable[int], SystemSet, str]


def _systems(systems: Systems, n: int) -> Tuple[int, ...]:
    if systems == "all":
        return tuple(range(1, n + 1))
    if isinstance(systems, SystemSet):
        out = systems.members
    elif isinstance(systems, int):
        out = (systems,)
    else:
        out = tuple(sorted(set(systems)))
    if not out:
        raise ValueError("at least one system is required")
    for i in out:
        if not 1 <= i <= n:
            raise ValueError(f"system {i} out of range 1..{n}")
    return out


# ---------------------------------------------------------------------------
# single-system cone


@lru_cache(maxsize=None)
def facet_lower_sets(i: int, n: int) -> Tuple[LowerSetFamily, ...]:
    """The lower sets indexing the inequality rows of :func:`single_system_facets`."""
    return tuple(L for L in enumerate_lower_sets(i, n) if not L.is_empty() and not L.is_full())


@lru_cache(maxsize=None)
def single_system_facets(i: int, n: int) -> HRep:
    """Facets of the cone of formulas monotone under processing of ``i``.

    One inequality per lower set of ``P_i(N)`` other than the empty one (the
    trivial ``0 >= 0``) and the full one (its inequality is absorbed by the
    balance equality), followed by the balance equality itself.
    """
    check_n(n)
    if n > 6:
        raise ValueError(f"facet construction supports n <= 6, got n={n}")
    rows = tuple(L.indicator().coeffs for L in facet_lower_sets(i, n))
    full = LowerSetFamily(i, n, (1 << (1 << (n - 1))) - 1).indicator().coeffs
    return HRep((1 << n) - 1, rows, (full,), n=n, name=f"M_{{{i}}} n={n}")


def monotonicity_cone(systems: Systems, n: int) -> HRep:
    """Formulas monotone under local processing of every listed system."""
    check_n(n)
    sys = _systems(systems, n)
    ineq, eq = [], []
    for i in sys:
        h = single_system_facets(i, n)
        ineq.extend(h.inequalities)
        eq.extend(h.equalities)
    label = ",".join(map(str, sys))
    return HRep((1 << n) - 1, tuple(ineq), tuple(eq), n=n, name=f"M_{{{label}}} n={n}")


@dataclass(frozen=True)
class SystemVerdict:
    """Monotonicity verdict for one system.

    On violation either ``lower_set`` is the first offending lower set (its
    coefficient sum ``value`` is negative) or ``balance`` is True and
    ``value`` is the nonzero balance defect.
    """

    system: int
    satisfied: bool
    lower_set: Optional[LowerSetFamily] = None
    balance: bool = False
    value: Optional[Fraction] = None

    def __bool__(self):
        return self.satisfied

    def describe(self) -> str:
        if self.satisfied:
            return f"system {self.system}: SATISFIED"
        if self.balance:
            return f"system {self.system}: VIOLATED balance equality (sum = {self.value})"
        return f"system {self.system}: VIOLATED lower set {self.lower_set} (sum = {self.value})"


def _check_one(alpha: Functional, i: int) -> SystemVerdict:
    for L in facet_lower_sets(i, alpha.n):
        s = sum((alpha.coeffs[m - 1] for m in L.masks), Fraction(0))
        if s < 0:
            return SystemVerdict(i, False, lower_set=L, value=s)
    d = balance_defect(alpha)[i - 1]
    if d != 0:
        return SystemVerdict(i, False, balance=True, value=d)
    return SystemVerdict(i, True)


def check_monotone(alpha: Functional, systems: Systems = "all") -> List[SystemVerdict]:
    """Per-system facet check; lower sets are tested before the balance equality."""
    return [_check_one(alpha, i) for i in _systems(systems, alpha.n)]


def is_monotone(alpha: Functional, systems: Systems = "all") -> bool:
    return all(check_monotone(alpha, systems))


def balance_defect(alpha: Functional) -> Tuple[Fraction, ...]:
    """Component ``i`` is the sum of ``alpha_I`` over subsets ``I`` containing ``i``."""
    out = []
    for i in range(alpha.n):
        bit = 1 << i
        out.append(sum((c for m, c in alpha.terms() if m & bit), Fraction(0)))
    return tuple(out)


def is_balanced(alpha: Functional) -> bool:
    return not any(balance_defect(alpha))


# ---------------------------------------------------------------------------
# generators and decompositions


@lru_cache(maxsize=None)
def generator_keys(i: int, n: int) -> Tuple[Tuple[int, int], ...]:
    """Keys ``(j, I)`` (``I`` a mask avoiding ``i``, possibly empty; ``j`` a
    system outside ``I ∪ {i}``) of the difference generators."""
    anchor = 1 << (i - 1)
    keys = []
    for rest in range(1 << n):
        if rest & anchor:
            continue
        for j in range(1, n + 1):
            b = 1 << (j - 1)
            if b != anchor and not rest & b:
                keys.append((j, rest))
    keys.sort(key=lambda k: (k[1], k[0]))
    return tuple(keys)


@lru_cache(maxsize=None)
def generator_set(i: int, n: int) -> VRep:
    """Generators of the single-system cone for ``i``.

    Rays are ``e_{i∪I} - e_{i∪I∪{j}}`` (indexed by :func:`generator_keys`),
    and the lineality space is spanned by ``e_K`` for every ``K`` avoiding
    ``i``. For n systems there are ``(n-1)·2^(n-2)`` rays and ``2^(n-1) - 1``
    lineality vectors.
    """
    check_n(n)
    anchor = 1 << (i - 1)
    rays = []
    for j, rest in generator_keys(i, n):
        lo = anchor | rest
        rays.append(Functional.from_masks(n, {lo: 1, lo | 1 << (j - 1): -1}).coeffs)
    lin = [Functional.from_masks(n, {m: 1}).coeffs for m in range(1, 1 << n) if not m & anchor]
    return VRep((1 << n) - 1, tuple(rays), tuple(lin), n=n, name=f"R_{{{i}}} n={n}")


@dataclass(frozen=True)
class DecompositionCertificate:
    """``alpha = -sum v[j,I]·S(j | anchor ∪ I) + sum w[K]·S(K)`` with ``v >= 0``.

    Keys of ``v`` are ``(j, I_mask)`` with ``I`` avoiding the anchor; keys of
    ``w`` are masks avoiding the anchor.
    """

    anchor: int
    n: int
    v: Dict[Tuple[int, int], Fraction]
    w: Dict[int, Fraction]

    def reconstruct(self) -> Functional:
        anchor = 1 << (self.anchor - 1)
        terms: Dict[int, Fraction] = {}
        for (j, rest), c in self.v.items():
            lo = anchor | rest
            terms[lo] = terms.get(lo, 0) + c
            hi = lo | 1 << (j - 1)
            terms[hi] = terms.get(hi, 0) - c
        for m, c in self.w.items():
            terms[m] = terms.get(m, 0) + c
        return Functional.from_masks(self.n, terms)

    def verify(self, alpha: Functional) -> bool:
        anchor = 1 << (self.anchor - 1)
        return (
            all(c >= 0 for c in self.v.values())
            and all(not m & anchor for m in self.w)
            and all(not rest & anchor and not rest & 1 << (j - 1) and j != self.anchor
                    for j, rest in self.v)
            and self.reconstruct() == alpha
        )

    def to_json(self) -> dict:
        return {
            "type": "decomposition",
            "system": self.anchor,
            "n": self.n,
            "v": [{"j": j, "I": list(members_of(rest)), "value": str(c)}
                  for (j, rest), c in sorted(self.v.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
            "w": {subset_label(m): str(c) for m, c in sorted(self.w.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "DecompositionCertificate":
        from .functional import mask_of, parse_label

        v = {(int(e["j"]), mask_of(e["I"])): Fraction(e["value"]) for e in data["v"]}
        w = {parse_label(k): Fraction(c) for k, c in data["w"].items()}
        return cls(int(data["system"]), int(data["n"]), v, w)


def decompose_monotone(alpha: Functional, i: int) -> DecompositionCertificate:
    """Exact certificate that ``alpha`` is monotone under processing of ``i``."""
    verdict = _check_one(alpha, i) if 1 <= i <= alpha.n else None
    if verdict is None:
        raise ValueError(f"system {i} out of range 1..{alpha.n}")
    if not verdict:
        raise NotAMonotone(verdict.describe(), verdict)
    gens = generator_set(i, alpha.n)
    res = solve_nonneg_combination(gens, alpha)
    if not isinstance(res, NonNegCombination):
        # facets and generators form a DD pair, so this is unreachable
        raise NotAMonotone(f"system {i}: no nonnegative generator combination", verdict)
    keys = generator_keys(i, alpha.n)
    lin_masks = [m for m in range(1, 1 << alpha.n) if not m & (1 << (i - 1))]
    cert = DecompositionCertificate(
        i, alpha.n,
        {keys[k]: c for k, c in res.gamma.items()},
        {lin_masks[k]: c for k, c in res.lineality_coeffs.items()},
    )
    assert cert.verify(alpha)
    return cert


def lift_partial_trace(alpha: Functional, i: int) -> Functional:
    """The functional ``sum_{I∋i} alpha_I (e_{I∪{n+1}} - e_I)`` on ``n+1`` systems.

    System ``n+1`` is an auxiliary part of ``i``. On an entropy vector the
    value is ``f(aux held by i) - f(aux discarded)``; ``alpha`` is monotone
    under processing of ``i`` iff it never goes negative.
    """
    n = alpha.n
    if not 1 <= i <= n:
        raise ValueError(f"system {i} out of range 1..{n}")
    aux = 1 << n
    bit = 1 << (i - 1)
    terms: Dict[int, Fraction] = {}
    for m, c in alpha.terms():
        if m & bit:
            terms[m | aux] = terms.get(m | aux, 0) + c
            terms[m] = terms.get(m, 0) - c
    return Functional.from_masks(n + 1, terms)


# ---------------------------------------------------------------------------
# symmetric cone


@dataclass(frozen=True)
class SymmetricVector:
    """``a[k-1]`` is the common coefficient of every ``k``-element subset."""

    n: int
    a: Tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        if len(a) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(a)}")
        object.__setattr__(self, "a", a)


def _check_sym_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"symmetric cone needs n >= 2, got {n!r}")


def symmetric_facets(n: int) -> HRep:
    """Rows ``sum_{j<=k} C(n-1, j-1) a_j >= 0`` for ``k < n`` and ``= 0`` for ``k = n``."""
    _check_sym_n(n)
    rows = [tuple(comb(n - 1, j) if j < k else 0 for j in range(n)) for k in range(1, n + 1)]
    return HRep(n, tuple(rows[:-1]), (rows[-1],), name=f"symmetric monotonicity cone n={n}")


def symmetric_generators(n: int) -> VRep:
    """``n-1`` rays; ray ``l`` has ``a_l = 1/l`` and ``a_{l+1} = -1/(n-l)``."""
    _check_sym_n(n)
    rays = []
    for l in range(1, n):
        a = [Fraction(0)] * n
        a[l - 1] = Fraction(1, l)
        a[l] = Fraction(-1, n - l)
        rays.append(tuple(a))
    return VRep(n, tuple(rays), name=f"symmetric monotonicity cone n={n}")


def embed_symmetric(s: Union[SymmetricVector, Sequence]) -> Functional:
    """Full functional with ``alpha_I = a_{|I|}``."""
    if not isinstance(s, SymmetricVector):
        s = SymmetricVector(len(s), tuple(s))
    check_n(s.n)
    return Functional(s.n, tuple(s.a[bin(m).count("1") - 1] for m in range(1, 1 << s.n)))


def symmetrize(alpha: Functional) -> SymmetricVector:
    """Inverse of :func:`embed_symmetric` for permutation-invariant functionals."""
    a = [None] * alpha.n
    for m in range(1, 1 << alpha.n):
        k = bin(m).count("1") - 1
        c = alpha.coeffs[m - 1]
        if a[k] is None:
            a[k] = c
        elif a[k] != c:
            raise ValueError("functional is not permutation invariant")
    return SymmetricVector(alpha.n, tuple(a))


# ---------------------------------------------------------------------------
# ray enumeration


@dataclass(frozen=True)
class Orbit:
    representative: Tuple[int, ...]
    members: Tuple[int, ...]  # indices into the ray list

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class MonotoneRays:
    n: int
    vrep: VRep
    orbits: Optional[List[Orbit]] = None

    @property
    def rays(self) -> List[Functional]:
        return [Functional(self.n, r) for r in self.vrep.rays]


def orbit_images(ray: Sequence[int], n: int) -> List[Tuple[int, ...]]:
    """Images of an integer coordinate vector under all ``n!`` relabelings."""
    out = []
    dim = (1 << n) - 1
    for perm in permutations(range(1, n + 1)):
        v = [0] * dim
        for m in range(1, 1 << n):
            v[permute_mask(m, perm) - 1] = ray[m - 1]
        out.append(tuple(v))
    return out


def group_orbits(rays: Sequence[Sequence[int]], n: int) -> List[Orbit]:
    """Partition rays into permutation orbits.

    Each orbit's representative is the lexicographically least image; orbits
    are listed in increasing representative order.
    """
    index = {tuple(r): k for k, r in enumerate(rays)}
    seen = set()
    orbits = []
    for k, r in enumerate(rays):
        if k in seen:
            continue
        images = set(orbit_images(r, n))
        members = tuple(sorted(index[im] for im in images if im in index))
        seen.update(members)
        orbits.append(Orbit(min(images), members))
    orbits.sort(key=lambda o: o.representative)
    return orbits


def enumerate_monotone_rays(n: int, group: bool = False, **dd_kwargs) -> MonotoneRays:
    """Extreme rays of the full monotonicity cone for ``2 <= n <= 5``."""
    if not isinstance(n, int) or not 2 <= n <= 5:
        raise ValueError(f"ray enumeration supports 2 <= n <= 5, got {n!r}")
    v = dd_convert(monotonicity_cone("all", n), **dd_kwargs)
    return MonotoneRays(n, v, group_orbits(v.rays, n) if group else None)
