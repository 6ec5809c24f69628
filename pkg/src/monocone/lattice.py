"""Subsets of the system set, the posets ``P_i(N)`` and their lower sets."""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Mapping, Sequence, Tuple, Union

from .functional import Functional, SystemSet, check_n, members_of

MAX_LOWER_SET_N = 6
_BRUTE_FORCE_MAX_N = 5


def _check_anchor(i: int, n: int) -> None:
    check_n(n)
    if not isinstance(i, int) or not 1 <= i <= n:
        raise ValueError(f"system index {i!r} out of range 1..{n}")


@lru_cache(maxsize=None)
def _poset_masks(i: int, n: int) -> Tuple[int, ...]:
    bit = 1 << (i - 1)
    return tuple(m for m in range(1, 1 << n) if m & bit)


def subsets_containing(i: int, n: int) -> List[SystemSet]:
    """All subsets of ``{1..n}`` that contain ``i``, in increasing mask order."""
    _check_anchor(i, n)
    return [SystemSet(m, n) for m in _poset_masks(i, n)]


@lru_cache(maxsize=None)
def _lower_covers(i: int, n: int) -> Tuple[int, ...]:
    """For each position in ``P_i(N)``, a bitset of positions it covers."""
    masks = _poset_masks(i, n)
    pos = {m: k for k, m in enumerate(masks)}
    anchor = 1 << (i - 1)
    out = []
    for m in masks:
        cov = 0
        for j in range(n):
            b = 1 << j
            if m & b and b != anchor:
                cov |= 1 << pos[m ^ b]
        out.append(cov)
    return tuple(out)


@dataclass(frozen=True)
class LowerSetFamily:
    """A family of subsets containing ``anchor``.

    ``members`` is a bitset over positions of :func:`subsets_containing`;
    bit ``k`` set means the ``k``-th subset (increasing mask order) belongs
    to the family. Use :meth:`from_sets` to build one from explicit subsets.
    """

    anchor: int
    n: int
    members: int

    def __post_init__(self):
        _check_anchor(self.anchor, self.n)
        if not 0 <= self.members < (1 << (1 << (self.n - 1))):
            raise ValueError("member bitset out of range")

    @classmethod
    def from_sets(cls, anchor: int, n: int, sets) -> "LowerSetFamily":
        _check_anchor(anchor, n)
        pos = {m: k for k, m in enumerate(_poset_masks(anchor, n))}
        bits = 0
        for s in sets:
            m = s.mask if isinstance(s, SystemSet) else _as_mask(s)
            if m not in pos:
                raise ValueError(f"subset {members_of(m)} does not contain anchor {anchor}")
            bits |= 1 << pos[m]
        return cls(anchor, n, bits)

    @property
    def masks(self) -> Tuple[int, ...]:
        ms = _poset_masks(self.anchor, self.n)
        return tuple(m for k, m in enumerate(ms) if self.members >> k & 1)

    @property
    def sets(self) -> List[SystemSet]:
        return [SystemSet(m, self.n) for m in self.masks]

    def __contains__(self, subset) -> bool:
        m = subset.mask if isinstance(subset, SystemSet) else _as_mask(subset)
        return m in self.masks

    def __len__(self) -> int:
        return bin(self.members).count("1")

    def is_empty(self) -> bool:
        return self.members == 0

    def is_full(self) -> bool:
        return self.members == (1 << (1 << (self.n - 1))) - 1

    def complement(self) -> "LowerSetFamily":
        full = (1 << (1 << (self.n - 1))) - 1
        return LowerSetFamily(self.anchor, self.n, full & ~self.members)

    def indicator(self) -> Functional:
        return Functional.from_masks(self.n, {m: 1 for m in self.masks})

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sets) + "}"

    def to_json(self) -> dict:
        return {"anchor": self.anchor, "n": self.n, "sets": [list(s.members) for s in self.sets]}


def _as_mask(s) -> int:
    if isinstance(s, int):
        return s
    m = 0
    for k in s:
        m |= 1 << (k - 1)
    return m


def _closed(bits: int, covers: Sequence[int]) -> bool:
    k = 0
    b = bits
    while b:
        if b & 1 and covers[k] & ~bits:
            return False
        b >>= 1
        k += 1
    return True


def is_lower_set(family: LowerSetFamily) -> bool:
    """True iff ``family`` is downward closed inside ``P_anchor(N)``.

    Membership of the anchor is enforced when the family is built.
    """
    return _closed(family.members, _lower_covers(family.anchor, family.n))


def _canonical_key(bits: int) -> Tuple[int, int]:
    return bin(bits).count("1"), bits


def _brute_force_lower_sets(i: int, n: int) -> List[int]:
    covers = _lower_covers(i, n)
    size = 1 << (n - 1)
    return [b for b in range(1 << size) if _closed(b, covers)]


def _recursive_lower_sets(i: int, n: int) -> List[int]:
    # increasing mask order is a linear extension of inclusion, so an element
    # may join once every subset it covers has already joined
    covers = _lower_covers(i, n)
    size = len(covers)
    out: List[int] = []

    def extend(k: int, bits: int) -> None:
        if k == size:
            out.append(bits)
            return
        extend(k + 1, bits)
        if covers[k] & ~bits == 0:
            extend(k + 1, bits | (1 << k))

    extend(0, 0)
    return out


@lru_cache(maxsize=None)
def _lower_set_bits(i: int, n: int, method: str) -> Tuple[int, ...]:
    if method == "brute":
        found = _brute_force_lower_sets(i, n)
    else:
        found = _recursive_lower_sets(i, n)
    return tuple(sorted(found, key=_canonical_key))


def enumerate_lower_sets(i: int, n: int, method: str = "auto") -> List[LowerSetFamily]:
    """Every lower set of ``P_i(N)``, each once.

    Families are ordered by cardinality, then by member bitset value.
    ``method`` is ``"brute"`` (filter every subfamily), ``"recursive"`` or
    ``"auto"`` (brute force up to n=5, recursive for n=6).
    """
    _check_anchor(i, n)
    if n > MAX_LOWER_SET_N:
        raise ValueError(f"lower-set enumeration supports n <= {MAX_LOWER_SET_N}, got n={n}")
    if method == "auto":
        method = "brute" if n <= _BRUTE_FORCE_MAX_N else "recursive"
    if method not in ("brute", "recursive"):
        raise ValueError(f"unknown method {method!r}")
    return [LowerSetFamily(i, n, b) for b in _lower_set_bits(i, n, method)]


Permutation = Union[Sequence[int], Mapping[int, int]]


def _as_perm(sigma: Permutation, n: int) -> Tuple[int, ...]:
    """Normalize to a tuple ``p`` with ``p[k-1] = sigma(k)``."""
    if isinstance(sigma, Mapping):
        p = tuple(sigma.get(k, k) for k in range(1, n + 1))
    else:
        p = tuple(sigma)
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{n}")
    return p


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    k = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[k] - 1)
        mask >>= 1
        k += 1
    return out


def permute_functional(alpha: Functional, sigma: Permutation) -> Functional:
    """Relabel systems: the coefficient of ``sigma(I)`` becomes that of ``I``.

    ``sigma`` is either a sequence whose ``k-1``-th entry is the image of
    system ``k`` or a mapping (unmentioned systems stay fixed).
    """
    perm = _as_perm(sigma, alpha.n)
    out = [None] * alpha.dim
    for m in range(1, 1 << alpha.n):
        out[permute_mask(m, perm) - 1] = alpha.coeffs[m - 1]
    return Functional(alpha.n, tuple(out))


def compose(tau: Permutation, sigma: Permutation, n: int) -> Tuple[int, ...]:
    """The permutation ``tau ∘ sigma`` (apply sigma first)."""
    t, s = _as_perm(tau, n), _as_perm(sigma, n)
    return tuple(t[s[k] - 1] for k in range(n))


def inverse(sigma: Permutation, n: int) -> Tuple[int, ...]:
    s = _as_perm(sigma, n)
    inv = [0] * n
    for k, v in enumerate(s):
        inv[v - 1] = k + 1
    return tuple(inv)
