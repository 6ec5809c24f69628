"""Linear entropic formulas as exact coefficient vectors.

Coordinates are the nonempty subsets of ``{1..n}`` encoded as bit masks (bit
``k-1`` set iff system ``k`` is a member), ordered by increasing mask value.
Coordinate ``m - 1`` therefore holds the coefficient of the subset with mask
``m``. This ordering is a stable contract used by every file format.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .linalg import as_fraction, integerize

MAX_SYSTEMS = 16

Number = Union[int, Fraction, str]


def check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_SYSTEMS:
        raise ValueError(f"system count must be in 1..{MAX_SYSTEMS}, got {n!r}")


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for k in members:
        if k < 1:
            raise ValueError(f"system indices start at 1, got {k}")
        m |= 1 << (k - 1)
    return m


def members_of(mask: int) -> Tuple[int, ...]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def subset_label(mask: int) -> str:
    return ",".join(map(str, members_of(mask)))


def parse_label(label: str) -> int:
    label = label.strip().strip("{}[]()")
    return mask_of(int(tok) for tok in label.replace(" ", "").split(",") if tok)


@dataclass(frozen=True)
class SystemSet:
    """A subset of ``{1..n}`` stored as a bit mask."""

    mask: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for n={self.n}")

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> "SystemSet":
        return cls(mask_of(members), n)

    @property
    def members(self) -> Tuple[int, ...]:
        return members_of(self.mask)

    def __contains__(self, k: int) -> bool:
        return bool(self.mask >> (k - 1) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __str__(self) -> str:
        return "{" + subset_label(self.mask) + "}"


@dataclass(frozen=True)
class Functional:
    """Coefficient vector ``alpha`` of the formula ``sum_I alpha_I S(I)``."""

    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        check_n(self.n)
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        if len(coeffs) != (1 << self.n) - 1:
            raise ValueError(
                f"expected {(1 << self.n) - 1} coefficients for n={self.n}, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Functional":
        return cls(n, (Fraction(0),) * ((1 << n) - 1))

    @classmethod
    def from_masks(cls, n: int, terms: Mapping[int, Number]) -> "Functional":
        v = [Fraction(0)] * ((1 << n) - 1)
        for mask, c in terms.items():
            if not 0 < mask < (1 << n):
                raise ValueError(f"subset mask {mask} invalid for n={n}")
            v[mask - 1] += as_fraction(c)
        return cls(n, tuple(v))

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Iterable[int], Number]) -> "Functional":
        """Build from ``{(1, 2): 1, (1,): -1, ...}`` style subset keys."""
        return cls.from_masks(n, {_key_mask(k): c for k, c in terms.items()})

    @classmethod
    def unit(cls, n: int, members: Iterable[int]) -> "Functional":
        return cls.from_masks(n, {mask_of(members): 1})

    # access ---------------------------------------------------------------
    def __getitem__(self, subset) -> Fraction:
        m = _key_mask(subset)
        if not 0 < m < 1 << self.n:
            raise KeyError(f"{subset!r} is not a nonempty subset of 1..{self.n}")
        return self.coeffs[m - 1]

    def terms(self) -> Iterator[Tuple[int, Fraction]]:
        """Nonzero ``(mask, coefficient)`` pairs in coordinate order."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield i + 1, c

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "Functional") -> "Functional":
        _same_n(self, other)
        return Functional(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Functional") -> "Functional":
        _same_n(self, other)
        return Functional(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Functional":
        return Functional(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, c) -> "Functional":
        c = as_fraction(c)
        return Functional(self.n, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, values: Sequence) -> Fraction:
        if len(values) != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {len(values)}")
        return sum((a * b for a, b in zip(self.coeffs, values) if a), Fraction(0))

    # canonical forms ------------------------------------------------------
    def canonical(self) -> Tuple[int, ...]:
        """Positive rescaling to coprime integers; identifies rays."""
        return integerize(self.coeffs)

    def normalized(self) -> "Functional":
        return Functional(self.n, self.canonical())

    def is_positive_multiple_of(self, other: "Functional") -> bool:
        return self.n == other.n and not self.is_zero() and self.canonical() == other.canonical()

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": {subset_label(m): str(c) for m, c in self.terms()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Functional":
        n = int(data["n"])
        return cls.from_masks(n, {parse_label(k): Fraction(v) for k, v in data["coeffs"].items()})

    def pretty(self, symbol: str = "S") -> str:
        """Human readable form such as ``S(1) + S(2) - S(12)``."""
        parts = []
        for mask, c in self.terms():
            name = f"{symbol}({''.join(map(str, members_of(mask))) if self.n < 10 else subset_label(mask)})"
            mag = abs(c)
            if mag == 1:
                term = name
            else:
                term = f"{mag}{name}" if mag.denominator == 1 else f"({mag}){name}"
            parts.append(("- " if c < 0 else "+ ") + term)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self) -> str:
        return self.pretty()


def _key_mask(key) -> int:
    if isinstance(key, SystemSet):
        return key.mask
    if isinstance(key, int):
        return mask_of([key])
    if isinstance(key, str):
        return parse_label(key)
    return mask_of(key)


def _same_n(a: Functional, b: Functional) -> None:
    if a.n != b.n:
        raise ValueError(f"system count mismatch: {a.n} vs {b.n}")


def entropy_coordinates(n: int) -> Dict[int, int]:
    """Map subset mask to coordinate index."""
    return {m: m - 1 for m in range(1, 1 << n)}
