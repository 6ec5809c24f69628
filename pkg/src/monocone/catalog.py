"""Named entropic formulas, built from conditional information terms."""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Tuple

from .functional import Functional, mask_of


def conditional_entropy(targets: Iterable[int], given: Iterable[int], n: int) -> Functional:
    """``S(targets | given) = S(targets ∪ given) - S(given)``."""
    t, g = mask_of(targets), mask_of(given)
    if not t or t & g:
        raise ValueError("targets must be nonempty and disjoint from the conditioning set")
    terms = {t | g: 1}
    if g:
        terms[g] = -1
    return Functional.from_masks(n, terms)


def conditional_mutual_information(i, j, K: Iterable[int], n: int) -> Functional:
    """``I(i;j|K) = S(iK) + S(jK) - S(K) - S(ijK)``; ``i`` and ``j`` may be
    single systems or collections of systems."""
    a = mask_of([i] if isinstance(i, int) else i)
    b = mask_of([j] if isinstance(j, int) else j)
    k = mask_of(K)
    if not a or not b or a & b or (a | b) & k:
        raise ValueError("I(A;B|K) needs nonempty disjoint A, B and K disjoint from both")
    if (a | b | k) >= 1 << n:
        raise ValueError(f"systems out of range for n={n}")
    terms: Dict[int, int] = {}
    for m, c in ((a | k, 1), (b | k, 1), (k, -1), (a | b | k, -1)):
        if m:
            terms[m] = terms.get(m, 0) + c
    return Functional.from_masks(n, terms)


def mutual_information(i, j, n: int) -> Functional:
    return conditional_mutual_information(i, j, (), n)


def dual_total_correlation3() -> Functional:
    """``J(1;2;3) = S(12) + S(23) + S(13) - 2 S(123)``, built as
    ``I(1;23) + I(2;3|1)``."""
    return mutual_information(1, (2, 3), 3) + conditional_mutual_information(2, 3, (1,), 3)


def u_monotone4() -> Functional:
    """``U(1;2;3;4) = S(12) + S(34) + S(13) - S(123) - S(134)``, built as
    ``I(2;3|1) + I(1;34)``."""
    return conditional_mutual_information(2, 3, (1,), 4) + mutual_information(1, (3, 4), 4)


def zhang_yeung4() -> Functional:
    """``2I(1;2|3) + I(1;3|2) + I(2;3|1) + I(1;2|4) + I(3;4) - I(1;2)``."""
    n = 4
    cmi = conditional_mutual_information
    return (2 * cmi(1, 2, (3,), n) + cmi(1, 3, (2,), n) + cmi(2, 3, (1,), n)
            + cmi(1, 2, (4,), n) + mutual_information(3, 4, n) - mutual_information(1, 2, n))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    description: str
    build: Callable[[], Functional]

    @property
    def functional(self) -> Functional:
        return self.build()


CATALOG: Dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("mutual-information", 2, "I(1;2) = S(1) + S(2) - S(12)",
                     lambda: mutual_information(1, 2, 2)),
        CatalogEntry("dual-total-correlation", 3, "J(1;2;3) = S(12) + S(23) + S(13) - 2S(123)",
                     dual_total_correlation3),
        CatalogEntry("u-monotone", 4, "U(1;2;3;4) = S(12) + S(34) + S(13) - S(123) - S(134)",
                     u_monotone4),
        CatalogEntry("zhang-yeung", 4,
                     "2I(1;2|3) + I(1;3|2) + I(2;3|1) + I(1;2|4) + I(3;4) - I(1;2)",
                     zhang_yeung4),
    )
}


def lookup(name: str) -> Functional:
    try:
        return CATALOG[name].functional
    except KeyError:
        raise KeyError(f"unknown catalog formula {name!r}; known: {', '.join(CATALOG)}") from None


def identify(alpha: Functional) -> Tuple[str, ...]:
    """Catalog names whose formula is a positive multiple of a relabeling of
    ``alpha`` (same system count only)."""
    from itertools import permutations

    from .lattice import permute_functional

    target = alpha.canonical()
    hits = []
    for e in CATALOG.values():
        if e.n != alpha.n:
            continue
        f = e.functional
        if any(permute_functional(f, p).canonical() == target
               for p in permutations(range(1, alpha.n + 1))):
            hits.append(e.name)
    return tuple(hits)
