"""Classical distributions that witness facets and monotonicity violations.

Entropies are in bits. When every marginal probability is a power of 1/2 the
entropy vector is an exact rational; otherwise it is computed with mpmath at
a configurable precision and flagged inexact.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import mpmath

from .errors import CertificateError, DimensionMismatch
from .functional import Functional, members_of, subset_label
from .lattice import LowerSetFamily, is_lower_set
from .monotonicity import (
    Systems,
    _systems,
    check_monotone,
    lift_partial_trace,
)

DEFAULT_PRECISION_BITS = 64


@dataclass(frozen=True)
class JointDistribution:
    """Finite joint distribution of labelled variables.

    ``atoms`` maps outcome tuples (one integer per variable, each below its
    cardinality) to positive probabilities summing to one.
    """

    variables: Tuple[int, ...]
    cardinalities: Tuple[int, ...]
    atoms: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if len(self.variables) != len(self.cardinalities):
            raise ValueError("one cardinality per variable is required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable labels")
        seen = set()
        total = Fraction(0)
        atoms = []
        for outcome, p in self.atoms:
            outcome = tuple(int(x) for x in outcome)
            p = Fraction(p)
            if len(outcome) != len(self.variables):
                raise ValueError(f"outcome {outcome} has wrong length")
            if any(not 0 <= x < c for x, c in zip(outcome, self.cardinalities)):
                raise ValueError(f"outcome {outcome} outside the cardinalities")
            if p <= 0:
                raise ValueError("atom probabilities must be positive")
            if outcome in seen:
                raise ValueError(f"duplicate outcome {outcome}")
            seen.add(outcome)
            total += p
            atoms.append((outcome, p))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "atoms", tuple(atoms))

    @classmethod
    def from_samples(cls, variables, cardinalities, outcomes) -> "JointDistribution":
        """Uniform distribution over a list of (possibly repeated) outcomes."""
        weights: Dict[Tuple[int, ...], Fraction] = {}
        w = Fraction(1, len(outcomes))
        for o in outcomes:
            o = tuple(o)
            weights[o] = weights.get(o, 0) + w
        return cls(tuple(variables), tuple(cardinalities), tuple(sorted(weights.items())))

    def marginal(self, positions: Sequence[int]) -> Dict[Tuple[int, ...], Fraction]:
        out: Dict[Tuple[int, ...], Fraction] = {}
        for outcome, p in self.atoms:
            key = tuple(outcome[k] for k in positions)
            out[key] = out.get(key, 0) + p
        return out

    def relabel(self, variables: Sequence[int]) -> "JointDistribution":
        return JointDistribution(tuple(variables), self.cardinalities, self.atoms)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "cardinalities": list(self.cardinalities),
            "atoms": [{"outcome": list(o), "p": str(p)} for o, p in self.atoms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "JointDistribution":
        return cls(
            tuple(int(v) for v in data["variables"]),
            tuple(int(c) for c in data["cardinalities"]),
            tuple((tuple(a["outcome"]), Fraction(a["p"])) for a in data["atoms"]),
        )


@dataclass(frozen=True)
class EntropyVector:
    """Joint entropies ``H(X_I)`` (bits) for every nonempty subset, in
    coordinate order. ``exact`` is False when values are mpmath floats."""

    n: int
    values: Tuple[Union[Fraction, "mpmath.mpf"], ...]
    exact: bool = True

    def __getitem__(self, members) -> Union[Fraction, "mpmath.mpf"]:
        if isinstance(members, int):
            members = (members,)
        m = 0
        for k in members:
            m |= 1 << (k - 1)
        return self.values[m - 1]

    def conditional(self, target: Sequence[int], given: Sequence[int]):
        """``H(target | given)``."""
        joint = self[tuple(set(target) | set(given))]
        return joint - (self[tuple(given)] if given else 0)

    def merge_into(self, aux: int, host: int) -> "EntropyVector":
        """Entropy vector after variable ``aux`` is absorbed into ``host``.

        The result has one fewer system; ``aux`` must be the last system.
        """
        if aux != self.n:
            raise ValueError("only the last system can be merged")
        n = self.n - 1
        hb = 1 << (host - 1)
        ab = 1 << (aux - 1)
        vals = tuple(self.values[(m | ab if m & hb else m) - 1] for m in range(1, 1 << n))
        return EntropyVector(n, vals, self.exact)

    def drop_last(self) -> "EntropyVector":
        n = self.n - 1
        return EntropyVector(n, self.values[: (1 << n) - 1], self.exact)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exact": self.exact,
            "values": {subset_label(m): str(v) for m, v in zip(range(1, 1 << self.n), self.values)},
        }


def _dyadic_exponent(p: Fraction) -> Optional[int]:
    if p.numerator != 1:
        return None
    d = p.denominator
    if d & (d - 1):
        return None
    return d.bit_length() - 1


def shannon_entropy_vector(d: JointDistribution,
                           precision_bits: int = DEFAULT_PRECISION_BITS) -> EntropyVector:
    """All joint entropies of ``d``; systems are numbered by position (1-based)."""
    nv = len(d.variables)
    marginals = [d.marginal(members_of(m) and [k - 1 for k in members_of(m)])
                 for m in range(1, 1 << nv)]
    exps = [[_dyadic_exponent(p) for p in marg.values()] for marg in marginals]
    if all(e is not None for es in exps for e in es):
        vals = tuple(
            sum((p * e for p, e in zip(marg.values(), es)), Fraction(0))
            for marg, es in zip(marginals, exps)
        )
        return EntropyVector(nv, vals, True)
    with mpmath.workprec(precision_bits):
        vals = []
        for marg in marginals:
            h = mpmath.mpf(0)
            for p in marg.values():
                q = mpmath.mpf(p.numerator) / p.denominator
                h -= q * mpmath.log(q, 2)
            vals.append(+h)
    return EntropyVector(nv, tuple(vals), False)


def evaluate(alpha: Functional, s: EntropyVector):
    """``alpha · H``: a Fraction for exact vectors, an mpf otherwise."""
    if alpha.n != s.n:
        raise DimensionMismatch(f"functional has n={alpha.n}, entropy vector n={s.n}")
    if s.exact:
        return sum((c * s.values[m - 1] for m, c in alpha.terms()), Fraction(0))
    return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * s.values[m - 1]
                       for m, c in alpha.terms())


# ---------------------------------------------------------------------------
# witnesses


def _minimal_sets(masks: Sequence[int]) -> List[int]:
    return sorted(m for m in masks if not any(o != m and o & m == o for o in masks))


def facet_witness_distribution(L: LowerSetFamily) -> JointDistribution:
    """Distribution on ``n+1`` variables whose conditional entropies of the
    auxiliary variable ``n+1`` follow the lower set: ``H(aux | X_I) = 1`` for
    ``I`` in ``L`` and ``0`` for the rest of ``P_i(N)``.

    ``X_i`` is constant and the auxiliary variable is a uniform secret bit.
    The remaining variables hold XOR shares of the secret: for every minimal
    qualified set ``M`` (a minimal ``J \\ {i}`` with ``J`` outside ``L``) the
    secret is split into ``|M|`` fresh shares, one per member.
    """
    if not is_lower_set(L):
        raise ValueError(f"{L} is not a lower set")
    if L.is_empty() or L.is_full():
        raise ValueError("the empty and the full lower set have no facet to witness")
    n, i = L.n, L.anchor
    anchor = 1 << (i - 1)
    qualified = [m & ~anchor for m in L.complement().masks]
    minimal = _minimal_sets(qualified)
    # share slots: (variable, position) for each minimal set member
    holders: Dict[int, List[Tuple[int, int]]] = {k: [] for k in range(1, n + 1)}
    nfree = 0  # free random bits besides the secret
    layout = []
    for M in minimal:
        mem = members_of(M)
        layout.append((mem, nfree))
        nfree += len(mem) - 1
    for idx, (mem, _) in enumerate(layout):
        for slot, k in enumerate(mem):
            holders[k].append((idx, slot))
    cards = [1 << len(holders[k]) for k in range(1, n + 1)] + [2]
    outcomes = []
    for bits in product((0, 1), repeat=1 + nfree):
        secret, rnd = bits[0], bits[1:]
        shares = []
        for mem, off in layout:
            r = list(rnd[off: off + len(mem) - 1])
            last = secret
            for x in r:
                last ^= x
            shares.append(r + [last])
        row = []
        for k in range(1, n + 1):
            value = 0
            for pos, (idx, slot) in enumerate(holders[k]):
                value |= shares[idx][slot] << pos
            row.append(value)
        row.append(secret)
        outcomes.append(tuple(row))
    return JointDistribution.from_samples(range(1, n + 2), cards, outcomes)


def balance_witness(i: int, n: int) -> Tuple[JointDistribution, JointDistribution]:
    """Product distributions differing only in ``X_i``: constant, then a
    uniform bit. The other variables are independent uniform bits in both.

    For any formula the value on the second minus the value on the first is
    the balance defect of system ``i``.
    """
    if not 1 <= i <= n:
        raise ValueError(f"system {i} out of range 1..{n}")
    others = n - 1
    low_cards = tuple(1 if k == i else 2 for k in range(1, n + 1))
    high_cards = (2,) * n
    low, high = [], []
    for bits in product((0, 1), repeat=others + 1):
        rest = list(bits[:others])
        low_row = rest[: i - 1] + [0] + rest[i - 1:]
        high_row = rest[: i - 1] + [bits[-1]] + rest[i - 1:]
        low.append(tuple(low_row))
        high.append(tuple(high_row))
    vars_ = tuple(range(1, n + 1))
    return (JointDistribution.from_samples(vars_, low_cards, low),
            JointDistribution.from_samples(vars_, high_cards, high))


def randomness_witness(i: int, n: int) -> JointDistribution:
    """``n+1`` variables: ``X_i`` constant, auxiliary an independent uniform
    bit, the rest independent uniform bits. Merging the auxiliary into ``i``
    and discarding it reproduces the two halves of :func:`balance_witness`."""
    low, _ = balance_witness(i, n)
    outcomes = []
    for o, _p in low.atoms:
        for b in (0, 1):
            outcomes.append(o + (b,))
    return JointDistribution.from_samples(range(1, n + 2), low.cardinalities + (2,), outcomes)


@dataclass(frozen=True)
class ViolationCertificate:
    """A local operation on ``system`` that increases the formula.

    ``witness`` is a distribution over ``n+1`` variables, the last being an
    auxiliary part of ``system``. ``operation`` says which way the local map
    goes:

    * ``"discard"``: before, the system holds the auxiliary part; after, it
      is traced out. Valid iff the lifted value ``f(before) - f(after)`` is
      negative.
    * ``"randomize"``: before, the auxiliary bit is absent; after, the system
      appends it as fresh local randomness. Valid iff the lifted value is
      positive.
    """

    alpha: Functional
    system: int
    operation: str
    witness: JointDistribution
    lower_set: Optional[LowerSetFamily]
    before: EntropyVector
    after: EntropyVector
    f_before: Fraction
    f_after: Fraction

    def verify(self) -> bool:
        """Re-derive everything from the raw distribution."""
        h = shannon_entropy_vector(self.witness)
        if not h.exact or h.n != self.alpha.n + 1:
            return False
        merged = h.merge_into(h.n, self.system)
        dropped = h.drop_last()
        lifted = evaluate(lift_partial_trace(self.alpha, self.system), h)
        if self.operation == "discard":
            before, after = merged, dropped
            ok = lifted < 0
        elif self.operation == "randomize":
            before, after = dropped, merged
            ok = lifted > 0
        else:
            return False
        fb, fa = evaluate(self.alpha, before), evaluate(self.alpha, after)
        return (
            ok
            and fa > fb
            and fa - fb == abs(lifted)
            and before == self.before
            and after == self.after
            and (fb, fa) == (self.f_before, self.f_after)
        )

    def to_json(self) -> dict:
        return {
            "type": "violation",
            "functional": self.alpha.to_json(),
            "system": self.system,
            "operation": self.operation,
            "lower_set": self.lower_set.to_json() if self.lower_set else None,
            "distribution": self.witness.to_json(),
            "entropy_before": self.before.to_json(),
            "entropy_after": self.after.to_json(),
            "f_before": str(self.f_before),
            "f_after": str(self.f_after),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ViolationCertificate":
        """Rebuild from JSON; entropy vectors are recomputed from the
        distribution, so :meth:`verify` checks the stored values against
        fresh ones."""
        alpha = Functional.from_json(data["functional"])
        i = int(data["system"])
        witness = JointDistribution.from_json(data["distribution"])
        L = None
        if data.get("lower_set"):
            ls = data["lower_set"]
            L = LowerSetFamily.from_sets(int(ls["anchor"]), int(ls["n"]), ls["sets"])

        def vec(d):
            n = int(d["n"])
            vals = {k: Fraction(v) for k, v in d["values"].items()}
            return EntropyVector(n, tuple(vals[subset_label(m)] for m in range(1, 1 << n)), True)

        return cls(alpha, i, data["operation"], witness, L,
                   vec(data["entropy_before"]), vec(data["entropy_after"]),
                   Fraction(data["f_before"]), Fraction(data["f_after"]))


def _package(alpha: Functional, i: int, operation: str, witness: JointDistribution,
             L: Optional[LowerSetFamily]) -> ViolationCertificate:
    h = shannon_entropy_vector(witness)
    merged, dropped = h.merge_into(h.n, i), h.drop_last()
    before, after = (merged, dropped) if operation == "discard" else (dropped, merged)
    cert = ViolationCertificate(alpha, i, operation, witness, L, before, after,
                                evaluate(alpha, before), evaluate(alpha, after))
    if not cert.verify():
        raise CertificateError(f"violation certificate for system {i} failed re-verification")
    return cert


def violation_certificate(alpha: Functional, systems: Systems = "all"
                          ) -> Optional[ViolationCertificate]:
    """Certificate for the first requested system under which ``alpha`` is
    not monotone, or None if it is monotone for all of them."""
    for verdict in check_monotone(alpha, systems):
        if verdict:
            continue
        i = verdict.system
        if verdict.lower_set is not None:
            return _package(alpha, i, "discard", facet_witness_distribution(verdict.lower_set),
                            verdict.lower_set)
        # balance only: fresh randomness raises f when the defect is
        # positive; erasing it raises f when negative
        op = "randomize" if verdict.value > 0 else "discard"
        return _package(alpha, i, op, randomness_witness(i, alpha.n), None)
    return None


def violation_certificates(alpha: Functional, systems: Systems = "all"
                           ) -> List[ViolationCertificate]:
    """One certificate per violated system."""
    out = []
    for i in _systems(systems, alpha.n):
        c = violation_certificate(alpha, [i])
        if c is not None:
            out.append(c)
    return out
