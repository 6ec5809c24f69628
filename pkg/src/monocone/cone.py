"""Exact polyhedral cones: H- and V-representations and conversions between them.

An :class:`HRep` describes ``{x : A x >= 0, E x = 0}``; a :class:`VRep`
describes ``{R g + L t : g >= 0}``. All arithmetic is over ``Fraction`` /
``int``. :func:`dd_convert` is an incremental double description method
(Motzkin et al.) working on the pointed part of the cone.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import _kernels, linalg
from .errors import DimensionMismatch, ResourceLimitExceeded
from .functional import Functional
from .linalg import as_fraction, integerize, primitive
from .lp import phase_one

log = logging.getLogger(__name__)

DEFAULT_MAX_RAYS = 10 ** 6

Row = Tuple[Fraction, ...]


def _row(v, dim: Optional[int] = None) -> Row:
    if isinstance(v, Functional):
        v = v.coeffs
    r = tuple(as_fraction(x) for x in v)
    if dim is not None and len(r) != dim:
        raise DimensionMismatch(f"expected a row of length {dim}, got {len(r)}")
    return r


@dataclass(frozen=True)
class HRep:
    """Halfspace description: every inequality row ``a`` means ``a·x >= 0``
    and every equality row ``e`` means ``e·x = 0``."""

    dim: int
    inequalities: Tuple[Row, ...] = ()
    equalities: Tuple[Row, ...] = ()
    n: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        ineq = tuple(_row(r, self.dim) for r in self.inequalities)
        eq = tuple(_row(r, self.dim) for r in self.equalities)
        for r in ineq + eq:
            if not any(r):
                raise ValueError("zero rows are not allowed in an HRep")
        object.__setattr__(self, "inequalities", ineq)
        object.__setattr__(self, "equalities", eq)

    @property
    def rows(self) -> Tuple[Row, ...]:
        return self.inequalities + self.equalities


@dataclass(frozen=True)
class VRep:
    """Generator description: nonnegative combinations of ``rays`` plus the
    linear span of ``lineality``.

    Rays are kept at the scaling they were given; :func:`dd_convert` always
    returns them as coprime integer vectors.
    """

    dim: int
    rays: Tuple[Row, ...] = ()
    lineality: Tuple[Row, ...] = ()
    n: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(_row(r, self.dim) for r in self.rays))
        object.__setattr__(self, "lineality", tuple(_row(r, self.dim) for r in self.lineality))

    def canonical_rays(self) -> List[Tuple[int, ...]]:
        return sorted({integerize(r) for r in self.rays if any(r)})

    def functionals(self) -> List[Functional]:
        if self.n is None:
            raise ValueError("VRep has no system count attached")
        return [Functional(self.n, r) for r in self.rays]


@dataclass(frozen=True)
class Membership:
    """Outcome of :func:`contains`. ``kind`` is ``"inequality"`` or
    ``"equality"`` for a violation, ``None`` when satisfied."""

    satisfied: bool
    kind: Optional[str] = None
    index: Optional[int] = None
    row: Optional[Row] = None
    value: Optional[Fraction] = None

    def __bool__(self):
        return self.satisfied


def _check_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimension mismatch: {a} vs {b}")


def _vec(x) -> Row:
    return x.coeffs if isinstance(x, Functional) else tuple(as_fraction(v) for v in x)


def contains(h: HRep, alpha) -> Membership:
    """Check every row of ``h`` at ``alpha``; inequalities first, then equalities."""
    x = _vec(alpha)
    _check_dim(h.dim, len(x))
    for k, r in enumerate(h.inequalities):
        v = linalg.dot(r, x)
        if v < 0:
            return Membership(False, "inequality", k, r, Fraction(v))
    for k, r in enumerate(h.equalities):
        v = linalg.dot(r, x)
        if v != 0:
            return Membership(False, "equality", k, r, Fraction(v))
    return Membership(True)


def is_extremal(h: HRep, r) -> bool:
    """Rank test: the equalities together with the inequalities tight at ``r``
    must have rank ``dim - 1``. Meaningful for pointed cones."""
    x = _vec(r)
    _check_dim(h.dim, len(x))
    if not any(x):
        raise ValueError("the zero vector is not a ray")
    if not contains(h, x):
        raise ValueError("vector is not in the cone")
    tight = list(h.equalities) + [a for a in h.inequalities if linalg.dot(a, x) == 0]
    return linalg.exact_rank(tight) == h.dim - 1


# ---------------------------------------------------------------------------
# double description


def sparse_first_order(rows: Sequence[Sequence]) -> List[int]:
    """Insertion order: fewest nonzero coefficients first, ties by row index."""
    return sorted(range(len(rows)), key=lambda k: (sum(1 for x in rows[k] if x), k))


def lexmin_order(rows: Sequence[Sequence]) -> List[int]:
    """Insertion order: lexicographically smallest row first, ties by index."""
    return sorted(range(len(rows)), key=lambda k: (tuple(rows[k]), k))


ORDERS = {
    "lexmin": lexmin_order,
    "sparse": sparse_first_order,
    "given": lambda rows: list(range(len(rows))),
}


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    k = 0
    while x:
        if x & 1:
            yield k
        x >>= 1
        k += 1


class _Adjacency:
    """Adjacency oracle for two rays of the current (pointed) cone."""

    def __init__(self, rows: Sequence[Sequence[int]], k: int, mode: str):
        self.rows = rows
        self.rows_mod = [[x % linalg._PRIME for x in r] for r in rows]
        self.log_norms = [linalg.log2_norm_bound(r) for r in rows]
        self.k = k
        self.mode = mode
        self.cache: Dict[int, bool] = {}

    def algebraic(self, common: int) -> bool:
        hit = self.cache.get(common)
        if hit is not None:
            return hit
        idx = list(_bits(common))
        # modular rank never exceeds the rational rank, which is at most k-2
        # for the common zero set of two distinct extreme rays
        ok = linalg.rank_mod_p([self.rows_mod[i] for i in idx]) == self.k - 2
        if not ok:
            # every minor is bounded by the product of row norms (Hadamard);
            # below the modulus a nonzero minor cannot vanish mod p
            bound = sum(self.log_norms[i] for i in idx)
            if bound >= linalg.PRIME_BITS - 1:
                ok = linalg.rank([self.rows[i] for i in idx]) == self.k - 2
        self.cache[common] = ok
        return ok

    def test(self, p: int, q: int, zeros: Sequence[int]) -> bool:
        common = zeros[p] & zeros[q]
        if _popcount(common) < self.k - 2:
            return False
        if self.mode == "combinatorial":
            for t, z in enumerate(zeros):
                if t != p and t != q and z & common == common:
                    return False
            return True
        return self.algebraic(common)


_WORKER: Optional[_Adjacency] = None


def _worker_init(rows, k, mode):
    global _WORKER
    _WORKER = _Adjacency(rows, k, mode)


def _scan_pairs(adj: _Adjacency, zeros: List[int], pos: List[int], neg: List[int],
                nbits: int) -> List[Tuple[int, int]]:
    if adj.mode == "combinatorial" and _kernels.adjacent_pairs is not None:
        return _kernels.adjacent_pairs(zeros, pos, neg, adj.k - 2, nbits)
    return [(p, q) for p in pos for q in neg if adj.test(p, q, zeros)]


def _worker_run(args):
    zeros, pos, neg, nbits = args
    return _scan_pairs(_WORKER, zeros, pos, neg, nbits)


def _adjacent(adj: _Adjacency, pool, jobs: int, zeros: List[int], pos: List[int],
              neg: List[int], nbits: int) -> List[Tuple[int, int]]:
    """Adjacent ``(pos, neg)`` pairs, always in lexicographic pair order.

    With a worker pool the positive rays are split into contiguous chunks and
    the partial results concatenated in chunk order, so the output is the
    same as a sequential scan.
    """
    if pool is None or len(pos) * len(neg) < 4096:
        return _scan_pairs(adj, zeros, pos, neg, nbits)
    chunk = -(-len(pos) // jobs)
    tasks = [(zeros, pos[c:c + chunk], neg, nbits) for c in range(0, len(pos), chunk)]
    return [pq for part in pool.map(_worker_run, tasks) for pq in part]


def _initial_basis(rows: Sequence[Sequence[int]], order: Sequence[int], k: int) -> List[int]:
    chosen: List[int] = []
    current: List[Sequence[int]] = []
    for idx in order:
        trial = current + [rows[idx]]
        if linalg.rank(trial) == len(trial):
            chosen.append(idx)
            current = trial
            if len(chosen) == k:
                return chosen
    raise ArithmeticError("constraint matrix of a pointed cone must have full column rank")


def _dd_pointed(
    rows: List[Tuple[int, ...]],
    k: int,
    order: Sequence[int],
    max_rays: int,
    adjacency: str,
    progress: Optional[Callable[[int, int, int], None]],
    jobs: int,
) -> List[Tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y in Q^k : rows·y >= 0}``."""
    if k == 1:
        # every row is a nonzero multiple of a single coordinate
        signs = {r[0] > 0 for r in rows}
        if len(signs) == 2:
            return []
        return [(1,)] if True in signs else [(-1,)]
    basis = _initial_basis(rows, order, k)
    a0 = [rows[i] for i in basis]
    # columns of the inverse of a0 are the initial rays
    aug = [list(r) + [int(c == j) for c in range(k)] for j, r in enumerate(a0)]
    red, _ = linalg.rref(aug)
    inv_cols = [[red[r][k + c] for r in range(k)] for c in range(k)]
    basis_bits = 0
    for i in basis:
        basis_bits |= 1 << i
    rays = [integerize(col) for col in inv_cols]
    zeros = [basis_bits & ~(1 << basis[j]) for j in range(k)]
    if len(rays) > max_rays:
        raise ResourceLimitExceeded(f"initial ray count {len(rays)} exceeds cap {max_rays}")

    adj = _Adjacency(rows, k, adjacency)
    pool = None
    if jobs > 1:
        pool = ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init,
                                   initargs=(rows, k, adjacency))
    remaining = [i for i in order if i not in set(basis)]
    try:
        for step, h in enumerate(remaining, 1):
            row = rows[h]
            vals = [sum(a * b for a, b in zip(row, r) if a and b) for r in rays]
            pos = [t for t, v in enumerate(vals) if v > 0]
            neg = [t for t, v in enumerate(vals) if v < 0]
            bit = 1 << h
            if not neg:
                for t, v in enumerate(vals):
                    if v == 0:
                        zeros[t] |= bit
                if progress:
                    progress(step, len(remaining), len(rays))
                continue
            adjacent = _adjacent(adj, pool, jobs, zeros, pos, neg, len(rows))
            new_rays = []
            new_zeros = []
            for t, v in enumerate(vals):
                if v > 0:
                    new_rays.append(rays[t])
                    new_zeros.append(zeros[t])
                elif v == 0:
                    new_rays.append(rays[t])
                    new_zeros.append(zeros[t] | bit)
            for p, q in adjacent:
                vp, vq = vals[p], vals[q]
                rp, rq = rays[p], rays[q]
                new_rays.append(primitive([vp * b - vq * a for a, b in zip(rp, rq)]))
                new_zeros.append((zeros[p] & zeros[q]) | bit)
            rays, zeros = new_rays, new_zeros
            if len(rays) > max_rays:
                raise ResourceLimitExceeded(
                    f"intermediate ray count {len(rays)} exceeds cap {max_rays}")
            if progress:
                progress(step, len(remaining), len(rays))
    finally:
        if pool is not None:
            pool.shutdown()
    return rays


def _lineality_and_pointed_basis(h: HRep):
    """Integer bases of the lineality space and of the subspace carrying the
    pointed part (equalities plus orthogonality to the lineality space)."""
    lin = linalg.kernel(list(h.equalities) + list(h.inequalities), h.dim)
    w = linalg.kernel(list(h.equalities) + list(lin), h.dim)
    return lin, w


def dd_convert(
    h: HRep,
    max_rays: int = DEFAULT_MAX_RAYS,
    order: Union[str, Sequence[int]] = "lexmin",
    adjacency: str = "combinatorial",
    jobs: int = 1,
    progress: Optional[Callable[[int, int, int], None]] = None,
) -> VRep:
    """Minimal generators of ``h``.

    Equalities and the lineality space are factored out first, so the double
    description runs on a pointed cone of dimension ``dim - rank(E) -
    dim(lineality)``. Returned rays are extreme, coprime-integer and sorted;
    the lineality basis is the canonical RREF kernel basis.

    ``order`` is ``"lexmin"`` (lexicographically smallest row first),
    ``"sparse"`` (fewest nonzeros first), ``"given"`` or an explicit
    permutation of inequality indices; the result does not depend on it, the
    running time very much does. ``adjacency`` selects the combinatorial
    zero-set test or the algebraic rank test; both give the same result.
    """
    if adjacency not in ("algebraic", "combinatorial"):
        raise ValueError(f"unknown adjacency test {adjacency!r}")
    lin, w = _lineality_and_pointed_basis(h)
    k = len(w)
    rays: List[Tuple[int, ...]] = []
    if k:
        ineq = list(h.inequalities)
        reduced = []
        for a in ineq:
            reduced.append(integerize([linalg.dot(a, col) for col in w]))
        if isinstance(order, str):
            if order not in ORDERS:
                raise ValueError(f"unknown order {order!r}")
            idx = ORDERS[order](ineq)
        else:
            idx = list(order)
            if sorted(idx) != list(range(len(ineq))):
                raise ValueError("order must be a permutation of inequality indices")
        # rows vanishing on the pointed subspace impose nothing there
        idx = [i for i in idx if any(reduced[i])]
        ys = _dd_pointed(reduced, k, idx, max_rays, adjacency, progress, jobs)
        for y in ys:
            rays.append(integerize([sum(c * col[j] for c, col in zip(y, w)) for j in range(h.dim)]))
    return VRep(h.dim, tuple(sorted(set(rays))), tuple(lin), n=h.n, name=h.name)


def dual_convert(v: VRep, **kwargs) -> HRep:
    """Irredundant facet description of the cone generated by ``v``.

    Facet normals are the extreme rays of the dual cone; equalities are the
    canonical basis of its lineality space.
    """
    if not v.rays and not v.lineality:
        # the zero cone
        eqs = [tuple(int(i == j) for i in range(v.dim)) for j in range(v.dim)]
        return HRep(v.dim, (), tuple(eqs), n=v.n, name=v.name)
    dual = HRep(v.dim, tuple(r for r in v.rays if any(r)),
                tuple(r for r in v.lineality if any(r)))
    d = dd_convert(dual, **kwargs)
    return HRep(v.dim, d.rays, d.lineality, n=v.n, name=v.name)


def intersect(h1: HRep, h2: HRep, reduce: bool = False, **kwargs) -> HRep:
    """Intersection; with ``reduce`` the result is the irredundant canonical
    description obtained from a double description round trip."""
    _check_dim(h1.dim, h2.dim)
    if h1.n != h2.n:
        raise DimensionMismatch(f"system count mismatch: {h1.n} vs {h2.n}")
    name = " ∩ ".join(x for x in (h1.name, h2.name) if x)
    h = HRep(h1.dim, h1.inequalities + h2.inequalities, h1.equalities + h2.equalities,
             n=h1.n, name=name)
    if reduce:
        h = canonical_hrep(h, **kwargs)
    return h


def canonical_hrep(h: HRep, **kwargs) -> HRep:
    out = dual_convert(dd_convert(h, **kwargs), **kwargs)
    return HRep(out.dim, out.inequalities, out.equalities, n=h.n, name=h.name)


def equivalent(h1: HRep, h2: HRep, **kwargs) -> bool:
    """Same solution set, decided by comparing canonical generators."""
    _check_dim(h1.dim, h2.dim)
    v1, v2 = dd_convert(h1, **kwargs), dd_convert(h2, **kwargs)
    return v1.rays == v2.rays and linalg.same_span(v1.lineality, v2.lineality)


# ---------------------------------------------------------------------------
# DD pair verification


@dataclass
class PairReport:
    passed: bool
    violating: List[Tuple[str, int, Row]] = field(default_factory=list)
    missing: List[Tuple[int, ...]] = field(default_factory=list)
    extra: List[Tuple[int, ...]] = field(default_factory=list)
    lineality_match: bool = True

    def lines(self) -> List[str]:
        if self.passed:
            return ["PASS"]
        out = ["FAIL"]
        for kind, idx, _ in self.violating:
            out.append(f"generator violates constraints: {kind} #{idx}")
        for r in self.missing:
            out.append("missing generator: (" + ", ".join(map(str, r)) + ")")
        for r in self.extra:
            out.append("non-extremal generator: (" + ", ".join(map(str, r)) + ")")
        if not self.lineality_match:
            out.append("lineality spaces differ")
        return out


def verify_dd_pair(a: HRep, r: VRep, **kwargs) -> PairReport:
    """Check that ``a`` and ``r`` describe the same cone.

    Generators are first tested against every constraint; then the extreme
    rays of ``a`` must match the generators of ``r`` (projected off the
    lineality space) up to positive scaling, in both directions.
    """
    _check_dim(a.dim, r.dim)
    report = PairReport(True)
    for k, g in enumerate(r.rays):
        if not contains(a, g):
            report.violating.append(("ray", k, g))
    for k, g in enumerate(r.lineality):
        neg = tuple(-x for x in g)
        if not contains(a, g) or not contains(a, neg):
            report.violating.append(("lineality", k, g))
    v = dd_convert(a, **kwargs)
    # r's lineality already lies in a's by the constraint check; the converse
    # may be generated by opposite rays, so test cone membership directly
    report.lineality_match = all(
        isinstance(solve_nonneg_combination(r, s), NonNegCombination)
        for l in v.lineality
        for s in (l, tuple(-x for x in l))
    )
    lin = [list(x) for x in linalg.row_space_basis(v.lineality)] if v.lineality else []
    projected = set()
    for g in r.rays:
        pg = linalg.orthogonal_projection(g, lin)
        if any(pg):
            projected.add(integerize(pg))
    ours = set(v.rays)
    report.missing = sorted(ours - projected)
    report.extra = sorted(projected - ours)
    report.passed = not (report.violating or report.missing or report.extra) and report.lineality_match
    return report


# ---------------------------------------------------------------------------
# nonnegative combinations


@dataclass(frozen=True)
class NonNegCombination:
    """``target = sum_k gamma[k] * rays[k] + sum_k lineality_coeffs[k] * lineality[k]``."""

    gamma: Dict[int, Fraction]
    lineality_coeffs: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if any(c < 0 for c in self.gamma.values()):
            raise ValueError("combination coefficients must be nonnegative")


@dataclass(frozen=True)
class Separation:
    """Dual witness: ``beta·ray >= 0`` for every ray, ``beta·l = 0`` on the
    lineality space and ``beta·target < 0``."""

    beta: Tuple[Fraction, ...]


def reconstruct(v: VRep, comb: NonNegCombination) -> Tuple[Fraction, ...]:
    out = [Fraction(0)] * v.dim
    for k, c in comb.gamma.items():
        out = [x + c * y for x, y in zip(out, v.rays[k])]
    for k, c in comb.lineality_coeffs.items():
        out = [x + c * y for x, y in zip(out, v.lineality[k])]
    return tuple(out)


def solve_nonneg_combination(v: VRep, target) -> Union[NonNegCombination, Separation]:
    """Write ``target`` as a nonnegative combination of ``v``'s rays (lineality
    coefficients unrestricted) or return a separating functional."""
    t = _vec(target)
    _check_dim(v.dim, len(t))
    cols = [list(r) for r in v.rays]
    for l in v.lineality:
        cols.append(list(l))
        cols.append([-x for x in l])
    res = phase_one(cols, t)
    nr = len(v.rays)
    if res.feasible:
        gamma = {k: res.x[k] for k in range(nr) if res.x[k]}
        lin = {}
        for k in range(len(v.lineality)):
            c = res.x[nr + 2 * k] - res.x[nr + 2 * k + 1]
            if c:
                lin[k] = c
        comb = NonNegCombination(gamma, lin)
        assert reconstruct(v, comb) == t, "simplex returned an inexact combination"
        return comb
    beta = tuple(res.farkas)
    assert all(linalg.dot(beta, r) >= 0 for r in v.rays)
    assert all(linalg.dot(beta, l) == 0 for l in v.lineality)
    assert linalg.dot(beta, t) < 0
    return Separation(beta)
