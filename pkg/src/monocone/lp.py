"""Exact phase-one simplex with Bland's rule.

Only feasibility of ``A x = b, x >= 0`` is ever needed. When the system is
infeasible the final simplex multipliers give a Farkas certificate ``y`` with
``y^T A >= 0`` and ``y^T b < 0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .linalg import as_fraction


@dataclass
class PhaseOneResult:
    feasible: bool
    x: Optional[List[Fraction]] = None
    farkas: Optional[List[Fraction]] = None
    pivots: int = 0


def phase_one(columns: Sequence[Sequence], b: Sequence) -> PhaseOneResult:
    """Decide whether ``b`` is a nonnegative combination of ``columns``."""
    m = len(b)
    nvar = len(columns)
    b = [as_fraction(x) for x in b]
    sign = [(-1 if x < 0 else 1) for x in b]
    # tableau rows: [x_0..x_{nvar-1}, a_0..a_{m-1} | rhs]
    width = nvar + m
    tab = []
    for r in range(m):
        row = [sign[r] * as_fraction(col[r]) for col in columns]
        row += [Fraction(int(r == k)) for k in range(m)]
        row.append(sign[r] * b[r])
        tab.append(row)
    basis = [nvar + r for r in range(m)]
    # reduced costs for min sum(a); last entry holds -objective
    z = [Fraction(0)] * (width + 1)
    for j in range(nvar):
        z[j] = -sum(tab[r][j] for r in range(m))
    z[width] = -sum(tab[r][width] for r in range(m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                key = (tab[r][width] / a, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            # cannot happen for a phase-one problem bounded below by zero
            raise ArithmeticError("phase-one objective unbounded")
        r = best[1]
        piv = tab[r][enter]
        prow = [x / piv for x in tab[r]]
        tab[r] = prow
        for k in range(m):
            f = tab[k][enter]
            if k != r and f:
                tab[k] = [x - f * y for x, y in zip(tab[k], prow)]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, prow)]
        basis[r] = enter
        pivots += 1

    objective = -z[width]
    if objective == 0:
        x = [Fraction(0)] * nvar
        for r, var in enumerate(basis):
            if var < nvar:
                x[var] = tab[r][width]
        return PhaseOneResult(True, x=x, pivots=pivots)
    # reduced cost of artificial i is 1 - y_i
    y = [1 - z[nvar + i] for i in range(m)]
    farkas = [-sign[i] * y[i] for i in range(m)]
    return PhaseOneResult(False, farkas=farkas, pivots=pivots)
