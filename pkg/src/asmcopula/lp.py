"""Exact-rational linear programming over Fractions.

A dense two-phase tableau simplex with Bland's smallest-index pivot rule,
which keeps every arithmetic step exact and guarantees termination on the
highly degenerate Birkhoff-type systems this package produces.  Returned
solutions are re-substituted into every original constraint before they are
handed back, so a returned point is verified, not just computed.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GridShapeError, InternalCheckError
from .grid_core import GridFunction, ZERO, ONE

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.relation not in _RELATIONS:
            raise GridShapeError(f"unknown relation {self.relation!r}")

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x) if c), ZERO)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """min (or max) c.x subject to rows, x >= 0.

    ``objective`` may be None for pure feasibility problems.  All variables
    carry the default lower bound 0 and no upper bound.
    """

    num_vars: int
    rows: tuple[Constraint, ...]
    objective: Optional[tuple[Fraction, ...]] = None
    maximize: bool = False

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise GridShapeError("a linear program needs at least one variable")
        for row in self.rows:
            if len(row.coeffs) != self.num_vars:
                raise GridShapeError(
                    f"constraint has {len(row.coeffs)} coefficients, expected {self.num_vars}"
                )
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise GridShapeError("objective length must equal the variable count")


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    solution: Optional[tuple[Fraction, ...]] = None
    objective_value: Optional[Fraction] = None


def _trivially_redundant(row: Constraint) -> bool:
    # sound for x >= 0: such rows cannot be violated by any nonnegative point
    if row.relation == GE and row.rhs <= 0 and all(c >= 0 for c in row.coeffs):
        return True
    if row.relation == LE and row.rhs >= 0 and all(c <= 0 for c in row.coeffs):
        return True
    return False


def _dump(tableau: list[list[Fraction]], basis: list[int], zrow: list[Fraction]) -> None:
    print("basis:", basis, file=sys.stderr)
    for row in tableau:
        print("  ", " ".join(str(v) for v in row), file=sys.stderr)
    print("z: ", " ".join(str(v) for v in zrow), file=sys.stderr)


def _run_simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    allowed: int,
    verbose: bool,
) -> str:
    """Minimize cost over the current tableau in place; Bland's rule throughout.

    ``allowed`` is the number of leading columns eligible to enter the basis
    (used to ban artificial columns in phase two).  Returns "optimal" or
    "unbounded".
    """
    m = len(tableau)
    rhs = len(tableau[0]) - 1
    zrow = list(cost) + [ZERO]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            row = tableau[i]
            for j in range(rhs + 1):
                if row[j]:
                    zrow[j] -= cb * row[j]
    while True:
        if verbose:
            _dump(tableau, basis, zrow)
        enter = -1
        for j in range(allowed):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best: Optional[Fraction] = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][rhs] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tableau, basis, zrow, leave, enter)


def _pivot(
    tableau: list[list[Fraction]],
    basis: list[int],
    zrow: Optional[list[Fraction]],
    r: int,
    q: int,
) -> None:
    prow = tableau[r]
    inv = ONE / prow[q]
    if inv != 1:
        prow = [v * inv if v else v for v in prow]
        tableau[r] = prow
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[q]
        if f:
            tableau[i] = [a - f * b if b else a for a, b in zip(row, prow)]
    if zrow is not None:
        f = zrow[q]
        if f:
            zrow[:] = [a - f * b if b else a for a, b in zip(zrow, prow)]
    basis[r] = q


def solve(lp: LinearProgram, verbose: bool = False) -> LpOutcome:
    """Solve an exact LP by the two-phase simplex method.

    Phase one minimizes the sum of artificial variables and doubles as the
    feasibility decision; phase two optimizes the real objective, if any.
    Any returned solution satisfies every constraint exactly (verified by
    re-substitution) and is a basic point, hence a vertex of the feasible
    region.
    """
    nv = lp.num_vars
    active = [row for row in lp.rows if not _trivially_redundant(row)]

    # normalize to rhs >= 0 and count auxiliary columns
    norm: list[tuple[tuple[Fraction, ...], str, Fraction]] = []
    for row in active:
        if row.rhs < 0:
            flipped = {LE: GE, GE: LE, EQ: EQ}[row.relation]
            norm.append((tuple(-c for c in row.coeffs), flipped, -row.rhs))
        else:
            norm.append((row.coeffs, row.relation, row.rhs))

    n_slack = sum(1 for _, rel, _ in norm if rel != EQ)
    n_art = sum(1 for _, rel, _ in norm if rel != LE)
    ncols = nv + n_slack + n_art
    art_start = nv + n_slack

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    slack_i = nv
    art_i = art_start
    for coeffs, rel, rhs in norm:
        row = list(coeffs) + [ZERO] * (ncols - nv) + [rhs]
        if rel == LE:
            row[slack_i] = ONE
            basis.append(slack_i)
            slack_i += 1
        elif rel == GE:
            row[slack_i] = -ONE
            slack_i += 1
            row[art_i] = ONE
            basis.append(art_i)
            art_i += 1
        else:
            row[art_i] = ONE
            basis.append(art_i)
            art_i += 1
        tableau.append(row)

    if n_art:
        cost1 = [ZERO] * art_start + [ONE] * n_art
        status = _run_simplex(tableau, basis, cost1, ncols, verbose)
        if status != "optimal":
            raise InternalCheckError("phase one cannot be unbounded")
        infeasibility = sum(
            (tableau[i][-1] for i in range(len(basis)) if basis[i] >= art_start), ZERO
        )
        if infeasibility > 0:
            return LpOutcome(status="infeasible")
        # drive leftover artificials out of the basis; fully zero rows are redundant
        for i in range(len(basis) - 1, -1, -1):
            if basis[i] >= art_start:
                q = next((j for j in range(art_start) if tableau[i][j]), -1)
                if q >= 0:
                    _pivot(tableau, basis, None, i, q)
                else:
                    del tableau[i]
                    del basis[i]

    if lp.objective is not None:
        sign = -1 if lp.maximize else 1
        cost2 = [sign * c for c in lp.objective] + [ZERO] * (ncols - nv)
        status = _run_simplex(tableau, basis, cost2, art_start, verbose)
        if status == "unbounded":
            return LpOutcome(status="unbounded")

    x = [ZERO] * ncols
    rhs = len(tableau[0]) - 1 if tableau else 0
    for i, b in enumerate(basis):
        x[b] = tableau[i][rhs]
    solution = tuple(x[:nv])

    for v in solution:
        if v < 0:
            raise InternalCheckError("simplex produced a negative variable value")
    for row in lp.rows:
        if not row.holds(solution):
            raise InternalCheckError("simplex solution failed exact re-substitution")

    value: Optional[Fraction] = None
    if lp.objective is not None:
        value = sum((c * v for c, v in zip(lp.objective, solution) if c), ZERO)
    return LpOutcome(status="optimal", solution=solution, objective_value=value)


def feasible_copula_system(P: GridFunction, Q: GridFunction) -> LinearProgram:
    """The copula-between-bounds feasibility system over cell masses.

    Variables are the n^2 cell masses a_{ij} >= 0 in row-major order.  Rows:
    every row sum and column sum equals 1, and for every interior lattice
    point the cumulative sum lies between P and Q (in L-scale).  Boundary
    cumulative bounds are implied exactly by the sum equalities and carry no
    rows of their own.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    n = P.n
    nv = n * n
    rows: list[Constraint] = []
    for i in range(n):
        coeffs = [ZERO] * nv
        for j in range(n):
            coeffs[i * n + j] = ONE
        rows.append(Constraint(tuple(coeffs), EQ, ONE))
    for j in range(n):
        coeffs = [ZERO] * nv
        for i in range(n):
            coeffs[i * n + j] = ONE
        rows.append(Constraint(tuple(coeffs), EQ, ONE))
    for r in range(1, n):
        for s in range(1, n):
            coeffs = [ZERO] * nv
            for i in range(r):
                base = i * n
                for j in range(s):
                    coeffs[base + j] = ONE
            tup = tuple(coeffs)
            rows.append(Constraint(tup, GE, P.values[r][s]))
            rows.append(Constraint(tup, LE, Q.values[r][s]))
    return LinearProgram(num_vars=nv, rows=tuple(rows))
