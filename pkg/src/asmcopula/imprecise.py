"""Imprecise copulas: verification, self-duality, sure loss, and coherence.

A pair (P, Q) of grid functions is an imprecise copula when both have the
uniform boundary and the four rectangle inequalities hold for every lattice
rectangle.  The inequalities are checked exactly as stated, and a second,
independent criterion (main transform of P below Q, P below opposite
transform of Q) is kept as a standing cross-validation.

Avoiding sure loss asks for a copula between the bounds and is decided by an
exact rational LP, which doubles as a witness generator.  Coherence asks in
addition that both bounds are attained entrywise by copulas between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Optional

from . import lp
from .defects import transform
from .errors import GridShapeError, InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    ValidationReport,
    Violation,
    ZERO,
    _boundary_violations,
    asm_to_quasi,
    has_uniform_boundary,
    is_copula,
    is_proper,
    is_quasi,
    scaled_int_matrix,
    validate_quasi,
)

# size above which avoids_sure_loss switches from the full cell-mass system
# to the reduced cumulative-value system (equivalent; see _reduced_program)
_FULL_SYSTEM_MAX_N = 8

VERDICT_NOT_ASL = "not-ASL"
VERDICT_ASL_NOT_COHERENT = "ASL-not-coherent"
VERDICT_COHERENT = "coherent"


@dataclass(frozen=True)
class ImprecisePair:
    """An ordered pair of quasi-copulas with P <= Q, plus cached verdicts."""

    P: GridFunction
    Q: GridFunction
    proper_P: bool
    proper_Q: bool

    @classmethod
    def create(cls, P: GridFunction, Q: GridFunction) -> "ImprecisePair":
        if P.n != Q.n:
            raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
        validate_quasi(P).require("lower bound is not a quasi-copula")
        validate_quasi(Q).require("upper bound is not a quasi-copula")
        if not P.le(Q):
            raise InvalidInputError("lower bound must be pointwise below the upper bound")
        return cls(P=P, Q=Q, proper_P=is_proper(P), proper_Q=is_proper(Q))

    @property
    def n(self) -> int:
        return self.P.n

    @cached_property
    def imprecise_report(self) -> ValidationReport:
        return is_imprecise_copula(self.P, self.Q)

    @cached_property
    def self_dual(self) -> bool:
        return is_dual_pair(self.P, self.Q)

    @cached_property
    def asl_witness(self) -> Optional[GridFunction]:
        return avoids_sure_loss(self.P, self.Q)

    @cached_property
    def coherence(self) -> "CoherenceReport":
        return coherence_check(self.P, self.Q)


@dataclass(frozen=True)
class CoherenceReport:
    """Outcome of the coherence decision.

    ``lower_attained`` / ``upper_attained`` are boolean tables over the full
    lattice; the verdict is coherent exactly when a witness exists and both
    tables are all true.
    """

    verdict: str
    asl_witness: Optional[GridFunction]
    lower_attained: tuple[tuple[bool, ...], ...]
    upper_attained: tuple[tuple[bool, ...], ...]

    def unattained_lower(self) -> list[tuple[int, int]]:
        return [
            (r, s)
            for r, row in enumerate(self.lower_attained)
            for s, ok in enumerate(row)
            if not ok
        ]

    def unattained_upper(self) -> list[tuple[int, int]]:
        return [
            (r, s)
            for r, row in enumerate(self.upper_attained)
            for s, ok in enumerate(row)
            if not ok
        ]


# ---------------------------------------------------------------------------
# imprecise-copula criteria


def is_imprecise_copula(P: GridFunction, Q: GridFunction) -> ValidationReport:
    """Check the imprecise-copula conditions over every lattice rectangle.

    (IC1) asks the uniform boundary of both functions; (IC2) asks, for each
    rectangle with vertex corners (i,k) and (j,l), the four inequalities

        Q(i,k) + P(j,l) - P(i,l) - P(j,k) >= 0
        P(i,k) + Q(j,l) - P(i,l) - P(j,k) >= 0
        Q(i,k) + Q(j,l) - Q(i,l) - P(j,k) >= 0
        Q(i,k) + Q(j,l) - P(i,l) - Q(j,k) >= 0

    taken verbatim, degenerate rectangles included (these yield P <= Q).
    Every failed instance is reported.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    n = P.n
    violations = list(_boundary_violations(P, "IC1-lower"))
    violations += list(_boundary_violations(Q, "IC1-upper"))
    den, p = scaled_int_matrix(P.values)
    den_q, q = scaled_int_matrix(Q.values)
    if den != den_q:
        # rescale both to the common denominator
        common = den * den_q // gcd(den, den_q)
        fp, fq = common // den, common // den_q
        p = [[v * fp for v in row] for row in p]
        q = [[v * fq for v in row] for row in q]
        den = common
    for i in range(n + 1):
        pi, qi = p[i], q[i]
        for j in range(i, n + 1):
            pj, qj = p[j], q[j]
            for k in range(n + 1):
                pik, qik, pjk, qjk = pi[k], qi[k], pj[k], qj[k]
                for l in range(k, n + 1):
                    pil, qil, pjl, qjl = pi[l], qi[l], pj[l], qj[l]
                    v1 = qik + pjl - pil - pjk
                    if v1 < 0:
                        violations.append(Violation("IC2-1", (i, j, k, l), Fraction(v1, den)))
                    v2 = pik + qjl - pil - pjk
                    if v2 < 0:
                        violations.append(Violation("IC2-2", (i, j, k, l), Fraction(v2, den)))
                    v3 = qik + qjl - qil - pjk
                    if v3 < 0:
                        violations.append(Violation("IC2-3", (i, j, k, l), Fraction(v3, den)))
                    v4 = qik + qjl - pil - qjk
                    if v4 < 0:
                        violations.append(Violation("IC2-4", (i, j, k, l), Fraction(v4, den)))
    return ValidationReport.from_violations(violations)


def is_imprecise_via_defects(P: GridFunction, Q: GridFunction) -> bool:
    """The defect criterion: main(P) <= Q and P <= opposite(Q).

    Independent of :func:`is_imprecise_copula`; agreement between the two on
    every tested pair is a standing cross-validation property.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    if not (is_quasi(P) and is_quasi(Q)):
        raise InvalidInputError("the defect criterion needs two quasi-copulas")
    return transform(P, "main").le(Q) and P.le(transform(Q, "opposite"))


def is_dual_pair(P: GridFunction, Q: GridFunction, require_proper: bool = True) -> bool:
    """True iff main(P) == Q and opposite(Q) == P, with both bounds proper.

    Properness (each bound assigns negative volume somewhere) follows the
    standing convention for imprecise copulas; pass ``require_proper=False``
    to drop it and test the transform identities alone.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    if not (is_quasi(P) and is_quasi(Q)):
        return False
    if require_proper and not (is_proper(P) and is_proper(Q)):
        return False
    return transform(P, "main") == Q and transform(Q, "opposite") == P


# ---------------------------------------------------------------------------
# avoiding sure loss / coherence


def _interior_strict_entries(P: GridFunction, Q: GridFunction) -> list[tuple[int, int]]:
    return [
        (r, s)
        for r in range(1, P.n)
        for s in range(1, P.n)
        if P.values[r][s] != Q.values[r][s]
    ]


def _grid_from_solution(P: GridFunction, free: list[tuple[int, int]], x: tuple[Fraction, ...]) -> GridFunction:
    values = [list(row) for row in P.values]
    for (r, s), v in zip(free, x):
        values[r][s] += v
    return GridFunction(P.n, tuple(tuple(row) for row in values))


def _reduced_program(
    P: GridFunction,
    Q: GridFunction,
    objective_entry: Optional[tuple[int, int]] = None,
    maximize: bool = False,
) -> tuple[Optional[lp.LinearProgram], list[tuple[int, int]]]:
    """Equivalent feasibility system over the cumulative values themselves.

    Entries where P == Q are substituted as constants, leaving one shifted
    variable x = C - P per strict entry; cell nonnegativity becomes a sparse
    row per lattice cell.  The feasible points are in exact affine bijection
    with those of :func:`lp.feasible_copula_system`, and any point found here
    is converted back and re-verified against that system.

    Returns ``(None, free)`` when a constant cell already has negative mass,
    which decides infeasibility without a solve.
    """
    n = P.n
    free = _interior_strict_entries(P, Q)
    index = {e: t for t, e in enumerate(free)}
    nv = len(free)
    if nv == 0:
        return None, free
    rows: list[lp.Constraint] = []
    for e in free:
        coeffs = [ZERO] * nv
        coeffs[index[e]] = Fraction(1)
        rows.append(lp.Constraint(tuple(coeffs), lp.LE, Q.values[e[0]][e[1]] - P.values[e[0]][e[1]]))
    pv = P.values
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            const = pv[i][j] + pv[i - 1][j - 1] - pv[i][j - 1] - pv[i - 1][j]
            coeffs = [ZERO] * nv
            touched = False
            for (u, v), sign in (
                ((i, j), 1),
                ((i - 1, j - 1), 1),
                ((i, j - 1), -1),
                ((i - 1, j), -1),
            ):
                t = index.get((u, v))
                if t is not None:
                    coeffs[t] += sign
                    touched = True
            if touched:
                rows.append(lp.Constraint(tuple(coeffs), lp.GE, -const))
            elif const < 0:
                return None, free
    objective = None
    if objective_entry is not None:
        obj = [ZERO] * nv
        obj[index[objective_entry]] = Fraction(1)
        objective = tuple(obj)
    return (
        lp.LinearProgram(num_vars=nv, rows=tuple(rows), objective=objective, maximize=maximize),
        free,
    )


def _verify_witness(P: GridFunction, Q: GridFunction, C: GridFunction) -> None:
    if not (is_copula(C) and P.le(C) and C.le(Q)):
        raise InternalCheckError("candidate witness failed copula or sandwich verification")
    masses = quasi_mass_vector(C)
    for row in lp.feasible_copula_system(P, Q).rows:
        if not row.holds(masses):
            raise InternalCheckError("witness failed re-substitution into the mass system")


def quasi_mass_vector(C: GridFunction) -> tuple[Fraction, ...]:
    """Row-major vector of the cell masses of C (LP variable order)."""
    v = C.values
    return tuple(
        v[i][j] + v[i - 1][j - 1] - v[i][j - 1] - v[i - 1][j]
        for i in range(1, C.n + 1)
        for j in range(1, C.n + 1)
    )


def avoids_sure_loss(P: GridFunction, Q: GridFunction) -> Optional[GridFunction]:
    """Return a copula between P and Q, or None when no such copula exists.

    Decided by exact linear feasibility over the n^2 cell masses (row and
    column sums one, cumulative sums between the bounds).  For n above
    ``_FULL_SYSTEM_MAX_N`` an equivalent reduced system over the cumulative
    values is solved instead, and the witness is verified against the full
    mass system by exact substitution either way.

    The bounds only need the uniform boundary: pairs that are not imprecise
    copulas (such as a proper quasi-copula against itself, or a perturbed
    non-quasi upper bound) simply constrain the LP and may come out
    infeasible or unattained rather than being rejected.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    if not (has_uniform_boundary(P) and has_uniform_boundary(Q)):
        raise InvalidInputError("avoids_sure_loss needs bounds with the uniform boundary")
    if P.n <= _FULL_SYSTEM_MAX_N:
        outcome = lp.solve(lp.feasible_copula_system(P, Q))
        if outcome.status == "infeasible":
            return None
        if outcome.status != "optimal":
            raise InternalCheckError(f"unexpected LP status {outcome.status}")
        entries = tuple(
            tuple(outcome.solution[i * P.n + j] for j in range(P.n)) for i in range(P.n)
        )
        witness = asm_to_quasi(MassMatrix(P.n, entries))
    else:
        program, free = _reduced_program(P, Q)
        if program is None:
            # no strict entries left, or a fixed cell is already negative
            witness = P if (not free and is_copula(P)) else None
            if witness is None:
                return None
        else:
            outcome = lp.solve(program)
            if outcome.status == "infeasible":
                return None
            if outcome.status != "optimal":
                raise InternalCheckError(f"unexpected LP status {outcome.status}")
            witness = _grid_from_solution(P, free, outcome.solution)
    _verify_witness(P, Q, witness)
    return witness


def _entry_extremum(
    P: GridFunction, Q: GridFunction, entry: tuple[int, int], maximize: bool
) -> tuple[Fraction, GridFunction]:
    """Exact min or max of C(entry) over all copulas P <= C <= Q.

    Only valid for strict interior entries of a pair that avoids sure loss;
    the optimizing copula is returned alongside the optimum and has been
    re-validated.
    """
    program, free = _reduced_program(P, Q, objective_entry=entry, maximize=maximize)
    if program is None:
        raise InternalCheckError("entry extremum requested without strict entries")
    outcome = lp.solve(program)
    if outcome.status != "optimal":
        raise InternalCheckError(
            f"per-entry LP returned {outcome.status} although the pair avoids sure loss"
        )
    optimizer = _grid_from_solution(P, free, outcome.solution)
    _verify_witness(P, Q, optimizer)
    return P.values[entry[0]][entry[1]] + outcome.objective_value, optimizer


def coherence_check(
    P: GridFunction, Q: GridFunction, per_entry_lps: bool = False
) -> CoherenceReport:
    """Decide coherence of an imprecise copula.

    If no copula fits between the bounds the verdict is not-ASL.  Otherwise,
    for every interior entry where the bounds differ, the minimum and the
    maximum of C(r, s) over all fitting copulas are computed by exact LPs;
    the entry's bound is attained when the optimum meets it.  Entries with
    equal bounds are attained by any fitting copula and are skipped.

    Since the bound constraints force P <= C <= Q, a bound is attained at an
    entry exactly when some fitting copula touches it there; by default each
    solved LP's optimizing copula is therefore also used to mark other
    entries it happens to touch, which prunes LP calls without changing any
    verdict.  Pass ``per_entry_lps=True`` to force both LPs for every strict
    entry instead.
    """
    witness = avoids_sure_loss(P, Q)
    n = P.n
    if witness is None:
        falses = tuple(tuple(False for _ in range(n + 1)) for _ in range(n + 1))
        return CoherenceReport(VERDICT_NOT_ASL, None, falses, falses)
    lower = [[True] * (n + 1) for _ in range(n + 1)]
    upper = [[True] * (n + 1) for _ in range(n + 1)]
    strict = _interior_strict_entries(P, Q)
    pool: list[GridFunction] = [witness]
    for r, s in strict:
        want_low, want_up = P.values[r][s], Q.values[r][s]
        low_done = up_done = False
        if not per_entry_lps:
            for c in pool:
                v = c.values[r][s]
                if v == want_low:
                    low_done = True
                if v == want_up:
                    up_done = True
                if low_done and up_done:
                    break
        if not low_done:
            value, optimizer = _entry_extremum(P, Q, (r, s), maximize=False)
            lower[r][s] = value == want_low
            if not per_entry_lps:
                pool.append(optimizer)
        if not up_done:
            value, optimizer = _entry_extremum(P, Q, (r, s), maximize=True)
            upper[r][s] = value == want_up
            if not per_entry_lps:
                pool.append(optimizer)
    all_ok = all(all(row) for row in lower) and all(all(row) for row in upper)
    return CoherenceReport(
        VERDICT_COHERENT if all_ok else VERDICT_ASL_NOT_COHERENT,
        witness,
        tuple(tuple(row) for row in lower),
        tuple(tuple(row) for row in upper),
    )
