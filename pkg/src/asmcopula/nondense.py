"""The non-dense self-dual family for grid sizes n >= 7, with witnesses.

The lower matrix of the family puts a diagonal of zeros between its positive
and negative mass; the upper one shows a doubled alternating pattern.  Both
are built from explicit entry lists (anchored at the 7x7 instance), their
common defect matrix is given by four index families on neighbouring
antidiagonals, and coherence is certified by three witness copulas whose
correction patterns are periodic with period three along two antidiagonals.

Everything here is verify-on-construct: each returned object has already
passed its own validity checks, so a misread pattern raises instead of
propagating silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .defects import DefectMatrix
from .errors import InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    Matrix,
    ONE,
    ZERO,
    asm_to_quasi,
    grid_max,
    grid_min,
    is_copula,
    validate_abm,
)


@dataclass(frozen=True)
class NonDensePair:
    """The pair (lower, upper) of size n >= 7, with its shared defect matrix.

    The lower quasi-copula's main defect equals the upper one's opposite
    defect; ``defect`` stores that common matrix (tagged as the main defect
    of the lower side).  Neither mass matrix is dense.
    """

    n: int
    asm_lower: MassMatrix
    asm_upper: MassMatrix
    quasi_lower: GridFunction
    quasi_upper: GridFunction
    defect: DefectMatrix


@dataclass(frozen=True)
class WitnessTriple:
    """Three copulas between the bounds whose min/max recover them exactly."""

    witnesses: tuple[GridFunction, GridFunction, GridFunction]
    patterns: tuple[Matrix, Matrix, Matrix]


def _lower_mass(n: int) -> MassMatrix:
    """Entry list of the lower matrix: ones on two broken antidiagonals with
    a separating diagonal of zeros, minus signs in between."""
    e = [[ZERO] * n for _ in range(n)]
    for i in range(2, n + 1):  # a(n-i+1, i-1) = 1
        e[n - i][i - 2] = ONE
    for i in range(2, n - 1):  # a(n-i+1, i+1) = -1
        e[n - i][i] = -ONE
    for i in range(1, n - 1):  # a(n-i+1, i+2) = 1
        e[n - i][i + 1] = ONE
    return MassMatrix(n, tuple(tuple(row) for row in e))


def _upper_mass(n: int) -> MassMatrix:
    """Entry list of the upper matrix: the doubled alternating pattern."""
    e = [[ZERO] * n for _ in range(n)]
    for i in range(3, n + 1):  # b(n-i+1, i-2) = 1
        e[n - i][i - 3] = ONE
    for i in range(3, n - 1):  # b(n-i+1, i) = -1
        e[n - i][i - 1] = -ONE
    for i in range(2, n - 1):  # b(n-i+1, i+1) = 1
        e[n - i][i] = ONE
    for i in range(2, n - 3):  # b(n-i+1, i+3) = -1
        e[n - i][i + 2] = -ONE
    for i in range(1, n - 3):  # b(n-i+1, i+4) = 1
        e[n - i][i + 3] = ONE
    return MassMatrix(n, tuple(tuple(row) for row in e))


def nondense_defect(n: int) -> DefectMatrix:
    """The common defect matrix, from its four index families.

    Minus ones sit at (n-i-1, i) for i = 1..n-2, (n-i, i) for i = 2..n-2,
    (n-i+1, i+1) for i = 2..n-2, and (n-i+1, i+2) for i = 2..n-3; everything
    else is zero.  Stored over the full lattice with zero borders.
    """
    if n < 7:
        raise InvalidInputError(f"the non-dense family needs n >= 7, got {n}")
    d = [[ZERO] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n - 1):
        d[n - i - 1][i] = -ONE
    for i in range(2, n - 1):
        d[n - i][i] = -ONE
    for i in range(2, n - 1):
        d[n - i + 1][i + 1] = -ONE
    for i in range(2, n - 2):
        d[n - i + 1][i + 2] = -ONE
    return DefectMatrix(n, "main", tuple(tuple(row) for row in d))


def nondense_pair(n: int) -> NonDensePair:
    """Construct the non-dense dual pair of size n >= 7.

    Both quasi-copulas are derived from the mass entry lists by cumulative
    sums; the construction then verifies that the upper bound differs from
    the lower one by exactly the closed-form defect matrix, that the pair is
    self-dual under the brute-force defect computation, and that neither
    side is dense.  Any failure raises, since it would mean the entry lists
    were misread.
    """
    from .dense import is_dense
    from .imprecise import is_dual_pair

    if n < 7:
        raise InvalidInputError(f"the non-dense family needs n >= 7, got {n}")
    a = _lower_mass(n)
    b = _upper_mass(n)
    validate_abm(a).require("lower entry list is not an alternating bistochastic matrix")
    validate_abm(b).require("upper entry list is not an alternating bistochastic matrix")
    qa = asm_to_quasi(a)
    qb = asm_to_quasi(b)
    d = nondense_defect(n)
    expected_upper = tuple(
        tuple(v - e for v, e in zip(rv, re)) for rv, re in zip(qa.values, d.entries)
    )
    if qb.values != expected_upper:
        raise InternalCheckError("upper bound does not equal lower bound minus the defect")
    if is_dense(a) or is_dense(b):
        raise InternalCheckError("family matrices must not be dense")
    if not is_dual_pair(qa, qb):
        raise InternalCheckError(f"non-dense pair of size {n} failed the duality check")
    return NonDensePair(n=n, asm_lower=a, asm_upper=b, quasi_lower=qa, quasi_upper=qb, defect=d)


_PERIODS = ((1, 1, 0), (1, 0, 1), (0, 1, 1))


def _pattern(n: int, period: tuple[int, int, int]) -> Matrix:
    """One (n-1) x (n-1) correction pattern.

    The entries on the antidiagonals i + j = n - 1 (rows 1..n-2) and
    i + j = n + 2 (rows 3..n-1) repeat the three-element ``period``, both
    phase-locked to the row index (the entry in row i is period[(i-1) % 3]).
    An entry on i + j = n or i + j = n + 3 is 1 exactly when both its left
    and upper neighbours are 1; all remaining entries are 0.  Indices here
    are 1-based over the truncated table.

    The row phase-lock is what makes the corrected functions copulas: each
    negative cell of the lower mass sits on i + j = n + 2 and is cancelled
    either by the pattern entry in its own row or by the conditional entry
    diagonally above, one of which fires for every row residue mod 3.
    """
    size = n - 1
    e = [[0] * (size + 1) for _ in range(size + 1)]  # 1-based
    for i in range(1, n - 1):  # (i, n-1-i)
        e[i][n - 1 - i] = period[(i - 1) % 3]
    for i in range(3, n):  # (i, n+2-i)
        e[i][n + 2 - i] = period[(i - 1) % 3]
    for i in range(1, size + 1):  # conditional antidiagonal i + j = n
        j = n - i
        if 1 <= j <= size and e[i][j - 1] == 1 and e[i - 1][j] == 1:
            e[i][j] = 1
    for i in range(4, size + 1):  # conditional antidiagonal i + j = n + 3
        j = n + 3 - i
        if 1 <= j <= size and e[i][j - 1] == 1 and e[i - 1][j] == 1:
            e[i][j] = 1
    return tuple(tuple(Fraction(v) for v in e[i][1:]) for i in range(1, size + 1))


def nondense_witnesses(n: int) -> WitnessTriple:
    """Three coherence witnesses for the non-dense pair of size n.

    Each witness adds one correction pattern (augmented with a zero right
    column and bottom row) to the lower bound.  Construction verifies that
    every witness is a copula between the bounds and that the entrywise min
    and max of the triple recover the lower and upper bound exactly.
    """
    pair = nondense_pair(n)
    patterns = tuple(_pattern(n, period) for period in _PERIODS)
    witnesses = []
    for pat in patterns:
        values = [list(row) for row in pair.quasi_lower.values]
        for i in range(1, n):
            row = pat[i - 1]
            for j in range(1, n):
                if row[j - 1]:
                    values[i][j] += row[j - 1]
        c = GridFunction(n, tuple(tuple(row) for row in values))
        if not (is_copula(c) and pair.quasi_lower.le(c) and c.le(pair.quasi_upper)):
            raise InternalCheckError("witness pattern produced an invalid or out-of-bounds copula")
        witnesses.append(c)
    low = grid_min(grid_min(witnesses[0], witnesses[1]), witnesses[2])
    high = grid_max(grid_max(witnesses[0], witnesses[1]), witnesses[2])
    if low != pair.quasi_lower or high != pair.quasi_upper:
        raise InternalCheckError("witness triple does not recover the bounds by min/max")
    return WitnessTriple(witnesses=tuple(witnesses), patterns=patterns)
