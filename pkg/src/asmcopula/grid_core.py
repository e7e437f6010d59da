"""Exact-rational grid functions, mass matrices, and the bijection between them.

A :class:`GridFunction` stores the values of a discrete (quasi-)copula on the
(n+1) x (n+1) lattice ``{0..n}^2``.  Values are kept in L-scale, i.e. n times
the unit-scale value, so that every valid function has integer margins
(``value(r, n) == r``).  Its :class:`MassMatrix` is the n x n matrix of cell
volumes; the two representations are linked by cumulative sums and second
differences, and the conversion is exact in both directions.

All arithmetic is :class:`fractions.Fraction`; there is no floating point
anywhere in this module or its dependents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

from .errors import GridShapeError, InvalidInputError

Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise GridShapeError(f"matrix entries must be exact rationals, got {type(x).__name__}")


def freeze_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Convert nested iterables of ints / Fractions / 'p/q' strings to a tuple matrix."""
    return tuple(tuple(_as_fraction(x) for x in row) for row in rows)


def scaled_int_matrix(values: Matrix) -> tuple[int, list[list[int]]]:
    """Return ``(den, table)`` with ``table[r][s] == values[r][s] * den`` as ints.

    Used by hot loops: integer arithmetic on a common denominator is exact and
    considerably faster than Fraction arithmetic.
    """
    den = 1
    for row in values:
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    if den == 1:
        return 1, [[v.numerator for v in row] for row in values]
    return den, [[v.numerator * (den // v.denominator) for v in row] for row in values]


@dataclass(frozen=True)
class GridFunction:
    """Values of a grid function on ``{0..n}^2`` in L-scale (range [0, n]).

    The zero row and column (index 0) are stored explicitly so that all
    indexing matches the lattice.  Construction only checks the shape; the
    defining axioms are checked by :func:`validate_quasi` and
    :func:`validate_copula`, which can therefore also report violations.
    """

    n: int
    values: Matrix

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GridShapeError("grid size must be a positive integer")
        if len(self.values) != self.n + 1 or any(len(r) != self.n + 1 for r in self.values):
            raise GridShapeError(f"expected a {self.n + 1}x{self.n + 1} value table for n={self.n}")

    @classmethod
    def from_values(cls, rows: Iterable[Iterable]) -> "GridFunction":
        """Build from the full (n+1) x (n+1) table including the zero row/column."""
        vals = freeze_matrix(rows)
        return cls(len(vals) - 1, vals)

    @classmethod
    def from_interior(cls, rows: Iterable[Iterable]) -> "GridFunction":
        """Build from the n x n table of values at indices 1..n, as matrices are printed."""
        inner = freeze_matrix(rows)
        n = len(inner)
        if n == 0 or any(len(r) != n for r in inner):
            raise GridShapeError("interior table must be square and nonempty")
        vals = ((ZERO,) * (n + 1),) + tuple((ZERO,) + row for row in inner)
        return cls(n, vals)

    def value(self, r: int, s: int) -> Fraction:
        return self.values[r][s]

    def interior(self) -> Matrix:
        """The n x n table of values at indices 1..n."""
        return tuple(row[1:] for row in self.values[1:])

    def le(self, other: "GridFunction") -> bool:
        """Pointwise ``self <= other`` (requires equal size)."""
        _require_same_n(self, other)
        return all(
            a <= b for ra, rb in zip(self.values, other.values) for a, b in zip(ra, rb)
        )

    def unit_values(self) -> Matrix:
        """The same table divided by n (unit scale, for presentation only)."""
        n = Fraction(self.n)
        return tuple(tuple(v / n for v in row) for row in self.values)


@dataclass(frozen=True)
class MassMatrix:
    """n x n matrix of cell masses; alternating bistochastic when valid.

    Rows and columns are indexed 1..n in formulas (stored 0-based); the row
    index increases downward.  In the alternating-sign special case all
    entries are in {-1, 0, 1}.
    """

    n: int
    entries: Matrix

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GridShapeError("matrix size must be a positive integer")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise GridShapeError(f"expected an {self.n}x{self.n} entry table for n={self.n}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "MassMatrix":
        entries = freeze_matrix(rows)
        return cls(len(entries), entries)

    def entry(self, i: int, j: int) -> Fraction:
        """Entry a_{i,j} with 1-based indices as written in formulas."""
        return self.entries[i - 1][j - 1]

    def positive_part(self) -> "MassMatrix":
        """Entrywise max(a, 0)."""
        return MassMatrix(
            self.n, tuple(tuple(v if v > 0 else ZERO for v in row) for row in self.entries)
        )

    def negative_part(self) -> "MassMatrix":
        """Entrywise min(a, 0), so the matrix of the negative mass."""
        return MassMatrix(
            self.n, tuple(tuple(v if v < 0 else ZERO for v in row) for row in self.entries)
        )

    def is_sign_matrix(self) -> bool:
        """True if all entries are in {-1, 0, 1}."""
        return all(v.denominator == 1 and -1 <= v <= 1 for row in self.entries for v in row)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self.entries for v in row)


@dataclass(frozen=True)
class Rectangle:
    """Grid-aligned rectangle [i,j] x [k,l] given by its vertex index ranges."""

    i: int
    j: int
    k: int
    l: int

    def __post_init__(self) -> None:
        if not (0 <= self.i <= self.j and 0 <= self.k <= self.l):
            raise GridShapeError(f"rectangle indices must satisfy 0 <= i <= j and 0 <= k <= l, got {self}")


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance: tag, witness indices, offending value."""

    axiom: str
    where: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class ValidationReport:
    verdict: bool
    violations: tuple[Violation, ...]

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> "ValidationReport":
        vs = tuple(violations)
        return cls(not vs, vs)

    def require(self, what: str) -> None:
        """Raise :class:`InvalidInputError` when the verdict is negative."""
        if not self.verdict:
            v = self.violations[0]
            raise InvalidInputError(
                f"{what}: {len(self.violations)} violation(s); first is "
                f"{v.axiom} at {v.where} with value {v.value}"
            )


def _require_same_n(a, b) -> None:
    if a.n != b.n:
        raise GridShapeError(f"size mismatch: {a.n} vs {b.n}")


# ---------------------------------------------------------------------------
# validation


def _boundary_violations(G: GridFunction, axiom: str) -> Iterator[Violation]:
    vals = G.values
    n = G.n
    for r in range(n + 1):
        if vals[r][0] != 0:
            yield Violation(axiom, (r, 0), vals[r][0])
        if vals[0][r] != 0:
            yield Violation(axiom, (0, r), vals[0][r])
        if vals[r][n] != r:
            yield Violation(axiom, (r, n), vals[r][n])
        if vals[n][r] != r:
            yield Violation(axiom, (n, r), vals[n][r])


def validate_quasi(G: GridFunction) -> ValidationReport:
    """Check the quasi-copula axioms in L-scale.

    Verdict is true iff G has the uniform boundary (Q1'), is componentwise
    increasing (Q2'), and is 1-Lipschitz (Q3').  Monotonicity plus unit-step
    Lipschitz bounds along both axes are equivalent to the two-point form
    |dQ| <= |dr| + |ds| by telescoping, so only adjacent steps are examined;
    every offending step is reported.
    """
    violations = list(_boundary_violations(G, "Q1'"))
    vals = G.values
    n = G.n
    for r in range(n + 1):
        row = vals[r]
        for s in range(1, n + 1):
            step = row[s] - row[s - 1]
            if step < 0:
                violations.append(Violation("Q2'", (r, s - 1, r, s), step))
            elif step > 1:
                violations.append(Violation("Q3'", (r, s - 1, r, s), step))
    for s in range(n + 1):
        for r in range(1, n + 1):
            step = vals[r][s] - vals[r - 1][s]
            if step < 0:
                violations.append(Violation("Q2'", (r - 1, s, r, s), step))
            elif step > 1:
                violations.append(Violation("Q3'", (r - 1, s, r, s), step))
    return ValidationReport.from_violations(violations)


def has_uniform_boundary(G: GridFunction) -> bool:
    """True iff G vanishes on the zero row/column and has the full margins."""
    vals = G.values
    n = G.n
    return all(
        vals[r][0] == 0 and vals[0][r] == 0 and vals[r][n] == r and vals[n][r] == r
        for r in range(n + 1)
    )


def is_quasi(G: GridFunction) -> bool:
    """Early-exit predicate form of :func:`validate_quasi`."""
    vals = G.values
    n = G.n
    for r in range(n + 1):
        if vals[r][0] != 0 or vals[0][r] != 0 or vals[r][n] != r or vals[n][r] != r:
            return False
    for r in range(n + 1):
        row = vals[r]
        prev = row[0]
        for s in range(1, n + 1):
            v = row[s]
            if v < prev or v - prev > 1:
                return False
            prev = v
    for s in range(n + 1):
        prev = vals[0][s]
        for r in range(1, n + 1):
            v = vals[r][s]
            if v < prev or v - prev > 1:
                return False
            prev = v
    return True


def validate_copula(G: GridFunction) -> ValidationReport:
    """Check the copula axioms: boundary (C1') plus supermodularity (C2').

    Nonnegativity of every rectangle volume reduces to nonnegativity of all
    1x1 cell volumes, since every rectangle volume is a sum of cell volumes,
    so the check runs over cells only.  Monotonicity and the Lipschitz bound
    follow from (C1') plus nonnegative cells and need no separate check.
    """
    violations = list(_boundary_violations(G, "C1'"))
    vals = G.values
    for i in range(1, G.n + 1):
        for j in range(1, G.n + 1):
            mass = vals[i][j] + vals[i - 1][j - 1] - vals[i][j - 1] - vals[i - 1][j]
            if mass < 0:
                violations.append(Violation("C2'", (i, j), mass))
    return ValidationReport.from_violations(violations)


def is_copula(G: GridFunction) -> bool:
    """Early-exit predicate form of :func:`validate_copula`."""
    vals = G.values
    n = G.n
    for r in range(n + 1):
        if vals[r][0] != 0 or vals[0][r] != 0 or vals[r][n] != r or vals[n][r] != r:
            return False
    for i in range(1, n + 1):
        ri, rp = vals[i], vals[i - 1]
        for j in range(1, n + 1):
            if ri[j] + rp[j - 1] - ri[j - 1] - rp[j] < 0:
                return False
    return True


def validate_abm(A: MassMatrix) -> ValidationReport:
    """Check the alternating-bistochastic conditions exactly.

    All row and column sums must equal 1 and every row-prefix and
    column-prefix sum must lie in [0, 1].
    """
    violations: list[Violation] = []
    n = A.n
    for i in range(n):
        acc = ZERO
        for j in range(n):
            acc += A.entries[i][j]
            if not (0 <= acc <= 1):
                violations.append(Violation("row-prefix", (i + 1, j + 1), acc))
        if acc != 1:
            violations.append(Violation("row-sum", (i + 1,), acc))
    for j in range(n):
        acc = ZERO
        for i in range(n):
            acc += A.entries[i][j]
            if not (0 <= acc <= 1):
                violations.append(Violation("col-prefix", (i + 1, j + 1), acc))
        if acc != 1:
            violations.append(Violation("col-sum", (j + 1,), acc))
    return ValidationReport.from_violations(violations)


def is_abm(A: MassMatrix) -> bool:
    """Early-exit predicate form of :func:`validate_abm`."""
    n = A.n
    for i in range(n):
        acc = ZERO
        for j in range(n):
            acc += A.entries[i][j]
            if acc < 0 or acc > 1:
                return False
        if acc != 1:
            return False
    for j in range(n):
        acc = ZERO
        for i in range(n):
            acc += A.entries[i][j]
            if acc < 0 or acc > 1:
                return False
        if acc != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# bijection and volumes


def _cumulative(entries: Matrix) -> Matrix:
    """Unchecked cumulative-sum table: vals[r][s] = sum of entries[:r][:s]."""
    n = len(entries)
    vals = [[ZERO] * (n + 1) for _ in range(n + 1)]
    for r in range(1, n + 1):
        row_ent = entries[r - 1]
        prev = vals[r - 1]
        cur = vals[r]
        acc = ZERO
        for s in range(1, n + 1):
            acc += row_ent[s - 1]
            cur[s] = prev[s] + acc
    return tuple(tuple(row) for row in vals)


def _second_difference(values: Matrix) -> Matrix:
    """Unchecked cell-mass table: a[s][t] = V of the unit cell with corner (s,t)."""
    n = len(values) - 1
    return tuple(
        tuple(
            values[s][t] + values[s - 1][t - 1] - values[s][t - 1] - values[s - 1][t]
            for t in range(1, n + 1)
        )
        for s in range(1, n + 1)
    )


def asm_to_quasi(A: MassMatrix) -> GridFunction:
    """The unique grid function with cell masses A (L-scale cumulative sums).

    Rejects matrices that fail :func:`validate_abm`; the result then always
    passes :func:`validate_quasi`.
    """
    validate_abm(A).require("not an alternating bistochastic matrix")
    return GridFunction(A.n, _cumulative(A.entries))


def quasi_to_abm(Q: GridFunction) -> MassMatrix:
    """The uniquely associated mass matrix, by second differences.

    Rejects inputs failing :func:`validate_quasi`; round-trips exactly with
    :func:`asm_to_quasi`.
    """
    validate_quasi(Q).require("not a quasi-copula")
    return MassMatrix(Q.n, _second_difference(Q.values))


def _matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[ZERO] * cols for _ in range(rows)]
    for i in range(rows):
        ai, oi = a[i], out[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += f * bk[j]
    return out


def quasi_to_abm_via_matrices(Q: GridFunction) -> MassMatrix:
    """Alternative computation path for the mass matrix, as K^T Q K.

    K is the identity minus the upper shift (nilpotent Jordan) matrix, and Q
    here denotes the interior n x n value table.  Kept as an independent
    cross-check of :func:`quasi_to_abm`; both paths must agree exactly.
    """
    validate_quasi(Q).require("not a quasi-copula")
    n = Q.n
    k = [[ONE if i == j else (-ONE if j == i + 1 else ZERO) for j in range(n)] for i in range(n)]
    kt = [[k[j][i] for j in range(n)] for i in range(n)]
    q = [list(row) for row in Q.interior()]
    return MassMatrix.from_rows(_matmul(_matmul(kt, q), k))


def volume(Q: GridFunction, R: Rectangle) -> Fraction:
    """The signed mass Q assigns to R, in L-scale (two-point inclusion-exclusion)."""
    if R.j > Q.n or R.l > Q.n:
        raise GridShapeError(f"rectangle {R} exceeds grid of size {Q.n}")
    v = Q.values
    return v[R.i][R.k] + v[R.j][R.l] - v[R.i][R.l] - v[R.j][R.k]


def volume_from_mass(A: MassMatrix, R: Rectangle) -> Fraction:
    """The same volume computed as the double sum of mass entries over R's cells."""
    if R.j > A.n or R.l > A.n:
        raise GridShapeError(f"rectangle {R} exceeds grid of size {A.n}")
    total = ZERO
    for r in range(R.i + 1, R.j + 1):
        row = A.entries[r - 1]
        for s in range(R.k + 1, R.l + 1):
            total += row[s - 1]
    return total


def identity_mass(n: int) -> MassMatrix:
    return MassMatrix(n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))


def antidiagonal_mass(n: int) -> MassMatrix:
    return MassMatrix(
        n, tuple(tuple(ONE if i + j == n - 1 else ZERO for j in range(n)) for i in range(n))
    )


def frechet_bounds(n: int) -> tuple[GridFunction, GridFunction]:
    """The pointwise extremes (W_n, M_n) of all copulas of size n.

    W_n is the cumulative of the antidiagonal permutation and M_n of the
    identity; every copula lies between them pointwise.
    """
    if n < 1:
        raise GridShapeError("grid size must be a positive integer")
    return asm_to_quasi(antidiagonal_mass(n)), asm_to_quasi(identity_mass(n))


def has_minimal_range(G: GridFunction) -> bool:
    """True iff the value set is exactly {0, 1, ..., n} (extreme-point flag)."""
    seen = set()
    for row in G.values:
        for v in row:
            if v.denominator != 1:
                return False
            seen.add(int(v))
    return seen == set(range(G.n + 1))


def grid_min(a: GridFunction, b: GridFunction) -> GridFunction:
    _require_same_n(a, b)
    return GridFunction(
        a.n, tuple(tuple(min(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.values, b.values))
    )


def grid_max(a: GridFunction, b: GridFunction) -> GridFunction:
    _require_same_n(a, b)
    return GridFunction(
        a.n, tuple(tuple(max(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.values, b.values))
    )


def is_proper(G: GridFunction) -> bool:
    """True iff some rectangle has negative volume, i.e. some cell mass is negative."""
    vals = G.values
    for i in range(1, G.n + 1):
        ri, rp = vals[i], vals[i - 1]
        for j in range(1, G.n + 1):
            if ri[j] + rp[j - 1] - ri[j - 1] - rp[j] < 0:
                return True
    return False
