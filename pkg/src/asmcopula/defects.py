"""Defect matrices of quasi-copulas and the six induced transformations.

For each lattice point (r, s) there are four families of rectangles having
(r, s) as a fixed corner, one per corner direction.  In matrix orientation
(row index growing downward) the direction names are compass-style:

* ``se``: rectangles extending down-right, vertex form [r, b] x [s, d];
* ``sw``: down-left, [r, b] x [c, s];
* ``nw``: up-left, [a, r] x [c, s];
* ``ne``: up-right, [a, r] x [s, d].

The directional defect at (r, s) is the minimum of 0 and all volumes over
the family, so defect matrices are nonpositive and vanish wherever the
family is empty or every member touches the grid boundary.  The main defect
is the entrywise min of ``se`` and ``nw``, the opposite defect of ``sw`` and
``ne``.  Each defect yields a transformation: subtracting the main defect
(or a constituent of it) and adding the opposite defect (or a constituent)
maps quasi-copulas to quasi-copulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GridShapeError, InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    Matrix,
    ZERO,
    is_quasi,
    scaled_int_matrix,
)

DIRECTIONS = ("se", "sw", "nw", "ne")
TRANSFORM_KINDS = DIRECTIONS + ("main", "opposite")

# transformation sign conventions: Q_se = Q - D_se, Q_sw = Q + D_sw, ...
_TRANSFORM_SIGN = {"se": -1, "sw": +1, "nw": -1, "ne": +1, "main": -1, "opposite": +1}


@dataclass(frozen=True)
class DefectMatrix:
    """A nonpositive matrix over the full lattice ``{0..n}^2``.

    Stored with the structural zero borders so that it is index-compatible
    with :class:`~asmcopula.grid_core.GridFunction` in transform arithmetic.
    """

    n: int
    direction: str
    entries: Matrix

    def __post_init__(self) -> None:
        if self.direction not in TRANSFORM_KINDS:
            raise GridShapeError(f"unknown defect direction {self.direction!r}")
        if len(self.entries) != self.n + 1 or any(len(r) != self.n + 1 for r in self.entries):
            raise GridShapeError(f"expected a {self.n + 1}x{self.n + 1} defect table")

    def entry(self, r: int, s: int) -> Fraction:
        return self.entries[r][s]

    def interior(self) -> Matrix:
        """The n x n table at indices 1..n (rows/columns 0 are structurally zero)."""
        return tuple(row[1:] for row in self.entries[1:])

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)


def _entrywise_min(n: int, a: Matrix, b: Matrix, direction: str) -> DefectMatrix:
    return DefectMatrix(
        n, direction, tuple(tuple(min(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))
    )


def _directional_int(n: int, vals: list[list[int]], direction: str) -> list[list[int]]:
    """Brute-force enumeration of min{0, V(R)} over the anchored family.

    ``vals`` is the integer-scaled value table; results are in the same
    scale.  Every rectangle of the family is visited; the loops only hoist
    the terms that do not depend on the inner index.
    """
    out = [[0] * (n + 1) for _ in range(n + 1)]
    for r in range(n + 1):
        vr = vals[r]
        for s in range(n + 1):
            best = 0
            if direction == "se":
                base = vr[s]
                for b in range(r + 1, n + 1):
                    vb = vals[b]
                    head = base - vb[s]
                    for d in range(s + 1, n + 1):
                        v = head + vb[d] - vr[d]
                        if v < best:
                            best = v
            elif direction == "sw":
                base = -vr[s]
                for b in range(r + 1, n + 1):
                    vb = vals[b]
                    head = base + vb[s]
                    for c in range(s):
                        v = head + vr[c] - vb[c]
                        if v < best:
                            best = v
            elif direction == "nw":
                base = vr[s]
                for a in range(r):
                    va = vals[a]
                    head = base - va[s]
                    for c in range(s):
                        v = head + va[c] - vr[c]
                        if v < best:
                            best = v
            else:  # ne
                base = -vr[s]
                for a in range(r):
                    va = vals[a]
                    head = base + va[s]
                    for d in range(s + 1, n + 1):
                        v = head + vr[d] - va[d]
                        if v < best:
                            best = v
            out[r][s] = best
    return out


def _require_quasi(Q: GridFunction) -> None:
    if not is_quasi(Q):
        raise InvalidInputError("defects are only defined for quasi-copulas")


def _int_table_to_matrix(table: list[list[int]], den: int) -> Matrix:
    if den == 1:
        return tuple(tuple(Fraction(v) for v in row) for row in table)
    return tuple(tuple(Fraction(v, den) for v in row) for row in table)


def directional_defect(Q: GridFunction, direction: str) -> DefectMatrix:
    """One of the four directional defect matrices of a quasi-copula.

    This is the definitional oracle: the minimum is taken by enumerating all
    rectangles anchored at each lattice point.  Closed-form fast paths (see
    :func:`dense_defects`) must reproduce it entrywise.
    """
    if direction not in DIRECTIONS:
        raise GridShapeError(f"unknown defect direction {direction!r}")
    _require_quasi(Q)
    den, vals = scaled_int_matrix(Q.values)
    table = _directional_int(Q.n, vals, direction)
    return DefectMatrix(Q.n, direction, _int_table_to_matrix(table, den))


def main_defect(Q: GridFunction) -> DefectMatrix:
    """Entrywise minimum of the ``se`` and ``nw`` directional defects."""
    _require_quasi(Q)
    den, vals = scaled_int_matrix(Q.values)
    a = _directional_int(Q.n, vals, "se")
    b = _directional_int(Q.n, vals, "nw")
    table = [[min(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return DefectMatrix(Q.n, "main", _int_table_to_matrix(table, den))


def opposite_defect(Q: GridFunction) -> DefectMatrix:
    """Entrywise minimum of the ``sw`` and ``ne`` directional defects."""
    _require_quasi(Q)
    den, vals = scaled_int_matrix(Q.values)
    a = _directional_int(Q.n, vals, "sw")
    b = _directional_int(Q.n, vals, "ne")
    table = [[min(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return DefectMatrix(Q.n, "opposite", _int_table_to_matrix(table, den))


def _defect_for_kind(Q: GridFunction, kind: str) -> DefectMatrix:
    if kind == "main":
        return main_defect(Q)
    if kind == "opposite":
        return opposite_defect(Q)
    return directional_defect(Q, kind)


def transform(Q: GridFunction, kind: str) -> GridFunction:
    """Apply one of the six defect transformations.

    Sign conventions: the ``se``, ``nw`` and ``main`` defects are subtracted,
    the ``sw``, ``ne`` and ``opposite`` defects are added.  Since defects are
    nonpositive this gives Q_main >= Q >= Q_opposite pointwise.  The result
    of any of the six is again a quasi-copula.
    """
    if kind not in TRANSFORM_KINDS:
        raise GridShapeError(f"unknown transform kind {kind!r}")
    d = _defect_for_kind(Q, kind)
    sign = _TRANSFORM_SIGN[kind]
    values = tuple(
        tuple(v + sign * e for v, e in zip(rv, re)) for rv, re in zip(Q.values, d.entries)
    )
    return GridFunction(Q.n, values)


def dense_defects(A: MassMatrix) -> dict[str, DefectMatrix]:
    """All six defect matrices of a dense sign matrix, by closed form.

    For a dense matrix the defect anchored at (r, s) is -1 exactly when the
    adjacent cell of A in the corner direction carries a -1, and 0 otherwise;
    equivalently the four directional defects are the negative part of A
    shifted by the nilpotent Jordan matrix:

        D_se = J A- J^T,  D_sw = J A-,  D_nw = A-,  D_ne = A- J^T,

    with the main and opposite defects their entrywise minima.  The closed
    forms are only valid for dense matrices, so anything else is rejected;
    results agree entrywise with the brute-force enumeration.
    """
    from .dense import is_dense  # local import: dense builds on this module

    if not is_dense(A):
        raise InvalidInputError(
            "closed-form defects are only established for dense sign matrices; "
            "use directional_defect / main_defect / opposite_defect instead"
        )
    n = A.n

    def neg(i: int, j: int) -> Fraction:
        # negative part of A at 1-based (i, j); zero outside the index range
        if 1 <= i <= n and 1 <= j <= n:
            v = A.entries[i - 1][j - 1]
            return v if v < 0 else ZERO
        return ZERO

    def shifted(di: int, dj: int) -> Matrix:
        return tuple(tuple(neg(r + di, s + dj) for s in range(n + 1)) for r in range(n + 1))

    d_se = DefectMatrix(n, "se", shifted(1, 1))
    d_sw = DefectMatrix(n, "sw", shifted(1, 0))
    d_nw = DefectMatrix(n, "nw", shifted(0, 0))
    d_ne = DefectMatrix(n, "ne", shifted(0, 1))
    return {
        "se": d_se,
        "sw": d_sw,
        "nw": d_nw,
        "ne": d_ne,
        "main": _entrywise_min(n, d_se.entries, d_nw.entries, "main"),
        "opposite": _entrywise_min(n, d_sw.entries, d_ne.entries, "opposite"),
    }


def iterate_to_self_dual(
    P: GridFunction, Q: GridFunction
) -> tuple[GridFunction, GridFunction, int]:
    """Iterate the main/opposite transformations to their fixpoint pair.

    Starting from an imprecise copula (P, Q), each round replaces the pair by
    (main-transform of P, then opposite-transform of that).  The sequence is
    monotone and stops as soon as a round leaves the pair unchanged; the
    fixpoint satisfies main(P*) == Q* and opposite(Q*) == P*.  Returns the
    fixpoint and the number of rounds that changed the pair.

    Iterations are capped at 4 n^2: for integer-valued minimal-range inputs
    termination is finite, and the cap guards non-integer inputs.
    """
    if P.n != Q.n:
        raise GridShapeError(f"size mismatch: {P.n} vs {Q.n}")
    if not (is_quasi(P) and is_quasi(Q)):
        raise InvalidInputError("iterate_to_self_dual needs two quasi-copulas")
    if not (transform(P, "main").le(Q) and P.le(transform(Q, "opposite"))):
        raise InvalidInputError("iterate_to_self_dual needs an imprecise copula")
    cap = 4 * P.n * P.n
    prev_p, prev_q = P, Q
    steps = 0
    for _ in range(cap):
        next_q = transform(prev_p, "main")
        next_p = transform(next_q, "opposite")
        if next_p == prev_p and next_q == prev_q:
            return prev_p, prev_q, steps
        steps += 1
        prev_p, prev_q = next_p, next_q
    raise InternalCheckError(f"self-dual iteration did not stabilise within {cap} rounds")
