"""Patchwork assembly of imprecise copulas over a coarse background copula.

A coarse m x m copula mass and an m x m grid of inner pairs of size n are
assembled into a pair on the uniform grid of size N = m*n: the fine cell
mass inside coarse cell (i, j) is the coarse mass there times the inner
cell mass.  Row and column sums stay one because both factors have unit
sums, so the fine functions are again (quasi-)copulas; the construction
preserves the imprecise-copula property, and self-duality whenever every
positive-mass cell holds a dual pair.  Cells with zero coarse mass
contribute nothing and may omit their inner pair entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import GridShapeError, InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    ZERO,
    _cumulative,
    _second_difference,
    is_quasi,
    validate_abm,
)
from .imprecise import ImprecisePair, is_imprecise_copula


@dataclass(frozen=True)
class PatchworkSpec:
    """A coarse copula mass, a common inner size, and the inner pair grid.

    The coarse matrix must be nonnegative and bistochastic; wherever its
    mass is positive an inner pair of size ``inner_n`` must be present and
    pass the imprecise-copula check.  Zero-mass cells may hold None (or an
    arbitrary pair, which is ignored by the assembly).
    """

    coarse: MassMatrix
    inner_n: int
    cells: tuple[tuple[Optional[ImprecisePair], ...], ...]

    @classmethod
    def create(
        cls,
        coarse: MassMatrix,
        inner_n: int,
        cells: Sequence[Sequence[Optional[ImprecisePair]]],
    ) -> "PatchworkSpec":
        validate_abm(coarse).require("coarse matrix is not bistochastic")
        if not coarse.is_nonnegative():
            raise InvalidInputError("coarse matrix must be a copula mass (nonnegative)")
        m = coarse.n
        grid = tuple(tuple(row) for row in cells)
        if len(grid) != m or any(len(row) != m for row in grid):
            raise GridShapeError(f"cell grid must be {m}x{m}")
        for i in range(m):
            for j in range(m):
                pair = grid[i][j]
                if coarse.entries[i][j] > 0 and pair is None:
                    raise InvalidInputError(f"cell ({i + 1}, {j + 1}) has positive mass but no inner pair")
                if pair is not None:
                    if pair.n != inner_n:
                        raise GridShapeError(
                            f"inner pair at ({i + 1}, {j + 1}) has size {pair.n}, expected {inner_n}"
                        )
                    if not is_imprecise_copula(pair.P, pair.Q).verdict:
                        raise InvalidInputError(
                            f"inner pair at ({i + 1}, {j + 1}) is not an imprecise copula"
                        )
        return cls(coarse=coarse, inner_n=inner_n, cells=grid)

    @property
    def m(self) -> int:
        return self.coarse.n

    @property
    def fine_n(self) -> int:
        return self.coarse.n * self.inner_n


def _assemble(coarse: MassMatrix, inner_masses: dict[tuple[int, int], MassMatrix], n: int) -> GridFunction:
    m = coarse.n
    fine_n = m * n
    fine = [[ZERO] * fine_n for _ in range(fine_n)]
    for i in range(m):
        for j in range(m):
            weight = coarse.entries[i][j]
            if not weight:
                continue
            block = inner_masses[(i, j)]
            for u in range(n):
                target = fine[i * n + u]
                source = block.entries[u]
                for v in range(n):
                    if source[v]:
                        target[j * n + v] = weight * source[v]
    result = GridFunction(fine_n, _cumulative(tuple(tuple(row) for row in fine)))
    if not is_quasi(result):
        raise InternalCheckError("patchwork assembly produced a non-quasi-copula")
    return result


def patchwork_single(
    coarse: MassMatrix, inners: Sequence[Sequence[Optional[GridFunction]]]
) -> GridFunction:
    """Glue one grid function per coarse cell into a fine one.

    The inner functions must be quasi-copulas of a common size; cells with
    zero coarse mass may hold None.  With m = 1 the inner function is
    returned unchanged.  The result is a quasi-copula, and a copula whenever
    the coarse mass and every inner function are copula-valued.
    """
    validate_abm(coarse).require("coarse matrix is not bistochastic")
    if not coarse.is_nonnegative():
        raise InvalidInputError("coarse matrix must be a copula mass (nonnegative)")
    m = coarse.n
    grid = tuple(tuple(row) for row in inners)
    if len(grid) != m or any(len(row) != m for row in grid):
        raise GridShapeError(f"inner grid must be {m}x{m}")
    sizes = {g.n for row in grid for g in row if g is not None}
    if len(sizes) != 1:
        raise GridShapeError("inner functions must share one size")
    n = sizes.pop()
    masses: dict[tuple[int, int], MassMatrix] = {}
    for i in range(m):
        for j in range(m):
            g = grid[i][j]
            if coarse.entries[i][j] > 0:
                if g is None:
                    raise InvalidInputError(f"cell ({i + 1}, {j + 1}) has positive mass but no inner function")
                if not is_quasi(g):
                    raise InvalidInputError(f"inner function at ({i + 1}, {j + 1}) is not a quasi-copula")
                masses[(i, j)] = MassMatrix(n, _second_difference(g.values))
    return _assemble(coarse, masses, n)


def patchwork_pair(spec: PatchworkSpec) -> tuple[GridFunction, GridFunction]:
    """Assemble the lower and upper fine functions of a patchwork spec.

    Both sides share the coarse mass; the lower side distributes each cell's
    mass by the inner lower bound, the upper side by the inner upper bound.
    The result is an imprecise copula, and a dual pair whenever every
    positive-mass inner pair is one.
    """
    n = spec.inner_n
    lower_masses: dict[tuple[int, int], MassMatrix] = {}
    upper_masses: dict[tuple[int, int], MassMatrix] = {}
    for i in range(spec.m):
        for j in range(spec.m):
            if spec.coarse.entries[i][j] > 0:
                pair = spec.cells[i][j]
                lower_masses[(i, j)] = MassMatrix(n, _second_difference(pair.P.values))
                upper_masses[(i, j)] = MassMatrix(n, _second_difference(pair.Q.values))
    return (
        _assemble(spec.coarse, lower_masses, n),
        _assemble(spec.coarse, upper_masses, n),
    )
