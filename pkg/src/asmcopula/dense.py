"""Dense sign matrices: the stripe family, block structure, and chain machinery.

A sign matrix is dense when the nonzero entries of every row and every
column are contiguous.  The irreducible dense matrices are the 1x1 matrix
[1] and the stripe matrices F(n, k): a diamond-shaped frame of four stripes
of ones whose interior alternates in sign.  Every dense sign matrix is a
block arrangement of irreducible ones, one nonzero block per block row and
block column, and this module recovers and rebuilds that arrangement.

The stripe family carries a chain of self-dual imprecise copulas: the main
transform steps k down by one, the opposite transform steps it up, and the
chain is closed off by the two Frechet bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .defects import main_defect, transform
from .errors import GridShapeError, InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    Matrix,
    ONE,
    ZERO,
    asm_to_quasi,
    frechet_bounds,
    grid_max,
    grid_min,
    is_abm,
    is_copula,
    validate_abm,
)


def f_matrix(n: int, k: int) -> MassMatrix:
    """The dense stripe matrix F(n, k), 1 <= k <= n.

    Ones sit on the four stripes joining (1,k), (k,1), (n, n-k+1) and
    (n-k+1, n); inside the frame each row alternates 1, -1, ..., 1 over its
    contiguous nonzero span, which is forced by the alternating row/column
    structure rather than coded as a second formula.  F(n, 1) is the
    identity and F(n, n) the antidiagonal.  The result is validated before
    it is returned.
    """
    if not 1 <= k <= n:
        raise InvalidInputError(f"stripe parameter must satisfy 1 <= k <= n, got k={k}, n={n}")
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for i in range(1, n + 1):
        cols = []
        if i <= k:
            cols.append(k + 1 - i)  # upper antidiagonal stripe
        if i <= n - k + 1:
            cols.append(k - 1 + i)  # upper diagonal stripe
        if i >= n - k + 1:
            cols.append(2 * n - k + 1 - i)  # lower antidiagonal stripe
        if i >= k:
            cols.append(i - k + 1)  # lower diagonal stripe
        lo[i], hi[i] = min(cols), max(cols)
    rows = []
    for i in range(1, n + 1):
        row = [ZERO] * n
        sign = ONE
        for j in range(lo[i], hi[i] + 1):
            row[j - 1] = sign
            sign = -sign
        if sign > 0:  # span must end on +1, i.e. have odd length
            raise InternalCheckError(f"stripe span of row {i} has even length for n={n}, k={k}")
        rows.append(tuple(row))
    out = MassMatrix(n, tuple(rows))
    validate_abm(out).require("stripe construction produced an invalid matrix")
    return out


def is_dense(A: MassMatrix) -> bool:
    """True iff the nonzero entries of every row and column are contiguous.

    Only defined for valid sign matrices (entries in {-1, 0, 1}); anything
    else is rejected.
    """
    if not A.is_sign_matrix() or not is_abm(A):
        raise InvalidInputError("density is only defined for alternating sign matrices")
    n = A.n
    for i in range(n):
        row = A.entries[i]
        nz = [j for j in range(n) if row[j]]
        if nz[-1] - nz[0] + 1 != len(nz):
            return False
    for j in range(n):
        nz = [i for i in range(n) if A.entries[i][j]]
        if nz[-1] - nz[0] + 1 != len(nz):
            return False
    return True


@dataclass(frozen=True)
class BlockDecomposition:
    """Block structure of a dense sign matrix.

    ``blocks[r] = (m_r, k_r)`` lists the irreducible blocks in block-row
    order ((1, 1) denotes the 1x1 block); ``sigma[r]`` is the 0-based block
    column holding block r.  Recomposition reproduces the original matrix
    exactly.
    """

    n: int
    blocks: tuple[tuple[int, int], ...]
    sigma: tuple[int, ...]


def decompose_dense(A: MassMatrix) -> BlockDecomposition:
    """Recover the irreducible block structure of a dense sign matrix.

    The scan follows the row nonzero counts: a block starts at a count-1
    row; if the next row also has count 1 the block is 1x1, otherwise the
    block ends at the next count-1 row (counts in between are unimodal odd
    numbers).  Each multi-row segment is identified by direct pattern match
    against the stripe candidates of its size, and the block column order is
    read off the column spans.  The result is verified by recomposition.
    """
    if not is_dense(A):
        raise InvalidInputError("only dense sign matrices admit the block decomposition")
    n = A.n
    counts = [sum(1 for v in row if v) for row in A.entries]
    segments: list[tuple[int, int]] = []  # row ranges [start, end] inclusive, 0-based
    pos = 0
    while pos < n:
        if counts[pos] != 1:
            raise InternalCheckError("block scan desynchronised: segment must start at count 1")
        if pos + 1 >= n or counts[pos + 1] == 1:
            segments.append((pos, pos))
            pos += 1
            continue
        end = pos + 2
        while counts[end] != 1:
            end += 1
        segments.append((pos, end))
        pos = end + 1

    blocks: list[tuple[int, int]] = []
    col_starts: list[int] = []
    for start, end in segments:
        size = end - start + 1
        used = sorted({j for i in range(start, end + 1) for j, v in enumerate(A.entries[i]) if v})
        if used[-1] - used[0] + 1 != size or len(used) > size:
            raise InternalCheckError("block columns are not a contiguous span of the block size")
        sub = tuple(tuple(A.entries[i][used[0] : used[0] + size]) for i in range(start, end + 1))
        if size == 1:
            blocks.append((1, 1))
        else:
            k_found = next(
                (k for k in range(2, size) if f_matrix(size, k).entries == sub), None
            )
            if k_found is None:
                raise InternalCheckError(f"segment of size {size} matches no stripe matrix")
            blocks.append((size, k_found))
        col_starts.append(used[0])
    order = sorted(range(len(segments)), key=lambda r: col_starts[r])
    sigma = [0] * len(segments)
    for col_index, r in enumerate(order):
        sigma[r] = col_index
    out = BlockDecomposition(n=n, blocks=tuple(blocks), sigma=tuple(sigma))
    if compose_blocks(out.blocks, out.sigma) != A:
        raise InternalCheckError("block decomposition failed the recomposition round-trip")
    return out


def compose_blocks(
    blocks: Sequence[tuple[int, int]], sigma: Sequence[int]
) -> MassMatrix:
    """Assemble a dense sign matrix from irreducible blocks and a placement.

    ``blocks[r] = (m_r, k_r)`` in block-row order; block r occupies block
    column ``sigma[r]`` (0-based) and all other blocks in its rows/columns
    are zero.  Inverse of :func:`decompose_dense`.
    """
    l = len(blocks)
    if sorted(sigma) != list(range(l)):
        raise GridShapeError("sigma must be a permutation of the block indices")
    for m, k in blocks:
        if m == 1:
            if k != 1:
                raise InvalidInputError("1x1 blocks must carry k = 1")
        elif m < 3 or not 2 <= k <= m - 1:
            raise InvalidInputError(f"irreducible blocks need m >= 3 and 2 <= k <= m-1, got {(m, k)}")
    n = sum(m for m, _ in blocks)
    inv = [0] * l
    for r, c in enumerate(sigma):
        inv[c] = r
    col_offset_of_block_col = []
    acc = 0
    for c in range(l):
        col_offset_of_block_col.append(acc)
        acc += blocks[inv[c]][0]
    out = [[ZERO] * n for _ in range(n)]
    row_offset = 0
    for r, (m, k) in enumerate(blocks):
        col_offset = col_offset_of_block_col[sigma[r]]
        sub = f_matrix(m, k).entries if m > 1 else ((ONE,),)
        for i in range(m):
            out[row_offset + i][col_offset : col_offset + m] = sub[i]
        row_offset += m
    return MassMatrix(n, tuple(tuple(row) for row in out))


# ---------------------------------------------------------------------------
# chain of dual pairs


@dataclass(frozen=True)
class ChainEntry:
    """One element of the stripe chain, with its duality certificate.

    ``dual_with_next`` certifies that this entry and the next one (parameter
    k - 1) form a self-dual imprecise copula; None for the last entry.
    """

    k: int
    asm: MassMatrix
    quasi: GridFunction
    dual_with_next: Optional[bool]


def maximal_chain(n: int) -> list[ChainEntry]:
    """The maximal chain of self-dual imprecise copulas on the stripe family.

    Entries run k = n-1 down to 2; consecutive entries are verified to be
    dual pairs, and the endpoints are checked against the Frechet bounds
    (the opposite transform of the first entry is W, the main transform of
    the last is M), which is why the chain cannot be extended.
    """
    from .imprecise import is_dual_pair

    if n < 4:
        raise InvalidInputError("the chain needs n >= 4")
    quasis = {k: asm_to_quasi(f_matrix(n, k)) for k in range(2, n)}
    entries: list[ChainEntry] = []
    for k in range(n - 1, 1, -1):
        dual = is_dual_pair(quasis[k], quasis[k - 1]) if k >= 3 else None
        if dual is False:
            raise InternalCheckError(f"chain pair (k={k}, k-1={k - 1}) failed duality at n={n}")
        entries.append(ChainEntry(k=k, asm=f_matrix(n, k), quasi=quasis[k], dual_with_next=dual))
    w, m = frechet_bounds(n)
    if transform(quasis[n - 1], "opposite") != w:
        raise InternalCheckError("chain endpoint failed: opposite transform of k=n-1 is not W")
    if transform(quasis[2], "main") != m:
        raise InternalCheckError("chain endpoint failed: main transform of k=2 is not M")
    return entries


def parity_projectors(n: int) -> tuple[Matrix, Matrix]:
    """The two 0/1 diagonal matrices selecting odd and even diagonal positions.

    The first has ones at 1-based diagonal positions 1, 3, 5, ...; the
    second is its complement.
    """
    p1 = tuple(
        tuple((ONE if (i == j and i % 2 == 0) else ZERO) for j in range(n)) for i in range(n)
    )
    p2 = tuple(
        tuple((ONE if (i == j and i % 2 == 1) else ZERO) for j in range(n)) for i in range(n)
    )
    return p1, p2


def chain_witnesses(n: int, k: int) -> tuple[GridFunction, GridFunction, GridFunction]:
    """Closed-form coherence witnesses for the chain pair (k, k-1).

    Splitting the main defect of Q(F(n, k)) by row parity gives two
    permutation copulas C1 and C2 whose entrywise min and max recover the
    two bounds; the third returned copula is the midpoint, whose mass is the
    nonnegative average of the two stripe matrices.  All three are verified
    before being returned.
    """
    if n < 4 or not 3 <= k <= n - 1:
        raise InvalidInputError(f"chain witnesses need n >= 4 and 3 <= k <= n-1, got {(n, k)}")
    lower = asm_to_quasi(f_matrix(n, k))
    upper = asm_to_quasi(f_matrix(n, k - 1))
    dm = main_defect(lower)
    witnesses = []
    for parity in (0, 1):
        values = [list(row) for row in lower.values]
        for r in range(1, n + 1):
            if (r - 1) % 2 == parity:
                for s in range(1, n + 1):
                    values[r][s] -= dm.entries[r][s]
        witnesses.append(GridFunction(n, tuple(tuple(row) for row in values)))
    c1, c2 = witnesses
    mid_entries = tuple(
        tuple((a + b) / 2 for a, b in zip(ra, rb))
        for ra, rb in zip(f_matrix(n, k).entries, f_matrix(n, k - 1).entries)
    )
    midpoint_mass = MassMatrix(n, mid_entries)
    if not midpoint_mass.is_nonnegative():
        raise InternalCheckError("midpoint of consecutive stripe matrices must be nonnegative")
    midpoint = asm_to_quasi(midpoint_mass)
    for c in (c1, c2, midpoint):
        if not (is_copula(c) and lower.le(c) and c.le(upper)):
            raise InternalCheckError("chain witness failed copula or sandwich verification")
    if grid_min(c1, c2) != lower or grid_max(c1, c2) != upper:
        raise InternalCheckError("chain witnesses do not recover the bounds by min/max")
    return c1, c2, midpoint


def dense_dual_characterization(A: MassMatrix) -> tuple[bool, bool]:
    """Predict self-duality of the two one-sided pairs from the block data.

    First component: (Q(A), main transform of Q(A)) is a self-dual imprecise
    copula iff every nonzero block is (1, 1) or has m >= 4 with
    3 <= k <= m-1, and at least one block has m >= 4.  Second component:
    same for (opposite transform of Q(A), Q(A)) with 2 <= k <= m-2.  Must
    agree with direct evaluation via the transform identities.
    """
    decomposition = decompose_dense(A)
    blocks = decomposition.blocks

    def side(k_min: int, k_max_gap: int) -> bool:
        any_big = False
        for m, k in blocks:
            if m == 1:
                continue
            if m < 4 or not k_min <= k <= m - k_max_gap:
                return False
            any_big = True
        return any_big

    return side(3, 1), side(2, 2)


# ---------------------------------------------------------------------------
# enumeration (used as the search-based oracle in tests)


def enumerate_asms(n: int) -> Iterator[MassMatrix]:
    """Yield every n x n alternating sign matrix, by prefix-pruned backtracking.

    Entries are chosen row by row from {-1, 0, 1} keeping all row and column
    prefix sums in {0, 1}; a completed matrix additionally needs every
    column sum equal to 1, which the final row forces.
    """
    col_prefix = [0] * n
    rows: list[tuple[int, ...]] = []

    def fill_row(i: int, j: int, row_prefix: int, row: list[int]) -> Iterator[MassMatrix]:
        if j == n:
            if row_prefix != 1:
                return
            rows.append(tuple(row))
            if i == n - 1:
                if all(c == 1 for c in col_prefix):
                    yield MassMatrix(
                        n, tuple(tuple(Fraction(v) for v in r) for r in rows)
                    )
            else:
                yield from fill_row(i + 1, 0, 0, [0] * n)
            rows.pop()
            return
        for e in (-1, 0, 1):
            rp = row_prefix + e
            cp = col_prefix[j] + e
            if 0 <= rp <= 1 and 0 <= cp <= 1:
                row[j] = e
                col_prefix[j] = cp
                yield from fill_row(i, j + 1, rp, row)
                col_prefix[j] = cp - e
                row[j] = 0

    yield from fill_row(0, 0, 0, [0] * n)


def enumerate_dense_asms(n: int) -> Iterator[MassMatrix]:
    """All dense sign matrices of size n, filtered out of the full enumeration."""
    for a in enumerate_asms(n):
        if is_dense(a):
            yield a


def enumerate_dense_compositions(n: int) -> Iterator[MassMatrix]:
    """All dense sign matrices of size n built constructively from blocks.

    Enumerates every composition of n into parts of size 1 or >= 3, every
    admissible stripe parameter per part, and every block-column placement.
    By the structure theorem this produces each dense matrix exactly once.
    """
    from itertools import permutations

    def compositions(total: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for part in range(1, total + 1):
            if part == 2:
                continue
            for rest in compositions(total - part):
                yield (part,) + rest

    def parameter_choices(parts: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not parts:
            yield ()
            return
        m = parts[0]
        ks = (1,) if m == 1 else tuple(range(2, m))
        for k in ks:
            for rest in parameter_choices(parts[1:]):
                yield ((m, k),) + rest

    for parts in compositions(n):
        for blocks in parameter_choices(parts):
            for sigma in permutations(range(len(parts))):
                yield compose_blocks(blocks, sigma)
