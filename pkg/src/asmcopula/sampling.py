"""Seeded random generators for sign matrices, quasi-copulas, and pairs.

Everything takes an explicit :class:`random.Random` so that callers (mostly
the test suite) stay deterministic.  Sampling is over valid objects by
construction; distributions are convenient rather than uniform.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .defects import transform
from .dense import compose_blocks, f_matrix
from .errors import InternalCheckError
from .grid_core import (
    GridFunction,
    MassMatrix,
    ZERO,
    _second_difference,
    asm_to_quasi,
    grid_max,
    grid_min,
)


def random_asm(n: int, rng: random.Random) -> MassMatrix:
    """A random alternating sign matrix, sampled through its cumulative table.

    The cumulative values of a sign matrix are exactly the integer tables
    with zero left/top margins, full right/bottom margins, and steps in
    {0, 1} along both axes; rows are filled left to right with a uniform
    choice over the locally admissible values, keeping completability.
    """
    prev = [0] * (n + 1)
    rows = [prev]
    for r in range(1, n + 1):
        cur = [0] * (n + 1)
        for s in range(1, n + 1):
            lo = max(cur[s - 1], prev[s], r - (n - s))
            hi = min(cur[s - 1] + 1, prev[s] + 1, r)
            if lo > hi:
                raise InternalCheckError("height-function sampling hit an empty choice set")
            cur[s] = rng.randint(lo, hi)
        rows.append(cur)
        prev = cur
    values = tuple(tuple(Fraction(v) for v in row) for row in rows)
    return MassMatrix(n, _second_difference(values))


def random_permutation_mass(n: int, rng: random.Random) -> MassMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return MassMatrix(
        n,
        tuple(
            tuple(Fraction(1) if j == perm[i] else ZERO for j in range(n)) for i in range(n)
        ),
    )


def random_bistochastic(n: int, rng: random.Random, terms: int = 3) -> MassMatrix:
    """A rational bistochastic matrix: a normalized mixture of permutations."""
    weights = [rng.randint(1, 9) for _ in range(terms)]
    total = sum(weights)
    parts = [random_permutation_mass(n, rng) for _ in range(terms)]
    entries = tuple(
        tuple(
            sum((Fraction(w, total) * p.entries[i][j] for w, p in zip(weights, parts)), ZERO)
            for j in range(n)
        )
        for i in range(n)
    )
    return MassMatrix(n, entries)


def random_abm(n: int, rng: random.Random, terms: int = 2) -> MassMatrix:
    """A rational alternating bistochastic matrix (mixture of sign matrices)."""
    weights = [rng.randint(1, 9) for _ in range(terms)]
    total = sum(weights)
    parts = [random_asm(n, rng) for _ in range(terms)]
    entries = tuple(
        tuple(
            sum((Fraction(w, total) * p.entries[i][j] for w, p in zip(weights, parts)), ZERO)
            for j in range(n)
        )
        for i in range(n)
    )
    return MassMatrix(n, entries)


def random_quasi(n: int, rng: random.Random, rational: bool = False) -> GridFunction:
    if rational:
        return asm_to_quasi(random_abm(n, rng, terms=rng.randint(2, 3)))
    return asm_to_quasi(random_asm(n, rng))


def random_copula(n: int, rng: random.Random) -> GridFunction:
    return asm_to_quasi(random_bistochastic(n, rng, terms=rng.randint(2, 4)))


def random_quasi_pair(n: int, rng: random.Random) -> tuple[GridFunction, GridFunction]:
    """A pair of quasi-copulas mixing ordered, transformed, and raw cases.

    Produces imprecise pairs (min/max combinations, defect-transform pairs,
    stripe-chain pairs) as well as unordered raw pairs, so that both the
    positive and the negative branches of the pair criteria get exercised.
    """
    kind = rng.choice(("minmax", "main", "opposite", "chain", "raw"))
    if kind == "minmax":
        a = random_quasi(n, rng, rational=rng.random() < 0.3)
        b = random_quasi(n, rng, rational=rng.random() < 0.3)
        return grid_min(a, b), grid_max(a, b)
    if kind == "main":
        p = random_quasi(n, rng)
        return p, transform(p, "main")
    if kind == "opposite":
        q = random_quasi(n, rng)
        return transform(q, "opposite"), q
    if kind == "chain" and n >= 3:
        hi = rng.randint(2, n - 1)
        lo = rng.randint(1, hi)
        return asm_to_quasi(f_matrix(n, hi)), asm_to_quasi(f_matrix(n, lo))
    return random_quasi(n, rng), random_quasi(n, rng)


def random_dense_composition(n: int, rng: random.Random) -> MassMatrix:
    """A random dense sign matrix assembled from random irreducible blocks."""
    parts: list[int] = []
    remaining = n
    while remaining:
        choices = [1] + [m for m in range(3, remaining + 1)]
        part = rng.choice(choices)
        parts.append(part)
        remaining -= part
    blocks = [(m, 1 if m == 1 else rng.randint(2, m - 1)) for m in parts]
    sigma = list(range(len(blocks)))
    rng.shuffle(sigma)
    return compose_blocks(blocks, sigma)
