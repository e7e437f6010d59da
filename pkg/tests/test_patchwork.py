from fractions import Fraction

import pytest

from asmcopula.defects import main_defect
from asmcopula.dense import f_matrix
from asmcopula.errors import GridShapeError, InvalidInputError
from asmcopula.grid_core import (
    GridFunction,
    MassMatrix,
    Rectangle,
    asm_to_quasi,
    identity_mass,
    is_proper,
    validate_copula,
    validate_quasi,
    volume,
    _second_difference,
)
from asmcopula.imprecise import ImprecisePair, is_dual_pair, is_imprecise_copula
from asmcopula.nondense import nondense_pair
from asmcopula.patchwork import PatchworkSpec, patchwork_pair, patchwork_single
from asmcopula.sampling import random_bistochastic


def chain_pair(n, k):
    return ImprecisePair.create(asm_to_quasi(f_matrix(n, k)), asm_to_quasi(f_matrix(n, k - 1)))


def nd_pair(n):
    pair = nondense_pair(n)
    return ImprecisePair.create(pair.quasi_lower, pair.quasi_upper)


def test_diagonal_patchwork_of_nondense_pairs_is_dual():
    pair = nd_pair(7)
    spec = PatchworkSpec.create(identity_mass(2), 7, [[pair, None], [None, pair]])
    lower, upper = patchwork_pair(spec)
    assert lower.n == upper.n == 14
    assert is_imprecise_copula(lower, upper).verdict
    assert is_dual_pair(lower, upper)


def test_diagonal_patchwork_of_chain_pairs_is_dual():
    pair = chain_pair(5, 4)
    spec = PatchworkSpec.create(identity_mass(2), 5, [[pair, None], [None, pair]])
    lower, upper = patchwork_pair(spec)
    assert lower.n == upper.n == 10
    assert is_dual_pair(lower, upper)


def test_zero_mass_cell_ignores_non_dual_content():
    dual = chain_pair(5, 4)
    non_dual = ImprecisePair.create(
        asm_to_quasi(f_matrix(5, 4)), asm_to_quasi(f_matrix(5, 2))
    )
    spec_plain = PatchworkSpec.create(identity_mass(2), 5, [[dual, None], [None, dual]])
    spec_loaded = PatchworkSpec.create(identity_mass(2), 5, [[dual, non_dual], [non_dual, dual]])
    assert patchwork_pair(spec_plain) == patchwork_pair(spec_loaded)
    lower, upper = patchwork_pair(spec_loaded)
    assert is_dual_pair(lower, upper)


def test_positive_mass_cell_with_non_dual_content_breaks_duality():
    dual = chain_pair(5, 4)
    non_dual = ImprecisePair.create(
        asm_to_quasi(f_matrix(5, 4)), asm_to_quasi(f_matrix(5, 2))
    )
    coarse = MassMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]])
    spec = PatchworkSpec.create(coarse, 5, [[dual, non_dual], [non_dual, dual]])
    lower, upper = patchwork_pair(spec)
    assert is_imprecise_copula(lower, upper).verdict
    assert not is_dual_pair(lower, upper)


def test_patchwork_single_of_copulas_is_copula(rng):
    m, n = 3, 4
    coarse = random_bistochastic(m, rng)
    upper = asm_to_quasi(identity_mass(n))
    inners = [[upper] * m for _ in range(m)]
    fine = patchwork_single(coarse, inners)
    assert validate_copula(fine).verdict


def test_patchwork_single_m1_is_identity():
    q = asm_to_quasi(f_matrix(6, 3))
    assert patchwork_single(identity_mass(1), [[q]]) == q


def test_patchwork_single_propagates_properness():
    proper = asm_to_quasi(f_matrix(3, 2))  # the smallest proper quasi-copula
    m_3 = asm_to_quasi(identity_mass(3))
    coarse = identity_mass(2)
    fine = patchwork_single(coarse, [[proper, None], [None, m_3]])
    assert validate_quasi(fine).verdict
    assert is_proper(fine)


def test_fine_margins_sum_to_one(rng):
    pair = chain_pair(4, 3)
    coarse = random_bistochastic(3, rng)
    spec = PatchworkSpec.create(coarse, 4, [[pair] * 3 for _ in range(3)])
    lower, upper = patchwork_pair(spec)
    for g in (lower, upper):
        masses = _second_difference(g.values)
        for row in masses:
            assert sum(row) == 1
        for j in range(g.n):
            assert sum(masses[i][j] for i in range(g.n)) == 1


def test_volume_scaling_inside_cells(rng):
    n = 4
    pair = chain_pair(n, 3)
    coarse = random_bistochastic(2, rng)
    spec = PatchworkSpec.create(coarse, n, [[pair] * 2 for _ in range(2)])
    lower, _ = patchwork_pair(spec)
    for ci in range(2):
        for cj in range(2):
            weight = coarse.entries[ci][cj]
            for i in range(n + 1):
                for j in range(i, n + 1):
                    for k in range(n + 1):
                        for l in range(k, n + 1):
                            fine_rect = Rectangle(ci * n + i, ci * n + j, cj * n + k, cj * n + l)
                            assert volume(lower, fine_rect) == weight * volume(
                                pair.P, Rectangle(i, j, k, l)
                            )


def test_defect_locality(rng):
    # inside each positive coarse cell the fine main defect is the scaled
    # inner main defect, at anchors strictly inside the cell
    for n in (3, 4, 5):
        pair = chain_pair(n, n - 1) if n >= 4 else chain_pair(4, 3)
        n_eff = pair.n
        coarse = random_bistochastic(2, rng)
        spec = PatchworkSpec.create(coarse, n_eff, [[pair] * 2 for _ in range(2)])
        lower, _ = patchwork_pair(spec)
        fine_dm = main_defect(lower)
        inner_dm = main_defect(pair.P)
        for ci in range(2):
            for cj in range(2):
                w = coarse.entries[ci][cj]
                for u in range(1, n_eff):
                    for v in range(1, n_eff):
                        got = fine_dm.entries[ci * n_eff + u][cj * n_eff + v]
                        assert got == w * inner_dm.entries[u][v]


def test_spec_validation_errors():
    pair = chain_pair(4, 3)
    with pytest.raises(InvalidInputError):
        # positive-mass cell without an inner pair
        PatchworkSpec.create(identity_mass(2), 4, [[pair, None], [None, None]])
    with pytest.raises(GridShapeError):
        PatchworkSpec.create(identity_mass(2), 4, [[pair]])
    with pytest.raises(GridShapeError):
        # inner size mismatch
        PatchworkSpec.create(identity_mass(2), 5, [[pair, None], [None, pair]])
    with pytest.raises(InvalidInputError):
        # negative coarse mass is not a copula mass
        bad = MassMatrix.from_rows([[0, 1, 0], [1, -1, 1], [0, 1, 0]])
        PatchworkSpec.create(bad, 4, [[pair] * 3 for _ in range(3)])


def test_random_specs_preserve_imprecision(rng):
    families = [chain_pair(5, 4), chain_pair(5, 3), chain_pair(6, 4), nd_pair(7)]
    for _ in range(8):
        m = rng.choice((2, 3))
        coarse = random_bistochastic(m, rng)
        inner_n = rng.choice((5, 6, 7))
        usable = [p for p in families if p.n == inner_n]
        if not usable:
            continue
        cells = [[rng.choice(usable) for _ in range(m)] for _ in range(m)]
        spec = PatchworkSpec.create(coarse, inner_n, cells)
        lower, upper = patchwork_pair(spec)
        assert is_imprecise_copula(lower, upper).verdict
        assert validate_quasi(lower).verdict and validate_quasi(upper).verdict


def test_patchwork_single_rejects_non_quasi_inner():
    bad = GridFunction.from_interior([[3, 1], [1, 2]])
    with pytest.raises(InvalidInputError):
        patchwork_single(identity_mass(1), [[bad]])
