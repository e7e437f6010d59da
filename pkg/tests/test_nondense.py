import pytest

from asmcopula import reference_data as ref
from asmcopula.defects import main_defect, opposite_defect
from asmcopula.dense import is_dense
from asmcopula.errors import InvalidInputError
from asmcopula.grid_core import (
    GridFunction,
    MassMatrix,
    freeze_matrix,
    grid_max,
    grid_min,
    validate_abm,
    validate_copula,
)
from asmcopula.imprecise import is_dual_pair, is_imprecise_copula
from asmcopula.nondense import nondense_defect, nondense_pair, nondense_witnesses


def test_printed_instance_matches():
    pair = nondense_pair(7)
    assert pair.asm_lower == MassMatrix.from_rows(ref.NONDENSE_LOWER_7)
    assert pair.asm_upper == MassMatrix.from_rows(ref.NONDENSE_UPPER_7)
    assert pair.quasi_lower == GridFunction.from_interior(ref.Q_NONDENSE_LOWER_7)
    assert pair.quasi_upper == GridFunction.from_interior(ref.Q_NONDENSE_UPPER_7)
    assert pair.defect.interior() == freeze_matrix(ref.NONDENSE_DEFECT_7)


def test_small_sizes_rejected():
    for n in (1, 4, 6):
        with pytest.raises(InvalidInputError):
            nondense_pair(n)
        with pytest.raises(InvalidInputError):
            nondense_defect(n)
        with pytest.raises(InvalidInputError):
            nondense_witnesses(n)


@pytest.mark.parametrize("n", [7, 8, 9, 10, 11])
def test_family_members_are_valid_and_dual(n):
    pair = nondense_pair(n)
    assert validate_abm(pair.asm_lower).verdict and pair.asm_lower.is_sign_matrix()
    assert validate_abm(pair.asm_upper).verdict and pair.asm_upper.is_sign_matrix()
    assert not is_dense(pair.asm_lower) and not is_dense(pair.asm_upper)
    assert is_dual_pair(pair.quasi_lower, pair.quasi_upper)
    assert is_imprecise_copula(pair.quasi_lower, pair.quasi_upper).verdict


@pytest.mark.parametrize("n", [8, 9])
def test_closed_form_defect_matches_brute_force(n):
    pair = nondense_pair(n)
    d = nondense_defect(n)
    assert main_defect(pair.quasi_lower).entries == d.entries
    assert opposite_defect(pair.quasi_upper).entries == d.entries


def test_defect_entries_zero_or_minus_one():
    for n in (7, 9, 12):
        d = nondense_defect(n)
        assert all(v in (0, -1) for row in d.entries for v in row)


@pytest.mark.parametrize("n", [7, 8, 10, 13])
def test_witnesses_are_copulas_recovering_bounds(n):
    pair = nondense_pair(n)
    triple = nondense_witnesses(n)
    assert len(triple.witnesses) == 3
    for c in triple.witnesses:
        assert validate_copula(c).verdict
        assert pair.quasi_lower.le(c) and c.le(pair.quasi_upper)
    c1, c2, c3 = triple.witnesses
    assert grid_min(grid_min(c1, c2), c3) == pair.quasi_lower
    assert grid_max(grid_max(c1, c2), c3) == pair.quasi_upper


def test_witness_patterns_are_zero_one_tables():
    triple = nondense_witnesses(9)
    for pat in triple.patterns:
        assert len(pat) == 8 and all(len(row) == 8 for row in pat)
        assert all(v in (0, 1) for row in pat for v in row)
