"""Reproduction harness: every stored reference matrix against its generator.

Each check rebuilds one published table through the library's own
constructors and compares bit-exactly.  ``run_all`` returns (name, passed)
rows; the CLI verb prints them as a table and fails if any row fails.
"""

from __future__ import annotations

from typing import Callable

from . import reference_data as ref
from .defects import main_defect, opposite_defect
from .dense import chain_witnesses, f_matrix, parity_projectors
from .grid_core import GridFunction, MassMatrix, asm_to_quasi, freeze_matrix, quasi_to_abm
from .nondense import nondense_defect, nondense_pair, nondense_witnesses


def _mass_equal(a: MassMatrix, rows) -> bool:
    return a.entries == freeze_matrix(rows)


def _grid_equal(g: GridFunction, rows) -> bool:
    return g == GridFunction.from_interior(rows)


def _check_stripe_matrices() -> list[tuple[str, bool]]:
    cases = [
        ("F(4,1)", 4, 1, ref.F_4_1, ref.Q_F_4_1),
        ("F(4,2)", 4, 2, ref.F_4_2, ref.Q_F_4_2),
        ("F(4,4)", 4, 4, ref.F_4_4, ref.Q_F_4_4),
        ("F(5,2)", 5, 2, ref.F_5_2, ref.Q_F_5_2),
        ("F(5,3)", 5, 3, ref.F_5_3, ref.Q_F_5_3),
    ]
    out = []
    for name, n, k, mass_rows, grid_rows in cases:
        a = f_matrix(n, k)
        out.append((f"{name} mass", _mass_equal(a, mass_rows)))
        out.append((f"{name} quasi-copula", _grid_equal(asm_to_quasi(a), grid_rows)))
    return out


def _check_sign_parts() -> list[tuple[str, bool]]:
    a = f_matrix(5, 3)
    return [
        ("F(5,3) positive part", _mass_equal(a.positive_part(), ref.F_5_3_POSITIVE)),
        ("F(5,3) negative part", _mass_equal(a.negative_part(), ref.F_5_3_NEGATIVE)),
    ]


def _check_stripe_sum_split() -> list[tuple[str, bool]]:
    s = tuple(
        tuple(x + y for x, y in zip(ra, rb))
        for ra, rb in zip(f_matrix(6, 4).entries, f_matrix(6, 5).entries)
    )
    sum_ok = s == freeze_matrix(ref.SUM_F_6_4_F_6_5)
    c1, c2, _ = chain_witnesses(6, 5)
    got = {quasi_to_abm(c1).entries, quasi_to_abm(c2).entries}
    want = {freeze_matrix(ref.SPLIT_F_6_A), freeze_matrix(ref.SPLIT_F_6_B)}
    return [
        ("F(6,4)+F(6,5) stripe sum", sum_ok),
        ("permutation split of F(6,4)+F(6,5)", got == want),
    ]


def _check_parity_projectors() -> list[tuple[str, bool]]:
    p1, p2 = parity_projectors(5)
    return [
        ("parity projector n=5 (odd)", p1 == freeze_matrix(ref.PARITY_5_ODD)),
        ("parity projector n=5 (even)", p2 == freeze_matrix(ref.PARITY_5_EVEN)),
    ]


def _check_nondense_7() -> list[tuple[str, bool]]:
    pair = nondense_pair(7)
    d = nondense_defect(7)
    d_ref = freeze_matrix(ref.NONDENSE_DEFECT_7)
    out = [
        ("non-dense lower mass n=7", _mass_equal(pair.asm_lower, ref.NONDENSE_LOWER_7)),
        ("non-dense upper mass n=7", _mass_equal(pair.asm_upper, ref.NONDENSE_UPPER_7)),
        ("non-dense lower quasi-copula n=7", _grid_equal(pair.quasi_lower, ref.Q_NONDENSE_LOWER_7)),
        ("non-dense upper quasi-copula n=7", _grid_equal(pair.quasi_upper, ref.Q_NONDENSE_UPPER_7)),
        ("non-dense defect n=7 (closed form)", d.interior() == d_ref),
        (
            "main defect of lower = opposite defect of upper (n=7)",
            main_defect(pair.quasi_lower).interior() == d_ref
            and opposite_defect(pair.quasi_upper).interior() == d_ref,
        ),
    ]
    triple = nondense_witnesses(7)
    witness_refs = (ref.WITNESS_7_1, ref.WITNESS_7_2, ref.WITNESS_7_3)
    mass_refs = (ref.WITNESS_MASS_7_1, ref.WITNESS_MASS_7_2, ref.WITNESS_MASS_7_3)
    pattern_refs = (ref.PATTERN_7_1, ref.PATTERN_7_2, ref.PATTERN_7_3)
    for i in range(3):
        c = triple.witnesses[i]
        out.append((f"witness copula {i + 1} (n=7)", _grid_equal(c, witness_refs[i])))
        out.append((f"witness mass {i + 1} (n=7)", _mass_equal(quasi_to_abm(c), mass_refs[i])))
        out.append(
            (f"witness pattern {i + 1} (n=7)", triple.patterns[i] == freeze_matrix(pattern_refs[i]))
        )
    return out


def _check_smallest_proper() -> list[tuple[str, bool]]:
    a = f_matrix(3, 2)
    return [
        ("smallest proper quasi-copula mass", _mass_equal(a, ref.SMALLEST_PROPER_MASS_3)),
        (
            "smallest proper quasi-copula values",
            _grid_equal(asm_to_quasi(a), ref.SMALLEST_PROPER_QUASI_3),
        ),
    ]


_SECTIONS: tuple[Callable[[], list[tuple[str, bool]]], ...] = (
    _check_stripe_matrices,
    _check_sign_parts,
    _check_stripe_sum_split,
    _check_parity_projectors,
    _check_nondense_7,
    _check_smallest_proper,
)


def run_all() -> list[tuple[str, bool]]:
    """Run every reference reproduction; order is fixed and deterministic."""
    results: list[tuple[str, bool]] = []
    for section in _SECTIONS:
        results.extend(section())
    return results
