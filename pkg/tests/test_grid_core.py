import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmcopula import reference_data as ref
from asmcopula.dense import enumerate_asms, f_matrix
from asmcopula.errors import GridShapeError, InvalidInputError
from asmcopula.grid_core import (
    GridFunction,
    MassMatrix,
    Rectangle,
    asm_to_quasi,
    frechet_bounds,
    has_minimal_range,
    has_uniform_boundary,
    identity_mass,
    is_proper,
    quasi_to_abm,
    quasi_to_abm_via_matrices,
    validate_abm,
    validate_copula,
    validate_quasi,
    volume,
    volume_from_mass,
    _second_difference,
)
from asmcopula.sampling import random_asm, random_bistochastic


def grid(rows):
    return GridFunction.from_interior(rows)


def mass(rows):
    return MassMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# validate_quasi


def test_validate_quasi_accepts_stripe_quasi():
    assert validate_quasi(grid(ref.Q_F_5_3)).verdict


def test_validate_quasi_rejects_broken_boundary():
    rows = [list(r) for r in ref.Q_F_5_3]
    rows[0][4] = 0  # values(1, n) = 0 instead of 1
    report = validate_quasi(grid(rows))
    assert not report.verdict
    assert any(v.axiom == "Q1'" and v.where == (1, 5) for v in report.violations)


def test_validate_quasi_single_lipschitz_violation():
    # monotone, boundary-correct grid with exactly one step of size 2
    g = grid(
        [
            [0, 0, 1, 1, 1],
            [0, 0, 2, 2, 2],
            [1, 1, 2, 3, 3],
            [1, 2, 3, 4, 4],
            [1, 2, 3, 4, 5],
        ]
    )
    report = validate_quasi(g)
    assert not report.verdict
    assert len(report.violations) == 1
    v = report.violations[0]
    assert v.axiom == "Q3'" and v.where == (2, 2, 2, 3) and v.value == 2


def test_validate_quasi_reports_monotonicity():
    rows = [list(r) for r in ref.Q_F_4_2]
    rows[1][1] = 3  # creates decreasing steps around (2, 2)
    report = validate_quasi(grid(rows))
    assert not report.verdict
    assert any(v.axiom == "Q2'" for v in report.violations)


# ---------------------------------------------------------------------------
# validate_copula


def test_validate_copula_accepts_witness_copula():
    assert validate_copula(grid(ref.WITNESS_7_1)).verdict


def test_validate_copula_rejects_proper_quasi():
    report = validate_copula(grid(ref.Q_F_5_3))
    assert not report.verdict
    assert all(v.axiom == "C2'" for v in report.violations)
    assert any(v.where == (2, 3) and v.value == -1 for v in report.violations)


def test_validate_copula_accepts_frechet_upper():
    assert validate_copula(grid(ref.Q_F_4_1)).verdict  # M_4


# ---------------------------------------------------------------------------
# validate_abm


def test_validate_abm_accepts_stripe_matrix():
    assert validate_abm(mass(ref.F_5_3)).verdict


def test_validate_abm_rejects_zero_matrix():
    report = validate_abm(mass([[0] * 3] * 3))
    assert not report.verdict
    assert any(v.axiom == "row-sum" for v in report.violations)


def test_validate_abm_rejects_bumped_entry():
    rows = [list(r) for r in ref.F_5_3]
    rows[2][2] = 2  # prefix sums now exceed 1
    report = validate_abm(mass(rows))
    assert not report.verdict
    assert any("prefix" in v.axiom for v in report.violations)


# ---------------------------------------------------------------------------
# bijection


def test_asm_to_quasi_stripe_case():
    assert asm_to_quasi(mass(ref.F_4_2)) == grid(ref.Q_F_4_2)


def test_asm_to_quasi_identity_cumulative():
    got = asm_to_quasi(identity_mass(3))
    assert got.interior() == ((1, 1, 1), (1, 2, 2), (1, 2, 3))


def test_asm_to_quasi_smallest_proper():
    got = asm_to_quasi(mass(ref.SMALLEST_PROPER_MASS_3))
    assert got == grid(ref.SMALLEST_PROPER_QUASI_3)


def test_asm_to_quasi_rejects_invalid():
    with pytest.raises(InvalidInputError):
        asm_to_quasi(mass([[1, 1], [0, 0]]))


def test_quasi_to_abm_nondense_lower():
    assert quasi_to_abm(grid(ref.Q_NONDENSE_LOWER_7)) == mass(ref.NONDENSE_LOWER_7)


def test_quasi_to_abm_frechet_upper_is_identity():
    w, m = frechet_bounds(6)
    assert quasi_to_abm(m) == identity_mass(6)


def test_quasi_to_abm_rejects_invalid():
    rows = [list(r) for r in ref.Q_F_4_2]
    rows[0][0] = 4
    with pytest.raises(InvalidInputError):
        quasi_to_abm(grid(rows))


def test_round_trip_random_asms():
    rng = random.Random(101)
    for _ in range(50):
        n = rng.randint(1, 8)
        a = random_asm(n, rng)
        assert quasi_to_abm(asm_to_quasi(a)) == a


@given(st.integers(0, 10_000), st.integers(2, 7))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(seed, n):
    a = random_asm(n, random.Random(seed))
    q = asm_to_quasi(a)
    assert quasi_to_abm(q) == a
    assert asm_to_quasi(quasi_to_abm(q)) == q


def test_matrix_multiplication_form_agrees():
    rng = random.Random(7)
    samples = [f_matrix(5, 3), f_matrix(8, 4)] + [random_asm(rng.randint(2, 8), rng) for _ in range(20)]
    for a in samples:
        q = asm_to_quasi(a)
        assert quasi_to_abm_via_matrices(q) == quasi_to_abm(q) == a


# ---------------------------------------------------------------------------
# volume


def test_volume_single_negative_cell():
    q = grid(ref.Q_F_5_3)
    assert volume(q, Rectangle(1, 2, 2, 3)) == -1


def test_volume_degenerate_rectangle():
    q = grid(ref.Q_F_5_3)
    assert volume(q, Rectangle(2, 2, 0, 5)) == 0


def test_volume_full_grid_is_n():
    q = grid(ref.Q_NONDENSE_LOWER_7)
    assert volume(q, Rectangle(0, 7, 0, 7)) == 7


def test_volume_out_of_range():
    with pytest.raises(GridShapeError):
        volume(grid(ref.Q_F_4_2), Rectangle(0, 5, 0, 2))


def test_volume_matches_mass_sum_exhaustively():
    rng = random.Random(99)
    for n in range(1, 7):
        a = random_asm(n, rng)
        q = asm_to_quasi(a)
        for i in range(n + 1):
            for j in range(i, n + 1):
                for k in range(n + 1):
                    for l in range(k, n + 1):
                        r = Rectangle(i, j, k, l)
                        assert volume(q, r) == volume_from_mass(a, r)


# ---------------------------------------------------------------------------
# frechet bounds


def test_frechet_bounds_printed_case():
    w, m = frechet_bounds(4)
    assert w == grid(ref.Q_F_4_4)
    assert m == grid(ref.Q_F_4_1)


def test_frechet_bounds_trivial_size():
    w, m = frechet_bounds(1)
    assert w == m == GridFunction.from_values([[0, 0], [0, 1]])


def test_frechet_bounds_sandwich_random_copulas():
    rng = random.Random(2)
    w, m = frechet_bounds(6)
    for _ in range(20):
        c = asm_to_quasi(random_bistochastic(6, rng))
        assert w.le(c) and c.le(m)


# ---------------------------------------------------------------------------
# structure, flags, misc


def test_grid_shapes_are_checked():
    with pytest.raises(GridShapeError):
        GridFunction(3, ((Fraction(0),),))
    with pytest.raises(GridShapeError):
        MassMatrix.from_rows([[1, 0], [0]])
    with pytest.raises(GridShapeError):
        Rectangle(2, 1, 0, 0)


def test_minimal_range_flag():
    assert has_minimal_range(grid(ref.Q_F_5_3))
    a = random_asm(4, random.Random(5))
    b = random_asm(4, random.Random(6))
    mixed = MassMatrix(
        4,
        tuple(
            tuple((x + y) / 2 for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        ),
    )
    q = asm_to_quasi(mixed)
    assert has_minimal_range(q) == (a == b)


def test_uniform_boundary_flag():
    assert has_uniform_boundary(grid(ref.Q_F_4_2))
    rows = [list(r) for r in ref.Q_F_4_2]
    rows[0][3] = 0
    assert not has_uniform_boundary(grid(rows))


def test_copula_iff_nonnegative_mass():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 7)
        a = random_asm(n, rng)
        q = asm_to_quasi(a)
        assert validate_copula(q).verdict == a.is_nonnegative()
        assert is_proper(q) == (not a.is_nonnegative())


def _abm_conditions_hold(diff):
    n = len(diff)
    for i in range(n):
        acc = Fraction(0)
        for j in range(n):
            acc += diff[i][j]
            if not 0 <= acc <= 1:
                return False
        if acc != 1:
            return False
    for j in range(n):
        acc = Fraction(0)
        for i in range(n):
            acc += diff[i][j]
            if not 0 <= acc <= 1:
                return False
        if acc != 1:
            return False
    return True


def test_quasi_axioms_equal_abm_axioms_exhaustive_n2():
    """The two axiomatizations agree on every integer 2x2 interior table.

    The right/bottom margins vary too, so boundary failures are covered on
    both sides of the equivalence.
    """
    n = 2
    for combo in product(range(n + 1), repeat=n * n):
        rows = [combo[i * n : (i + 1) * n] for i in range(n)]
        g = grid(rows)
        assert validate_quasi(g).verdict == _abm_conditions_hold(_second_difference(g.values))


def test_quasi_axioms_equal_abm_axioms_structured_n3():
    """Agreement at n = 3: all margin-correct interiors plus ASM mutations."""
    n = 3
    for combo in product(range(n + 1), repeat=(n - 1) * (n - 1)):
        rows = [[0] * n for _ in range(n)]
        for r in range(n - 1):
            for s in range(n - 1):
                rows[r][s] = combo[r * (n - 1) + s]
            rows[r][n - 1] = r + 1
        rows[n - 1] = list(range(1, n + 1))
        g = grid(rows)
        assert validate_quasi(g).verdict == _abm_conditions_hold(_second_difference(g.values))
    for a in enumerate_asms(n):
        base = asm_to_quasi(a).interior()
        for r in range(n):
            for s in range(n):
                for delta in (-1, 1):
                    rows = [list(row) for row in base]
                    rows[r][s] += delta
                    g = grid(rows)
                    assert (
                        validate_quasi(g).verdict
                        == _abm_conditions_hold(_second_difference(g.values))
                    )


def _fast_sweep(n, combos_with_margins):
    """Shared body of the exhaustive slow sweeps (early-exit predicate)."""
    from asmcopula.grid_core import is_quasi

    cache = [Fraction(v) for v in range(n + 1)]
    zero_row = (cache[0],) * (n + 1)
    for idx, rows in enumerate(combos_with_margins):
        values = (zero_row,) + tuple((cache[0],) + tuple(cache[v] for v in row) for row in rows)
        g = GridFunction(n, values)
        quasi = is_quasi(g)
        assert quasi == _abm_conditions_hold(_second_difference(values))
        if idx % 997 == 0:
            assert validate_quasi(g).verdict == quasi


@pytest.mark.slow
def test_quasi_axioms_equal_abm_axioms_exhaustive_n3_full():
    """All 3x3 interior tables over {0..3}, margins varying (262144 grids)."""
    n = 3
    _fast_sweep(
        n,
        ([combo[i * n : (i + 1) * n] for i in range(n)] for combo in product(range(n + 1), repeat=n * n)),
    )


@pytest.mark.slow
def test_quasi_axioms_equal_abm_axioms_exhaustive_n4():
    """All margin-correct 4x4 interior tables over {0..4} (about 2 million)."""
    n = 4

    def gen():
        margin_row = tuple(range(1, n + 1))
        for combo in product(range(n + 1), repeat=(n - 1) * (n - 1)):
            rows = [
                tuple(combo[r * (n - 1) : (r + 1) * (n - 1)]) + (r + 1,) for r in range(n - 1)
            ]
            rows.append(margin_row)
            yield rows

    _fast_sweep(n, gen())


def test_enumerated_asm_counts_match_known_sequence():
    # 1, 2, 7, 42, 429 are the numbers of n x n alternating sign matrices
    assert [sum(1 for _ in enumerate_asms(n)) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_volume_paths_agree_on_stripe_and_nondense_matrices():
    from asmcopula.nondense import nondense_pair

    cases = [f_matrix(6, 3), f_matrix(6, 4), nondense_pair(7).asm_lower]
    for a in cases:
        q = asm_to_quasi(a)
        n = a.n
        for i in range(n + 1):
            for j in range(i, n + 1):
                for k in range(n + 1):
                    for l in range(k, n + 1):
                        r = Rectangle(i, j, k, l)
                        assert volume(q, r) == volume_from_mass(a, r)
