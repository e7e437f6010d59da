import random

import pytest

from asmcopula import reference_data as ref
from asmcopula.dense import f_matrix
from asmcopula.errors import GridShapeError, InvalidInputError
from asmcopula.grid_core import (
    GridFunction,
    asm_to_quasi,
    frechet_bounds,
    is_copula,
    validate_copula,
)
from asmcopula.imprecise import (
    ImprecisePair,
    VERDICT_ASL_NOT_COHERENT,
    VERDICT_COHERENT,
    VERDICT_NOT_ASL,
    _entry_extremum,
    avoids_sure_loss,
    coherence_check,
    is_dual_pair,
    is_imprecise_copula,
    is_imprecise_via_defects,
)
from asmcopula.sampling import random_bistochastic, random_quasi_pair


def grid(rows):
    return GridFunction.from_interior(rows)


@pytest.fixture(scope="module")
def nd7():
    return grid(ref.Q_NONDENSE_LOWER_7), grid(ref.Q_NONDENSE_UPPER_7)


# ---------------------------------------------------------------------------
# the two imprecise-copula criteria


def test_printed_pair_is_imprecise(nd7):
    assert is_imprecise_copula(*nd7).verdict
    assert is_imprecise_via_defects(*nd7)


def test_swapped_pair_is_not_imprecise(nd7):
    lower, upper = nd7
    report = is_imprecise_copula(upper, lower)
    assert not report.verdict
    assert not is_imprecise_via_defects(upper, lower)


def test_chain_interval_is_imprecise():
    p = asm_to_quasi(f_matrix(6, 5))
    q = asm_to_quasi(f_matrix(6, 3))
    assert is_imprecise_copula(p, q).verdict
    assert is_imprecise_via_defects(p, q)


def test_frechet_interval_is_imprecise():
    w, m = frechet_bounds(5)
    assert is_imprecise_copula(w, m).verdict
    assert is_imprecise_via_defects(w, m)


def test_criteria_agree_on_random_pairs(rng):
    for _ in range(80):
        n = rng.randint(2, 6)
        p, q = random_quasi_pair(n, rng)
        assert is_imprecise_copula(p, q).verdict == is_imprecise_via_defects(p, q)


def test_ic_dimension_mismatch():
    with pytest.raises(GridShapeError):
        is_imprecise_copula(asm_to_quasi(f_matrix(4, 2)), asm_to_quasi(f_matrix(5, 2)))


# ---------------------------------------------------------------------------
# dual pairs


def test_printed_pair_is_dual(nd7):
    assert is_dual_pair(*nd7)


def test_chain_neighbours_are_dual():
    assert is_dual_pair(asm_to_quasi(f_matrix(7, 4)), asm_to_quasi(f_matrix(7, 3)))


def test_copula_pair_is_not_dual_because_not_proper():
    _, m = frechet_bounds(5)
    assert not is_dual_pair(m, m)
    assert is_dual_pair(m, m, require_proper=False)


def test_non_adjacent_chain_pair_is_not_dual():
    p = asm_to_quasi(f_matrix(6, 5))
    q = asm_to_quasi(f_matrix(6, 3))
    assert not is_dual_pair(p, q)


# ---------------------------------------------------------------------------
# avoiding sure loss


def test_asl_witness_for_printed_pair(nd7):
    lower, upper = nd7
    w = avoids_sure_loss(lower, upper)
    assert w is not None
    assert validate_copula(w).verdict and lower.le(w) and w.le(upper)
    # the printed witness is one valid witness of the same system
    c1 = grid(ref.WITNESS_7_1)
    assert is_copula(c1) and lower.le(c1) and c1.le(upper)


def test_asl_chain_pair_and_midpoint():
    p = asm_to_quasi(f_matrix(6, 4))
    q = asm_to_quasi(f_matrix(6, 3))
    assert avoids_sure_loss(p, q) is not None
    mid_entries = tuple(
        tuple((a + b) / 2 for a, b in zip(ra, rb))
        for ra, rb in zip(f_matrix(6, 4).entries, f_matrix(6, 3).entries)
    )
    assert all(v >= 0 for row in mid_entries for v in row)


def test_asl_infeasible_for_proper_quasi_against_itself():
    q = asm_to_quasi(f_matrix(5, 3))
    assert avoids_sure_loss(q, q) is None


def test_asl_trivial_for_copula_against_itself():
    rng = random.Random(8)
    c = asm_to_quasi(random_bistochastic(6, rng))
    assert avoids_sure_loss(c, c) == c


def test_asl_reduced_and_full_routes_agree():
    import asmcopula.imprecise as imp

    pairs = [
        (asm_to_quasi(f_matrix(7, 5)), asm_to_quasi(f_matrix(7, 4))),
        (grid(ref.Q_NONDENSE_LOWER_7), grid(ref.Q_NONDENSE_UPPER_7)),
        (asm_to_quasi(f_matrix(6, 3)), asm_to_quasi(f_matrix(6, 3))),
    ]
    old = imp._FULL_SYSTEM_MAX_N
    try:
        for p, q in pairs:
            imp._FULL_SYSTEM_MAX_N = 8
            full = avoids_sure_loss(p, q)
            imp._FULL_SYSTEM_MAX_N = 0
            reduced = avoids_sure_loss(p, q)
            assert (full is None) == (reduced is None)
            for w in (full, reduced):
                if w is not None:
                    assert validate_copula(w).verdict and p.le(w) and w.le(q)
    finally:
        imp._FULL_SYSTEM_MAX_N = old


# ---------------------------------------------------------------------------
# coherence


def test_chain_pair_is_coherent():
    p = asm_to_quasi(f_matrix(5, 3))
    q = asm_to_quasi(f_matrix(5, 2))
    report = coherence_check(p, q)
    assert report.verdict == VERDICT_COHERENT
    assert report.unattained_lower() == [] and report.unattained_upper() == []


def test_printed_pair_is_coherent(nd7):
    assert coherence_check(*nd7).verdict == VERDICT_COHERENT


def test_relaxed_upper_bound_breaks_coherence(nd7):
    lower, upper = nd7
    bumped = [list(r) for r in upper.values]
    bumped[1][5] += 1  # beyond any copula's reach at (1, 5)
    relaxed = GridFunction(7, tuple(tuple(r) for r in bumped))
    report = coherence_check(lower, relaxed)
    assert report.asl_witness is not None
    assert report.verdict == VERDICT_ASL_NOT_COHERENT
    assert (1, 5) in report.unattained_upper()
    assert report.unattained_lower() == []


def test_not_asl_verdict():
    q = asm_to_quasi(f_matrix(5, 3))
    report = coherence_check(q, q)
    assert report.verdict == VERDICT_NOT_ASL
    assert report.asl_witness is None


def test_per_entry_lps_flag_agrees(nd7):
    a = coherence_check(*nd7, per_entry_lps=True)
    b = coherence_check(*nd7, per_entry_lps=False)
    assert a.verdict == b.verdict == VERDICT_COHERENT
    assert a.lower_attained == b.lower_attained
    assert a.upper_attained == b.upper_attained


def test_entry_extrema_yield_validated_copulas(nd7):
    lower, upper = nd7
    for entry in ((4, 2), (2, 4), (5, 5)):
        lo_val, lo_c = _entry_extremum(lower, upper, entry, maximize=False)
        hi_val, hi_c = _entry_extremum(lower, upper, entry, maximize=True)
        assert lo_val == lower.values[entry[0]][entry[1]]
        assert hi_val == upper.values[entry[0]][entry[1]]
        for c in (lo_c, hi_c):
            assert validate_copula(c).verdict and lower.le(c) and c.le(upper)
        assert lo_c.values[entry[0]][entry[1]] == lo_val
        assert hi_c.values[entry[0]][entry[1]] == hi_val


# ---------------------------------------------------------------------------
# the pair wrapper


def test_imprecise_pair_caches_verdicts(nd7):
    pair = ImprecisePair.create(*nd7)
    assert pair.proper_P and pair.proper_Q
    assert pair.imprecise_report.verdict
    assert pair.self_dual
    assert pair.asl_witness is not None
    assert pair.coherence.verdict == VERDICT_COHERENT


def test_imprecise_pair_rejects_unordered(nd7):
    lower, upper = nd7
    with pytest.raises(InvalidInputError):
        ImprecisePair.create(upper, lower)


def test_imprecise_pair_rejects_non_quasi():
    g = GridFunction.from_interior([[3, 1], [1, 2]])
    with pytest.raises(InvalidInputError):
        ImprecisePair.create(g, g)
