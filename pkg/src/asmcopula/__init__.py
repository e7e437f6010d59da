"""Discrete quasi-copulas and imprecise copulas via sign-matrix masses.

Exact-rational tools for grid functions on uniform lattices: the bijection
with alternating bistochastic mass matrices, defect operators and their six
transformations, self-dual pair constructions (stripe chains, a non-dense
family, patchworks), and exact LP decision procedures for avoiding sure
loss and coherence.
"""

from .defects import (
    DefectMatrix,
    dense_defects,
    directional_defect,
    iterate_to_self_dual,
    main_defect,
    opposite_defect,
    transform,
)
from .dense import (
    BlockDecomposition,
    ChainEntry,
    chain_witnesses,
    compose_blocks,
    decompose_dense,
    dense_dual_characterization,
    f_matrix,
    is_dense,
    maximal_chain,
    parity_projectors,
)
from .errors import AsmCopulaError, GridShapeError, InternalCheckError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    Rectangle,
    ValidationReport,
    Violation,
    asm_to_quasi,
    frechet_bounds,
    grid_max,
    grid_min,
    has_minimal_range,
    is_abm,
    is_copula,
    is_proper,
    is_quasi,
    quasi_to_abm,
    validate_abm,
    validate_copula,
    validate_quasi,
    volume,
)
from .imprecise import (
    CoherenceReport,
    ImprecisePair,
    avoids_sure_loss,
    coherence_check,
    is_dual_pair,
    is_imprecise_copula,
    is_imprecise_via_defects,
)
from .lp import Constraint, LinearProgram, LpOutcome, feasible_copula_system, solve
from .nondense import NonDensePair, WitnessTriple, nondense_defect, nondense_pair, nondense_witnesses
from .patchwork import PatchworkSpec, patchwork_pair, patchwork_single

__version__ = "0.1.0"

__all__ = [
    "AsmCopulaError",
    "BlockDecomposition",
    "ChainEntry",
    "CoherenceReport",
    "Constraint",
    "DefectMatrix",
    "GridFunction",
    "GridShapeError",
    "ImprecisePair",
    "InternalCheckError",
    "InvalidInputError",
    "LinearProgram",
    "LpOutcome",
    "MassMatrix",
    "NonDensePair",
    "PatchworkSpec",
    "Rectangle",
    "ValidationReport",
    "Violation",
    "WitnessTriple",
    "asm_to_quasi",
    "avoids_sure_loss",
    "chain_witnesses",
    "coherence_check",
    "compose_blocks",
    "decompose_dense",
    "dense_defects",
    "dense_dual_characterization",
    "directional_defect",
    "f_matrix",
    "feasible_copula_system",
    "frechet_bounds",
    "grid_max",
    "grid_min",
    "has_minimal_range",
    "is_abm",
    "is_copula",
    "is_dense",
    "is_dual_pair",
    "is_imprecise_copula",
    "is_imprecise_via_defects",
    "is_proper",
    "is_quasi",
    "iterate_to_self_dual",
    "main_defect",
    "maximal_chain",
    "nondense_defect",
    "nondense_pair",
    "nondense_witnesses",
    "opposite_defect",
    "parity_projectors",
    "patchwork_pair",
    "patchwork_single",
    "quasi_to_abm",
    "solve",
    "transform",
    "validate_abm",
    "validate_copula",
    "validate_quasi",
    "volume",
]
