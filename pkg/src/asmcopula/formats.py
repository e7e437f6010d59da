"""Text and JSON serialization for matrices, reports, and patchwork specs.

Text format: first line the size n (for defect matrices optionally followed
by the direction tag), then whitespace-separated rows of integers or ``p/q``
rationals.  Grid functions may be given as n rows (the printed interior,
indices 1..n) or as the full n+1 rows including the zero border; mass
matrices always have n rows.

JSON format: ``{"kind": "grid" | "mass", "n": int, "scale": "L" | "unit",
"entries": [[...]]}`` with integers kept as JSON numbers and other rationals
as ``"p/q"`` strings, so both formats round-trip bit-exactly.  Defect
matrices use kind "grid" plus a ``"direction"`` tag.  The unit scale divides
grid values by n and is presentation only; mass entries are absolute and
always carry scale "unit".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from .defects import DefectMatrix, TRANSFORM_KINDS
from .dense import BlockDecomposition, f_matrix
from .errors import InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    Matrix,
    asm_to_quasi,
    freeze_matrix,
    frechet_bounds,
)
from .imprecise import CoherenceReport, ImprecisePair

AnyMatrix = Union[GridFunction, MassMatrix, DefectMatrix]


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(tok: Union[str, int]) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"cannot parse rational {tok!r}") from exc


def _encode_entry(x: Fraction) -> Union[int, str]:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _encode_rows(rows: Matrix) -> list[list[Union[int, str]]]:
    return [[_encode_entry(v) for v in row] for row in rows]


def _scale_rows(rows: Matrix, n: int, scale: str, direction: str) -> Matrix:
    if scale == "L":
        return rows
    if scale == "unit":
        d = Fraction(n)
        op = (lambda v: v / d) if direction == "down" else (lambda v: v * d)
        return tuple(tuple(op(v) for v in row) for row in rows)
    raise InvalidInputError(f"unknown scale {scale!r}")


# ---------------------------------------------------------------------------
# text


def _rows_to_text(rows: Matrix) -> str:
    widths = [max(len(format_rational(row[j])) for row in rows) for j in range(len(rows[0]))]
    return "\n".join(
        " ".join(format_rational(v).rjust(w) for v, w in zip(row, widths)) for row in rows
    )


def grid_to_text(G: GridFunction, scale: str = "L") -> str:
    rows = _scale_rows(G.interior(), G.n, scale, "down")
    return f"{G.n}\n{_rows_to_text(rows)}\n"


def mass_to_text(A: MassMatrix) -> str:
    return f"{A.n}\n{_rows_to_text(A.entries)}\n"


def defect_to_text(D: DefectMatrix, scale: str = "L") -> str:
    rows = _scale_rows(D.interior(), D.n, scale, "down")
    return f"{D.n} {D.direction}\n{_rows_to_text(rows)}\n"


def _parse_text_rows(text: str) -> tuple[int, Optional[str], list[list[Fraction]]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInputError("empty matrix text")
    head = lines[0].split()
    try:
        n = int(head[0])
    except ValueError as exc:
        raise InvalidInputError(f"first line must start with the size, got {lines[0]!r}") from exc
    tag = head[1] if len(head) > 1 else None
    rows = [[parse_rational(tok) for tok in ln.split()] for ln in lines[1:]]
    return n, tag, rows


def parse_grid_text(text: str) -> GridFunction:
    n, _, rows = _parse_text_rows(text)
    if len(rows) == n and all(len(r) == n for r in rows):
        return GridFunction.from_interior(rows)
    if len(rows) == n + 1 and all(len(r) == n + 1 for r in rows):
        return GridFunction.from_values(rows)
    raise InvalidInputError(
        f"grid text for n={n} must have {n} rows of {n} entries or {n + 1} rows of {n + 1}"
    )


def parse_mass_text(text: str) -> MassMatrix:
    n, _, rows = _parse_text_rows(text)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidInputError(f"mass text for n={n} must have {n} rows of {n} entries")
    return MassMatrix.from_rows(rows)


def parse_defect_text(text: str) -> DefectMatrix:
    n, tag, rows = _parse_text_rows(text)
    if tag not in TRANSFORM_KINDS:
        raise InvalidInputError("defect text needs a direction tag on the first line")
    grid = parse_grid_like_rows(n, rows)
    return DefectMatrix(n, tag, grid)


def parse_grid_like_rows(n: int, rows: Sequence[Sequence[Fraction]]) -> Matrix:
    """Normalize n x n (interior) or (n+1) x (n+1) rows to a full bordered table."""
    frozen = freeze_matrix(rows)
    if len(frozen) == n and all(len(r) == n for r in frozen):
        return GridFunction.from_interior(frozen).values
    if len(frozen) == n + 1 and all(len(r) == n + 1 for r in frozen):
        return frozen
    raise InvalidInputError(f"expected {n} or {n + 1} rows of matching width")


# ---------------------------------------------------------------------------
# json


def grid_to_json(G: GridFunction, scale: str = "L") -> dict:
    rows = _scale_rows(G.values, G.n, scale, "down")
    return {"kind": "grid", "n": G.n, "scale": scale, "entries": _encode_rows(rows)}


def mass_to_json(A: MassMatrix) -> dict:
    return {"kind": "mass", "n": A.n, "scale": "unit", "entries": _encode_rows(A.entries)}


def defect_to_json(D: DefectMatrix, scale: str = "L") -> dict:
    rows = _scale_rows(D.entries, D.n, scale, "down")
    return {
        "kind": "grid",
        "n": D.n,
        "scale": scale,
        "direction": D.direction,
        "entries": _encode_rows(rows),
    }


def matrix_to_json(obj: AnyMatrix, scale: str = "L") -> dict:
    if isinstance(obj, DefectMatrix):
        return defect_to_json(obj, scale)
    if isinstance(obj, GridFunction):
        return grid_to_json(obj, scale)
    return mass_to_json(obj)


def matrix_from_json(obj: dict) -> AnyMatrix:
    """Decode a matrix object; the kind and optional direction pick the type."""
    try:
        kind = obj["kind"]
        n = int(obj["n"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix object: {exc}") from exc
    rows = [[parse_rational(v) for v in row] for row in entries]
    if kind == "mass":
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidInputError(f"mass entries must be {n}x{n}")
        return MassMatrix.from_rows(rows)
    if kind != "grid":
        raise InvalidInputError(f"unknown matrix kind {kind!r}")
    scale = obj.get("scale", "L")
    table = parse_grid_like_rows(n, rows)
    table = _scale_rows(table, n, scale, "up")
    direction = obj.get("direction")
    if direction is not None:
        if direction not in TRANSFORM_KINDS:
            raise InvalidInputError(f"unknown defect direction {direction!r}")
        return DefectMatrix(n, direction, table)
    return GridFunction(n, table)


def json_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# reports


def coherence_report_to_json(rep: CoherenceReport) -> dict:
    return {
        "verdict": rep.verdict,
        "witness": None if rep.asl_witness is None else grid_to_json(rep.asl_witness),
        "unattained_lower": [list(e) for e in rep.unattained_lower()],
        "unattained_upper": [list(e) for e in rep.unattained_upper()],
    }


def decomposition_to_json(dec: BlockDecomposition) -> dict:
    return {
        "n": dec.n,
        "blocks": [list(b) for b in dec.blocks],
        "sigma": list(dec.sigma),
    }


# ---------------------------------------------------------------------------
# patchwork specs


def resolve_grid_ref(ref: Union[str, dict]) -> GridFunction:
    """Resolve a named generator reference or inline matrix to a grid function.

    Supported names: ``f:N:K`` (stripe quasi-copula), ``frechet:N:W`` and
    ``frechet:N:M`` (the two bounds), ``nondense:N:lower`` and
    ``nondense:N:upper``.  Inline objects are decoded as grid JSON.
    """
    if isinstance(ref, dict):
        out = matrix_from_json(ref)
        if isinstance(out, MassMatrix):
            return asm_to_quasi(out)
        if isinstance(out, DefectMatrix):
            raise InvalidInputError("a defect matrix cannot serve as an inner function")
        return out
    parts = str(ref).split(":")
    try:
        if parts[0] == "f" and len(parts) == 3:
            return asm_to_quasi(f_matrix(int(parts[1]), int(parts[2])))
        if parts[0] == "frechet" and len(parts) == 3 and parts[2] in ("W", "M"):
            w, m = frechet_bounds(int(parts[1]))
            return w if parts[2] == "W" else m
        if parts[0] == "nondense" and len(parts) == 3 and parts[2] in ("lower", "upper"):
            from .nondense import nondense_pair

            pair = nondense_pair(int(parts[1]))
            return pair.quasi_lower if parts[2] == "lower" else pair.quasi_upper
    except ValueError as exc:
        raise InvalidInputError(f"malformed generator reference {ref!r}") from exc
    raise InvalidInputError(f"unknown generator reference {ref!r}")


def _resolve_pair_ref(cell: dict) -> tuple[GridFunction, GridFunction]:
    if "pair" in cell:
        ref = str(cell["pair"])
        parts = ref.split(":")
        if parts[0] == "nondense" and len(parts) == 2:
            from .nondense import nondense_pair

            pair = nondense_pair(int(parts[1]))
            return pair.quasi_lower, pair.quasi_upper
        if parts[0] == "f" and len(parts) == 3:
            # the chain pair (k, k-1)
            n, k = int(parts[1]), int(parts[2])
            return asm_to_quasi(f_matrix(n, k)), asm_to_quasi(f_matrix(n, k - 1))
        raise InvalidInputError(f"unknown pair reference {ref!r}")
    if "lower" in cell and "upper" in cell:
        return resolve_grid_ref(cell["lower"]), resolve_grid_ref(cell["upper"])
    raise InvalidInputError("cell must carry either a 'pair' reference or 'lower'/'upper'")


def parse_patchwork_spec(obj: dict):
    """Decode a patchwork spec: coarse matrix, inner size, and cell map.

    ``coarse`` is a mass JSON object or a plain m x m row list; ``cells``
    maps 1-based ``"row,col"`` keys to pair descriptions.  Cells with zero
    coarse mass may be omitted.
    """
    from .patchwork import PatchworkSpec

    try:
        inner_n = int(obj["inner_n"])
        coarse_raw = obj["coarse"]
        cell_map = obj.get("cells", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed patchwork spec: {exc}") from exc
    if isinstance(coarse_raw, dict):
        coarse = matrix_from_json(coarse_raw)
        if not isinstance(coarse, MassMatrix):
            raise InvalidInputError("patchwork coarse matrix must be a mass matrix")
    else:
        coarse = MassMatrix.from_rows(
            [[parse_rational(v) for v in row] for row in coarse_raw]
        )
    m = coarse.n
    cells: list[list[Optional[ImprecisePair]]] = [[None] * m for _ in range(m)]
    for key, cell in cell_map.items():
        try:
            r_str, c_str = str(key).split(",")
            r, c = int(r_str), int(c_str)
        except ValueError as exc:
            raise InvalidInputError(f"cell key {key!r} must look like 'row,col'") from exc
        if not (1 <= r <= m and 1 <= c <= m):
            raise InvalidInputError(f"cell key {key!r} out of range for m={m}")
        lower, upper = _resolve_pair_ref(cell)
        cells[r - 1][c - 1] = ImprecisePair.create(lower, upper)
    return PatchworkSpec.create(coarse, inner_n, cells)
