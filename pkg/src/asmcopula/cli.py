"""Command-line surface: generators, transforms, checkers, and reproduction.

Exit codes: 0 for success (or a passing check), 1 for a failing check (for
example a pair that is not coherent), 2 for usage or input errors.  Every
verb reads its matrix input from a positional path or from stdin, prints
deterministically, and selects the output encoding with ``--format`` and
``--scale``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import formats
from .defects import DefectMatrix, TRANSFORM_KINDS, main_defect, opposite_defect, directional_defect, transform
from .dense import decompose_dense, f_matrix, maximal_chain
from .errors import AsmCopulaError, InvalidInputError
from .grid_core import (
    GridFunction,
    MassMatrix,
    ValidationReport,
    asm_to_quasi,
    frechet_bounds,
    validate_copula,
    validate_quasi,
)
from .imprecise import (
    VERDICT_COHERENT,
    avoids_sure_loss,
    coherence_check,
    is_dual_pair,
    is_imprecise_copula,
)
from .nondense import nondense_pair, nondense_witnesses
from .patchwork import patchwork_pair
from .reproduce import run_all


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_any(path: Optional[str], kind: str):
    """Load a matrix from JSON (self-describing) or text (kind decides)."""
    text = _read_text(path).strip()
    if not text:
        raise InvalidInputError("empty input")
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON input: {exc}") from exc
        return formats.matrix_from_json(obj)
    if kind == "grid":
        return formats.parse_grid_text(text)
    if kind == "mass":
        return formats.parse_mass_text(text)
    raise InvalidInputError(f"cannot read kind {kind!r} from text")


def _load_grid(path: Optional[str]) -> GridFunction:
    obj = _load_any(path, "grid")
    if isinstance(obj, GridFunction):
        return obj
    raise InvalidInputError(f"expected a grid function, got {type(obj).__name__}")


def _load_mass(path: Optional[str]) -> MassMatrix:
    obj = _load_any(path, "mass")
    if isinstance(obj, MassMatrix):
        return obj
    raise InvalidInputError(f"expected a mass matrix, got {type(obj).__name__}")


def _emit_matrix(obj, args) -> None:
    if args.format == "json":
        _write_text(formats.json_dumps(formats.matrix_to_json(obj, args.scale)), args.out)
    elif isinstance(obj, DefectMatrix):
        _write_text(formats.defect_to_text(obj, args.scale), args.out)
    elif isinstance(obj, GridFunction):
        _write_text(formats.grid_to_text(obj, args.scale), args.out)
    else:
        _write_text(formats.mass_to_text(obj), args.out)


def _emit_named(named: list[tuple[str, object]], args) -> None:
    if args.format == "json":
        payload = {name: formats.matrix_to_json(obj, args.scale) for name, obj in named}
        _write_text(formats.json_dumps(payload), args.out)
        return
    chunks = []
    for name, obj in named:
        if isinstance(obj, GridFunction):
            body = formats.grid_to_text(obj, args.scale)
        elif isinstance(obj, DefectMatrix):
            body = formats.defect_to_text(obj, args.scale)
        else:
            body = formats.mass_to_text(obj)
        chunks.append(f"{name}\n{body}")
    _write_text("\n".join(chunks), args.out)


def _report_lines(report: ValidationReport, limit: int = 12) -> str:
    if report.verdict:
        return "ok"
    lines = [f"FAIL ({len(report.violations)} violation(s))"]
    for v in report.violations[:limit]:
        lines.append(f"  {v.axiom} at {v.where}: {v.value}")
    if len(report.violations) > limit:
        lines.append(f"  ... and {len(report.violations) - limit} more")
    return "\n".join(lines)


def _emit_report(report: ValidationReport, args) -> int:
    if args.format == "json":
        payload = {
            "verdict": report.verdict,
            "violations": [
                {"axiom": v.axiom, "where": list(v.where), "value": formats.format_rational(v.value)}
                for v in report.violations
            ],
        }
        _write_text(formats.json_dumps(payload), args.out)
    else:
        _write_text(_report_lines(report), args.out)
    return 0 if report.verdict else 1


# ---------------------------------------------------------------------------
# verb handlers


def _cmd_gen_f(args) -> int:
    a = f_matrix(args.n, args.k)
    _emit_matrix(asm_to_quasi(a) if args.as_ == "quasi" else a, args)
    return 0


def _cmd_gen_nondense(args) -> int:
    pair = nondense_pair(args.n)
    if args.as_ == "asm":
        named: list[tuple[str, object]] = [("lower", pair.asm_lower), ("upper", pair.asm_upper)]
    else:
        named = [("lower", pair.quasi_lower), ("upper", pair.quasi_upper)]
    if args.witnesses:
        triple = nondense_witnesses(args.n)
        for i, c in enumerate(triple.witnesses, 1):
            named.append((f"witness-{i}", c))
    _emit_named(named, args)
    return 0


def _cmd_gen_frechet(args) -> int:
    w, m = frechet_bounds(args.n)
    if args.which == "W":
        _emit_matrix(w, args)
    elif args.which == "M":
        _emit_matrix(m, args)
    else:
        _emit_named([("W", w), ("M", m)], args)
    return 0


def _cmd_defect(args) -> int:
    q = _load_grid(args.input)
    if args.dir == "main":
        d = main_defect(q)
    elif args.dir == "opposite":
        d = opposite_defect(q)
    else:
        d = directional_defect(q, args.dir)
    _emit_matrix(d, args)
    return 0


def _cmd_transform(args) -> int:
    q = _load_grid(args.input)
    _emit_matrix(transform(q, args.kind), args)
    return 0


def _cmd_check_quasi(args) -> int:
    return _emit_report(validate_quasi(_load_grid(args.input)), args)


def _cmd_check_copula(args) -> int:
    return _emit_report(validate_copula(_load_grid(args.input)), args)


def _cmd_check_ic(args) -> int:
    return _emit_report(is_imprecise_copula(_load_grid(args.lower), _load_grid(args.upper)), args)


def _cmd_check_dual(args) -> int:
    verdict = is_dual_pair(_load_grid(args.lower), _load_grid(args.upper))
    if args.format == "json":
        _write_text(formats.json_dumps({"dual": verdict}), args.out)
    else:
        _write_text("dual pair" if verdict else "not a dual pair", args.out)
    return 0 if verdict else 1


def _cmd_check_asl(args) -> int:
    witness = avoids_sure_loss(_load_grid(args.lower), _load_grid(args.upper))
    if args.witness_out and witness is not None:
        _write_text(formats.json_dumps(formats.grid_to_json(witness)), args.witness_out)
    if args.format == "json":
        payload = {
            "avoids_sure_loss": witness is not None,
            "witness": None if witness is None else formats.grid_to_json(witness),
        }
        _write_text(formats.json_dumps(payload), args.out)
    else:
        _write_text(
            "avoids sure loss" if witness is not None else "sure loss (no copula between bounds)",
            args.out,
        )
    return 0 if witness is not None else 1


def _cmd_check_coherence(args) -> int:
    report = coherence_check(
        _load_grid(args.lower), _load_grid(args.upper), per_entry_lps=args.per_entry_lps
    )
    payload = formats.coherence_report_to_json(report)
    if args.report_out:
        _write_text(formats.json_dumps(payload), args.report_out)
    if args.format == "json":
        _write_text(formats.json_dumps(payload), args.out)
    else:
        lines = [f"verdict: {report.verdict}"]
        if report.asl_witness is not None:
            for tag, entries in (
                ("unattained lower", report.unattained_lower()),
                ("unattained upper", report.unattained_upper()),
            ):
                if entries:
                    lines.append(f"{tag}: " + " ".join(f"({r},{s})" for r, s in entries))
        _write_text("\n".join(lines), args.out)
    return 0 if report.verdict == VERDICT_COHERENT else 1


def _cmd_chain(args) -> int:
    entries = maximal_chain(args.n)
    if args.format == "json":
        payload = {
            "n": args.n,
            "entries": [
                {"k": e.k, "dual_with_next": e.dual_with_next} for e in entries
            ],
        }
        _write_text(formats.json_dumps(payload), args.out)
    else:
        lines = [f"maximal chain for n={args.n}: k = {entries[0].k} .. {entries[-1].k}"]
        for e in entries:
            if e.dual_with_next is not None:
                lines.append(f"  (k={e.k}, k={e.k - 1}) dual pair: {'yes' if e.dual_with_next else 'NO'}")
        lines.append("  endpoints: opposite(k=n-1) = W and main(k=2) = M verified")
        _write_text("\n".join(lines), args.out)
    return 0


def _cmd_decompose(args) -> int:
    dec = decompose_dense(_load_mass(args.input))
    if args.format == "json":
        _write_text(formats.json_dumps(formats.decomposition_to_json(dec)), args.out)
    else:
        lines = [f"n {dec.n}, {len(dec.blocks)} block(s)"]
        for r, ((m, k), col) in enumerate(zip(dec.blocks, dec.sigma), 1):
            what = "[1]" if m == 1 else f"F({m},{k})"
            lines.append(f"  block {r}: {what} at block-column {col + 1}")
        _write_text("\n".join(lines), args.out)
    return 0


def _cmd_patchwork(args) -> int:
    try:
        spec_obj = json.loads(_read_text(args.spec))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON spec: {exc}") from exc
    spec = formats.parse_patchwork_spec(spec_obj)
    lower, upper = patchwork_pair(spec)
    _write_text(formats.json_dumps(formats.grid_to_json(lower)), args.out_lower)
    _write_text(formats.json_dumps(formats.grid_to_json(upper)), args.out_upper)
    print(f"assembled {spec.fine_n}x{spec.fine_n} pair from m={spec.m}, inner n={spec.inner_n}")
    return 0


def _cmd_reproduce(args) -> int:
    results = run_all()
    width = max(len(name) for name, _ in results)
    failures = 0
    for name, ok in results:
        print(f"{name.ljust(width)}  {'PASS' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    print(f"{len(results) - failures}/{len(results)} reproductions passed")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asmcopula",
        description="Discrete quasi-copulas, imprecise copulas, and sign-matrix mass tools.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def output_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--scale", choices=("L", "unit"), default="L",
                       help="value scale for grid output (L keeps integers)")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("gen-f", help="generate a stripe matrix or its quasi-copula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--as", dest="as_", choices=("asm", "quasi"), default="asm")
    output_opts(p)
    p.set_defaults(func=_cmd_gen_f)

    p = sub.add_parser("gen-nondense", help="generate the non-dense pair (n >= 7)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witnesses", action="store_true", help="include the three witness copulas")
    p.add_argument("--as", dest="as_", choices=("asm", "quasi"), default="quasi")
    output_opts(p)
    p.set_defaults(func=_cmd_gen_nondense)

    p = sub.add_parser("gen-frechet", help="generate the pointwise copula bounds W and M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", choices=("W", "M", "both"), default="both")
    output_opts(p)
    p.set_defaults(func=_cmd_gen_frechet)

    p = sub.add_parser("defect", help="compute a defect matrix of a quasi-copula")
    p.add_argument("--dir", choices=TRANSFORM_KINDS, required=True)
    p.add_argument("input", nargs="?", default=None, help="grid input path (default stdin)")
    output_opts(p)
    p.set_defaults(func=_cmd_defect)

    p = sub.add_parser("transform", help="apply one of the six defect transformations")
    p.add_argument("--kind", choices=TRANSFORM_KINDS, required=True)
    p.add_argument("input", nargs="?", default=None)
    output_opts(p)
    p.set_defaults(func=_cmd_transform)

    for verb, func, help_text in (
        ("check-quasi", _cmd_check_quasi, "validate the quasi-copula axioms"),
        ("check-copula", _cmd_check_copula, "validate the copula axioms"),
    ):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("input", nargs="?", default=None)
        output_opts(p)
        p.set_defaults(func=func)

    p = sub.add_parser("check-ic", help="check the imprecise-copula conditions")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    output_opts(p)
    p.set_defaults(func=_cmd_check_ic)

    p = sub.add_parser("check-dual", help="check self-duality of a pair")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    output_opts(p)
    p.set_defaults(func=_cmd_check_dual)

    p = sub.add_parser("check-asl", help="decide avoiding sure loss; find a witness copula")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    p.add_argument("--witness-out", default=None, help="write the witness grid JSON here")
    output_opts(p)
    p.set_defaults(func=_cmd_check_asl)

    p = sub.add_parser("check-coherence", help="decide coherence via per-entry LPs")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    p.add_argument("--report-out", default=None, help="write the JSON report here")
    p.add_argument("--per-entry-lps", action="store_true",
                   help="force both LPs for every strict entry (no witness reuse)")
    output_opts(p)
    p.set_defaults(func=_cmd_check_coherence)

    p = sub.add_parser("chain", help="build and verify the maximal chain of dual pairs")
    p.add_argument("--n", type=int, required=True)
    output_opts(p)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("decompose", help="block-decompose a dense sign matrix")
    p.add_argument("input", nargs="?", default=None)
    output_opts(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("patchwork", help="assemble a patchwork pair from a JSON spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-lower", required=True)
    p.add_argument("--out-upper", required=True)
    p.set_defaults(func=_cmd_patchwork)

    p = sub.add_parser("reproduce-paper", help="re-derive every stored reference matrix")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AsmCopulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
