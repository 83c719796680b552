"""Command-line interface: a thin shell over the library operations.

Exit codes: 0 success (valid / isomorphic / oracle agrees), 1 a negative
verdict or a domain error, 2 an unreadable document or an unknown type.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import TYPE_CHECKING

import structlog

from src.config import Settings, get_settings
from src.errors import DocumentParseError, RootSystemError, UnsupportedTagError
from src.models.presentation import AffinePresentation
from src.models.space import Vector, to_fraction
from src.models.system import FiniteRootSystem
from src.models.tag import make_tag, parse_label, twisted_over
from src.repositories.catalog_repo import CatalogRepository
from src.schemas.report import AxiomReport, OracleReport
from src.services.affsys import decompose_agrs, validate_agrs, window
from src.services.analysis import (
    correspondence,
    default_parity,
    is_subsystem,
    parity_functions,
    parity_window,
    subsystem_menu,
)
from src.services.classify import ClassifierService
from src.services.document import dump, load
from src.services.finsys import check_axioms, decompose, reflect, weyl_orbits
from src.services.isomorphism import isomorphic, isomorphic_affine
from src.services.oracle import brute_axioms, brute_iso, brute_parity

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence
    from fractions import Fraction

    from src.models.tag import TypeTag

logger = logging.getLogger(__name__)

System = FiniteRootSystem | AffinePresentation

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def _configure_logging(level: str) -> None:
    """Set up structlog and stdlib logging, both writing to stderr."""
    numeric = logging.getLevelNamesMapping()[level]
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
    logging.basicConfig(
        level=numeric, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True
    )


# ── Helpers ──


def _explicit(system: System, bound: str | None) -> FiniteRootSystem:
    """The system itself, or a window of a presentation."""
    if isinstance(system, FiniteRootSystem):
        return system
    if bound is None:
        return parity_window(system)
    return window(system, _rational(bound))


def _rational(text: str) -> Fraction:
    return to_fraction(text)


def _indices(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        msg = f"Root indices must be comma-separated integers, got {text!r}"
        raise UnsupportedTagError(msg) from exc


def _root(R: FiniteRootSystem, index: int) -> Vector:
    if not 0 <= index < len(R):
        msg = f"Root index {index} out of range 0..{len(R) - 1}"
        raise UnsupportedTagError(msg)
    return R.roots[index]


def _emit(args: argparse.Namespace, text: str, payload: object) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _report_text(report: AxiomReport) -> str:
    kind = "AGRS" if report.kind == "affine" else "weak GRS"
    lines = [
        f"valid {kind}: {'yes' if report.is_valid else 'no'}",
        f"rs={report.is_rs} grs={report.is_grs} weak_grs={report.is_weak_grs} "
        f"reduced={report.is_reduced} irreducible={report.is_irreducible}",
        f"checked={report.checked} skipped={report.skipped}",
    ]
    if report.violations:
        lines.append("violations:")
        lines.extend(
            f"  {v.axiom.value} [{', '.join(v.witness)}] {v.detail}".rstrip()
            for v in report.violations
        )
    return "\n".join(lines)


def _catalog_tag(args: argparse.Namespace) -> TypeTag:
    if args.label:
        tag = parse_label(args.label)
        if args.twist is not None and args.twist != tag.twist:
            if tag.is_affine:
                msg = f"{tag.label} is already affine"
                raise UnsupportedTagError(msg)
            if args.twist == 1:
                return replace(tag, twist=1).canonical()
            return twisted_over(tag, args.twist)
        return tag
    if not args.family:
        msg = "Give a type label or --family"
        raise UnsupportedTagError(msg)
    return make_tag(args.family, args.m, args.n, args.twist or 0, args.q, args.lam)


# ── Commands ──


def cmd_catalog(args: argparse.Namespace, settings: Settings) -> int:
    tag = _catalog_tag(args)
    system = CatalogRepository(settings).make(tag)
    sys.stdout.write(dump(system, {"tag": tag.label}))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    if isinstance(system, AffinePresentation):
        report = validate_agrs(system, settings)
    else:
        report = check_axioms(system, settings)
    _emit(args, _report_text(report), report.model_dump(mode="json"))
    return EXIT_OK if report.is_valid else EXIT_NEGATIVE


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    tag = ClassifierService(settings=settings).classify(system)
    entry = correspondence(tag)
    payload = {
        "tag": tag.label,
        "row": entry.row,
        "lie_structure": entry.lie_structure,
        "notes": entry.notes,
    }
    text = f"{tag.label}\n{entry.row}: {entry.lie_structure}"
    if entry.notes:
        text += f" ({entry.notes})"
    _emit(args, text, payload)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    if isinstance(system, AffinePresentation):
        parts = decompose_agrs(system)
        pieces: list[System] = [*parts.affine, *parts.finite]
    else:
        pieces = list(decompose(system))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    for k, piece in enumerate(pieces, start=1):
        path = out / f"component-{k:03d}.json"
        path.write_text(dump(piece, {"component": str(k)}), encoding="utf-8")
        written.append(str(path))
    _emit(args, "\n".join(written), written)
    return EXIT_OK


def cmd_reflect(args: argparse.Namespace, settings: Settings) -> int:
    R = _explicit(load(args.file), args.window)
    image = reflect(R, _root(R, args.alpha), _root(R, args.beta))
    _emit(args, R.format(image), {"root": R.format(image), "index": R.positions.get(image)})
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace, settings: Settings) -> int:
    R = _explicit(load(args.file), args.window)
    orbits = [[R.format(r) for r in orbit] for orbit in weyl_orbits(R)]
    text = "\n".join(f"{i}: {', '.join(orbit)}" for i, orbit in enumerate(orbits, start=1))
    _emit(args, text, orbits)
    return EXIT_OK


def cmd_parity(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    solutions = parity_functions(system, settings)
    canonical = default_parity(system)
    fmt = _explicit(system, None).format
    functions = [[fmt(r) for r in f.odd] for f in solutions]
    payload = {
        "count": solutions.count,
        "dimension": solutions.dimension,
        "enumerated": solutions.enumerated,
        "default_odd": [fmt(r) for r in canonical.odd],
        "functions_odd": functions,
    }
    lines = [
        f"parity functions: {solutions.count} (dimension {solutions.dimension})",
        f"default odd roots: {', '.join(payload['default_odd']) or '-'}",
    ]
    lines.extend(f"  {i}: {', '.join(odd) or '-'}" for i, odd in enumerate(functions, start=1))
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_iso(args: argparse.Namespace, settings: Settings) -> int:
    a, b = load(args.first), load(args.second)
    if isinstance(a, AffinePresentation) and isinstance(b, AffinePresentation):
        found = isomorphic_affine(a, b) is not None
    elif isinstance(a, FiniteRootSystem) and isinstance(b, FiniteRootSystem):
        found = isomorphic(a, b) is not None
    else:
        found = False
    verdict = "isomorphic" if found else "not isomorphic"
    _emit(args, verdict, {"isomorphic": found})
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_window(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    if not isinstance(system, AffinePresentation):
        msg = "window needs an affine document"
        raise DocumentParseError(msg)
    sys.stdout.write(dump(window(system, _rational(args.n)), {"window": args.n}))
    return EXIT_OK


def cmd_subsystem(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    R = _explicit(system, args.window)
    chosen = [_root(R, i) for i in _indices(args.roots)]
    ambient = system if isinstance(system, AffinePresentation) else R
    result = is_subsystem(chosen, ambient, ClassifierService(settings=settings))
    menu = subsystem_menu(result.tag) if result.tag is not None else None
    payload = {"is_system": result.is_system, "type": result.label, "menu": menu}
    text = result.label + (f"\n{menu}" if menu else "")
    _emit(args, text, payload)
    return EXIT_OK if result.is_system else EXIT_NEGATIVE


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    system = load(args.file)
    report = OracleReport()
    if isinstance(system, AffinePresentation):
        bound = min(settings.oracle_window_max_offset, 2 * (system.max_step + system.max_abs_residue))
        W = window(system, bound)
        fast = validate_agrs(system, settings)
        slow = brute_axioms(W.roots, W.space, offset_bound=bound, settings=settings)
    else:
        W = system
        fast = check_axioms(system, settings)
        slow = brute_axioms(system.roots, system.space, settings=settings)
    report.checked += 1
    if fast.is_valid != slow.is_valid:
        report.mismatches.append(f"axioms: main={fast.is_valid} brute={slow.is_valid}")
    if len(W) <= settings.oracle_parity_max_roots:
        report.checked += 1
        main_count = parity_functions(W, settings).count
        brute_count = len(brute_parity(W, settings))
        if main_count != brute_count:
            report.mismatches.append(f"parity: main={main_count} brute={brute_count}")
    if args.against:
        other = load(args.against)
        if isinstance(other, FiniteRootSystem) and isinstance(system, FiniteRootSystem):
            report.checked += 1
            main_iso = isomorphic(system, other) is not None
            brute = brute_iso(system, other, settings) is not None
            if main_iso != brute:
                report.mismatches.append(f"iso: main={main_iso} brute={brute}")
    text = f"checked={report.checked} mismatches={len(report.mismatches)}"
    if report.mismatches:
        text += "\n" + "\n".join(f"  {m}" for m in report.mismatches)
    _emit(args, text, report.model_dump(mode="json"))
    return EXIT_OK if report.passed else EXIT_NEGATIVE


# ── Parser ──


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agrs",
        description="Build, verify and classify generalized and affine generalized root systems.",
    )
    parser.add_argument("--format", choices=["text", "json"], default=settings.output_format)
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=settings.log_level
    )
    visible = "catalog,verify,classify,decompose,reflect,orbits,parity,iso,window,subsystem"
    sub = parser.add_subparsers(dest="command", required=True, metavar=f"{{{visible}}}")

    p = sub.add_parser("catalog", help="write the document of a catalog type")
    p.add_argument("label", nargs="?", help='type label, e.g. "B(1,2)" or "A_2^(1)"')
    p.add_argument("--family", help="family name when no label is given, e.g. A_super")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--twist", type=int)
    p.add_argument("--q", help="quotient / peculiar parameter p/q")
    p.add_argument("--lambda", dest="lam", help="D(2,1;λ) parameter p/q")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("verify", help="check the axioms of a document")
    p.add_argument("file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("classify", help="type and Lie-structure correspondence")
    p.add_argument("file")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("decompose", help="write irreducible components to a directory")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("reflect", help="apply r_alpha to beta (indices in sorted root order)")
    p.add_argument("file")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--window", help="offset bound for affine documents")
    p.set_defaults(handler=cmd_reflect)

    p = sub.add_parser("orbits", help="generalized Weyl group orbits")
    p.add_argument("file")
    p.add_argument("--window", help="offset bound for affine documents")
    p.set_defaults(handler=cmd_orbits)

    p = sub.add_parser("parity", help="parity functions and the default parity")
    p.add_argument("file")
    p.set_defaults(handler=cmd_parity)

    p = sub.add_parser("iso", help="decide isomorphism of two documents")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_iso)

    p = sub.add_parser("window", help="explicit roots with |offset| <= N")
    p.add_argument("file")
    p.add_argument("--n", required=True)
    p.set_defaults(handler=cmd_window)

    p = sub.add_parser("subsystem", help="test whether chosen roots form a root subsystem")
    p.add_argument("file")
    p.add_argument("--roots", required=True, help="comma-separated root indices")
    p.add_argument("--window", help="offset bound for affine documents")
    p.set_defaults(handler=cmd_subsystem)

    p = sub.add_parser("oracle", help=argparse.SUPPRESS)
    p.add_argument("file")
    p.add_argument("--against")
    p.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    args = build_parser(settings).parse_args(argv)
    _configure_logging(args.log_level)
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=args.command)
    log = structlog.get_logger()
    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        code = handler(args, settings)
    except (DocumentParseError, UnsupportedTagError) as exc:
        log.error("input rejected", error=str(exc))
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except RootSystemError as exc:
        log.error("command failed", error=str(exc), kind=type(exc).__name__)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NEGATIVE
    log.debug("command finished", exit_code=code)
    return code


if __name__ == "__main__":
    sys.exit(main())
