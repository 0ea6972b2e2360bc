"""
Command-line front end: `python -m app.cli <command> ...`.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
input errors.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from app.algebra.coxeter import system_by_name
from app.algebra.garside import delta_power_of, normal_form
from app.algebra.laurent import monomial_scalar_of
from app.algebra.linrep import evaluate_word_matrix, representation_for
from app.algebra.mcg import SurfaceTriple, row_presentation
from app.algebra.presentation import abelianization, parse_presentation, render_presentation
from app.core.config import settings
from app.core.exceptions import GroupCertError
from app.core.logging import logger, setup_logging
from app.models.schemas import Certificate
from app.services.certificate_builder import summarize
from app.services.matrix_service import matrix_service
from app.services.verify_service import verify_service
from app.utils.serialization import certificate_to_json, certificate_to_text, pretty_json
from app.utils.word_sugar import parse_sugared

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

VERIFY_TARGETS = ("all", "row", "eq4", "eq5", "stars", "centers", "ht")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcg-certify",
        description="Certify isomorphisms between low-complexity pure mapping class groups and braid/Artin groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["text", "json"], default=settings.default_output_format)
        p.add_argument("--out", type=Path, default=settings.output_path, help="Write the report here instead of stdout")

    def triple_flags(p: argparse.ArgumentParser, required: bool = False) -> None:
        p.add_argument("--g", type=int, required=required, help="Genus")
        p.add_argument("--b", type=int, required=required, help="Boundary components")
        p.add_argument("--n", type=int, required=required, help="Punctures")

    verify = sub.add_parser("verify", help="Build certificates")
    verify.add_argument("target", choices=VERIFY_TARGETS)
    triple_flags(verify)
    verify.add_argument("--bound", type=int, default=None, help="Genus-0 desk-scale bound on m+n")
    output_flags(verify)

    nf = sub.add_parser("nf", help="Garside normal form of a word")
    nf.add_argument("--group", required=True, help="a3, b4, d4 or bN")
    nf.add_argument("--word", required=True)
    output_flags(nf)

    rep = sub.add_parser("rep", help="Matrix of a word, or a row's block representation")
    rep.add_argument("--group", help="b4, d4 or bN")
    rep.add_argument("--word")
    triple_flags(rep)
    output_flags(rep)

    ab = sub.add_parser("abelianize", help="Abelian invariants of a row or a presentation file")
    triple_flags(ab)
    ab.add_argument("--file", type=Path, help="Presentation in the 'gens:' text format")
    output_flags(ab)

    pp = sub.add_parser("print-presentation", help="Print a row's presentation")
    triple_flags(pp, required=True)
    pp.add_argument("--stage", type=int, default=0, help="Collapse stages to apply")
    output_flags(pp)
    return parser


def _triple(args: argparse.Namespace) -> SurfaceTriple:
    if args.g is None or args.b is None or args.n is None:
        raise GroupCertError("--g, --b and --n are all required here")
    return SurfaceTriple(args.g, args.b, args.n)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(text + "\n")


def _emit_certificates(args: argparse.Namespace, certs: List[Certificate], summary: Optional[Certificate] = None) -> int:
    if args.format == "json":
        if summary is None:
            text = certificate_to_json(certs[0])
        else:
            text = pretty_json({"summary": summary.model_dump(), "certificates": [c.model_dump() for c in certs]})
    else:
        blocks = [certificate_to_text(c) for c in certs]
        if summary is not None:
            blocks.append(certificate_to_text(summary))
        text = "\n\n".join(blocks)
    _emit(args, text)
    verdict = summary or certs[0]
    return EXIT_OK if verdict.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    target = args.target
    if target == "all":
        certs = verify_service.run_all(args.bound)
        return _emit_certificates(args, certs, summarize("every row of the table and the supporting identities", certs))
    if target == "row":
        cert = verify_service.verify_row(_triple(args), args.bound)
    elif target in ("eq4", "eq5"):
        cert = verify_service.verify_word_identities((target,))
    elif target == "stars":
        cert = verify_service.verify_star_identities()
    elif target == "centers":
        cert = verify_service.verify_center_claims()
    else:
        cert = verify_service.hamidi_tehrani()
    return _emit_certificates(args, [cert])


def cmd_nf(args: argparse.Namespace) -> int:
    system = system_by_name(args.group)
    w = parse_sugared(args.word, system.atoms)
    nf = normal_form(system, w)
    if args.format == "json":
        _emit(args, pretty_json({
            "group": args.group,
            "word": str(w),
            **nf.to_dict(),
            "text": nf.render(system),
            "delta_power": delta_power_of(system, w),
        }))
    else:
        _emit(args, nf.render(system))
    return EXIT_OK


def cmd_rep(args: argparse.Namespace) -> int:
    if args.group:
        if args.word is None:
            raise GroupCertError("rep --group needs --word")
        system = system_by_name(args.group)
        w = parse_sugared(args.word, system.atoms)
        m = evaluate_word_matrix(representation_for(system), w)
        scalar = monomial_scalar_of(m)
        if args.format == "json":
            _emit(args, pretty_json({"group": args.group, "word": str(w), "dim": m.dim, "entries": m.to_json_entries(), "scalar": scalar}))
        else:
            lines = [str(m)]
            if scalar is not None:
                lines.append(f"scalar: sign {scalar[0]}, q^{scalar[1]} t^{scalar[2]}")
            _emit(args, "\n".join(lines))
        return EXIT_OK

    t = _triple(args)
    row = matrix_service.build_matrix_rep(t)
    cert = matrix_service.check_row(t, force=True)
    if args.format == "json":
        _emit(args, pretty_json({"representation": row.structure(), "certificate": cert.model_dump()}))
    else:
        blocks = ", ".join(f"{b['label']}:{b['dim']}" for b in row.structure()["blocks"])
        _emit(args, f"{t.label}: dim {row.dim} ({row.mode}) blocks [{blocks}]\n{certificate_to_text(cert)}")
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_abelianize(args: argparse.Namespace) -> int:
    if args.file:
        p = parse_presentation(Path(args.file).read_text(encoding="utf-8"))
    else:
        p = row_presentation(_triple(args))
    invariants = abelianization(p)
    _emit(args, pretty_json(invariants.to_dict()) if args.format == "json" else str(invariants))
    return EXIT_OK


def cmd_print_presentation(args: argparse.Namespace) -> int:
    p = row_presentation(_triple(args), args.stage)
    if args.format == "json":
        _emit(args, pretty_json({"generators": list(p.generators), "relators": [str(r) for r in p.relators]}))
    else:
        _emit(args, render_presentation(p).rstrip("\n"))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "nf": cmd_nf,
    "rep": cmd_rep,
    "abelianize": cmd_abelianize,
    "print-presentation": cmd_print_presentation,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging(sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        settings.validate_settings()
        return COMMANDS[args.command](args)
    except (GroupCertError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
