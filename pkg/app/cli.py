# app/cli.py
"""
Command line entry point: `python -m app.cli <subcommand> ...`.

Exit codes: 0 success, 1 invalid input or exceeded bound, 2 internal invariant
violation, 3 failed verification suite.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Tuple

from pydantic import BaseModel

from app import render, service
from app.config import get_settings
from app.errors import InputError, InvariantViolation, QFactError, ResourceLimitError
from app.solver.decomp import classify
from app.solver.rootsys import Variant
from app.solver.verify import run_suite
from app.solver.weyl import require_weight

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_VERIFY = 3

FORMATS = ("json", "dot", "ascii", "table")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def to_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"


def _add_type(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="type letter (A) or full spec (A5)")
    p.add_argument("--rank", type=int, default=None)


def _add_weight(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weight", type=int, required=True, help="index of the fundamental weight")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.MINUSCULE.value)


def _add_common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--format", choices=FORMATS, default=default_format)
    p.add_argument("--out", default=None, help="write the output to this file")


def _add_max_peaks(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-peaks", type=int, default=None, help="bound on peaks for decompositions")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qfact", description="Q-factorializations of (co)minuscule Schubert varieties")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("weights", help="list the (co)minuscule weights of a root system")
    _add_type(p)
    _add_common(p)

    p = sub.add_parser("elements", help="enumerate the (co)minuscule elements of W/W_P")
    _add_type(p)
    _add_weight(p)
    _add_common(p)

    for name, text in (
        ("quiver", "emit the quiver of a word"),
        ("classify", "classify Q-factorializations and IH-small resolutions"),
        ("cones", "emit the effective cone and the nef cones"),
        ("peel", "express an effective class in one nef cone"),
    ):
        p = sub.add_parser(name, help=text)
        _add_type(p)
        _add_weight(p)
        p.add_argument("--word", required=True, help="comma-separated reduced word")
        _add_common(p)
        if name in ("classify", "cones"):
            _add_max_peaks(p)
        if name == "cones":
            p.add_argument("--ordering", default=None, help="comma-separated peak ordering")
        if name == "peel":
            p.add_argument("--class", dest="divisor_class", required=True,
                           help="comma-separated rationals over the peaks in ascending order")

    p = sub.add_parser("verify", help="run the invariant suite over a quotient")
    _add_type(p)
    _add_weight(p)
    _add_common(p, default_format="table")
    _add_max_peaks(p)
    p.add_argument("--max-length", type=int, default=None, help="bound for brute-force word oracles")
    p.add_argument("--samples", type=int, default=None, help="sample count of the cover check")
    p.add_argument("--seed", type=int, default=None, help="seed of the sampled cover check")
    return parser


def _render(model: BaseModel, fmt: str, text_renderer: Optional[Callable[[BaseModel], str]]) -> str:
    if fmt == "json":
        return to_json(model)
    if fmt == "table" and text_renderer is not None:
        return text_renderer(model)
    raise InputError(f"format '{fmt}' is not available for this command")


def _quiver_output(args) -> str:
    q = service.load_quiver(args.type, args.rank, args.weight, args.variant, args.word)
    if args.format == "dot":
        return render.to_dot(q)
    if args.format in ("ascii", "table"):
        return render.to_ascii(q)
    return to_json(service.quiver_payload(q))


def _dispatch(args) -> Tuple[str, int]:
    if args.command == "weights":
        rs = service.resolve_root_system(args.type, args.rank)
        return _render(service.weights_payload(rs), args.format, render.weights_table), EXIT_OK

    if args.command == "elements":
        rs = service.resolve_root_system(args.type, args.rank)
        payload = service.elements_payload(rs, args.weight, args.variant)
        return _render(payload, args.format, render.elements_table), EXIT_OK

    if args.command == "quiver":
        return _quiver_output(args), EXIT_OK

    if args.command == "verify":
        rs = service.resolve_root_system(args.type, args.rank)
        require_weight(rs, args.weight, args.variant)
        settings = get_settings(
            max_word_length=args.max_length, max_peaks=args.max_peaks,
            sample_count=args.samples, seed=args.seed,
        )
        payload = service.suite_payload(run_suite(rs, args.weight, args.variant, settings))
        return _render(payload, args.format, render.suite_table), EXIT_OK if payload.ok else EXIT_VERIFY

    q = service.load_quiver(args.type, args.rank, args.weight, args.variant, args.word)
    if args.command == "classify":
        payload = service.classification_payload(classify(q, args.max_peaks))
        return _render(payload, args.format, render.classification_table), EXIT_OK
    if args.command == "cones":
        payload = service.cones_payload(q, service.parse_ordering(args.ordering), args.max_peaks)
        return _render(payload, args.format, render.cones_table), EXIT_OK
    payload = service.peel_payload(q, service.parse_class(args.divisor_class))
    return _render(payload, args.format, render.peel_table), EXIT_OK


def configure_logging() -> None:
    logging.basicConfig(
        level=get_settings().log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _emit(text: str, out: Optional[str]) -> None:
    if not out:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}")
    logger.info("wrote %s", out)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = _dispatch(args)
        _emit(text, args.out)
    except (InputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"error: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except QFactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    return code


def main() -> None:
    configure_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
