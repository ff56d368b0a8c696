#!/usr/bin/env python3
"""
Command implementations behind symprod.py.

Each ``cmd_*`` function takes the parsed argparse namespace and the
configuration dict, writes its result to stdout and returns an exit code.
Engine errors are logged to stderr and mapped to their exit codes; see
utils/errors.py for the table.
"""

import argparse
import logging
from typing import Any, Callable, Dict, Optional

from utils.coeffs import YRationalFunction
from utils.config_utils import FORMATS
from utils.errors import (
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    ConfigurationError,
    SymprodError,
)
from utils.file_utils import dump_document, load_class, load_model, rational_or_none
from utils.genera import (
    ScalarSeries,
    arithmetic_genus_series,
    chi_series,
    intersection_euler_series,
    zagier_signature_series,
)
from utils.graded import GradedClass, specialize_y
from utils.pipelines import (
    chern_limit_series,
    chern_series_direct,
    l_series,
    point_class,
    todd_series_direct,
)
from utils.pontrjagin import PontSeries, SpaceModel, symmetric_class_series
from utils.poly_parser import parse_polynomial
from utils.table_utils import export_frame, render_text, report_frame, scalar_frame, series_frame
from utils.verify_utils import SUITES, run_suite
from utils.spaces import builtin_base, builtin_model


logger = logging.getLogger(__name__)

PIPELINES = ("hirzebruch", "todd", "chern", "chern-limit", "l")
BUILTIN_MODELS = ("point", "p1")
BUILTIN_BASES = ("hirzebruch", "todd", "chern", "l")


def build_parser(default_format: str = "text") -> argparse.ArgumentParser:
    """Argument parser with the classes, verify and genera subcommands."""
    parser = argparse.ArgumentParser(
        prog="symprod",
        description="Characteristic classes and genera of symmetric products",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    classes = subparsers.add_parser("classes", help="Generating series of classes of symmetric powers")
    classes.add_argument('--model', default="p1",
                         help="point, p1 or file:PATH (default: p1)")
    classes.add_argument('--base', default="hirzebruch",
                         help="hirzebruch, todd, chern, l, file:PATH, chi=INT or poly=POLY")
    classes.add_argument('--pipeline', choices=PIPELINES, default="hirzebruch",
                         help="Which series to compute (default: hirzebruch)")
    classes.add_argument('--N', type=int, required=True, help="Truncation degree")
    classes.add_argument('--format', choices=FORMATS, default=default_format)
    classes.add_argument('--y-eval', dest="y_eval", default=None,
                         help="Evaluate every coefficient at this rational y")
    classes.add_argument('--ichi', type=int, default=None,
                         help="Intersection Euler characteristic, required by the l pipeline")
    classes.add_argument('--twist', default=None,
                         help="Polynomial chi_(-y) of a second factor multiplying the base class")
    classes.add_argument('--output', default=None, help="Also write the table to a .csv or .xlsx file")

    verify = subparsers.add_parser("verify", help="Run verification suites")
    verify.add_argument('--suite', choices=SUITES + ("all",), default="all")
    verify.add_argument('--N', type=int, required=True, help="Truncation degree")
    verify.add_argument('--seed', type=int, default=0, help="Seed for the randomized models")
    verify.add_argument('--output', default=None, help="Also write the report to a .csv or .xlsx file")

    genera = subparsers.add_parser("genera", help="Scalar generating series of genera")
    source = genera.add_mutually_exclusive_group(required=True)
    source.add_argument('--chi-y', dest="chi_y", default=None, help="chi_(-y) of X as a polynomial in y")
    source.add_argument('--sigma', type=int, default=None, help="Signature of X (with --chi)")
    source.add_argument('--chi-a', dest="chi_a", type=int, default=None, help="Arithmetic genus of X")
    source.add_argument('--ichi', type=int, default=None, help="Intersection Euler characteristic of X")
    genera.add_argument('--chi', type=int, default=None, help="Euler characteristic of X (with --sigma)")
    genera.add_argument('--N', type=int, required=True, help="Truncation degree")
    genera.add_argument('--format', choices=FORMATS, default=default_format)
    genera.add_argument('--output', default=None, help="Also write the table to a .csv or .xlsx file")
    return parser


def check_truncation(N: int, config: Dict[str, Any], minimum: int = 0) -> None:
    """
    Raises:
        ConfigurationError: If N is below minimum or above SYMPROD_MAX_N
    """
    if N < minimum:
        raise ConfigurationError(f"--N must be at least {minimum}, got {N}")
    if N > config['max_n']:
        raise ConfigurationError(f"--N {N} exceeds SYMPROD_MAX_N={config['max_n']}")


def _run(command: Callable[[], int]) -> int:
    try:
        return command()
    except SymprodError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


def resolve_model(choice: str, N: int) -> SpaceModel:
    if choice.startswith("file:"):
        model = load_model(choice[len("file:"):])
        if model.N < N:
            raise ConfigurationError(f"model file has N={model.N}, fewer than the requested {N}")
        return model.truncated(N) if model.N > N else model
    if choice not in BUILTIN_MODELS:
        raise ConfigurationError(f"unknown model {choice!r}; use point, p1 or file:PATH")
    return builtin_model(choice, N)


def resolve_base(choice: str, model: SpaceModel) -> GradedClass:
    """
    Base class on X from a --base value.

    chi=INT and poly=POLY give that scalar times the class of a point.
    """
    if choice.startswith("file:"):
        base = load_class(choice[len("file:"):], model)
        if base.module != model.modules[1]:
            raise ConfigurationError("the base class file must describe a class in module 1")
        return base
    if choice.startswith("chi="):
        try:
            value = YRationalFunction.constant(int(choice[len("chi="):]))
        except ValueError:
            raise ConfigurationError(f"chi= needs an integer, got {choice!r}")
        return point_class(model).scale(value)
    if choice.startswith("poly="):
        return point_class(model).scale(parse_polynomial(choice[len("poly="):]))
    if choice not in BUILTIN_BASES:
        raise ConfigurationError(f"unknown base {choice!r}")
    if model.name not in BUILTIN_MODELS:
        raise ConfigurationError(f"base {choice!r} needs a builtin model; use file:PATH with model files")
    return builtin_base(model, choice)


def compute_classes(model: SpaceModel, base: GradedClass, pipeline: str, ichi: Optional[int] = None,
                    twist: Optional[YRationalFunction] = None) -> PontSeries:
    if twist is not None and pipeline != "hirzebruch":
        raise ConfigurationError("--twist only applies to the hirzebruch pipeline")
    if pipeline == "hirzebruch":
        return symmetric_class_series(model, base, twist=twist)
    if pipeline == "todd":
        return todd_series_direct(model, base)
    if pipeline == "chern":
        return chern_series_direct(model, base)
    if pipeline == "chern-limit":
        return chern_limit_series(model, base)
    if pipeline == "l":
        if ichi is None:
            raise ConfigurationError("the l pipeline needs --ichi")
        return l_series(model, base, ichi)
    raise ConfigurationError(f"unknown pipeline {pipeline!r}")


def _emit(document: Dict, frame, args: argparse.Namespace, sheet_name: str) -> None:
    if args.format == "table-doc":
        print(dump_document(document), end="")
    else:
        print(render_text(frame))
    if args.output:
        export_frame(frame, args.output, sheet_name=sheet_name)


def cmd_classes(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Print the series of classes of the symmetric powers requested by the flags."""

    def command() -> int:
        check_truncation(args.N, config, minimum=1)
        model = resolve_model(args.model, args.N)
        base = resolve_base(args.base, model)
        twist = parse_polynomial(args.twist) if args.twist else None
        logger.info(f"Computing {args.pipeline} series on {model!r} up to t^{model.N}")
        series = compute_classes(model, base, args.pipeline, args.ichi, twist)
        y0 = rational_or_none(args.y_eval)
        if y0 is not None:
            series = series.map_terms(lambda n, a: specialize_y(a, y0))
        _emit(series.to_document(), series_frame(series), args, "Series")
        return EXIT_OK

    return _run(command)


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Run a verification suite and print one PASS/FAIL line per identity."""

    def command() -> int:
        check_truncation(args.N, config, minimum=1)
        results = run_suite(args.suite, args.N, seed=args.seed, workers=config['workers'])
        for result in results:
            print(result)
        failed = [result for result in results if not result.passed]
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
        if args.output:
            export_frame(report_frame(results), args.output, sheet_name="Report")
        return EXIT_VERIFY_FAILED if failed else EXIT_OK

    return _run(command)


def compute_genera(args: argparse.Namespace) -> ScalarSeries:
    if args.sigma is not None:
        if args.chi is None:
            raise ConfigurationError("--sigma needs --chi")
        return zagier_signature_series(args.sigma, args.chi, args.N)
    if args.chi is not None:
        raise ConfigurationError("--chi is only used together with --sigma")
    if args.chi_y is not None:
        return chi_series(parse_polynomial(args.chi_y), args.N)
    if args.chi_a is not None:
        return arithmetic_genus_series(args.chi_a, args.N)
    return intersection_euler_series(args.ichi, args.N)


def cmd_genera(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Print a scalar series: chi_y, Zagier signatures, arithmetic genera or intersection Euler characteristics."""

    def command() -> int:
        check_truncation(args.N, config)
        series = compute_genera(args)
        _emit(series.to_document(), scalar_frame(series), args, "Genera")
        return EXIT_OK

    return _run(command)


COMMANDS = {
    "classes": cmd_classes,
    "verify": cmd_verify,
    "genera": cmd_genera,
}
