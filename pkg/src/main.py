"""Entry point of the ``fcc`` command.

Exit status 0 means success, 1 a property failure (counterexample,
unrelated verdict, timeout or stuck evaluation) and 2 a usage, syntax or
type error. Every failure line on stderr starts with ``fcc: <class>:``.
"""
import json
import logging
import sys
from typing import List, Optional

from .config.config import CampaignConfig, FuelConfig, GenCfg, env_log_settings, load_env_overrides
from .dynamics.evaluator import Stuck, Timeout, evaluate
from .equivalence.relations import sim_check
from .equivalence.verdicts import Related, Unknown, Unrelated, verdict_to_json
from .frontend.sexp import (
    parse_src, parse_tgt, parse_type, print_hoisted, print_src, print_term, print_tgt, print_type,
)
from .interfaces.cli import PipelineSpec, build_parser, pipeline_for, read_program
from .lang.names import reset_names
from .lang.terms import Lang
from .testkit.corpus import default_corpus
from .testkit.differential import differential_run, report_json
from .transforms.closure_conversion import closure_convert
from .transforms.cps import cps_program
from .transforms.hoisting import hoist
from .typecheck.checker import type_of_src, type_of_tgt
from .typecheck.context import EMPTY
from .utils.errors import FccError, PipelineError
from .utils.logging_utils import setup_logging

logger = logging.getLogger(__name__)

RECURSION_LIMIT = 20000


def fail(error_class: str, message: str, code: int = 1) -> int:
    print(f"fcc: {error_class}: {message}", file=sys.stderr)
    return code


def language_of_path(path: str) -> Lang:
    return Lang.TGT if path.endswith('.ftgt') else Lang.SRC


def cmd_check(args, fuel: FuelConfig) -> int:
    text = read_program(args.file)
    if language_of_path(args.file) is Lang.TGT:
        ty = type_of_tgt(EMPTY, parse_tgt(text))
    else:
        ty = type_of_src(EMPTY, parse_src(text))
    print(print_type(ty))
    return 0


def cmd_run(args, fuel: FuelConfig) -> int:
    lang = language_of_path(args.file)
    text = read_program(args.file)
    term = parse_tgt(text) if lang is Lang.TGT else parse_src(text)
    if args.fuel is not None:
        budget = args.fuel
    else:
        budget = fuel.tgt_fuel if lang is Lang.TGT else fuel.src_fuel
    result = evaluate(term, budget, lang)
    if isinstance(result, Timeout):
        return fail('Timeout', f"no value within {result.fuel} steps")
    if isinstance(result, Stuck):
        return fail('Stuck', f"stuck after {result.steps} steps at {print_term(result.term)}")
    print(f"value: {print_term(result.term)}")
    print(f"steps: {result.steps}")
    return 0


def emit_program(spec: PipelineSpec, text: str) -> None:
    if spec.output_format == 'json':
        print(json.dumps({'schema': 1, 'passes': list(spec.passes), 'input': spec.input_path,
                          'program': text}, indent=2))
    else:
        print(text)


def cmd_transform(args, fuel: FuelConfig) -> int:
    spec = pipeline_for(args.command, args.file, args.json)
    text = read_program(args.file)
    if args.command == 'cc':
        output = print_tgt(closure_convert(parse_src(text)))
    elif args.command == 'cps':
        output = print_src(cps_program(parse_src(text)))
    elif spec.target_input:
        output = print_hoisted(hoist(parse_tgt(text)))
    else:
        output = print_hoisted(hoist(closure_convert(parse_src(text))))
    emit_program(spec, output)
    return 0


def cmd_test(args, fuel: FuelConfig) -> int:
    if args.count < 0 or args.workers < 1 or args.max_size < 1:
        raise PipelineError("--count must be non-negative, --workers and --max-size positive")
    gen = GenCfg(seed=args.seed, max_size=args.max_size, fuel=fuel.src_fuel)
    campaign = CampaignConfig(count=args.count, workers=args.workers, shrink=not args.no_shrink,
                              progress=args.progress, emit_dir=args.emit_dir, fuel=fuel)
    report = differential_run(args.pass_name, gen, campaign)
    if args.json:
        print(report_json(report))
    else:
        print(report.summary())
        for example in report.counterexamples:
            print(f"case {example.index}: {example.program}  ; {example.reason}")
    if not report.ok:
        return fail('Counterexample', f"{len(report.counterexamples)} counterexamples for {args.pass_name}")
    return 0


def cmd_relcheck(args, fuel: FuelConfig) -> int:
    if language_of_path(args.tgt) is not Lang.TGT:
        raise PipelineError(f"the target program must be a .ftgt file, got {args.tgt}")
    if args.index < 0:
        raise PipelineError("--index must be non-negative")
    ty = parse_type(args.type_text)
    source = parse_src(read_program(args.src))
    target = parse_tgt(read_program(args.tgt))
    cfg = default_corpus(fuel, samples=args.samples)
    verdict = sim_check(ty, args.index, source, target, cfg)
    if args.json:
        print(json.dumps(verdict_to_json(verdict, print_type(ty), args.index), indent=2))
    elif isinstance(verdict, Related):
        print('related')
    elif isinstance(verdict, Unknown):
        print(f"unknown: {verdict.reason}")
    else:
        print(f"unrelated: {verdict.witness}")
        for step in verdict.trace:
            print(f"  {step}")
    if isinstance(verdict, Unrelated):
        return fail('Unrelated', verdict.witness)
    return 0


COMMANDS = {
    'check': cmd_check,
    'run': cmd_run,
    'cc': cmd_transform,
    'hoist': cmd_transform,
    'cps': cmd_transform,
    'test': cmd_test,
    'relcheck': cmd_relcheck,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    reset_names()
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
    try:
        args = build_parser().parse_args(argv)
        level, log_file = env_log_settings()
        setup_logging(args.log_level or level, args.log_file or log_file)
        fuel = load_env_overrides()
        logger.debug(f"running {args.command} with fuel {fuel}")
        return COMMANDS[args.command](args, fuel)
    except FccError as e:
        return fail(e.error_class, str(e), code=2)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == '__main__':
    entry_point()
