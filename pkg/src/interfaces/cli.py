"""Argument surface of the ``fcc`` command and pipeline validation."""
import argparse
import os
from dataclasses import dataclass
from typing import Tuple

from ..config.config import GenCfg, PipelineConfig
from ..utils.errors import PipelineError, SourceSyntaxError


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as exceptions so they get the ``fcc:`` prefix."""

    def error(self, message):
        raise PipelineError(message)


@dataclass(frozen=True)
class PipelineSpec:
    passes: Tuple[str, ...]
    input_path: str
    output_format: str = 'text'

    @property
    def target_input(self) -> bool:
        return self.input_path.endswith(PipelineConfig.TARGET_SUFFIX)

    def validate(self) -> 'PipelineSpec':
        unknown = [p for p in self.passes if p not in PipelineConfig.PASSES]
        if unknown:
            raise PipelineError(f"unknown pass {unknown[0]!r}")
        if self.output_format not in ('text', 'json'):
            raise PipelineError(f"unknown output format {self.output_format!r}")
        if 'cps' in self.passes and len(self.passes) > 1:
            raise PipelineError("cps cannot be combined with cc or hoist")
        if self.target_input and ('cc' in self.passes or 'cps' in self.passes):
            raise PipelineError(f"{self.passes[0]} expects a source program, got {self.input_path}")
        if 'hoist' in self.passes:
            position = self.passes.index('hoist')
            if 'cc' not in self.passes[:position] and not self.target_input:
                raise PipelineError("hoist needs cc earlier in the pipeline or a target input")
        return self


def pipeline_for(command: str, path: str, json_output: bool) -> PipelineSpec:
    """Passes run by the ``cc``, ``hoist`` and ``cps`` subcommands."""
    if command == 'hoist' and not path.endswith(PipelineConfig.TARGET_SUFFIX):
        passes = ('cc', 'hoist')
    else:
        passes = (command,)
    return PipelineSpec(passes, path, 'json' if json_output else 'text').validate()


def read_program(path: str) -> str:
    if not os.path.isfile(path):
        raise PipelineError(f"no such file: {path}")
    with open(path, 'rb') as f:
        data = f.read()
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise SourceSyntaxError("input is not UTF-8 text", line, column) from e


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='fcc', description='Typed closure conversion, hoisting and CPS toolkit')
    parser.add_argument('--log-level', default=None, help='logging level (default WARNING or FCC_LOG_LEVEL)')
    parser.add_argument('--log-file', default=None, help='also write logs to this file')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    check = commands.add_parser('check', help='type-check a program and print its type')
    check.add_argument('file')

    run = commands.add_parser('run', help='evaluate a program')
    run.add_argument('file')
    run.add_argument('--fuel', type=int, default=None, help='step budget')

    for name, text in (('cc', 'closure-convert a source program'),
                       ('hoist', 'hoist closed functions (runs cc first on source input)'),
                       ('cps', 'CPS-transform a source program of type nat')):
        sub = commands.add_parser(name, help=text)
        sub.add_argument('file')
        sub.add_argument('--json', action='store_true')

    test = commands.add_parser('test', help='differential testing campaign')
    test.add_argument('--pass', dest='pass_name', required=True, choices=PipelineConfig.CAMPAIGN_PASSES)
    test.add_argument('--count', type=int, default=1000)
    test.add_argument('--seed', type=int, default=0)
    test.add_argument('--max-size', type=int, default=GenCfg.max_size)
    test.add_argument('--workers', type=int, default=1)
    test.add_argument('--emit-dir', default=None, help='write shrunk counterexamples here')
    test.add_argument('--no-shrink', action='store_true')
    test.add_argument('--progress', action='store_true')
    test.add_argument('--json', action='store_true')

    relcheck = commands.add_parser('relcheck', help='bounded simulation check of a source/target pair')
    relcheck.add_argument('--type', dest='type_text', required=True, help='source type, e.g. "(-> nat nat)"')
    relcheck.add_argument('--index', type=int, required=True)
    relcheck.add_argument('--samples', type=int, default=4)
    relcheck.add_argument('src')
    relcheck.add_argument('tgt')
    relcheck.add_argument('--json', action='store_true')
    return parser
