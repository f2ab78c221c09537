"""Differential testing of the transformations against the evaluators.

Each case generates a closed program of type ``nat``; when the source
program reaches a numeral within the source fuel, the transformed program
must reach the same numeral. Disagreements and transformation errors are
shrunk and reported as counterexamples.
"""
import json
import logging
import os
from dataclasses import asdict, dataclass, field, replace
from multiprocessing import Pool
from typing import List, Optional, Tuple

from tqdm import tqdm

from ..config.config import CampaignConfig, FuelConfig, GenCfg, PipelineConfig, ReportConfig
from ..dynamics.evaluator import Value, eval_src, eval_tgt
from ..frontend.sexp import print_src
from ..lang.syntax import free_vars
from ..lang.terms import NAT, Num, Term
from ..transforms.closure_conversion import closure_convert
from ..transforms.cps import cps_program
from ..transforms.hoisting import hoist
from ..utils.errors import PipelineError
from .generator import gen_case
from .shrinker import shrink

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Counterexample:
    index: int
    program: str
    reason: str


@dataclass
class Report:
    pass_name: str
    seed: int
    fuel: FuelConfig
    total: int = 0
    terminated: int = 0
    agreed: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agreed == self.terminated and not self.counterexamples

    def to_json(self) -> dict:
        return {
            'schema': ReportConfig.SCHEMA_VERSION,
            'pass': self.pass_name,
            'seed': self.seed,
            'fuel': asdict(self.fuel),
            'total': self.total,
            'terminated': self.terminated,
            'agreed': self.agreed,
            'counterexamples': [asdict(c) for c in self.counterexamples],
        }

    def summary(self) -> str:
        return (f"pass {self.pass_name}: {self.total} programs, {self.terminated} terminated, "
                f"{self.agreed} agreed, {len(self.counterexamples)} counterexamples")


def apply_pass(pass_name: str, term: Term) -> Tuple[Term, str]:
    """The transformed program and the language it is evaluated in."""
    if pass_name == 'cc':
        return closure_convert(term), 'tgt'
    if pass_name == 'cc+hoist':
        program = hoist(closure_convert(term))
        for fun in program.funs:
            if free_vars(fun.body):
                raise PipelineError(f"hoisted function {fun.name} is not closed")
        return program.reify(), 'tgt'
    if pass_name == 'cps':
        return cps_program(term), 'src'
    raise PipelineError(f"unknown pass {pass_name!r}, expected one of {', '.join(PipelineConfig.CAMPAIGN_PASSES)}")


def compare(pass_name: str, term: Term, fuel: FuelConfig) -> Optional[str]:
    """None when ``term`` does not terminate or agrees after the pass,
    otherwise the reason it disagrees."""
    source = eval_src(term, fuel.src_fuel)
    if not (isinstance(source, Value) and isinstance(source.term, Num)):
        return None
    try:
        transformed, lang = apply_pass(pass_name, term)
    except Exception as e:
        return f"{type(e).__name__}: {e}"
    evaluate = eval_tgt if lang == 'tgt' else eval_src
    target = evaluate(transformed, fuel.tgt_fuel)
    if isinstance(target, Value) and isinstance(target.term, Num) and target.term.n == source.term.n:
        return None
    return f"source gives {source.term.n}, transformed program gives {target}"


@dataclass(frozen=True)
class CaseOutcome:
    index: int
    terminated: bool
    agreed: bool
    counterexample: Optional[Counterexample] = None


def run_case(pass_name: str, gen: GenCfg, campaign: CampaignConfig, index: int) -> CaseOutcome:
    term, _ = gen_case(gen, index)
    source = eval_src(term, campaign.fuel.src_fuel)
    if not (isinstance(source, Value) and isinstance(source.term, Num)):
        return CaseOutcome(index, False, False)
    reason = compare(pass_name, term, campaign.fuel)
    if reason is None:
        return CaseOutcome(index, True, True)
    logger.error(f"case {index} fails under {pass_name}: {reason}")
    if campaign.shrink:
        term = shrink(term, lambda candidate: compare(pass_name, candidate, campaign.fuel) is not None)
        reason = compare(pass_name, term, campaign.fuel) or reason
    return CaseOutcome(index, True, False, Counterexample(index, print_src(term), reason))


def _run_case_star(args) -> CaseOutcome:
    return run_case(*args)


def emit_counterexamples(report: Report, directory: str) -> List[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for example in report.counterexamples:
        name = f"{report.pass_name.replace('+', '_')}_{report.seed}_{example.index}{PipelineConfig.SOURCE_SUFFIX}"
        path = os.path.join(directory, name)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(f"; {example.reason}\n{example.program}\n")
        paths.append(path)
    return paths


def differential_run(pass_name: str, gen: GenCfg, campaign: Optional[CampaignConfig] = None) -> Report:
    """Run ``campaign.count`` generated ``nat`` programs through ``pass_name``."""
    if pass_name not in PipelineConfig.CAMPAIGN_PASSES:
        raise PipelineError(f"unknown pass {pass_name!r}, expected one of {', '.join(PipelineConfig.CAMPAIGN_PASSES)}")
    campaign = campaign or CampaignConfig()
    gen = replace(gen, type_target=NAT)
    # a program counts as terminating when it reaches a value within gen.fuel
    campaign = replace(campaign, fuel=replace(campaign.fuel, src_fuel=gen.fuel))
    report = Report(pass_name, gen.seed, campaign.fuel)
    jobs = [(pass_name, gen, campaign, index) for index in range(campaign.count)]
    if campaign.workers > 1:
        with Pool(campaign.workers) as pool:
            outcomes = list(tqdm(pool.imap(_run_case_star, jobs), total=len(jobs),
                                 disable=not campaign.progress, desc=pass_name))
    else:
        outcomes = [run_case(*job) for job in tqdm(jobs, disable=not campaign.progress, desc=pass_name)]
    for outcome in outcomes:
        report.total += 1
        report.terminated += outcome.terminated
        report.agreed += outcome.agreed
        if outcome.counterexample is not None:
            report.counterexamples.append(outcome.counterexample)
    logger.info(report.summary())
    if campaign.emit_dir and report.counterexamples:
        for path in emit_counterexamples(report, campaign.emit_dir):
            logger.info(f"wrote counterexample {path}")
    return report


def report_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True)
