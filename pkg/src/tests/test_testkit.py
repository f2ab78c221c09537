import json
import os

import numpy as np
import pytest

from src.config.config import CampaignConfig, FuelConfig, GenCfg
from src.dynamics import Value, eval_src
from src.frontend.sexp import parse_src, print_src
from src.lang.syntax import alpha_eq, contains, is_closed, size
from src.lang.terms import App, Arr, Fix, Let, NAT, Num, Plus
from src.testkit import (
    Counterexample, Report, TermGenerator, apply_pass, compare, differential_run, gen_case, gen_typed,
    report_json, shrink,
)
from src.testkit.differential import emit_counterexamples
from src.testkit.generator import case_rng
from src.typecheck import EMPTY, type_of_src
from src.utils.errors import PipelineError


def small_campaign(count=40, **kwargs):
    return CampaignConfig(count=count, **kwargs)


def test_cases_are_deterministic_per_seed_and_index():
    cfg = GenCfg(seed=42)
    for index in range(50):
        first, first_type = gen_case(cfg, index)
        second, second_type = gen_case(cfg, index)
        assert first_type == second_type
        assert alpha_eq(first, second)


def test_case_streams_are_independent():
    assert case_rng(42, 3).integers(1 << 30) == case_rng(42, 3).integers(1 << 30)
    assert case_rng(42, 3).integers(1 << 30) != case_rng(42, 4).integers(1 << 30)


def test_generated_programs_are_closed_and_typed():
    for index, (term, ty) in zip(range(500), gen_typed(GenCfg(seed=1))):
        assert is_closed(term)
        assert type_of_src(EMPTY, term) == ty


def test_generator_reaches_functions_and_binders():
    terms = [term for term, _ in (gen_case(GenCfg(seed=42, type_target=NAT), i) for i in range(300))]
    assert any(contains(term, (Fix,)) for term in terms)
    assert any(contains(term, (Let,)) for term in terms)
    assert any(contains(term, (App,)) for term in terms)


def test_generator_respects_the_requested_type():
    generator = TermGenerator(np.random.default_rng(0))
    for _ in range(100):
        term = generator.term(EMPTY, Arr(NAT, NAT), 8)
        assert type_of_src(EMPTY, term) == Arr(NAT, NAT)


@pytest.mark.slow
def test_generated_programs_mostly_terminate():
    cfg = GenCfg(seed=42, type_target=NAT)
    values = sum(isinstance(eval_src(gen_case(cfg, i)[0], 500), Value) for i in range(1000))
    assert values >= 300


def test_default_programs_are_not_trivial():
    cfg = GenCfg(seed=42, type_target=NAT)
    terms = [gen_case(cfg, i)[0] for i in range(200)]
    assert np.mean([size(term) for term in terms]) > 8
    assert sum(isinstance(term, Num) for term in terms) < 40


def at_least_five(term):
    result = eval_src(term, 500)
    return isinstance(result, Value) and result.term.n >= 5


def test_shrink_to_a_local_minimum():
    term = parse_src("(plus (plus 3 4) (plus 5 6))")
    shrunk = shrink(term, at_least_five)
    assert shrunk == Plus(Num(1), Num(4))
    assert at_least_five(shrunk)


def test_shrink_keeps_type_and_closedness():
    term = parse_src("(let ((x 7)) (plus x ((fix (f : (-> nat nat)) (y : nat) (plus y x)) 2)))")
    shrunk = shrink(term, at_least_five)
    assert size(shrunk) < size(term)
    assert is_closed(shrunk)
    assert type_of_src(EMPTY, shrunk) == NAT
    assert at_least_five(shrunk)


def test_shrink_leaves_minimal_terms_alone():
    assert shrink(Num(5), at_least_five) == Num(5)


@pytest.mark.parametrize('pass_name', ['cc', 'cc+hoist', 'cps'])
def test_small_campaigns_agree(pass_name):
    report = differential_run(pass_name, GenCfg(seed=7), small_campaign())
    assert report.total == 40
    assert report.terminated > 0
    assert report.ok, report.counterexamples


def test_campaign_uses_the_generator_fuel():
    report = differential_run('cc', GenCfg(seed=7, fuel=0), small_campaign())
    assert report.fuel.src_fuel == 0
    values = sum(isinstance(eval_src(gen_case(GenCfg(seed=7, type_target=NAT), i)[0], 0), Value)
                 for i in range(40))
    assert report.terminated == values
    assert report.terminated <= differential_run('cc', GenCfg(seed=7), small_campaign()).terminated


@pytest.mark.slow
@pytest.mark.parametrize('pass_name', ['cc', 'cc+hoist', 'cps'])
def test_acceptance_campaign(pass_name):
    report = differential_run(pass_name, GenCfg(seed=42), CampaignConfig(count=1000))
    assert report.total == 1000
    assert report.counterexamples == []


def test_parallel_campaign_matches_serial():
    serial = differential_run('cc', GenCfg(seed=3), small_campaign(count=20))
    parallel = differential_run('cc', GenCfg(seed=3), small_campaign(count=20, workers=2))
    assert report_json(serial) == report_json(parallel)


def test_unknown_pass():
    with pytest.raises(PipelineError, match="unknown pass"):
        differential_run('lift', GenCfg(), small_campaign())
    with pytest.raises(PipelineError):
        apply_pass('lift', Num(0))


def test_compare(adder_applied):
    assert compare('cc', adder_applied, FuelConfig()) is None
    assert compare('cps', adder_applied, FuelConfig()) is None
    # a program that does not finish within the source fuel is not compared
    assert compare('cc', adder_applied, FuelConfig(src_fuel=2)) is None
    reason = compare('cc', adder_applied, FuelConfig(tgt_fuel=3))
    assert reason.startswith("source gives 6")


def test_report_json():
    report = Report('cc', 42, FuelConfig(), total=3, terminated=2, agreed=1,
                    counterexamples=[Counterexample(2, "(plus 1 1)", "source gives 2")])
    data = json.loads(report_json(report))
    assert data['schema'] == 1
    assert data['pass'] == 'cc'
    assert data['fuel'] == {'src_fuel': 500, 'tgt_fuel': 20000}
    assert data['counterexamples'] == [{'index': 2, 'program': "(plus 1 1)", 'reason': "source gives 2"}]
    assert not report.ok
    assert report.summary() == "pass cc: 3 programs, 2 terminated, 1 agreed, 1 counterexamples"


def test_emit_counterexamples(tmp_path):
    report = Report('cc+hoist', 42, FuelConfig(),
                    counterexamples=[Counterexample(9, print_src(Num(3)), "source gives 3")])
    paths = emit_counterexamples(report, str(tmp_path / 'out'))
    assert [os.path.basename(p) for p in paths] == ['cc_hoist_42_9.fsrc']
    with open(paths[0], encoding='utf-8') as f:
        text = f.read()
    assert text == "; source gives 3\n3\n"
    assert parse_src(text) == Num(3)
