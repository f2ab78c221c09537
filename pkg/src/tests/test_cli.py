import json

import pytest

from src.frontend.sexp import parse_src, parse_tgt
from src.interfaces.cli import PipelineSpec, build_parser, pipeline_for
from src.dynamics import eval_src
from src.lang.syntax import alpha_eq
from src.lang.terms import Num
from src.main import main
from src.utils.errors import PipelineError

from src.tests.conftest import ADDER_CONVERTED, sample_path

ADDER = sample_path('adder.fsrc')
ADDER_APPLIED = sample_path('adder_applied.fsrc')


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


@pytest.fixture(autouse=True)
def no_fuel_override(monkeypatch):
    monkeypatch.delenv('FCC_FUEL', raising=False)


def test_cc_prints_the_converted_program(capsys):
    assert main(['cc', ADDER]) == 0
    out = capsys.readouterr().out
    assert alpha_eq(parse_tgt(out), parse_tgt(ADDER_CONVERTED))


def test_output_is_reproducible(capsys):
    main(['cc', ADDER])
    first = capsys.readouterr().out
    main(['cc', ADDER])
    assert capsys.readouterr().out == first


def test_run(capsys):
    assert main(['run', ADDER_APPLIED]) == 0
    assert capsys.readouterr().out == "value: 6\nsteps: 5\n"


def test_run_a_function_value(capsys):
    assert main(['run', ADDER]) == 0
    out = capsys.readouterr().out
    assert out.startswith("value: (fix (f : (-> nat nat)) (z : nat) (plus z (plus 2 3)))")
    assert out.endswith("steps: 2\n")


def test_run_target_program(tmp_path, capsys):
    main(['cc', ADDER_APPLIED])
    converted = write(tmp_path, 'applied.ftgt', capsys.readouterr().out)
    assert main(['run', converted]) == 0
    assert capsys.readouterr().out.startswith("value: 6\n")


def test_check(capsys):
    assert main(['check', ADDER]) == 0
    assert capsys.readouterr().out == "(-> nat nat)\n"


def test_timeout(capsys):
    assert main(['run', '--fuel', '1', ADDER_APPLIED]) == 1
    assert capsys.readouterr().err.startswith("fcc: Timeout:")


def test_zero_fuel_is_honoured(capsys):
    assert main(['run', '--fuel', '0', ADDER_APPLIED]) == 1
    assert "no value within 0 steps" in capsys.readouterr().err


def test_fuel_from_environment(monkeypatch, capsys):
    monkeypatch.setenv('FCC_FUEL', '3')
    assert main(['run', ADDER_APPLIED]) == 1
    assert "no value within 3 steps" in capsys.readouterr().err
    monkeypatch.setenv('FCC_FUEL', 'lots')
    assert main(['run', ADDER_APPLIED]) == 2
    assert capsys.readouterr().err.startswith("fcc: ConfigError:")


@pytest.mark.parametrize('text, prefix', [
    ("(plus 1", "fcc: SyntaxError:"),
    ("(plus 1 ())", "fcc: TypeMismatch:"),
    ("(plus 1 y)", "fcc: UnboundVariable:"),
])
def test_errors_have_a_class_prefix(tmp_path, capsys, text, prefix):
    path = write(tmp_path, 'bad.fsrc', text)
    assert main(['check', path]) == 2
    assert capsys.readouterr().err.startswith(prefix)


def test_input_must_be_utf8(tmp_path, capsys):
    path = tmp_path / 'bad.fsrc'
    path.write_bytes(b"(plus 1 \xff)")
    assert main(['check', str(path)]) == 2
    assert capsys.readouterr().err.startswith("fcc: SyntaxError: input is not UTF-8 text at line 1, column 9")


def test_usage_errors(capsys):
    assert main(['frobnicate']) == 2
    assert capsys.readouterr().err.startswith("fcc: UsageError:")
    assert main(['run', 'missing.fsrc']) == 2
    assert "no such file" in capsys.readouterr().err
    assert main(['test', '--pass', 'cc', '--workers', '0']) == 2


def test_help_exits_cleanly(capsys):
    assert main(['--help']) == 0
    assert 'relcheck' in capsys.readouterr().out


def test_hoist(capsys):
    assert main(['hoist', ADDER]) == 0
    assert capsys.readouterr().out.startswith("(letfun ((g ")


def test_hoist_target_input(tmp_path, capsys):
    main(['cc', ADDER])
    converted = write(tmp_path, 'adder.ftgt', capsys.readouterr().out)
    assert main(['hoist', converted]) == 0
    assert capsys.readouterr().out.startswith("(letfun ")


def test_cps(capsys):
    assert main(['cps', ADDER_APPLIED]) == 0
    transformed = parse_src(capsys.readouterr().out)
    assert eval_src(transformed, 1000).term == Num(6)
    assert main(['cps', ADDER]) == 2
    assert capsys.readouterr().err.startswith("fcc: TypeMismatch:")


def test_cc_json(capsys):
    assert main(['cc', '--json', ADDER]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['schema'] == 1
    assert data['passes'] == ['cc']
    assert alpha_eq(parse_tgt(data['program']), parse_tgt(ADDER_CONVERTED))


def test_campaign(capsys):
    assert main(['test', '--pass', 'cc+hoist', '--count', '20', '--seed', '1', '--json']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['total'] == 20
    assert data['pass'] == 'cc+hoist'
    assert data['counterexamples'] == []


def test_campaign_text(capsys):
    assert main(['test', '--pass', 'cps', '--count', '10']) == 0
    assert capsys.readouterr().out.startswith("pass cps: 10 programs")


def test_relcheck(tmp_path, capsys):
    main(['cc', ADDER])
    converted = write(tmp_path, 'adder.ftgt', capsys.readouterr().out)
    assert main(['relcheck', '--type', '(-> nat nat)', '--index', '5', ADDER, converted]) == 0
    assert capsys.readouterr().out == "related\n"


def test_relcheck_unrelated(tmp_path, capsys):
    identity = write(tmp_path, 'identity.fsrc', "(fix (f : (-> nat nat)) (z : nat) z)")
    main(['cc', identity])
    wrong = write(tmp_path, 'identity.ftgt', capsys.readouterr().out)
    assert main(['relcheck', '--type', '(-> nat nat)', '--index', '5', '--json', ADDER, wrong]) == 1
    captured = capsys.readouterr()
    assert json.loads(captured.out)['verdict'] == 'unrelated'
    assert captured.err.startswith("fcc: Unrelated:")


def test_relcheck_needs_a_target_file(capsys):
    assert main(['relcheck', '--type', 'nat', '--index', '1', ADDER, ADDER]) == 2
    assert capsys.readouterr().err.startswith("fcc: UsageError:")


def test_log_file(tmp_path, capsys):
    log_file = str(tmp_path / 'fcc.log')
    assert main(['--log-level', 'DEBUG', '--log-file', log_file, 'run', ADDER_APPLIED]) == 0
    with open(log_file, encoding='utf-8') as f:
        assert 'running run' in f.read()


def test_pipeline_validation():
    assert PipelineSpec(('cc', 'hoist'), 'a.fsrc').validate().passes == ('cc', 'hoist')
    assert pipeline_for('hoist', 'a.fsrc', False).passes == ('cc', 'hoist')
    assert pipeline_for('hoist', 'a.ftgt', True).output_format == 'json'
    for spec in [PipelineSpec(('hoist',), 'a.fsrc'), PipelineSpec(('cps', 'cc'), 'a.fsrc'),
                 PipelineSpec(('cc',), 'a.ftgt'), PipelineSpec(('cc',), 'a.fsrc', 'xml'),
                 PipelineSpec(('lift',), 'a.fsrc')]:
        with pytest.raises(PipelineError):
            spec.validate()


def test_parser_reports_errors_as_exceptions():
    with pytest.raises(PipelineError):
        build_parser().parse_args(['test'])
