import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config.config import GenCfg
from src.dynamics import Stuck, Timeout, Value, eval_src, eval_tgt, evaluate, step_src, step_tgt
from src.frontend.sexp import parse_src
from src.lang.names import fresh
from src.lang.terms import (
    Abs, App, Arr, Clos, Fix, Fst, Lang, NAT, Num, Open, Pair, Plus, Pred, UNITV, Var,
)
from src.testkit.generator import gen_case
from src.transforms.closure_conversion import closure_convert

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def omega():
    f, x = fresh('f'), fresh('x')
    return App(Fix(Arr(NAT, NAT), NAT, f, x, App(Var(f), Var(x))), Num(0))


@pytest.mark.parametrize('text, value, steps', [
    ("7", Num(7), 0),
    ("(plus 2 3)", Num(5), 1),
    ("(pred 0)", Num(0), 1),
    ("(pred 4)", Num(3), 1),
    ("(ifz 0 1 2)", Num(1), 1),
    ("(ifz 3 1 2)", Num(2), 1),
    ("(fst (pair (plus 1 1) ()))", Num(2), 2),
    ("(let ((x 4)) (plus x x))", Num(8), 2),
    ("((fix (f : (-> nat nat)) (x : nat) (ifz x 0 (plus 2 (f (pred x))))) 3)", Num(6), 14),
])
def test_source_examples(text, value, steps):
    assert eval_src(parse_src(text), 500) == Value(value, steps)


def test_running_example_applied(adder_applied):
    assert eval_src(adder_applied, 500) == Value(Num(6), 5)


def test_pairs_evaluate_left_to_right():
    term = parse_src("(pair (plus 1 1) (plus 2 2))")
    first = step_src(term)
    assert first == Pair(Num(2), Plus(Num(2), Num(2)))
    assert step_src(first) == Pair(Num(2), Num(4))
    assert step_src(Pair(Num(2), Num(4))) is None


def test_divergence_times_out():
    assert eval_src(omega(), 50) == Timeout(50)


def test_zero_fuel():
    assert eval_src(Num(1), 0) == Value(Num(1), 0)
    assert eval_src(parse_src("(plus 1 1)"), 0) == Timeout(0)


def test_open_terms_are_stuck():
    x = fresh('x')
    term = Plus(Var(x), Num(1))
    assert eval_src(term, 10) == Stuck(term, 0)


def test_stuck_projection():
    assert isinstance(eval_src(Fst(Num(1)), 10), Stuck)


def test_foreign_constructors_are_stuck():
    p = fresh('p')
    code = Abs(NAT, p, Var(p))
    assert isinstance(eval_src(App(code, Num(1)), 10), Stuck)
    assert isinstance(eval_src(Clos(code, UNITV), 10), Stuck)
    f, x = fresh('f'), fresh('x')
    assert isinstance(eval_tgt(App(Fix(Arr(NAT, NAT), NAT, f, x, Var(x)), Num(1)), 10), Stuck)


def test_target_application_and_open():
    p = fresh('p')
    assert eval_tgt(App(Abs(NAT, p, Pred(Var(p))), Num(3)), 10) == Value(Num(2), 2)
    code = Abs(NAT, p, Var(p))
    f, e = fresh('f'), fresh('e')
    assert step_tgt(Open(Clos(code, Num(9)), f, e, Pair(Var(f), Var(e)))) == Pair(code, Num(9))


def test_closures_are_target_values():
    p = fresh('p')
    closure = Clos(Abs(NAT, p, Var(p)), Pair(Num(1), UNITV))
    assert eval_tgt(closure, 10) == Value(closure, 0)


def test_converted_running_example(adder_applied):
    result = eval_tgt(closure_convert(adder_applied), 20000)
    assert isinstance(result, Value) and result.term == Num(6)


def test_evaluate_dispatches_on_language(adder_applied):
    assert evaluate(adder_applied, 500, Lang.SRC) == eval_src(adder_applied, 500)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_step_count_is_exact(seed):
    term, _ = gen_case(GenCfg(seed=seed), 0)
    result = eval_src(term, 500)
    if isinstance(result, Value):
        assert eval_src(term, result.steps) == result
        if result.steps > 0:
            assert eval_src(term, result.steps - 1) == Timeout(result.steps - 1)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_well_typed_programs_do_not_get_stuck(seed):
    term, _ = gen_case(GenCfg(seed=seed), 0)
    assert not isinstance(eval_src(term, 500), Stuck)
