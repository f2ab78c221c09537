import pytest

from src.config.config import GenCfg
from src.dynamics import Timeout, Value, eval_src
from src.frontend.sexp import parse_src
from src.lang.names import Name, fresh
from src.lang.syntax import contains
from src.lang.terms import App, Arr, Fix, Ifz, Let, NAT, Num, Pair, Plus, Prod, UNIT, Var
from src.testkit.generator import gen_case
from src.transforms import (
    DynamicCont, StaticCont, count_administrative_redexes, cps, cps_program, cps_type, cps_with_tags,
)
from src.typecheck import EMPTY, TypingCtx, type_of_src
from src.utils.errors import TypeMismatch


def run(term):
    return eval_src(cps_program(term), 20000)


def test_values_pass_to_the_initial_continuation():
    assert cps_program(Num(0)) == Num(0)


@pytest.mark.parametrize('text, expected', [
    ("(ifz 0 1 2)", 1),
    ("(ifz 5 1 2)", 2),
    ("(plus (plus 1 2) (pred 4))", 6),
    ("(fst (pair 4 ()))", 4),
    ("(let ((x 3)) (plus x x))", 6),
    ("((fix (f : (-> nat nat)) (x : nat) (ifz x 0 (plus 2 (f (pred x))))) 3)", 6),
    ("(plus 1 (ifz 0 (plus 1 1) 7))", 3),
])
def test_programs_keep_their_value(text, expected):
    assert run(parse_src(text)).term == Num(expected)


def test_running_example_applied(adder_applied):
    assert run(adder_applied).term == Num(6)


def test_primitives_are_let_bound():
    term, introduced = cps_with_tags(parse_src("(plus (plus 1 2) 3)"))
    assert isinstance(term, Let) and isinstance(term.body, Let)
    assert introduced == frozenset()
    assert count_administrative_redexes(term, introduced) == 0


def test_application_reifies_the_static_continuation():
    term, introduced = cps_with_tags(parse_src("((fix (f : (-> nat nat)) (x : nat) x) 1)"))
    assert isinstance(term, App) and isinstance(term.fun, Fix)
    continuation = term.arg.right
    assert isinstance(continuation, Fix) and continuation.fun in introduced
    assert count_administrative_redexes(term, introduced) == 0


def test_conditional_copies_its_continuation_into_both_arms():
    term, introduced = cps_with_tags(parse_src("(plus 1 (ifz 0 2 3))"))
    assert isinstance(term, Ifz)
    assert not contains(term, (Fix,))
    for arm, expected in ((term.then, 2), (term.orelse, 3)):
        assert isinstance(arm, Let) and arm.bound == Plus(Num(1), Num(expected))
    assert count_administrative_redexes(term, introduced) == 0
    assert eval_src(term, 100) == Value(Num(3), 3)


def test_static_and_dynamic_continuations():
    x, k = Name('x'), fresh('k')
    ctx = TypingCtx.of([(x, NAT)])
    assert cps(Var(x), DynamicCont(k), ctx) == App(Var(k), Var(x))
    assert cps(Var(x), StaticCont(lambda v: Pair(v, v)), ctx) == Pair(Var(x), Var(x))


def test_redex_counter_sees_continuation_applications():
    k, r = fresh('k'), fresh('r')
    redex = App(Fix(Arr(NAT, NAT), NAT, k, r, Var(r)), Num(1))
    assert count_administrative_redexes(redex, {k}) == 1
    assert count_administrative_redexes(redex, set()) == 0


def test_type_translation():
    assert cps_type(NAT) == NAT
    assert cps_type(Prod(NAT, UNIT)) == Prod(NAT, UNIT)
    assert cps_type(Arr(NAT, NAT)) == Arr(Prod(NAT, Arr(NAT, NAT)), NAT)
    assert cps_type(Arr(Arr(NAT, NAT), NAT)) == Arr(
        Prod(Arr(Prod(NAT, Arr(NAT, NAT)), NAT), Arr(NAT, NAT)), NAT)


def test_whole_programs_must_be_nat():
    with pytest.raises(TypeMismatch, match="expected nat"):
        cps_program(parse_src("(pair 1 2)"))


def test_divergence_is_preserved():
    f, x = fresh('f'), fresh('x')
    omega = App(Fix(Arr(NAT, NAT), NAT, f, x, App(Var(f), Var(x))), Num(0))
    assert eval_src(cps_program(omega), 200) == Timeout(200)


@pytest.mark.slow
def test_generated_programs():
    cfg = GenCfg(seed=42, type_target=NAT)
    for index in range(1000):
        term, _ = gen_case(cfg, index)
        transformed, introduced = cps_with_tags(term)
        assert count_administrative_redexes(transformed, introduced) == 0
        assert type_of_src(EMPTY, transformed) == NAT
        source = eval_src(term, 500)
        if isinstance(source, Value):
            result = eval_src(transformed, 20000)
            assert isinstance(result, Value), (index, result)
            assert result.term == source.term
