import pytest

from src.config.config import GenCfg
from src.dynamics import Value, eval_src, eval_tgt
from src.frontend.sexp import parse_src
from src.lang.names import Name, fresh
from src.lang.syntax import alpha_eq, children, free_vars, is_closed
from src.lang.terms import App, Clos, Fst, NAT, Num, Pair, Plus, Snd, UNIT, UNITV, Var
from src.testkit.generator import gen_case, gen_open, gen_scoped
from src.transforms.closure_conversion import (
    VarMap, cc, closure_convert, fvars, mapenv, mapvar, open_apply,
)
from src.typecheck import EMPTY, TypingCtx, translate_type, type_of_tgt
from src.utils.errors import ScopeViolation, ShadowedVariable, UnmappedVariable, UntypedScope

X, Y, Z = Name('x'), Name('y'), Name('z')


def closures(term):
    if isinstance(term, Clos):
        yield term
    for _, child in children(term):
        yield from closures(child)


def test_fvars_examples():
    term = parse_src("(plus y (plus x (plus y z)))")
    assert fvars(term, [X, Y]) == [Y, X]
    assert fvars(term, [Z]) == [Z]
    assert fvars(term, []) == []


def test_fvars_skips_inner_binders():
    term = parse_src("(let ((x 1)) (plus x y))")
    assert fvars(term, [X, Y]) == [Y]
    fix = parse_src("(fix (f : (-> nat nat)) (x : nat) (plus x y))")
    assert fvars(fix, [X, Y]) == [Y]


def test_fvars_agrees_with_free_vars():
    cfg = GenCfg(seed=21)
    for index in range(1000):
        term, scope = gen_scoped(cfg, index)
        assert fvars(term, scope) == [name for name in free_vars(term) if name in scope]


def test_mapenv_and_mapvar():
    env = fresh('env')
    rho = VarMap.of([(X, Num(1)), (Y, Num(2))])
    assert mapenv([Y, X], rho) == Pair(Num(2), Pair(Num(1), UNITV))
    assert mapenv([], rho) == UNITV
    projections = mapvar([X, Y], env)
    assert projections.lookup(X) == Fst(Var(env))
    assert projections.lookup(Y) == Fst(Snd(Var(env)))
    assert projections.names == (X, Y)


def test_varmap_errors():
    with pytest.raises(UnmappedVariable):
        VarMap().lookup(X)
    with pytest.raises(ShadowedVariable):
        VarMap.of([(X, Num(1)), (X, Num(2))])
    with pytest.raises(ShadowedVariable):
        VarMap.of([(X, Num(1))]).concat(VarMap.of([(X, Num(2))]))


def test_scope_violation():
    with pytest.raises(ScopeViolation) as info:
        cc(VarMap(), [], parse_src("(plus x 1)"))
    assert info.value.names == [X]


def test_scope_variables_need_types():
    with pytest.raises(UntypedScope, match="without a type") as info:
        cc(VarMap.of([(X, Num(4))]), [X], parse_src("(plus x 1)"))
    assert info.value.names == [X]
    assert isinstance(info.value, ScopeViolation)


def test_explicit_mapping():
    ctx = TypingCtx.of([(X, NAT)])
    converted = cc(VarMap.of([(X, Num(4))]), [X], parse_src("(plus x 1)"), ctx)
    assert converted == Plus(Num(4), Num(1))


def test_first_order_terms_are_unchanged():
    term = parse_src("(let ((x (pair 1 ()))) (ifz (fst x) (snd x) ()))")
    assert alpha_eq(closure_convert(term), term)


def test_running_example(adder_program, adder_converted):
    assert alpha_eq(closure_convert(adder_program), adder_converted)


def test_running_example_applied(adder_applied):
    assert eval_tgt(closure_convert(adder_applied), 20000).term == Num(6)


def test_open_apply_shape():
    closure = fresh('c')
    term = open_apply(Var(closure), Num(1))
    g = term.var
    opened = term.body
    assert term.bound == Var(closure)
    assert opened.closure == Var(g)
    assert opened.body == App(Var(opened.fun), Pair(Var(g), Pair(Num(1), Var(opened.env))))


def test_closure_code_is_closed(adder_applied):
    converted = closure_convert(adder_applied)
    found = list(closures(converted))
    assert len(found) == 1
    assert all(is_closed(c.code) for c in found)


def test_open_programs_map_variables_to_themselves():
    ctx = TypingCtx.of([(X, NAT), (Y, UNIT)])
    term = parse_src("(pair x (fix (f : (-> nat unit)) (z : nat) y))")
    converted = closure_convert(term, ctx)
    assert converted.left == Var(X)
    assert converted.right.env == Pair(Var(Y), UNITV)


def test_type_preservation():
    cfg = GenCfg(seed=42)
    for index in range(1000):
        term, ty = gen_case(cfg, index)
        converted = closure_convert(term)
        assert type_of_tgt(EMPTY, converted) == translate_type(ty)
        assert all(is_closed(c.code) for c in closures(converted))


def test_type_preservation_for_open_terms():
    cfg = GenCfg(seed=8)
    for index in range(300):
        ctx, term, ty = gen_open(cfg, index)
        assert type_of_tgt(ctx, closure_convert(term, ctx)) == translate_type(ty)


def test_conversion_preserves_numeric_results():
    cfg = GenCfg(seed=42, type_target=NAT)
    for index in range(200):
        term, _ = gen_case(cfg, index)
        source = eval_src(term, 500)
        if isinstance(source, Value):
            target = eval_tgt(closure_convert(term), 20000)
            assert isinstance(target, Value) and target.term == source.term
