"""Syntax-directed type checking for the source and target languages."""
import logging
from typing import Dict, Optional

from ..frontend.sexp import print_term, print_type
from ..lang.names import Name, fresh_stamp
from ..lang.syntax import free_vars
from ..lang.terms import (
    Abs, App, Arr, Clos, Code, Fix, Fst, Ifz, Let, NAT, Nat, Num, Open, Pair,
    Plus, Pred, Prod, Rigid, Snd, Term, Type, UNIT, Unit, UnitV, Var,
)
from ..utils.errors import ClosureNotClosed, RigidEscape, TypeMismatch
from .context import EMPTY, TypingCtx

logger = logging.getLogger(__name__)


def _where(term: Term, limit: int = 60) -> str:
    text = print_term(term)
    return text if len(text) <= limit else text[:limit - 3] + '...'


def _expect(expected: Type, found: Type, term: Term) -> None:
    if expected != found:
        raise TypeMismatch(print_type(expected), print_type(found), _where(term))


def is_source_type(ty: Type) -> bool:
    if isinstance(ty, (Nat, Unit)):
        return True
    if isinstance(ty, Prod):
        return is_source_type(ty.left) and is_source_type(ty.right)
    if isinstance(ty, Arr):
        return is_source_type(ty.param) and is_source_type(ty.result)
    return False


def mentions_rigid(ty: Type, rigid_id: int) -> bool:
    if isinstance(ty, Rigid):
        return ty.id == rigid_id
    if isinstance(ty, Prod):
        return mentions_rigid(ty.left, rigid_id) or mentions_rigid(ty.right, rigid_id)
    if isinstance(ty, (Arr, Code)):
        return mentions_rigid(ty.param, rigid_id) or mentions_rigid(ty.result, rigid_id)
    return False


class _Checker:
    """Shared rules; ``binder_types`` and ``node_types`` record as a side effect."""

    def __init__(self, binder_types: Optional[Dict[Name, Type]] = None,
                 node_types: Optional[Dict[int, Type]] = None):
        self.binder_types = binder_types
        self.node_types = node_types

    def bind(self, ctx: TypingCtx, name: Name, ty: Type) -> TypingCtx:
        if self.binder_types is not None:
            self.binder_types[name] = ty
        return ctx.extend(name, ty)

    def check(self, ctx: TypingCtx, term: Term) -> Type:
        ty = self.infer(ctx, term)
        if self.node_types is not None:
            self.node_types[id(term)] = ty
        return ty

    def infer(self, ctx: TypingCtx, term: Term) -> Type:
        if isinstance(term, Num):
            return NAT
        if isinstance(term, UnitV):
            return UNIT
        if isinstance(term, Var):
            return ctx.lookup(term.name)
        if isinstance(term, Pred):
            _expect(NAT, self.check(ctx, term.arg), term)
            return NAT
        if isinstance(term, Plus):
            _expect(NAT, self.check(ctx, term.left), term)
            _expect(NAT, self.check(ctx, term.right), term)
            return NAT
        if isinstance(term, Ifz):
            _expect(NAT, self.check(ctx, term.cond), term)
            then_type = self.check(ctx, term.then)
            _expect(then_type, self.check(ctx, term.orelse), term)
            return then_type
        if isinstance(term, Pair):
            return Prod(self.check(ctx, term.left), self.check(ctx, term.right))
        if isinstance(term, (Fst, Snd)):
            pair_type = self.check(ctx, term.arg)
            if not isinstance(pair_type, Prod):
                raise TypeMismatch('a product type', print_type(pair_type), _where(term))
            return pair_type.left if isinstance(term, Fst) else pair_type.right
        if isinstance(term, Let):
            bound_type = self.check(ctx, term.bound)
            return self.check(self.bind(ctx, term.var, bound_type), term.body)
        return self.infer_special(ctx, term)

    def infer_special(self, ctx: TypingCtx, term: Term) -> Type:
        raise NotImplementedError


class SourceChecker(_Checker):

    def infer_special(self, ctx: TypingCtx, term: Term) -> Type:
        if isinstance(term, Fix):
            fun_type = term.fun_type
            if not (is_source_type(fun_type) and is_source_type(term.param_type)):
                raise TypeMismatch('source types', 'a target type annotation', _where(term))
            if not isinstance(fun_type, Arr):
                raise TypeMismatch('an arrow type', print_type(fun_type), _where(term))
            _expect(fun_type.param, term.param_type, term)
            inner = self.bind(self.bind(ctx, term.fun, fun_type), term.param, term.param_type)
            _expect(fun_type.result, self.check(inner, term.body), term)
            return fun_type
        if isinstance(term, App):
            fun_type = self.check(ctx, term.fun)
            if not isinstance(fun_type, Arr):
                raise TypeMismatch('an arrow type', print_type(fun_type), _where(term))
            _expect(fun_type.param, self.check(ctx, term.arg), term)
            return fun_type.result
        raise TypeMismatch('a source term', type(term).__name__, _where(term))


class TargetChecker(_Checker):

    def __init__(self, strict_closures: bool = True, **kwargs):
        super().__init__(**kwargs)
        self.strict_closures = strict_closures

    def infer_special(self, ctx: TypingCtx, term: Term) -> Type:
        if isinstance(term, Abs):
            body_type = self.check(self.bind(ctx, term.param, term.param_type), term.body)
            return Code(term.param_type, body_type)
        if isinstance(term, App):
            fun_type = self.check(ctx, term.fun)
            if not isinstance(fun_type, Code):
                raise TypeMismatch('a code type', print_type(fun_type), _where(term))
            _expect(fun_type.param, self.check(ctx, term.arg), term)
            return fun_type.result
        if isinstance(term, Clos):
            return self.closure(ctx, term)
        if isinstance(term, Open):
            closure_type = self.check(ctx, term.closure)
            if not isinstance(closure_type, Arr):
                raise TypeMismatch('a closure type', print_type(closure_type), _where(term))
            rigid = Rigid(fresh_stamp())
            code_type = Code(Prod(closure_type, Prod(closure_type.param, rigid)), closure_type.result)
            inner = self.bind(self.bind(ctx, term.fun, code_type), term.env, rigid)
            result = self.check(inner, term.body)
            if mentions_rigid(result, rigid.id):
                raise RigidEscape(rigid.id)
            return result
        raise TypeMismatch('a target term', type(term).__name__, _where(term))

    def closure(self, ctx: TypingCtx, term: Clos) -> Type:
        if self.strict_closures:
            free = free_vars(term.code)
            if free:
                raise ClosureNotClosed(free)
            code_type = self.check(EMPTY, term.code)
        else:
            code_type = self.check(ctx, term.code)
        env_type = self.check(ctx, term.env)
        shape = 'a closure code type ((T1 -> T2) * (T1 * Te)) => T2'
        if not (isinstance(code_type, Code) and isinstance(code_type.param, Prod)
                and isinstance(code_type.param.left, Arr) and isinstance(code_type.param.right, Prod)):
            raise TypeMismatch(shape, print_type(code_type), _where(term))
        closure_type = code_type.param.left
        _expect(closure_type.param, code_type.param.right.left, term)
        _expect(closure_type.result, code_type.result, term)
        _expect(code_type.param.right.right, env_type, term)
        return closure_type


def type_of_src(ctx: TypingCtx, term: Term,
                binder_types: Optional[Dict[Name, Type]] = None,
                node_types: Optional[Dict[int, Type]] = None) -> Type:
    return SourceChecker(binder_types=binder_types, node_types=node_types).check(ctx, term)


def type_of_tgt(ctx: TypingCtx, term: Term, strict_closures: bool = True) -> Type:
    return TargetChecker(strict_closures=strict_closures).check(ctx, term)


def translate_type(ty: Type) -> Type:
    """Source to target types; source arrows become closure types."""
    if isinstance(ty, (Nat, Unit)):
        return ty
    if isinstance(ty, Prod):
        return Prod(translate_type(ty.left), translate_type(ty.right))
    if isinstance(ty, Arr):
        return Arr(translate_type(ty.param), translate_type(ty.result))
    raise TypeMismatch('a source type', print_type(ty))
