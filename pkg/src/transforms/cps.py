"""One-pass call-by-value CPS transformation of source terms.

Continuations are either static (a Python callable that builds the rest
of the program from the term holding the value) or dynamic (a variable
bound to a continuation function at run time). Static continuations are
applied during the transformation, so the output contains no
administrative redexes. Functions take their argument paired with a
continuation, and every answer is a ``nat``.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Set

from ..frontend.sexp import print_type
from ..lang.names import Name, fresh
from ..lang.syntax import children, freshen
from ..lang.terms import (
    App, Arr, Fix, Fst, Ifz, Let, NAT, Nat, Num, Pair, Plus, Pred, Prod,
    Snd, Term, Type, Unit, UnitV, Var,
)
from ..typecheck.checker import type_of_src
from ..typecheck.context import EMPTY, TypingCtx
from ..utils.errors import TypeMismatch

logger = logging.getLogger(__name__)

ANSWER = NAT
CONTINUATION_BASE = 'k'


class MetaCont:
    def apply(self, value: Term) -> Term:
        raise NotImplementedError


@dataclass(frozen=True)
class StaticCont(MetaCont):
    build: Callable[[Term], Term]

    def apply(self, value: Term) -> Term:
        return self.build(value)


@dataclass(frozen=True)
class DynamicCont(MetaCont):
    var: Name

    def apply(self, value: Term) -> Term:
        return App(Var(self.var), value)


IDENTITY = StaticCont(lambda value: value)


def cps_type(ty: Type) -> Type:
    if isinstance(ty, (Nat, Unit)):
        return ty
    if isinstance(ty, Prod):
        return Prod(cps_type(ty.left), cps_type(ty.right))
    if isinstance(ty, Arr):
        return Arr(Prod(cps_type(ty.param), continuation_type(ty.result)), ANSWER)
    raise TypeMismatch('a source type', print_type(ty))


def continuation_type(ty: Type) -> Type:
    return Arr(cps_type(ty), ANSWER)


class CpsTransformer:
    """Transforms one typed term; ``introduced`` collects the names of the
    continuation functions the transformation creates."""

    def __init__(self, node_types: Dict[int, Type]):
        self.node_types = node_types
        self.introduced: Set[Name] = set()

    def reify(self, cont: MetaCont, value_type: Type) -> Term:
        if isinstance(cont, DynamicCont):
            return Var(cont.var)
        k, r = fresh(CONTINUATION_BASE), fresh('r')
        self.introduced.add(k)
        result_type = cps_type(value_type)
        return Fix(Arr(result_type, ANSWER), result_type, k, r, cont.apply(Var(r)))

    def bind_primitive(self, op: Term, cont: MetaCont) -> Term:
        t = fresh('t')
        return Let(op, t, cont.apply(Var(t)))

    def transform(self, term: Term, cont: MetaCont) -> Term:
        if isinstance(term, (Num, UnitV, Var)):
            return cont.apply(term)
        if isinstance(term, Fix):
            return cont.apply(self.transform_fix(term))
        if isinstance(term, (Pred, Fst, Snd)):
            ctor = type(term)
            return self.transform(term.arg, StaticCont(lambda v: self.bind_primitive(ctor(v), cont)))
        if isinstance(term, Plus):
            return self.transform(term.left, StaticCont(
                lambda v1: self.transform(term.right, StaticCont(
                    lambda v2: self.bind_primitive(Plus(v1, v2), cont)))))
        if isinstance(term, Pair):
            return self.transform(term.left, StaticCont(
                lambda v1: self.transform(term.right, StaticCont(
                    lambda v2: cont.apply(Pair(v1, v2))))))
        if isinstance(term, Ifz):
            # the continuation is copied into both arms
            return self.transform(term.cond, StaticCont(
                lambda v: Ifz(v, self.transform(term.then, cont), self.transform(term.orelse, cont))))
        if isinstance(term, Let):
            return self.transform(term.bound, StaticCont(
                lambda v: Let(v, term.var, self.transform(term.body, cont))))
        if isinstance(term, App):
            result_type = self.node_types[id(term)]
            return self.transform(term.fun, StaticCont(
                lambda v1: self.transform(term.arg, StaticCont(
                    lambda v2: App(v1, Pair(v2, self.reify(cont, result_type)))))))
        raise TypeMismatch('a source term', type(term).__name__)

    def transform_fix(self, term: Fix) -> Fix:
        arg_type = Prod(cps_type(term.param_type), continuation_type(term.fun_type.result))
        a, c = fresh('a'), fresh('c')
        body = Let(Fst(Var(a)), term.param,
                   Let(Snd(Var(a)), c, self.transform(term.body, DynamicCont(c))))
        return Fix(Arr(arg_type, ANSWER), arg_type, term.fun, a, body)


def cps(term: Term, cont: MetaCont = IDENTITY, ctx: TypingCtx = EMPTY) -> Term:
    """CPS-transform ``term`` (open terms are typed by ``ctx``)."""
    node_types: Dict[int, Type] = {}
    type_of_src(ctx, term, node_types=node_types)
    return CpsTransformer(node_types).transform(term, cont)


def cps_with_tags(term: Term):
    """``cps_program`` together with the continuation names it introduced."""
    term = freshen(term)
    node_types: Dict[int, Type] = {}
    ty = type_of_src(EMPTY, term, node_types=node_types)
    if ty != NAT:
        raise TypeMismatch('nat', print_type(ty), 'the program')
    transformer = CpsTransformer(node_types)
    result = transformer.transform(term, IDENTITY)
    logger.debug(f"cps introduced {len(transformer.introduced)} continuation functions")
    return result, frozenset(transformer.introduced)


def cps_program(term: Term) -> Term:
    return cps_with_tags(term)[0]


def count_administrative_redexes(term: Term, introduced) -> int:
    """Applications whose operator is a continuation function built by the
    transformation."""
    count = 0
    stack = [term]
    while stack:
        node = stack.pop()
        if isinstance(node, App) and isinstance(node.fun, Fix) and node.fun.fun in introduced:
            count += 1
        stack.extend(child for _, child in children(node))
    return count
