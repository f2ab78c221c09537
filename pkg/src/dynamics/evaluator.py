"""Small-step, left-to-right call-by-value evaluation with fuel.

Evaluation is substitution based and identical for both languages except
for the function forms: source applications reduce ``fix`` terms, target
applications reduce ``abs`` terms and ``open`` unpacks closures. A
constructor of the other language is treated as stuck.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Union

from ..lang.syntax import replace_child, subst
from ..lang.terms import (
    Abs, App, Clos, Fix, Fst, Ifz, Lang, Let, Num, Open, Pair, Plus, Pred,
    Snd, Term, UnitV, Var,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Value:
    term: Term
    steps: int


@dataclass(frozen=True)
class Timeout:
    fuel: int


@dataclass(frozen=True)
class Stuck:
    term: Term
    steps: int = 0


EvalResult = Union[Value, Timeout, Stuck]


class Stepper:
    """One-step reduction for a single language."""

    def __init__(self, lang: Lang):
        self.lang = lang
        self.function_form = Fix if lang is Lang.SRC else Abs

    def is_value(self, term: Term) -> bool:
        if isinstance(term, (Num, UnitV)):
            return True
        if isinstance(term, self.function_form):
            return True
        if isinstance(term, Pair):
            return self.is_value(term.left) and self.is_value(term.right)
        if isinstance(term, Clos) and self.lang is Lang.TGT:
            return self.is_value(term.code) and self.is_value(term.env)
        return False

    def _congruence(self, term: Term, field: str) -> Optional[Term]:
        reduced = self.step(getattr(term, field))
        return None if reduced is None else replace_child(term, field, reduced)

    def _first_pending(self, term: Term, *fields: str) -> Optional[str]:
        for field in fields:
            if not self.is_value(getattr(term, field)):
                return field
        return None

    def step(self, term: Term) -> Optional[Term]:
        """The unique successor of ``term``, or None for values and stuck terms."""
        if self.is_value(term) or isinstance(term, Var):
            return None
        if isinstance(term, (Pred, Fst, Snd)):
            if not self.is_value(term.arg):
                return self._congruence(term, 'arg')
            arg = term.arg
            if isinstance(term, Pred):
                return Num(max(arg.n - 1, 0)) if isinstance(arg, Num) else None
            if not isinstance(arg, Pair):
                return None
            return arg.left if isinstance(term, Fst) else arg.right
        if isinstance(term, Plus):
            pending = self._first_pending(term, 'left', 'right')
            if pending:
                return self._congruence(term, pending)
            if isinstance(term.left, Num) and isinstance(term.right, Num):
                return Num(term.left.n + term.right.n)
            return None
        if isinstance(term, Ifz):
            if not self.is_value(term.cond):
                return self._congruence(term, 'cond')
            if not isinstance(term.cond, Num):
                return None
            return term.then if term.cond.n == 0 else term.orelse
        if isinstance(term, Pair):
            return self._congruence(term, self._first_pending(term, 'left', 'right'))
        if isinstance(term, Let):
            if not self.is_value(term.bound):
                return self._congruence(term, 'bound')
            return subst(term.body, {term.var: term.bound})
        if isinstance(term, App):
            pending = self._first_pending(term, 'fun', 'arg')
            if pending:
                return self._congruence(term, pending)
            return self.apply(term.fun, term.arg)
        if self.lang is Lang.TGT and isinstance(term, Clos):
            return self._congruence(term, self._first_pending(term, 'code', 'env'))
        if self.lang is Lang.TGT and isinstance(term, Open):
            if not self.is_value(term.closure):
                return self._congruence(term, 'closure')
            if not isinstance(term.closure, Clos):
                return None
            return subst(term.body, {term.fun: term.closure.code, term.env: term.closure.env})
        return None

    def apply(self, fun: Term, arg: Term) -> Optional[Term]:
        if self.lang is Lang.SRC and isinstance(fun, Fix):
            return subst(fun.body, {fun.fun: fun, fun.param: arg})
        if self.lang is Lang.TGT and isinstance(fun, Abs):
            return subst(fun.body, {fun.param: arg})
        return None


_SOURCE = Stepper(Lang.SRC)
_TARGET = Stepper(Lang.TGT)


def stepper_for(lang: Lang) -> Stepper:
    return _SOURCE if lang is Lang.SRC else _TARGET


def step_src(term: Term) -> Optional[Term]:
    return _SOURCE.step(term)


def step_tgt(term: Term) -> Optional[Term]:
    return _TARGET.step(term)


def evaluate(term: Term, fuel: int, lang: Lang) -> EvalResult:
    stepper = stepper_for(lang)
    steps = 0
    while True:
        if stepper.is_value(term):
            return Value(term, steps)
        if steps >= fuel:
            logger.debug(f"{lang.value} evaluation ran out of fuel after {fuel} steps")
            return Timeout(fuel)
        successor = stepper.step(term)
        if successor is None:
            logger.debug(f"{lang.value} evaluation stuck after {steps} steps")
            return Stuck(term, steps)
        term = successor
        steps += 1


def eval_src(term: Term, fuel: int) -> EvalResult:
    return evaluate(term, fuel, Lang.SRC)


def eval_tgt(term: Term, fuel: int) -> EvalResult:
    return evaluate(term, fuel, Lang.TGT)
