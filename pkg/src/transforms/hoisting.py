"""Code hoisting: lift every (closed) abstraction of a target term to the
top level.

An ``abs x. M`` is replaced by ``g (f1, ..., fn)`` where ``f1 .. fn`` are the
functions already extracted from ``M`` and the new top-level function
``g = abs fs. abs x. M[pi_i fs / fi]`` receives them as a tuple. Hoisting
fails when an extracted function mentions a variable bound around it.
"""
import logging
from typing import Dict, List, Tuple

from ..lang.names import Name, fresh
from ..lang.programs import HoistedFun, HoistedProgram
from ..lang.syntax import children, free_vars, is_closed, replace_child, scoped_field, subst
from ..lang.terms import Abs, App, Let, Term, Type, Var, binders, proj, tuple_of, tuple_type
from ..typecheck.checker import type_of_tgt
from ..typecheck.context import EMPTY
from ..utils.errors import HoistDependency

logger = logging.getLogger(__name__)

Extracted = List[HoistedFun]


class Hoister:

    def __init__(self):
        self.types: Dict[Name, Type] = {}

    def fun_type(self, fun: HoistedFun) -> Type:
        if fun.name not in self.types:
            # hoisted code refers to sibling functions, so closure code is
            # typed in the surrounding context
            self.types[fun.name] = type_of_tgt(EMPTY, fun.body, strict_closures=False)
        return self.types[fun.name]

    def hoist(self, term: Term) -> Tuple[Extracted, Term]:
        if isinstance(term, Abs):
            return self.hoist_abs(term)
        extracted: Extracted = []
        scoped = scoped_field(term)
        rebuilt = term
        for field, child in children(term):
            funs, main = self.hoist(child)
            if field == scoped:
                self.check_binders(binders(term), funs)
            extracted.extend(funs)
            rebuilt = replace_child(rebuilt, field, main)
        return extracted, rebuilt

    def check_closed(self, funs: Extracted) -> None:
        # extracted code is typed alone, so it may not mention any enclosing binder
        for fun in funs:
            mentioned = free_vars(fun.body)
            if mentioned:
                raise HoistDependency(mentioned[0], fun.name)

    def check_binders(self, names, funs: Extracted) -> None:
        for fun in funs:
            mentioned = free_vars(fun.body)
            for name in names:
                if name in mentioned:
                    raise HoistDependency(name, fun.name)

    def hoist_abs(self, term: Abs) -> Tuple[Extracted, Term]:
        funs, body = self.hoist(term.body)
        self.check_binders((term.param,), funs)
        self.check_closed(funs)
        tuple_var = fresh('fs')
        projections = {fun.name: proj(index, Var(tuple_var)) for index, fun in enumerate(funs, start=1)}
        tuple_ty = tuple_type(self.fun_type(fun) for fun in funs)
        code = Abs(tuple_ty, tuple_var, Abs(term.param_type, term.param, subst(body, projections)))
        lifted = HoistedFun(fresh('g'), code)
        main = App(Var(lifted.name), tuple_of(Var(fun.name) for fun in funs))
        return funs + [lifted], main


def _hoisted_prefix(term: Term) -> Tuple[Extracted, Term]:
    """Peel top-level lets of closed abstractions, the shape ``reify`` builds."""
    prefix: Extracted = []
    while isinstance(term, Let) and isinstance(term.bound, Abs) and is_closed(term.bound):
        prefix.append(HoistedFun(term.var, term.bound))
        term = term.body
    return prefix, term


def hoist(term: Term) -> HoistedProgram:
    free = free_vars(term)
    if free:
        raise HoistDependency(free[0])
    prefix, rest = _hoisted_prefix(term)
    hoister = Hoister()
    funs, main = hoister.hoist(rest)
    hoister.check_binders([fun.name for fun in prefix], funs)
    program = HoistedProgram(tuple(prefix + funs), main)
    logger.debug(f"hoisted {len(funs)} functions after a prefix of {len(prefix)}")
    return program


def reify(program: HoistedProgram) -> Term:
    return program.reify()
