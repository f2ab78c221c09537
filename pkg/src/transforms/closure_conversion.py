"""Typed closure conversion from the source to the target language.

Every ``fix`` becomes a closure whose code is closed: the code takes one
argument ``p = (f, (x, env))`` and unpacks it with three lets, while the
free variables of the function are read through projections of ``env``.
Applications open the closure and pass it back to its own code, so the
recursive reference ``f`` is available inside the body.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..lang.names import Name, fresh, fresh_like
from ..lang.syntax import free_vars, freshen
from ..lang.terms import (
    Abs, App, Clos, Fix, Fst, Ifz, Let, Num, Open, Pair, Plus, Pred, Prod,
    Snd, Term, Type, UnitV, Var, proj, tuple_of, tuple_type,
)
from ..typecheck.checker import translate_type, type_of_src
from ..typecheck.context import EMPTY, TypingCtx
from ..utils.errors import ScopeViolation, ShadowedVariable, UnmappedVariable, UntypedScope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarMap:
    """Insertion-ordered map from source variables to target terms."""
    entries: Tuple[Tuple[Name, Term], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Name, Term]]) -> 'VarMap':
        result = cls()
        for name, term in pairs:
            result = result.extend(name, term)
        return result

    def extend(self, name: Name, term: Term) -> 'VarMap':
        if name in self:
            raise ShadowedVariable(name)
        return VarMap(self.entries + ((name, term),))

    def concat(self, other: 'VarMap') -> 'VarMap':
        result = self
        for name, term in other.entries:
            result = result.extend(name, term)
        return result

    def lookup(self, name: Name) -> Term:
        for bound, term in self.entries:
            if bound == name:
                return term
        raise UnmappedVariable(name)

    @property
    def names(self) -> Tuple[Name, ...]:
        return tuple(name for name, _ in self.entries)

    def __contains__(self, name: Name) -> bool:
        return any(bound == name for bound, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def fvars(term: Term, scope: Sequence[Name]) -> List[Name]:
    """Variables of ``scope`` occurring free in ``term``, first occurrence first."""
    in_scope = set(scope)
    found: Dict[Name, None] = {}

    def walk(node: Term, bound: frozenset) -> None:
        if isinstance(node, Var):
            if node.name in in_scope and node.name not in bound:
                found.setdefault(node.name)
        elif isinstance(node, (Num, UnitV)):
            pass
        elif isinstance(node, (Pred, Fst, Snd)):
            walk(node.arg, bound)
        elif isinstance(node, (Plus, Pair)):
            walk(node.left, bound)
            walk(node.right, bound)
        elif isinstance(node, Ifz):
            walk(node.cond, bound)
            walk(node.then, bound)
            walk(node.orelse, bound)
        elif isinstance(node, Let):
            walk(node.bound, bound)
            walk(node.body, bound | {node.var})
        elif isinstance(node, Fix):
            walk(node.body, bound | {node.fun, node.param})
        elif isinstance(node, App):
            walk(node.fun, bound)
            walk(node.arg, bound)
        else:
            raise TypeError(f"not a source term: {node!r}")

    walk(term, frozenset())
    return list(found)


def mapenv(fvs: Sequence[Name], rho: VarMap) -> Term:
    return tuple_of(rho.lookup(name) for name in fvs)


def mapvar(fvs: Sequence[Name], env: Name) -> VarMap:
    return VarMap.of((name, proj(index, Var(env))) for index, name in enumerate(fvs, start=1))


def open_apply(closure: Term, arg: Term) -> Term:
    """``let g = closure in open g as (xf, xe) in xf (g, (arg, xe))``"""
    g, xf, xe = fresh('g'), fresh('xf'), fresh('xe')
    call = App(Var(xf), Pair(Var(g), Pair(arg, Var(xe))))
    return Let(closure, g, Open(Var(g), xf, xe, call))


class ClosureConverter:
    """Conversion of one (freshened) source term; ``var_types`` gives the
    source type of every variable the term binds or uses."""

    def __init__(self, var_types: Dict[Name, Type]):
        self.var_types = var_types
        self.closures = 0

    def target_type(self, name: Name) -> Type:
        return translate_type(self.var_types[name])

    def convert(self, rho: VarMap, scope: Tuple[Name, ...], term: Term) -> Term:
        if isinstance(term, (Num, UnitV)):
            return term
        if isinstance(term, Var):
            return rho.lookup(term.name)
        if isinstance(term, (Pred, Fst, Snd)):
            return type(term)(self.convert(rho, scope, term.arg))
        if isinstance(term, (Plus, Pair)):
            return type(term)(self.convert(rho, scope, term.left), self.convert(rho, scope, term.right))
        if isinstance(term, Ifz):
            return Ifz(self.convert(rho, scope, term.cond),
                       self.convert(rho, scope, term.then),
                       self.convert(rho, scope, term.orelse))
        if isinstance(term, Let):
            bound = self.convert(rho, scope, term.bound)
            y = fresh_like(term.var)
            body = self.convert(rho.extend(term.var, Var(y)), (term.var,) + scope, term.body)
            return Let(bound, y, body)
        if isinstance(term, App):
            return open_apply(self.convert(rho, scope, term.fun), self.convert(rho, scope, term.arg))
        if isinstance(term, Fix):
            return self.convert_fix(rho, scope, term)
        raise TypeError(f"not a source term: {term!r}")

    def convert_fix(self, rho: VarMap, scope: Tuple[Name, ...], term: Fix) -> Term:
        fvs = fvars(term, scope)
        p, g, y, xe = fresh('p'), fresh_like(term.fun), fresh_like(term.param), fresh('xe')
        inner_rho = VarMap.of([(term.param, Var(y)), (term.fun, Var(g))]).concat(mapvar(fvs, xe))
        body = self.convert(inner_rho, (term.param, term.fun) + tuple(fvs), term.body)
        env_type = tuple_type(self.target_type(name) for name in fvs)
        param_type = Prod(translate_type(term.fun_type), Prod(translate_type(term.param_type), env_type))
        code = Abs(param_type, p,
                   Let(Fst(Var(p)), g,
                       Let(Fst(Snd(Var(p))), y,
                           Let(Snd(Snd(Var(p))), xe, body))))
        self.closures += 1
        return Clos(code, mapenv(fvs, rho))


def cc(rho: VarMap, scope: Sequence[Name], term: Term, ctx: TypingCtx = EMPTY) -> Term:
    """Closure-convert ``term`` under ``rho``.

    ``ctx`` must type every scope variable that occurs free in ``term``;
    with the default empty context only closed terms convert.
    """
    scope = tuple(scope)
    free = free_vars(term)
    outside = [name for name in free if name not in scope]
    if outside:
        raise ScopeViolation(outside)
    untyped = [name for name in free if ctx.find(name) is None]
    if untyped:
        raise UntypedScope(untyped)
    term = freshen(term)
    var_types: Dict[Name, Type] = dict(ctx.entries)
    type_of_src(ctx, term, binder_types=var_types)
    converter = ClosureConverter(var_types)
    result = converter.convert(rho, scope, term)
    logger.debug(f"closure conversion built {converter.closures} closures")
    return result


def closure_convert(term: Term, ctx: Optional[TypingCtx] = None) -> Term:
    """Convert a closed term, or an open one whose variables ``ctx`` types
    (each free variable then maps to itself)."""
    ctx = ctx or EMPTY
    rho = VarMap.of((name, Var(name)) for name in ctx.names)
    return cc(rho, ctx.names, term, ctx)
