"""Abstract syntax of the source and target languages.

Both languages share one node family. ``Fix`` belongs to the source
language only; ``Abs``, ``Clos`` and ``Open`` to the target only. The
remaining constructors are common to both.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .names import Name


class Type:
    """Base class of type trees."""


@dataclass(frozen=True)
class Nat(Type):
    pass


@dataclass(frozen=True)
class Unit(Type):
    pass


@dataclass(frozen=True)
class Prod(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Arr(Type):
    """Source function type; in the target, the type of closures."""
    param: Type
    result: Type


@dataclass(frozen=True)
class Code(Type):
    """Target type of bare abstractions (closure code)."""
    param: Type
    result: Type


@dataclass(frozen=True)
class Rigid(Type):
    """Opaque environment type; equal only to itself (by id)."""
    id: int


NAT = Nat()
UNIT = Unit()


class Term:
    """Base class of term trees."""


@dataclass(frozen=True)
class Num(Term):
    n: int


@dataclass(frozen=True)
class Var(Term):
    name: Name


@dataclass(frozen=True)
class Pred(Term):
    arg: Term


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Ifz(Term):
    cond: Term
    then: Term
    orelse: Term


@dataclass(frozen=True)
class UnitV(Term):
    pass


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class Let(Term):
    bound: Term
    var: Name
    body: Term


@dataclass(frozen=True)
class Fix(Term):
    """``fix f x. body`` annotated with f's arrow type and x's type."""
    fun_type: Type
    param_type: Type
    fun: Name
    param: Name
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Abs(Term):
    param_type: Type
    param: Name
    body: Term


@dataclass(frozen=True)
class Clos(Term):
    code: Term
    env: Term


@dataclass(frozen=True)
class Open(Term):
    """``open closure as (fun, env) in body``."""
    closure: Term
    fun: Name
    env: Name
    body: Term


UNITV = UnitV()


class Lang(Enum):
    SRC = 'src'
    TGT = 'tgt'


def binders(term: Term) -> Tuple[Name, ...]:
    """Names bound by ``term`` itself over its scoped child."""
    if isinstance(term, Let):
        return (term.var,)
    if isinstance(term, Fix):
        return (term.fun, term.param)
    if isinstance(term, Abs):
        return (term.param,)
    if isinstance(term, Open):
        return (term.fun, term.env)
    return ()


def tuple_of(items) -> Term:
    """Right-nested tuple ``(M1, ..., Mn)`` ending in unit."""
    result = UNITV
    for item in reversed(list(items)):
        result = Pair(item, result)
    return result


def tuple_type(types) -> Type:
    result = UNIT
    for ty in reversed(list(types)):
        result = Prod(ty, result)
    return result


def proj(index: int, term: Term) -> Term:
    """``π_index(term)``: fst after index-1 snds (1-based)."""
    for _ in range(index - 1):
        term = Snd(term)
    return Fst(term)
