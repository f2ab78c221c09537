"""Typing-derivation-directed generation of well-typed source programs.

A type is chosen first and a term is built to inhabit it, so every rule
of the type system, ``fix`` and application included, is reached without
filtering. Recursion only happens through a structural template
(``ifz x base (let r = f (pred x) in step)``), which keeps generated
programs terminating. Case ``i`` draws from its own PRNG stream split off
the campaign seed, so cases can be produced in any order or process.
"""
import itertools
import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config.config import GenCfg
from ..frontend.sexp import print_type
from ..lang.names import Name, fresh
from ..lang.terms import (
    App, Arr, Fix, Fst, Ifz, Let, NAT, Nat, Num, Pair, Plus, Pred, Prod, Snd,
    Term, Type, UNIT, UNITV, Unit, Var,
)
from ..typecheck.checker import type_of_src
from ..typecheck.context import EMPTY, TypingCtx
from ..utils.errors import TypeMismatch

logger = logging.getLogger(__name__)

MAX_NUMERAL = 5


class TermGenerator:

    def __init__(self, rng: np.random.Generator, max_type_depth: int = 2):
        self.rng = rng
        self.max_type_depth = max_type_depth

    def chance(self, p: float) -> bool:
        return bool(self.rng.random() < p)

    def choose(self, items: Sequence):
        return items[int(self.rng.integers(len(items)))]

    def split(self, budget: int) -> Tuple[int, int]:
        if budget < 2:
            return 1, 1
        left = int(self.rng.integers(1, budget))
        return left, budget - left

    def gen_type(self, depth: Optional[int] = None) -> Type:
        depth = self.max_type_depth if depth is None else depth
        if depth <= 0:
            return NAT if self.chance(0.8) else UNIT
        roll = self.rng.random()
        if roll < 0.45:
            return NAT
        if roll < 0.55:
            return UNIT
        if roll < 0.75:
            return Prod(self.gen_type(depth - 1), self.gen_type(depth - 1))
        return Arr(self.gen_type(depth - 1), self.gen_type(depth - 1))

    def variables(self, ctx: TypingCtx, ty: Type) -> List[Name]:
        return [name for name, bound in ctx if bound == ty]

    def leaf(self, ctx: TypingCtx, ty: Type) -> Term:
        candidates = self.variables(ctx, ty)
        if candidates and self.chance(0.6):
            return Var(self.choose(candidates))
        if isinstance(ty, Nat):
            return Num(int(self.rng.integers(0, MAX_NUMERAL + 1)))
        if isinstance(ty, Unit):
            return UNITV
        if isinstance(ty, Prod):
            return Pair(self.leaf(ctx, ty.left), self.leaf(ctx, ty.right))
        if isinstance(ty, Arr):
            f, x = fresh('f'), fresh('x')
            return Fix(ty, ty.param, f, x, self.leaf(ctx.extend(x, ty.param), ty.result))
        raise TypeMismatch('a source type', print_type(ty))

    def term(self, ctx: TypingCtx, ty: Type, size: int) -> Term:
        if size <= 1:
            return self.leaf(ctx, ty)
        options: List[Tuple[float, Callable[[], Term]]] = [
            (2.0, lambda: self.gen_let(ctx, ty, size)),
            (1.0, lambda: self.gen_proj(ctx, ty, size)),
        ]
        if size >= 3:
            options.append((2.0, lambda: self.gen_app(ctx, ty, size)))
        if size >= 4:
            options.append((1.0, lambda: self.gen_ifz(ctx, ty, size)))
        if self.variables(ctx, ty):
            options.append((0.5, lambda: self.leaf(ctx, ty)))
        if isinstance(ty, Nat):
            options += [
                (1.0, lambda: self.leaf(ctx, ty)),
                (2.0, lambda: Pred(self.term(ctx, NAT, size - 1))),
                (3.0, lambda: Plus(*(self.term(ctx, NAT, s) for s in self.split(size - 1)))),
            ]
        elif isinstance(ty, Unit):
            options.append((1.0, lambda: UNITV))
        elif isinstance(ty, Prod):
            options.append((4.0, lambda: self.gen_pair(ctx, ty, size)))
        elif isinstance(ty, Arr):
            options.append((4.0, lambda: self.gen_fix(ctx, ty, size)))
            if isinstance(ty.param, Nat):
                options.append((3.0, lambda: self.gen_recursive_fix(ctx, ty, size)))
        weights = np.array([w for w, _ in options])
        index = int(self.rng.choice(len(options), p=weights / weights.sum()))
        return options[index][1]()

    def gen_let(self, ctx: TypingCtx, ty: Type, size: int) -> Term:
        bound_type = self.gen_type(1)
        s1, s2 = self.split(size - 1)
        bound = self.term(ctx, bound_type, s1)
        x = fresh('x')
        return Let(bound, x, self.term(ctx.extend(x, bound_type), ty, s2))

    def gen_app(self, ctx: TypingCtx, ty: Type, size: int) -> Term:
        arg_type = self.gen_type(1)
        s1, s2 = self.split(size - 1)
        return App(self.term(ctx, Arr(arg_type, ty), s1), self.term(ctx, arg_type, s2))

    def gen_proj(self, ctx: TypingCtx, ty: Type, size: int) -> Term:
        other = self.gen_type(0)
        if self.chance(0.5):
            return Fst(self.term(ctx, Prod(ty, other), size - 1))
        return Snd(self.term(ctx, Prod(other, ty), size - 1))

    def gen_ifz(self, ctx: TypingCtx, ty: Type, size: int) -> Term:
        s1, rest = self.split(size - 1)
        s2, s3 = self.split(rest)
        return Ifz(self.term(ctx, NAT, s1), self.term(ctx, ty, s2), self.term(ctx, ty, s3))

    def gen_pair(self, ctx: TypingCtx, ty: Prod, size: int) -> Term:
        s1, s2 = self.split(size - 1)
        return Pair(self.term(ctx, ty.left, s1), self.term(ctx, ty.right, s2))

    def gen_fix(self, ctx: TypingCtx, ty: Arr, size: int) -> Term:
        f, x = fresh('f'), fresh('x')
        return Fix(ty, ty.param, f, x, self.term(ctx.extend(x, ty.param), ty.result, size - 1))

    def gen_recursive_fix(self, ctx: TypingCtx, ty: Arr, size: int) -> Term:
        f, x, r = fresh('f'), fresh('x'), fresh('r')
        inner = ctx.extend(x, NAT)
        s1, s2 = self.split(size - 1)
        base = self.term(inner, ty.result, s1)
        step = self.term(inner.extend(r, ty.result), ty.result, s2)
        body = Ifz(Var(x), base, Let(App(Var(f), Pred(Var(x))), r, step))
        return Fix(ty, NAT, f, x, body)


def case_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _checked(ctx: TypingCtx, term: Term, ty: Type) -> Term:
    found = type_of_src(ctx, term)
    if found != ty:
        raise TypeMismatch(print_type(ty), print_type(found), 'a generated term')
    return term


def gen_case(cfg: GenCfg, index: int) -> Tuple[Term, Type]:
    rng = case_rng(cfg.seed, index)
    generator = TermGenerator(rng, cfg.max_type_depth)
    ty = cfg.type_target or generator.gen_type()
    size = int(rng.integers(max(1, cfg.max_size // 3), cfg.max_size + 1))
    return _checked(EMPTY, generator.term(EMPTY, ty, size), ty), ty


def gen_typed(cfg: GenCfg) -> Iterator[Tuple[Term, Type]]:
    """Closed well-typed ``(term, type)`` pairs, deterministic per ``cfg``."""
    for index in itertools.count():
        yield gen_case(cfg, index)


def gen_open(cfg: GenCfg, index: int) -> Tuple[TypingCtx, Term, Type]:
    """A well-typed term over a random context; not every context entry is used."""
    rng = case_rng(cfg.seed, index)
    generator = TermGenerator(rng, cfg.max_type_depth)
    ctx = EMPTY
    for _ in range(int(rng.integers(1, 5))):
        ctx = ctx.extend(fresh('v'), generator.gen_type(1))
    ty = cfg.type_target or generator.gen_type()
    size = int(rng.integers(1, cfg.max_size + 1))
    return ctx, _checked(ctx, generator.term(ctx, ty, size), ty), ty


def gen_scoped(cfg: GenCfg, index: int) -> Tuple[Term, List[Name]]:
    """An open term with a scope holding some of its variables and some unrelated ones."""
    ctx, term, _ = gen_open(cfg, index)
    rng = case_rng(cfg.seed, index)
    scope = [name for name in ctx.names if rng.random() < 0.6]
    scope += [fresh('w') for _ in range(int(rng.integers(0, 3)))]
    order = rng.permutation(len(scope))
    return term, [scope[i] for i in order]
