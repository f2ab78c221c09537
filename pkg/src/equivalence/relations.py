"""Bounded step-indexed simulation and equivalence checks.

The cross-language relations compare a source term with its target
image; the same-language relations compare two target terms. Universal
quantifiers over related values are replaced by samples: small
synthesized atomic values plus the related pairs of the configured
corpus. A check therefore refutes but never proves.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..config.config import EquivCfg
from ..dynamics.evaluator import Stuck, Timeout, Value, eval_src, eval_tgt
from ..frontend.sexp import print_term, print_type
from ..lang.names import Name
from ..lang.syntax import is_closed, is_value, subst
from ..lang.terms import (
    Abs, Arr, Clos, Code, Fix, Nat, Num, Pair, Prod, Term, Type, UNITV, Unit, UnitV,
)
from ..typecheck.context import TypingCtx
from ..utils.errors import ArityMismatch
from .verdicts import Related, Unknown, Unrelated, Verdict, all_of

logger = logging.getLogger(__name__)

ValuePair = Tuple[Term, Term]


def _show(term: Term, limit: int = 80) -> str:
    text = print_term(term)
    return text if len(text) <= limit else text[:limit - 3] + '...'


def _mismatch(ty: Type, k: int, left: Term, right: Term) -> Unrelated:
    return Unrelated(f"{_show(left)} and {_show(right)} differ at {print_type(ty)}, k={k}")


def synthesized_pairs(ty: Type, count: int) -> List[ValuePair]:
    """Identical atomic values of ``ty``; none for function types."""
    if isinstance(ty, Nat):
        return [(Num(n), Num(n)) for n in range(max(count, 1))]
    if isinstance(ty, Unit):
        return [(UNITV, UNITV)]
    if isinstance(ty, Prod):
        lefts = synthesized_pairs(ty.left, 2)
        rights = synthesized_pairs(ty.right, 2)
        return [(Pair(l1, r1), Pair(l2, r2)) for (l1, l2), (r1, r2) in itertools.product(lefts, rights)]
    return []


def _sample(candidates: Sequence, count: int, salt: Tuple[int, ...]) -> list:
    if len(candidates) <= count:
        return list(candidates)
    rng = np.random.default_rng(list(salt))
    picked = rng.choice(len(candidates), size=count, replace=False)
    return [candidates[i] for i in sorted(picked)]


def _structural(ty: Type, k: int, left: Term, right: Term,
                recurse: Callable[[Type, int, Term, Term], Verdict]) -> Verdict:
    """Cases shared by both relations: nat, unit and products."""
    if isinstance(ty, Nat):
        if isinstance(left, Num) and isinstance(right, Num) and left.n == right.n:
            return Related()
        return _mismatch(ty, k, left, right)
    if isinstance(ty, Unit):
        if isinstance(left, UnitV) and isinstance(right, UnitV):
            return Related()
        return _mismatch(ty, k, left, right)
    if not (isinstance(left, Pair) and isinstance(right, Pair)):
        return _mismatch(ty, k, left, right)
    first = recurse(ty.left, k, left.left, right.left)
    if isinstance(first, Unrelated):
        return first.within(f"component 1 of {print_type(ty)}")
    second = recurse(ty.right, k, left.right, right.right)
    if isinstance(second, Unrelated):
        return second.within(f"component 2 of {print_type(ty)}")
    return all_of([lambda: first, lambda: second])


def _closure_shape(value: Term) -> bool:
    return (isinstance(value, Clos) and isinstance(value.code, Abs)
            and is_closed(value.code) and is_value(value.env))


def _tuple_arity(term: Term):
    """Length of a right-nested tuple ending in unit, or None for other values."""
    length = 0
    while isinstance(term, Pair):
        length += 1
        term = term.right
    return length if isinstance(term, UnitV) else None


class _Relation:
    corpus_field = 'value_corpus'

    def __init__(self, cfg: EquivCfg):
        self.cfg = cfg
        self.memo: Dict[tuple, Verdict] = {}

    def equiv(self, ty: Type, k: int, left: Term, right: Term) -> Verdict:
        key = (ty, k, left, right)
        if key not in self.memo:
            self.memo[key] = self._equiv(ty, k, left, right)
        return self.memo[key]

    def _equiv(self, ty: Type, k: int, left: Term, right: Term) -> Verdict:
        raise NotImplementedError

    def related_pairs(self, ty: Type, k: int, synthesized: List[ValuePair]) -> List[ValuePair]:
        """Sampled candidates of type ``ty`` that are related at index ``k``."""
        corpus = [(v, w) for v, w, t in getattr(self.cfg, self.corpus_field) if t == ty]
        candidates = _sample(synthesized + corpus, self.cfg.samples, (self.cfg.seed, k, len(corpus)))
        return [(v, w) for v, w in candidates if isinstance(self.equiv(ty, k, v, w), Related)]


class CrossRelation(_Relation):
    """Source/target relations, ``sim`` and ``equiv``."""

    def sim(self, ty: Type, k: int, source: Term, target: Term) -> Verdict:
        result = eval_src(source, k)
        if not isinstance(result, Value):
            return Related('source takes more than k steps')
        target_result = eval_tgt(target, self.cfg.fuel)
        if isinstance(target_result, Timeout):
            return Unknown(f"target needs more than {self.cfg.fuel} steps")
        if isinstance(target_result, Stuck):
            return Unrelated(f"target is stuck at {_show(target_result.term)}",
                             (f"source reaches {_show(result.term)} in {result.steps} steps",))
        verdict = self.equiv(ty, k - result.steps, result.term, target_result.term)
        if isinstance(verdict, Unrelated):
            return verdict.within(f"sim at {print_type(ty)}, k={k}: source reaches "
                                  f"{_show(result.term)} in {result.steps} steps")
        return verdict

    def _equiv(self, ty: Type, k: int, value: Term, target: Term) -> Verdict:
        if not isinstance(ty, Arr):
            return _structural(ty, k, value, target, self.equiv)
        if not (isinstance(value, Fix) and _closure_shape(target)):
            return Unrelated(f"{_show(value)} and {_show(target)} are not a function and a closure")
        if k == 0:
            return Related()
        lower = k - 1
        below = self.equiv(ty, lower, value, target)
        if isinstance(below, Unrelated):
            return below
        args = self.related_pairs(ty.param, lower, synthesized_pairs(ty.param, self.cfg.samples))
        if not args:
            return Unknown(f"no related arguments of type {print_type(ty.param)}")
        recursive = [(value, target)] + self.related_pairs(ty, lower, [])[:max(self.cfg.samples - 1, 0)]
        code, env = target.code, target.env

        def instance(arg: ValuePair, rec: ValuePair) -> Callable[[], Verdict]:
            def run() -> Verdict:
                source_body = subst(value.body, {value.fun: rec[0], value.param: arg[0]})
                target_body = subst(code.body, {code.param: Pair(rec[1], Pair(arg[1], env))})
                verdict = self.sim(ty.result, lower, source_body, target_body)
                if isinstance(verdict, Unrelated):
                    return verdict.within(f"applied to {_show(arg[0])} / {_show(arg[1])}")
                return verdict
            return run

        return all_of([lambda: below] + [instance(arg, rec) for arg in args for rec in recursive])


class TargetRelation(_Relation):
    """Target/target relations, used to compare a program before and after hoisting."""

    corpus_field = 'tgt_corpus'

    def sim(self, ty: Type, k: int, left: Term, right: Term) -> Verdict:
        result = eval_tgt(left, k)
        if not isinstance(result, Value):
            return Related('left side takes more than k steps')
        other = eval_tgt(right, self.cfg.fuel)
        if isinstance(other, Timeout):
            return Unknown(f"right side needs more than {self.cfg.fuel} steps")
        if isinstance(other, Stuck):
            return Unrelated(f"right side is stuck at {_show(other.term)}")
        verdict = self.equiv(ty, k - result.steps, result.term, other.term)
        if isinstance(verdict, Unrelated):
            return verdict.within(f"sim' at {print_type(ty)}, k={k}: left reaches "
                                  f"{_show(result.term)} in {result.steps} steps")
        return verdict

    def _equiv(self, ty: Type, k: int, left: Term, right: Term) -> Verdict:
        if isinstance(ty, Code):
            return self.equiv_code(ty, k, left, right)
        if isinstance(ty, Arr):
            return self.equiv_closure(ty, k, left, right)
        if isinstance(ty, (Nat, Unit, Prod)):
            return _structural(ty, k, left, right, self.equiv)
        return Unknown(f"no relation at {print_type(ty)}")

    def equiv_code(self, ty: Code, k: int, left: Term, right: Term) -> Verdict:
        if not (isinstance(left, Abs) and isinstance(right, Abs) and is_closed(left) and is_closed(right)):
            return Unrelated(f"{_show(left)} and {_show(right)} are not both closed code")
        if k == 0:
            return Related()
        lower = k - 1
        below = self.equiv(ty, lower, left, right)
        if isinstance(below, Unrelated):
            return below
        args = self.related_pairs(ty.param, lower, synthesized_pairs(ty.param, self.cfg.samples))
        if not args:
            return Unknown(f"no related arguments of type {print_type(ty.param)}")
        checks = [lambda: below]
        for arg in args:
            checks.append(lambda arg=arg: self.sim(ty.result, lower,
                                                   subst(left.body, {left.param: arg[0]}),
                                                   subst(right.body, {right.param: arg[1]})))
        return all_of(checks)

    def equiv_closure(self, ty: Arr, k: int, left: Term, right: Term) -> Verdict:
        if not (_closure_shape(left) and _closure_shape(right)):
            return Unrelated(f"{_show(left)} and {_show(right)} are not both closures")
        if _tuple_arity(left.env) != _tuple_arity(right.env):
            return Unrelated(f"environments {_show(left.env)} and {_show(right.env)} differ in arity")
        if k == 0:
            return Related()
        lower = k - 1
        below = self.equiv(ty, lower, left, right)
        if isinstance(below, Unrelated):
            return below
        args = self.related_pairs(ty.param, lower, synthesized_pairs(ty.param, self.cfg.samples))
        if not args:
            return Unknown(f"no related arguments of type {print_type(ty.param)}")
        recursive = [(left, right)] + self.related_pairs(ty, lower, [])[:max(self.cfg.samples - 1, 0)]
        checks = [lambda: below]
        for arg, rec in itertools.product(args, recursive):
            def run(arg=arg, rec=rec) -> Verdict:
                left_body = subst(left.code.body, {left.code.param: Pair(rec[0], Pair(arg[0], left.env))})
                right_body = subst(right.code.body, {right.code.param: Pair(rec[1], Pair(arg[1], right.env))})
                verdict = self.sim(ty.result, lower, left_body, right_body)
                if isinstance(verdict, Unrelated):
                    return verdict.within(f"applied to {_show(arg[0])} / {_show(arg[1])}")
                return verdict
            checks.append(run)
        return all_of(checks)


def sim_check(ty: Type, k: int, source: Term, target: Term, cfg: EquivCfg) -> Verdict:
    return CrossRelation(cfg).sim(ty, k, source, target)


def equiv_check(ty: Type, k: int, value: Term, target: Term, cfg: EquivCfg) -> Verdict:
    return CrossRelation(cfg).equiv(ty, k, value, target)


def sim_tgt_check(ty: Type, k: int, left: Term, right: Term, cfg: EquivCfg) -> Verdict:
    return TargetRelation(cfg).sim(ty, k, left, right)


def equiv_tgt_check(ty: Type, k: int, left: Term, right: Term, cfg: EquivCfg) -> Verdict:
    return TargetRelation(cfg).equiv(ty, k, left, right)


@dataclass(frozen=True)
class TargetSubst:
    """Target side of a substitution: values for the newest context entries,
    then one environment tuple for the rest."""
    direct: Tuple[Term, ...] = ()
    env: Term = UNITV


def subst_equiv_check(ctx: TypingCtx, k: int, delta: Mapping[Name, Term],
                      target: TargetSubst, cfg: EquivCfg) -> Verdict:
    """``direct[i]`` goes with the i-th newest entry of ``ctx``; the older
    entries, oldest first, go with the components of ``env``."""
    entries = list(ctx)
    if len(target.direct) > len(entries):
        raise ArityMismatch(f"{len(target.direct)} direct values for a context of {len(entries)}")
    if set(delta) != set(ctx.names):
        raise ArityMismatch(f"substitution covers {len(delta)} variables, context has {len(entries)}")
    split = len(entries) - len(target.direct)
    relation = CrossRelation(cfg)
    checks = []
    for (name, ty), value in zip(reversed(entries[split:]), target.direct):
        checks.append(lambda name=name, ty=ty, value=value: _entry(relation, ty, k, name, delta[name], value))
    env = target.env
    for name, ty in entries[:split]:
        if not isinstance(env, Pair):
            return Unrelated(f"environment {_show(target.env)} has no component for {name}")
        checks.append(lambda name=name, ty=ty, value=env.left: _entry(relation, ty, k, name, delta[name], value))
        env = env.right
    if not isinstance(env, UnitV):
        return Unrelated(f"environment {_show(target.env)} has more components than the context")
    return all_of(checks)


def _entry(relation: CrossRelation, ty: Type, k: int, name: Name, value: Term, target: Term) -> Verdict:
    verdict = relation.equiv(ty, k, value, target)
    if isinstance(verdict, Unrelated):
        return verdict.within(f"variable {name}")
    return verdict
