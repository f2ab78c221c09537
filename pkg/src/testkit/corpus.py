"""Candidate related value pairs for the bounded relations."""
import logging
from typing import List, Tuple

from ..config.config import EquivCfg, FuelConfig
from ..dynamics.evaluator import Value, eval_tgt
from ..frontend.sexp import parse_src
from ..lang.terms import Term, Type
from ..transforms.closure_conversion import closure_convert
from ..transforms.hoisting import hoist
from ..typecheck.checker import translate_type, type_of_src
from ..typecheck.context import EMPTY

logger = logging.getLogger(__name__)

SOURCE_VALUES = (
    "()",
    "(pair 1 2)",
    "(pair 0 ())",
    "(fix (f : (-> nat nat)) (x : nat) x)",
    "(fix (f : (-> nat nat)) (x : nat) 3)",
    "(fix (f : (-> nat nat)) (x : nat) (plus x 1))",
    "(fix (f : (-> nat nat)) (x : nat) (ifz x 0 (plus 2 (f (pred x)))))",
    "(fix (f : (-> unit nat)) (u : unit) 7)",
    "(fix (f : (-> (-> nat nat) nat)) (g : (-> nat nat)) (g 2))",
    "(fix (f : (-> nat (-> nat nat))) (x : nat) (fix (h : (-> nat nat)) (y : nat) (plus x y)))",
)


def source_corpus() -> List[Tuple[Term, Term, Type]]:
    """``(V, cc V, T)`` triples."""
    corpus = []
    for text in SOURCE_VALUES:
        value = parse_src(text)
        corpus.append((value, closure_convert(value), type_of_src(EMPTY, value)))
    return corpus


def target_corpus(fuel: int) -> List[Tuple[Term, Term, Type]]:
    """``(cc V, value of the hoisted cc V, T)`` triples at target types."""
    corpus = []
    for value, converted, ty in source_corpus():
        result = eval_tgt(hoist(converted).reify(), fuel)
        if isinstance(result, Value):
            corpus.append((converted, result.term, translate_type(ty)))
        else:
            logger.warning(f"hoisted corpus value did not evaluate: {result}")
    return corpus


def default_corpus(fuel: FuelConfig = None, samples: int = 4, seed: int = 0) -> EquivCfg:
    """An ``EquivCfg`` whose corpora hold the built-in value pairs."""
    fuel = fuel or FuelConfig()
    return EquivCfg(fuel=fuel.tgt_fuel, samples=samples, value_corpus=tuple(source_corpus()),
                    tgt_corpus=tuple(target_corpus(fuel.tgt_fuel)), seed=seed)
