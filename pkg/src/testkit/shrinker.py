"""Greedy reduction of failing source programs.

Candidates replace a node by a closed descendant of the same type, by a
small literal of its type, or shrink a numeral. A candidate is kept only
when it is closed, has the original program type, is smaller and still
fails.
"""
import logging
from typing import Callable, Dict, Iterator, List, Tuple

from ..lang.syntax import children, is_closed, replace_child, size
from ..lang.terms import Nat, Num, Term, Type, UNITV, Unit, UnitV
from ..typecheck.checker import type_of_src
from ..typecheck.context import EMPTY
from ..utils.errors import FccError

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


def positions(term: Term, path: Path = ()) -> Iterator[Tuple[Path, Term]]:
    yield path, term
    for field, child in children(term):
        yield from positions(child, path + (field,))


def replace_at(term: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    return replace_child(term, head, replace_at(getattr(term, head), rest, new))


def _numeral_weight(term: Term) -> int:
    return sum(node.n for _, node in positions(term) if isinstance(node, Num))


def _measure(term: Term) -> Tuple[int, int]:
    return size(term), _numeral_weight(term)


def _candidates(term: Term, node_types: Dict[int, Type]) -> Iterator[Term]:
    nodes: List[Tuple[Path, Term]] = list(positions(term))
    for path, node in nodes:
        ty = node_types.get(id(node))
        if ty is None:
            continue
        if isinstance(node, Num):
            if node.n > 0:
                yield replace_at(term, path, Num(node.n // 2))
                yield replace_at(term, path, Num(node.n - 1))
            continue
        if isinstance(ty, Nat):
            yield replace_at(term, path, Num(0))
        elif isinstance(ty, Unit) and not isinstance(node, UnitV):
            yield replace_at(term, path, UNITV)
        for _, inner in positions(node):
            if inner is not node and node_types.get(id(inner)) == ty and is_closed(inner):
                yield replace_at(term, path, inner)


def _acceptable(candidate: Term, ty: Type) -> bool:
    if not is_closed(candidate):
        return False
    try:
        return type_of_src(EMPTY, candidate) == ty
    except FccError:
        return False


def shrink(term: Term, fails: Callable[[Term], bool], max_rounds: int = 200) -> Term:
    """A locally minimal term that still ``fails``."""
    node_types: Dict[int, Type] = {}
    ty = type_of_src(EMPTY, term, node_types=node_types)
    rounds = 0
    improved = True
    while improved and rounds < max_rounds:
        improved = False
        rounds += 1
        current = _measure(term)
        for candidate in _candidates(term, node_types):
            if _measure(candidate) >= current or not _acceptable(candidate, ty):
                continue
            if fails(candidate):
                term = candidate
                node_types = {}
                type_of_src(EMPTY, term, node_types=node_types)
                improved = True
                break
    logger.debug(f"shrinking stopped after {rounds} rounds at size {size(term)}")
    return term
