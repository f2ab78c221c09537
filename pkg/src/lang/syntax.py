"""Binding-aware operations on terms: free variables, substitution,
alpha-equivalence, value recognition and renaming."""
import dataclasses
from typing import Dict, List, Mapping, Optional, Set, Tuple

from .names import Name, fresh_like
from .terms import (
    Abs, Clos, Fix, Let, Num, Open, Pair, Term, Type, UnitV, Var, binders,
)


def children(term: Term) -> List[Tuple[str, Term]]:
    """Direct sub-terms as ``(field, term)`` in left-to-right order."""
    return [(f.name, getattr(term, f.name)) for f in dataclasses.fields(term)
            if isinstance(getattr(term, f.name), Term)]


def replace_child(term: Term, field: str, new: Term) -> Term:
    return dataclasses.replace(term, **{field: new})


def scoped_field(term: Term) -> Optional[str]:
    """The child field under the term's binders, if any."""
    if isinstance(term, (Let, Fix, Abs, Open)):
        return 'body'
    return None


def free_vars(term: Term) -> List[Name]:
    """Free variables in leftmost, outside-in first-occurrence order."""
    seen: Dict[Name, None] = {}

    def walk(node: Term, bound: frozenset) -> None:
        if isinstance(node, Var):
            if node.name not in bound and node.name not in seen:
                seen[node.name] = None
            return
        inner = bound | frozenset(binders(node))
        scoped = scoped_field(node)
        for field, child in children(node):
            walk(child, inner if field == scoped else bound)

    walk(term, frozenset())
    return list(seen)


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def size(term: Term) -> int:
    return 1 + sum(size(child) for _, child in children(term))


def is_value(term: Term) -> bool:
    if isinstance(term, (Num, UnitV, Fix, Abs)):
        return True
    if isinstance(term, (Pair, Clos)):
        left, right = (term.left, term.right) if isinstance(term, Pair) else (term.code, term.env)
        return is_value(left) and is_value(right)
    return False


def _rename_binders(node: Term, mapping: Dict[Name, Term], avoid: Set[Name]):
    """Drop shadowed keys and rename binders that would capture ``avoid``."""
    names = binders(node)
    inner = {k: v for k, v in mapping.items() if k not in names}
    renames = {}
    for name in names:
        if name in avoid:
            renames[name] = fresh_like(name)
    if renames:
        for old, new in renames.items():
            inner[old] = Var(new)
        node = _with_binders(node, renames)
    return node, inner


def _with_binders(node: Term, renames: Mapping[Name, Name]) -> Term:
    fields = {}
    for attr in ('var', 'fun', 'param', 'env'):
        value = getattr(node, attr, None)
        if isinstance(value, Name) and value in renames:
            fields[attr] = renames[value]
    return dataclasses.replace(node, **fields)


def subst(term: Term, bindings: Mapping[Name, Term]) -> Term:
    """Simultaneous capture-avoiding substitution.

    Variables without a binding are left in place.
    """
    if not bindings:
        return term
    avoid: Set[Name] = set()
    for value in bindings.values():
        avoid.update(free_vars(value))
    return _subst(term, dict(bindings), avoid)


def _subst(node: Term, mapping: Dict[Name, Term], avoid: Set[Name]) -> Term:
    if not mapping:
        return node
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, (Num, UnitV)):
        return node
    scoped = scoped_field(node)
    inner_node, inner = node, mapping
    if scoped is not None:
        inner_node, inner = _rename_binders(node, mapping, avoid)
    updates = {}
    for field, child in children(inner_node):
        updates[field] = _subst(child, inner if field == scoped else mapping, avoid)
    return dataclasses.replace(inner_node, **updates)


def alpha_eq(left: Term, right: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""

    def eq(a: Term, b: Term, env_a: Dict[Name, int], env_b: Dict[Name, int], depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            in_a, in_b = a.name in env_a, b.name in env_b
            if in_a or in_b:
                return in_a and in_b and env_a[a.name] == env_b[b.name]
            return a.name == b.name
        if isinstance(a, Num):
            return a.n == b.n
        for f in dataclasses.fields(a):
            va, vb = getattr(a, f.name), getattr(b, f.name)
            if isinstance(va, Type) and va != vb:
                return False
        names_a, names_b = binders(a), binders(b)
        inner_a, inner_b, inner_depth = env_a, env_b, depth
        if names_a:
            inner_a, inner_b = dict(env_a), dict(env_b)
            for na, nb in zip(names_a, names_b):
                inner_a[na] = inner_depth
                inner_b[nb] = inner_depth
                inner_depth += 1
        scoped = scoped_field(a)
        for (field, ca), (_, cb) in zip(children(a), children(b)):
            if field == scoped:
                if not eq(ca, cb, inner_a, inner_b, inner_depth):
                    return False
            elif not eq(ca, cb, env_a, env_b, depth):
                return False
        return True

    return eq(left, right, {}, {}, 0)


def freshen(term: Term) -> Term:
    """Give every binder a fresh stamp; free variables are untouched."""

    def walk(node: Term, env: Dict[Name, Name]) -> Term:
        if isinstance(node, Var):
            return Var(env[node.name]) if node.name in env else node
        scoped = scoped_field(node)
        inner_env, renamed = env, node
        if scoped is not None:
            renames = {name: fresh_like(name) for name in binders(node)}
            inner_env = {**env, **renames}
            renamed = _with_binders(node, renames)
        updates = {field: walk(child, inner_env if field == scoped else env)
                   for field, child in children(renamed)}
        return dataclasses.replace(renamed, **updates) if updates else renamed

    return walk(term, {})


def contains(term: Term, kinds: tuple) -> bool:
    if isinstance(term, kinds):
        return True
    return any(contains(child, kinds) for _, child in children(term))
