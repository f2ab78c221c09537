"""S-expression concrete syntax for both languages.

Terms::

    n  x  ()  unit
    (pred M) (plus M1 M2) (ifz M M1 M2) (pair M1 M2) (fst M) (snd M)
    (let ((x M1)) M2)  (fix (f : T) (x : T1) M)  (app M1 M2)  (M1 M2)
    (abs (x : T) M)  (clos M1 M2)  (open M1 (f e) M2)

Types::

    nat  unit  (* T1 T2)  (-> T1 T2)  (=> T1 T2)  (rigid k)

Hoisted programs print as ``(letfun ((f1 M1) ...) M)``. A ``;`` starts a
comment that runs to the end of the line.
"""
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Union

from ..lang.names import Name, fresh
from ..lang.programs import HoistedFun, HoistedProgram
from ..lang.syntax import free_vars
from ..lang.terms import (
    Abs, App, Arr, Clos, Code, Fix, Fst, Ifz, Lang, Let, NAT, Nat, Num, Open,
    Pair, Plus, Pred, Prod, Rigid, Snd, Term, Type, UNIT, UNITV, Unit, UnitV,
    Var,
)
from ..utils.errors import SourceSyntaxError

KEYWORDS = frozenset({
    'pred', 'plus', 'ifz', 'unit', 'pair', 'fst', 'snd', 'let', 'fix', 'abs',
    'app', 'clos', 'open', 'cps', 'letfun', 'nat', 'rigid',
})
SOURCE_FORMS = frozenset({'fix'})
TARGET_FORMS = frozenset({'abs', 'clos', 'open'})

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
# free variables that carry a stamp print as base#stamp
STAMPED = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)#([0-9]+)\Z")
NUMERAL = re.compile(r'[0-9]+\Z')
TOKEN = re.compile(r'(?P<ws>\s+)|(?P<comment>;[^\n]*)|(?P<open>\()|(?P<close>\))|(?P<atom>[^\s();]+)')


@dataclass
class Atom:
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: list
    line: int
    col: int


SExp = Union[Atom, SList]


def normalize(text: str) -> str:
    return text.replace('\r\n', '\n').replace('\r', '\n')


def read(text: str) -> SExp:
    """Read exactly one s-expression."""
    text = normalize(text)
    stack: List[SList] = []
    result: Optional[SExp] = None
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        match = TOKEN.match(text, pos)
        kind, lexeme = match.lastgroup, match.group()
        if kind in ('ws', 'comment'):
            pass
        elif result is not None:
            raise SourceSyntaxError("unexpected text after the term", line, col)
        elif kind == 'open':
            stack.append(SList([], line, col))
        elif kind == 'close':
            if not stack:
                raise SourceSyntaxError("unbalanced ')'", line, col)
            done = stack.pop()
            if stack:
                stack[-1].items.append(done)
            else:
                result = done
        else:
            atom = Atom(lexeme, line, col)
            if stack:
                stack[-1].items.append(atom)
            else:
                result = atom
        for char in lexeme:
            if char == '\n':
                line, col = line + 1, 1
            else:
                col += 1
        pos = match.end()
    if stack:
        raise SourceSyntaxError("unexpected end of input, missing ')'", line, col)
    if result is None:
        raise SourceSyntaxError("empty input", line, col)
    return result


class _Parser:

    def __init__(self, lang: Lang):
        self.lang = lang

    def fail(self, node: SExp, message: str):
        raise SourceSyntaxError(message, node.line, node.col)

    def ident(self, node: SExp) -> str:
        if not isinstance(node, Atom) or not IDENT.match(node.text) or node.text in KEYWORDS:
            self.fail(node, f"expected an identifier, found {_show(node)}")
        return node.text

    def type_(self, node: SExp) -> Type:
        if isinstance(node, Atom):
            if node.text == 'nat':
                return NAT
            if node.text == 'unit':
                return UNIT
            self.fail(node, f"unknown type {node.text!r}")
        if not node.items or not isinstance(node.items[0], Atom):
            self.fail(node, "malformed type")
        head, args = node.items[0].text, node.items[1:]
        if head in ('*', '->', '=>'):
            if len(args) != 2:
                self.fail(node, f"'{head}' takes two types")
            if head == '=>' and self.lang is Lang.SRC:
                self.fail(node, "code types do not exist in the source language")
            left, right = self.type_(args[0]), self.type_(args[1])
            return {'*': Prod, '->': Arr, '=>': Code}[head](left, right)
        if head == 'rigid':
            if self.lang is Lang.SRC:
                self.fail(node, "rigid types do not exist in the source language")
            if len(args) != 1 or not isinstance(args[0], Atom) or not NUMERAL.match(args[0].text):
                self.fail(node, "rigid takes one numeric id")
            return Rigid(int(args[0].text))
        self.fail(node, f"unknown type constructor {head!r}")

    def annotated(self, node: SExp):
        """``(x : T)``"""
        if not isinstance(node, SList) or len(node.items) != 3 or not (
                isinstance(node.items[1], Atom) and node.items[1].text == ':'):
            self.fail(node, "expected a binder of the form (x : T)")
        return self.ident(node.items[0]), self.type_(node.items[2])

    def term(self, node: SExp, scope: Dict[str, Name]) -> Term:
        if isinstance(node, Atom):
            text = node.text
            if NUMERAL.match(text):
                return Num(int(text))
            if text == 'unit':
                return UNITV
            stamped = STAMPED.match(text)
            if stamped and stamped.group(1) not in KEYWORDS:
                return Var(Name(stamped.group(1), int(stamped.group(2))))
            name = self.ident(node)
            return Var(scope.get(name, Name(name)))
        if not node.items:
            return UNITV
        head = node.items[0]
        if isinstance(head, Atom) and head.text in KEYWORDS:
            return self.form(node, head.text, node.items[1:], scope)
        if len(node.items) != 2:
            self.fail(node, "an application takes exactly one argument")
        return App(self.term(node.items[0], scope), self.term(node.items[1], scope))

    def arity(self, node: SList, keyword: str, args: list, count: int):
        if len(args) != count:
            self.fail(node, f"'{keyword}' takes {count} argument(s), got {len(args)}")

    def form(self, node: SList, keyword: str, args: list, scope: Dict[str, Name]) -> Term:
        if keyword in SOURCE_FORMS and self.lang is Lang.TGT:
            self.fail(node, f"'{keyword}' is not a target-language form")
        if keyword in TARGET_FORMS and self.lang is Lang.SRC:
            self.fail(node, f"'{keyword}' is not a source-language form")
        if keyword in ('pred', 'fst', 'snd'):
            self.arity(node, keyword, args, 1)
            return {'pred': Pred, 'fst': Fst, 'snd': Snd}[keyword](self.term(args[0], scope))
        if keyword in ('plus', 'pair', 'app', 'clos'):
            self.arity(node, keyword, args, 2)
            ctor = {'plus': Plus, 'pair': Pair, 'app': App, 'clos': Clos}[keyword]
            return ctor(self.term(args[0], scope), self.term(args[1], scope))
        if keyword == 'ifz':
            self.arity(node, keyword, args, 3)
            return Ifz(*(self.term(arg, scope) for arg in args))
        if keyword == 'let':
            self.arity(node, keyword, args, 2)
            binding = args[0]
            if not (isinstance(binding, SList) and len(binding.items) == 1
                    and isinstance(binding.items[0], SList) and len(binding.items[0].items) == 2):
                self.fail(binding, "let expects ((x M1)) as its binding")
            var_node, bound_node = binding.items[0].items
            text = self.ident(var_node)
            bound = self.term(bound_node, scope)
            var = fresh(text)
            return Let(bound, var, self.term(args[1], {**scope, text: var}))
        if keyword == 'fix':
            self.arity(node, keyword, args, 3)
            f_text, fun_type = self.annotated(args[0])
            x_text, param_type = self.annotated(args[1])
            fun, param = fresh(f_text), fresh(x_text)
            body = self.term(args[2], {**scope, f_text: fun, x_text: param})
            return Fix(fun_type, param_type, fun, param, body)
        if keyword == 'abs':
            self.arity(node, keyword, args, 2)
            x_text, param_type = self.annotated(args[0])
            param = fresh(x_text)
            return Abs(param_type, param, self.term(args[1], {**scope, x_text: param}))
        if keyword == 'open':
            self.arity(node, keyword, args, 3)
            pair = args[1]
            if not isinstance(pair, SList) or len(pair.items) != 2:
                self.fail(pair, "open expects (f e) as its binders")
            f_text, e_text = self.ident(pair.items[0]), self.ident(pair.items[1])
            closure = self.term(args[0], scope)
            fun, env = fresh(f_text), fresh(e_text)
            return Open(closure, fun, env, self.term(args[2], {**scope, f_text: fun, e_text: env}))
        self.fail(node, f"'{keyword}' cannot start a term")


def _show(node: SExp) -> str:
    return repr(node.text) if isinstance(node, Atom) else 'a list'


def parse_src(text: str) -> Term:
    return _Parser(Lang.SRC).term(read(text), {})


def parse_tgt(text: str) -> Term:
    return _Parser(Lang.TGT).term(read(text), {})


def parse_type(text: str, lang: Lang = Lang.SRC) -> Type:
    return _Parser(lang).type_(read(text))


def parse_hoisted(text: str) -> HoistedProgram:
    parser = _Parser(Lang.TGT)
    node = read(text)
    if not (isinstance(node, SList) and len(node.items) == 3 and isinstance(node.items[0], Atom)
            and node.items[0].text == 'letfun' and isinstance(node.items[1], SList)):
        raise SourceSyntaxError("expected (letfun ((f M) ...) M)", node.line, node.col)
    funs, scope = [], {}
    for entry in node.items[1].items:
        if not isinstance(entry, SList) or len(entry.items) != 2:
            parser.fail(entry, "letfun entries have the form (f M)")
        text_name = parser.ident(entry.items[0])
        body = parser.term(entry.items[1], {})
        name = fresh(text_name)
        funs.append(HoistedFun(name, body))
        scope[text_name] = name
    return HoistedProgram(tuple(funs), parser.term(node.items[2], scope))


def print_type(ty: Type) -> str:
    if isinstance(ty, Nat):
        return 'nat'
    if isinstance(ty, Unit):
        return 'unit'
    if isinstance(ty, Rigid):
        return f"(rigid {ty.id})"
    symbol = {Prod: '*', Arr: '->', Code: '=>'}[type(ty)]
    left, right = (ty.left, ty.right) if isinstance(ty, Prod) else (ty.param, ty.result)
    return f"({symbol} {print_type(left)} {print_type(right)})"


def free_text(name: Name) -> str:
    return name.base if name.stamp == 0 else f"{name.base}#{name.stamp}"


class _Printer:
    """Prints with display names chosen from the binders' base names."""

    def __init__(self, reserved: Set[str]):
        self.used = set(reserved)

    def bind(self, name: Name, env: Dict[Name, str]) -> str:
        candidate, index = name.base, 0
        while candidate in self.used or candidate in KEYWORDS:
            index += 1
            candidate = f"{name.base}_{index}"
        env[name] = candidate
        return candidate

    def scoped(self, env: Dict[Name, str], names) -> tuple:
        inner = dict(env)
        shown = [self.bind(name, inner) for name in names]
        self.used.update(shown)
        return inner, shown

    def release(self, shown) -> None:
        self.used.difference_update(shown)

    def term(self, t: Term, env: Dict[Name, str]) -> str:
        if isinstance(t, Num):
            return str(t.n)
        if isinstance(t, Var):
            return env[t.name] if t.name in env else free_text(t.name)
        if isinstance(t, UnitV):
            return '()'
        if isinstance(t, Pred):
            return f"(pred {self.term(t.arg, env)})"
        if isinstance(t, Fst):
            return f"(fst {self.term(t.arg, env)})"
        if isinstance(t, Snd):
            return f"(snd {self.term(t.arg, env)})"
        if isinstance(t, Plus):
            return f"(plus {self.term(t.left, env)} {self.term(t.right, env)})"
        if isinstance(t, Pair):
            return f"(pair {self.term(t.left, env)} {self.term(t.right, env)})"
        if isinstance(t, App):
            return f"(app {self.term(t.fun, env)} {self.term(t.arg, env)})"
        if isinstance(t, Clos):
            return f"(clos {self.term(t.code, env)} {self.term(t.env, env)})"
        if isinstance(t, Ifz):
            return f"(ifz {self.term(t.cond, env)} {self.term(t.then, env)} {self.term(t.orelse, env)})"
        if isinstance(t, Let):
            bound = self.term(t.bound, env)
            inner, shown = self.scoped(env, [t.var])
            body = self.term(t.body, inner)
            self.release(shown)
            return f"(let (({shown[0]} {bound})) {body})"
        if isinstance(t, Fix):
            inner, shown = self.scoped(env, [t.fun, t.param])
            body = self.term(t.body, inner)
            self.release(shown)
            return (f"(fix ({shown[0]} : {print_type(t.fun_type)}) "
                    f"({shown[1]} : {print_type(t.param_type)}) {body})")
        if isinstance(t, Abs):
            inner, shown = self.scoped(env, [t.param])
            body = self.term(t.body, inner)
            self.release(shown)
            return f"(abs ({shown[0]} : {print_type(t.param_type)}) {body})"
        if isinstance(t, Open):
            closure = self.term(t.closure, env)
            inner, shown = self.scoped(env, [t.fun, t.env])
            body = self.term(t.body, inner)
            self.release(shown)
            return f"(open {closure} ({shown[0]} {shown[1]}) {body})"
        raise TypeError(f"not a term: {t!r}")


def print_term(term: Term) -> str:
    reserved = {free_text(name) for name in free_vars(term)}
    return _Printer(reserved).term(term, {})


print_src = print_term
print_tgt = print_term


def print_hoisted(program: HoistedProgram) -> str:
    reserved = set()
    for fun in program.funs:
        reserved.update(free_text(name) for name in free_vars(fun.body))
    reserved.update(free_text(name) for name in free_vars(program.main)
                    if name not in program.names)
    printer = _Printer(reserved)
    env, shown = printer.scoped({}, program.names)
    entries = ' '.join(f"({label} {printer.term(fun.body, {})})"
                       for label, fun in zip(shown, program.funs))
    return f"(letfun ({entries}) {printer.term(program.main, env)})"
