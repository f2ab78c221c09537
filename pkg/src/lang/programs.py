from dataclasses import dataclass
from typing import Tuple

from .names import Name
from .terms import Let, Term


@dataclass(frozen=True)
class HoistedFun:
    name: Name
    body: Term


@dataclass(frozen=True)
class HoistedProgram:
    """``letfun f1 = M1 ... fn = Mn in main``."""
    funs: Tuple[HoistedFun, ...]
    main: Term

    @property
    def names(self) -> Tuple[Name, ...]:
        return tuple(f.name for f in self.funs)

    def reify(self) -> Term:
        """Right-nested lets of the functions around ``main``."""
        term = self.main
        for fun in reversed(self.funs):
            term = Let(fun.body, fun.name, term)
        return term
