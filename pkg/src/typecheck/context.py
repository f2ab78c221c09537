from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple

from ..lang.names import Name
from ..lang.terms import Type
from ..utils.errors import UnboundVariable


@dataclass(frozen=True)
class TypingCtx:
    """Ordered type assignments, oldest first; lookup finds the newest."""
    entries: Tuple[Tuple[Name, Type], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Name, Type]]) -> 'TypingCtx':
        return cls(tuple(pairs))

    def extend(self, name: Name, ty: Type) -> 'TypingCtx':
        return TypingCtx(self.entries + ((name, ty),))

    def find(self, name: Name) -> Optional[Type]:
        for bound, ty in reversed(self.entries):
            if bound == name:
                return ty
        return None

    def lookup(self, name: Name) -> Type:
        ty = self.find(name)
        if ty is None:
            raise UnboundVariable(name)
        return ty

    @property
    def names(self) -> Tuple[Name, ...]:
        return tuple(name for name, _ in self.entries)

    def __iter__(self) -> Iterator[Tuple[Name, Type]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


EMPTY = TypingCtx()


def prune_ctx(names: Iterable[Name], ctx: TypingCtx) -> TypingCtx:
    """Restrict ``ctx`` to ``names``, in the order of ``names``."""
    return TypingCtx(tuple((name, ctx.lookup(name)) for name in names))
