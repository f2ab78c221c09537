"""Stamped variable names and the fresh-stamp supply."""
import itertools
import threading
from dataclasses import dataclass


@dataclass(frozen=True)
class Name:
    """An identifier plus a disambiguating stamp.

    Stamp 0 is reserved for names read from text that are free in their
    term; every binder gets a stamp from the supply.
    """
    base: str
    stamp: int = 0

    def __str__(self) -> str:
        return self.base if self.stamp == 0 else f"{self.base}_{self.stamp}"


class NameSupply:
    """Monotone counter shared by names and rigid type ids."""

    def __init__(self):
        self._lock = threading.Lock()
        self._counter = itertools.count(1)

    def next_stamp(self) -> int:
        with self._lock:
            return next(self._counter)

    def reset(self) -> None:
        with self._lock:
            self._counter = itertools.count(1)


_supply = NameSupply()


def fresh(base: str = 'v') -> Name:
    return Name(base, _supply.next_stamp())


def fresh_like(name: Name) -> Name:
    return fresh(name.base)


def fresh_stamp() -> int:
    return _supply.next_stamp()


def reset_names() -> None:
    """Restart stamps from 1; the CLI calls this once per invocation."""
    _supply.reset()
