"""Outcomes of the bounded relation checks.

``Related`` only means that no counterexample was found within the
sampling and fuel budget; ``Unrelated`` always carries a concrete
witness.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Tuple, Union

from ..config.config import ReportConfig


@dataclass(frozen=True)
class Related:
    note: str = ''


@dataclass(frozen=True)
class Unrelated:
    witness: str
    trace: Tuple[str, ...] = field(default=())

    def within(self, step: str) -> 'Unrelated':
        return Unrelated(self.witness, (step,) + self.trace)


@dataclass(frozen=True)
class Unknown:
    reason: str


Verdict = Union[Related, Unrelated, Unknown]


def all_of(checks: Iterable[Callable[[], Verdict]]) -> Verdict:
    """Conjunction, stopping at the first ``Unrelated``."""
    unknown = None
    for check in checks:
        verdict = check()
        if isinstance(verdict, Unrelated):
            return verdict
        if isinstance(verdict, Unknown) and unknown is None:
            unknown = verdict
    return unknown or Related()


def verdict_name(verdict: Verdict) -> str:
    return type(verdict).__name__.lower()


def verdict_to_json(verdict: Verdict, type_text: str, index: int) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        'schema': ReportConfig.SCHEMA_VERSION,
        'type': type_text,
        'index': index,
        'verdict': verdict_name(verdict),
    }
    if isinstance(verdict, Unrelated):
        report['witness'] = verdict.witness
        report['trace'] = list(verdict.trace)
    elif isinstance(verdict, Unknown):
        report['reason'] = verdict.reason
    return report
