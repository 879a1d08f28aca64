"""A small framework for exhaustively checked laws with re-evaluable witnesses."""

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional
import os

from .errors import TooLarge

DEFAULT_MAX_SIZE = 4096


def max_size():
    """Carrier size cap, read from ``STEINDUAL_MAX_SIZE`` (default 4096)."""
    raw = os.environ.get("STEINDUAL_MAX_SIZE", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_SIZE
    except ValueError:
        return DEFAULT_MAX_SIZE


def guard_size(n, what="carrier"):
    limit = max_size()
    if n > limit:
        raise TooLarge(f"{what} has {n} elements, above the cap of {limit}")


@dataclass(frozen=True)
class Law:
    """A universally quantified law.

    ``cases(data)`` enumerates argument tuples and ``holds(data, *args)``
    decides one instance.  A failing tuple is a witness that can be handed
    back to ``holds`` to reproduce the violation.  ``scan`` optionally replaces
    the generic loop with a faster search that must return the same first
    witness ordering semantics (any failing tuple is acceptable).
    """

    name: str
    cases: Callable[[object], Iterable[tuple]]
    holds: Callable[..., bool]
    scan: Optional[Callable[[object], Optional[tuple]]] = field(default=None, compare=False)

    def first_failure(self, data):
        if self.scan is not None:
            return self.scan(data)
        for case in self.cases(data):
            if not self.holds(data, *case):
                return tuple(case)
        return None

    def reevaluate(self, data, witness):
        """True when the law holds at ``witness``."""
        return bool(self.holds(data, *witness))


def single():
    """Cases for a law with no quantified variables."""
    return lambda data: [()]


@dataclass(frozen=True)
class CheckResult:
    law: str
    passed: bool
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class AxiomReport:
    profile: str
    checks: tuple = ()
    notes: tuple = ()

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def result(self, law):
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def laws(self):
        return [c.law for c in self.checks]


def run_laws(profile, laws, data, notes=()):
    checks = []
    for law in laws:
        witness = law.first_failure(data)
        checks.append(CheckResult(law.name, witness is None, witness))
    return AxiomReport(profile, tuple(checks), tuple(notes))


def raise_first(laws, data, exception_for):
    """Raise the exception mapped to the first failing law, if any."""
    for law in laws:
        witness = law.first_failure(data)
        if witness is not None:
            raise exception_for(law.name)(witness, law=law.name)
