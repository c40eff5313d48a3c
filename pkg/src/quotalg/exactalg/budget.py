"""Step budgets for heavy computations.

A budget is installed for a dynamic scope with :func:`limit`; the Gröbner
kernel, the monomial enumerators and the point oracle charge it.  Running
out raises :class:`~quotalg.errors.BudgetExhausted`.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field

from ..errors import BudgetExhausted

DEFAULT_GROEBNER_STEPS = 10**6
DEFAULT_POINT_CAP = 10**6


@dataclass
class Budget:
    steps: int = DEFAULT_GROEBNER_STEPS
    points: int = DEFAULT_POINT_CAP
    used: int = 0
    exhausted: list = field(default_factory=list)

    def charge(self, n: int = 1, what: str = "groebner"):
        self.used += n
        if self.used > self.steps:
            self.exhausted.append(what)
            raise BudgetExhausted(what, self.steps)


_current: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("quotalg_budget", default=None)


_UNLIMITED = Budget(steps=float("inf"), points=float("inf"))


def current() -> Budget:
    """The budget in scope; unlimited when no :func:`limit` block is active."""
    b = _current.get()
    return _UNLIMITED if b is None else b


@contextlib.contextmanager
def limit(steps: int = DEFAULT_GROEBNER_STEPS, points: int = DEFAULT_POINT_CAP):
    """Run the enclosed block under a fresh budget; yields the Budget."""
    b = Budget(steps=steps, points=points)
    token = _current.set(b)
    try:
        yield b
    finally:
        _current.reset(token)
