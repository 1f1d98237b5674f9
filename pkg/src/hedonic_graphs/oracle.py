"""
@file oracle.py
@description Instrumentation of preference-oracle calls
@module hedonic_graphs.oracle
@author hedonic-graphs maintainers
@created 2026-10-17

Every preference comparison in the toolkit goes through ``game.compare``, which
reports to the counters active in the current context. Counters nest, and are
context-local, so concurrent solves in different threads do not mix counts.
"""

import logging
import threading
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

from hedonic_graphs.exceptions import OracleBudgetExceededError

logger = logging.getLogger(__name__)


@dataclass
class OracleCounter:
    """
    Running count of preference comparisons.

    Attributes:
        calls: Comparisons made so far
        limit: Optional maximum; exceeding it raises OracleBudgetExceededError
    """

    calls: int = 0
    limit: Optional[int] = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self) -> None:
        with self._lock:
            self.calls += 1
        if self.limit is not None and self.calls > self.limit:
            raise OracleBudgetExceededError(self.limit)


_active: ContextVar[Tuple[OracleCounter, ...]] = ContextVar("active_oracle_counters", default=())


@contextmanager
def count_oracle_calls(limit: Optional[int] = None) -> Iterator[OracleCounter]:
    """
    Count the comparisons made inside a ``with`` block.

    Args:
        limit: Optional maximum number of comparisons

    Yields:
        The counter; read ``calls`` after (or during) the block

    Example:
        >>> with count_oracle_calls() as counter:
        ...     solve_is(game)
        >>> counter.calls <= 10 * game.n ** 4
        True
    """
    counter = OracleCounter(limit=limit)
    token = _active.set(_active.get() + (counter,))
    try:
        yield counter
    finally:
        _active.reset(token)
        logger.debug(f"Oracle counter closed after {counter.calls} comparison(s)")


def record_oracle_call() -> None:
    """Report one comparison to every active counter."""
    for counter in _active.get():
        counter.record()
