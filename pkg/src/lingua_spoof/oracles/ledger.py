"""Query budget accounting."""

from __future__ import annotations

import threading

from .types import BudgetExhausted


class QueryLedger:
    """Thread-safe counter of physical detector accesses.

    ``reserve`` is an atomic check-and-increment: no interleaving of workers
    can push ``used`` past ``budget``. Cache hits never touch the ledger; a
    transport failure refunds its reservation via ``release`` so ``used``
    counts completed accesses only.
    """

    def __init__(self, budget: int):
        if budget < 0:
            raise ValueError("budget must be >= 0")
        self._budget = budget
        self._used = 0
        self._lock = threading.Lock()

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def used(self) -> int:
        with self._lock:
            return self._used

    @property
    def remaining(self) -> int:
        with self._lock:
            return self._budget - self._used

    def reserve(self) -> None:
        with self._lock:
            if self._used >= self._budget:
                raise BudgetExhausted(self._used, self._budget)
            self._used += 1

    def release(self) -> None:
        with self._lock:
            if self._used <= 0:
                raise RuntimeError("release without a matching reserve")
            self._used -= 1
