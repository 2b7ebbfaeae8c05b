"""Memoized lazy enumerations and dovetailing helpers.

An enumeration is a total function ``step -> element | None``: ``None``
marks a step where the underlying search produced nothing new.  Steps are
the unit of *fuel* for every membership query in the package.
"""

from __future__ import annotations

import threading
from itertools import count
from typing import Callable, Iterable, Iterator, Optional

Step = Optional[int]


class Enumeration:
    """A memoized view of a (possibly infinite) step generator.

    The generator is advanced lazily and under a lock, so concurrent readers
    observe one consistent function of the step index.
    """

    def __init__(self, steps: Callable[[], Iterator[Step]]):
        self._factory = steps
        self._it: Optional[Iterator[Step]] = None
        self._cache: list[Step] = []
        self._first: dict[int, int] = {}
        self._order: list[int] = []
        self._done = False
        self._lock = threading.RLock()

    @classmethod
    def of(cls, elements: Iterable[int]) -> "Enumeration":
        items = list(elements)
        return cls(lambda: iter(items))

    def _extend(self, upto: int) -> None:
        with self._lock:
            if self._it is None:
                self._it = iter(self._factory())
            while len(self._cache) <= upto:
                value: Step = None
                if not self._done:
                    try:
                        value = next(self._it)
                    except StopIteration:
                        self._done = True
                if value is not None and value not in self._first:
                    self._first[value] = len(self._cache)
                    self._order.append(value)
                self._cache.append(value)

    def __call__(self, step: int) -> Step:
        if step >= len(self._cache):
            self._extend(step)
        return self._cache[step]

    def first_step(self, n: int, fuel: int) -> Optional[int]:
        """Step at which ``n`` first appears, if that is ``<= fuel``."""
        first = self._first.get(n)
        if first is None:
            self._extend(fuel)
            first = self._first.get(n)
        return first if first is not None and first <= fuel else None

    def elements(self, fuel: int) -> list[int]:
        """Distinct elements seen in steps ``0..fuel``, in order of appearance."""
        self._extend(fuel)
        return [n for n in self._order if self._first[n] <= fuel]

    def iter_elements(self, fuel: int) -> Iterator[int]:
        """Like :meth:`elements`, but lazy: steps are only computed as the
        caller consumes them."""
        for step in range(fuel + 1):
            value = self(step)
            if value is not None and self._first[value] == step:
                yield value

    def take(self, count_: int) -> list[Step]:
        if count_ <= 0:
            return []
        self._extend(count_ - 1)
        return self._cache[:count_]


def paced(round_fn: Callable[[int], Iterable[int]]) -> Iterator[Step]:
    """Run ``round_fn(0), round_fn(1), ...`` and emit new elements one per step.

    A round that finds nothing new costs exactly one ``None`` step.
    """
    seen: set[int] = set()
    for t in count():
        fresh = []
        for n in round_fn(t):
            if n not in seen:
                seen.add(n)
                fresh.append(n)
        if fresh:
            yield from fresh
        else:
            yield None


def is_checkpoint(t: int) -> bool:
    """Rounds at which pending candidates are re-tested (powers of two)."""
    return t > 0 and t & (t - 1) == 0


class PendingScan:
    """Scan candidates 0, 1, 2, ... against a stage-monotone test.

    Candidate ``t`` is tried in round ``t``; failures are re-tried at every
    checkpoint round, so each candidate is tested at unboundedly large
    stages while each round costs amortized O(1) tests.
    """

    def __init__(self, test: Callable[[int, int], bool]):
        self.test = test
        self.found: set[int] = set()
        self.pending: list[int] = []

    def mark(self, n: int) -> None:
        self.found.add(n)

    def round(self, t: int) -> list[int]:
        out = []
        if t not in self.found:
            if self.test(t, t):
                self.found.add(t)
                out.append(t)
            else:
                self.pending.append(t)
        if is_checkpoint(t):
            still = []
            for n in self.pending:
                if n in self.found:
                    continue
                if self.test(n, t):
                    self.found.add(n)
                    out.append(n)
                else:
                    still.append(n)
            self.pending = still
        return out
