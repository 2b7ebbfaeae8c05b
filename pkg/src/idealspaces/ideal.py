"""Points of a space of ideals: element enumerations and ascending chains.

An :class:`IdealStream` is an enumeration whose range is meant to be an
ideal (non-empty, lower, directed).  That is a semantic contract; the
finite-stage falsifier :func:`validate_prefix` reports evidence against it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import encoding as enc
from .relation import QueryResult, StagedRelation, UNKNOWN, builtin
from .stream import Enumeration, PendingScan, is_checkpoint, paced


class SearchBudgetExceeded(RuntimeError):
    """An unbounded search ran past its caller-imposed step budget."""


@dataclass(eq=False)
class IdealStream:
    enum: Enumeration
    rel: StagedRelation
    # exact membership oracle, when the point is known in closed form
    contains: Optional[Callable[[int], bool]] = None
    label: str = ""

    def member(self, n: int, fuel: int) -> QueryResult:
        return member(self, n, fuel)

    def elements(self, fuel: int) -> list[int]:
        return self.enum.elements(fuel)


def stream(rel: StagedRelation, steps: Callable[[], Iterator[Optional[int]]], *,
           contains: Optional[Callable[[int], bool]] = None, label: str = "") -> IdealStream:
    return IdealStream(Enumeration(steps), rel, contains, label)


def raw_enumeration(rel: StagedRelation, elements: Iterable[int], label: str = "") -> IdealStream:
    """A finite explicit enumeration; not necessarily an ideal."""
    items = list(elements)
    return IdealStream(Enumeration.of(items), rel, contains=set(items).__contains__,
                       label=label or f"enum{items}")


def member(I: IdealStream, n: int, fuel: int) -> QueryResult:
    step = I.enum.first_step(n, fuel)
    return UNKNOWN if step is None else QueryResult.yes(step, n)


def equal_below(I: IdealStream, J: IdealStream, bound: int, fuel: int) -> bool:
    return all(member(I, n, fuel).is_yes == member(J, n, fuel).is_yes for n in range(bound + 1))


# -- chains ---------------------------------------------------------------

class Chain:
    """A lazily computed, memoized sequence ``elem(0), elem(1), ...``.

    The contract is ``elem(i) < elem(i+1)`` for every i; it is not enforced.
    """

    def __init__(self, rel: StagedRelation, elements: Callable[[], Iterator[int]], label: str = ""):
        self.rel = rel
        self.label = label
        self._factory = elements
        self._it: Optional[Iterator[int]] = None
        self._cache: list[int] = []
        self._lock = threading.RLock()

    @classmethod
    def from_function(cls, rel: StagedRelation, f: Callable[[int], int], label: str = "") -> "Chain":
        return cls(rel, lambda: (f(i) for i in count()), label)

    @classmethod
    def eventually_constant(cls, rel: StagedRelation, elements: Sequence[int], label: str = "") -> "Chain":
        if not elements:
            raise ValueError("a chain needs at least one element")
        items = list(elements)
        return cls.from_function(rel, lambda i: items[min(i, len(items) - 1)], label)

    def __call__(self, i: int) -> int:
        if i >= len(self._cache):
            with self._lock:
                if self._it is None:
                    self._it = iter(self._factory())
                while len(self._cache) <= i:
                    self._cache.append(next(self._it))
        return self._cache[i]

    def prefix(self, length: int) -> list[int]:
        return [self(i) for i in range(length)]

    def ascending_at(self, i: int, fuel: int) -> bool:
        return self.rel.holds_at(self(i), self(i + 1), fuel)


def ideal_from_chain(chain: Chain) -> IdealStream:
    """The down-closure ``{n | n < chain(i) for some i}``.

    Round t tests scan candidate t against the newest chain element, lists
    the predecessors of that element when the relation can, and emits
    ``chain(t-1)`` once ``chain(t-1) < chain(t)`` is seen.  By transitivity
    of the relation and ascent of the chain, testing against the newest
    element loses nothing.
    """
    rel = chain.rel

    def steps() -> Iterator[Optional[int]]:
        scan = PendingScan(lambda n, t: rel.holds_at(n, chain(t), t))

        def round_(t: int) -> list[int]:
            top = chain(t)
            out = []
            # listing predecessors every round would be quadratic for relations
            # like <; the scan covers candidate n by round n anyway
            hint = rel.predecessors(top, t) if (t < 16 or is_checkpoint(t)) else None
            if hint is not None:
                out.extend(hint)
            if t > 0 and rel.holds_at(chain(t - 1), top, t):
                out.append(chain(t - 1))
            for n in out:
                scan.mark(n)
            out.extend(scan.round(t))
            return out

        return paced(round_)

    return stream(rel, steps, label=f"chain:{chain.label}")


def chain_from_ideal(I: IdealStream, *, start: Optional[int] = None,
                     max_steps: Optional[int] = None) -> Chain:
    """Extract a cofinal ascending chain from an ideal.

    Step i+1 searches the enumeration (dovetailed with stages) for the first
    ``c`` above the current head and above every element enumerated in steps
    ``0..i``.  On a genuine ideal each search terminates by directedness; a
    ``max_steps`` budget turns a runaway search into
    :class:`SearchBudgetExceeded`.
    """
    rel = I.rel
    spent = [0]

    def spend() -> None:
        spent[0] += 1
        if max_steps is not None and spent[0] > max_steps:
            raise SearchBudgetExceeded(f"chain extraction exceeded {max_steps} steps")

    def first_element() -> int:
        for j in count():
            spend()
            x = I.enum(j)
            if x is not None:
                return x
        raise AssertionError("unreachable")

    # The search resumes at the step that produced the previous head: an
    # earlier x failed to lie above some old target, and each old target is
    # below a new one (the old head is above its predecessor), so x fails
    # again.  Staged relations re-test every candidate at checkpoints.
    resume = [0]
    candidates: list[int] = []
    known: set[int] = set()

    def upper_bound(targets: list[int]) -> int:
        for t in count(resume[0]):
            spend()
            x = I.enum(t)
            if x is not None:
                if x not in known:
                    known.add(x)
                    candidates.append(x)
                if all(rel.holds_at(e, x, t) for e in targets):
                    resume[0] = t
                    return x
            if not rel.decidable and is_checkpoint(t):
                for c in candidates:
                    if all(rel.holds_at(e, c, t) for e in targets):
                        resume[0] = t
                        return c
        raise AssertionError("unreachable")

    def elements() -> Iterator[int]:
        head = first_element() if start is None else start
        yield head
        for i in count():
            seen = I.enum.elements(i)
            head = upper_bound([head] + [e for e in seen if e != head])
            yield head

    return Chain(rel, elements, label=f"of:{I.label}")


def basis_witness(I: IdealStream, a: int, b: int, fuel: int) -> Optional[int]:
    """Some ``c`` in I with ``a < c`` and ``b < c``, all seen within fuel."""
    if not (member(I, a, fuel) and member(I, b, fuel)):
        return None
    rel = I.rel
    for c in I.enum.iter_elements(fuel):
        if rel.holds_at(a, c, fuel) and rel.holds_at(b, c, fuel):
            return c
    return None


@dataclass
class Diagnostics:
    checked: list[int] = field(default_factory=list)
    empty: bool = False
    lower_violations: list[tuple[int, int]] = field(default_factory=list)
    directedness_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.empty or self.lower_violations or self.directedness_violations)


def validate_prefix(I: IdealStream, depth: int, fuel: int) -> Diagnostics:
    """Look for evidence that I is not an ideal among its first ``depth``
    elements.  ``lower_violations`` holds ``(n, a)`` with ``n < a``, ``a``
    enumerated and ``n`` not; ``directedness_violations`` holds pairs with
    no common upper bound found.  A clean report is not a proof."""
    rel = I.rel
    seen = I.enum.elements(fuel)
    present = set(seen)
    diag = Diagnostics(checked=seen[:depth])
    if not seen:
        diag.empty = True
        return diag
    for a in diag.checked:
        below = rel.predecessors(a, fuel)
        if below is None:
            below = [n for n in range(fuel + 1) if rel.holds_at(n, a, fuel)]
        for n in sorted(set(below)):
            if n not in present:
                diag.lower_violations.append((n, a))
    for i, a in enumerate(diag.checked):
        for b in diag.checked[i:]:
            if not any(rel.holds_at(a, c, fuel) and rel.holds_at(b, c, fuel) for c in seen):
                diag.directedness_violations.append((a, b))
    return diag


# -- decidable points -----------------------------------------------------

def decidable_ideal(rel: StagedRelation, contains: Callable[[int], bool], *,
                    hints: Optional[Callable[[int], Iterable[int]]] = None,
                    label: str = "") -> IdealStream:
    """Enumerate a point with a membership oracle: scan 0, 1, 2, ... and
    also try the elements suggested by ``hints(t)`` in round t."""

    def steps() -> Iterator[Optional[int]]:
        def round_(t: int) -> list[int]:
            out = [n for n in (hints(t) if hints else ()) if contains(n)]
            if contains(t):
                out.append(t)
            return out
        return paced(round_)

    return stream(rel, steps, contains=contains, label=label)


def fingen(rel: StagedRelation, generators: Sequence[int], *, reflexive: bool = False,
           label: str = "") -> IdealStream:
    """The set ``{n | n < g for a generator g}`` (plus the generators when
    ``reflexive``) over a decidable relation.  Whether this is an ideal
    depends on the generators; e.g. ``fingen(equality, [5])`` is ``{5}``."""
    if not rel.decidable:
        raise ValueError("fingen requires a decidable relation")
    gens = list(generators)
    if not gens:
        raise ValueError("fingen needs at least one generator")
    gen_set = set(gens)

    def contains(n: int) -> bool:
        return (reflexive and n in gen_set) or any(rel.holds_at(n, g, 0) for g in gens)

    listed: list[int] = list(gens) if reflexive else []
    for g in gens:
        below = rel.predecessors(g, 0)
        if below is not None:
            listed.extend(below)

    return decidable_ideal(rel, contains, hints=lambda t: listed if t == 0 else (),
                           label=label or f"fingen{gens}")


def singleton(k: int) -> IdealStream:
    """The point ``{k}`` of the discrete space over equality."""
    return fingen(builtin("equality"), [k], label=f"{{{k}}}")


def naturals() -> IdealStream:
    """The unique ideal of ``<``: all of the naturals."""
    return decidable_ideal(builtin("less_than"), lambda n: True, label="N")


def baire_sequence(prefix: Sequence[int], cycle: Sequence[int]) -> Callable[[int], int]:
    if not cycle:
        raise ValueError("an infinite sequence needs a non-empty cycle")
    prefix, cycle = list(prefix), list(cycle)

    def p(i: int) -> int:
        return prefix[i] if i < len(prefix) else cycle[(i - len(prefix)) % len(cycle)]

    return p


def baire_point(prefix: Sequence[int], cycle: Sequence[int]) -> IdealStream:
    """The ideal of finite prefixes of the eventually periodic sequence
    ``prefix + cycle + cycle + ...`` over the strict prefix relation.

    Sequence codes grow doubly exponentially with length, so the prefix of
    length L is only emitted at step ``2**L - 1`` (idle steps in between).
    """
    p = baire_sequence(prefix, cycle)

    def contains(n: int) -> bool:
        seq = enc.seq_decode(n)
        return all(x == p(i) for i, x in enumerate(seq))

    def steps() -> Iterator[Optional[int]]:
        def round_(t: int) -> list[int]:
            if is_checkpoint(t + 1):
                length = (t + 1).bit_length() - 1
                return [enc.seq_encode([p(i) for i in range(length)])]
            return []
        return paced(round_)

    return stream(builtin("strict_prefix"), steps, contains=contains,
                  label=f"baire{list(prefix)}({list(cycle)})")


def powerset_point(x: Callable[[int], bool], label: str = "") -> IdealStream:
    """The point of P(N) for a decidable set ``x``: all finite subsets of x.

    Round t emits the segment ``x & {0..t}`` (these form a cofinal chain)
    and the scan candidate t when it codes a subset of x.
    """

    def contains(code: int) -> bool:
        return all(x(n) for n in enc.finset_members(code))

    def steps() -> Iterator[Optional[int]]:
        segment = 0

        def round_(t: int) -> list[int]:
            nonlocal segment
            if x(t):
                segment |= 1 << t
            return [segment] + ([t] if contains(t) else [])

        return paced(round_)

    return stream(builtin("finite_subset"), steps, contains=contains, label=label)
