"""Lower and upper powerspaces of a space of ideals.

Both are again spaces of ideals, over relations on finite-set codes:

* lower: ``F <_L G`` iff every m in F is below some n in G;
* upper: ``F <_U G`` iff every n in G is above some m in F.

A closed set is handed to :func:`f_lower` as a listed family of ideals (its
closure is meant); a compact set is handed to :func:`f_upper` as a finite
list of ideals.
"""

from __future__ import annotations

from itertools import count
from typing import Callable, Iterator, Optional, Sequence, Union

from . import encoding as enc
from .codes import StagedSet
from .ideal import (Chain, IdealStream, SearchBudgetExceeded, chain_from_ideal,
                    ideal_from_chain, member, stream)
from .relation import QueryResult, StagedRelation, UNKNOWN
from .stream import PendingScan, paced

_LOWER_LISTING_LIMIT = 14


def lower_relation(rel: StagedRelation) -> StagedRelation:
    def holds_at(F: int, G: int, s: int) -> bool:
        targets = list(enc.finset_members(G))
        return all(any(rel.holds_at(m, n, s) for n in targets) for m in enc.finset_members(F))

    def lower(G: int, s: int):
        pool: set[int] = set()
        for n in enc.finset_members(G):
            below = rel.predecessors(n, s)
            if below is None:
                return None
            pool.update(below)
        if len(pool) > _LOWER_LISTING_LIMIT:
            return None
        return enc.finset_subsets(enc.finset_encode(pool))

    return StagedRelation(holds_at, f"lower({rel.name})", decidable=rel.decidable,
                          transitive=rel.transitive, lower=lower if rel.lower else None,
                          key=("lower", rel._key()), parts=(rel,),
                          spec={"kind": "derived", "derivation": "lower", "args": [rel.spec]})


def upper_relation(rel: StagedRelation) -> StagedRelation:
    def holds_at(F: int, G: int, s: int) -> bool:
        sources = list(enc.finset_members(F))
        return all(any(rel.holds_at(m, n, s) for m in sources) for n in enc.finset_members(G))

    return StagedRelation(holds_at, f"upper({rel.name})", decidable=rel.decidable,
                          transitive=rel.transitive, key=("upper", rel._key()), parts=(rel,),
                          spec={"kind": "derived", "derivation": "upper", "args": [rel.spec]})


Family = Union[Sequence[IdealStream], Callable[[int], Optional[IdealStream]]]


def _family_at(family: Family) -> Callable[[int], Optional[IdealStream]]:
    if callable(family):
        return family
    items = list(family)
    return lambda j: items[j] if j < len(items) else None


def f_lower(family: Family, rel: Optional[StagedRelation] = None) -> IdealStream:
    """``f_L(A) = {F | every m in F lies in some I in A}``, i.e. the finite
    subsets of the union of the listed ideals.  The empty family (the empty
    closed set) gives ``{{}}`` and needs ``rel``."""
    at = _family_at(family)
    first = at(0)
    if first is None and rel is None:
        raise ValueError("f_lower of an empty family needs the ambient relation")
    target = lower_relation(rel or first.rel)

    def steps() -> Iterator[Optional[int]]:
        covered: set[int] = set()
        ideals: list[IdealStream] = []
        cursors: list[int] = []
        scan = PendingScan(lambda F, t: all(m in covered for m in enc.finset_members(F)))

        def round_(t: int) -> list[int]:
            nxt = at(t)
            if nxt is not None:
                ideals.append(nxt)
                cursors.append(0)
            fresh = []
            # each listed ideal advances one step per round
            for j, I in enumerate(ideals):
                m = I.enum(cursors[j])
                cursors[j] += 1
                if m is not None and m not in covered:
                    covered.add(m)
                    fresh.append(m)
            out = [0] + [1 << m for m in fresh]
            if fresh:
                out.append(enc.finset_encode(covered))
            for F in out:
                scan.mark(F)
            return out + scan.round(t)

        return paced(round_)

    return stream(target, steps, label="f_L")


def f_upper(ideals: Sequence[IdealStream], *, allow_empty: bool = False,
            rel: Optional[StagedRelation] = None) -> IdealStream:
    """``f_U(K) = {F | F meets every I in K}`` for a finite list K.

    The empty list is rejected unless ``allow_empty`` (then every finite
    set, the empty one included, is in the result).
    """
    K = list(ideals)
    if not K and not allow_empty:
        raise ValueError("f_upper needs a non-empty list (pass allow_empty=True for K = {})")
    if not K and rel is None:
        raise ValueError("f_upper of the empty list needs the ambient relation")
    target = upper_relation(rel or K[0].rel)

    def steps() -> Iterator[Optional[int]]:
        if not K:
            yield from count()
            return
        seen: list[set[int]] = [set() for _ in K]
        firsts: list[Optional[int]] = [None] * len(K)

        def meets_all(F: int, t: int) -> bool:
            return all(any(enc.finset_contains(F, m) for m in s) for s in seen)

        scan = PendingScan(meets_all)

        def round_(t: int) -> list[int]:
            fresh: list[tuple[int, int]] = []
            for j, I in enumerate(K):
                m = I.enum(t)
                if m is not None and m not in seen[j]:
                    seen[j].add(m)
                    fresh.append((j, m))
                    if firsts[j] is None:
                        firsts[j] = m
            out = []
            if all(f is not None for f in firsts):
                base = enc.finset_encode(firsts)  # type: ignore[arg-type]
                out.append(base)
                out.extend(base | (1 << m) for _, m in fresh)
                for j, m in fresh:
                    out.append(enc.finset_encode([m] + [f for i, f in enumerate(firsts) if i != j]))
            out = [F for F in out if meets_all(F, t)]
            for F in out:
                scan.mark(F)
            return out + scan.round(t)

        yield from paced(round_)

    return stream(target, steps, label="f_U")


def g_lower_meets(J: IdealStream, m: int, fuel: int) -> QueryResult:
    """Semidecide ``g_L(J) meets [m]``, which holds iff ``{m}`` is in J."""
    return member(J, 1 << m, fuel)


def g_lower_witness(J: IdealStream, m: int, *, max_steps: Optional[int] = None) -> IdealStream:
    """A point of ``g_L(J)`` containing m (requires ``{m}`` in J).

    Follows a cofinal chain ``{m} = F_0 <_L F_1 <_L ...`` in J and picks
    ``m = m_0 < m_1 < ...`` with ``m_i`` in ``F_i``; the answer is the
    down-closure of the m-chain.
    """
    base_rel = _base_of(J.rel)
    sets = chain_from_ideal(J, start=1 << m, max_steps=max_steps)

    def elements() -> Iterator[int]:
        current = m
        yield current
        for i in count(1):
            options = list(enc.finset_members(sets(i)))
            current = _first_above(base_rel, current, options, max_steps)
            yield current

    return ideal_from_chain(Chain(base_rel, elements, label=f"witness({m})"))


def _first_above(rel: StagedRelation, low: int, options: list[int], max_steps: Optional[int]) -> int:
    for s in count():
        if max_steps is not None and s > max_steps:
            raise SearchBudgetExceeded(f"no successor of {low} found within {max_steps} stages")
        for n in options:
            if rel.holds_at(low, n, s):
                return n
    raise AssertionError("unreachable")


def _base_of(rel: StagedRelation) -> StagedRelation:
    if not rel.parts:
        raise ValueError(f"{rel.name} is not a lower/upper powerspace relation")
    return rel.parts[0]


def g_upper_covered(J: IdealStream, S: StagedSet, fuel: int) -> QueryResult:
    """Semidecide ``g_U(J) is covered by the union of [m], m in S``: some F
    enumerated in J within fuel is a subset of S (read at stage fuel)."""
    for F in J.enum.iter_elements(fuel):
        if all(S(m, fuel) for m in enc.finset_members(F)):
            return QueryResult.yes(J.enum.first_step(F, fuel), F)
    return UNKNOWN


def g_upper_refute_member(J: IdealStream, I: IdealStream, fuel: int) -> Optional[int]:
    """Some F in J (within fuel) with no member of I seen in it: evidence,
    modulo fuel, that I is not in ``g_U(J)``.  Never claims membership."""
    seen = set(I.enum.elements(fuel))
    for F in J.enum.iter_elements(fuel):
        if not any(m in seen for m in enc.finset_members(F)):
            return F
    return None
