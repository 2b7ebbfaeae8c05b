"""Staged (c.e.) relations on the naturals and fuel-bounded queries.

A :class:`StagedRelation` is given by a decidable, stage-monotone
approximation ``holds_at(a, b, stage)``; the relation itself is
``a < b  iff  holds_at(a, b, s) for some s``.  Queries never answer "no":
they answer Yes (with the least stage that witnessed it) or Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Callable, Hashable, Iterable, Optional

from . import encoding as enc

HoldsAt = Callable[[int, int, int], bool]
# lower(b, stage) -> the finite set {a | holds_at(a, b, stage)}, or None when
# that set is unavailable (infinite or too large to list).
LowerHook = Callable[[int, int], Optional[Iterable[int]]]


class Answer(enum.Enum):
    YES = "yes"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class QueryResult:
    answer: Answer
    witness_stage: Optional[int] = None
    witness: Optional[int] = None

    @classmethod
    def yes(cls, stage: int, witness: Optional[int] = None) -> "QueryResult":
        return cls(Answer.YES, stage, witness)

    @classmethod
    def unknown(cls) -> "QueryResult":
        return cls(Answer.UNKNOWN)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    def __bool__(self) -> bool:
        return self.is_yes


UNKNOWN = QueryResult.unknown()


@dataclass(frozen=True, eq=False)
class StagedRelation:
    """A c.e. relation presented by stage-monotone decidable approximations.

    ``decidable`` promises that ``holds_at`` ignores the stage.  ``lower``
    is an optional accelerator listing the exact predecessors of an element
    at a stage; enumerators fall back to scanning when it is missing.
    """

    holds_at: HoldsAt
    name: str
    decidable: bool = False
    transitive: bool = True
    lower: Optional[LowerHook] = None
    key: Hashable = None
    spec: Optional[dict] = field(default=None, repr=False)
    # component relations of a derived relation, e.g. the base of a powerspace
    parts: tuple = field(default=(), repr=False)

    def __call__(self, a: int, b: int, stage: int) -> bool:
        return self.holds_at(a, b, stage)

    def _key(self) -> Hashable:
        return self.key if self.key is not None else self.name

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StagedRelation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def predecessors(self, b: int, stage: int) -> Optional[list[int]]:
        if self.lower is None:
            return None
        found = self.lower(b, stage)
        return None if found is None else list(found)


def least_stage(test: Callable[[int], bool], fuel: int) -> Optional[int]:
    """Least ``s <= fuel`` with ``test(s)``, assuming ``test`` is monotone in s."""
    if not test(fuel):
        return None
    lo, hi = 0, fuel
    while lo < hi:
        mid = (lo + hi) // 2
        if test(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def holds(rel: StagedRelation, a: int, b: int, fuel: int) -> QueryResult:
    """Semidecide ``a < b`` using at most ``fuel`` stages."""
    if rel.decidable:
        return QueryResult.yes(0) if rel.holds_at(a, b, 0) else UNKNOWN
    stage = least_stage(lambda s: rel.holds_at(a, b, s), fuel)
    return UNKNOWN if stage is None else QueryResult.yes(stage)


def enumerate_pairs(rel: StagedRelation, stage: int, element_bound: int) -> list[tuple[int, int]]:
    rng = range(element_bound + 1)
    return [(a, b) for a in rng for b in rng if rel.holds_at(a, b, stage)]


def check_transitivity(rel: StagedRelation, element_bound: int, fuel: int) -> list[tuple[int, int, int]]:
    """Triples ``a < b < c`` (all <= bound) at ``fuel`` where ``a < c`` is not
    seen even at stage ``fuel**2``.  An empty list is not a proof."""
    rng = range(element_bound + 1)
    succ = {a: {b for b in rng if rel.holds_at(a, b, fuel)} for a in rng}
    late = fuel * fuel
    violations = []
    for a in rng:
        for b in sorted(succ[a]):
            for c in sorted(succ[b]):
                if c in succ[a] or rel.holds_at(a, c, late):
                    continue
                violations.append((a, b, c))
    return violations


# -- built-in relations ---------------------------------------------------

def _equality() -> StagedRelation:
    return StagedRelation(
        lambda a, b, s: a == b, "equality", decidable=True,
        lower=lambda b, s: (b,), spec={"kind": "builtin", "name": "equality"})


def _less_than() -> StagedRelation:
    return StagedRelation(
        lambda a, b, s: a < b, "less_than", decidable=True,
        lower=lambda b, s: range(b), spec={"kind": "builtin", "name": "less_than"})


def _is_strict_prefix(a: int, b: int) -> bool:
    if a >= b:
        # a strict prefix always has a strictly smaller code
        return False
    sa, sb = enc.seq_decode(a), enc.seq_decode(b)
    return len(sa) < len(sb) and sb[: len(sa)] == sa


def _prefixes(b: int) -> list[int]:
    seq = enc.seq_decode(b)
    return [enc.seq_encode(seq[:i]) for i in range(len(seq))]


def _strict_prefix() -> StagedRelation:
    return StagedRelation(
        lambda a, b, s: _is_strict_prefix(a, b), "strict_prefix", decidable=True,
        lower=lambda b, s: _prefixes(b), spec={"kind": "builtin", "name": "strict_prefix"})


_SUBSET_LISTING_LIMIT = 16


def _finite_subset() -> StagedRelation:
    def lower(b: int, s: int):
        if enc.finset_size(b) > _SUBSET_LISTING_LIMIT:
            return None
        return enc.finset_subsets(b)

    return StagedRelation(
        lambda a, b, s: enc.finset_subset(a, b), "finite_subset", decidable=True,
        lower=lower, spec={"kind": "builtin", "name": "finite_subset"})


BUILTINS: dict[str, Callable[[], StagedRelation]] = {
    "equality": _equality,
    "less_than": _less_than,
    "strict_prefix": _strict_prefix,
    "finite_subset": _finite_subset,
}


def builtin(name: str) -> StagedRelation:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown built-in relation {name!r}; "
                         f"expected one of {sorted(BUILTINS)}") from None


# -- finite relations -----------------------------------------------------

def _closure_stages(stages: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Transitive closure where a derived pair appears at the max stage of
    its cheapest path (minimax Floyd-Warshall)."""
    nodes = sorted({x for pair in stages for x in pair})
    best = dict(stages)
    for k in nodes:
        for i in nodes:
            ik = best.get((i, k))
            if ik is None:
                continue
            for j in nodes:
                kj = best.get((k, j))
                if kj is None:
                    continue
                cand = max(ik, kj)
                if cand < best.get((i, j), cand + 1):
                    best[(i, j)] = cand
    return best


def finite_relation(pairs: Iterable[Iterable[int]], *, transitive_closure: bool = False,
                    name: Optional[str] = None) -> StagedRelation:
    """A finite relation; each entry is ``(a, b)`` or ``(a, b, stage)``.

    An entry with a stage is only reported from that stage on, which makes
    finite relations a convenient source of genuinely staged test inputs.
    """
    stages: dict[tuple[int, int], int] = {}
    for entry in pairs:
        entry = tuple(entry)
        if len(entry) not in (2, 3):
            raise ValueError(f"relation entry must be (a, b) or (a, b, stage), got {entry}")
        a, b = entry[0], entry[1]
        s = entry[2] if len(entry) == 3 else 0
        if min(a, b, s) < 0:
            raise ValueError(f"relation entry must contain naturals, got {entry}")
        stages[(a, b)] = min(s, stages.get((a, b), s))
    if transitive_closure:
        stages = _closure_stages(stages)
    below: dict[int, list[tuple[int, int]]] = {}
    for (a, b), s in sorted(stages.items()):
        below.setdefault(b, []).append((a, s))
    decidable = all(s == 0 for s in stages.values())
    frozen = tuple(sorted(stages.items()))
    label = name or f"finite{len(stages)}"
    spec = {"kind": "finite", "pairs": [[a, b, s] if s else [a, b] for (a, b), s in frozen],
            "transitive_closure": False, "name": label}

    def holds_at(a: int, b: int, stage: int) -> bool:
        s = stages.get((a, b))
        return s is not None and s <= stage

    def lower(b: int, stage: int) -> list[int]:
        return [a for a, s in below.get(b, ()) if s <= stage]

    return StagedRelation(holds_at, label, decidable=decidable, lower=lower,
                          key=("finite", frozen), spec=spec)


def carrier(pairs: Iterable[tuple[int, int]]) -> list[int]:
    return sorted({x for pair in pairs for x in pair})


def restrict_pairs(rel: StagedRelation, elements: Iterable[int], stage: int = 0) -> set[tuple[int, int]]:
    elements = list(elements)
    return {(a, b) for a, b in _cartesian(elements, elements) if rel.holds_at(a, b, stage)}
