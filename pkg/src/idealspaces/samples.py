"""Seeded sample points for the property suites.

Every generator takes a ``random.Random`` so that a fixed seed reproduces
the same points (and therefore the same reports) byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import replace
from typing import Callable

from . import encoding as enc
from .ideal import (Chain, IdealStream, baire_point, ideal_from_chain, naturals,
                    powerset_point, singleton)
from .relation import StagedRelation, builtin, finite_relation


def natural_point(rng: random.Random) -> IdealStream:
    """The naturals under ``<``, enumerated along a random increasing chain
    (so different samples enumerate the same ideal in different orders)."""
    start, step = rng.randrange(40), rng.randrange(1, 5)
    chain = Chain.from_function(builtin("less_than"), lambda i: start + i * step,
                                label=f"N[{start}+{step}i]")
    return replace(ideal_from_chain(chain), contains=lambda n: True)


def equality_point(rng: random.Random) -> IdealStream:
    return singleton(rng.randrange(64))


def prefix_point(rng: random.Random, alphabet: int = 4) -> IdealStream:
    prefix = [rng.randrange(alphabet) for _ in range(rng.randrange(4))]
    cycle = [rng.randrange(alphabet) for _ in range(rng.randrange(1, 3))]
    return baire_point(prefix, cycle)


def powerset_sample(rng: random.Random) -> IdealStream:
    """A decidable subset of N: a random finite part plus an eventually
    periodic tail (possibly empty)."""
    finite = {n for n in range(12) if rng.random() < 0.4}
    period = rng.randrange(0, 4)
    offset, start = rng.randrange(max(period, 1)), rng.randrange(12)

    def x(n: int) -> bool:
        return n in finite or (period > 0 and n >= start and n % period == offset)

    label = f"P{sorted(finite)}" + (f"+{offset}mod{period}>={start}" if period else "")
    return powerset_point(x, label=label)


BASIS_KINDS: tuple[Callable[[random.Random], IdealStream], ...] = (
    equality_point, natural_point, prefix_point)
ALL_KINDS: tuple[Callable[[random.Random], IdealStream], ...] = BASIS_KINDS + (powerset_sample,)


def sample_points(rng: random.Random, count: int, kinds=ALL_KINDS) -> list[IdealStream]:
    return [kinds[i % len(kinds)](rng) for i in range(count)]


# -- finite relations -----------------------------------------------------

FINITE_CARRIER = tuple(range(5))


def _reflexive(elements) -> list[tuple[int, int]]:
    return [(a, a) for a in elements]


def _fixed_relations() -> list[tuple[str, list[tuple[int, int]]]]:
    chain = [(a, b) for a in range(5) for b in range(5) if a <= b]
    return [
        ("discrete", _reflexive(range(5))),
        ("chain", chain),
        ("strict-chain", [(a, b) for a, b in chain if a < b]),
        ("empty", []),
        ("vee", _reflexive(range(3)) + [(0, 1), (0, 2)]),
        ("wedge", _reflexive(range(3)) + [(1, 0), (2, 0)]),
        ("diamond", _reflexive(range(4)) + [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
        ("clique", [(a, b) for a in range(3) for b in range(3)]),
        ("cycle-on-top", [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2), (2, 1)]),
        ("mixed-reflexivity", [(0, 1), (1, 2), (0, 2), (2, 2)]),
        ("two-chains", _reflexive(range(4)) + [(0, 1), (2, 3)]),
        ("n-shape", _reflexive(range(4)) + [(0, 2), (1, 2), (1, 3)]),
    ]


def finite_relation_pairs(seed: int = 0, total: int = 20) -> list[tuple[str, list[tuple[int, int]]]]:
    """The fixed generator of transitive relations on at most five
    elements: a hand-picked list topped up with random transitive closures."""
    out = _fixed_relations()
    rng = random.Random(seed)
    while len(out) < total:
        size = rng.randrange(2, 6)
        pairs = {(a, b) for a in range(size) for b in range(size) if rng.random() < 0.3}
        pairs |= {(a, a) for a in range(size) if rng.random() < 0.7}
        closed = _transitive_closure(pairs)
        out.append((f"random-{len(out)}", sorted(closed)))
    return out


def _transitive_closure(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    closed = set(pairs)
    while True:
        extra = {(a, d) for a, b in closed for c, d in closed if b == c} - closed
        if not extra:
            return closed
        closed |= extra


def staged_finite_relation(rng: random.Random, size: int = 8, max_stage: int = 10) -> StagedRelation:
    """A non-decidable (staged) transitive relation on ``range(size)``:
    random pairs appear at random stages, closed under transitivity."""
    entries = [(a, b, rng.randrange(max_stage))
               for a in range(size) for b in range(size) if rng.random() < 0.35]
    return finite_relation(entries, transitive_closure=True, name="staged-random")


def random_finset(rng: random.Random, universe: int) -> int:
    return enc.finset_encode(n for n in range(universe) if rng.random() < 0.4)
