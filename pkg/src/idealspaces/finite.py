"""Set-theoretic brute force for spaces of ideals of finite relations.

Everything here works with plain Python sets over a small universe and
serves as the reference the streaming implementations are checked against.
Points are frozensets of elements; finite sets of elements are bitmask
codes, as everywhere else.

For the powerspaces the universe of finite sets is restricted to subsets of
the carrier.  This loses nothing: an element outside the carrier is related
to nothing, so an ideal J of either powerspace relation is determined by
its members inside the carrier (F is in J iff F minus the junk is).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from . import encoding as enc

Point = frozenset
Pairs = frozenset  # of (a, b) tuples


def subsets(universe: Iterable[int]) -> list[frozenset]:
    items = sorted(universe)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def is_ideal(S: frozenset, pairs: Pairs) -> bool:
    if not S:
        return False
    if any(b in S and a not in S for a, b in pairs):
        return False
    return all(any((a, c) in pairs and (b, c) in pairs for c in S) for a in S for b in S)


def ideals_bruteforce(pairs: Pairs, universe: Iterable[int]) -> set[frozenset]:
    return {S for S in subsets(universe) if is_ideal(S, pairs)}


def principal_ideals(pairs: Pairs, universe: Iterable[int]) -> dict[frozenset, int]:
    """Ideals of a finite transitive relation as down-sets of reflexive
    elements, each with one generator.  (A directed finite set has an
    element above all of it, and that element is reflexive.)"""
    universe = sorted(universe)
    out: dict[frozenset, int] = {}
    for c in universe:
        if (c, c) in pairs:
            out.setdefault(frozenset(a for a in universe if (a, c) in pairs), c)
    return out


def basic_open(points: Iterable[frozenset], n: int) -> frozenset:
    return frozenset(I for I in points if n in I)


def open_sets(points: set[frozenset], universe: Iterable[int]) -> set[frozenset]:
    return {frozenset(I for I in points if I & N) for N in subsets(universe)}


def closed_sets(points: set[frozenset], universe: Iterable[int]) -> set[frozenset]:
    every = frozenset(points)
    return {every - U for U in open_sets(points, universe)}


def saturated_sets(points: set[frozenset]) -> set[frozenset]:
    """Upper sets under inclusion: the saturated sets, all compact here."""
    out = set()
    for K in subsets(points):
        if all(J in K for I in K for J in points if I <= J):
            out.add(K)
    return out


def finsets(universe: Iterable[int]) -> list[int]:
    return [enc.finset_encode(F) for F in subsets(universe)]


# -- the powerspace relations and maps, by definition ----------------------

def lower_holds(pairs: Pairs, F: int, G: int) -> bool:
    return all(any((m, n) in pairs for n in enc.finset_members(G)) for m in enc.finset_members(F))


def upper_holds(pairs: Pairs, F: int, G: int) -> bool:
    return all(any((m, n) in pairs for m in enc.finset_members(F)) for n in enc.finset_members(G))


def relation_ideals(holds, codes: list[int]) -> dict[frozenset, int]:
    """Ideals of a finite transitive relation on ``codes`` (principal form),
    with a reflexive generator each."""
    out: dict[frozenset, int] = {}
    for C in codes:
        if holds(C, C):
            out.setdefault(frozenset(F for F in codes if holds(F, C)), C)
    return out


def f_lower(A: frozenset, universe: Iterable[int]) -> frozenset:
    return frozenset(enc.finset_encode(F) for F in subsets(universe)
                     if all(any(m in I for I in A) for m in F))


def g_lower(J: frozenset, points: Iterable[frozenset]) -> frozenset:
    return frozenset(I for I in points
                     if all(any(enc.finset_contains(F, m) for F in J) for m in I))


def f_upper(K: frozenset, universe: Iterable[int]) -> frozenset:
    return frozenset(enc.finset_encode(F) for F in subsets(universe)
                     if all(I & F for I in K))


def g_upper(J: frozenset, points: Iterable[frozenset]) -> frozenset:
    return frozenset(I for I in points
                     if all(any(enc.finset_contains(F, m) for m in I) for F in J))
