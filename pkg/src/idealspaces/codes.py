"""Codes for partial maps between spaces of ideals.

A code is a c.e. set R of pairs; it denotes the map
``[[R]](I) = {n | <m, n> in R for some m in I}``.  Whether ``[[R]](I)`` is
an ideal (i.e. whether I is in the domain) is not decidable; it is only
checked after the fact with :func:`~idealspaces.ideal.validate_prefix`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from . import encoding as enc
from .ideal import IdealStream, stream
from .relation import StagedRelation
from .stream import PendingScan, is_checkpoint, paced

PairTest = Callable[[int, int, int], bool]
# image(m, stage) -> exact finite set {n | <m, n> in R at stage}, or None
ImageHook = Callable[[int, int], Optional[Iterable[int]]]
# hints(m, stage) -> some n with <m, n> in the code at that stage; trusted
# (not re-tested) and need not be complete
HintHook = Callable[[int, int], Iterable[int]]


class CodeMismatch(ValueError):
    """Codes or relations wired together with incompatible spaces."""


@dataclass(frozen=True)
class StagedSet:
    """A c.e. subset of N: ``member(n, stage)`` is monotone in the stage."""

    member: Callable[[int, int], bool]
    decidable: bool = False
    listing: Optional[Callable[[int], Iterable[int]]] = None
    name: str = "set"
    spec: Optional[dict] = field(default=None, repr=False)

    def __call__(self, n: int, stage: int) -> bool:
        return self.member(n, stage)

    @classmethod
    def of(cls, elements: Iterable[int], name: str = "") -> "StagedSet":
        items = frozenset(elements)
        return cls(lambda n, s: n in items, True, lambda s: sorted(items),
                   name or f"{sorted(items)}", {"kind": "elements", "elements": sorted(items)})


EMPTY_SET = StagedSet(lambda n, s: False, True, lambda s: (), "empty", {"kind": "elements", "elements": []})


@dataclass(frozen=True)
class StagedFamily:
    """A computable sequence of c.e. sets: ``member(i, n, stage)``."""

    member: Callable[[int, int, int], bool]
    decidable: bool = False
    listing: Optional[Callable[[int, int], Iterable[int]]] = None
    name: str = "family"

    def __call__(self, i: int, n: int, stage: int) -> bool:
        return self.member(i, n, stage)

    def at(self, i: int) -> StagedSet:
        listing = self.listing
        return StagedSet(lambda n, s: self.member(i, n, s), self.decidable,
                         None if listing is None else (lambda s: listing(i, s)),
                         f"{self.name}[{i}]")

    @classmethod
    def of(cls, sets: Sequence[Iterable[int]], name: str = "") -> "StagedFamily":
        """A finite family given explicitly; indices past the end are empty."""
        items = [frozenset(s) for s in sets]

        def member(i: int, n: int, s: int) -> bool:
            return i < len(items) and n in items[i]

        return cls(member, True, lambda i, s: sorted(items[i]) if i < len(items) else (),
                   name or "explicit")


@dataclass(frozen=True, eq=False)
class FnCode:
    holds_at: PairTest
    source: StagedRelation
    target: StagedRelation
    name: str = "code"
    decidable: bool = False
    image: Optional[ImageHook] = None
    hints: Optional[HintHook] = None
    # <m, n> in R and m < m' imply <m', n> in R (at some stage); lets
    # apply_code scan candidates against the maximal inputs only
    monotone: bool = False
    spec: Optional[dict] = field(default=None, repr=False)

    def __call__(self, m: int, n: int, stage: int) -> bool:
        return self.holds_at(m, n, stage)

    def contains(self, pair_code: int, stage: int) -> bool:
        """Membership of an encoded pair ``<m, n>`` at a stage."""
        m, n = enc.pair_decode(pair_code)
        return self.holds_at(m, n, stage)

    def image_at(self, m: int, stage: int) -> Optional[list[int]]:
        if self.image is None:
            return None
        found = self.image(m, stage)
        return None if found is None else list(found)


@dataclass(frozen=True, eq=False)
class Pi2Code:
    """``{I | for all i: I in [[U_i]] implies I in [[V_i]]}``.

    ``size`` bounds the index set (indices past it have empty U and V);
    ``None`` means the family is infinite.
    """

    U: StagedFamily
    V: StagedFamily
    size: Optional[int] = None
    name: str = "pi2"
    spec: Optional[dict] = field(default=None, repr=False)
    # identity of the subspace relation built from this code; loaders set it
    # from the spec so that two loads of one document give equal relations
    key: Optional[Hashable] = field(default=None, repr=False)

    @classmethod
    def explicit(cls, pairs: Sequence[tuple[Iterable[int], Iterable[int]]], name: str = "") -> "Pi2Code":
        us = [u for u, _ in pairs]
        vs = [v for _, v in pairs]
        return cls(StagedFamily.of(us, "U"), StagedFamily.of(vs, "V"), len(pairs),
                   name or "explicit",
                   spec={"kind": "explicit",
                         "family": [{"U": sorted(set(u)), "V": sorted(set(v))} for u, v in pairs]})

    def indices(self, upto: int) -> range:
        top = upto + 1 if self.size is None else min(upto + 1, self.size)
        return range(max(top, 0))


def pi2_violation(A: Pi2Code, contains: Callable[[int], bool], elements: Sequence[int],
                  index_bound: int, stage: int) -> Optional[int]:
    """Bounded semantic check of Pi2 membership for a point with a membership
    oracle: the first index ``i <= index_bound`` whose U meets the listed
    elements of the point while V does not, or None."""
    inside = [n for n in elements if contains(n)]
    for i in A.indices(index_bound):
        if any(A.U(i, n, stage) for n in inside) and not any(A.V(i, n, stage) for n in inside):
            return i
    return None


# -- application ----------------------------------------------------------

def apply_code(R: FnCode, I: IdealStream) -> IdealStream:
    """Enumerate ``[[R]](I)`` by dovetailing input steps, outputs and stages.

    Round t reads input step t.  A new input ``m`` contributes its exact
    image when the code lists one (plus any hints); otherwise it joins the
    inputs that output candidates are scanned against.  Candidate t is tried
    in round t and pending candidates are retried at checkpoints, where
    images of a staged code are refreshed as well.
    """
    if I.rel != R.source:
        raise CodeMismatch(f"code {R.name} expects points of {R.source.name}, got {I.rel.name}")

    src = R.source

    def steps() -> Iterator[Optional[int]]:
        imaged: list[int] = []
        unlisted: list[int] = []
        seen: set[int] = set()

        def add_unlisted(m: int, t: int) -> None:
            if not R.monotone:
                unlisted.append(m)
                return
            # keep only inputs not seen below another one
            if any(src.holds_at(m, y, t) for y in unlisted):
                return
            unlisted[:] = [y for y in unlisted if not src.holds_at(y, m, t)] + [m]

        def column(n: int, t: int) -> bool:
            return any(R.holds_at(m, n, t) for m in unlisted)

        scan = PendingScan(column)

        def round_(t: int) -> list[int]:
            out: list[int] = []
            x = I.enum(t)
            fresh = []
            if x is not None and x not in seen:
                seen.add(x)
                fresh.append(x)
            refresh = fresh
            if not R.decidable and is_checkpoint(t):
                refresh = imaged + fresh
            for m in refresh:
                img = R.image_at(m, t)
                if img is not None:
                    out.extend(img)
                    if m in fresh:
                        imaged.append(m)
                elif m in fresh:
                    add_unlisted(m, t)
                    # an exact image already lists everything a hint could
                    if R.hints is not None:
                        out.extend(R.hints(m, t))
            for n in out:
                scan.mark(n)
            # cheap while every input has an image: the column test is empty
            out.extend(scan.round(t))
            return out

        return paced(round_)

    return stream(R.target, steps, label=f"{R.name}({I.label})")


# -- constructions of codes -----------------------------------------------

def identity_code(rel: StagedRelation) -> FnCode:
    """``<m, n>`` with ``n < m``.  On a genuine ideal this returns the ideal
    itself: the lower-set axiom gives one inclusion, directedness the other."""

    def image(m: int, s: int):
        return rel.predecessors(m, s)

    return FnCode(lambda m, n, s: rel.holds_at(n, m, s), rel, rel, f"id[{rel.name}]",
                  decidable=rel.decidable, image=image if rel.lower else None, monotone=True,
                  spec={"kind": "derived", "derivation": "identity", "relation": rel.spec})


def code_from_pairs(pairs: Iterable[tuple[int, int]], source: StagedRelation,
                    target: StagedRelation, name: str = "") -> FnCode:
    table: dict[int, set[int]] = {}
    listed = []
    for m, n in pairs:
        table.setdefault(m, set()).add(n)
        listed.append([m, n])
    return FnCode(lambda m, n, s: n in table.get(m, ()), source, target,
                  name or f"pairs{len(listed)}", decidable=True,
                  image=lambda m, s: sorted(table.get(m, ())),
                  spec={"kind": "pairs", "source": source.spec, "target": target.spec,
                        "pairs": listed})


def code_from_preimage_family(U: StagedFamily, source: StagedRelation, target: StagedRelation,
                              *, inverse: Optional[ImageHook] = None, name: str = "",
                              spec: Optional[dict] = None) -> FnCode:
    """``R = {<m, n> | m in U_n}`` for a family with
    ``f^-1([n]) = union of [m] over m in U_n``; then ``[[R]] = f``.

    ``inverse(m, stage)``, when given, lists ``{n | m in U_n}`` exactly.
    """
    return FnCode(lambda m, n, s: U(n, m, s), source, target, name or f"pre[{U.name}]",
                  decidable=U.decidable, image=inverse, spec=spec)


def compose_codes(R: FnCode, S: FnCode) -> FnCode:
    """``T = {<m, k> | exists n: <m, n> in R and <n, k> in S}``, so that
    ``[[T]] = [[S]] o [[R]]`` where both sides are defined."""
    if R.target != S.source:
        raise CodeMismatch(f"cannot compose {R.name}: ->{R.target.name} with "
                           f"{S.name}: {S.source.name}->")

    def middles(m: int, s: int) -> Iterable[int]:
        img = R.image_at(m, s)
        return range(s + 1) if img is None else img

    def holds_at(m: int, k: int, s: int) -> bool:
        return any(R.holds_at(m, n, s) and S.holds_at(n, k, s) for n in middles(m, s))

    image = None
    # a monotone S maps n below n' into a subset of the image of n'
    prune = S.monotone and S.decidable and S.source.decidable
    if R.image is not None and S.image is not None:
        def image(m: int, s: int):
            first = R.image_at(m, s)
            if first is None:
                return None
            if prune:
                first = _not_dominated(S.source, first)
            out: set[int] = set()
            for n in first:
                nxt = S.image_at(n, s)
                if nxt is None:
                    return None
                out.update(nxt)
            return sorted(out)

    hints = None
    if R.hints is not None or S.hints is not None or R.image is not None:
        def hints(m: int, s: int) -> list[int]:
            out: list[int] = []
            for n in middles(m, s):
                if R.holds_at(m, n, s):
                    img = S.image_at(n, s)
                    if img is not None:
                        out.extend(img)
                    if S.hints is not None:
                        out.extend(S.hints(n, s))
            return out

    return FnCode(holds_at, R.source, S.target, f"{S.name}.{R.name}",
                  decidable=R.decidable and S.decidable and R.image is not None,
                  image=image, hints=hints, monotone=R.monotone,
                  spec={"kind": "composed", "first": R.spec, "second": S.spec})


def _not_dominated(rel: StagedRelation, items: Iterable[int]) -> list[int]:
    """Drop the items lying below a kept one.  Larger codes are tried first,
    which keeps a single element for chains such as ``<``."""
    kept: list[int] = []
    for n in sorted(set(items), reverse=True):
        if not any(rel.holds_at(n, k, 0) for k in kept):
            kept.append(n)
    return kept


def constant_code(source: StagedRelation, target: StagedRelation, values: Iterable[int],
                  name: str = "") -> FnCode:
    """Every input ``m`` is paired with each of ``values``."""
    vals = sorted(set(values))
    return FnCode(lambda m, n, s: n in vals, source, target, name or f"const{vals}",
                  decidable=True, image=lambda m, s: vals,
                  spec={"kind": "derived", "derivation": "constant", "source": source.spec,
                        "target": target.spec, "values": vals})


def empty_code(source: StagedRelation, target: StagedRelation) -> FnCode:
    return FnCode(lambda m, n, s: False, source, target, "empty", decidable=True,
                  image=lambda m, s: (),
                  spec={"kind": "pairs", "source": source.spec, "target": target.spec, "pairs": []})
