"""Complete computable topological spaces from a c.e. set of triples.

Given a c.e. ``S`` of triples ``<n, m, k>`` (read: basic open k lies inside
the intersection of n and m), the complete space is the subspace X of
P(N) cut out by

(i)   x is non-empty,
(ii)  for <n, m, k> in S: k in x implies {n, m} in x,
(iii) {n, m} in x implies some k in x with <n, m, k> in S,

optionally with (iv) ``n in x implies n in E`` for an overtness set E.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import encoding as enc
from .codes import FnCode, Pi2Code, StagedFamily, StagedSet
from .constructions import pi2_subspace
from .relation import StagedRelation, builtin


@dataclass(frozen=True)
class TripleSet:
    member: Callable[[int, int, int, int], bool]
    decidable: bool = False
    # listing(stage) -> every triple in S at that stage, when S is finite
    listing: Optional[Callable[[int], Iterable[tuple[int, int, int]]]] = None
    name: str = "S"
    spec: Optional[dict] = field(default=None, repr=False)

    def __call__(self, n: int, m: int, k: int, stage: int) -> bool:
        return self.member(n, m, k, stage)

    def contains_code(self, code: int, stage: int) -> bool:
        return self.member(*enc.triple_decode(code), stage)

    @classmethod
    def of(cls, triples: Iterable[Sequence[int]], name: str = "") -> "TripleSet":
        items = frozenset(tuple(t) for t in triples)
        return cls(lambda n, m, k, s: (n, m, k) in items, True, lambda s: sorted(items),
                   name or f"S{len(items)}",
                   spec={"kind": "triples", "triples": [list(t) for t in sorted(items)]})


def s_from_relation(rel: StagedRelation) -> TripleSet:
    """``{<n, m, k> | n < k and m < k}``."""

    def member(n: int, m: int, k: int, s: int) -> bool:
        return rel.holds_at(n, k, s) and rel.holds_at(m, k, s)

    return TripleSet(member, rel.decidable, name=f"S[{rel.name}]",
                     spec={"kind": "from-relation", "relation": rel.spec})


# index layout of the X family: 0 is condition (i); 1 + <kind, payload>
_COND_II, _COND_III, _OVERT = 0, 1, 2


def x_index(kind: int, payload: int) -> int:
    return 1 + enc.pair_encode(kind, payload)


def x_pi2_code(S: TripleSet, E: Optional[StagedSet] = None) -> Pi2Code:
    """The Pi2 code, over ``finite_subset`` (whose ideals are the points of
    P(N)), of the set X of the module docstring."""
    code = enc.finset_encode

    def decode(i: int):
        if i == 0:
            return None, None
        return enc.pair_decode(i - 1)

    def u(i: int, F: int, s: int) -> bool:
        if i == 0:
            return F == 0
        kind, payload = decode(i)
        if kind == _COND_II:
            n, m, k = enc.triple_decode(payload)
            return F == code([k]) and S(n, m, k, s)
        if kind == _COND_III:
            n, m = enc.pair_decode(payload)
            return F == code([n, m])
        if kind == _OVERT and E is not None:
            return F == code([payload])
        return False

    def v(i: int, F: int, s: int) -> bool:
        if i == 0:
            return enc.finset_size(F) == 1
        kind, payload = decode(i)
        if kind == _COND_II:
            n, m, _ = enc.triple_decode(payload)
            return F == code([n, m])
        if kind == _COND_III:
            n, m = enc.pair_decode(payload)
            if not (enc.finset_contains(F, n) and enc.finset_contains(F, m)):
                return False
            rest = F & ~code([n, m])
            if enc.finset_size(rest) > 1:
                return False
            if rest == 0:
                # {n, m, k} collapsed: k is n or m
                return S(n, m, n, s) or S(n, m, m, s)
            k = rest.bit_length() - 1
            return S(n, m, k, s)
        if kind == _OVERT and E is not None:
            return F == code([payload]) and E(payload, s)
        return False

    u_dec = v_dec = S.decidable and (E is None or E.decidable)
    return Pi2Code(StagedFamily(u, u_dec, name="xU"), StagedFamily(v, v_dec, name="xV"), None,
                   name=f"X[{S.name}{'' if E is None else ',' + E.name}]",
                   spec={"kind": "x-conditions", "triples": S.spec,
                         "overt": None if E is None else E.spec})


def complete_space(S: TripleSet, E: Optional[StagedSet] = None) -> tuple[StagedRelation, FnCode, FnCode]:
    """The complete computable topological space for S as a space of ideals:
    ``(sub, f, g)`` with f, g the homeomorphism codes to and from X."""
    return pi2_subspace(builtin("finite_subset"), x_pi2_code(S, E))


def embedding_code(rel_Y: StagedRelation, W: StagedFamily) -> FnCode:
    """Code of ``e(y) = {n | y in psi(n)}`` into P(N), where
    ``psi(n) = union of [j] over j in W_n``.

    Pairs ``<m, code(F)>`` with every n in F having some j in W_n below m.
    On an ideal this gives exactly the finite subsets of e(I); directedness
    supplies the single witness m.
    """
    target = builtin("finite_subset")

    def basic_below(n: int, m: int, s: int) -> bool:
        listed = W.listing(n, s) if W.listing is not None else None
        pool = listed if listed is not None else range(s + 1)
        return any(W(n, j, s) and rel_Y.holds_at(j, m, s) for j in pool)

    def holds_at(m: int, F: int, s: int) -> bool:
        return all(basic_below(n, m, s) for n in enc.finset_members(F))

    def hints(m: int, s: int) -> list[int]:
        return [0] + [1 << n for n in range(s + 1) if basic_below(n, m, s)]

    return FnCode(holds_at, rel_Y, target, f"embed[{W.name}]",
                  decidable=False, hints=hints)


# -- checking X = I(<) on samples -----------------------------------------

@dataclass
class SampleSet:
    """A subset x of N known through a membership oracle, with a finite
    ``probe`` of elements whose conditions are checked and a ``pool`` that
    is searched for the witnesses k demanded by condition (iii)."""

    contains: Callable[[int], bool]
    probe: list[int]
    pool: list[int]
    label: str = ""
    expect_ideal: Optional[bool] = None


@dataclass
class SampleVerdict:
    label: str
    failed: Optional[str]  # "i", "ii", "iii" or None
    detail: tuple = ()
    expect_ideal: Optional[bool] = None

    @property
    def in_x(self) -> bool:
        return self.failed is None

    @property
    def as_expected(self) -> bool:
        return self.expect_ideal is None or self.expect_ideal == self.in_x


@dataclass
class XReport:
    verdicts: list[SampleVerdict]

    @property
    def ok(self) -> bool:
        return all(v.as_expected for v in self.verdicts)

    def counts(self) -> dict[str, int]:
        out = {"in_x": 0, "not_in_x": 0, "unexpected": 0}
        for v in self.verdicts:
            out["in_x" if v.in_x else "not_in_x"] += 1
            out["unexpected"] += 0 if v.as_expected else 1
        return out


def x_conditions(S: TripleSet, rel: StagedRelation, sample: SampleSet, fuel: int) -> SampleVerdict:
    """Check (i)-(iii) for ``sample`` within its probe/pool windows.

    Condition (ii) only needs triples ``<n, m, k>`` with ``k`` in x; their
    n, m range over the predecessors of k (``S`` built from ``rel`` holds
    only for those).
    """
    x = sample.contains
    inside = [n for n in sample.probe if x(n)]
    verdict = lambda failed, *detail: SampleVerdict(sample.label, failed, detail, sample.expect_ideal)
    if not inside:
        return verdict("i")
    for k in inside:
        below = rel.predecessors(k, fuel)
        if below is None:
            below = [n for n in range(max(sample.probe) + 1) if rel.holds_at(n, k, fuel)]
        for n in below:
            for m in below:
                if S(n, m, k, fuel) and not (x(n) and x(m)):
                    return verdict("ii", n, m, k)
    pool = [k for k in sample.pool if x(k)]
    for a, n in enumerate(inside):
        for m in inside[a:]:
            if not any(S(n, m, k, fuel) for k in pool):
                return verdict("iii", n, m)
    return verdict(None)


def verify_x_equals_ideals(rel: StagedRelation, samples: Sequence[SampleSet], fuel: int) -> XReport:
    S = s_from_relation(rel)
    return XReport([x_conditions(S, rel, sample, fuel) for sample in samples])
