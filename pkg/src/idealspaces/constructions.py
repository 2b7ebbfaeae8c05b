"""Products, coproducts, Pi^0_2 subspaces and equalizers of ideal spaces."""

from __future__ import annotations

from itertools import count
from typing import Callable, Iterator, Optional, Sequence

from . import encoding as enc
from .codes import CodeMismatch, FnCode, Pi2Code, StagedFamily
from .ideal import IdealStream, stream
from .relation import StagedRelation
from .stream import is_checkpoint, paced


# -- products -------------------------------------------------------------

def product_relation(r1: StagedRelation, r2: StagedRelation) -> StagedRelation:
    def holds_at(x: int, y: int, s: int) -> bool:
        a, b = enc.pair_decode(x)
        a2, b2 = enc.pair_decode(y)
        return r1.holds_at(a, a2, s) and r2.holds_at(b, b2, s)

    lower = None
    if r1.lower is not None and r2.lower is not None:
        def lower(y: int, s: int):
            a2, b2 = enc.pair_decode(y)
            left, right = r1.predecessors(a2, s), r2.predecessors(b2, s)
            if left is None or right is None:
                return None
            return [enc.pair_encode(a, b) for a in left for b in right]

    return StagedRelation(holds_at, f"product({r1.name},{r2.name})",
                          decidable=r1.decidable and r2.decidable,
                          transitive=r1.transitive and r2.transitive, lower=lower,
                          key=("product", r1._key(), r2._key()), parts=(r1, r2),
                          spec={"kind": "derived", "derivation": "product",
                                "args": [r1.spec, r2.spec]})


def pair_ideals(I1: IdealStream, I2: IdealStream, rel: Optional[StagedRelation] = None) -> IdealStream:
    """``<I1, I2> = {<a, b> | a in I1, b in I2}``, dovetailing both inputs."""
    rel = rel or product_relation(I1.rel, I2.rel)

    def steps() -> Iterator[Optional[int]]:
        left: list[int] = []
        right: list[int] = []

        def round_(t: int) -> list[int]:
            out = []
            a, b = I1.enum(t), I2.enum(t)
            if a is not None and a not in left:
                left.append(a)
                out.extend(enc.pair_encode(a, y) for y in right)
            if b is not None and b not in right:
                right.append(b)
                out.extend(enc.pair_encode(x, b) for x in left)
            return out

        return paced(round_)

    contains = None
    if I1.contains is not None and I2.contains is not None:
        c1, c2 = I1.contains, I2.contains

        def contains(n: int) -> bool:
            a, b = enc.pair_decode(n)
            return c1(a) and c2(b)

    return stream(rel, steps, contains=contains, label=f"<{I1.label},{I2.label}>")


def _projection(r1: StagedRelation, r2: StagedRelation, index: int) -> FnCode:
    prod = product_relation(r1, r2)
    target = (r1, r2)[index]

    def holds_at(m: int, n: int, s: int) -> bool:
        return enc.pair_decode(m)[index] == n

    return FnCode(holds_at, prod, target, f"proj{index + 1}", decidable=True,
                  image=lambda m, s: (enc.pair_decode(m)[index],),
                  spec={"kind": "derived", "derivation": f"proj{index + 1}",
                        "args": [r1.spec, r2.spec]})


def proj1_code(r1: StagedRelation, r2: StagedRelation) -> FnCode:
    return _projection(r1, r2, 0)


def proj2_code(r1: StagedRelation, r2: StagedRelation) -> FnCode:
    return _projection(r1, r2, 1)


# -- coproducts -----------------------------------------------------------

def countable_coproduct(summand: Callable[[int], Optional[StagedRelation]], *, name: str,
                        decidable: bool = False, key=None, spec: Optional[dict] = None) -> StagedRelation:
    """``<a, i> < <a', j>`` iff ``i == j`` names a summand and ``a <_i a'``.

    ``summand(i)`` returns None for tags outside the index set.
    """

    def holds_at(x: int, y: int, s: int) -> bool:
        a, i = enc.pair_decode(x)
        a2, j = enc.pair_decode(y)
        if i != j:
            return False
        rel = summand(i)
        return rel is not None and rel.holds_at(a, a2, s)

    def lower(y: int, s: int):
        a2, j = enc.pair_decode(y)
        rel = summand(j)
        if rel is None:
            return ()
        below = rel.predecessors(a2, s)
        return None if below is None else [enc.pair_encode(a, j) for a in below]

    return StagedRelation(holds_at, name, decidable=decidable, lower=lower,
                          key=key if key is not None else name, spec=spec)


def coproduct_relation(r1: StagedRelation, r2: StagedRelation) -> StagedRelation:
    """Binary coproduct with tags 1 and 2."""
    table = {1: r1, 2: r2}
    return countable_coproduct(table.get, name=f"coproduct({r1.name},{r2.name})",
                               decidable=r1.decidable and r2.decidable,
                               key=("coproduct", r1._key(), r2._key()),
                               spec={"kind": "derived", "derivation": "coproduct",
                                     "args": [r1.spec, r2.spec]})


def coproduct_family(relations: Sequence[StagedRelation]) -> StagedRelation:
    """Coproduct of a listed family, tags ``0 .. len-1``."""
    rels = list(relations)
    return countable_coproduct(lambda i: rels[i] if i < len(rels) else None,
                               name=f"coproduct[{','.join(r.name for r in rels)}]",
                               decidable=all(r.decidable for r in rels),
                               key=("coproduct-family",) + tuple(r._key() for r in rels),
                               spec={"kind": "derived", "derivation": "coproduct-family",
                                     "args": [r.spec for r in rels]})


def inj_code(summand: StagedRelation, coproduct: StagedRelation, tag: int,
             spec: Optional[dict] = None) -> FnCode:
    """``<a, <a, tag>>``: embeds the summand as the points tagged ``tag``."""

    def holds_at(m: int, n: int, s: int) -> bool:
        return n == enc.pair_encode(m, tag)

    return FnCode(holds_at, summand, coproduct, f"inj{tag}", decidable=True,
                  image=lambda m, s: (enc.pair_encode(m, tag),), spec=spec)


def inj1_code(r1: StagedRelation, r2: StagedRelation) -> FnCode:
    return inj_code(r1, coproduct_relation(r1, r2), 1,
                    {"kind": "derived", "derivation": "inj1", "args": [r1.spec, r2.spec]})


def inj2_code(r1: StagedRelation, r2: StagedRelation) -> FnCode:
    return inj_code(r2, coproduct_relation(r1, r2), 2,
                    {"kind": "derived", "derivation": "inj2", "args": [r1.spec, r2.spec]})


# -- Pi^0_2 subspaces -----------------------------------------------------

def subspace_code(F: int, k: int) -> int:
    """Code of the element ``<F, k>`` of the subspace relation."""
    return enc.pair_encode(F, k)


def subspace_relation(rel: StagedRelation, A: Pi2Code) -> StagedRelation:
    """The relation on codes ``<F, k>`` (F a finite-set code) whose ideals
    are the points of ``A``.  ``<F1, k1> < <F2, k2>`` iff

    1. ``k1 < k2``;
    2. ``F1`` is a subset of ``F2``;
    3. ``F2`` is non-empty;
    4. every ``m <= k1`` with ``m <^(k1) n`` for some ``n`` in ``F1`` is in ``F2``;
    5. any two elements of ``F1`` have a common upper bound in ``F2``;
    6. for ``i <= k1``: if ``F1`` meets ``U_i^(k1)`` then ``F2`` meets ``V_i``.

    Conditions 4 and 6 use the stage-``k1`` approximations; 5 and the V part
    of 6 are the c.e. parts, read at the outer stage.  Shrinking ``F1`` or
    ``k1`` preserves every condition, which makes the relation transitive.
    """
    U, V = A.U, A.V

    def holds_at(x: int, y: int, s: int) -> bool:
        f1, k1 = enc.pair_decode(x)
        f2, k2 = enc.pair_decode(y)
        if not (k1 < k2 and enc.finset_subset(f1, f2) and f2 != 0):
            return False
        F1 = list(enc.finset_members(f1))
        F2 = list(enc.finset_members(f2))
        for n in F1:
            below = rel.predecessors(n, k1)
            if below is None:
                below = [m for m in range(k1 + 1) if rel.holds_at(m, n, k1)]
            if any(m <= k1 and not enc.finset_contains(f2, m) for m in below):
                return False
        for i, a in enumerate(F1):
            for b in F1[i:]:
                if not any(rel.holds_at(a, c, s) and rel.holds_at(b, c, s) for c in F2):
                    return False
        for i in A.indices(k1):
            if any(U(i, n, k1) for n in F1) and not any(V(i, c, s) for c in F2):
                return False
        return True

    def lower(y: int, s: int):
        f2, k2 = enc.pair_decode(y)
        if enc.finset_size(f2) > 12:
            return None
        return [enc.pair_encode(f1, k1) for f1 in enc.finset_subsets(f2) for k1 in range(k2)
                if holds_at(enc.pair_encode(f1, k1), y, s)]

    return StagedRelation(holds_at, f"pi2({rel.name},{A.name})",
                          decidable=rel.decidable and V.decidable, lower=lower,
                          key=("pi2", rel._key(), id(A) if A.key is None else A.key),
                          spec={"kind": "derived", "derivation": "pi2",
                                "args": [rel.spec], "pi2": A.spec})


_HINT_ELEMENT_CAP = 64


def pi2_subspace(rel: StagedRelation, A: Pi2Code) -> tuple[StagedRelation, FnCode, FnCode]:
    """Return ``(sub, f, g)``: the subspace relation, the code of
    ``f(I) = union of F over <F, k> in I`` and the code of its inverse
    ``g(I) = {<F, k> | F a finite subset of I}``."""
    sub = subspace_relation(rel, A)

    def f_holds(m: int, n: int, s: int) -> bool:
        return enc.finset_contains(enc.pair_decode(m)[0], n)

    f = FnCode(f_holds, sub, rel, "pi2-f", decidable=True, monotone=True,
               image=lambda m, s: list(enc.finset_members(enc.pair_decode(m)[0])),
               spec={"kind": "derived", "derivation": "pi2-f", "relation": sub.spec})

    # g pairs m with <F, k> whenever every a in F lies strictly below m.  On an
    # ideal I this yields exactly the finite F contained in I: a < m in I puts
    # a in I (lower set), and a finite F in I has an upper bound m in I
    # (directedness; any m works for F empty since I is non-empty).
    def g_holds(m: int, n: int, s: int) -> bool:
        F = enc.pair_decode(n)[0]
        return all(rel.holds_at(a, m, s) for a in enc.finset_members(F))

    def g_hints(m: int, s: int) -> list[int]:
        # <{}, 0> and <F, 0> for F the predecessors of m: one hint covers
        # every finite subset of them.  Predecessors past max(s, 64) are left
        # out, since a bitmask over large codes is astronomically large.  When
        # the predecessors must be found by scanning, only checkpoint stages
        # pay for it (hints are optional; the output scan stays complete).
        below = rel.predecessors(m, s)
        if below is None:
            if not is_checkpoint(s):
                return [enc.pair_encode(0, 0)]
            below = [a for a in range(s + 1) if rel.holds_at(a, m, s)]
        cap = max(s, _HINT_ELEMENT_CAP)
        F = 0
        for a in below:
            if a <= cap:
                F |= 1 << a
        return [enc.pair_encode(0, 0), enc.pair_encode(F, 0)]

    g = FnCode(g_holds, rel, sub, "pi2-g", decidable=rel.decidable, hints=g_hints, monotone=True,
               spec={"kind": "derived", "derivation": "pi2-g", "relation": sub.spec})
    return sub, f, g


def equalizer_pi2(R: FnCode, S: FnCode) -> Pi2Code:
    """The Pi2 code of ``{I | [[R]](I) == [[S]](I)}``.

    Index ``<n, 0>`` says ``n in [[R]](I) => n in [[S]](I)`` and ``<n, 1>``
    the converse; other indices are empty.
    """
    if R.source != S.source or R.target != S.target:
        raise CodeMismatch(f"equalizer needs parallel codes, got {R.name} and {S.name}")

    def side(i: int, first: bool) -> Optional[tuple[FnCode, int]]:
        n, d = enc.pair_decode(i)
        if d > 1:
            return None
        code = (R, S)[d] if first else (S, R)[d]
        return code, n

    def u(i: int, m: int, s: int) -> bool:
        hit = side(i, True)
        return hit is not None and hit[0].holds_at(m, hit[1], s)

    def v(i: int, m: int, s: int) -> bool:
        hit = side(i, False)
        return hit is not None and hit[0].holds_at(m, hit[1], s)

    dec = R.decidable and S.decidable
    return Pi2Code(StagedFamily(u, dec, name="eqU"), StagedFamily(v, dec, name="eqV"), None,
                   name=f"eq({R.name},{S.name})",
                   spec={"kind": "equalizer", "first": R.spec, "second": S.spec})


def subspace_point(rel: StagedRelation, contains: Callable[[int], bool], sub: StagedRelation,
                   label: str = "") -> IdealStream:
    """``g(I)`` built directly from a membership oracle of ``I``: the ideal
    ``{<F, k> | F finite, F subset of I}`` of the subspace relation."""

    def inside(code: int) -> bool:
        F = enc.pair_decode(code)[0]
        return all(contains(a) for a in enc.finset_members(F))

    def steps() -> Iterator[Optional[int]]:
        def round_(t: int) -> list[int]:
            out = [enc.pair_encode(1 << t, 0)] if contains(t) else []
            return [n for n in out if inside(n)] + ([t] if inside(t) else [])
        return paced(round_)

    return stream(sub, steps, contains=inside, label=label or "g-point")
