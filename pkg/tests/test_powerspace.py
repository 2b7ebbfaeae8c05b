import pytest
from hypothesis import given, strategies as st

from idealspaces import encoding as enc
from idealspaces import finite
from idealspaces.codes import StagedSet
from idealspaces.ideal import Chain, equal_below, ideal_from_chain, member, naturals, singleton
from idealspaces.powerspace import (f_lower, f_upper, g_lower_meets, g_lower_witness,
                                    g_upper_covered, g_upper_refute_member, lower_relation,
                                    upper_relation)
from idealspaces.relation import builtin
from idealspaces.samples import finite_relation_pairs

EQ, LT = builtin("equality"), builtin("less_than")
code = enc.finset_encode

# frozen from tests/oracle/derive.py
F_LOWER_3_7 = [0, 8, 128, 136]
F_UPPER_3_7 = [c for lo in (136, 152, 168, 184, 200, 216, 232, 248) for c in range(lo, lo + 8)]
COUNTS = {
    "discrete": (5, 32, 32), "chain": (5, 6, 6), "strict-chain": (0, 1, 1), "empty": (0, 1, 1),
    "vee": (3, 5, 5), "wedge": (3, 5, 5), "diamond": (4, 6, 6), "clique": (1, 2, 2),
    "cycle-on-top": (2, 3, 3), "mixed-reflexivity": (1, 2, 2), "two-chains": (4, 9, 9),
    "n-shape": (4, 8, 8), "random-12": (3, 5, 5), "random-13": (4, 8, 8), "random-14": (4, 7, 7),
    "random-15": (3, 6, 6), "random-16": (3, 5, 5), "random-17": (2, 3, 3),
    "random-18": (2, 3, 3), "random-19": (2, 3, 3),
}


def members_below(I, bound, fuel):
    return [n for n in range(bound) if member(I, n, fuel)]


def test_lower_and_upper_examples():
    L, U = lower_relation(LT), upper_relation(LT)
    assert L.holds_at(code([1, 3]), code([5]), 0)
    assert U.holds_at(code([1, 3]), code([5]), 0)
    assert not U.holds_at(code([5]), code([1]), 0)


@pytest.mark.parametrize("G", [[0], [2, 4]])
def test_empty_set_quantifiers(G):
    L, U = lower_relation(LT), upper_relation(LT)
    assert L.holds_at(0, code(G), 0)
    assert not L.holds_at(code(G), 0, 0)
    assert not U.holds_at(0, code(G), 0)


@pytest.mark.parametrize("name", ["less_than", "equality", "strict_prefix"])
@pytest.mark.parametrize("kind", [lower_relation, upper_relation])
def test_powerspace_relations_transitive(name, kind):
    R = kind(builtin(name))
    universe = range(64)
    succ = {F: {G for G in universe if R.holds_at(F, G, 0)} for F in universe}
    for F in universe:
        for G in succ[F]:
            assert succ[G] <= succ[F]


def test_f_lower_examples():
    assert members_below(f_lower([singleton(5)]), 64, 256) == [0, 32]
    assert members_below(f_lower([singleton(3), singleton(7)]), 256, 1024) == F_LOWER_3_7
    J = f_lower([], rel=EQ)
    assert members_below(J, 16, 256) == [0]


def test_f_upper_examples():
    J = f_upper([singleton(5)])
    assert members_below(J, 128, 1024) == [c for c in range(128) if c & 32]
    assert members_below(f_upper([singleton(3), singleton(7)]), 256, 2048) == F_UPPER_3_7
    assert members_below(f_upper([naturals()]), 128, 1024) == list(range(1, 128))


def test_f_upper_empty_list():
    with pytest.raises(ValueError):
        f_upper([])
    J = f_upper([], allow_empty=True, rel=EQ)
    assert members_below(J, 32, 64) == list(range(32))


def test_g_lower_meets():
    J = f_lower([singleton(5)])
    assert g_lower_meets(J, 5, 256)
    assert not g_lower_meets(J, 4, 4096)
    chain = ideal_from_chain(Chain.from_function(lower_relation(LT), lambda i: 1 << i))
    assert all(g_lower_meets(chain, m, 4096) for m in range(8))


def test_g_lower_witness():
    J = f_lower([singleton(5)])
    I = g_lower_witness(J, 5, max_steps=10**5)
    assert equal_below(I, singleton(5), 20, 512)
    chain = ideal_from_chain(Chain.from_function(lower_relation(LT), lambda i: 1 << i))
    W = g_lower_witness(chain, 0, max_steps=10**5)
    got = members_below(W, 10, 1024)
    assert 0 in got
    assert all(g_lower_meets(chain, n, 4096) for n in got)


def test_g_upper_covered():
    J = f_upper([singleton(5)])
    r = g_upper_covered(J, StagedSet.of([5]), 1024)
    assert r and r.witness == 32
    assert not g_upper_covered(J, StagedSet.of([4]), 4096)
    r = g_upper_covered(f_upper([naturals()]), StagedSet.of([17]), 4096)
    assert r and r.witness == code([17])


def test_g_upper_refutation():
    J = f_upper([singleton(5)])
    assert g_upper_refute_member(J, singleton(4), 256) == 32
    assert g_upper_refute_member(J, singleton(5), 1024) is None
    # a genuine refutation persists as fuel grows
    assert all(g_upper_refute_member(J, singleton(4), f) is not None for f in (64, 256, 1024))


@pytest.mark.parametrize("name,pairs", finite_relation_pairs(), ids=lambda v: v if isinstance(v, str) else "")
def test_brute_force_counts_match_oracle(name, pairs):
    P = frozenset(map(tuple, pairs))
    points = finite.ideals_bruteforce(P, range(5))
    got = (len(points), len(finite.closed_sets(points, range(5))), len(finite.saturated_sets(points)))
    assert got == COUNTS[name]
    assert set(finite.principal_ideals(P, range(5))) == points


@given(st.frozensets(st.integers(0, 5)), st.frozensets(st.integers(0, 5)))
def test_lower_relation_definition(F, G):
    assert lower_relation(LT).holds_at(code(F), code(G), 0) == all(any(m < n for n in G) for m in F)
    assert upper_relation(LT).holds_at(code(F), code(G), 0) == all(any(m < n for m in F) for n in G)
