import random
from itertools import combinations

import pytest

from idealspaces import encoding as enc
from idealspaces.checks import comptop_samples
from idealspaces.codes import EMPTY_SET, StagedFamily, StagedSet, apply_code, pi2_violation
from idealspaces.comptop import (SampleSet, TripleSet, complete_space, embedding_code, s_from_relation,
                                 verify_x_equals_ideals, x_conditions, x_index, x_pi2_code)
from idealspaces.ideal import member, powerset_point, singleton
from idealspaces.relation import builtin

EQ, LT = builtin("equality"), builtin("less_than")
UNIVERSE = range(3)


def in_x(A, x):
    """Bounded Pi2 check of the P(N) point x (a finite set) against A."""
    codes = [enc.finset_encode(c) for r in range(len(UNIVERSE) + 1) for c in combinations(UNIVERSE, r)]
    top = max(x_index(kind, payload) for kind in range(3)
              for payload in (enc.triple_encode(2, 2, 2), enc.pair_encode(2, 2), 2))
    contains = lambda code: set(enc.finset_members(code)) <= x
    return pi2_violation(A, contains, codes, top, 0) is None


def all_subsets():
    return [frozenset(c) for r in range(len(UNIVERSE) + 1) for c in combinations(UNIVERSE, r)]


def test_triples_from_less_than():
    S = s_from_relation(LT)
    assert S(1, 2, 5, 0) and not S(1, 2, 2, 0)


def test_triples_agree_with_definition():
    for name in ("equality", "less_than", "strict_prefix"):
        rel = builtin(name)
        S = s_from_relation(rel)
        for n in range(32):
            for m in range(32):
                for k in range(32):
                    assert S(n, m, k, 0) == (rel.holds_at(n, k, 0) and rel.holds_at(m, k, 0))


def test_equality_triples_are_the_diagonal():
    S = s_from_relation(EQ)
    assert all(S(n, m, k, 0) == (n == m == k) for n in range(6) for m in range(6) for k in range(6))


def test_x_of_equality_is_singletons():
    A = x_pi2_code(s_from_relation(EQ))
    got = [x for x in all_subsets() if in_x(A, x)]
    assert got == [frozenset([k]) for k in UNIVERSE]


def test_x_of_empty_triples_is_empty():
    A = x_pi2_code(TripleSet.of([]))
    assert not any(in_x(A, x) for x in all_subsets())


def test_empty_overt_witness_empties_x():
    A = x_pi2_code(s_from_relation(EQ), EMPTY_SET)
    assert not any(in_x(A, x) for x in all_subsets())


def test_overt_witness_keeps_its_points():
    A = x_pi2_code(s_from_relation(EQ), StagedSet.of([0, 2]))
    assert [x for x in all_subsets() if in_x(A, x)] == [frozenset([0]), frozenset([2])]


def test_complete_space_roundtrip_on_singletons():
    sub, f, g = complete_space(s_from_relation(EQ))
    for k in (0, 3):
        x = powerset_point(lambda n, k=k: n == k)
        back = apply_code(f, apply_code(g, x))
        for code in range(40):
            expected = set(enc.finset_members(code)) <= {k}
            assert member(back, code, 1024).is_yes == expected


def test_embedding_of_discrete_space():
    W = StagedFamily(lambda n, j, s: j == n, True, name="{n}")
    e = embedding_code(EQ, W)
    out = apply_code(e, singleton(4))
    for code in range(64):
        assert member(out, code, 512).is_yes == (code in (0, 16))


def test_embedding_with_empty_family_is_nowhere_defined():
    e = embedding_code(EQ, StagedFamily(lambda n, j, s: False, True))
    out = apply_code(e, singleton(4))
    # only the empty set comes out, which violates condition (i) of X
    assert out.elements(256) == [0]


def sample(members, label, window=12):
    return SampleSet(set(members).__contains__, list(range(window)), list(range(window)), label)


def test_examples_over_less_than():
    S = s_from_relation(LT)
    naturals = SampleSet(lambda n: True, list(range(10)), list(range(20)), "N")
    assert x_conditions(S, LT, naturals, 64).in_x
    assert x_conditions(S, LT, sample({0, 2}, "{0,2}"), 64).failed == "ii"
    # the triple <1,1,2> alone already breaks (ii): 2 is in x, 1 is not
    assert S(1, 1, 2, 0) and x_conditions(S, LT, sample({2}, "{2}"), 64).failed == "ii"
    assert x_conditions(S, LT, sample({0}, "{0}"), 64).failed == "iii"
    assert x_conditions(S, LT, sample(set(), "{}"), 64).failed == "i"


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sampled_verdicts_as_expected(seed):
    groups = comptop_samples(random.Random(seed), 30, 30)
    for name, samples in groups.items():
        report = verify_x_equals_ideals(builtin(name), samples, 64)
        assert report.ok, [v for v in report.verdicts if not v.as_expected][:1]
        counts = report.counts()
        assert counts["in_x"] > 0 and counts["not_in_x"] > 0
