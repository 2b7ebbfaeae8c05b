import random
from itertools import product

import pytest

from idealspaces import encoding as enc
from idealspaces import samples as smp
from idealspaces.codes import (CodeMismatch, Pi2Code, StagedFamily, apply_code, code_from_pairs,
                               code_from_preimage_family, constant_code, identity_code,
                               pi2_violation)
from idealspaces.constructions import (coproduct_family, coproduct_relation, equalizer_pi2,
                                       inj1_code, inj2_code, pair_ideals, pi2_subspace,
                                       product_relation, proj1_code, proj2_code, subspace_code,
                                       subspace_point)
from idealspaces.ideal import (baire_point, decidable_ideal, equal_below, member, naturals,
                               raw_enumeration, singleton, validate_prefix)
from idealspaces.relation import builtin, check_transitivity, finite_relation

EQ, LT, SP = builtin("equality"), builtin("less_than"), builtin("strict_prefix")
P = enc.pair_encode

# frozen from tests/oracle/derive.py: singletons {k}, k < 64, with 2k = k/2
DOUBLE_HALF_FIXED = [0]


def test_paired_singletons():
    I = pair_ideals(singleton(3), singleton(7))
    assert member(I, P(3, 7), 64)
    assert not member(I, P(3, 6), 512)
    assert equal_below(apply_code(proj1_code(EQ, EQ), I), singleton(3), 40, 512)
    assert equal_below(apply_code(proj2_code(EQ, EQ), I), singleton(7), 40, 512)


def test_baire_product_membership():
    p, q = baire_point([1], [0]), baire_point([2], [2])
    I = pair_ideals(p, q)
    seq = enc.seq_encode
    assert member(I, P(seq([1]), seq([2, 2])), 4096)
    assert not member(I, P(seq([2]), seq([2])), 4096)


def test_projection_of_strict_relation_is_lower_set():
    I = pair_ideals(naturals(), baire_point([0], [1]))
    out = apply_code(proj1_code(LT, SP), I)
    assert all(member(out, n, 2048) for n in range(20))
    assert validate_prefix(out, 8, 256).lower_violations == []


def test_product_relation_transitive():
    rel = product_relation(LT, EQ)
    assert check_transitivity(rel, 40, 4) == []


def test_injection_tags():
    I = apply_code(inj1_code(EQ, LT), singleton(3))
    assert member(I, P(3, 1), 256)
    assert not member(I, P(3, 2), 1024)
    J = apply_code(inj2_code(EQ, LT), naturals())
    assert all(member(J, P(n, 2), 2048) for n in range(10))


def test_no_ideal_mixes_tags():
    co = coproduct_relation(EQ, EQ)
    mixed = raw_enumeration(co, [P(3, 1), P(3, 2)])
    assert validate_prefix(mixed, 4, 64).directedness_violations


def test_countable_coproduct():
    co = coproduct_family([EQ, LT, SP])
    assert co.holds_at(P(1, 1), P(4, 1), 0)
    assert co.holds_at(P(4, 0), P(4, 0), 0)
    assert not co.holds_at(P(1, 1), P(4, 2), 0)


def test_pi2_trivial_code_is_whole_space():
    sub, f, g = pi2_subspace(LT, Pi2Code.explicit([]))
    assert equal_below(apply_code(f, apply_code(g, naturals())), naturals(), 64, 1024)


def test_pi2_not_zero():
    sub, f, g = pi2_subspace(EQ, Pi2Code.explicit([([0], [])]))
    back = apply_code(f, apply_code(g, singleton(1)))
    assert equal_below(back, singleton(1), 32, 1024)
    # g({0}) is not an ideal of the subspace relation: nothing is above <{0}, k>
    J = subspace_point(EQ, lambda n: n == 0, sub)
    code = subspace_code(1, 0)
    assert member(J, code, 64)
    assert not any(sub.holds_at(code, subspace_code(F, k), 64)
                   for F in range(8) for k in range(6))


def test_pi2_anti_monotone():
    A = Pi2Code.explicit([([0], [1]), ([2], [3])])
    sub, _, _ = pi2_subspace(LT, A)
    codes = [subspace_code(F, k) for F in range(16) for k in range(4)]
    for x, y in product(codes, codes):
        if not sub.holds_at(x, y, 64):
            continue
        F1, k1 = enc.pair_decode(x)
        for G in enc.finset_subsets(F1):
            for j in range(k1 + 1):
                assert sub.holds_at(subspace_code(G, j), y, 64)


def _double_half():
    double = code_from_pairs([(k, 2 * k) for k in range(200)], EQ, EQ, "double")
    half = code_from_preimage_family(StagedFamily(lambda n, m, s: m == 2 * n, True), EQ, EQ,
                                     inverse=lambda m, s: [m // 2] if m % 2 == 0 else [])
    return double, half


def test_equalizer_of_doubling_and_halving():
    A = equalizer_pi2(*_double_half())
    fixed = [k for k in range(64)
             if pi2_violation(A, lambda n, k=k: n == k, [k], P(2 * k + 1, 1), 0) is None]
    assert fixed == DOUBLE_HALF_FIXED


def test_equalizer_identity_vs_constant():
    A = equalizer_pi2(identity_code(EQ), constant_code(EQ, EQ, [0]))
    ok = [k for k in range(30) if pi2_violation(A, lambda n, k=k: n == k, [k], P(31, 1), 0) is None]
    assert ok == [0]


def test_equalizer_of_equal_codes_is_everything():
    A = equalizer_pi2(identity_code(EQ), identity_code(EQ))
    assert all(pi2_violation(A, lambda n, k=k: n == k, [k], P(31, 1), 0) is None for k in range(30))


def test_equalizer_mismatch():
    with pytest.raises(CodeMismatch):
        equalizer_pi2(identity_code(EQ), identity_code(LT))


def test_equalizer_subspace_roundtrip():
    A = equalizer_pi2(identity_code(EQ), constant_code(EQ, EQ, [0]))
    sub, f, g = pi2_subspace(EQ, A)
    back = apply_code(f, apply_code(g, singleton(0)))
    assert equal_below(back, singleton(0), 16, 1024)


@pytest.mark.parametrize("seed", range(5))
def test_projection_laws_on_samples(seed):
    rng = random.Random(seed)
    I1, I2 = smp.sample_points(rng, 2)
    pair = pair_ideals(I1, I2)
    out = apply_code(proj1_code(I1.rel, I2.rel), pair)
    assert all(bool(member(out, n, 1024)) == I1.contains(n) for n in range(48))


def test_staged_product_transitive():
    rng = random.Random(3)
    r1, r2 = smp.staged_finite_relation(rng), smp.staged_finite_relation(rng)
    assert check_transitivity(product_relation(r1, r2), 40, 16) == []
    assert check_transitivity(coproduct_relation(r1, r2), 30, 16) == []


def test_decidable_point_of_product():
    rel = product_relation(EQ, LT)
    I = decidable_ideal(rel, lambda n: enc.pair_decode(n)[0] == 2)
    back = pair_ideals(apply_code(proj1_code(EQ, LT), I), apply_code(proj2_code(EQ, LT), I))
    assert equal_below(back, I, 40, 1024)


def test_finite_relation_pi2_subspace_transitive():
    rel = finite_relation([(0, 0), (1, 1), (0, 1)])
    sub, _, _ = pi2_subspace(rel, Pi2Code.explicit([([1], [0])]))
    assert check_transitivity(sub, 40, 8) == []
