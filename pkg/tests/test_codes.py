import random

import pytest
from hypothesis import given, settings, strategies as st

from idealspaces import encoding as enc
from idealspaces import samples as smp
from idealspaces.codes import (CodeMismatch, Pi2Code, StagedFamily, StagedSet, apply_code,
                               code_from_pairs, code_from_preimage_family, compose_codes,
                               constant_code, empty_code, identity_code, pi2_violation)
from idealspaces.ideal import (baire_point, equal_below, fingen, member, naturals, singleton,
                               validate_prefix)
from idealspaces.relation import builtin

EQ, LT = builtin("equality"), builtin("less_than")


def halving():
    # U_n = {2n}: the preimage of [n] is [2n], so {2k} goes to {k}
    U = StagedFamily(lambda n, m, s: m == 2 * n, True, name="2n")
    return code_from_preimage_family(U, EQ, EQ, inverse=lambda m, s: [m // 2] if m % 2 == 0 else [])


def doubling():
    U = StagedFamily(lambda n, m, s: n == 2 * m, True, name="n/2")
    return code_from_preimage_family(U, EQ, EQ, inverse=lambda m, s: [2 * m])


def test_identity_on_naturals():
    assert equal_below(apply_code(identity_code(LT), naturals()), naturals(), 64, 512)


def test_identity_on_equality_and_baire():
    assert equal_below(apply_code(identity_code(EQ), singleton(9)), singleton(9), 30, 256)
    p = baire_point([1], [0, 3])
    out = apply_code(identity_code(builtin("strict_prefix")), p)
    assert equal_below(out, p, 64, 1024)


def test_empty_code_gives_empty_enumeration():
    out = apply_code(empty_code(LT, LT), naturals())
    assert out.elements(200) == []
    assert validate_prefix(out, 4, 50).empty


def test_successor_code_is_out_of_domain():
    succ = code_from_pairs([(m, m + 1) for m in range(100)], LT, LT)
    out = apply_code(succ, naturals())
    assert not member(out, 0, 500)
    assert member(out, 1, 500)
    diag = validate_prefix(out, 3, 200)
    assert any(n == 0 for n, _ in diag.lower_violations)


def test_preimage_identity_on_equality():
    U = StagedFamily(lambda n, m, s: m == n, True)
    R = code_from_preimage_family(U, EQ, EQ)
    assert equal_below(apply_code(R, singleton(6)), singleton(6), 20, 256)


@pytest.mark.parametrize("k", [0, 1, 5, 13])
def test_halving_even_singletons(k):
    out = apply_code(halving(), singleton(2 * k))
    assert equal_below(out, singleton(k), 40, 512)


def test_empty_preimage_family():
    R = code_from_preimage_family(StagedFamily(lambda n, m, s: False, True), EQ, EQ)
    assert apply_code(R, singleton(3)).elements(100) == []


def test_halving_after_doubling_is_identity():
    T = compose_codes(doubling(), halving())
    for k in range(10):
        assert equal_below(apply_code(T, singleton(k)), singleton(k), 30, 512)


def test_compose_identity_with_identity():
    T = compose_codes(identity_code(LT), identity_code(LT))
    assert equal_below(apply_code(T, naturals()), naturals(), 40, 1024)


def test_compose_with_empty():
    T = compose_codes(identity_code(EQ), empty_code(EQ, EQ))
    assert apply_code(T, singleton(4)).elements(200) == []


def test_compose_mismatch():
    with pytest.raises(CodeMismatch):
        compose_codes(identity_code(EQ), identity_code(LT))


def test_constant_code():
    out = apply_code(constant_code(LT, EQ, [3]), naturals())
    assert equal_below(out, singleton(3), 20, 256)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**16))
def test_identity_law_on_samples(seed):
    rng = random.Random(seed)
    I = smp.sample_points(rng, 1)[0]
    out = apply_code(identity_code(I.rel), I)
    assert all(bool(member(out, n, 512)) == I.contains(n) for n in range(40))


def test_staged_set_and_family():
    S = StagedSet.of([1, 4])
    assert S(4, 0) and not S(2, 99)
    fam = StagedFamily.of([[1], [2, 3]])
    assert fam.at(1)(3, 0) and not fam(5, 0, 0)


def test_pi2_violation_explicit():
    A = Pi2Code.explicit([([0], [])])
    assert pi2_violation(A, lambda n: n == 0, [0], 5, 0) == 0
    assert pi2_violation(A, lambda n: n == 1, [1], 5, 0) is None
