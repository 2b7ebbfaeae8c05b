import pytest
from hypothesis import given, settings, strategies as st

from idealspaces import encoding as enc
from idealspaces.ideal import (Chain, SearchBudgetExceeded, baire_point, basis_witness,
                               chain_from_ideal, equal_below, fingen, ideal_from_chain, member,
                               naturals, powerset_point, raw_enumeration, singleton,
                               validate_prefix)
from idealspaces.relation import builtin, finite_relation


def test_singleton_membership():
    I = fingen(builtin("equality"), [4])
    assert member(I, 4, 1)
    assert not member(I, 5, 1000)


def test_naturals_contains_everything_eventually():
    N = naturals()
    assert all(member(N, n, n + 1) for n in range(50))


def test_fingen_needs_decidable_relation():
    staged = finite_relation([(0, 1, 3)])
    with pytest.raises(ValueError):
        fingen(staged, [1])
    with pytest.raises(ValueError):
        fingen(builtin("less_than"), [])


def test_baire_chain_example():
    # the sequence 1, 0, 0, ...: its prefixes of lengths 0..3
    I = baire_point([1], [0])
    chain = chain_from_ideal(I)
    assert chain.prefix(4) == [0, 2, 5, 14]


def test_baire_point_is_the_prefix_set():
    I = baire_point([2], [0, 1])
    good = [enc.seq_encode(s) for s in ([], [2], [2, 0], [2, 0, 1])]
    bad = [enc.seq_encode(s) for s in ([0], [2, 1], [2, 0, 0])]
    for n in good:
        assert member(I, n, 64)
    for n in bad:
        assert not member(I, n, 64)


def test_ideal_from_chain_is_down_closure():
    lt = builtin("less_than")
    I = ideal_from_chain(Chain.from_function(lt, lambda i: 3 * i))
    assert all(member(I, n, 200) for n in range(40))


def test_chain_roundtrip_on_finite_relation():
    rel = finite_relation([(a, b) for a in range(4) for b in range(4) if a <= b])
    I = fingen(rel, [2], reflexive=True)
    chain = chain_from_ideal(I)
    J = ideal_from_chain(chain)
    assert equal_below(I, J, 6, 256)


def test_chain_extraction_budget():
    # {3} under < is not an ideal; no upper bound of 3 is ever enumerated
    bogus = raw_enumeration(builtin("less_than"), [3])
    with pytest.raises(SearchBudgetExceeded):
        chain_from_ideal(bogus, max_steps=50).prefix(3)


def test_basis_witness_examples():
    N = naturals()
    c = basis_witness(N, 3, 9, 100)
    assert c is not None and c > 9
    assert basis_witness(fingen(builtin("equality"), [4]), 4, 5, 100) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 60), st.integers(0, 60))
def test_basis_witness_on_naturals(a, b):
    c = basis_witness(naturals(), a, b, 512)
    assert c is not None and a < c and b < c


@settings(max_examples=40, deadline=None)
@given(st.frozensets(st.integers(0, 6), max_size=4), st.data())
def test_basis_witness_on_finite_subsets(top, data):
    # the subsets of a fixed finite set form an ideal of inclusion
    code = enc.finset_encode(top)
    I = fingen(builtin("finite_subset"), [code])
    a = data.draw(st.sampled_from(sorted(enc.finset_subsets(code))))
    b = data.draw(st.sampled_from(sorted(enc.finset_subsets(code))))
    c = basis_witness(I, a, b, 256)
    assert c is not None and enc.finset_subset(a | b, c) and enc.finset_subset(c, code)


def test_validate_prefix_reports_violations():
    lt = builtin("less_than")
    diag = validate_prefix(raw_enumeration(lt, [2]), 4, 16)
    assert not diag.clean and (0, 2) in diag.lower_violations
    assert validate_prefix(raw_enumeration(lt, []), 4, 16).empty
    eq = builtin("equality")
    diag = validate_prefix(raw_enumeration(eq, [1, 2]), 4, 16)
    assert (1, 2) in diag.directedness_violations
    assert validate_prefix(singleton(7), 4, 16).clean


@settings(max_examples=30, deadline=None)
@given(st.frozensets(st.integers(0, 9), min_size=1))
def test_powerset_point_members(x):
    P = powerset_point(x.__contains__)
    for code in range(64):
        inside = set(enc.finset_members(code)) <= x
        assert bool(member(P, code, 256)) == inside


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 40), st.integers(0, 300), st.integers(0, 300))
def test_member_fuel_monotone(n, f1, f2):
    I = baire_point([1], [0, 2])
    lo, hi = sorted((f1, f2))
    if member(I, n, lo):
        assert member(I, n, hi)


def test_enumeration_is_memoized_and_repeatable():
    I = naturals()
    assert I.elements(30) == I.elements(30)
    assert I.elements(10) == I.elements(30)[: len(I.elements(10))]
