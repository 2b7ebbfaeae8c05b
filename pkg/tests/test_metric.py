from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from idealspaces.ideal import member
from idealspaces.metric import (FastCauchy, IntervalOracle, QuadraticPoint, ball_code, ball_decode,
                                ball_relation, cauchy_from_ideal, constant_sequence,
                                ideal_from_cauchy, rational_at, rational_index,
                                rational_sequence, rationals_oracle, sqrt_sequence)

# frozen from tests/oracle/derive.py (breadth-first Calkin-Wilf walk, sympy)
FIRST_RATIONALS = ["0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3", "3/2", "-3/2",
                   "2/3", "-2/3", "3", "-3", "1/4"]
INDICES = {"1": 1, "1/3": 7, "-1/2": 4, "3/4": 27, "7/5": 49, "5/7": 43}
SQRT2_EXPONENTS_7_5 = [0, 1, 2, 3, 4, 5, 6]
SQRT2_EXPONENTS_3_2 = [0, 1, 2, 3]

M = rationals_oracle()
BALL = ball_relation(M)
idx = rational_index


def test_rational_enumeration_matches_oracle():
    assert [rational_at(i) for i in range(16)] == [Fraction(q) for q in FIRST_RATIONALS]
    for q, i in INDICES.items():
        assert rational_index(Fraction(q)) == i and rational_at(i) == Fraction(q)


@given(st.fractions(max_denominator=500).filter(lambda q: abs(q) < 1000))
def test_rational_roundtrip(q):
    assert rational_at(rational_index(q)) == q


@given(st.integers(0, 10**5))
def test_rational_index_roundtrip(i):
    assert rational_index(rational_at(i)) == i


def test_ball_examples():
    assert BALL.holds_at(ball_code(idx(0), 1), ball_code(idx(Fraction(1, 4)), 3), 0)
    assert BALL.holds_at(ball_code(idx(0), 1), ball_code(idx(0), 2), 0)
    for q in ("0", "1/3", "-7/2"):
        b = ball_code(idx(Fraction(q)), 3)
        assert not BALL.holds_at(b, b, 0)


def test_distance_facts():
    h, third = idx(Fraction(1, 2)), idx(Fraction(1, 3))
    assert M.fact_at(Fraction(-1), Fraction(1), h, h, 0)
    assert not M.fact_at(Fraction(0), Fraction(1), h, h, 0)
    assert M.fact_at(Fraction(1, 4), Fraction(1, 2), idx(0), third, 0)


@given(st.fractions(), st.fractions(), st.integers(0, 200), st.integers(0, 200))
def test_fact_symmetry(q, r, i, j):
    assert M.fact_at(q, r, i, j, 0) == M.fact_at(q, r, j, i, 0)


def test_sqrt2_convergents():
    I = ideal_from_cauchy(M, sqrt_sequence(2))
    for center, expected in ((Fraction(7, 5), SQRT2_EXPONENTS_7_5), (Fraction(3, 2), SQRT2_EXPONENTS_3_2)):
        got = [n for n in range(13) if member(I, ball_code(idx(center), n), 2048)]
        assert got == expected


def test_sqrt2_interval_oracle():
    Mi = IntervalOracle([QuadraticPoint(Fraction(0), Fraction(1), 2),
                         QuadraticPoint(Fraction(7, 5), Fraction(0), 1)])
    I = ideal_from_cauchy(Mi, FastCauchy(lambda i: 0))
    got = [n for n in range(13) if member(I, ball_code(1, n), 8192)]
    assert got == SQRT2_EXPONENTS_7_5


def test_interval_oracle_rejects_mixed_radicands():
    with pytest.raises(ValueError):
        IntervalOracle([QuadraticPoint(Fraction(0), Fraction(1), 2),
                        QuadraticPoint(Fraction(0), Fraction(1), 3)])


def test_quadratic_floor():
    p = QuadraticPoint(Fraction(0), Fraction(1), 2)
    assert p.floor_scaled(10) == 1448  # floor(sqrt(2) * 1024)
    assert QuadraticPoint(Fraction(0), Fraction(-1), 2).floor_scaled(10) == -1449


@settings(max_examples=30, deadline=None)
@given(st.integers(-16, 16), st.integers(1, 8), st.integers(0, 40), st.integers(0, 6))
def test_constant_ideal_characterization(num, den, i, n):
    limit = Fraction(num, den)
    I = ideal_from_cauchy(M, constant_sequence(limit))
    code = ball_code(i, n)
    expected = abs(rational_at(i) - limit) < Fraction(1, 1 << n)
    assert member(I, code, 2 * code + 64).is_yes == expected


def test_cauchy_from_ideal_roundtrip():
    target = Fraction(2, 3)
    seq = rational_sequence(lambda i: target + Fraction(1, 1 << (i + 3)) if i < 3 else target)
    I = ideal_from_cauchy(M, seq)
    back = cauchy_from_ideal(M, I, max_steps=10**6)
    exponents = [ball_decode(back.chain(j))[1] for j in range(8)]
    assert all(a < b for a, b in zip(exponents, exponents[1:]))
    assert [rational_at(back(j)) for j in range(4, 8)] == [target] * 4
    J = ideal_from_cauchy(M, back)
    for code in range(200):
        assert member(I, code, 500).is_yes == member(J, code, 500).is_yes


def test_ball_relation_transitive_on_small_grid():
    balls = [ball_code(i, n) for i in range(25) for n in range(7)]
    succ = {x: {y for y in balls if BALL.holds_at(x, y, 0)} for x in balls}
    for x in balls:
        for y in succ[x]:
            assert succ[y] <= succ[x]
