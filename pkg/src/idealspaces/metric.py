"""Completions of computable metric spaces as ideals of formal balls.

A formal ball ``<i, n>`` is the ball around dense point ``i`` with radius
``2**-n``; ``<i, n> < <j, m>`` iff ``d(i, j) < 2**-n - 2**-m``.  All
arithmetic is exact (``fractions.Fraction`` and integer square roots).
"""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import isqrt
from typing import Callable, Iterator, Optional, Sequence, Union

from . import encoding as enc
from .ideal import Chain, IdealStream, chain_from_ideal, ideal_from_chain
from .relation import StagedRelation

Rational = Union[Fraction, int]


# -- an indexing of the rationals -----------------------------------------

def _fusc(n: int) -> int:
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def _calkin_wilf(k: int) -> Fraction:
    """k-th node (k >= 1) of the Calkin-Wilf tree, breadth first."""
    return Fraction(_fusc(k), _fusc(k + 1))


def _calkin_wilf_index(q: Fraction) -> int:
    a, b = q.numerator, q.denominator
    bits, pos = 0, 0
    while not (a == 1 and b == 1):
        if a < b:
            # run of left moves: a/b is the left child of a/(b - a)
            run = (b - 1) // a
            b -= run * a
        else:
            run = (a - 1) // b
            bits |= ((1 << run) - 1) << pos
            a -= run * b
        pos += run
    return (1 << pos) | bits


# Chain heads of fast Cauchy sequences have indices thousands of bits long
# and are decoded over and over; remember recent translations both ways.
_CACHE_SIZE = 1 << 14
_decoded: "OrderedDict[int, Fraction]" = OrderedDict()
_cache_lock = threading.Lock()


def _remember(i: int, q: Fraction) -> None:
    with _cache_lock:
        _decoded[i] = q
        _decoded.move_to_end(i)
        if len(_decoded) > _CACHE_SIZE:
            _decoded.popitem(last=False)


def rational_at(i: int) -> Fraction:
    """Bijection N -> Q: 0, then +cw(k) at 2k-1 and -cw(k) at 2k."""
    if i < 0:
        raise ValueError("rational index must be natural")
    if i == 0:
        return Fraction(0)
    q = _decoded.get(i)
    if q is None:
        k, sign = (i + 1) // 2, (1 if i % 2 else -1)
        q = sign * _calkin_wilf(k)
        _remember(i, q)
    return q


def rational_index(q: Rational) -> int:
    q = Fraction(q)
    if q == 0:
        return 0
    k = _calkin_wilf_index(abs(q))
    i = 2 * k - 1 if q > 0 else 2 * k
    _remember(i, q)
    return i


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# -- oracles --------------------------------------------------------------

class MetricOracle(ABC):
    """A computable metric space presented by c.e. distance facts
    ``q < d(alpha(i), alpha(j)) < r``."""

    point_count: Optional[int] = None
    decidable: bool = False
    name: str = "metric"
    # identity of ball relations over this oracle (see Pi2Code.key)
    key = None

    def valid(self, i: int) -> bool:
        return self.point_count is None or i < self.point_count

    @abstractmethod
    def fact_at(self, q: Rational, r: Rational, i: int, j: int, stage: int) -> bool:
        ...

    @abstractmethod
    def below(self, i: int, j: int, bound: Rational, stage: int) -> bool:
        """Whether some fact ``(q, r, i, j)`` with ``r <= bound`` is asserted by ``stage``."""

    def spec(self) -> dict:
        return {"kind": self.name}


class RationalsOracle(MetricOracle):
    """The rationals with ``|x - y|``; every fact is decided exactly."""

    decidable = True
    name = "rationals"
    key = "rationals"

    def point(self, i: int) -> Fraction:
        return rational_at(i)

    def distance(self, i: int, j: int) -> Fraction:
        return abs(rational_at(i) - rational_at(j))

    def fact_at(self, q, r, i, j, stage) -> bool:
        return q < self.distance(i, j) < r

    def below(self, i, j, bound, stage) -> bool:
        return self.distance(i, j) < bound


def rationals_oracle() -> RationalsOracle:
    return RationalsOracle()


@dataclass(frozen=True)
class QuadraticPoint:
    """The real ``a + b * sqrt(c)`` with rational a, b and natural c."""

    a: Fraction
    b: Fraction
    c: int

    def minus(self, other: "QuadraticPoint") -> "QuadraticPoint":
        if self.c != other.c and self.b and other.b:
            raise ValueError("points must share the radicand")
        c = self.c if self.b else other.c
        return QuadraticPoint(self.a - other.a, self.b - other.b, c)

    def floor_scaled(self, stage: int) -> int:
        """``floor((a + b sqrt c) * 2**stage)``, exactly."""
        scale = 1 << stage
        A = self.a * scale
        X = self.b * self.b * self.c * scale * scale  # (b sqrt(c) 2^s)^2
        positive = self.b >= 0

        def at_most(f: int) -> bool:
            # f <= A + sqrt(X)  or  f <= A - sqrt(X)
            gap = f - A
            if positive:
                return gap <= 0 or gap * gap <= X
            return gap <= 0 and X <= gap * gap

        r = isqrt(_floor(X))
        f = _floor(A + r) if positive else _floor(A - r - 1)
        while at_most(f + 1):
            f += 1
        while not at_most(f):
            f -= 1
        return f


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


class IntervalOracle(MetricOracle):
    """Finitely many points of the form ``a + b sqrt(c)``; stage s encloses
    each distance in an open interval of width ``2**(1 - s)``.  The
    enclosures are nested, so facts are stage-monotone."""

    decidable = False
    name = "interval-script"

    def __init__(self, points: Sequence[QuadraticPoint]):
        self.points = list(points)
        self.point_count = len(self.points)
        radicands = {p.c for p in self.points if p.b}
        if len(radicands) > 1:
            raise ValueError(f"interval oracle points must share one radicand, got {sorted(radicands)}")

    def enclosure(self, i: int, j: int, stage: int) -> tuple[Fraction, Fraction]:
        """Open interval around ``d(i, j)`` from the floor at precision 2**-stage."""
        f = self.points[i].minus(self.points[j]).floor_scaled(stage)
        h = Fraction(1, 1 << stage)
        if f >= 0:
            return (f - 1) * h, (f + 1) * h
        g = -f - 1
        return g * h, (g + 2) * h

    def fact_at(self, q, r, i, j, stage) -> bool:
        if not (self.valid(i) and self.valid(j)):
            return False
        lo, hi = self.enclosure(i, j, stage)
        return q <= lo and hi <= r

    def below(self, i, j, bound, stage) -> bool:
        if not (self.valid(i) and self.valid(j)):
            return False
        return self.enclosure(i, j, stage)[1] <= bound

    def spec(self) -> dict:
        return {"kind": self.name,
                "points": [[str(p.a), str(p.b), p.c] for p in self.points]}


# -- formal balls ---------------------------------------------------------

def ball_code(center: int, exponent: int) -> int:
    return enc.pair_encode(center, exponent)


def ball_decode(code: int) -> tuple[int, int]:
    return enc.pair_decode(code)


def radius_gap(n: int, m: int) -> Fraction:
    return Fraction(1, 1 << n) - Fraction(1, 1 << m)


def ball_relation(M: MetricOracle) -> StagedRelation:
    def holds_at(x: int, y: int, s: int) -> bool:
        i, n = enc.pair_decode(x)
        j, m = enc.pair_decode(y)
        if m <= n or not (M.valid(i) and M.valid(j)):
            # 2^-n - 2^-m <= 0 and distances are never negative
            return False
        return M.below(i, j, radius_gap(n, m), s)

    return StagedRelation(holds_at, f"ball({M.name})", decidable=M.decidable,
                          key=("ball", id(M) if M.key is None else M.key),
                          spec={"kind": "derived", "derivation": "ball", "oracle": M.spec()})


@dataclass
class FastCauchy:
    """Dense-point indices with the promise ``d(x_i, x_{i+1}) < 2**-(i+1)``."""

    seq: Callable[[int], int]
    label: str = ""

    def __call__(self, i: int) -> int:
        return self.seq(i)

    def promise_at(self, M: MetricOracle, i: int, stage: int) -> bool:
        return M.below(self(i), self(i + 1), Fraction(1, 1 << (i + 1)), stage)


def _memo(f: Callable[[int], int]) -> Callable[[int], int]:
    cache: dict[int, int] = {}

    def g(i: int) -> int:
        if i not in cache:
            cache[i] = f(i)
        return cache[i]

    return g


def constant_sequence(q: Rational) -> FastCauchy:
    idx = rational_index(q)
    return FastCauchy(lambda i: idx, label=f"const({q})")


def rational_sequence(terms: Callable[[int], Rational], label: str = "") -> FastCauchy:
    return FastCauchy(_memo(lambda i: rational_index(terms(i))), label)


def _convergents(k: int) -> Iterator[Fraction]:
    """Continued-fraction convergents of sqrt(k) (k not a square)."""
    a0 = isqrt(k)
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, kk = 0, 1
    yield Fraction(h, kk)
    while True:
        m = d * a - m
        d = (k - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, kk = kk, a * kk + k_prev
        yield Fraction(h, kk)


def _close_to_sqrt(x: Fraction, k: int, eps: Fraction) -> bool:
    """Exact test of ``|x - sqrt(k)| < eps``."""
    lo, hi = x - eps, x + eps
    return (lo < 0 or lo * lo < k) and hi > 0 and hi * hi > k


def sqrt_sequence(k: int) -> FastCauchy:
    """Fast Cauchy sequence for sqrt(k): slot i is the first convergent
    within ``2**-(i+2)``, so consecutive slots differ by < 2**-(i+1)."""
    if isqrt(k) ** 2 == k:
        return constant_sequence(isqrt(k))
    gen = _convergents(k)
    chosen: list[Fraction] = []
    current = [next(gen)]

    def term(i: int) -> int:
        while len(chosen) <= i:
            eps = Fraction(1, 1 << (len(chosen) + 2))
            while not _close_to_sqrt(current[0], k, eps):
                current[0] = next(gen)
            chosen.append(current[0])
        return rational_index(chosen[i])

    return FastCauchy(_memo(term), label=f"sqrt({k})")


def cauchy_chain(M: MetricOracle, c: FastCauchy) -> Chain:
    return Chain.from_function(ball_relation(M), lambda i: ball_code(c(i), i), label=c.label)


def ideal_from_cauchy(M: MetricOracle, c: FastCauchy) -> IdealStream:
    """The ideal generated by the ascending chain ``<x_i, i>``."""
    I = ideal_from_chain(cauchy_chain(M, c))
    I.label = f"cauchy:{c.label}"
    return I


def cauchy_from_ideal(M: MetricOracle, I: IdealStream, *, max_steps: Optional[int] = None) -> FastCauchy:
    """Extract a cofinal chain ``<x_i, n_i>`` (exponents strictly increase)
    and keep, for slot i, the next entry whose exponent is at least i + 2."""
    chain = chain_from_ideal(I, max_steps=max_steps)
    picks: list[int] = []
    cursor = [0]

    def term(i: int) -> int:
        while len(picks) <= i:
            need = len(picks) + 2
            while True:
                center, exponent = ball_decode(chain(cursor[0]))
                cursor[0] += 1
                if exponent >= need:
                    picks.append(center)
                    break
        return picks[i]

    out = FastCauchy(term, label=f"of:{I.label}")
    out.chain = chain  # type: ignore[attr-defined]
    return out
