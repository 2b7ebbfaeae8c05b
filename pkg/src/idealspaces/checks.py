"""Property suites run by ``idealspaces check <suite>``.

Each suite returns one :class:`PropertyResult` per property, with counters.
Reports contain no timings, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Optional

from . import encoding as enc
from . import finite
from .codes import Pi2Code, StagedFamily, StagedSet, apply_code, identity_code
from .comptop import SampleSet, verify_x_equals_ideals
from .constructions import (coproduct_relation, pair_ideals, pi2_subspace, product_relation,
                            proj1_code, proj2_code, subspace_code, subspace_point)
from .ideal import (IdealStream, baire_sequence, basis_witness, decidable_ideal, fingen,
                    member, naturals, powerset_point, singleton)
from .metric import (FastCauchy, IntervalOracle, QuadraticPoint, ball_code, ball_decode, ball_relation,
                     constant_sequence, ideal_from_cauchy, rational_at, rational_index,
                     rational_sequence, rationals_oracle, sqrt_sequence)
from .powerspace import (f_lower, f_upper, g_lower_meets, g_upper_covered, lower_relation,
                         upper_relation)
from .relation import StagedRelation, builtin, check_transitivity, finite_relation
from . import samples as smp


@dataclass
class CheckConfig:
    seed: int = 0
    fuel: Optional[int] = None
    bound: Optional[int] = None
    count: Optional[int] = None


@dataclass
class PropertyResult:
    name: str
    passed: bool
    counters: dict[str, int]
    detail: str = ""

    def line(self) -> str:
        counts = " ".join(f"{k}={v}" for k, v in self.counters.items())
        text = f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {counts}"
        return f"{text}  first-failure: {self.detail}" if self.detail else text


@dataclass
class SuiteReport:
    suite: str
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [f"[{self.suite}] {r.line()}" for r in self.results]


class Tally:
    """Counts checks for one property and remembers the first failure."""

    def __init__(self, name: str):
        self.name = name
        self.counters: Counter = Counter()
        self.failure = ""

    def count(self, key: str, n: int = 1) -> None:
        self.counters[key] += n

    def check(self, ok: bool, detail: Callable[[], str] | str = "") -> bool:
        self.counters["checked"] += 1
        if not ok:
            self.counters["failed"] += 1
            if not self.failure:
                self.failure = detail() if callable(detail) else detail
        return ok

    def bulk(self, checked: int, failures: list) -> None:
        """Record ``checked`` checks at once; ``failures`` lists the bad cases."""
        self.counters["checked"] += checked
        self.counters["failed"] += len(failures)
        if failures and not self.failure:
            self.failure = str(failures[0])

    def result(self) -> PropertyResult:
        counters = {"checked": self.counters["checked"], "failed": self.counters["failed"]}
        counters.update((k, v) for k, v in sorted(self.counters.items()) if k not in counters)
        passed = counters["failed"] == 0 and counters["checked"] > 0
        return PropertyResult(self.name, passed, counters, self.failure)


def _agrees_with_oracle(I: IdealStream, contains: Callable[[int], bool], bound: int, fuel: int,
                        tally: Tally) -> None:
    """Member-equality below ``bound``: Yes within fuel exactly on the members."""
    for n in range(bound + 1):
        expected = contains(n)
        got = member(I, n, fuel).is_yes
        tally.count("members" if expected else "non_members")
        tally.check(got == expected, lambda: f"{I.label}: n={n} expected {expected}")


# -- 1. encoding ----------------------------------------------------------

def suite_encoding(cfg: CheckConfig) -> list[PropertyResult]:
    limit = 100_000
    pairs = Tally(f"pairing is a bijection below {limit}")
    # the diagonal walk is the reference enumeration of N x N
    walk = [(d - b, b) for d in range(450) for b in range(d + 1)][:limit]
    pairs.bulk(limit, [(c, ab) for c, ab in enumerate(walk)
                       if enc.pair_encode(*ab) != c or enc.pair_decode(c) != ab])

    triples = Tally("triple round trip below 10000")
    triples.bulk(10_000, [c for c in range(10_000) if enc.triple_encode(*enc.triple_decode(c)) != c])

    sets = Tally("finite-set codec is a bijection below 2^16")
    bad = []
    for c in range(1 << 16):
        bits = [i for i in range(16) if c >> i & 1]
        if list(enc.finset_members(c)) != bits or enc.finset_encode(bits) != c:
            bad.append(c)
    sets.bulk(1 << 16, bad)

    seqs = Tally("sequences of length <= 6 over {0..5}")
    seen: set[int] = set()
    bad, total = [], 0
    for length in range(7):
        for s in cartesian(range(6), repeat=length):
            total += 1
            c = enc.seq_encode(s)
            expected = 0
            for x in reversed(s):
                expected = (x + expected) * (x + expected + 1) // 2 + expected + 1
            if c != expected or enc.seq_decode(c) != s or c in seen:
                bad.append(s)
            seen.add(c)
    seqs.bulk(total, bad)

    onto = Tally("sequence codes below 10000 decode and re-encode")
    onto.bulk(10_000, [c for c in range(10_000) if enc.seq_encode(enc.seq_decode(c)) != c])
    return [t.result() for t in (pairs, triples, sets, seqs, onto)]


# -- 2. basis property ----------------------------------------------------

def suite_basis(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    bound, fuel = cfg.bound or 32, cfg.fuel or 4096
    tally = Tally(f"basis_witness for all members below {bound}")
    for I in smp.sample_points(rng, cfg.count or 200, smp.BASIS_KINDS):
        tally.count("samples")
        inside = [n for n in range(bound) if I.contains(n)]
        for a in inside:
            for b in inside:
                c = basis_witness(I, a, b, fuel)
                ok = (c is not None and I.contains(c)
                      and I.rel.holds_at(a, c, 0) and I.rel.holds_at(b, c, 0))
                tally.check(ok, lambda: f"{I.label}: a={a} b={b} witness={c}")
    return [tally.result()]


# -- 3. identity code -----------------------------------------------------

def suite_identity(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    bound, fuel = cfg.bound or 64, cfg.fuel or 512
    tally = Tally(f"apply(identity) member-equals I below {bound}")
    for I in smp.sample_points(rng, cfg.count or 100):
        tally.count("samples")
        _agrees_with_oracle(apply_code(identity_code(I.rel), I), I.contains, bound, fuel, tally)
    return [tally.result()]


# -- 4. products ----------------------------------------------------------

def suite_product(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    bound, fuel = cfg.bound or 64, cfg.fuel or 1024
    proj = Tally(f"proj_i(<I1,I2>) = I_i below {bound}")
    pairing = Tally(f"<proj1(I),proj2(I)> = I below {bound}")
    for _ in range(cfg.count or 100):
        I1, I2 = smp.sample_points(rng, 2, smp.ALL_KINDS[rng.randrange(4):] + smp.ALL_KINDS)
        proj.count("samples")
        P = pair_ideals(I1, I2)
        _agrees_with_oracle(apply_code(proj1_code(I1.rel, I2.rel), P), I1.contains, bound, fuel, proj)
        _agrees_with_oracle(apply_code(proj2_code(I1.rel, I2.rel), P), I2.contains, bound, fuel, proj)
        # a point of the product enumerated independently of pair_ideals
        rel = product_relation(I1.rel, I2.rel)
        c1, c2 = I1.contains, I2.contains
        inside = lambda n, c1=c1, c2=c2: c1(enc.pair_decode(n)[0]) and c2(enc.pair_decode(n)[1])
        I = decidable_ideal(rel, inside, label=f"point<{I1.label},{I2.label}>")
        back = pair_ideals(apply_code(proj1_code(I1.rel, I2.rel), I),
                           apply_code(proj2_code(I1.rel, I2.rel), I))
        pairing.count("samples")
        _agrees_with_oracle(back, inside, bound, fuel, pairing)
    return [proj.result(), pairing.result()]


# -- 5. Pi^0_2 subspaces --------------------------------------------------

@dataclass
class Pi2Instance:
    name: str
    rel: StagedRelation
    code: Pi2Code
    # the points used for the round trips: (membership oracle, label)
    points: Callable[[], list[tuple[Callable[[int], bool], str]]]


def pi2_instances() -> list[Pi2Instance]:
    lt = Pi2Instance("less_than/no-condition", builtin("less_than"),
                     Pi2Code.explicit([], name="none"),
                     lambda: [(lambda n: True, "N")] * 50)
    eq = Pi2Instance("equality/not-0", builtin("equality"),
                     Pi2Code.explicit([([0], [])], name="not0"),
                     lambda: [((lambda n, k=k: n == k), f"{{{k}}}") for k in range(1, 51)])
    succ_U = StagedFamily(lambda i, n, s: n == 1 << i, True, name="{i}")
    succ_V = StagedFamily(lambda i, n, s: n == 1 << (i + 1), True, name="{i+1}")
    up = Pi2Instance("finite_subset/upward-closed", builtin("finite_subset"),
                     Pi2Code(succ_U, succ_V, None, name="n=>n+1"),
                     lambda: [(_tail(j), f"[{j},oo)") for j in range(49)] + [(_nothing, "{}")])
    return [lt, eq, up]


def _tail(j: int) -> Callable[[int], bool]:
    return lambda code: all(a >= j for a in enc.finset_members(code))


def _nothing(code: int) -> bool:
    return code == 0


def suite_pi2(cfg: CheckConfig) -> list[PropertyResult]:
    bound, fuel = cfg.bound or 64, cfg.fuel or 1024
    results = []
    elements = [subspace_code(F, k) for F in range(1 << 6) for k in range(6)]
    for inst in pi2_instances():
        sub, f, g = pi2_subspace(inst.rel, inst.code)
        trans = Tally(f"{inst.name}: transitivity over <F,k>, F in P({{0..5}}), k <= 5")
        succ = {x: [y for y in elements if sub.holds_at(x, y, fuel)] for x in elements}
        for x in elements:
            above = set(succ[x])
            for y in succ[x]:
                for z in succ[y]:
                    trans.check(z in above, f"{_show_sub(x)} {_show_sub(y)} {_show_sub(z)}")
        trans.count("related_pairs", sum(len(v) for v in succ.values()))

        fg = Tally(f"{inst.name}: f(g(I)) = I below {bound}")
        gf = Tally(f"{inst.name}: g(f(J)) = J below {bound}")
        for contains, label in inst.points():
            fg.count("samples")
            gf.count("samples")
            if inst.rel.name == "finite_subset":
                x = contains
                I = powerset_point(lambda n, x=x: x(1 << n), label=label)
            else:
                I = decidable_ideal(inst.rel, contains, label=label)
            _agrees_with_oracle(apply_code(f, apply_code(g, I)), contains, bound, fuel, fg)
            J = subspace_point(inst.rel, contains, sub, label=f"g{label}")
            _agrees_with_oracle(apply_code(g, apply_code(f, J)), J.contains, bound, fuel, gf)
        results += [trans.result(), fg.result(), gf.result()]
    return results


def _show_sub(code: int) -> str:
    F, k = enc.pair_decode(code)
    return f"<{sorted(enc.finset_members(F))},{k}>"


# -- 6. metric ------------------------------------------------------------

def _metric_limits() -> list[tuple[str, Fraction, object]]:
    # A rational close to a different rational has a huge Calkin-Wilf index
    # (one large partial quotient), so non-constant sequences with rational
    # limits wobble for a few terms and then settle.
    half = Fraction(1, 2)
    wobble = lambda L: rational_sequence(
        lambda i: L + Fraction((-1) ** i, 1 << (i + 2)) if i < 4 else L, label=f"wobble({L})")
    return [
        ("const 0", Fraction(0), constant_sequence(0)),
        ("const 1/3", Fraction(1, 3), constant_sequence(Fraction(1, 3))),
        ("const -1/2", -half, constant_sequence(-half)),
        ("wobble 3/4", Fraction(3, 4), wobble(Fraction(3, 4))),
        ("wobble -2", Fraction(-2), wobble(Fraction(-2))),
    ]


def metric_grid(limit: Fraction, rng: random.Random, size: int = 50,
                max_index: int = 64) -> list[tuple[int, int]]:
    """``size`` (center index, exponent <= 6) pairs; all exact boundary
    cases ``|q - limit| = 2^-n`` come first, the rest is a seeded sample."""
    every = [(i, n) for i in range(max_index) for n in range(7)]
    gap = lambda i, n: abs(rational_at(i) - limit) - Fraction(1, 1 << n)
    edge = [p for p in every if gap(*p) == 0]
    inside = [p for p in every if gap(*p) < 0]
    outside = [p for p in every if gap(*p) > 0]
    rng.shuffle(inside)
    rng.shuffle(outside)
    mixed = [p for pair in zip(inside, outside) for p in pair]
    return list(dict.fromkeys(edge + mixed + inside + outside))[:size]


def suite_metric(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    M = rationals_oracle()
    both = Tally("ball membership iff |x - limit| < 2^-n on a 50-point grid")
    for label, limit, seq in _metric_limits():
        I = ideal_from_cauchy(M, seq)
        grid = metric_grid(limit, rng, cfg.count or 50)
        fuel = cfg.fuel or 2 * max(ball_code(i, n) for i, n in grid) + 64
        both.count("ideals")
        for i, n in grid:
            q = rational_at(i)
            expected = abs(q - limit) < Fraction(1, 1 << n)
            got = member(I, ball_code(i, n), fuel).is_yes
            both.count("inside" if expected else "outside")
            both.check(got == expected, lambda: f"{label}: center {q} exponent {n} expected {expected}")

    # sqrt(2) twice: as the limit of continued-fraction convergents among the
    # rationals, and as a point of an interval oracle next to 7/5
    sqrt2 = Tally("sqrt(2) ideal: <7/5,2> Yes, <7/5,7> Unknown")
    I = ideal_from_cauchy(M, sqrt_sequence(2))
    i75 = rational_index(Fraction(7, 5))
    sqrt2.check(member(I, ball_code(i75, 2), 1000).is_yes, "convergents: <7/5,2> not found")
    sqrt2.check(not member(I, ball_code(i75, 7), 1000).is_yes, "convergents: <7/5,7> claimed")
    Mi = IntervalOracle([QuadraticPoint(Fraction(0), Fraction(1), 2), QuadraticPoint(Fraction(7, 5), Fraction(0), 1)])
    I = ideal_from_cauchy(Mi, FastCauchy(lambda i: 0, label="sqrt(2)"))
    sqrt2.check(member(I, ball_code(1, 2), 5000).is_yes, "interval: <7/5,2> not found")
    sqrt2.check(not member(I, ball_code(1, 7), 5000).is_yes, "interval: <7/5,7> claimed")
    return [both.result(), sqrt2.result()]


# -- 7. complete computable topological spaces ----------------------------

def comptop_samples(rng: random.Random, genuine: int, fake: int) -> dict[str, list[SampleSet]]:
    by_rel: dict[str, list[SampleSet]] = {"equality": [], "less_than": [], "strict_prefix": []}
    window = list(range(48))
    for j in range(genuine):
        kind = ("equality", "less_than", "strict_prefix")[j % 3]
        if kind == "equality":
            k = rng.randrange(40)
            by_rel[kind].append(SampleSet(lambda n, k=k: n == k, window, window, f"{{{k}}}", True))
        elif kind == "less_than":
            top = rng.randrange(24, 64)
            probe = list(range(top))
            by_rel[kind].append(SampleSet(lambda n: True, probe, list(range(top + 1)),
                                          f"N[<{top}]", True))
        else:
            prefix = [rng.randrange(3) for _ in range(rng.randrange(3))]
            cycle = [rng.randrange(3) for _ in range(rng.randrange(1, 3))]
            p = baire_sequence(prefix, cycle)
            path = [enc.seq_encode([p(i) for i in range(L)]) for L in range(6)]

            def contains(n: int, p=p) -> bool:
                return all(x == p(i) for i, x in enumerate(enc.seq_decode(n)))

            by_rel[kind].append(SampleSet(contains, window, window + path, f"baire{prefix}({cycle})", True))
    for j in range(fake):
        kind = ("equality", "less_than", "strict_prefix")[j % 3]
        by_rel[kind].append(_non_ideal(kind, rng, window))
    return by_rel


def _non_ideal(kind: str, rng: random.Random, window: list[int]) -> SampleSet:
    variant = rng.randrange(3)
    if variant == 0:
        return SampleSet(lambda n: False, window, window, "empty", False)
    if kind == "equality":
        a, b = sorted(rng.sample(range(40), 2))
        return SampleSet(lambda n, a=a, b=b: n in (a, b), window, window, f"{{{a},{b}}}", False)
    if kind == "less_than":
        if variant == 1:
            top = rng.randrange(1, 40)
            return SampleSet(lambda n, top=top: n < top, window, window, f"[0,{top})", False)
        low = rng.randrange(1, 20)
        return SampleSet(lambda n, low=low: n >= low, window, window, f"[{low},oo)", False)
    # strict prefix: two incompatible branches, or a set missing the root
    if variant == 1:
        a, b = rng.sample(range(3), 2)
        allowed = {enc.seq_encode([]), enc.seq_encode([a]), enc.seq_encode([b])}
        return SampleSet(allowed.__contains__, window, window, f"branches{a},{b}", False)
    x = rng.randrange(3)
    rootless = enc.seq_encode([x])
    return SampleSet(lambda n, r=rootless: n == r, window, window, f"rootless[{x}]", False)


def suite_comptop(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    count = cfg.count or 100
    fuel = cfg.fuel or 16
    out = []
    # count genuine and count fake sets for each of the three relations
    for name, sample_sets in comptop_samples(rng, 3 * count, 3 * count).items():
        tally = Tally(f"{name}: X-conditions hold exactly on ideals")
        report = verify_x_equals_ideals(builtin(name), sample_sets, fuel)
        for v in report.verdicts:
            tally.count("ideals" if v.expect_ideal else "non_ideals")
            tally.check(v.as_expected, lambda v=v: f"{v.label} failed={v.failed} {v.detail}")
        out.append(tally.result())
    return out


# -- 8. finite powerspaces ------------------------------------------------

def suite_powerspace_finite(cfg: CheckConfig) -> list[PropertyResult]:
    fuel = cfg.fuel or 256
    U = smp.FINITE_CARRIER
    codes = finite.finsets(U)
    t_ideals = Tally("ideals: brute force = down-sets of reflexive elements")
    t_lower = Tally("f_L/g_L mutually inverse: closed sets <-> ideals of <_L")
    t_upper = Tally("f_U/g_U mutually inverse: saturated compacts <-> ideals of <_U")
    t_lemma_l = Tally("lower lemma: F in f_L(A) iff A meets [m] for all m in F")
    t_lemma_u = Tally("upper lemma: g_U(J) within union of [m], m in S, iff some F in J is a subset of S")
    t_stream_l = Tally("f_lower and g_lower_meets agree with brute force")
    t_stream_u = Tally("f_upper and g_upper_covered agree with brute force")

    for name, pairs in smp.finite_relation_pairs():
        P = frozenset(pairs)
        brute = finite.ideals_bruteforce(P, U)
        gens = finite.principal_ideals(P, U)
        t_ideals.check(brute == set(gens), f"{name}")
        t_ideals.count("relations")
        points = set(gens)

        # lower powerspace
        closed = finite.closed_sets(points, U)
        lower_ideals = finite.relation_ideals(lambda F, G: finite.lower_holds(P, F, G), codes)
        images = {A: finite.f_lower(A, U) for A in closed}
        t_lower.check(set(images.values()) == set(lower_ideals)
                      and len(set(images.values())) == len(closed), f"{name}: f_L not onto/injective")
        for A, J in images.items():
            t_lower.check(finite.g_lower(J, points) == A, f"{name}: g_L(f_L(A)) != A")
        for J in lower_ideals:
            t_lower.check(finite.f_lower(finite.g_lower(J, points), U) == J, f"{name}: f_L(g_L(J)) != J")
        for A, J in images.items():
            for F in codes:
                meets_all = all(any(m in I for I in A) for m in enc.finset_members(F))
                t_lemma_l.check((F in J) == meets_all, f"{name}: F={F}")
        for J in lower_ideals:
            G = finite.g_lower(J, points)
            for F in codes:
                via_points = all(any(m in I for I in G) for m in enc.finset_members(F))
                t_lemma_l.check((F in J) == via_points, f"{name}: F={F} via g_L")

        # upper powerspace
        compact = finite.saturated_sets(points)
        upper_ideals = finite.relation_ideals(lambda F, G: finite.upper_holds(P, F, G), codes)
        images_u = {K: finite.f_upper(K, U) for K in compact}
        t_upper.check(set(images_u.values()) == set(upper_ideals)
                      and len(set(images_u.values())) == len(compact), f"{name}: f_U not onto/injective")
        for K, J in images_u.items():
            t_upper.check(finite.g_upper(J, points) == K, f"{name}: g_U(f_U(K)) != K")
        for J in upper_ideals:
            t_upper.check(finite.f_upper(finite.g_upper(J, points), U) == J, f"{name}: f_U(g_U(J)) != J")
        for J in upper_ideals:
            G = finite.g_upper(J, points)
            for S in codes:
                covered = all(any(enc.finset_contains(S, m) for m in I) for I in G)
                some_subset = any(enc.finset_subset(F, S) for F in J)
                t_lemma_u.check(covered == some_subset, f"{name}: S={S}")

        # the streaming implementations
        rel = finite_relation(pairs, name=name)
        streams = {I: fingen(rel, [c], label=f"down({c})") for I, c in gens.items()}
        for A in closed:
            got = f_lower([streams[I] for I in sorted(A, key=sorted)], rel=rel)
            want = images[A]
            for F in codes:
                t_stream_l.check(member(got, F, fuel).is_yes == (F in want), f"{name}: f_lower F={F}")
        lrel = lower_relation(rel)
        for J, C in lower_ideals.items():
            stream_J = fingen(lrel, [C], label=f"downL({C})")
            G = finite.g_lower(J, points)
            for m in U:
                want = any(m in I for I in G)
                t_stream_l.check(g_lower_meets(stream_J, m, fuel).is_yes == want,
                                 f"{name}: g_lower_meets C={C} m={m}")
        for K in compact:
            got = f_upper([streams[I] for I in sorted(K, key=sorted)], allow_empty=True, rel=rel)
            want = images_u[K]
            for F in codes:
                t_stream_u.check(member(got, F, fuel).is_yes == (F in want), f"{name}: f_upper F={F}")
        urel = upper_relation(rel)
        for J, C in upper_ideals.items():
            stream_J = fingen(urel, [C], label=f"downU({C})")
            G = finite.g_upper(J, points)
            for S in codes:
                want = all(any(enc.finset_contains(S, m) for m in I) for I in G)
                got = g_upper_covered(stream_J, StagedSet.of(enc.finset_members(S)), fuel).is_yes
                t_stream_u.check(got == want, f"{name}: g_upper_covered C={C} S={S}")
    return [t.result() for t in (t_ideals, t_lower, t_upper, t_lemma_l, t_lemma_u,
                                 t_stream_l, t_stream_u)]


# -- 9. stage monotonicity ------------------------------------------------

def _monotone_targets(rng: random.Random) -> list[tuple[str, StagedRelation, Callable[[], tuple[int, int]]]]:
    base = smp.staged_finite_relation(rng)
    other = smp.staged_finite_relation(rng)
    small = lambda: rng.randrange(8)
    twice = lambda draw: (lambda: (draw(), draw()))
    U = StagedFamily(lambda i, n, s: n == i % 8 and s >= i % 5, False, name="U")
    V = StagedFamily(lambda i, n, s: n == (i + 3) % 8 and s >= 2 * (i % 4), False, name="V")
    sub = pi2_subspace(base, Pi2Code(U, V, None, name="staged"))[0]

    def sub_pair() -> tuple[int, int]:
        # <F1, k1> with F1 inside F2 and k1 < k2: the only pairs that can hold
        F2, k2 = smp.random_finset(rng, 8), rng.randrange(1, 12)
        F1 = F2 & smp.random_finset(rng, 8)
        return subspace_code(F1, rng.randrange(k2)), subspace_code(F2, k2)

    points = [QuadraticPoint(0, 1, 2), QuadraticPoint(1, 0, 1), QuadraticPoint(Fraction(1, 3), 0, 1),
              QuadraticPoint(3, -1, 2), QuadraticPoint(Fraction(1, 2), -1, 2),
              QuadraticPoint(Fraction(7, 5), 0, 1)]
    balls = ball_relation(IntervalOracle(points))
    ball_el = lambda: ball_code(rng.randrange(len(points)), rng.randrange(9))
    finset_el = lambda: smp.random_finset(rng, 8)
    return [
        ("product", product_relation(base, other), twice(lambda: enc.pair_encode(small(), small()))),
        ("coproduct", coproduct_relation(base, other),
         twice(lambda: enc.pair_encode(small(), rng.randrange(1, 3)))),
        ("pi2 subspace", sub, sub_pair),
        ("ball", balls, twice(ball_el)),
        ("lower", lower_relation(base), twice(finset_el)),
        ("upper", upper_relation(base), twice(finset_el)),
    ]


def suite_monotonicity(cfg: CheckConfig) -> list[PropertyResult]:
    rng = random.Random(cfg.seed)
    trials = cfg.count or 10_000
    out = []
    for name, rel, draw in _monotone_targets(rng):
        tally = Tally(f"{name}: no Yes-then-Unknown across stages")
        for _ in range(trials):
            a, b = draw()
            s = rng.randrange(24)
            t = s + rng.randrange(24)
            early, late = rel.holds_at(a, b, s), rel.holds_at(a, b, t)
            tally.count("yes_early" if early else ("yes_late_only" if late else "no"))
            tally.check(late or not early, lambda: f"a={a} b={b} stages {s}<={t}")
        out.append(tally.result())
    return out


# -- transitivity of built-in and derived relations -----------------------

def suite_transitivity(cfg: CheckConfig) -> list[PropertyResult]:
    bound, fuel = cfg.bound or 5, cfg.fuel or 16
    rng = random.Random(cfg.seed)
    staged = smp.staged_finite_relation(rng, size=bound + 1)
    names = ("equality", "less_than", "strict_prefix", "finite_subset")
    rels = [builtin(n) for n in names] + [
        staged,
        product_relation(builtin("less_than"), builtin("finite_subset")),
        coproduct_relation(builtin("equality"), staged),
        lower_relation(builtin("less_than")),
        upper_relation(builtin("less_than")),
        lower_relation(staged),
        upper_relation(staged),
        pi2_subspace(builtin("less_than"), Pi2Code.explicit([([1], [2])]))[0],
    ]
    out = []
    for rel in rels:
        tally = Tally(f"{rel.name}: transitive on elements <= {bound}")
        violations = check_transitivity(rel, bound, fuel)
        tally.check(not violations, lambda v=violations: f"{v[:3]}")
        out.append(tally.result())
    return out


SUITES: dict[str, Callable[[CheckConfig], list[PropertyResult]]] = {
    "encoding": suite_encoding,
    "basis": suite_basis,
    "identity-code": suite_identity,
    "product": suite_product,
    "pi2-roundtrip": suite_pi2,
    "metric": suite_metric,
    "comptop": suite_comptop,
    "powerspace-finite": suite_powerspace_finite,
    "monotonicity": suite_monotonicity,
    "transitivity": suite_transitivity,
}


def run_suite(name: str, cfg: Optional[CheckConfig] = None) -> list[SuiteReport]:
    """Run one suite (or ``all``, in a fixed order)."""
    cfg = cfg or CheckConfig()
    if name == "all":
        return [SuiteReport(n, fn(cfg)) for n, fn in SUITES.items()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {['all', *SUITES]}")
    return [SuiteReport(name, SUITES[name](cfg))]
