"""The ``idealspaces`` command line.

Exit status: 0 for Yes (or success), 2 for Unknown at the given fuel, 1 for
usage and spec errors and for failed property suites.  ``--json`` prints
one record ``{query, answer, fuel, witness}`` per line.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence, TextIO

from . import encoding as enc
from . import finite
from .checks import SUITES, CheckConfig, comptop_samples, run_suite
from .codes import CodeMismatch, apply_code
from .comptop import SampleSet, complete_space, s_from_relation, verify_x_equals_ideals
from .constructions import coproduct_relation, equalizer_pi2, pi2_subspace, product_relation
from .ideal import IdealStream, SearchBudgetExceeded, chain_from_ideal, member, validate_prefix
from .metric import ball_code, ball_relation
from .powerspace import (f_lower, f_upper, g_lower_meets, g_upper_covered, lower_relation,
                         upper_relation)
from .relation import QueryResult, StagedRelation, check_transitivity, holds, restrict_pairs
from .specs import Loader, SpecError

FUEL_ENV = "IDEALSPACES_FUEL"
DEFAULT_FUEL = 1000
DEFAULT_COUNT = 10
DEFAULT_BOUND = 64

EXIT_YES, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is our Unknown status
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    fuel: int
    count: int
    bound: int
    seed: int
    json: bool


@dataclass
class Outcome:
    query: str
    answer: str  # yes | unknown | ok | pass | fail
    fuel: Optional[int]
    witness: Any = None

    @property
    def status(self) -> int:
        if self.answer == "unknown":
            return EXIT_UNKNOWN
        return EXIT_ERROR if self.answer == "fail" else EXIT_YES

    def record(self) -> dict:
        return {"query": self.query, "answer": self.answer, "fuel": self.fuel,
                "witness": self.witness}

    def text(self) -> str:
        line = f"{self.answer.capitalize()}: {self.query}"
        if self.witness is not None:
            line += f"  witness={json.dumps(self.witness, sort_keys=True)}"
        return line + (f"  (fuel {self.fuel})" if self.fuel is not None else "")


def _from_query(query: str, result: QueryResult, fuel: int, witness: Any = None) -> Outcome:
    if result.is_yes:
        found = {"stage": result.witness_stage}
        if witness is not None:
            found.update(witness)
        return Outcome(query, "yes", fuel, found)
    return Outcome(query, "unknown", fuel)


def _positive(text: str, flag: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"{flag} expects a positive integer, got {text!r}") from None
    if value <= 0:
        raise UsageError(f"{flag} expects a positive integer, got {value}")
    return value


def _natural(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"{what} must be a natural number, got {text!r}") from None
    if value < 0:
        raise UsageError(f"{what} must be a natural number, got {value}")
    return value


def _config(args: argparse.Namespace) -> RunConfig:
    fuel = getattr(args, "fuel", None)
    if fuel is None:
        env = os.environ.get(FUEL_ENV)
        fuel = _positive(env, FUEL_ENV) if env else DEFAULT_FUEL
    else:
        fuel = _positive(fuel, "--fuel")
    count = getattr(args, "count", None)
    bound = getattr(args, "bound", None)
    seed = getattr(args, "seed", None)
    return RunConfig(fuel=fuel,
                     count=DEFAULT_COUNT if count is None else _positive(count, "--count"),
                     bound=DEFAULT_BOUND if bound is None else _positive(bound, "--bound"),
                     seed=0 if seed is None else _natural(seed, "--seed"),
                     json=bool(getattr(args, "json", False)))


def _first_elements(I: IdealStream, count: int, fuel: int) -> list[int]:
    out = []
    for n in I.enum.iter_elements(fuel):
        out.append(n)
        if len(out) == count:
            break
    return out


def _listing(query: str, elements: list[int], count: int, fuel: int) -> Outcome:
    return Outcome(query, "yes" if len(elements) == count else "unknown", fuel, elements)


def _finset_arg(loader: Loader, text: str):
    if re.fullmatch(r"\s*\d+(\s*,\s*\d+)*\s*", text):
        text = "[" + text + "]"
    return loader.staged_set(text, "S")


# -- command implementations ---------------------------------------------------

def cmd_rel(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    rel = loader.relation(args.rel, "rel")
    if args.action == "holds":
        a, b = _natural(args.a, "a"), _natural(args.b, "b")
        return [_from_query(f"holds {rel.name} {a} {b}", holds(rel, a, b, cfg.fuel), cfg.fuel)]
    violations = check_transitivity(rel, cfg.bound, cfg.fuel)
    query = f"transitive {rel.name} below {cfg.bound}"
    if not violations:
        return [Outcome(query, "yes", cfg.fuel, {"violations": []})]
    return [Outcome(query, "unknown", cfg.fuel, {"violations": [list(v) for v in violations[:20]],
                                                 "total": len(violations)})]


def cmd_ideal(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    I = loader.ideal(args.ideal, "ideal")
    label = I.label or "ideal"
    if args.action == "enum":
        return [_listing(f"enum {label}", _first_elements(I, cfg.count, cfg.fuel), cfg.count, cfg.fuel)]
    if args.action == "member":
        n = _natural(args.n, "n")
        return [_from_query(f"member {label} {n}", member(I, n, cfg.fuel), cfg.fuel)]
    if args.action == "validate":
        diag = validate_prefix(I, args.depth, cfg.fuel)
        witness = {"checked": diag.checked, "empty": diag.empty,
                   "lower_violations": [list(p) for p in diag.lower_violations],
                   "directedness_violations": [list(p) for p in diag.directedness_violations]}
        return [Outcome(f"validate {label} depth {args.depth}",
                        "yes" if diag.clean else "unknown", cfg.fuel, witness)]
    chain = chain_from_ideal(I, max_steps=args.max_steps)
    query = f"chain {label}"
    try:
        return [Outcome(query, "yes", None, chain.prefix(cfg.count))]
    except SearchBudgetExceeded as exc:
        return [Outcome(query, "unknown", None, {"diagnostic": str(exc)})]


def cmd_code(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    R = loader.code(args.code, "code")
    I = loader.ideal(args.ideal, "ideal")
    try:
        out = apply_code(R, I)
    except CodeMismatch as exc:
        raise UsageError(str(exc)) from None
    return [_listing(f"apply {R.name} {I.label}", _first_elements(out, cfg.count, cfg.fuel),
                     cfg.count, cfg.fuel)]


def cmd_space(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    if args.kind in ("product", "coproduct"):
        r1 = loader.relation(args.first, "first")
        r2 = loader.relation(args.second, "second")
        rel = (product_relation if args.kind == "product" else coproduct_relation)(r1, r2)
    elif args.kind == "pi2":
        base = loader.relation(args.first, "rel")
        rel = pi2_subspace(base, loader.pi2(args.second, "pi2"))[0]
    else:
        R, S = loader.code(args.first, "first"), loader.code(args.second, "second")
        try:
            A = equalizer_pi2(R, S)
        except CodeMismatch as exc:
            raise UsageError(str(exc)) from None
        rel = pi2_subspace(R.source, A)[0]
    return [Outcome(f"derive {args.kind}", "ok", None, rel.spec)]


def cmd_metric(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    M = loader.oracle(args.oracle, "oracle")
    I = loader.ideal(args.ideal, "ideal")
    if I.rel != ball_relation(M):
        raise UsageError(f"the point lives over {I.rel.name}, not over the balls of {M.name}")
    center = loader.point_index(M, args.center, "center")
    n = _natural(args.n, "n")
    query = f"ball-member <{args.center}, {n}> in {I.label}"
    return [_from_query(query, member(I, ball_code(center, n), cfg.fuel), cfg.fuel)]


def _finite_samples(rel: StagedRelation, cfg: RunConfig) -> list[SampleSet]:
    spec = rel.spec or {}
    elements = sorted({x for pair in spec.get("pairs", []) for x in pair[:2]})
    if len(elements) > 10:
        raise UsageError("comptop verify enumerates subsets exhaustively; use at most 10 elements")
    pairs = frozenset(restrict_pairs(rel, elements, cfg.fuel))
    return [SampleSet(S.__contains__, elements, elements, f"{sorted(S)}", finite.is_ideal(S, pairs))
            for S in finite.subsets(elements)]


def cmd_comptop(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    if args.action == "from-rel":
        rel = loader.relation(args.spec, "rel")
        return [Outcome("comptop from-rel", "ok", None, s_from_relation(rel).spec)]
    if args.action == "complete":
        S = loader.triples(args.spec, "S")
        E = None if args.overt is None else loader.staged_set(args.overt, "overt")
        return [Outcome("comptop complete", "ok", None, complete_space(S, E)[0].spec)]
    rel = loader.relation(args.spec, "rel")
    spec = rel.spec or {}
    if spec.get("kind") == "finite":
        samples = _finite_samples(rel, cfg)
    elif spec.get("kind") == "builtin" and spec.get("name") in ("equality", "less_than", "strict_prefix"):
        # the sampler deals samples round-robin over its three relations
        drawn = comptop_samples(random.Random(cfg.seed), 3 * args.samples, 3 * args.samples)
        samples = drawn[spec["name"]]
    else:
        raise UsageError("comptop verify samples equality, less_than, strict_prefix and finite relations")
    report = verify_x_equals_ideals(rel, samples, cfg.fuel)
    witness = report.counts()
    bad = [v for v in report.verdicts if not v.as_expected]
    if bad:
        witness["first_unexpected"] = {"sample": bad[0].label, "failed": bad[0].failed}
    return [Outcome(f"comptop verify {rel.name}", "pass" if report.ok else "fail", cfg.fuel, witness)]


def cmd_power(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    action = args.action
    if action in ("lower-rel", "upper-rel"):
        rel = loader.relation(args.first, "rel")
        derived = (lower_relation if action == "lower-rel" else upper_relation)(rel)
        return [Outcome(f"power {action}", "ok", None, derived.spec)]
    if action in ("f-lower", "f-upper"):
        family = loader.ideal_list(args.first, "family")
        base = None if args.relation is None else loader.relation(args.relation, "relation")
        if not family and base is None:
            raise UsageError(f"{action} of an empty family needs --relation")
        J = f_lower(family, rel=base) if action == "f-lower" else f_upper(family, allow_empty=True, rel=base)
        return [_listing(action, _first_elements(J, cfg.count, cfg.fuel), cfg.count, cfg.fuel)]
    J = loader.ideal(args.first, "J")
    if action == "g-lower-meets":
        m = _natural(args.second, "m")
        return [_from_query(f"g-lower-meets {J.label} {m}", g_lower_meets(J, m, cfg.fuel), cfg.fuel)]
    S = _finset_arg(loader, args.second)
    result = g_upper_covered(J, S, cfg.fuel)
    extra = None
    if result.is_yes:
        extra = {"subset": sorted(enc.finset_members(result.witness))}
    return [_from_query(f"g-upper-covered {J.label} {S.name}", result, cfg.fuel, extra)]


def cmd_check(args, loader: Loader, cfg: RunConfig) -> list[Outcome]:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; expected one of {['all', *SUITES]}")
    check_cfg = CheckConfig(seed=cfg.seed, fuel=getattr(args, "fuel", None) and cfg.fuel,
                            bound=getattr(args, "bound", None) and cfg.bound,
                            count=getattr(args, "count", None) and cfg.count)
    outcomes = []
    for report in run_suite(args.suite, check_cfg):
        for result in report.results:
            outcome = Outcome(f"{report.suite}: {result.name}", "pass" if result.passed else "fail",
                              check_cfg.fuel, dict(result.counters))
            if result.detail:
                outcome.witness["first_failure"] = result.detail
            outcome.line = f"[{report.suite}] {result.line()}"  # type: ignore[attr-defined]
            outcomes.append(outcome)
    return outcomes


# -- argument parsing ------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, *, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--fuel", default=default,
                        help=f"stage/step budget (default ${FUEL_ENV} or {DEFAULT_FUEL})")
    parser.add_argument("--bound", default=default, help=f"element bound (default {DEFAULT_BOUND})")
    parser.add_argument("--count", default=default, help=f"how many elements (default {DEFAULT_COUNT})")
    parser.add_argument("--seed", default=default, help="seed for sampled suites (default 0)")
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="print machine-readable records")
    parser.add_argument("--workspace", default=default, help="JSON file of named specs for @name references")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="idealspaces", description="Spaces of ideals of staged relations.")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name: str, help_: str, fn):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(run=fn)
        return p

    rel = top.add_parser("rel", help="relations").add_subparsers(dest="action", required=True)
    p = leaf(rel, "holds", "semidecide a < b", cmd_rel)
    p.add_argument("rel")
    p.add_argument("a")
    p.add_argument("b")
    p = leaf(rel, "check-trans", "look for transitivity violations", cmd_rel)
    p.add_argument("rel")

    ideal = top.add_parser("ideal", help="points").add_subparsers(dest="action", required=True)
    leaf(ideal, "enum", "list elements", cmd_ideal).add_argument("ideal")
    p = leaf(ideal, "member", "semidecide n in I", cmd_ideal)
    p.add_argument("ideal")
    p.add_argument("n")
    p = leaf(ideal, "validate", "look for evidence against being an ideal", cmd_ideal)
    p.add_argument("ideal")
    p.add_argument("--depth", type=int, default=16)
    p = leaf(ideal, "chain", "extract a cofinal chain", cmd_ideal)
    p.add_argument("ideal")
    p.add_argument("--max-steps", type=int, default=100_000)

    code = top.add_parser("code", help="codes").add_subparsers(dest="action", required=True)
    p = leaf(code, "apply", "enumerate [[R]](I)", cmd_code)
    p.add_argument("code")
    p.add_argument("ideal")

    space = top.add_parser("space", help="constructions").add_subparsers(dest="action", required=True)
    p = leaf(space, "derive", "emit the relation spec of a construction", cmd_space)
    p.add_argument("kind", choices=["product", "coproduct", "pi2", "equalizer"])
    p.add_argument("first")
    p.add_argument("second")

    metric = top.add_parser("metric", help="formal balls").add_subparsers(dest="action", required=True)
    p = leaf(metric, "ball-member", "semidecide <center, n> in I", cmd_metric)
    for name in ("oracle", "ideal", "center", "n"):
        p.add_argument(name)

    comptop = top.add_parser("comptop", help="complete topological spaces").add_subparsers(
        dest="action", required=True)
    leaf(comptop, "from-rel", "the triple set of a relation", cmd_comptop).add_argument("spec")
    p = leaf(comptop, "complete", "the complete space of a triple set", cmd_comptop)
    p.add_argument("spec")
    p.add_argument("--overt", default=None)
    p = leaf(comptop, "verify", "check X-conditions against ideals on samples", cmd_comptop)
    p.add_argument("spec")
    p.add_argument("--samples", type=int, default=100)

    power = top.add_parser("power", help="powerspaces").add_subparsers(dest="action", required=True)
    for name in ("lower-rel", "upper-rel"):
        leaf(power, name, f"emit the {name[:5]} powerspace relation", cmd_power).add_argument("first")
    for name in ("f-lower", "f-upper"):
        p = leaf(power, name, "enumerate the image of a listed family", cmd_power)
        p.add_argument("first", metavar="ideal-list")
        p.add_argument("--relation", default=None, help="ambient relation (needed for [])")
    for name, second in (("g-lower-meets", "m"), ("g-upper-covered", "S")):
        p = leaf(power, name, "fuel-bounded query", cmd_power)
        p.add_argument("first", metavar="J")
        p.add_argument("second", metavar=second)

    p = top.add_parser("check", parents=[common], help="run a property suite")
    p.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    p.set_defaults(run=cmd_check)
    return parser


def run_command(argv: Sequence[str], out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(list(argv))
        cfg = _config(args)
        as_json = cfg.json
        loader = Loader.from_workspace_file(args.workspace) if args.workspace else Loader()
        outcomes = args.run(args, loader, cfg)
    except (UsageError, SpecError, CodeMismatch, ValueError) as exc:
        message = str(exc)
        if as_json:
            print(json.dumps({"query": " ".join(argv), "answer": "error", "fuel": None,
                              "witness": message}, sort_keys=True), file=out)
        print(f"error: {message}", file=err)
        return EXIT_ERROR
    for o in outcomes:
        if as_json:
            print(json.dumps(o.record(), sort_keys=True), file=out)
        elif o.answer == "ok":
            print(json.dumps(o.witness, sort_keys=True, indent=2), file=out)
        else:
            print(getattr(o, "line", None) or o.text(), file=out)
    return max((o.status for o in outcomes), key=lambda s: (s == EXIT_ERROR, s), default=EXIT_YES)


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)
