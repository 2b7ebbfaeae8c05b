"""Loading relations, points, codes and oracles from JSON documents.

A spec is a JSON value.  Strings act as references:

* ``builtin:NAME`` names a built-in relation (or ``builtin:rationals``);
* ``derived:OP(ARG, ...)`` applies a construction to nested references;
* ``@NAME`` looks NAME up in the workspace section of the expected kind;
* text starting with ``{`` or ``[`` is parsed as inline JSON;
* anything else is a path to a JSON file (relative to the referring file).

Every error is a :class:`SpecError` naming the JSON path of the bad value.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterator, Optional

from .codes import (CodeMismatch, FnCode, Pi2Code, StagedFamily, StagedSet, apply_code,
                    code_from_pairs, code_from_preimage_family, compose_codes, constant_code,
                    identity_code)
from .comptop import TripleSet, s_from_relation, x_pi2_code
from .constructions import (coproduct_family, coproduct_relation, equalizer_pi2, inj1_code,
                            inj2_code, pair_ideals, pi2_subspace, product_relation, proj1_code,
                            proj2_code)
from .ideal import (Chain, IdealStream, baire_point, fingen, ideal_from_chain, raw_enumeration)
from .metric import (FastCauchy, IntervalOracle, MetricOracle, QuadraticPoint, ball_relation,
                     constant_sequence, ideal_from_cauchy, rational_index, rational_sequence,
                     rationals_oracle, sqrt_sequence)
from .powerspace import f_lower, f_upper, lower_relation, upper_relation
from .relation import BUILTINS, StagedRelation, builtin, finite_relation
from .stream import Enumeration

SECTIONS = ("relations", "ideals", "codes", "oracles", "pi2", "triples", "sets")


class SpecError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def canonical(spec: Any) -> str:
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


def split_call(text: str, path: str) -> tuple[str, list[str]]:
    """``OP(a, b(c, d), {...})`` -> ``("OP", ["a", "b(c, d)", "{...}"])``."""
    text = text.strip()
    open_at = text.find("(")
    if open_at <= 0 or not text.endswith(")"):
        raise SpecError(path, f"expected OP(ARG, ...), got {text!r}")
    op, body = text[:open_at].strip(), text[open_at + 1:-1]
    args, depth, start, quoted = [], 0, 0, False
    for i, ch in enumerate(body):
        if ch == '"' and (i == 0 or body[i - 1] != "\\"):
            quoted = not quoted
        elif quoted:
            continue
        elif ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise SpecError(path, f"unbalanced brackets in {text!r}")
        elif ch == "," and depth == 0:
            args.append(body[start:i].strip())
            start = i + 1
    if depth != 0 or quoted:
        raise SpecError(path, f"unbalanced brackets in {text!r}")
    tail = body[start:].strip()
    if tail or args:
        args.append(tail)
    return op, args


# -- small validators ------------------------------------------------------

def _natural(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise SpecError(path, f"expected a natural number, got {value!r}")
    return value


def _naturals(value: Any, path: str) -> list[int]:
    return [_natural(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path))]


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SpecError(path, f"expected a list, got {type(value).__name__}")
    return value


def _object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SpecError(path, f"expected an object, got {type(value).__name__}")
    return value


def _field(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise SpecError(path, f"missing field {key!r}")
    return doc[key]


def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecError(path, f"expected a rational, got {value!r}")
    try:
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        pass
    raise SpecError(path, f"expected a rational such as 3 or \"7/5\", got {value!r}")


def _kind(doc: dict, path: str, allowed: tuple[str, ...]) -> str:
    kind = _field(doc, "kind", path)
    if kind not in allowed:
        raise SpecError(f"{path}.kind", f"unknown kind {kind!r}; expected one of {list(allowed)}")
    return kind


# -- the loader -------------------------------------------------------------

class Loader:
    """Resolve specs against an optional workspace document.

    A workspace is an object with any of the sections in :data:`SECTIONS`,
    each mapping names to specs; ``@name`` refers to an entry of the
    section matching what is being loaded.
    """

    def __init__(self, workspace: Optional[dict] = None, base: Optional[Path] = None):
        self.base = base or Path.cwd()
        self.workspace: dict[str, dict] = {}
        self._active: list[str] = []
        if workspace is not None:
            ws = _object(workspace, "workspace")
            for section, entries in ws.items():
                if section not in SECTIONS:
                    raise SpecError(f"workspace.{section}",
                                    f"unknown section; expected one of {list(SECTIONS)}")
                self.workspace[section] = _object(entries, f"workspace.{section}")

    @classmethod
    def from_workspace_file(cls, path: str) -> "Loader":
        file = Path(path)
        return cls(_read_json(file, "workspace"), file.resolve().parent)

    @contextmanager
    def _based(self, base: Path) -> Iterator[None]:
        old, self.base = self.base, base
        try:
            yield
        finally:
            self.base = old

    def _deref(self, spec: Any, path: str, section: str,
               load: Callable[[Any, str], Any]) -> tuple[bool, Any]:
        """Handle the reference forms shared by every kind.  Returns
        ``(True, value)`` when ``spec`` was a reference and was loaded."""
        if not isinstance(spec, str):
            return False, None
        text = spec.strip()
        if text.startswith("@"):
            name = text[1:]
            entries = self.workspace.get(section, {})
            if name not in entries:
                raise SpecError(path, f"no {section} entry named {name!r} in the workspace")
            tag = f"{section}.{name}"
            if tag in self._active:
                chain = " -> ".join(self._active[self._active.index(tag):] + [tag])
                raise SpecError(path, f"reference cycle: {chain}")
            self._active.append(tag)
            try:
                return True, load(entries[name], f"workspace.{tag}")
            finally:
                self._active.pop()
        if text.startswith("{") or text.startswith("["):
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise SpecError(path, f"invalid inline JSON: {exc.msg} at column {exc.colno}") from None
            return True, load(doc, path)
        if text.startswith("builtin:") or text.startswith("derived:"):
            return False, None
        file = (self.base / text).resolve()
        doc = _read_json(file, path)
        with self._based(file.parent):
            return True, load(doc, f"{text}:$")

    # relations ---------------------------------------------------------------

    def relation(self, spec: Any, path: str = "$") -> StagedRelation:
        done, value = self._deref(spec, path, "relations", self.relation)
        if done:
            return value
        if isinstance(spec, str):
            text = spec.strip()
            if text.startswith("builtin:"):
                return self._builtin(text[len("builtin:"):], path)
            op, args = split_call(text[len("derived:"):], path)
            return self._derived_relation(op, args, path, inline=True)
        doc = _object(spec, path)
        kind = _kind(doc, path, ("builtin", "finite", "derived"))
        if kind == "builtin":
            return self._builtin(_field(doc, "name", path), f"{path}.name")
        if kind == "finite":
            return self._finite(doc, path)
        derivation = _field(doc, "derivation", path)
        return self._derived_relation(derivation, doc, path, inline=False)

    def _builtin(self, name: Any, path: str) -> StagedRelation:
        if name not in BUILTINS:
            raise SpecError(path, f"unknown built-in relation {name!r}; expected one of {sorted(BUILTINS)}")
        return builtin(name)

    def _finite(self, doc: dict, path: str) -> StagedRelation:
        entries = []
        for i, entry in enumerate(_list(_field(doc, "pairs", path), f"{path}.pairs")):
            where = f"{path}.pairs[{i}]"
            entry = _list(entry, where)
            if len(entry) not in (2, 3):
                raise SpecError(where, f"expected [a, b] or [a, b, stage], got {entry!r}")
            entries.append(tuple(_natural(v, f"{where}[{j}]") for j, v in enumerate(entry)))
        closure = doc.get("transitive_closure", False)
        if not isinstance(closure, bool):
            raise SpecError(f"{path}.transitive_closure", f"expected true or false, got {closure!r}")
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise SpecError(f"{path}.name", f"expected a string, got {name!r}")
        return finite_relation(entries, transitive_closure=closure, name=name)

    def _derived_relation(self, derivation: Any, source: Any, path: str, *, inline: bool) -> StagedRelation:
        """``source`` is the argument list of ``derived:OP(...)`` when
        ``inline``, otherwise the JSON object with an ``args`` list."""

        def args(count: Optional[int]) -> list[StagedRelation]:
            if inline:
                items, where = source, lambda i: f"{path}<arg {i}>"
            else:
                items = _list(_field(source, "args", path), f"{path}.args")
                where = lambda i: f"{path}.args[{i}]"
            if count is not None and len(items) != count:
                raise SpecError(path, f"{derivation} takes {count} relation(s), got {len(items)}")
            return [self.relation(item, where(i)) for i, item in enumerate(items)]

        if derivation == "product":
            return product_relation(*args(2))
        if derivation == "coproduct":
            return coproduct_relation(*args(2))
        if derivation == "coproduct-family":
            found = args(None)
            if not found:
                raise SpecError(path, "coproduct-family needs at least one relation")
            return coproduct_family(found)
        if derivation == "lower":
            return lower_relation(*args(1))
        if derivation == "upper":
            return upper_relation(*args(1))
        if derivation == "pi2":
            if inline:
                if len(source) != 2:
                    raise SpecError(path, f"pi2 takes a relation and a Pi2 code, got {len(source)} argument(s)")
                rel = self.relation(source[0], f"{path}<arg 0>")
                A = self.pi2(source[1], f"{path}<arg 1>")
            else:
                (rel,) = args(1)
                A = self.pi2(_field(source, "pi2", path), f"{path}.pi2")
            return pi2_subspace(rel, A)[0]
        if derivation == "ball":
            if inline:
                if len(source) != 1:
                    raise SpecError(path, f"ball takes one oracle, got {len(source)} argument(s)")
                return ball_relation(self.oracle(source[0], f"{path}<arg 0>"))
            return ball_relation(self.oracle(_field(source, "oracle", path), f"{path}.oracle"))
        known = ["product", "coproduct", "coproduct-family", "lower", "upper", "pi2", "ball"]
        raise SpecError(path if inline else f"{path}.derivation",
                        f"unknown derivation {derivation!r}; expected one of {known}")

    # oracles -----------------------------------------------------------------

    def oracle(self, spec: Any, path: str = "$") -> MetricOracle:
        done, value = self._deref(spec, path, "oracles", self.oracle)
        if done:
            return value
        if isinstance(spec, str):
            if spec.strip() in ("builtin:rationals", "rationals"):
                return rationals_oracle()
            raise SpecError(path, f"unknown oracle reference {spec!r}")
        doc = _object(spec, path)
        if _kind(doc, path, ("rationals", "interval-script")) == "rationals":
            return rationals_oracle()
        points = []
        for i, entry in enumerate(_list(_field(doc, "points", path), f"{path}.points")):
            where = f"{path}.points[{i}]"
            entry = _list(entry, where)
            if len(entry) != 3:
                raise SpecError(where, f"expected [a, b, c] for a + b*sqrt(c), got {entry!r}")
            points.append(QuadraticPoint(_rational(entry[0], f"{where}[0]"),
                                         _rational(entry[1], f"{where}[1]"),
                                         _natural(entry[2], f"{where}[2]")))
        try:
            M = IntervalOracle(points)
        except ValueError as exc:
            raise SpecError(f"{path}.points", str(exc)) from None
        M.key = canonical(M.spec())
        return M

    # Pi2 codes, triple sets, staged sets ---------------------------------------

    def pi2(self, spec: Any, path: str = "$") -> Pi2Code:
        done, value = self._deref(spec, path, "pi2", self.pi2)
        if done:
            return value
        doc = _object(spec, path)
        kind = _kind(doc, path, ("explicit", "equalizer", "x-conditions"))
        if kind == "explicit":
            pairs = []
            for i, item in enumerate(_list(_field(doc, "family", path), f"{path}.family")):
                where = f"{path}.family[{i}]"
                item = _object(item, where)
                pairs.append((_naturals(_field(item, "U", where), f"{where}.U"),
                              _naturals(_field(item, "V", where), f"{where}.V")))
            A = Pi2Code.explicit(pairs, name=doc.get("name", "") or "")
        elif kind == "equalizer":
            R = self.code(_field(doc, "first", path), f"{path}.first")
            S = self.code(_field(doc, "second", path), f"{path}.second")
            try:
                A = equalizer_pi2(R, S)
            except CodeMismatch as exc:
                raise SpecError(path, str(exc)) from None
        else:
            S = self.triples(_field(doc, "triples", path), f"{path}.triples")
            overt = doc.get("overt")
            E = None if overt is None else self.staged_set(overt, f"{path}.overt")
            A = x_pi2_code(S, E)
        return replace(A, key=canonical(A.spec))

    def triples(self, spec: Any, path: str = "$") -> TripleSet:
        done, value = self._deref(spec, path, "triples", self.triples)
        if done:
            return value
        if isinstance(spec, list):
            spec = {"kind": "triples", "triples": spec}
        doc = _object(spec, path)
        if _kind(doc, path, ("triples", "from-relation")) == "from-relation":
            return s_from_relation(self.relation(_field(doc, "relation", path), f"{path}.relation"))
        items = []
        for i, entry in enumerate(_list(_field(doc, "triples", path), f"{path}.triples")):
            where = f"{path}.triples[{i}]"
            values = _naturals(entry, where)
            if len(values) != 3:
                raise SpecError(where, f"expected [n, m, k], got {entry!r}")
            items.append(values)
        return TripleSet.of(items)

    def staged_set(self, spec: Any, path: str = "$") -> StagedSet:
        done, value = self._deref(spec, path, "sets", self.staged_set)
        if done:
            return value
        if isinstance(spec, list):
            return StagedSet.of(_naturals(spec, path))
        doc = _object(spec, path)
        _kind(doc, path, ("elements",))
        return StagedSet.of(_naturals(_field(doc, "elements", path), f"{path}.elements"))

    # codes -------------------------------------------------------------------

    def code(self, spec: Any, path: str = "$") -> FnCode:
        done, value = self._deref(spec, path, "codes", self.code)
        if done:
            return value
        if isinstance(spec, str):
            text = spec.strip()
            if not text.startswith("derived:"):
                raise SpecError(path, f"a code reference must start with derived:, got {spec!r}")
            op, args = split_call(text[len("derived:"):], path)
            return self._derived_code(op, args, path, inline=True)
        doc = _object(spec, path)
        kind = _kind(doc, path, ("pairs", "preimage-family", "composed", "derived"))
        if kind == "composed":
            R = self.code(_field(doc, "first", path), f"{path}.first")
            S = self.code(_field(doc, "second", path), f"{path}.second")
            try:
                return compose_codes(R, S)
            except CodeMismatch as exc:
                raise SpecError(path, str(exc)) from None
        if kind == "derived":
            return self._derived_code(_field(doc, "derivation", path), doc, path, inline=False)
        source = self.relation(_field(doc, "source", path), f"{path}.source")
        target = self.relation(_field(doc, "target", path), f"{path}.target")
        if kind == "pairs":
            pairs = []
            for i, entry in enumerate(_list(_field(doc, "pairs", path), f"{path}.pairs")):
                values = _naturals(entry, f"{path}.pairs[{i}]")
                if len(values) != 2:
                    raise SpecError(f"{path}.pairs[{i}]", f"expected [m, n], got {entry!r}")
                pairs.append((values[0], values[1]))
            return code_from_pairs(pairs, source, target)
        family = [_naturals(item, f"{path}.family[{i}]")
                  for i, item in enumerate(_list(_field(doc, "family", path), f"{path}.family"))]
        inverse: dict[int, list[int]] = {}
        for n, members in enumerate(family):
            for m in members:
                inverse.setdefault(m, []).append(n)
        U = StagedFamily.of(family, name="U")
        return code_from_preimage_family(
            U, source, target, inverse=lambda m, s: inverse.get(m, ()),
            spec={"kind": "preimage-family", "source": source.spec, "target": target.spec,
                  "family": family})

    def _derived_code(self, derivation: Any, source: Any, path: str, *, inline: bool) -> FnCode:
        def relations(count: int, field: str = "args") -> list[StagedRelation]:
            if inline:
                items, where = source, lambda i: f"{path}<arg {i}>"
            else:
                raw = _field(source, field, path)
                items = [raw] if field == "relation" else _list(raw, f"{path}.{field}")
                where = (lambda i: f"{path}.relation") if field == "relation" else (lambda i: f"{path}.{field}[{i}]")
            if len(items) != count:
                raise SpecError(path, f"{derivation} takes {count} relation(s), got {len(items)}")
            return [self.relation(item, where(i)) for i, item in enumerate(items)]

        if derivation == "identity":
            return identity_code(*relations(1, "relation"))
        pairwise = {"proj1": proj1_code, "proj2": proj2_code, "inj1": inj1_code, "inj2": inj2_code}
        if derivation in pairwise:
            return pairwise[derivation](*relations(2))
        if derivation in ("pi2-f", "pi2-g"):
            (sub,) = relations(1, "relation")
            base, A = self._pi2_parts(sub, path)
            _, f, g = pi2_subspace(base, A)
            return f if derivation == "pi2-f" else g
        if derivation == "constant":
            if inline:
                raise SpecError(path, "constant codes need the JSON form with source, target and values")
            src = self.relation(_field(source, "source", path), f"{path}.source")
            tgt = self.relation(_field(source, "target", path), f"{path}.target")
            return constant_code(src, tgt, _naturals(_field(source, "values", path), f"{path}.values"))
        if derivation == "compose" and inline:
            if len(source) != 2:
                raise SpecError(path, f"compose takes two codes, got {len(source)}")
            R = self.code(source[0], f"{path}<arg 0>")
            S = self.code(source[1], f"{path}<arg 1>")
            try:
                return compose_codes(R, S)
            except CodeMismatch as exc:
                raise SpecError(path, str(exc)) from None
        known = ["identity", "proj1", "proj2", "inj1", "inj2", "pi2-f", "pi2-g", "constant", "compose"]
        raise SpecError(path if inline else f"{path}.derivation",
                        f"unknown code derivation {derivation!r}; expected one of {known}")

    def _pi2_parts(self, sub: StagedRelation, path: str) -> tuple[StagedRelation, Pi2Code]:
        spec = sub.spec or {}
        if spec.get("derivation") != "pi2":
            raise SpecError(path, f"expected a pi2 subspace relation, got {sub.name}")
        return self.relation(spec["args"][0], path), self.pi2(spec["pi2"], path)

    # points ------------------------------------------------------------------

    def ideal(self, spec: Any, path: str = "$") -> IdealStream:
        done, value = self._deref(spec, path, "ideals", self.ideal)
        if done:
            return value
        doc = _object(spec, path)
        kind = _kind(doc, path, ("chain", "fingen", "enum-script", "cauchy", "apply", "pair",
                                 "f-lower", "f-upper"))
        if kind == "cauchy":
            return self._cauchy(doc, path)
        if kind == "apply":
            R = self.code(_field(doc, "code", path), f"{path}.code")
            I = self.ideal(_field(doc, "ideal", path), f"{path}.ideal")
            try:
                return apply_code(R, I)
            except CodeMismatch as exc:
                raise SpecError(path, str(exc)) from None
        if kind == "pair":
            return pair_ideals(self.ideal(_field(doc, "first", path), f"{path}.first"),
                               self.ideal(_field(doc, "second", path), f"{path}.second"))
        if kind in ("f-lower", "f-upper"):
            family = self.ideal_list(_field(doc, "family", path), f"{path}.family")
            rel = doc.get("relation")
            base = None if rel is None else self.relation(rel, f"{path}.relation")
            if not family and base is None:
                raise SpecError(path, "an empty family needs the ambient relation")
            if kind == "f-lower":
                return f_lower(family, rel=base)
            return f_upper(family, allow_empty=True, rel=base)

        data = _field(doc, "data", path)
        where = f"{path}.data"
        if kind == "chain" and isinstance(data, dict) and "cycle" in data:
            rel = doc.get("relation", "builtin:strict_prefix")
            if self.relation(rel, f"{path}.relation") != builtin("strict_prefix"):
                raise SpecError(f"{path}.relation", "a prefix/cycle chain lives over strict_prefix")
            prefix = _naturals(data.get("prefix", []), f"{where}.prefix")
            cycle = _naturals(data["cycle"], f"{where}.cycle")
            if not cycle:
                raise SpecError(f"{where}.cycle", "the cycle must be non-empty")
            return baire_point(prefix, cycle)
        rel = self.relation(_field(doc, "relation", path), f"{path}.relation")
        if kind == "chain":
            return ideal_from_chain(self._chain(rel, data, where))
        if kind == "fingen":
            if isinstance(data, list):
                data = {"generators": data}
            data = _object(data, where)
            gens = _naturals(_field(data, "generators", where), f"{where}.generators")
            reflexive = data.get("reflexive", False)
            if not isinstance(reflexive, bool):
                raise SpecError(f"{where}.reflexive", f"expected true or false, got {reflexive!r}")
            if not gens:
                raise SpecError(f"{where}.generators", "at least one generator is needed")
            if not rel.decidable:
                raise SpecError(f"{path}.relation", "fingen points need a decidable relation")
            return fingen(rel, gens, reflexive=reflexive)
        steps = _list(data, where)
        for i, step in enumerate(steps):
            if step is not None:
                _natural(step, f"{where}[{i}]")
        # null entries are idle steps
        I = raw_enumeration(rel, [s for s in steps if s is not None], label=f"script{steps}")
        I.enum = Enumeration(lambda: iter(list(steps)))
        return I

    def _chain(self, rel: StagedRelation, data: Any, where: str) -> Chain:
        if isinstance(data, list):
            data = {"elements": data}
        data = _object(data, where)
        if "elements" in data:
            items = _naturals(data["elements"], f"{where}.elements")
            if not items:
                raise SpecError(f"{where}.elements", "a chain needs at least one element")
            return Chain.eventually_constant(rel, items, label=f"{items}")
        if "start" in data or "step" in data:
            start = _natural(data.get("start", 0), f"{where}.start")
            step = _natural(data.get("step", 1), f"{where}.step")
            return Chain.from_function(rel, lambda i: start + i * step, label=f"{start}+{step}i")
        raise SpecError(where, "expected elements, start/step, or prefix/cycle")

    def _cauchy(self, doc: dict, path: str) -> IdealStream:
        M = self.oracle(_field(doc, "oracle", path), f"{path}.oracle")
        data = _object(_field(doc, "data", path), f"{path}.data")
        where = f"{path}.data"
        rationals = M.decidable and M.point_count is None
        seq: FastCauchy
        if "indices" in data:
            idx = _naturals(data["indices"], f"{where}.indices")
            if not idx:
                raise SpecError(f"{where}.indices", "a sequence needs at least one term")
            for i, n in enumerate(idx):
                if not M.valid(n):
                    raise SpecError(f"{where}.indices[{i}]", f"no point with index {n}")
            seq = FastCauchy(lambda i: idx[min(i, len(idx) - 1)], label=f"idx{idx}")
        elif not rationals:
            raise SpecError(where, "only index sequences are available for this oracle")
        elif "constant" in data:
            seq = constant_sequence(_rational(data["constant"], f"{where}.constant"))
        elif "sqrt" in data:
            seq = sqrt_sequence(_natural(data["sqrt"], f"{where}.sqrt"))
        elif "terms" in data:
            terms = [_rational(t, f"{where}.terms[{i}]")
                     for i, t in enumerate(_list(data["terms"], f"{where}.terms"))]
            if not terms:
                raise SpecError(f"{where}.terms", "a sequence needs at least one term")
            seq = rational_sequence(lambda i: terms[min(i, len(terms) - 1)],
                                    label=f"terms{[str(t) for t in terms]}")
        else:
            raise SpecError(where, "expected indices, constant, sqrt or terms")
        return ideal_from_cauchy(M, seq)

    def ideal_list(self, spec: Any, path: str = "$") -> list[IdealStream]:
        done, value = self._deref(spec, path, "ideals", self.ideal_list)
        if done:
            return value
        items = _list(spec, path)
        return [self.ideal(item, f"{path}[{i}]") for i, item in enumerate(items)]

    def point_index(self, M: MetricOracle, text: str, path: str) -> int:
        """A dense-point index from the command line: a rational for the
        rationals oracle (``7/5``), a plain index otherwise."""
        if M.point_count is None:
            return rational_index(_rational(text, path))
        try:
            value = int(text)
        except ValueError:
            raise SpecError(path, f"expected a point index, got {text!r}") from None
        if not M.valid(value) or value < 0:
            raise SpecError(path, f"no point with index {value}")
        return value


def _read_json(file: Path, path: str) -> Any:
    try:
        text = file.read_text()
    except OSError as exc:
        raise SpecError(path, f"cannot read {file}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(path, f"{file} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
