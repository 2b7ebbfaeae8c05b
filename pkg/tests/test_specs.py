import json

import pytest

from idealspaces import encoding as enc
from idealspaces.codes import apply_code
from idealspaces.ideal import equal_below, member, singleton
from idealspaces.relation import builtin
from idealspaces.specs import Loader, SpecError, canonical

L = Loader()


def test_builtin_forms():
    assert L.relation("builtin:less_than") == builtin("less_than")
    assert L.relation({"kind": "builtin", "name": "equality"}) == builtin("equality")


def test_derived_string_and_object_agree():
    a = L.relation("derived:product(builtin:equality,builtin:less_than)")
    b = L.relation({"kind": "derived", "derivation": "product",
                    "args": ["builtin:equality", "builtin:less_than"]})
    assert a == b
    assert a.holds_at(enc.pair_encode(3, 1), enc.pair_encode(3, 4), 0)


def test_relation_spec_reloads_to_equal_relation():
    for text in ("derived:lower(builtin:less_than)", "derived:coproduct(builtin:equality,builtin:strict_prefix)",
                 "derived:ball(builtin:rationals)"):
        rel = L.relation(text)
        again = L.relation(json.loads(json.dumps(rel.spec)))
        assert again == rel


def test_pi2_spec_reload():
    doc = {"kind": "derived", "derivation": "pi2", "args": ["builtin:equality"],
           "pi2": {"kind": "explicit", "family": [{"U": [0], "V": []}]}}
    r1, r2 = L.relation(doc), L.relation(json.loads(json.dumps(doc)))
    assert r1 == r2
    assert L.relation(r1.spec) == r1


def test_finite_relation_spec():
    rel = L.relation({"kind": "finite", "pairs": [[0, 1], [1, 2]], "transitive_closure": True})
    assert rel.holds_at(0, 2, 0)


def test_ideal_kinds():
    fin = L.ideal({"kind": "fingen", "relation": "builtin:equality", "data": [4]})
    assert member(fin, 4, 8) and not member(fin, 5, 256)
    script = L.ideal({"kind": "enum-script", "relation": "builtin:equality", "data": [None, 3, None]})
    assert script.elements(10) == [3]
    chain = L.ideal({"kind": "chain", "relation": "builtin:less_than", "data": {"start": 0, "step": 2}})
    assert all(member(chain, n, 256) for n in range(20))
    cauchy = L.ideal({"kind": "cauchy", "oracle": "builtin:rationals", "data": {"constant": "1/2"}})
    assert cauchy.rel == L.relation("derived:ball(builtin:rationals)")


def test_apply_spec():
    I = L.ideal({"kind": "apply", "code": {"kind": "derived", "derivation": "identity",
                                          "relation": "builtin:equality"},
                 "ideal": {"kind": "fingen", "relation": "builtin:equality", "data": [7]}})
    assert equal_below(I, singleton(7), 20, 256)


def test_code_spec_composed():
    c = L.code("derived:compose(" + json.dumps({"kind": "derived", "derivation": "identity",
                                                 "relation": "builtin:equality"}) + ","
               + json.dumps({"kind": "derived", "derivation": "constant", "source": "builtin:equality",
                             "target": "builtin:equality", "values": [2]}) + ")")
    assert equal_below(apply_code(c, singleton(5)), singleton(2), 10, 256)


def test_workspace_references(tmp_path):
    ws = {"relations": {"eq": "builtin:equality", "pair": "derived:product(@eq,@eq)"},
          "ideals": {"four": {"kind": "fingen", "relation": "@eq", "data": [4]}}}
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(ws))
    loader = Loader.from_workspace_file(str(path))
    assert loader.relation("@pair") == L.relation("derived:product(builtin:equality,builtin:equality)")
    assert member(loader.ideal("@four"), 4, 8)


def test_file_reference(tmp_path):
    (tmp_path / "rel.json").write_text(json.dumps({"kind": "builtin", "name": "less_than"}))
    # "rel.json" resolves next to the file that mentions it
    (tmp_path / "point.json").write_text(json.dumps({"kind": "fingen", "relation": "rel.json", "data": [0]}))
    I = L.ideal(str(tmp_path / "point.json"))
    assert I.rel == builtin("less_than")


def test_reference_cycle_detected():
    loader = Loader({"relations": {"a": "@b", "b": "@a"}})
    with pytest.raises(SpecError, match="cycle"):
        loader.relation("@a")


@pytest.mark.parametrize("spec,where", [
    ({"kind": "fingen", "relation": "builtin:equality", "data": {"generators": "x"}}, "data.generators"),
    ({"kind": "fingen", "relation": "builtin:nope", "data": [1]}, "relation"),
    ({"kind": "mystery"}, "kind"),
    ({"relation": "builtin:equality"}, "kind"),
])
def test_errors_name_the_json_path(spec, where):
    with pytest.raises(SpecError) as info:
        L.ideal(spec, "ideal")
    assert where in str(info.value)


def test_unknown_workspace_section():
    with pytest.raises(SpecError):
        Loader({"widgets": {}})


def test_canonical_is_order_independent():
    assert canonical({"b": 1, "a": [2, {"d": 3, "c": 4}]}) == canonical({"a": [2, {"c": 4, "d": 3}], "b": 1})
