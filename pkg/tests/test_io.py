import copy
import json

import pytest

from sacs import catalog, io
from sacs.errors import InputError


def doc(name="cp5"):
    return copy.deepcopy(io.to_dict(catalog.get(name)))


def test_round_trip_bit_identical(entries):
    for M in entries.values():
        text = io.serialize(M)
        again = io.serialize(io.parse(text))
        assert again == text
        assert text.endswith("\n")
        # canonical text is valid JSON whose keys follow the schema order
        assert list(json.loads(text)) == [k for k in io.TOP_KEYS if k in json.loads(text)]


def test_serialize_is_minimal(cp5):
    text = io.serialize(cp5)
    assert ", " not in text and ": " not in text
    assert '"products":[' in text


def test_parse_file(tmp_path, cp5):
    path = tmp_path / f"cp5{io.SUFFIX}"
    io.save(cp5, path)
    assert io.serialize(io.load(path)) == io.serialize(cp5)


def expect_error(d, path_fragment, reason_fragment=""):
    with pytest.raises(InputError) as exc:
        io.from_dict(d)
    assert path_fragment in exc.value.path
    assert reason_fragment in exc.value.reason
    return exc.value


def test_groups_length():
    d = doc()
    d["groups"] = d["groups"][:10]
    err = expect_error(d, "groups", "expected 11")
    assert str(err).startswith("groups")


def test_value_length_mismatch():
    d = doc("cp2xcp3")
    d["products"][0]["value"] = [1, 0, 0, 0]
    expect_error(d, "products[0].value", "length mismatch")


def test_missing_and_unknown_keys():
    d = doc()
    del d["orientation"]
    expect_error(d, "orientation", "missing")
    d = doc()
    d["extra"] = 1
    expect_error(d, "extra", "unknown")
    d = doc()
    del d["char"]["q1"]
    expect_error(d, "char.q1", "missing")


def test_torsion_rules():
    d = doc()
    d["groups"][4]["torsion"] = [1]
    expect_error(d, "groups[4].torsion[0]", "< 2")
    d = doc()
    d["groups"][4]["torsion"] = [4, 6]
    expect_error(d, "groups[4].torsion[1]", "divisib")


def test_product_rules():
    d = doc()
    p = d["products"][1]
    p["i"], p["j"], p["a"], p["b"] = p["j"], p["i"], p["b"], p["a"]
    expect_error(d, "products[1]", "i <= j")
    d = doc()
    d["products"].append(dict(d["products"][0]))
    expect_error(d, "products[6]", "twice")
    d = doc()
    d["products"][0]["a"] = "nope"
    expect_error(d, "products[0].a", "unknown label")
    d = doc()
    d["products"][0]["a"] = 3
    expect_error(d, "products[0].a", "out of range")
    d = doc()
    d["products"].append({"i": 4, "j": 8, "a": 0, "b": 0, "value": []})
    expect_error(d, "products[6]", "exceeds")


def test_w6_forms():
    d = doc()
    d["char"]["w6"] = "nonliftable"
    M = io.from_dict(d)
    assert not M.char.w6.liftable
    assert '"w6":"nonliftable"' in io.serialize(M)
    d["char"]["w6"] = "something"
    expect_error(d, "char.w6")


def test_bundle_rules():
    d = doc()
    d["bundles"].append(dict(d["bundles"][0]))
    expect_error(d, "bundles[3].name", "duplicate")
    d = doc()
    del d["bundles"][0]["w8lift"]
    expect_error(d, "bundles[0].w8lift", "missing")


def test_integer_checks():
    d = doc()
    d["char"]["c"] = [True]
    expect_error(d, "char.c[0]", "integer")
    d = doc()
    d["groups"][2]["free"] = -1
    expect_error(d, "groups[2].free", ">= 0")


def test_malformed_json_positions():
    with pytest.raises(InputError) as exc:
        io.parse('{\n  "name": "x",\n  "groups": [1,\n}')
    assert exc.value.line == 4
    assert exc.value.column is not None
    assert "line 4" in str(exc.value)


def test_labels_optional():
    d = doc()
    del d["basis_labels"]
    for p in d["products"]:
        p["a"], p["b"] = 0, 0
    M = io.from_dict(d)
    assert M.ring.labels is None
    assert io.serialize(io.parse(io.serialize(M))) == io.serialize(M)


def test_user_catalog(tmp_path, monkeypatch, cp5):
    user = cp5.replace(name="mine")
    io.save(user, tmp_path / "mine.m10")
    (tmp_path / "ignored.txt").write_text("not a manifold")
    monkeypatch.setenv(catalog.ENV_VAR, str(tmp_path))
    assert "mine" in catalog.catalog()
    assert catalog.get("mine").name == "mine"
    with pytest.raises(KeyError):
        catalog.get("absent")


def test_gadget_note(entries):
    assert "realizability" in entries["gadget_a"].note
