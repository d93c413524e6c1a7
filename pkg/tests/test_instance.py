from __future__ import annotations

import json

import pytest

from pact import (InstanceError, ValidationError, fixture_dict,
                  fixture_names, load_fixture, parse_instance)


def test_all_bundled_fixtures_parse():
    for name in fixture_names():
        inst = load_fixture(name)
        assert inst.id == name


def test_parse_accepts_text_and_dict(tmp_path):
    doc = fixture_dict("z2-pair")
    from_dict = parse_instance(doc)
    from_text = parse_instance(json.dumps(doc))
    assert from_dict.pa == from_text.pa
    path = tmp_path / "z2-pair.json"
    path.write_text(json.dumps(doc))
    from_path = parse_instance(path)
    assert from_path.pa == from_dict.pa


def test_domain_point_error_location():
    doc = fixture_dict("z2-pair")
    doc["partial_action"]["domains"]["1"] = ["zz"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "partial_action.domains.1"


def test_unknown_group_element_in_domains():
    doc = fixture_dict("z2-pair")
    doc["partial_action"]["domains"]["7"] = ["a"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "partial_action.domains.7"


def test_theta_defined_off_domain_is_semantic_error():
    doc = fixture_dict("z2-pair")
    doc["partial_action"]["maps"]["1"] = {"a": "a", "b": "b"}
    with pytest.raises(ValidationError) as err:
        parse_instance(doc)
    assert err.value.axiom == "theta-domain"


def test_non_homomorphic_embedding_rejected():
    doc = fixture_dict("z4-from-z2-pair")
    doc["k_embedding"] = {"0": "0", "1": "1"}
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "k_embedding"


def test_embedding_needs_big_group_and_injectivity():
    doc = fixture_dict("z4-from-z2-pair")
    del doc["big_group"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "k_embedding"

    doc2 = fixture_dict("z4-from-z2-pair")
    doc2["k_embedding"] = {"0": "0", "1": "0"}
    with pytest.raises(InstanceError):
        parse_instance(doc2)


def test_big_group_without_embedding_needs_literal_subgroup():
    doc = fixture_dict("z2-pair")
    doc["big_group"] = {
        "elements": ["0", "1", "2", "3"],
        "table": [["0", "1", "2", "3"], ["1", "2", "3", "0"],
                  ["2", "3", "0", "1"], ["3", "0", "1", "2"]],
        "identity": "0",
    }
    # Z2 = {0,1} is not a literal subgroup of Z4 (1+1 = 2 there)
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "big_group"


def test_embedded_action_lives_in_big_group():
    inst = load_fixture("z4-from-z2-pair")
    assert inst.pa.group.elements == ("0", "1")
    assert inst.embedded_pa.group.elements == ("0", "2")
    assert inst.big.elements == ("0", "1", "2", "3")
    assert inst.embedded_pa.domains["2"] == frozenset({"a"})


def test_identity_defaults_and_missing_elements():
    doc = {
        "id": "tiny",
        "group": {"elements": ["0", "1"],
                  "table": [["0", "1"], ["1", "0"]], "identity": "0"},
        "space": {"points": ["p"], "min_open": {"p": ["p"]}},
        "partial_action": {"domains": {}, "maps": {}},
    }
    inst = parse_instance(doc)
    assert inst.pa.domains["0"] == frozenset({"p"})
    assert inst.pa.domains["1"] == frozenset()


def test_unknown_top_level_and_group_keys():
    doc = fixture_dict("pt")
    doc["extra"] = 1
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "extra"

    doc2 = fixture_dict("pt")
    doc2["group"]["order"] = 2
    with pytest.raises(InstanceError) as err:
        parse_instance(doc2)
    assert err.value.location == "group.order"


def test_subgroups_and_named_maps_resolve():
    inst = load_fixture("z4-arcs")
    assert sorted(inst.subgroups["H"].members) == ["0", "2"]
    sub = inst.embedded_subgroup("H")
    assert sub.members == frozenset({"0", "2"})
    wedge = load_fixture("z2-wedge")
    assert wedge.named_maps["const-w"].as_dict() == {"w": "w", "a": "w", "b": "w"}
    with pytest.raises(InstanceError):
        inst.embedded_subgroup("missing")


def test_bad_subgroup_block_rejected():
    doc = fixture_dict("z4-arcs")
    doc["subgroups"]["bad"] = ["0", "1"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "subgroups.bad"


def test_invalid_json_reports_location():
    with pytest.raises(InstanceError) as err:
        parse_instance("{not json")
    assert err.value.location == "$"


def test_min_open_for_unknown_point_rejected():
    doc = fixture_dict("pt")
    doc["space"]["min_open"]["ghost"] = ["x"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == "space.min_open.ghost"
