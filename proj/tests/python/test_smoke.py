import json

import pytest

import paracos


def section(report, name):
    return next(s for s in report["sections"] if s["name"] == name)


def test_catalog_lists_entries():
    names = {e["name"] for e in paracos.catalog()}
    assert {"example_e", "warped_kenmotsu", "non_apc_control"} <= names


def test_catalog_source_round_trips():
    text = paracos.catalog_source("example_e")
    assert paracos.analyze(text)["sections"] == paracos.analyze("example_e")["sections"]


def test_example_e_triple():
    report = paracos.analyze("example_e")
    assert report["exit_code"] == 0
    values = section(report, "nullity")["values"]
    assert values["status"] == "exact"
    assert [values[k]["exact"] for k in ("kappa", "mu", "nu")] == ["0", "2", "-2"]
    assert section(report, "h_classification")["values"]["type"]["tag"] == "h1"


def test_point_option():
    report = paracos.analyze("example_e", point=["1/2", 3, 0])
    assert report["point"] == ["1/2", "3", "0"]


def test_verify_control():
    result = paracos.verify("non_apc_control")
    assert result["axioms_ok"] and not result["is_apc"]
    assert paracos.analyze("non_apc_control")["exit_code"] == 2


def test_deform_alpha_over_beta():
    outcome = paracos.deform("example_e", gamma=3, beta=2)
    assert section(outcome["deformed"], "alpha")["values"]["alpha"]["exact"] == "1/2"
    assert all(c["status"] == "pass" for c in outcome["laws"]["checks"])


def test_invalid_parameter_raises():
    with pytest.raises(paracos.ParameterError):
        paracos.deform("example_e", gamma=-1, beta=2)


def test_parse_error_raises():
    with pytest.raises(paracos.ParseError):
        paracos.simplify("x + * y", ["x", "y"])


def test_simplify_cancels():
    assert paracos.simplify("(x^2 - y^2)/(x - y)", ["x", "y"]) == paracos.simplify("x + y", ["x", "y"])


def test_json_is_deterministic():
    a = json.dumps(paracos.analyze("h3_complex"))
    b = json.dumps(paracos.analyze("h3_complex"))
    assert a == b
