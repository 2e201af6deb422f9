"""The HTTP service: endpoints, error mapping, and response schemas."""

import json
from importlib import resources

import jsonschema
import pytest

from conftest import service_call


def load_schema(name):
    ref = resources.files("wordmap") / "jsonschemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def schema_registry():
    from referencing import Registry, Resource

    entries = []
    for ref in (resources.files("wordmap") / "jsonschemas").iterdir():
        schema = json.loads(ref.read_text())
        entries.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(entries)


def check(name, body):
    validator = jsonschema.Draft7Validator(
        load_schema(name), registry=schema_registry()
    )
    validator.validate(body)


# ---------------------------------------------------------------------------
# Happy paths

def test_healthz():
    status, body = service_call("GET", "/healthz")
    assert status == 200 and body == {"status": "ok"}


def test_catalog():
    status, body = service_call("GET", "/catalog")
    assert status == 200
    assert "Q8" in body["specs"] and "S4" in body["specs"]
    assert len(body["specs"]) == 14


def test_group_endpoint():
    status, body = service_call("POST", "/group", {"spec": "Q8"})
    assert status == 200
    assert body["order"] == 8
    assert body["exponent"] == 4
    assert body["nilpotent"] and not body["abelian"]
    assert body["center_size"] == 2 and body["derived_subgroup_size"] == 2
    assert sorted(body["element_orders"]) == [1, 2, 4, 4, 4, 4, 4, 4]
    check("group", body)


def test_dist_endpoint():
    status, body = service_call(
        "POST", "/dist", {"group": "Q8", "word": "[x,y]"}
    )
    assert status == 200
    assert body["counts"] == [40, 24, 0, 0, 0, 0, 0, 0]
    assert body["total"] == 64 and body["arity"] == 2
    assert body["surjective"] is False and body["uniform"] is False
    check("distribution", body)


def test_dist_with_padding_and_params():
    status, body = service_call(
        "POST", "/dist", {"group": "C6", "word": "x^2", "vars": 3}
    )
    assert status == 200 and body["total"] == 216
    status, body = service_call(
        "POST",
        "/dist",
        {"group": "Q8", "word": "g0 x g0^-1 x^-1", "params": [2]},
    )
    assert status == 200
    assert sum(body["counts"]) == 8
    check("distribution", body)


def test_distset_endpoint():
    status, body = service_call("POST", "/distset", {"group": "Q8", "vars": 2})
    assert status == 200
    assert body["map_count"] == 32
    assert body["distributions"] == [
        [8, 8, 8, 8, 8, 8, 8, 8],
        [16, 48, 0, 0, 0, 0, 0, 0],
        [40, 24, 0, 0, 0, 0, 0, 0],
        [64, 0, 0, 0, 0, 0, 0, 0],
    ]
    check("distset", body)


def test_witness_endpoint():
    status, body = service_call("POST", "/witness", {"group": "S3"})
    assert status == 200
    assert body["nilpotent"] is False
    assert body["word"] == "x1^-2 x2^-2 x1 x2 x1 x2 x1 x2"
    assert body["distribution"]["counts"][0] == 12
    check("witness", body)
    status, body = service_call("POST", "/witness", {"group": "C6"})
    assert status == 200
    assert body["nilpotent"] is True and body["word"] is None
    check("witness", body)


def test_check_endpoint_methods():
    for method, expected in [
        ("auto", False),
        ("oracle", False),
        ("dist1", False),
        ("dist2", False),
        ("witness", False),
    ]:
        status, body = service_call(
            "POST",
            "/check",
            {"group": "S3", "property": "nilpotent", "method": method},
        )
        assert status == 200 and body["verdict"] is expected, method
        check("check", body)
    status, body = service_call(
        "POST", "/check", {"group": "C6", "property": "abelian"}
    )
    assert status == 200 and body["verdict"] is True
    assert body["method"] == "dist2"  # what auto resolved to
    status, body = service_call(
        "POST", "/check", {"group": "Heis3", "property": "abelian"}
    )
    assert status == 200 and body["verdict"] is False


def test_compare_endpoint():
    status, body = service_call(
        "POST", "/compare", {"group1": "Q8", "group2": "D8", "vars": 2}
    )
    assert status == 200 and body["verdict"] == "different"
    check("compare", body)
    status, body = service_call(
        "POST", "/compare", {"group1": "Heis3", "group2": "C3xC3xC3", "vars": 1}
    )
    assert status == 200 and body["verdict"] == "equal"
    assert body["permutation"][0] == 0
    check("compare", body)


def test_sylow_endpoint():
    status, body = service_call(
        "POST", "/sylow", {"group": "C6", "prime": 2, "vars": 1}
    )
    assert status == 200
    assert body["parent_order"] == 6 and body["group_order"] == 2
    assert body["distributions"] == [[1, 1], [2, 0]]
    check("sylow", body)


def test_verify_endpoint_single():
    status, body = service_call(
        "POST", "/verify", {"theorem": "frobenius", "group": "S3"}
    )
    assert status == 200
    assert body["reports"][0]["verdict"] == "pass"
    check("verify", body)


def test_verify_endpoint_catalog():
    status, body = service_call(
        "POST", "/verify", {"theorem": "all", "samples": 2}
    )
    assert status == 200
    assert len(body["reports"]) >= 90
    assert all(r["verdict"] == "pass" for r in body["reports"])
    check("verify", body)


# ---------------------------------------------------------------------------
# Error mapping

def test_unknown_spec_maps_to_400():
    status, body = service_call("POST", "/group", {"spec": "NOPE"})
    assert status == 400
    assert body["error"] == "UnknownSpecError"
    check("error", body)


def test_word_syntax_maps_to_400():
    status, body = service_call("POST", "/dist", {"group": "C6", "word": "x^^"})
    assert status == 400
    assert body["error"] == "WordSyntaxError"
    assert "position" in body["message"]
    check("error", body)


def test_bad_method_maps_to_400():
    status, body = service_call(
        "POST",
        "/check",
        {"group": "C6", "property": "nilpotent", "method": "guess"},
    )
    assert status == 400 and body["error"] == "ValueError"


def test_cap_maps_to_413():
    status, body = service_call(
        "POST", "/distset", {"group": "S4", "vars": 2, "map_cap": 2000}
    )
    assert status == 413
    assert body["error"] == "CapExceededError"
    check("error", body)


def test_budget_maps_to_413():
    status, body = service_call(
        "POST",
        "/dist",
        {"group": "S4", "word": "x1 x2", "tuple_budget": 100},
    )
    assert status == 413 and body["error"] == "BudgetExceededError"


def test_validation_maps_to_422():
    status, _ = service_call("POST", "/dist", {"group": "C6"})  # no word
    assert status == 422
    status, _ = service_call(
        "POST", "/check", {"group": "C6", "property": "solvable"}
    )
    assert status == 422


def test_prime_not_dividing_maps_to_400():
    status, body = service_call(
        "POST", "/sylow", {"group": "C6", "prime": 5, "vars": 1}
    )
    assert status == 400 and body["error"] == "PrimeNotDividingError"


# ---------------------------------------------------------------------------
# Determinism

def test_identical_requests_give_identical_bodies():
    payload = {"group": "D8", "vars": 2}
    first = service_call("POST", "/distset", payload)
    second = service_call("POST", "/distset", payload)
    assert first == second
