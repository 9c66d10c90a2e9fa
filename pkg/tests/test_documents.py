import json
from pathlib import Path

import pytest

from nestlab import (
    DocumentError,
    JoinNotRepresentedError,
    parse_document,
    serialize_document,
)

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name):
    return (FIXTURES / f"{name}.json").read_text()


@pytest.mark.parametrize("name", [
    "triangular",
    "support",
    "decompose",
    "chain-continuous",
    "chain-step",
    "chain-pinf",
    "chain-offzero",
])
def test_round_trip_is_identity(name):
    text = fixture_text(name)
    assert serialize_document(parse_document(text)) == text


def test_parse_rejects_bad_json():
    with pytest.raises(DocumentError, match="line"):
        parse_document("{not json")


def test_parse_rejects_wrong_version():
    with pytest.raises(DocumentError, match="version"):
        parse_document(json.dumps({"version": "nestlab/0"}))
    with pytest.raises(DocumentError):
        parse_document(json.dumps({}))


def test_parse_rejects_unknown_fields():
    with pytest.raises(DocumentError, match="extra"):
        parse_document(json.dumps({"version": "nestlab/1", "extra": 1}))


def test_rationals_must_be_strings():
    doc = {
        "version": "nestlab/1",
        "ambient_dim": 2,
        "nest": [[[1, 0]]],
    }
    with pytest.raises(DocumentError, match="rationals are strings"):
        parse_document(json.dumps(doc))


def test_rational_strings_parse_exactly():
    doc = {
        "version": "nestlab/1",
        "ambient_dim": 2,
        "nest": [[["1/3", "-2"]]],
    }
    parsed = parse_document(json.dumps(doc))
    nest = parsed.require_nest()
    assert nest.element(1).contains_vector((1, -6))


def test_nest_and_chain_are_exclusive():
    doc = {
        "version": "nestlab/1",
        "ambient_dim": 2,
        "nest": [[["1", "0"]]],
        "chain": {"nodes": []},
    }
    with pytest.raises(DocumentError, match="not both"):
        parse_document(json.dumps(doc))


def test_left_limit_must_name_a_node():
    raw = json.loads(fixture_text("chain-continuous"))
    raw["abstract_fn"]["left_limit"]["A"] = "nowhere"
    with pytest.raises(JoinNotRepresentedError):
        parse_document(json.dumps(raw))


def test_value_table_must_cover_all_nodes():
    raw = json.loads(fixture_text("chain-pinf"))
    del raw["abstract_fn"]["value"]["A"]
    with pytest.raises(DocumentError, match="misses"):
        parse_document(json.dumps(raw))


def test_missing_sections_are_reported():
    doc = parse_document(fixture_text("triangular"))
    with pytest.raises(DocumentError, match="support_fn"):
        doc.require_support(doc.require_nest())
    with pytest.raises(DocumentError, match="chain"):
        doc.require_chain()
    with pytest.raises(DocumentError, match="target"):
        doc.matrices("target")


def test_operator_roles_parse_as_matrices():
    doc = parse_document(fixture_text("triangular"))
    (gen,) = doc.matrices("generators")
    assert gen.rows == gen.cols == 3
    assert gen.entries[0][2] == 1


def test_serialization_is_deterministic():
    text = fixture_text("decompose")
    doc = parse_document(text)
    assert serialize_document(doc) == serialize_document(parse_document(text))
