import json
import pathlib

import pytest

import mmsplit


@pytest.fixture(scope="module")
def model():
    path = pathlib.Path(__file__).resolve().parents[2] / "models" / "fintech.model"
    return mmsplit.load_model(str(path))


def test_load_and_validate(model):
    assert model.name == "fintech"
    assert mmsplit.validate_model(model) == []


def test_decompose_shape(model):
    result = mmsplit.decompose(model)
    assert [c.context_id for c in result.contexts] == [
        "customer-onboard",
        "loan",
        "transactions",
    ]
    names = [s.name for c in result.contexts for s in c.services]
    assert len(names) == 11
    assert "Loan Management Service" in names
    assert "Support Service" in names
    assert [d.code for d in result.diagnostics] == ["table_id_collision"]


def test_evidence_witnesses(model):
    result = mmsplit.decompose(model)
    loan = result.contexts[1]
    mgmt = next(s for s in loan.services if s.name == "Loan Management Service")
    assert [e.witness for e in mgmt.trace] == [
        ("LC", "LPP", "TLC"),
        ("LIP", "LV", "TLI"),
    ]


def test_summary_and_recommendations(model):
    summary = json.loads(mmsplit.summary_json(model))
    assert summary["name"] == "fintech"
    assert len(summary["recommendations"]) == 28

    result = mmsplit.decompose(model)
    recs = json.loads(mmsplit.recommendations_json(model, result))
    kinds = {r["kind"] for r in recs["recommendations"]}
    assert kinds == {"aggregator", "gateway_route", "acl", "protocol"}


def test_round_trip(model):
    canon = mmsplit.canonicalize(model)
    text = mmsplit.serialize_model(canon)
    again = mmsplit.parse_model(text)
    assert mmsplit.serialize_model(again) == text


def test_dot_outputs(model):
    assert mmsplit.dfd_dot(model).startswith("digraph dfd {")
    assert "digraph architecture {" in mmsplit.architecture_dot(model)
    assert "MERGE loan_plans+loans" in mmsplit.merge_trace(model)


def test_parse_error():
    with pytest.raises(mmsplit.ParseError):
        mmsplit.parse_model("{not json")
