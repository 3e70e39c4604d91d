import json

from wcpx.fields import QQ
from wcpx.linmaps import LinMap, identity, shape
from wcpx.reporting import (ANCHORS, Report, emit, equality_record,
                            predicate_record, skipped_record)


def test_empty_report_serialization():
    doc = json.loads(emit(Report(), "0.1.0", "sha256:0"))
    assert doc["checks"] == []
    assert doc["summary"] == {"fail": 0, "pass": 0}
    assert doc["version"] == "0.1.0"
    assert doc["input_digest"] == "sha256:0"


def test_passing_record_has_no_witness():
    report = Report()
    report.add(equality_record("wcp.twisted", identity(QQ, 2), identity(QQ, 2)))
    doc = json.loads(emit(report, "0.1.0", "sha256:0"))
    (record,) = doc["checks"]
    assert record["status"] == "pass"
    assert "witness" not in record
    assert doc["summary"] == {"fail": 0, "pass": 1}


def test_failing_record_carries_anchor_and_witness():
    lhs = LinMap.from_dict(QQ, shape(2, 2), shape(2,), {(0, 0): 1})
    rhs = LinMap.from_dict(QQ, shape(2, 2), shape(2,), {(0, 3): 1})
    report = Report()
    report.add(equality_record("wcp.twisted", lhs, rhs))
    doc = json.loads(emit(report, "0.1.0", "sha256:0"))
    (record,) = doc["checks"]
    assert record["anchor"] == ANCHORS["wcp.twisted"] == "twisted condition"
    assert record["status"] == "fail"
    assert record["witness"]["source_index"] == [1, 1]   # 1-based in files
    assert record["witness"]["target_index"] == [1]
    assert {record["witness"]["left"], record["witness"]["right"]} == {"0", "1"}


def test_serialization_is_deterministic_and_sorted():
    report = Report()
    report.add(predicate_record("partial.thm_twisted_equiv", True, note="x"))
    report.add(skipped_record("unified.thm_twisted_forward", note="y"))
    report.facts["z"] = 1
    report.facts["a"] = 2
    one = emit(report, "0.1.0", "sha256:0")
    two = emit(report, "0.1.0", "sha256:0")
    assert one == two
    doc = json.loads(one)
    assert list(doc.keys()) == sorted(doc.keys())
    assert doc["summary"] == {"fail": 0, "pass": 1, "skipped": 1}


def test_every_anchor_is_unique_per_check():
    assert len(ANCHORS) == len(set(ANCHORS))
    assert all(isinstance(v, str) and v for v in ANCHORS.values())
