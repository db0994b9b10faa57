import json

import pytest

import qaut


def test_cli_roundtrip(tmp_path):
    code, out = qaut.run(["corpus", str(tmp_path)])
    assert code == 0
    assert len(json.loads(out)["written"]) == 7

    code, out = qaut.run(["check", str(tmp_path / "i2.json")])
    assert code == 0
    report = json.loads(out)
    assert report["homogeneous"] and report["normalized"] and report["positive"]

    code, out = qaut.run(["check", str(tmp_path / "missing.json")])
    assert code == 2


def test_fixtures_and_measure():
    assert "i2" in qaut.fixture_names()
    i2 = qaut.fixture("i2")["blocks"]
    code, report = qaut.check(i2)
    assert code == 0
    assert report["positive"]

    fq2 = qaut.fixture("fq2")["blocks"]
    code, report = qaut.qparam(fq2)
    assert code == 0
    assert report["q_candidates"]["exact"]
    assert report["class"]["kind"] == "Generic"


def test_rewriting_pipeline():
    i2 = qaut.fixture("i2")["blocks"]
    code, report = qaut.confluence(i2, i2)
    assert code == 0
    assert report["status"] == "Resolved"
    assert report["ambiguity_count"] == 1105

    code, report = qaut.hilbert(i2, i2, max_deg=3)
    assert code == 0
    assert report["degrees"] == [1, 9, 25, 49]

    code, report = qaut.certify_nonzero(i2, i2)
    assert code == 0
    assert report["status"] == "Certificate"

    code, report = qaut.hopf_axioms(i2, i2, i2, i2)
    assert code == 0
    assert report["all_passed"]


def test_fusion_rules():
    code, report = qaut.fusion("W2*W3")
    assert code == 0
    assert report["dim_total"] == 35
    assert [t["label"] for t in report["terms"]] == ["W1", "W2", "W3", "W4", "W5"]

    code, report = qaut.fusion("W1*W1@even:N1=2")
    assert code == 1
    assert report["error"]["code"] == "NotDetermined"

    with pytest.raises(ValueError):
        qaut.fusion("Q3")


def test_pairing_suite():
    quaternion = qaut.fixture("quaternion")
    code, report = qaut.verify_relations(quaternion)
    assert code == 0
    assert report["all_passed"]
    assert len(report["checks"]) == 21

    code, report = qaut.fold(quaternion)
    assert code == 0
    assert report["associative"]
    assert report["phi_positive"]
    assert report["separability"]["multiplies_to_unit"]

    broken = qaut.fixture("quaternion")
    broken["tau"] = "5"
    code, report = qaut.verify_relations(broken)
    assert code == 1
