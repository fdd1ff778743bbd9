import json

import numpy as np
import pytest

from mumeb.construct import family_cd, family_ckd
from mumeb.families import (SchemaError, family_from_dict, family_to_dict,
                            load_family, matrix_from_json, matrix_to_json,
                            save_family, save_report)
from mumeb.verify import certify_family


def test_matrix_json_round_trip():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    again = matrix_from_json(matrix_to_json(m), 4, "m")
    assert np.array_equal(again, m)  # doubles survive JSON exactly


def test_matrix_schema_errors():
    with pytest.raises(SchemaError, match="must have 2 rows"):
        matrix_from_json([[[1, 0]]], 2, "g")
    with pytest.raises(SchemaError, match="row 0 must have 2 entries"):
        matrix_from_json([[[1, 0]], [[1, 0], [0, 0]]], 2, "g")
    with pytest.raises(SchemaError, match=r"entry \(1,1\)"):
        matrix_from_json([[[1, 0], [0, 0]], [[0, 0], "x"]], 2, "g")
    with pytest.raises(SchemaError, match=r"entry \(0,0\)"):
        matrix_from_json([[[1, 0, 0], [0, 0]], [[0, 0], [1, 0]]], 2, "g")


def test_family_file_round_trip(tmp_path):
    fam = family_ckd(3, 4)
    path = tmp_path / "fam.json"
    save_family(fam, path)
    loaded = load_family(path)
    assert loaded.d == fam.d and loaded.k == fam.k
    assert loaded.labels() == fam.labels()
    assert loaded.ring == fam.ring
    assert loaded.metadata == fam.metadata
    for (_, a), (_, b) in zip(loaded.generators, fam.generators):
        assert np.array_equal(a, b)
    assert certify_family(loaded).passed


def test_saved_payload_is_deterministic(tmp_path):
    fam = family_cd(3)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_family(fam, p1)
    save_family(fam, p2, header_extra={"note": "different header"})
    d1, d2 = json.loads(p1.read_text()), json.loads(p2.read_text())
    d1.pop("header"), d2.pop("header")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_load_family_schema_errors(tmp_path):
    def roundtrip(mutate):
        doc = family_to_dict(family_cd(3))
        mutate(doc)
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        return path

    with pytest.raises(SchemaError, match="missing required key 'ring'"):
        load_family(roundtrip(lambda d: d.pop("ring")))
    with pytest.raises(SchemaError, match="d and k must be integers"):
        load_family(roundtrip(lambda d: d.update(d="3")))
    with pytest.raises(SchemaError, match="bad ring descriptor"):
        load_family(roundtrip(lambda d: d["ring"]["factors"][0].update(modulus=[2, 0, 1])))
    with pytest.raises(SchemaError, match="does not match d"):
        load_family(roundtrip(lambda d: d.update(d=5, k=1)))
    with pytest.raises(SchemaError, match="unique"):
        load_family(roundtrip(
            lambda d: d["generators"].__setitem__(1, dict(d["generators"][0]))))
    with pytest.raises(SchemaError, match="nonempty list"):
        load_family(roundtrip(lambda d: d.update(generators=[])))
    with pytest.raises(SchemaError, match="label and a matrix"):
        load_family(roundtrip(lambda d: d["generators"].__setitem__(0, {"label": "x"})))

    truncated = tmp_path / "trunc.json"
    truncated.write_text('{"d": 3, "k": 1, "ring"')
    with pytest.raises(SchemaError, match="not valid JSON"):
        load_family(truncated)
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2, 3]")
    with pytest.raises(SchemaError, match="top level"):
        load_family(arr)


def test_tampered_matrix_loads_then_fails_certification(tmp_path):
    doc = family_to_dict(family_cd(3))
    doc["generators"][2]["matrix"][0][0] = [5.0, 0.0]
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    fam = load_family(path)  # schema-valid, so this must not raise
    report = certify_family(fam)
    assert not report.passed
    assert report.generator_errors[0]["label"] == doc["generators"][2]["label"]


def test_save_report(tmp_path):
    report = certify_family(family_cd(3))
    path = tmp_path / "report.json"
    save_report(report, path)
    doc = json.loads(path.read_text())
    assert doc["passed"] is True
    assert doc["family_id"] == "gauss-dd-d3-k1"
    assert "wall_time_s" in doc["header"] and "wall_time_s" not in set(doc) - {"header"}
    assert len(doc["pairs"]) == 6 and len(doc["bases"]) == 4
    # the volatile fields all live in the header
    body = {k: v for k, v in doc.items() if k != "header"}
    again = tmp_path / "again.json"
    save_report(certify_family(family_cd(3)), again)
    body2 = {k: v for k, v in json.loads(again.read_text()).items() if k != "header"}
    assert json.dumps(body, sort_keys=True) == json.dumps(body2, sort_keys=True)
