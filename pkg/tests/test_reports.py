import json

import numpy as np
import pytest

from semigroup_lab.reports import (
    CLOSED_FORM,
    ORACLE,
    RunReport,
    inputs_digest,
    to_jsonable,
)
from semigroup_lab.truncation import mode_sup


def test_to_jsonable_handles_numpy_and_complex():
    data = {"z": 1 + 2j, "x": np.float64(0.5), "n": np.int64(3), "flag": np.bool_(True)}
    assert to_jsonable(data) == {"z": [1.0, 2.0], "x": 0.5, "n": 3, "flag": True}
    assert to_jsonable(np.array([1.0, 2.0])) == [1.0, 2.0]


def test_digest_ignores_key_order():
    assert inputs_digest({"a": 1, "b": 2}) == inputs_digest({"b": 2, "a": 1})
    assert inputs_digest({"a": 1}) != inputs_digest({"a": 2})


def test_mode_sup_output_records_truncation():
    report = RunReport("weiss", {"p": 2})
    report.add_output("K", mode_sup(np.arange(1.0, 101.0)))
    assert report.outputs["K"]["method"] == CLOSED_FORM
    assert report.truncation["K"]["growth"] == pytest.approx(10.0)
    assert report.warnings == ["K: supremum grows by 10 between n=10 and n=100"]


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        RunReport("x", {}).add_output("v", 1.0, method="guess")


def test_json_round_trip_fields():
    report = RunReport("decay", {"n_max": 10})
    report.add_output("value", 0.25, ORACLE)
    doc = json.loads(report.to_json())
    assert doc["status"] == "ok"
    assert doc["command"] == "decay"
    assert doc["outputs"]["value"] == {"value": 0.25, "method": "oracle"}
    assert doc["inputs_digest"] == inputs_digest({"n_max": 10})


def test_csv_has_scalar_rows_and_tables():
    report = RunReport("decay", {})
    report.add_output("value", 0.5)
    report.add_output("rows", [{"t": 1.0, "norm": 0.3}, {"t": 2.0, "norm": 0.1}])
    lines = report.to_csv().splitlines()
    assert lines[0] == "name,method,value"
    assert lines[1] == "value,closed-form,0.5"
    assert lines[3:6] == ["# rows", "t,norm", "1.0,0.3"]


def test_write_and_render(tmp_path):
    report = RunReport("spectrum show", {})
    path = report.write(tmp_path / "out")
    assert path.name == "spectrum_show.json"
    assert json.loads(path.read_text())["status"] == "ok"
    with pytest.raises(ValueError):
        report.render("xml")
