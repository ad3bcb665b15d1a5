"""Tests for deterministic JSON / CSV rendering."""

import json
from dataclasses import dataclass

import numpy as np

from jointri.checks import Severity
from jointri.exporter import render_csv, render_json, round_sig, to_jsonable, write_output


@dataclass
class _Sample:
    name: str
    value: float


class TestRounding:
    def test_significant_digits(self):
        assert round_sig(1 / 3, 4) == 0.3333
        assert round_sig(123456.789, 3) == 123000.0

    def test_zero_and_non_finite(self):
        assert round_sig(0.0) == 0.0
        assert np.isinf(round_sig(float("inf")))


class TestJsonable:
    def test_complex_becomes_pair(self):
        assert to_jsonable(1 + 2j) == [1.0, 2.0]

    def test_real_valued_complex_array(self):
        assert to_jsonable(np.array([1 + 0j, 2 + 0j])) == [1.0, 2.0]

    def test_nan_becomes_string(self):
        assert to_jsonable(float("nan")) == "nan"

    def test_numpy_scalars(self):
        assert to_jsonable(np.int64(3)) == 3
        assert to_jsonable(np.bool_(True)) is True

    def test_enum_and_dataclass(self):
        assert to_jsonable(Severity.ERROR) == "ERROR"
        assert to_jsonable(_Sample("a", 0.5)) == {"name": "a", "value": 0.5}


class TestRender:
    def test_json_is_sorted_and_terminated(self):
        text = render_json({"b": 1, "a": np.array([0.1, 0.2])})
        assert text.endswith("\n")
        assert list(json.loads(text)) == ["a", "b"]

    def test_json_deterministic(self):
        payload = {"x": np.linspace(0, 1, 5), "z": 1 / 7}
        assert render_json(payload) == render_json(payload)

    def test_csv_columns(self):
        rows = [{"gamma": 0.0, "sdr1_db": 20.0, "sdr2_db": 6.98970004336, "scheme": "outer bound"}]
        text = render_csv(rows)
        assert text == "gamma,sdr1_db,sdr2_db,scheme\n0.0,20.0,6.98970004336,outer bound\n"

    def test_csv_missing_cell(self):
        assert render_csv([{"gamma": 1.0}], columns=("gamma", "scheme")) == "gamma,scheme\n1.0,\n"

    def test_write_output(self, tmp_path):
        path = write_output("x\n", tmp_path / "nested" / "out.json")
        assert path.read_bytes() == b"x\n"
