import json
import math

from pydantic import BaseModel

from saw_solver import Boundary
from utils.output import csv_cell, format_float, render_json, write_csv


class _Result(BaseModel):
    velocity_m_s: float
    boundary: Boundary
    converged: bool


def test_float_format():
    assert format_float(3488.0) == "3.488000000e+03"
    assert format_float(-2.5e-12) == "-2.500000000e-12"
    assert format_float(math.inf) == "inf"
    assert format_float(-math.inf) == "-inf"
    assert format_float(math.nan) == "nan"


def test_render_json_layout():
    document = {
        "b": 1.5,
        "a": [1, 2.0],
        "flag": True,
        "missing": None,
        "empty": {},
        "v_pi_V": math.inf,
    }
    assert render_json(document) == (
        "{\n"
        '  "b": 1.500000000e+00,\n'
        '  "a": [\n'
        "    1,\n"
        "    2.000000000e+00\n"
        "  ],\n"
        '  "flag": true,\n'
        '  "missing": null,\n'
        '  "empty": {},\n'
        '  "v_pi_V": "inf"\n'
        "}\n"
    )


def test_render_json_is_valid_json():
    text = render_json({"outer": {"x": 0.1, "y": [math.nan]}})
    parsed = json.loads(text)
    assert parsed["outer"]["x"] == 0.1
    assert parsed["outer"]["y"] == ["nan"]


def test_render_model_keeps_field_order():
    text = render_json(_Result(velocity_m_s=3488.0, boundary="free", converged=False))
    assert list(json.loads(text)) == ["velocity_m_s", "boundary", "converged"]
    assert '"boundary": "free"' in text
    assert '"converged": false' in text


def test_csv_rows_keep_order(tmp_path):
    path = write_csv(
        tmp_path / "sweep.csv",
        ["z_offset_m", "v_pi_V"],
        [(2e-6, 17.0), (-1e-6, math.inf), (0.0, 16.1)],
    )
    assert path.read_text("utf-8") == (
        "z_offset_m,v_pi_V\n"
        "2.000000000e-06,1.700000000e+01\n"
        "-1.000000000e-06,inf\n"
        "0.000000000e+00,1.610000000e+01\n"
    )


def test_csv_cell_leaves_text_alone():
    assert csv_cell("free") == "free"
    assert csv_cell(3) == "3"
