"""Tests for the text, JSON, and SVG rendering helpers."""

import json
import math

import pytest

from ranklash.export import (
    format_number,
    render_csv,
    render_json,
    round_floats,
    write_text,
)


def test_format_number_twelve_significant_digits():
    assert format_number(0.1) == "0.1"
    assert format_number(1.0 / 3.0) == "0.333333333333"
    assert format_number(1234567.89) == "1234567.89"
    assert format_number(True) == "1"
    assert format_number(False) == "0"
    assert format_number(3) == "3"


def test_render_csv_shape():
    text = render_csv(["a", "b"], [[1, 0.5], [2, 1.0 / 3.0]])
    assert text == "a,b\n1,0.5\n2,0.333333333333\n"
    assert "\r" not in text


def test_round_floats_recurses_and_keeps_non_finite():
    data = {"x": [1.0 / 3.0, {"y": 2.0 / 3.0}], "inf": math.inf, "s": "keep"}
    rounded = round_floats(data)
    assert rounded["x"][0] == float("0.333333333333")
    assert rounded["x"][1]["y"] == float("0.666666666667")
    assert rounded["inf"] == math.inf
    assert rounded["s"] == "keep"


def test_render_json_structure():
    text = render_json({"tool": "ranklash"}, {"v": 1.0 / 3.0})
    doc = json.loads(text)
    assert doc["meta"]["tool"] == "ranklash"
    assert doc["data"]["v"] == 0.333333333333


def test_write_text_replaces_atomically(tmp_path):
    target = tmp_path / "out.txt"
    write_text(str(target), "first\n")
    write_text(str(target), "second\n")
    assert target.read_text() == "second\n"
    leftovers = [p for p in tmp_path.iterdir() if p.name != "out.txt"]
    assert leftovers == []


def test_write_text_reports_requested_path(tmp_path):
    missing = tmp_path / "no-dir" / "out.txt"
    with pytest.raises(OSError) as err:
        write_text(str(missing), "text\n")
    assert str(missing) in str(err.value)
