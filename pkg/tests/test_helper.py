import json
import math

import numpy as np
import pandas as pd
import pytest

from riesz_revolution.potential.energy import Configuration
from riesz_revolution.potential.geometry import Circle
from riesz_revolution.utils.helper import (CONFIGURATION_COLUMNS, get_resource_path, load_json, parse_point,
                                           read_configuration_csv, read_table_csv, round_significant,
                                           write_configuration_csv, write_json, write_table_csv)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1,0", (1.0, 0.0)),
        (" 0.5 , -1e-3 ", (0.5, -0.001)),
    ],
)
def test_parse_point(text, expected):
    assert parse_point(text) == expected


@pytest.mark.parametrize("text", ["1", "1,2,3", "a,b"])
def test_parse_point_invalid(text):
    with pytest.raises(ValueError):
        parse_point(text)


def test_round_significant():
    data = {"a": 1.0 / 3.0, "b": [np.float64(2.0) / 3.0, np.int64(4)], "c": np.bool_(True), "d": "text",
            "e": math.inf, "f": (0.1, None)}
    rounded = round_significant(data)
    assert rounded["a"] == 0.333333333333333
    assert rounded["b"] == [0.666666666666667, 4]
    assert type(rounded["b"][1]) is int
    assert rounded["c"] is True
    assert rounded["d"] == "text"
    assert rounded["e"] == math.inf
    assert rounded["f"] == [0.1, None]


def test_write_json(tmp_path):
    path = tmp_path / "report.json"
    write_json({"energy": 2.0 / 3.0, "n": 4}, path)
    assert load_json(path) == {"energy": 0.666666666666667, "n": 4}
    with open(path, "r", encoding="utf-8") as f:
        assert json.load(f)["n"] == 4


def test_table_csv_roundtrip_keeps_fifteen_digits(tmp_path):
    path = tmp_path / "table.csv"
    write_table_csv(pd.DataFrame({"x": [1.0 / 3.0, 2.5], "n": [1, 2]}), path)
    with open(path, "r", encoding="utf-8") as f:
        assert f.readline().strip() == "x,n"
        assert f.readline().strip() == "0.333333333333333,1"
    table = read_table_csv(path)
    assert table["x"].tolist() == [0.333333333333333, 2.5]


def test_configuration_csv(tmp_path):
    circle = Circle((2, 0), 1.0)
    config = Configuration.from_params(circle, [0.1, 0.4, 0.7])
    path = tmp_path / "points.csv"
    write_configuration_csv(config, path)
    table = read_configuration_csv(path)
    assert list(table.columns) == CONFIGURATION_COLUMNS
    assert table["index"].tolist() == [0, 1, 2]
    rebuilt = read_configuration_csv(path, curve=circle)
    np.testing.assert_allclose(rebuilt.points, config.points, rtol=1e-14)


def test_configuration_csv_wrong_header(tmp_path):
    path = tmp_path / "other.csv"
    write_table_csv(pd.DataFrame({"a": [1.0]}), path)
    with pytest.raises(ValueError):
        read_configuration_csv(path)


def test_get_resource_path():
    path = get_resource_path("experiments/levelset_ks_half.json")
    assert load_json(path)["kernel"] == {"variant": "ks", "s": 0.5}
    with pytest.raises(ValueError):
        get_resource_path()
    with pytest.raises(FileNotFoundError):
        get_resource_path("experiments/missing.json")
