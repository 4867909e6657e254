import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, strategies as st

from taylorbiorth import biorth as bo
from taylorbiorth import derivagram as dg
from taylorbiorth.errors import ValidationError

GAUSS = bo.get_signal("gaussian")
LOG = bo.get_signal("logpulse")
SVG_NS = "{http://www.w3.org/2000/svg}"


def test_single_column_matches_energy_densities():
    d = dg.compute(GAUSS, [0.0], 10)
    de = bo.parseval_taylor(GAUSS, 0.0, 9).de
    assert np.allclose(d.column(0), de, rtol=1e-12, atol=0)
    assert all(d.values[n, 0] == 0.0 for n in range(1, 10, 2))


def test_grid_shape_and_column_sums():
    grid = dg.parse_grid("0.1:0.5:3")
    assert grid == pytest.approx([0.1, 0.3, 0.5])
    d = dg.compute(LOG, grid, 8)
    assert d.values.shape == (8, 3)
    sums = dg.column_sums(d)
    assert all(0 < s < 2 for s in sums)


def test_parse_grid_validation():
    assert dg.parse_grid("0:0:1") == [0.0]
    with pytest.raises(ValidationError):
        dg.parse_grid("0:1")
    with pytest.raises(ValidationError):
        dg.parse_grid("a:b:c")


def test_grid_outside_rc_rejected():
    with pytest.raises(ValidationError, match="grid point outside region of convergence"):
        dg.compute(LOG, [-0.5, 0.0, 0.5], 4)
    with pytest.raises(ValidationError):
        dg.compute(LOG, [0.0], 4)  # endpoint is not interior


def test_csv_round_trip_is_bit_exact(tmp_path):
    d = dg.compute(LOG, [0.1, 0.3, 0.5], 10)
    p = tmp_path / "d.csv"
    dg.render_csv(d, p)
    text = p.read_text()
    assert text.startswith("n,t0,DE\n") and "\r" not in text
    back = dg.read_csv(p, d.signal)
    assert back.grid == d.grid
    assert np.array_equal(back.values, d.values)


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=1, max_size=12))
def test_format_float_round_trips(values):
    assert all(float(dg.format_float(v)) == v for v in values)


def test_gray_levels_mapping():
    v = np.array([[-2.0, 0.0], [1.0, 2.0]])
    g = dg.gray_levels(v)
    assert g[0, 0] == 0 and g[1, 1] == dg.GRAY_LEVELS - 1
    assert g[0, 1] == round(2 / 4 * 1023)
    assert np.all(dg.gray_levels(np.full((3, 2), 7.0)) == 512)
    assert dg.gray_to_8bit(0) == 0 and dg.gray_to_8bit(1023) == 255 and dg.gray_to_8bit(512) == 128


@pytest.mark.parametrize("mode", ["graymap", "bargraph"])
def test_svg_is_well_formed(tmp_path, mode):
    d = dg.compute(GAUSS, [0.0], 10)
    p = tmp_path / f"{mode}.svg"
    dg.render_svg(d, p, mode)
    root = ET.parse(p).getroot()
    assert root.tag == f"{SVG_NS}svg" and root.get("version") == "1.1"
    rects = root.findall(f"{SVG_NS}rect")
    assert len(rects) == 10
    values = [float(r.get("data-value")) for r in rects]
    assert sorted(values) == sorted(d.column(0).tolist())


def test_svg_validation(tmp_path):
    d = dg.compute(GAUSS, [0.0], 3)
    with pytest.raises(ValidationError):
        dg.render_svg(d, tmp_path / "x.svg", "pie")
    with pytest.raises(ValidationError):
        dg.render_svg(d, tmp_path / "x.svg", "bargraph", column=4)
