import numpy as np
import pytest

from cohorder.channels import apply, make_channel
from cohorder.exceptions import UnknownFigure
from cohorder.measures import as_measure, c_tsallis
from cohorder.scans import curve_monotonicity, qubit_state, read_csv, scan_channel, scan_fig1, scan_figure


def test_fig1_shape_and_monotone():
    table = scan_fig1(20)
    assert table.columns == ["alpha", "n_z", "t", "C_alpha"]
    assert len(table.rows) == 9 * 20
    curves = curve_monotonicity(table, ["alpha", "n_z"], "t")
    assert len(curves) == 9
    assert all(m.kind == "increasing" for m in curves.values())


def test_channel_scan_layout():
    table = scan_channel("adc", "rel", 0.5, 10, outer="t")
    assert table.columns == ["channel", "p", "t", "n_z", "C_r"]
    assert len(table.rows) == 100
    with pytest.raises(ValueError):
        scan_channel("adc", "rel", 0.5, 10, outer="p")


def test_unknown_figure():
    with pytest.raises(UnknownFigure):
        scan_figure("fig9")


def test_csv_round_trip_recomputes_cells():
    table = scan_figure("fig3", points=8)
    parsed = read_csv(table.to_csv())
    assert parsed.columns == table.columns
    m = as_measure("alpha2")
    ch = make_channel("adc", 0.5)
    for row in parsed.rows[::7]:
        _, p, nz, t, value = row
        assert p == 0.5
        recomputed = m(apply(ch, qubit_state(t, nz)))
        assert float(format(recomputed, ".12g")) == value


def test_fig1_cell_recompute():
    parsed = read_csv(scan_fig1(5).to_csv())
    a, nz, t, v = parsed.rows[13]
    assert float(format(c_tsallis(qubit_state(t, nz), a), ".12g")) == v


def test_csv_twelve_significant_digits():
    text = scan_fig1(5).to_csv().splitlines()
    cells = [c for line in text[1:] for c in line.split(",")]
    digits = [len(c.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) for c in cells]
    assert max(digits) <= 12


def test_scan_grid_values():
    table = scan_channel("pdc", "l1", 0.5, 5)
    nz = table.column("n_z")
    np.testing.assert_allclose(np.unique(nz), np.linspace(-1, 1, 5))
