"""Parameter-grid scans reproducing the qubit figure data.

Each preset returns a :class:`ScanTable`; the CLI only formats it.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import groupby

import numpy as np

from .channels import apply, make_channel
from .exceptions import UnknownFigure
from .measures import as_measure, c_tsallis
from .ordering import Monotonicity, classify_sequence
from .states import BlochVector, from_bloch

CSV_DIGITS = 12

FIG1_ALPHAS = (0.25, 0.75, 1.5)
FIG1_NZ = (0.25, 0.5, 0.75)

# figure id -> (channel, measure, outer axis); the outer axis is held fixed per row block
CHANNEL_FIGURES = {
    "fig2": ("adc", "rel", "n_z"),
    "fig3": ("adc", "alpha2", "n_z"),
    "fig4": ("adc", "rel", "t"),
    "fig5": ("adc", "alpha2", "t"),
    "fig6": ("pdc", "rel", "n_z"),
    "fig7": ("pdc", "alpha2", "n_z"),
}
FIGURES = ("fig1",) + tuple(CHANNEL_FIGURES)


@dataclass
class ScanTable:
    """Grid rows; the trailing ``value_columns`` hold measured values.

    Grid coordinates are written with ``repr`` so that a re-read row
    recomputes bit-identically; values use ``CSV_DIGITS`` significant digits.
    """

    columns: list
    rows: list
    value_columns: int = 1

    def column(self, name) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        split = len(self.columns) - self.value_columns
        for row in self.rows:
            w.writerow([format_coord(v) for v in row[:split]] + [format_cell(v) for v in row[split:]])
        return buf.getvalue()


def format_cell(v) -> str:
    if isinstance(v, str):
        return v
    return format(float(v), f".{CSV_DIGITS}g")


def format_coord(v) -> str:
    return v if isinstance(v, str) else repr(float(v))


def read_csv(text: str) -> ScanTable:
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    rows = []
    for raw in reader:
        row = []
        for cell in raw:
            try:
                row.append(float(cell))
            except ValueError:
                row.append(cell)
        rows.append(tuple(row))
    return ScanTable(columns, rows)


def qubit_state(t: float, n_z: float) -> np.ndarray:
    return from_bloch(BlochVector.from_nz(t, n_z))


def scan_fig1(points: int = 50, alphas=FIG1_ALPHAS, n_zs=FIG1_NZ) -> ScanTable:
    ts = np.linspace(0.0, 1.0, points)
    rows = [(a, nz, t, c_tsallis(qubit_state(t, nz), a)) for a in alphas for nz in n_zs for t in ts]
    return ScanTable(["alpha", "n_z", "t", "C_alpha"], rows)


def scan_channel(channel: str, measure, p: float = 0.5, points: int = 50, outer: str = "n_z",
                 t_range=(0.0, 1.0), nz_range=(-1.0, 1.0)) -> ScanTable:
    """``measure(channel(rho(t, n_z)))`` over a ``points x points`` grid.

    Rows are grouped by the ``outer`` axis, so each block is a curve along
    the other axis.
    """
    ch = make_channel(channel, p)
    m = as_measure(measure)
    ts = np.linspace(*t_range, points)
    nzs = np.linspace(*nz_range, points)
    if outer == "n_z":
        grid = [(t, nz) for nz in nzs for t in ts]
        cols = ["n_z", "t"]
    elif outer == "t":
        grid = [(t, nz) for t in ts for nz in nzs]
        cols = ["t", "n_z"]
    else:
        raise ValueError(f"outer axis must be 't' or 'n_z', got {outer!r}")
    rows = []
    for t, nz in grid:
        v = m(apply(ch, qubit_state(t, nz)))
        rows.append((ch.name, ch.p, nz, t, v) if outer == "n_z" else (ch.name, ch.p, t, nz, v))
    return ScanTable(["channel", "p"] + cols + [m.label], rows)


def scan_figure(figure: str, points: int = 50, p: float = 0.5) -> ScanTable:
    figure = figure.lower()
    if figure == "fig1":
        return scan_fig1(points)
    if figure not in CHANNEL_FIGURES:
        raise UnknownFigure(f"unknown figure {figure!r}; expected one of {', '.join(FIGURES)}")
    channel, measure, outer = CHANNEL_FIGURES[figure]
    return scan_channel(channel, measure, p, points, outer)


def curve_monotonicity(table: ScanTable, group_cols, axis: str, value: str | None = None,
                       tol: float = 1e-10) -> dict:
    """Classify each curve (rows sharing ``group_cols``) along ``axis``."""
    value = table.columns[-1] if value is None else value
    gi = [table.columns.index(c) for c in group_cols]
    xi, vi = table.columns.index(axis), table.columns.index(value)
    out: dict[tuple, Monotonicity] = {}
    keyf = lambda r: tuple(r[i] for i in gi)  # noqa: E731
    for key, rows in groupby(sorted(table.rows, key=keyf), key=keyf):
        rows = sorted(rows, key=lambda r: r[xi])
        out[key] = classify_sequence([r[xi] for r in rows], [r[vi] for r in rows], tol)
    return out
