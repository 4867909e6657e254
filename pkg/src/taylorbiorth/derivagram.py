"""Derivagrams: Taylor energy densities over derivative level and base point.

``values[n][i] = f^(n)(t0_i) * f^(n~)(t0_i) / n!`` for ``n = 0..levels-1``.
Output formats are a long CSV (``n,t0,DE``) and SVG, either as a 1024-level
gray map of the whole matrix or as a signed bar graph of one column.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .biorth import Signal, energy_densities
from .errors import ValidationError
from .quad import DEFAULT_TOL

GRAY_LEVELS = 1024
CSV_HEADER = ("n", "t0", "DE")


@dataclass(frozen=True, eq=False)
class Derivagram:
    signal: str
    levels: int
    grid: tuple[float, ...]
    values: np.ndarray  # shape (levels, len(grid))

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(self.levels, len(self.grid))
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))

    def column(self, i: int) -> np.ndarray:
        return self.values[:, i]


def compute(s: Signal, grid: Sequence[float], levels: int, tol: float = DEFAULT_TOL,
            *, max_order: int | None = None) -> Derivagram:
    """Derivagram of ``s`` at every base point of ``grid``.

    Every grid point must lie strictly inside ``s.rc``.
    """
    if levels < 1:
        raise ValidationError(f"levels must be >= 1, got {levels}")
    grid = [float(t) for t in grid]
    for t0 in grid:
        if not s.rc.contains_interior(t0):
            raise ValidationError(
                f"grid point outside region of convergence: t0={t0!r} not inside {s.rc} for {s.name!r}"
            )
    values = np.zeros((levels, len(grid)))
    for i, t0 in enumerate(grid):
        values[:, i] = energy_densities(s, t0, levels - 1, tol, max_order=max_order)[2]
    return Derivagram(s.name, levels, tuple(grid), values)


def parse_grid(text: str) -> list[float]:
    """``lo:hi:steps`` -> ``steps`` evenly spaced points (``steps=1`` gives ``[lo]``)."""
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise ValidationError(f"grid must look like lo:hi:steps, got {text!r}") from None
    if n < 0:
        raise ValidationError(f"grid steps must be >= 0, got {n}")
    if n == 1:
        return [lo]
    return [float(x) for x in np.linspace(lo, hi, n)]


# --------------------------------------------------------------------------
# CSV
# --------------------------------------------------------------------------

def format_float(x: float) -> str:
    return format(float(x), ".17g")


def render_csv(d: Derivagram, path: str | Path) -> None:
    """Long-format CSV, one row per cell, 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for i, t0 in enumerate(d.grid):
            for n in range(d.levels):
                w.writerow((n, format_float(t0), format_float(d.values[n, i])))


def read_csv(path: str | Path, signal: str = "") -> Derivagram:
    """Inverse of :func:`render_csv`."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValidationError(f"{path}: missing header {','.join(CSV_HEADER)}")
    grid: list[float] = []
    cells: dict[tuple[int, int], float] = {}
    for n_s, t_s, v_s in rows[1:]:
        t0 = float(t_s)
        if t0 not in grid:
            grid.append(t0)
        cells[(int(n_s), grid.index(t0))] = float(v_s)
    levels = 1 + max((n for n, _ in cells), default=-1)
    values = np.zeros((levels, len(grid)))
    for (n, i), v in cells.items():
        values[n, i] = v
    return Derivagram(signal, levels, tuple(grid), values)


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

def gray_levels(values: np.ndarray) -> np.ndarray:
    """Map signed values linearly onto 0..1023 over the global [min, max].

    A constant matrix maps to the middle level 512.
    """
    v = np.asarray(values, dtype=float)
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi == lo:
        return np.full(v.shape, GRAY_LEVELS // 2, dtype=int)
    scaled = (v - lo) / (hi - lo) * (GRAY_LEVELS - 1)
    return np.clip(np.rint(scaled), 0, GRAY_LEVELS - 1).astype(int)


def gray_to_8bit(level: int) -> int:
    return int(round(level * 255 / (GRAY_LEVELS - 1)))


def _svg_document(width: float, height: float, body: list[str], title: str) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:g}" height="{height:g}" viewBox="0 0 {width:g} {height:g}">\n'
        f"<title>{escape(title)}</title>\n"
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _graymap_svg(d: Derivagram) -> str:
    cell_w, cell_h = 40.0, 24.0
    margin = 50.0
    rows, cols = d.values.shape
    width = margin + cols * cell_w + 10
    height = 30 + rows * cell_h + 40
    levels = gray_levels(d.values)
    body = []
    for n in range(rows):
        # level 0 at the bottom, like a spectrogram's lowest frequency
        y = 30 + (rows - 1 - n) * cell_h
        body.append(
            f'<text x="{margin - 6:g}" y="{y + cell_h * 0.65:g}" font-size="11" '
            f'text-anchor="end">{n}</text>'
        )
        for i in range(cols):
            g = gray_to_8bit(int(levels[n, i]))
            body.append(
                f'<rect x="{margin + i * cell_w:g}" y="{y:g}" width="{cell_w:g}" '
                f'height="{cell_h:g}" fill="rgb({g},{g},{g})" '
                f'data-level="{int(levels[n, i])}" data-value="{format_float(d.values[n, i])}"/>'
            )
    base_y = 30 + rows * cell_h
    for i, t0 in enumerate(d.grid):
        body.append(
            f'<text x="{margin + (i + 0.5) * cell_w:g}" y="{base_y + 14:g}" font-size="10" '
            f'text-anchor="middle">{t0:.3g}</text>'
        )
    body.append(f'<text x="{margin:g}" y="18" font-size="12">DE(n, t0): {escape(d.signal)}</text>')
    return _svg_document(width, height, body, f"derivagram of {d.signal}")


def _bargraph_svg(d: Derivagram, column: int) -> str:
    col = d.column(column)
    bar_w, gap = 30.0, 8.0
    margin = 50.0
    plot_h = 240.0
    width = margin + d.levels * (bar_w + gap) + 20
    height = plot_h + 80
    top = 30.0
    scale = float(np.max(np.abs(col))) if col.size else 0.0
    axis_y = top + plot_h / 2
    body = [
        f'<line x1="{margin:g}" y1="{axis_y:g}" x2="{width - 10:g}" y2="{axis_y:g}" '
        f'stroke="black" stroke-width="1"/>'
    ]
    for n, v in enumerate(col):
        h = 0.0 if scale == 0 else abs(v) / scale * (plot_h / 2)
        x = margin + n * (bar_w + gap)
        y = axis_y - h if v >= 0 else axis_y
        fill = "rgb(64,64,64)" if v >= 0 else "rgb(176,176,176)"
        body.append(
            f'<rect x="{x:g}" y="{y:g}" width="{bar_w:g}" height="{h:g}" fill="{fill}" '
            f'data-n="{n}" data-value="{format_float(v)}"/>'
        )
        body.append(
            f'<text x="{x + bar_w / 2:g}" y="{top + plot_h + 16:g}" font-size="10" '
            f'text-anchor="middle">{n}</text>'
        )
    t0 = d.grid[column]
    body.append(
        f'<text x="{margin:g}" y="18" font-size="12">DE(n) of {escape(d.signal)} at t0={t0:g}</text>'
    )
    return _svg_document(width, height, body, f"derivagram bar graph of {d.signal}")


def render_svg(d: Derivagram, path: str | Path, mode: str = "graymap", column: int = 0) -> None:
    """Write an SVG 1.1 rendering; ``mode`` is ``"graymap"`` or ``"bargraph"``."""
    if d.values.size == 0:
        raise ValidationError("cannot render an empty derivagram")
    if mode == "graymap":
        text = _graymap_svg(d)
    elif mode == "bargraph":
        if not 0 <= column < len(d.grid):
            raise ValidationError(f"column {column} outside 0..{len(d.grid) - 1}")
        text = _bargraph_svg(d, column)
    else:
        raise ValidationError(f"unknown SVG mode {mode!r}")
    Path(path).write_text(text, encoding="utf-8")


def column_sums(d: Derivagram) -> list[float]:
    return [math.fsum(d.values[:, i]) for i in range(len(d.grid))]
