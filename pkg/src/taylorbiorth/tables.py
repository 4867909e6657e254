"""Plain CSV tables with an optional ``#key,value`` footer.

Floats are written with 17 significant digits so that reading a table back
reproduces every double bit for bit.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Sequence, TextIO


def fmt(x) -> str:
    if isinstance(x, bool) or isinstance(x, int):
        return str(x)
    if x is None:
        return ""
    return format(float(x), ".17g")


def write_table(fh: TextIO, header: Sequence[str], rows: Iterable[Sequence],
                footer: Sequence[tuple[str, object]] = ()) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    for key, value in footer:
        w.writerow([f"#{key}", fmt(value)])


def table_to_string(header, rows, footer=()) -> str:
    buf = io.StringIO()
    write_table(buf, header, rows, footer)
    return buf.getvalue()


def parse_table(text: str) -> tuple[list[str], list[list[float]], dict[str, float]]:
    """Inverse of :func:`write_table`: header, numeric rows, footer dict."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows: list[list[float]] = []
    footer: dict[str, float] = {}
    for rec in reader:
        if not rec:
            continue
        if rec[0].startswith("#"):
            footer[rec[0][1:]] = float(rec[1]) if rec[1] else float("nan")
        else:
            rows.append([float(v) if v else float("nan") for v in rec])
    return header, rows, footer


def read_table(path: str | Path):
    return parse_table(Path(path).read_text(encoding="utf-8"))
