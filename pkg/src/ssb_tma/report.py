"""Tabular and SVG output.

CSV: ``#`` metadata lines, a header, then rows. Floats are written with six
decimals, except columns marked exact, which use the shortest round-trip
representation so they can be read back bit for bit.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from . import __version__
from .errors import ConfigError
from .waveform import ModulationSchedule

TOOL = f"tma {__version__}"


def fmt6(x) -> str:
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        return "-inf" if x < 0 else ("inf" if x > 0 else "nan")
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _json_value(x, exact: bool):
    if isinstance(x, int):
        return x
    if not math.isfinite(x):
        return None
    if exact:
        return x
    return float(fmt6(x))


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]
    exact: set[str] = field(default_factory=set)

    def _cells(self, row):
        return [repr(float(v)) if c in self.exact else fmt6(v) for c, v in zip(self.columns, row)]

    def to_csv(self, meta: dict) -> str:
        buf = io.StringIO()
        for key, value in meta.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            buf.write(f"# {key}: {text}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow(self._cells(row))
        return buf.getvalue()

    def json_rows(self) -> list[list]:
        return [[_json_value(v, c in self.exact) for c, v in zip(self.columns, row)] for row in self.rows]


def render(table: Table, meta: dict, fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        return table.to_csv(meta)
    doc = {"meta": dict(meta, columns=table.columns), "rows": table.json_rows()}
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


TIMING_COLUMNS = ["element", "t1_s", "t2_s", "t3_s", "t4_s", "t1_frac", "t2_frac", "t3_frac", "t4_frac",
                  "tau_s", "period_s", "c1_deg", "c2_deg", "c3_deg", "c4_deg", "phase_m1_deg"]


def load_timings(path) -> list[ModulationSchedule]:
    """Read schedules back from ``tma schedule`` CSV output."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read timings {path}: {e}") from e
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.DictReader(lines)
    missing = {"t1_s", "t2_s", "t3_s", "t4_s", "tau_s", "period_s"} - set(reader.fieldnames or ())
    if missing:
        raise ConfigError(f"timings file lacks columns: {', '.join(sorted(missing))}")
    out = []
    for rec in reader:
        starts = tuple(float(rec[f"t{k}_s"]) for k in range(1, 5))
        states = tuple(
            cmath.rect(1.0, math.radians(float(rec[f"c{k}_deg"]))) if f"c{k}_deg" in rec else None
            for k in range(1, 5)
        )
        sched = ModulationSchedule(float(rec["period_s"]), float(rec["tau_s"]), starts)
        if None not in states:
            sched = ModulationSchedule(sched.period, sched.on_duration, starts, states)
        out.append(sched)
    if not out:
        raise ConfigError(f"timings file {path} has no rows")
    return out


# --- SVG -----------------------------------------------------------------

def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10)), key=lambda s: abs(span / s - target))
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 10))
        v += step
    return ticks


def svg_line_plot(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
    y_floor: float = -60.0,
    title: str = "",
    width: int = 720,
    height: int = 440,
) -> str:
    """Standalone SVG 1.1 line plot, one ``polyline`` per series.

    Values below ``y_floor`` are clamped to it.
    """
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"]
    left, right, top, bottom = 70, 20, 36, 56
    pw, ph = width - left - right, height - top - bottom
    xs = [float(x) for _, xv, _ in series for x in xv]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    y0, y1 = y_floor, 0.0
    ys = [max(float(y), y_floor) for _, _, yv in series for y in yv]
    if ys and max(ys) > y1:
        y1 = math.ceil(max(ys))

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - max(y, y_floor)) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for t in _nice_ticks(x0, x1):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" stroke="#dddddd"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="middle">{t:g}</text>')
    for t in _nice_ticks(y0, y1):
        y = py(t)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 14}" font-family="sans-serif" font-size="13" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.1f}" font-family="sans-serif" font-size="13" '
               f'text-anchor="middle" transform="rotate(-90 18 {top + ph / 2:.1f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{left + pw / 2:.1f}" y="22" font-family="sans-serif" font-size="14" '
                   f'text-anchor="middle">{escape(title)}</text>')
    for i, (label, xv, yv) in enumerate(series):
        color = colors[i % len(colors)]
        pts = " ".join(f"{px(float(x)):.2f},{py(float(y)):.2f}" for x, y in zip(xv, yv))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}">'
                   f'<title>{escape(label)}</title></polyline>')
        out.append(f'<text x="{left + pw - 6}" y="{top + 16 + 14 * i}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="end" fill="{color}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
