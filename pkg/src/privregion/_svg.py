"""Tiny self-contained SVG charts: one polyline plot, one histogram.

Deterministic output: fixed canvas, fixed palette, %.6g number formatting,
no timestamps. Good enough to eyeball experiment results; the CSVs next to
them are the authoritative record.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 64, 16, 40, 50
_PALETTE = ("#1f6feb", "#d1242f", "#2da44e", "#8250df")
_TEXT = "#24292f"
_GRID = "#d0d7de"


def _fmt(v: float) -> str:
    return format(float(v), ".6g")


class _Scale:
    def __init__(self, lo: float, hi: float, out_lo: float, out_hi: float, log: bool = False):
        self.log = log
        if log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi <= lo:
            hi = lo + 1.0
        pad = 0.05 * (hi - lo)
        self.lo, self.hi = lo - pad, hi + pad
        self.out_lo, self.out_hi = out_lo, out_hi

    def __call__(self, v: float) -> float:
        t = math.log10(v) if self.log else v
        frac = (t - self.lo) / (self.hi - self.lo)
        return self.out_lo + frac * (self.out_hi - self.out_lo)

    def ticks(self, k: int = 5) -> list[float]:
        ts = np.linspace(self.lo, self.hi, k)
        return [10.0**t if self.log else float(t) for t in ts]


def _finite(values) -> list[float]:
    return [float(v) for v in values if math.isfinite(float(v))]


def _axes(sx: _Scale, sy: _Scale, title: str, xlabel: str, ylabel: str) -> list[str]:
    parts = [
        f'<rect width="{_W}" height="{_H}" fill="#ffffff"/>',
        f'<text x="{_W / 2:g}" y="22" text-anchor="middle" fill="{_TEXT}" '
        f'font-size="15" font-family="sans-serif">{title}</text>',
        f'<text x="{(_ML + _W - _MR) / 2:g}" y="{_H - 10}" text-anchor="middle" '
        f'fill="{_TEXT}" font-size="12" font-family="sans-serif">{xlabel}</text>',
        f'<text x="16" y="{(_MT + _H - _MB) / 2:g}" text-anchor="middle" fill="{_TEXT}" '
        f'font-size="12" font-family="sans-serif" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:g})">{ylabel}</text>',
    ]
    for tv in sx.ticks():
        x = sx(tv)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MT}" x2="{x:.2f}" y2="{_H - _MB}" '
            f'stroke="{_GRID}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_H - _MB + 16}" text-anchor="middle" fill="{_TEXT}" '
            f'font-size="11" font-family="sans-serif">{_fmt(tv)}</text>'
        )
    for tv in sy.ticks():
        y = sy(tv)
        parts.append(
            f'<line x1="{_ML}" y1="{y:.2f}" x2="{_W - _MR}" y2="{y:.2f}" '
            f'stroke="{_GRID}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_ML - 6}" y="{y + 4:.2f}" text-anchor="end" fill="{_TEXT}" '
            f'font-size="11" font-family="sans-serif">{_fmt(tv)}</text>'
        )
    return parts


def _legend(labels: list[str]) -> list[str]:
    parts = []
    for i, label in enumerate(labels):
        y = _MT + 8 + 16 * i
        color = _PALETTE[i % len(_PALETTE)]
        parts.append(
            f'<line x1="{_W - _MR - 130}" y1="{y}" x2="{_W - _MR - 106}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 100}" y="{y + 4}" fill="{_TEXT}" font-size="11" '
            f'font-family="sans-serif">{label}</text>'
        )
    return parts


def _poly(xy: list[tuple[float, float]]) -> str:
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in xy)


def _write(path: Path, parts: list[str]) -> None:
    body = "\n".join(parts)
    path.write_text(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}">\n{body}\n</svg>\n',
        encoding="utf-8",
    )


def line_chart(path, title, xlabel, ylabel, series, bands=(), log_y=False) -> None:
    """series: (label, xs, ys) triples; bands: (label, xs, lo, hi) quadruples."""
    path = Path(path)
    all_x = _finite(x for _, xs, *_ in list(series) + list(bands) for x in xs)
    all_y = _finite(
        y
        for item in list(series) + list(bands)
        for col in item[2:]
        for y in np.atleast_1d(col)
    )
    if log_y:
        all_y = [y for y in all_y if y > 0]
    if not all_x or not all_y:
        raise ValueError("nothing finite to plot")
    sx = _Scale(min(all_x), max(all_x), _ML, _W - _MR)
    sy = _Scale(min(all_y), max(all_y), _H - _MB, _MT, log=log_y)
    parts = _axes(sx, sy, title, xlabel, ylabel)
    for i, (label, xs, lo, hi) in enumerate(bands):
        color = _PALETTE[i % len(_PALETTE)]
        ring = [(sx(x), sy(v)) for x, v in zip(xs, lo)]
        ring += [(sx(x), sy(v)) for x, v in zip(reversed(list(xs)), reversed(list(hi)))]
        parts.append(f'<polygon points="{_poly(ring)}" fill="{color}" fill-opacity="0.15"/>')
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = [(sx(x), sy(y)) for x, y in zip(xs, ys)]
        parts.append(
            f'<polyline points="{_poly(pts)}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
    parts += _legend([label for label, *_ in series])
    _write(path, parts)


def histogram_chart(path, title, xlabel, hists) -> None:
    """hists: (label, edges, densities) triples drawn as step outlines."""
    path = Path(path)
    all_x = _finite(x for _, edges, _ in hists for x in edges)
    all_y = _finite(y for _, _, dens in hists for y in dens)
    if not all_x or not all_y:
        raise ValueError("nothing finite to plot")
    sx = _Scale(min(all_x), max(all_x), _ML, _W - _MR)
    sy = _Scale(0.0, max(all_y), _H - _MB, _MT)
    parts = _axes(sx, sy, title, xlabel, "density")
    for i, (label, edges, dens) in enumerate(hists):
        color = _PALETTE[i % len(_PALETTE)]
        pts = [(sx(edges[0]), sy(0.0))]
        for j, d in enumerate(dens):
            pts.append((sx(edges[j]), sy(d)))
            pts.append((sx(edges[j + 1]), sy(d)))
        pts.append((sx(edges[-1]), sy(0.0)))
        parts.append(
            f'<polyline points="{_poly(pts)}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    parts += _legend([label for label, *_ in hists])
    _write(path, parts)
