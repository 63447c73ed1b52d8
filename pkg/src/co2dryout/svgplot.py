"""Bare-bones static SVG charts: axes, tick labels, points and an optional polyline."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from html import escape

WIDTH, HEIGHT = 480, 360
MARGIN = 56


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


@dataclass
class Chart:
    title: str
    xlabel: str
    ylabel: str
    series: list = field(default_factory=list)

    def add(self, xs, ys, line: bool = False, color: str = "#1f4e79") -> "Chart":
        pts = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
        self.series.append((pts, line, color))
        return self

    def render(self) -> str:
        pts = [p for s, _, _ in self.series for p in s]
        xs = [p[0] for p in pts] or [0.0, 1.0]
        ys = [p[1] for p in pts] or [0.0, 1.0]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        pad_x = 0.05 * (x1 - x0) or 0.5
        pad_y = 0.05 * (y1 - y0) or 0.5
        x0, x1, y0, y1 = x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y
        pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

        def sx(x):
            return MARGIN + (x - x0) / (x1 - x0) * pw

        def sy(y):
            return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph

        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
               f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
               f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
               f'<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
        for t in _nice_ticks(x0, x1):
            X = sx(t)
            out.append(f'<line x1="{X:.2f}" y1="{HEIGHT - MARGIN}" x2="{X:.2f}" y2="{HEIGHT - MARGIN + 4}" stroke="black"/>')
            out.append(f'<text x="{X:.2f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle">{t:g}</text>')
        for t in _nice_ticks(y0, y1):
            Y = sy(t)
            out.append(f'<line x1="{MARGIN - 4}" y1="{Y:.2f}" x2="{MARGIN}" y2="{Y:.2f}" stroke="black"/>')
            out.append(f'<text x="{MARGIN - 6}" y="{Y + 4:.2f}" text-anchor="end">{t:g}</text>')
        if y0 < 0 < y1:
            out.append(f'<line x1="{MARGIN}" y1="{sy(0):.2f}" x2="{WIDTH - MARGIN}" y2="{sy(0):.2f}" '
                       f'stroke="#999" stroke-dasharray="3,3"/>')
        for s, line, color in self.series:
            if line and len(s) > 1:
                path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s)
                out.append(f'<polyline points="{path}" fill="none" stroke="{color}"/>')
            for x, y in s:
                out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}"/>')
        out.append(f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" text-anchor="middle" font-size="13">{escape(self.title)}</text>')
        out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(self.xlabel)}</text>')
        out.append(f'<text x="14" y="{HEIGHT / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 14 {HEIGHT / 2})">{escape(self.ylabel)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())
