"""Minimal SVG line plots on logarithmic axes.

Written by hand so output is byte-for-byte reproducible; the only
nondeterministic content is the optional timestamp comment.
"""

from __future__ import annotations

import math
from datetime import datetime, timezone
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 190, 30, 60

COLORS = {
    "closed_general": "#1f77b4",
    "phenomenological": "#d62728",
    "closed_weak": "#2ca02c",
    "quadrature": "#9467bd",
    "ode_oracle": "#ff7f0e",
}


def _decades(lo, hi):
    return list(range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1))


class _LogAxis:
    def __init__(self, lo, hi, pix_lo, pix_hi, log=True):
        self.log = log
        if log:
            d = _decades(lo, hi)
            lo, hi = 10.0 ** d[0], 10.0 ** d[-1]
        elif hi == lo:
            hi = lo + 1.0
        self.lo, self.hi = lo, hi
        self.pix_lo, self.pix_hi = pix_lo, pix_hi

    def __call__(self, x):
        if self.log:
            f = (np.log10(x) - math.log10(self.lo)) / (math.log10(self.hi) - math.log10(self.lo))
        else:
            f = (np.asarray(x) - self.lo) / (self.hi - self.lo)
        return self.pix_lo + f * (self.pix_hi - self.pix_lo)

    def ticks(self):
        if self.log:
            step = max(1, len(_decades(self.lo, self.hi)) // 8)
            return [10.0 ** d for d in _decades(self.lo, self.hi)[::step]]
        return list(np.linspace(self.lo, self.hi, 6))


def _label(v, log):
    if log:
        return f"1e{int(round(math.log10(v)))}"
    return f"{v:.3g}"


def line_plot(x, curves, *, xlabel, ylabel, title="", hline=None, hline_label=None,
              log_x=True, timestamp=False):
    """Render ``curves`` ({label: y array}) against ``x`` as an SVG document.

    Nonpositive points are dropped on log axes.  ``hline`` draws a dashed
    horizontal reference line.
    """
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in curves.items()}
    pos = np.concatenate([v[(v > 0) & np.isfinite(v)] for v in ys.values()] + [np.array([hline] if hline else [])])
    if pos.size == 0:
        pos = np.array([1e-3, 1.0])
    y_lo, y_hi = float(pos.min()), float(pos.max())
    y_lo = max(y_lo, y_hi * 1e-16)
    xs = x[x > 0] if log_x else x
    ax = _LogAxis(float(xs.min()), float(xs.max()), LEFT, WIDTH - RIGHT, log=log_x)
    ay = _LogAxis(y_lo, y_hi, HEIGHT - BOTTOM, TOP, log=True)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">']
    if timestamp:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.append(f"<!-- generated {stamp} -->")
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    x0, x1 = LEFT, WIDTH - RIGHT
    y0, y1 = HEIGHT - BOTTOM, TOP
    out.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for tv in ax.ticks():
        px = float(ax(tv))
        out.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{y0 + 20}" text-anchor="middle">{_label(tv, log_x)}</text>')
    for tv in ay.ticks():
        py = float(ay(tv))
        out.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<line x1="{x0}" y1="{py:.2f}" x2="{x1}" y2="{py:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end">{_label(tv, True)}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {(y0 + y1) / 2:.1f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{(x0 + x1) / 2:.1f}" y="18" text-anchor="middle">{escape(title)}</text>')

    out.append(f'<clipPath id="plot"><rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}"/></clipPath>')
    legend = []
    for i, (name, y) in enumerate(ys.items()):
        keep = (y > 0) & np.isfinite(y) & ((x > 0) if log_x else True)
        if not np.any(keep):
            continue
        pts = " ".join(f"{float(ax(a)):.2f},{float(ay(b)):.2f}" for a, b in zip(x[keep], y[keep]))
        color = COLORS.get(name, "#333333")
        out.append(f'<polyline clip-path="url(#plot)" fill="none" stroke="{color}" '
                   f'stroke-width="1.8" points="{pts}"/>')
        legend.append((name, color, ""))
    if hline:
        py = float(ay(hline))
        out.append(f'<line x1="{x0}" y1="{py:.2f}" x2="{x1}" y2="{py:.2f}" stroke="black" '
                   f'stroke-dasharray="6,4"/>')
        legend.append((hline_label or "asymptote", "black", ' stroke-dasharray="6,4"'))
    for i, (name, color, dash) in enumerate(legend):
        ly = TOP + 15 + 20 * i
        out.append(f'<line x1="{x1 + 15}" y1="{ly}" x2="{x1 + 45}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="1.8"{dash}/>')
        out.append(f'<text x="{x1 + 52}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
