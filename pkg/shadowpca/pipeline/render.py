# shadowpca/pipeline/render.py
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from shadowpca.core.errors import EmptyDatasetError, ShadowPcaError

RENDER_KINDS = ("line", "ternary-heatmap", "grid-heatmap", "covariance-heatmap", "scatter")

WIDTH, HEIGHT = 640, 480
MARGIN = 60
SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

# Sequential scale anchors (dark purple -> teal -> yellow)
_SEQ = [(0.267, 0.005, 0.329), (0.229, 0.322, 0.546), (0.128, 0.567, 0.551), (0.369, 0.789, 0.383), (0.993, 0.906, 0.144)]
# Diverging scale anchors (blue -> white -> red)
_DIV = [(0.230, 0.299, 0.754), (0.865, 0.865, 0.865), (0.706, 0.016, 0.150)]


def _interp(anchors, t: float) -> str:
    t = min(1.0, max(0.0, t)) if math.isfinite(t) else 0.0
    pos = t * (len(anchors) - 1)
    i = min(int(pos), len(anchors) - 2)
    f = pos - i
    rgb = [a + (b - a) * f for a, b in zip(anchors[i], anchors[i + 1])]
    return "#" + "".join(f"{int(round(255 * c)):02x}" for c in rgb)


def sequential_color(t: float) -> str:
    return _interp(_SEQ, t)


def diverging_color(t: float) -> str:
    """t in [-1, 1]; 0 is neutral."""
    return _interp(_DIV, 0.5 * (t + 1.0))


class SVG:
    """Minimal string-building SVG document."""

    def __init__(self, width: int = WIDTH, height: int = HEIGHT):
        self.width = width
        self.height = height
        self.svg = (
            f'<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            f'xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        )

    def group_start(self, cls: str, title: str | None = None) -> None:
        self.svg += f'<g class="{cls}">\n'
        if title:
            self.svg += f"<title>{escape(title)}</title>\n"

    def group_end(self) -> None:
        self.svg += "</g>\n"

    def rect(self, x: float, y: float, w: float, h: float, fill: str, cls: str = "", title: str = "") -> None:
        c = f' class="{cls}"' if cls else ""
        t = f"<title>{escape(title)}</title>" if title else ""
        self.svg += f'<rect{c} x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{fill}">{t}</rect>\n'

    def polygon(self, pts: Sequence[Tuple[float, float]], fill: str, cls: str = "", title: str = "") -> None:
        c = f' class="{cls}"' if cls else ""
        t = f"<title>{escape(title)}</title>" if title else ""
        p = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        self.svg += f'<polygon{c} points="{p}" fill="{fill}">{t}</polygon>\n'

    def polyline(self, pts: Sequence[Tuple[float, float]], stroke: str, cls: str = "series") -> None:
        p = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        self.svg += f'<polyline class="{cls}" points="{p}" fill="none" stroke="{stroke}" stroke-width="1.5"/>\n'

    def circle(self, x: float, y: float, r: float, fill: str, cls: str = "point") -> None:
        self.svg += f'<circle class="{cls}" cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{fill}"/>\n'

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = "black") -> None:
        self.svg += f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}"/>\n'

    def text(self, x: float, y: float, s: str, *, anchor: str = "middle", size: int = 12) -> None:
        self.svg += (
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(s)}</text>\n'
        )

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


# ---------------------------------------------------------------------------
# Shared pieces
# ---------------------------------------------------------------------------

def _finite_range(values: np.ndarray) -> Tuple[float, float]:
    v = values[np.isfinite(values)]
    if v.size == 0:
        raise EmptyDatasetError("Nothing to render: no finite values.")
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        pad = abs(lo) * 0.05 or 1.0
        lo, hi = lo - pad, hi + pad
    return lo, hi


def _axes(doc: SVG, x_range, y_range, x_label: str, y_label: str, ticks: int = 5) -> None:
    x0, y0 = MARGIN, doc.height - MARGIN
    x1, y1 = doc.width - MARGIN, MARGIN
    doc.group_start("axes")
    doc.line(x0, y0, x1, y0)
    doc.line(x0, y0, x0, y1)
    for i in range(ticks):
        f = i / (ticks - 1)
        xv = x_range[0] + f * (x_range[1] - x_range[0])
        yv = y_range[0] + f * (y_range[1] - y_range[0])
        xp = x0 + f * (x1 - x0)
        yp = y0 + f * (y1 - y0)
        doc.line(xp, y0, xp, y0 + 4)
        doc.text(xp, y0 + 18, f"{xv:.3g}", size=10)
        doc.line(x0 - 4, yp, x0, yp)
        doc.text(x0 - 8, yp + 4, f"{yv:.3g}", anchor="end", size=10)
    doc.text((x0 + x1) / 2, doc.height - 15, x_label)
    doc.text(15, (y0 + y1) / 2, y_label, anchor="start")
    doc.group_end()


def _colorbar(doc: SVG, lo: float, hi: float, *, diverging: bool = False) -> None:
    x, top, h, w, n = doc.width - MARGIN + 15, MARGIN, doc.height - 2 * MARGIN, 14, 32
    doc.group_start("colorbar")
    for i in range(n):
        f = 1.0 - (i + 0.5) / n
        fill = diverging_color(2 * f - 1) if diverging else sequential_color(f)
        doc.rect(x, top + i * h / n, w, h / n + 0.5, fill)
    doc.text(x + w + 2, top + 10, f"{hi:.3g}", anchor="start", size=10)
    doc.text(x + w + 2, top + h, f"{lo:.3g}", anchor="start", size=10)
    doc.group_end()


def _plot_xy(doc: SVG, x: float, y: float, xr, yr) -> Tuple[float, float]:
    px = MARGIN + (x - xr[0]) / (xr[1] - xr[0]) * (doc.width - 2 * MARGIN)
    py = doc.height - MARGIN - (y - yr[0]) / (yr[1] - yr[0]) * (doc.height - 2 * MARGIN)
    return px, py


# ---------------------------------------------------------------------------
# Kinds
# ---------------------------------------------------------------------------

def render_line(x: Sequence[float], series: Sequence[Tuple[str, Sequence[float]]], *, x_label: str, title: str = "") -> str:
    """One polyline per named series. Non-finite samples are skipped."""
    xs = np.asarray(x, dtype=float)
    if xs.size == 0 or not series:
        raise EmptyDatasetError("Nothing to render: empty line data.")
    all_y = np.concatenate([np.asarray(v, dtype=float) for _, v in series])
    xr, yr = _finite_range(xs), _finite_range(all_y)

    doc = SVG()
    _axes(doc, xr, yr, x_label, "value")
    if title:
        doc.text(doc.width / 2, 25, title, size=14)
    for n, (name, ys) in enumerate(series):
        ys = np.asarray(ys, dtype=float)
        pts = [_plot_xy(doc, a, b, xr, yr) for a, b in zip(xs, ys) if np.isfinite(a) and np.isfinite(b)]
        color = SERIES_COLORS[n % len(SERIES_COLORS)]
        doc.group_start("series", title=name)
        doc.polyline(pts, color)
        doc.group_end()
        doc.text(doc.width - MARGIN - 5, MARGIN + 15 * (n + 1), name, anchor="end", size=11)
    return doc.get_svg()


def render_ternary_heatmap(
    points: Sequence[Tuple[float, float, float]],
    values: Sequence[float],
    *,
    labels: Tuple[str, str, str],
    column: str,
    title: str = "",
) -> str:
    """
    One hexagonal cell per simplex point. Corners: first parameter bottom-left,
    second bottom-right, third on top.
    """
    pts = np.asarray(points, dtype=float)
    vals = np.asarray(values, dtype=float)
    if pts.size == 0:
        raise EmptyDatasetError("Nothing to render: empty ternary grid.")
    total = float(pts[0].sum())
    lo, hi = _finite_range(vals)

    doc = SVG()
    side = doc.width - 2 * MARGIN - 60
    height = side * math.sqrt(3) / 2
    ox, oy = MARGIN, doc.height - MARGIN

    def to_xy(p) -> Tuple[float, float]:
        a, b, c = p / total
        return ox + side * (b + 0.5 * c), oy - height * c

    # nearest-neighbour spacing in barycentric steps
    n_side = int(round((math.sqrt(8 * len(pts) + 1) - 1) / 2)) - 1
    radius = side / max(n_side, 1) / math.sqrt(3)

    if title:
        doc.text(doc.width / 2, 25, title, size=14)
    doc.group_start("cells", title=column)
    for p, v in zip(pts, vals):
        cx, cy = to_xy(p)
        hexagon = [(cx + radius * math.cos(math.pi / 6 + k * math.pi / 3), cy + radius * math.sin(math.pi / 6 + k * math.pi / 3)) for k in range(6)]
        fill = sequential_color((v - lo) / (hi - lo)) if np.isfinite(v) else "#cccccc"
        doc.polygon(hexagon, fill, cls="cell", title=f"{labels[0]}={p[0]:.4g} {labels[1]}={p[1]:.4g} {labels[2]}={p[2]:.4g} {column}={v:.5g}")
    doc.group_end()
    doc.text(ox, oy + 25, labels[0], anchor="start")
    doc.text(ox + side, oy + 25, labels[1], anchor="end")
    doc.text(ox + side / 2, oy - height - 12, labels[2])
    _colorbar(doc, lo, hi)
    return doc.get_svg()


def render_grid_heatmap(
    x: Sequence[float],
    y: Sequence[float],
    values: Sequence[float],
    *,
    x_label: str,
    y_label: str,
    column: str,
    title: str = "",
) -> str:
    xs, ys, vals = (np.asarray(a, dtype=float) for a in (x, y, values))
    if xs.size == 0:
        raise EmptyDatasetError("Nothing to render: empty grid.")
    ux, uy = np.unique(xs), np.unique(ys)
    lo, hi = _finite_range(vals)

    doc = SVG()
    plot_w = doc.width - 2 * MARGIN
    plot_h = doc.height - 2 * MARGIN
    cw, ch = plot_w / ux.size, plot_h / uy.size
    if title:
        doc.text(doc.width / 2, 25, title, size=14)
    doc.group_start("cells", title=column)
    for a, b, v in zip(xs, ys, vals):
        i = int(np.searchsorted(ux, a))
        j = int(np.searchsorted(uy, b))
        fill = sequential_color((v - lo) / (hi - lo)) if np.isfinite(v) else "#cccccc"
        doc.rect(MARGIN + i * cw, doc.height - MARGIN - (j + 1) * ch, cw, ch, fill, cls="cell",
                 title=f"{x_label}={a:.4g} {y_label}={b:.4g} {column}={v:.5g}")
    doc.group_end()
    _axes(doc, (float(ux[0]), float(ux[-1])), (float(uy[0]), float(uy[-1])), x_label, y_label)
    _colorbar(doc, lo, hi)
    return doc.get_svg()


def render_covariance_heatmap(c: np.ndarray, *, block: Optional[int] = 18, title: str = "") -> str:
    """Upper-left block x block of the covariance; diverging scale symmetric about 0."""
    c = np.asarray(c, dtype=float)
    if c.size == 0:
        raise EmptyDatasetError("Nothing to render: empty covariance.")
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ShadowPcaError(f"Covariance must be square (got {c.shape}).")
    n = c.shape[0] if block is None else min(int(block), c.shape[0])
    sub = c[:n, :n]
    vmax = float(np.max(np.abs(sub))) or 1.0

    doc = SVG(WIDTH, WIDTH)
    size = doc.width - 2 * MARGIN
    cell = size / n
    if title:
        doc.text(doc.width / 2, 25, title, size=14)
    doc.group_start("cells", title=f"covariance {n}x{n}")
    for i in range(n):
        for j in range(n):
            doc.rect(MARGIN + j * cell, MARGIN + i * cell, cell, cell, diverging_color(sub[i, j] / vmax),
                     cls="cell", title=f"C[{i},{j}]={sub[i, j]:.5g}")
    doc.group_end()
    _colorbar(doc, -vmax, vmax, diverging=True)
    return doc.get_svg()


def render_scatter(coords: np.ndarray, *, labels: Tuple[str, str] = ("PC1", "PC2"), title: str = "") -> str:
    pts = np.asarray(coords, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise EmptyDatasetError("Nothing to render: no projected points.")
    if pts.shape[1] < 2:
        raise ShadowPcaError("Scatter needs at least two components per point.")
    xr, yr = _finite_range(pts[:, 0]), _finite_range(pts[:, 1])

    doc = SVG()
    _axes(doc, xr, yr, labels[0], labels[1])
    if title:
        doc.text(doc.width / 2, 25, title, size=14)
    doc.group_start("points")
    for a, b in pts[:, :2]:
        px, py = _plot_xy(doc, a, b, xr, yr)
        doc.circle(px, py, 2.0, "#1f77b4")
    doc.group_end()
    return doc.get_svg()


def lambda_series(table, mode: str, k: Optional[int] = None) -> List[Tuple[str, np.ndarray]]:
    k = table.k if k is None else k
    return [(f"lambda{i}", table.column(f"lambda{i}", mode)) for i in range(1, k + 1)]
