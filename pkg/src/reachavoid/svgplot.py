"""Hand-rolled SVG output with byte-stable formatting.

No plotting dependency: figures are assembled from polylines, circles and
labelled layers, and every coordinate is formatted with a fixed precision so
identical inputs always produce identical bytes.  Tests grep the path data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .dominance import GameConfig, RegionLabel
from .dynamics import isochron
from .engine import GameTrace
from .mrr import MrrBoundary

_FMT = "{:.6f}"

LABEL_COLORS = {
    RegionLabel.R_I: "#f4c95d",
    RegionLabel.R_II: "#e8a13c",
    RegionLabel.R_III: "#7fb069",
    RegionLabel.DEFENDER_DOMINATED: "#d7e3f4",
    RegionLabel.BOUNDARY_L: "#222222",
    RegionLabel.BOUNDARY_MRR: "#8a4fff",
}


def _f(v: float) -> str:
    out = _FMT.format(v)
    return "0.000000" if out == "-0.000000" else out


@dataclass
class SvgCanvas:
    """Collects elements in data coordinates, then renders with a flipped y."""

    width: int = 640
    height: int = 640
    margin: float = 0.05
    elements: list[str] = field(default_factory=list)
    xs: list[float] = field(default_factory=list)
    ys: list[float] = field(default_factory=list)

    def _track(self, xs: Iterable[float], ys: Iterable[float]) -> None:
        self.xs.extend(xs)
        self.ys.extend(ys)

    def polyline(self, points: Sequence[Sequence[float]], color: str,
                 width: float = 1.5, dashed: bool = False,
                 fill: str = "none") -> None:
        if len(points) < 2:
            return
        self._track([p[0] for p in points], [p[1] for p in points])
        data = " ".join(f"{_f(p[0])},{_f(p[1])}" for p in points)
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.elements.append(
            f'<polyline fill="{fill}" stroke="{color}" '
            f'stroke-width="{_f(width)}"{dash} points="{data}" />')

    def circle(self, cx: float, cy: float, r: float, color: str,
               fill: str = "none", width: float = 1.0) -> None:
        self._track([cx - r, cx + r], [cy - r, cy + r])
        self.elements.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="{fill}" '
            f'stroke="{color}" stroke-width="{_f(width)}" />')

    def marker(self, x: float, y: float, color: str, r: float = 0.012) -> None:
        self._track([x], [y])
        self.elements.append(
            f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="{color}" '
            f'stroke="none" />')

    def rect(self, x: float, y: float, w: float, h: float, fill: str) -> None:
        self._track([x, x + w], [y, y + h])
        self.elements.append(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" '
            f'fill="{fill}" stroke="none" />')

    def open_layer(self, name: str) -> None:
        self.elements.append(f'<g id="{name}">')

    def close_layer(self) -> None:
        self.elements.append("</g>")

    def render(self) -> str:
        if not self.xs:
            self.xs = [0.0, 1.0]
            self.ys = [0.0, 1.0]
        xmin, xmax = min(self.xs), max(self.xs)
        ymin, ymax = min(self.ys), max(self.ys)
        dx = (xmax - xmin) or 1.0
        dy = (ymax - ymin) or 1.0
        pad = self.margin * max(dx, dy)
        vb = (xmin - pad, -(ymax + pad), dx + 2 * pad, dy + 2 * pad)
        header = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="{_f(vb[0])} {_f(vb[1])} '
            f'{_f(vb[2])} {_f(vb[3])}">\n'
            '<g transform="scale(1,-1)">\n')
        return header + "\n".join(self.elements) + "\n</g>\n</svg>\n"


def trajectory_figure(trace: GameTrace) -> str:
    cfg = trace.scenario.cfg
    cv = SvgCanvas()
    atk = [(r.attacker.pos.x, r.attacker.pos.y) for r in trace.rows]
    dfd = [(r.defender.pos.x, r.defender.pos.y) for r in trace.rows]
    cv.open_layer("attacker_path")
    cv.polyline(atk, "#c0392b", 2.0)
    cv.close_layer()
    cv.open_layer("defender_path")
    cv.polyline(dfd, "#2d6cdf", 2.0)
    cv.close_layer()
    scale = 0.015 * max(1e-9, max(
        (max(p[0] for p in atk + dfd) - min(p[0] for p in atk + dfd)),
        (max(p[1] for p in atk + dfd) - min(p[1] for p in atk + dfd))))
    cv.marker(cfg.target.x, cfg.target.y, "#1d8348", r=scale)
    if atk:
        cv.marker(atk[0][0], atk[0][1], "#c0392b", r=scale)
        cv.marker(dfd[0][0], dfd[0][1], "#2d6cdf", r=scale)
        cv.marker(atk[-1][0], atk[-1][1], "#000000", r=scale * 0.8)
    return cv.render()


def distance_figure(trace: GameTrace) -> str:
    cv = SvgCanvas(height=400)
    ad = [(r.t, r.dist_ad) for r in trace.rows]
    at = [(r.t, r.dist_at) for r in trace.rows]
    cv.open_layer("axes")
    tmax = max((r.t for r in trace.rows), default=1.0)
    dmax = max([r.dist_at for r in trace.rows] + [r.dist_ad for r in trace.rows],
               default=1.0)
    cv.polyline([(0.0, 0.0), (tmax, 0.0)], "#888888", 1.0)
    cv.polyline([(0.0, 0.0), (0.0, dmax)], "#888888", 1.0)
    cv.close_layer()
    cv.open_layer("dist_attacker_defender")
    cv.polyline(ad, "#2d6cdf", 1.5)
    cv.close_layer()
    cv.open_layer("dist_attacker_target")
    cv.polyline(at, "#c0392b", 1.5)
    cv.close_layer()
    return cv.render()


def isochron_figure(cfg: GameConfig, times: Sequence[float]) -> str:
    cv = SvgCanvas()
    cv.open_layer("attacker_isochrones")
    for t in times:
        ia = isochron(cfg.attacker, cfg.attacker_params, t)
        cv.circle(ia.center.x, ia.center.y, ia.radius, "#c0392b")
    cv.close_layer()
    cv.open_layer("defender_isochrones")
    for t in times:
        idf = isochron(cfg.defender, cfg.defender_params, t)
        cv.circle(idf.center.x, idf.center.y, idf.radius, "#2d6cdf")
    cv.close_layer()
    cv.marker(cfg.target.x, cfg.target.y, "#1d8348")
    return cv.render()


def mrr_figure(boundary: MrrBoundary) -> str:
    cv = SvgCanvas()
    poly = boundary.polygon()
    cv.open_layer("region_boundary")
    cv.polyline([(p[0], p[1]) for p in poly] + [(poly[0][0], poly[0][1])],
                "#8a4fff", 1.5)
    cv.close_layer()
    span = max(float(np.ptp(poly[:, 0])), float(np.ptp(poly[:, 1])), 1e-9)
    cv.marker(boundary.x_s.x, boundary.x_s.y, "#000000", r=0.02 * span)
    for c in boundary.cusps:
        cv.marker(c.x, c.y, "#444444", r=0.015 * span)
    return cv.render()


def region_figure(cfg: GameConfig, xs, ys, labels,
                  overlays: dict | None = None) -> str:
    """Layered region map: one cell layer per label plus boundary overlays."""
    cv = SvgCanvas()
    w = float(xs[1] - xs[0])
    h = float(ys[1] - ys[0])
    for label in RegionLabel:
        cells = [(i, j) for j in range(len(ys)) for i in range(len(xs))
                 if labels[j][i] is label]
        if not cells:
            continue
        cv.open_layer(f"region_{label.value}")
        for i, j in cells:
            cv.rect(float(xs[i]) - 0.5 * w, float(ys[j]) - 0.5 * h, w, h,
                    LABEL_COLORS[label])
        cv.close_layer()
    if overlays:
        for name, polylines in overlays.items():
            cv.open_layer(name)
            for pts in polylines:
                cv.polyline([(float(p[0]), float(p[1])) for p in pts],
                            LABEL_COLORS.get(RegionLabel.BOUNDARY_L, "#222222")
                            if "boundary_L" in name else "#8a4fff",
                            1.2)
            cv.close_layer()
    cv.marker(cfg.target.x, cfg.target.y, "#1d8348")
    cv.marker(cfg.attacker.pos.x, cfg.attacker.pos.y, "#c0392b")
    cv.marker(cfg.defender.pos.x, cfg.defender.pos.y, "#2d6cdf")
    return cv.render()
