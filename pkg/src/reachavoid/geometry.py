"""Small planar-geometry toolkit: vectors, circle intersections, polygons.

Everything in the game lives in the plane, so a tiny immutable 2-vector plus a
handful of circle/polygon routines is all the geometry the rest of the library
needs.  Heavier sweeps (boundary sampling, region grids) convert to numpy
arrays internally; `Vec2` is the currency at API boundaries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Normalize an angle to [0, 2*pi)."""
    th = math.fmod(theta, TWO_PI)
    return th + TWO_PI if th < 0.0 else th


def angle_distance(a: float, b: float) -> float:
    """Shortest angular distance between two headings."""
    d = abs(wrap_angle(a) - wrap_angle(b))
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector components ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def perp(self) -> "Vec2":
        # counter-clockwise quarter turn
        return Vec2(-self.y, self.x)

    def unit(self) -> "Vec2":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Vec2(self.x / n, self.y / n)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def as_array(self) -> np.ndarray:
        return np.array((self.x, self.y), dtype=float)

    @staticmethod
    def from_polar(r: float, theta: float) -> "Vec2":
        return Vec2(r * math.cos(theta), r * math.sin(theta))

    @staticmethod
    def of(p) -> "Vec2":
        if isinstance(p, Vec2):
            return p
        x, y = p
        return Vec2(float(x), float(y))


def circle_intersections(c0: Vec2, r0: float, c1: Vec2, r1: float,
                         tangency_tol: float = 0.0) -> list[Vec2]:
    """Intersection points of two circles.

    Returns 0, 1 (tangency within `tangency_tol`, absolute in distance units)
    or 2 points.  The two-point case lists the point on the counter-clockwise
    side of the center line (c0 -> c1) first.
    """
    dvec = c1 - c0
    d = dvec.norm()
    if d == 0.0:
        return []
    lo, hi = abs(r0 - r1), r0 + r1
    if d > hi + tangency_tol or d < lo - tangency_tol:
        return []
    a = (d * d + r0 * r0 - r1 * r1) / (2.0 * d)
    h_sq = r0 * r0 - a * a
    u = Vec2(dvec.x / d, dvec.y / d)
    mid = c0 + a * u
    if h_sq <= 0.0 or d >= hi - tangency_tol or d <= lo + tangency_tol:
        return [mid]
    h = math.sqrt(h_sq)
    n = u.perp()
    return [mid + h * n, mid - h * n]


def polygon_area(points: np.ndarray) -> float:
    """Signed shoelace area of a closed polygon given as an (n, 2) array."""
    x = points[:, 0]
    y = points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def point_in_polygon(point, polygon: np.ndarray) -> bool:
    """Even-odd ray-cast membership test against an (n, 2) vertex array."""
    px, py = float(point[0]), float(point[1])
    x = polygon[:, 0]
    y = polygon[:, 1]
    x2 = np.roll(x, -1)
    y2 = np.roll(y, -1)
    straddles = (y > py) != (y2 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = x + (py - y) * (x2 - x) / (y2 - y)
    hits = straddles & (px < xi)
    return bool(np.count_nonzero(hits) % 2)


def dist_point_to_polyline(point, polyline: np.ndarray) -> float:
    """Distance from a point to a sampled polyline ((n, 2) array)."""
    p = np.asarray(point, dtype=float)
    a = polyline[:-1]
    b = polyline[1:]
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    denom[denom == 0.0] = 1.0
    t = np.clip(np.einsum("ij,ij->i", p - a, ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    d = np.hypot(proj[:, 0] - p[0], proj[:, 1] - p[1])
    return float(d.min()) if len(d) else float(np.hypot(*(p - polyline[0])))
