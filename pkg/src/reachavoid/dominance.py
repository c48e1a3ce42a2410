"""Attacker dominance regions built from isochron geometry.

The locus L of simultaneous-reach points (both players' isochrones intersect
there at equal time) separates the plane into zones where one player or the
other arrives first.  Sweeping the intersection pair over the window from the
first external tangency t_out to the first internal tangency t_in traces L as
one or more closed loops; the loops split whenever the isochrones temporarily
separate again (second and third external tangencies).

Classification of a point:

  R_I   the attacker has a saturated straight-heading arrival that stays clear
        of the defender's reachable disc the whole way;
  R_II  the attacker arrives when the defender cannot be there, but every such
        straight run is interceptable somewhere en route;
  R_III the point lies inside the defender's multiple reachable region with
        the attacker's earliest arrival falling in the defender-reachable gap
        (t_D1, t_D2); reaching it safely requires slowing down so the arrival
        slides into the defender's unreachable window.  Only regions certified
        by one of two sufficient boundary conditions are labelled R_III: a
        closed intersection loop between the first two external tangencies
        with the attacker's drift center staying clear of the defender's disc,
        or a pocket bounded by the defender's second boundary arc together
        with the piece of L matching the defender's middle reach time.

Everything else is defender dominated.  Points within merge tolerance of L or
of either player's region boundary get explicit boundary labels so that maps
render the skeleton.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .dynamics import (Control, PlayerParams, PlayerState, isochron, propagate,
                       steer_to)
from .geometry import (Vec2, point_in_polygon, polygon_area)
from .mrr import CLASSIFY_TOL, mrr_boundary
from .scribe import (RootSet, ScribeMode, ScribeProblem, reach_times,
                     scribe_times)

# default number of sweep samples along the full tangency window
SWEEP_SAMPLES = 2048
# samples used when annotating reach-time indices along L (each costs a solve)
ANNOTATE_SAMPLES = 600
# trajectory samples for the straight-run safety check behind R_I
SAFETY_SAMPLES = 200


class RegionLabel(enum.Enum):
    R_I = "R_I"
    R_II = "R_II"
    R_III = "R_III"
    DEFENDER_DOMINATED = "defender"
    BOUNDARY_L = "boundary_L"
    BOUNDARY_MRR = "boundary_mrr"


@dataclass(frozen=True)
class GameConfig:
    """Full description of one game instance; target defaults to the origin."""

    attacker: PlayerState
    attacker_params: PlayerParams
    defender: PlayerState
    defender_params: PlayerParams
    target: Vec2 = Vec2(0.0, 0.0)

    def __post_init__(self):
        if self.attacker_params.mu != self.defender_params.mu:
            raise ValueError("both players must share the damping factor")
        if not self.attacker_params.u_max < self.defender_params.u_max:
            raise ValueError("the defender must out-accelerate the attacker")
        for name, st, par in (("attacker", self.attacker, self.attacker_params),
                              ("defender", self.defender, self.defender_params)):
            if st.vel.norm() > par.speed_cap * (1.0 + 1e-9):
                raise ValueError(f"{name} initial speed exceeds u_max/mu")
        if (self.attacker.pos - self.defender.pos).norm() == 0.0:
            raise ValueError("players must start at distinct positions")

    @property
    def mu(self) -> float:
        return self.attacker_params.mu

    @property
    def accel_ratio(self) -> float:
        return self.attacker_params.u_max / self.defender_params.u_max

    def scribe_problem(self, mode: ScribeMode) -> ScribeProblem:
        return ScribeProblem(delta_x=self.attacker.pos - self.defender.pos,
                             delta_v=self.attacker.vel - self.defender.vel,
                             mu=self.mu,
                             u_a=self.attacker_params.u_max,
                             u_d=self.defender_params.u_max,
                             mode=mode)


@dataclass(frozen=True)
class BoundarySegment:
    """One closed loop of L swept over [t_start, t_end].

    `points` is an (n, 2) array; `params` holds the sweep time of each vertex
    and `sides` the intersection branch (+1 counter-clockwise of the center
    line, -1 the mirror side, 0 at tangencies).
    """

    t_start: float
    t_end: float
    points: np.ndarray
    params: np.ndarray
    sides: np.ndarray

    def __len__(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class CaptureBoundary:
    """The full simultaneous-reach boundary L between t_out and t_in."""

    t_out: float
    t_in: float
    segments: tuple[BoundarySegment, ...]
    # filled only on annotate=True sweeps: per segment, arrays of matched
    # attacker and defender reach-time indices (0 outside the MRR, else 1..3)
    pair_indices: Optional[tuple[np.ndarray, ...]] = None

    def vertex_count(self) -> int:
        return sum(len(s) for s in self.segments)


def _centers_radii(cfg: GameConfig, ts: np.ndarray):
    mu = cfg.mu
    s = (1.0 - np.exp(-mu * ts)) / mu
    ax = cfg.attacker.pos.x + cfg.attacker.vel.x * s
    ay = cfg.attacker.pos.y + cfg.attacker.vel.y * s
    dx = cfg.defender.pos.x + cfg.defender.vel.x * s
    dy = cfg.defender.pos.y + cfg.defender.vel.y * s
    ra = (cfg.attacker_params.u_max / mu) * (ts - s)
    rd = (cfg.defender_params.u_max / mu) * (ts - s)
    return ax, ay, dx, dy, ra, rd


def intersection_points(cfg: GameConfig, ts: np.ndarray):
    """Vectorized circle-circle intersections of the two isochrones.

    Returns (plus, minus, valid): two (n, 2) arrays of the intersection pair
    and a boolean mask of sweep times where the circles genuinely intersect.
    """
    ax, ay, dx, dy, ra, rd = _centers_radii(cfg, ts)
    ux, uy = dx - ax, dy - ay
    d = np.hypot(ux, uy)
    valid = (d > 0.0) & (d <= ra + rd) & (d >= np.abs(ra - rd))
    dd = np.where(d > 0.0, d, 1.0)
    a = (dd * dd + ra * ra - rd * rd) / (2.0 * dd)
    h = np.sqrt(np.clip(ra * ra - a * a, 0.0, None))
    ux, uy = ux / dd, uy / dd
    mx, my = ax + a * ux, ay + a * uy
    plus = np.stack([mx - h * uy, my + h * ux], axis=1)
    minus = np.stack([mx + h * uy, my - h * ux], axis=1)
    return plus, minus, valid


@lru_cache(maxsize=256)
def tangency_windows(cfg: GameConfig) -> tuple[RootSet, RootSet]:
    """(circumscribe roots, inscribe roots) of the two isochron families."""
    out = scribe_times(cfg.scribe_problem(ScribeMode.CIRCUMSCRIBE))
    inn = scribe_times(cfg.scribe_problem(ScribeMode.INSCRIBE))
    return out, inn


def isochron_intersections(cfg: GameConfig, t: float,
                           tangency_tol: float = 1e-8) -> list[Vec2]:
    """Intersection points of the two isochrones at one time (0, 1 or 2)."""
    if t < 0.0:
        raise ValueError("time must be >= 0")
    if t == 0.0:
        return []
    ia = isochron(cfg.attacker, cfg.attacker_params, t)
    idf = isochron(cfg.defender, cfg.defender_params, t)
    d = (idf.center - ia.center).norm()
    from .geometry import circle_intersections
    return circle_intersections(ia.center, ia.radius, idf.center, idf.radius,
                                tangency_tol=tangency_tol * (1.0 + d))


def _active_intervals(cfg: GameConfig) -> tuple[float, float, list[tuple[float, float]]]:
    out, inn = tangency_windows(cfg)
    t_out, t_in = out.first, inn.first
    events = sorted({t_out, t_in, *[r for r in out.times if t_out < r < t_in],
                     *[r for r in inn.times if t_out < r < t_in]})
    intervals = []
    for a, b in zip(events[:-1], events[1:]):
        mid = np.array([0.5 * (a + b)])
        _, _, valid = intersection_points(cfg, mid)
        if valid[0]:
            intervals.append((a, b))
    return t_out, t_in, intervals


def capture_boundary(cfg: GameConfig, samples: int = SWEEP_SAMPLES,
                     annotate: bool = False) -> CaptureBoundary:
    """Sweep the simultaneous-reach boundary L into closed loops.

    With annotate=True each vertex additionally carries the matched reach-time
    index pair (attacker, defender); this costs two root solves per vertex, so
    the sweep then uses the coarser ANNOTATE_SAMPLES grid.
    """
    if samples < 2:
        raise ValueError("need at least two sweep samples")
    t_out, t_in, intervals = _active_intervals(cfg)
    total = sum(b - a for a, b in intervals)
    segments = []
    pair_arrays = []
    n_samples = ANNOTATE_SAMPLES if annotate else max(samples, 2 * len(intervals))
    for a, b in intervals:
        n = max(8, int(round(n_samples * (b - a) / total))) if total > 0 else 8
        ts = np.linspace(a, b, n)
        plus, minus, valid = intersection_points(cfg, ts)
        # tangency collapse at interval ends: force exact single points there
        loop_pts = np.vstack([plus[valid], minus[valid][::-1]])
        loop_t = np.concatenate([ts[valid], ts[valid][::-1]])
        loop_side = np.concatenate([np.ones(valid.sum()), -np.ones(valid.sum())])
        seg = BoundarySegment(t_start=a, t_end=b, points=loop_pts,
                              params=loop_t, sides=loop_side)
        segments.append(seg)
        if annotate:
            pair_arrays.append(_annotate_segment(cfg, seg))
    return CaptureBoundary(t_out=t_out, t_in=t_in, segments=tuple(segments),
                           pair_indices=tuple(pair_arrays) if annotate else None)


def matched_index(roots: RootSet, t: float, alignment: float) -> int:
    """Reach-time index (0 outside the MRR, else 1..3) matched by time t.

    Double roots are disambiguated by the sign of the arrival alignment
    (velocity dotted with heading): positive picks the sweeping-outward slot
    {1, 3}, negative the middle slot 2.
    """
    merged: list[tuple[float, int]] = []
    for rt, m in zip(roots.times, roots.multiplicities):
        if merged and rt - merged[-1][0] <= CLASSIFY_TOL * (1.0 + rt):
            pt, pm = merged[-1]
            merged[-1] = (0.5 * (pt + rt), pm + m)
        else:
            merged.append((rt, m))
    total = sum(m for _, m in merged)
    if total <= 1:
        return 0
    best = min(range(len(merged)), key=lambda i: abs(merged[i][0] - t))
    base = 1 + sum(m for _, m in merged[:best])
    mult = merged[best][1]
    if mult == 1:
        return base
    slots = list(range(base, base + mult))
    if alignment < 0.0:
        return 2 if 2 in slots else slots[0]
    odd = [s for s in slots if s != 2]
    return odd[0] if odd else slots[0]


def arrival_alignment(state: PlayerState, params: PlayerParams, point: Vec2,
                      t: float) -> float:
    """Terminal velocity component along the heading for the arrival at t."""
    ctrl = steer_to(state, params, point, t)
    arr = propagate(state, params, ctrl, t)
    return arr.vel.dot(ctrl.heading())


def _annotate_segment(cfg: GameConfig, seg: BoundarySegment) -> np.ndarray:
    pairs = np.zeros((len(seg), 2), dtype=int)
    for i in range(len(seg)):
        p = Vec2(float(seg.points[i, 0]), float(seg.points[i, 1]))
        t = float(seg.params[i])
        ta = reach_times(p, cfg.attacker, cfg.attacker_params)
        td = reach_times(p, cfg.defender, cfg.defender_params)
        try:
            sa = arrival_alignment(cfg.attacker, cfg.attacker_params, p, t)
        except Exception:
            sa = 0.0
        try:
            sd = arrival_alignment(cfg.defender, cfg.defender_params, p, t)
        except Exception:
            sd = 0.0
        pairs[i, 0] = matched_index(ta, t, sa)
        pairs[i, 1] = matched_index(td, t, sd)
    return pairs


# ---------------------------------------------------------------------------
# minima of the payoff along L (candidate terminal points)

@dataclass(frozen=True)
class BoundaryMinimum:
    payoff: float
    t: float
    side: float
    point: Vec2


def _side_point(cfg: GameConfig, t: float, side: float) -> Vec2:
    plus, minus, valid = intersection_points(cfg, np.array([t]))
    arr = plus[0] if side >= 0 else minus[0]
    return Vec2(float(arr[0]), float(arr[1]))


def _golden_min(f, a: float, b: float, tol: float = 1e-12) -> float:
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def boundary_minima(cfg: GameConfig, samples: int = 512) -> list[BoundaryMinimum]:
    """All refined local minima of distance-to-target along L, best first.

    Ties within 1e-9 in payoff order by smaller sweep time, then by smaller
    polar angle of the point, which keeps the selection deterministic when the
    boundary has symmetric or near-tied dips.
    """
    tx, ty = cfg.target.x, cfg.target.y
    _, _, intervals = _active_intervals(cfg)
    found: list[BoundaryMinimum] = []
    for a, b in intervals:
        ts = np.linspace(a, b, samples)
        plus, minus, valid = intersection_points(cfg, ts)
        for side, pts in ((1.0, plus), (-1.0, minus)):
            dist = np.hypot(pts[:, 0] - tx, pts[:, 1] - ty)
            dist = np.where(valid, dist, np.inf)
            for i in range(len(ts)):
                if not valid[i]:
                    continue
                left = dist[i - 1] if i > 0 else np.inf
                right = dist[i + 1] if i < len(ts) - 1 else np.inf
                interior_min = dist[i] <= left and dist[i] <= right
                at_edge = i == 0 or i == len(ts) - 1
                if not (interior_min or at_edge):
                    continue
                lo = ts[max(i - 1, 0)]
                hi = ts[min(i + 1, len(ts) - 1)]

                def f(t: float) -> float:
                    q = _side_point(cfg, t, side)
                    return math.hypot(q.x - tx, q.y - ty)

                t_star = _golden_min(f, lo, hi)
                q = _side_point(cfg, t_star, side)
                found.append(BoundaryMinimum(payoff=math.hypot(q.x - tx, q.y - ty),
                                             t=t_star, side=side, point=q))
    found.sort(key=lambda m: (round(m.payoff / 1e-9), m.t, m.point.angle()))
    deduped: list[BoundaryMinimum] = []
    for m in found:
        if all((m.point - d.point).norm() > 1e-7 for d in deduped):
            deduped.append(m)
    return deduped


# ---------------------------------------------------------------------------
# R_III certificates (the two sufficient boundary conditions)

class R3Condition(enum.Enum):
    LOOP_BETWEEN_TANGENCIES = "cond1"
    POCKET_BEHIND_MRR = "cond2"


@dataclass(frozen=True)
class R3Component:
    condition: R3Condition
    polygon: np.ndarray

    def area(self) -> float:
        return abs(polygon_area(self.polygon))

    def contains(self, point: Vec2, pad: float = 0.0) -> bool:
        if point_in_polygon((point.x, point.y), self.polygon):
            return True
        if pad > 0.0:
            from .geometry import dist_point_to_polyline
            ring = np.vstack([self.polygon, self.polygon[:1]])
            return dist_point_to_polyline((point.x, point.y), ring) <= pad
        return False


def _cond1_components(cfg: GameConfig) -> list[R3Component]:
    out, inn = tangency_windows(cfg)
    outs = [t for t in out.times]
    if len(outs) < 2 or outs[1] >= inn.first:
        return []
    t1, t2 = outs[0], outs[1]
    ts = np.linspace(t1, t2, 400)
    ax, ay, dx, dy, _, rd = _centers_radii(cfg, ts)
    clearance = np.hypot(ax - dx, ay - dy) - rd
    if clearance.min() <= 0.0:
        return []
    plus, minus, valid = intersection_points(cfg, ts)
    loop = np.vstack([plus[valid], minus[valid][::-1]])
    if len(loop) < 3:
        return []
    return [R3Component(R3Condition.LOOP_BETWEEN_TANGENCIES, loop)]


def _ring_cut(ring: np.ndarray, i: int, j: int, forward: bool) -> np.ndarray:
    n = len(ring)
    if forward:
        idx = np.arange(i, i + (j - i) % n + 1) % n
    else:
        idx = np.arange(i, i - (i - j) % n - 1, -1) % n
    return ring[idx]


def _defender_time_split(cfg: GameConfig, boundary: CaptureBoundary):
    """Group annotated L vertices into maximal runs matched to t_D2."""
    runs = []
    for seg, pairs in zip(boundary.segments, boundary.pair_indices):
        for side in (1.0, -1.0):
            mask = (seg.sides == side) & (pairs[:, 1] == 2)
            idx = np.flatnonzero(mask)
            if len(idx) == 0:
                continue
            breaks = np.flatnonzero(np.diff(idx) > 1)
            start = 0
            for stop in list(breaks) + [len(idx) - 1]:
                chunk = idx[start:stop + 1]
                start = stop + 1
                if len(chunk) >= 3:
                    runs.append(seg.points[chunk])
    return runs


def _probe_ok(cfg: GameConfig, probe: Vec2) -> bool:
    td = reach_times(probe, cfg.defender, cfg.defender_params)
    texp = td.expanded()
    if len(texp) < 3:
        return False
    ta = reach_times(probe, cfg.attacker, cfg.attacker_params)
    t_a = ta.first
    return texp[0] < t_a < texp[1]


def _polygon_probes(poly: np.ndarray) -> list[Vec2]:
    cx, cy = poly[:, 0].mean(), poly[:, 1].mean()
    probes = [Vec2(float(cx), float(cy))]
    for frac in (0.25, 0.5, 0.75):
        k = int(frac * len(poly))
        px = 0.7 * poly[k, 0] + 0.3 * cx
        py = 0.7 * poly[k, 1] + 0.3 * cy
        probes.append(Vec2(float(px), float(py)))
    return probes


def _cond2_components(cfg: GameConfig) -> list[R3Component]:
    if cfg.defender.vel.norm() == 0.0:
        return []
    annotated = capture_boundary(cfg, annotate=True)
    runs = _defender_time_split(cfg, annotated)
    if not runs:
        return []
    dmrr = mrr_boundary(cfg.defender, cfg.defender_params)
    ring = dmrr.polygon()
    # candidate loops: each run closed through an arc of the region ring
    components: list[R3Component] = []
    used = np.zeros(len(runs), dtype=bool)
    endpoints = []
    for run in runs:
        i0 = int(np.argmin(np.hypot(*(ring - run[0]).T)))
        i1 = int(np.argmin(np.hypot(*(ring - run[-1]).T)))
        endpoints.append((i0, i1))

    def try_loop(order: list[int], direction_flags: list[bool]) -> Optional[np.ndarray]:
        pieces = []
        for pos, ridx in enumerate(order):
            run = runs[ridx]
            pieces.append(run)
            exit_idx = endpoints[ridx][1]
            next_ridx = order[(pos + 1) % len(order)]
            entry_idx = endpoints[next_ridx][0]
            arc = _ring_cut(ring, exit_idx, entry_idx, direction_flags[pos])
            pieces.append(arc)
        loop = np.vstack(pieces)
        if len(loop) < 4 or abs(polygon_area(loop)) < 1e-12:
            return None
        probes = _polygon_probes(loop)
        inside = [p for p in probes if point_in_polygon((p.x, p.y), loop)]
        if not inside:
            return None
        if all(_probe_ok(cfg, p) for p in inside):
            return loop
        return None

    import itertools
    n = len(runs)
    orders = [list(perm) for k in range(1, n + 1)
              for perm in itertools.permutations(range(n), k)]
    for order in orders:
        if any(used[i] for i in order):
            continue
        found = None
        for flags in itertools.product((True, False), repeat=len(order)):
            found = try_loop(order, list(flags))
            if found is not None:
                break
        if found is not None:
            for i in order:
                used[i] = True
            components.append(R3Component(R3Condition.POCKET_BEHIND_MRR, found))
    return components


@lru_cache(maxsize=32)
def r3_certificates(cfg: GameConfig) -> tuple[R3Component, ...]:
    """Certified third-region components for a configuration (cached)."""
    comps = _cond1_components(cfg) + _cond2_components(cfg)
    return tuple(comps)


# ---------------------------------------------------------------------------
# point classification and region maps

def trajectory_clearance(cfg: GameConfig, ctrl: Control, t_end: float,
                         samples: int = SAFETY_SAMPLES) -> float:
    """Min over sampled times of attacker-path distance to the defender disc.

    Positive means the straight saturated run to t_end is never interceptable
    at the sampled resolution.
    """
    mu = cfg.mu
    ts = np.linspace(t_end / samples, t_end, samples)
    s = (1.0 - np.exp(-mu * ts)) / mu
    hx, hy = math.cos(ctrl.theta), math.sin(ctrl.theta)
    amp = ctrl.u / mu
    px = cfg.attacker.pos.x + cfg.attacker.vel.x * s + amp * (ts - s) * hx
    py = cfg.attacker.pos.y + cfg.attacker.vel.y * s + amp * (ts - s) * hy
    dx = cfg.defender.pos.x + cfg.defender.vel.x * s
    dy = cfg.defender.pos.y + cfg.defender.vel.y * s
    rd = (cfg.defender_params.u_max / mu) * (ts - s)
    return float((np.hypot(px - dx, py - dy) - rd).min())


def _adr_indices(ta_exp: list[float], td_exp: list[float], tol: float) -> list[int]:
    """Attacker root positions that win the race outright or hit the gap."""
    min_td = td_exp[0]
    wins = []
    for i, t in enumerate(ta_exp):
        if t < min_td - tol:
            wins.append(i)
        elif len(td_exp) >= 3 and td_exp[1] + tol < t < td_exp[2] - tol:
            wins.append(i)
    return wins


def classify_point(cfg: GameConfig, point: Vec2) -> RegionLabel:
    """Region label of a single point (see module docstring for the zoo)."""
    ta = reach_times(point, cfg.attacker, cfg.attacker_params)
    td = reach_times(point, cfg.defender, cfg.defender_params)
    ta_exp = ta.expanded()
    td_exp = td.expanded()
    tol = CLASSIFY_TOL * (1.0 + min(ta_exp[0], td_exp[0]))

    _, inn = tangency_windows(cfg)
    for t_a in ta_exp:
        for t_d in td_exp:
            # equal reach times beyond the first full-containment time are
            # post-game geometry, not part of the capture boundary
            if abs(t_a - t_d) <= tol and t_a <= inn.first + tol:
                return RegionLabel.BOUNDARY_L
    if _has_double(ta) or _has_double(td):
        return RegionLabel.BOUNDARY_MRR

    wins = _adr_indices(ta_exp, td_exp, tol)
    if wins:
        for i in wins:
            t_a = ta_exp[i]
            if t_a <= 0.0:
                return RegionLabel.R_I
            try:
                ctrl = steer_to(cfg.attacker, cfg.attacker_params, point, t_a)
            except Exception:
                continue
            if trajectory_clearance(cfg, ctrl, t_a) > 0.0:
                return RegionLabel.R_I
        return RegionLabel.R_II

    if len(td_exp) >= 3 and td_exp[0] + tol < ta_exp[0] < td_exp[1] - tol:
        for comp in r3_certificates(cfg):
            if comp.contains(point):
                return RegionLabel.R_III
    return RegionLabel.DEFENDER_DOMINATED


def _has_double(roots: RootSet) -> bool:
    if any(m >= 2 for m in roots.multiplicities):
        return True
    exp = roots.expanded()
    return any(b - a <= CLASSIFY_TOL * (1.0 + b)
               for a, b in zip(exp[:-1], exp[1:]))


def region_map(cfg: GameConfig, window: tuple[float, float, float, float],
               resolution: tuple[int, int],
               max_workers: int = 1) -> tuple[np.ndarray, np.ndarray, list[list[RegionLabel]]]:
    """Classify a uniform grid over `window` = (xmin, xmax, ymin, ymax).

    Returns (xs, ys, labels) with labels indexed [row][col] = [y][x].
    Rows are independent, so they may be evaluated by a small thread pool;
    the result does not depend on the worker count.
    """
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2x2")
    xmin, xmax, ymin, ymax = window
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("window must have positive extent")
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    r3_certificates(cfg)  # warm the cache before any parallel evaluation

    def row(j: int) -> list[RegionLabel]:
        return [classify_point(cfg, Vec2(float(x), float(ys[j]))) for x in xs]

    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            labels = list(pool.map(row, range(ny)))
    else:
        labels = [row(j) for j in range(ny)]
    return xs, ys, labels
