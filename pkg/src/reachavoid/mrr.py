"""Multiple reachable region of a single moving player.

A player launched with nonzero velocity can reach some points at three
distinct times: early while coasting past, and twice more as the growing
isochron family sweeps back over them.  Those points form the multiple
reachable region (MRR).  Its boundary is traced by the limit of
self-intersections of neighbouring isochrones, equivalently by trajectories
that are tangent to the isochron they end on.  The tangency heading at time t
satisfies

    v0 . heading(theta) = -(u/mu) * (exp(mu t) - 1),

solvable while the right-hand side does not exceed the initial speed, i.e. up
to the barrier time t_s.  The boundary consists of a first-arc pair (equal
first and second reach times) up to two cusps at the cusp time t_u, where all
three reach times coincide, and a second-arc pair (equal second and third
times) that closes at the single deepest point x_s at t_s.  A player at rest
has no MRR at all.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Control, DomainError, PlayerParams, PlayerState, propagate
from .geometry import Vec2
from .scribe import RootSet, find_zero, reach_times

# reach times closer than this (scaled by 1+t) merge into a boundary label
CLASSIFY_TOL = 1e-8
# samples per boundary branch; extra cluster added near the cusps
BRANCH_SAMPLES = 512


class Branch(enum.Enum):
    PLUS = 1
    MINUS = -1


class ReachKind(enum.Enum):
    SINGLE = "single"
    TRIPLE = "triple"
    BOUNDARY_I = "boundary_i"
    BOUNDARY_II = "boundary_ii"
    CUSP = "cusp"


@dataclass(frozen=True)
class ReachClassification:
    kind: ReachKind
    times: tuple[float, ...]


@dataclass(frozen=True)
class MrrBoundary:
    """Sampled boundary of one player's multiple reachable region.

    branch_i runs cusp(minus) -> start position -> cusp(plus) with the
    two-equal-smallest-times parameter in [0, t_u]; branch_ii runs
    cusp(plus) -> x_s -> cusp(minus) with parameter in [t_u, t_s].
    Concatenating the two gives a closed polygon.
    """

    t_s: float
    t_u: float
    x_s: Vec2
    cusps: tuple[Vec2, Vec2]
    branch_i: tuple[tuple[float, Vec2], ...]
    branch_ii: tuple[tuple[float, Vec2], ...]

    def polygon(self) -> np.ndarray:
        pts = [p.as_array() for _, p in self.branch_i]
        pts += [p.as_array() for _, p in self.branch_ii]
        return np.array(pts)

    @property
    def empty(self) -> bool:
        return self.t_s <= 0.0


def barrier_time(state: PlayerState, params: PlayerParams) -> float:
    """Last time the isochron family self-overlaps; 0 for a player at rest."""
    if params.u_max <= 0.0:
        raise DomainError("barrier time undefined for a thrustless player")
    v = state.vel.norm()
    return math.log((params.mu * v + params.u_max) / params.u_max) / params.mu


def _cusp_residual(v0: float, u: float, mu: float, t: float) -> float:
    decay = math.exp(-mu * t)
    s = (1.0 - decay) / mu
    return (u * u / mu) * (t - s) - (v0 * v0 * decay * decay
                                     - (u * u / (mu * mu)) * (1.0 - decay) ** 2)


def cusp_time(state: PlayerState, params: PlayerParams) -> float:
    """Time of the boundary cusps, where all three reach times coincide.

    Unique root in (0, t_s) of the vanishing-tangent condition; degenerates
    to 0 together with the barrier time when the player starts at rest.
    """
    v0 = state.vel.norm()
    if v0 == 0.0:
        return 0.0
    t_s = barrier_time(state, params)
    f = lambda t: _cusp_residual(v0, params.u_max, params.mu, t)
    lo = 1e-15 / params.mu
    root = find_zero(f, lo, t_s, tol=1e-14)
    if root is None:
        raise RuntimeError("cusp equation had no sign change on (0, t_s)")
    return root


def tangency_heading(state: PlayerState, params: PlayerParams, t: float,
                     branch: Branch) -> float:
    """Heading whose trajectory is tangent to its own isochron at time t."""
    v = state.vel
    vnorm = v.norm()
    if vnorm == 0.0:
        raise DomainError("tangency heading undefined for a player at rest")
    b = (params.u_max / params.mu) * (math.exp(params.mu * t) - 1.0)
    m_sq = vnorm * vnorm - b * b
    if m_sq < -1e-12 * vnorm * vnorm:
        raise DomainError(f"no tangency heading beyond the barrier time (t={t})")
    m = math.sqrt(max(m_sq, 0.0))
    vhat = Vec2(v.x / vnorm, v.y / vnorm)
    nhat = vhat.perp()
    sign = 1.0 if branch is Branch.PLUS else -1.0
    direction = Vec2((-b * vhat.x + sign * m * nhat.x) / vnorm,
                     (-b * vhat.y + sign * m * nhat.y) / vnorm)
    return direction.angle()


def boundary_point(state: PlayerState, params: PlayerParams, t: float,
                   branch: Branch) -> Vec2:
    """Point of the MRR boundary with two equal reach times at parameter t."""
    if t <= 0.0:
        return state.pos
    theta = tangency_heading(state, params, t, branch)
    return propagate(state, params, Control(params.u_max, theta), t).pos


def _branch_params(t_lo: float, t_hi: float, n: int, refine_at: float) -> np.ndarray:
    """Uniform parameter grid with a geometric cluster near `refine_at`."""
    base = np.linspace(t_lo, t_hi, n)
    span = t_hi - t_lo
    if span <= 0.0:
        return base
    offsets = np.geomspace(1e-6, 0.05, 24) * span
    cluster = np.concatenate([refine_at - offsets, refine_at + offsets])
    cluster = cluster[(cluster > t_lo) & (cluster < t_hi)]
    return np.unique(np.concatenate([base, cluster]))


def mrr_boundary(state: PlayerState, params: PlayerParams,
                 samples: int = BRANCH_SAMPLES) -> MrrBoundary:
    """Sample the full MRR boundary.  Degenerates to the start point at rest."""
    if state.vel.norm() == 0.0:
        p = state.pos
        return MrrBoundary(t_s=0.0, t_u=0.0, x_s=p, cusps=(p, p),
                           branch_i=((0.0, p),), branch_ii=((0.0, p),))
    t_s = barrier_time(state, params)
    t_u = cusp_time(state, params)
    x_s = boundary_point(state, params, t_s, Branch.PLUS)
    cusp_plus = boundary_point(state, params, t_u, Branch.PLUS)
    cusp_minus = boundary_point(state, params, t_u, Branch.MINUS)

    # curvature concentrates at the cusps where the boundary tangent vanishes
    t_i = _branch_params(0.0, t_u, samples, refine_at=t_u)
    t_ii = _branch_params(t_u, t_s, samples, refine_at=t_u)

    branch_i = [(float(t), boundary_point(state, params, float(t), Branch.MINUS))
                for t in t_i[::-1]]
    branch_i += [(float(t), boundary_point(state, params, float(t), Branch.PLUS))
                 for t in t_i]
    branch_ii = [(float(t), boundary_point(state, params, float(t), Branch.PLUS))
                 for t in t_ii]
    branch_ii += [(float(t), boundary_point(state, params, float(t), Branch.MINUS))
                  for t in t_ii[::-1]]
    return MrrBoundary(t_s=t_s, t_u=t_u, x_s=x_s, cusps=(cusp_plus, cusp_minus),
                       branch_i=tuple(branch_i), branch_ii=tuple(branch_ii))


def classify(point: Vec2, state: PlayerState, params: PlayerParams) -> ReachClassification:
    """Label a point by how many distinct times the player can reach it.

    Reach times closer than CLASSIFY_TOL*(1+t) merge, so points within the
    merge tolerance of the MRR boundary resolve to the boundary labels rather
    than to SINGLE or TRIPLE.
    """
    roots = reach_times(point, state, params)
    expanded = _merge(roots)
    times = tuple(t for t, _ in expanded)
    mults = [m for _, m in expanded]
    if len(expanded) == 1:
        if mults[0] >= 2:
            return ReachClassification(ReachKind.CUSP, times)
        return ReachClassification(ReachKind.SINGLE, times)
    if len(expanded) == 2:
        if mults[0] >= 2 and mults[1] >= 2:
            return ReachClassification(ReachKind.CUSP, times)
        if mults[0] >= 2:
            return ReachClassification(ReachKind.BOUNDARY_I, times)
        if mults[1] >= 2:
            return ReachClassification(ReachKind.BOUNDARY_II, times)
        # two simple roots can only happen at the start point of a moving
        # player (departure plus one swing back): treat as first-arc boundary
        return ReachClassification(ReachKind.BOUNDARY_I, times)
    return ReachClassification(ReachKind.TRIPLE, times)


def _merge(roots: RootSet) -> list[tuple[float, int]]:
    merged: list[tuple[float, int]] = []
    for t, m in zip(roots.times, roots.multiplicities):
        if merged and t - merged[-1][0] <= CLASSIFY_TOL * (1.0 + t):
            last_t, last_m = merged[-1]
            merged[-1] = (0.5 * (last_t + t), last_m + m)
        else:
            merged.append((t, m))
    return merged
