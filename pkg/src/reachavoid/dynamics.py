"""Closed-form motion of a damped double-integrator player.

A player accelerates with bounded magnitude u <= u_max along a heading theta
while linear drag -mu*v caps its speed at u_max/mu.  Under a constant control
the equations of motion integrate in closed form, so state propagation here is
exact: the simulator never runs Euler or Runge-Kutta steps and therefore has
no step-size error in the dynamics.

The set of positions reachable at exactly time t under saturated constant
thrust is a circle (the isochron).  Its center is the zero-input drift point
and its radius grows like (u_max/mu) * (t - (1 - exp(-mu t))/mu); every
admissible control, constant or not, keeps the player inside that disc.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Vec2, wrap_angle

# slack used when clamping targets that sit a rounding error outside a disc
BOUNDARY_SLACK = 1e-9


class DomainError(ValueError):
    """An argument is outside the operation's mathematical domain."""


class InfeasibleTargetError(ValueError):
    """The requested target cannot be reached at the requested time."""


@dataclass(frozen=True)
class PlayerParams:
    """Acceleration bound and damping factor of one player."""

    u_max: float
    mu: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError(f"damping factor must be positive, got {self.mu}")
        if self.u_max < 0.0:
            raise ValueError(f"acceleration bound must be >= 0, got {self.u_max}")

    @property
    def speed_cap(self) -> float:
        return self.u_max / self.mu


@dataclass(frozen=True)
class PlayerState:
    pos: Vec2
    vel: Vec2


@dataclass(frozen=True)
class Control:
    """Acceleration magnitude and fixed heading; theta stored in [0, 2*pi)."""

    u: float
    theta: float

    def __post_init__(self):
        if self.u < 0.0:
            raise ValueError(f"acceleration magnitude must be >= 0, got {self.u}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    def heading(self) -> Vec2:
        return Vec2(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class Isochron:
    """Circle of positions reachable at exactly time t under saturated thrust."""

    t: float
    center: Vec2
    radius: float

    def contains(self, point: Vec2, slack: float = 0.0) -> bool:
        return (point - self.center).norm() <= self.radius + slack


def damped_time(mu: float, t):
    """The damped clock s(t) = (1 - exp(-mu t)) / mu; saturates at 1/mu.

    Accepts scalars or numpy arrays.
    """
    return (1.0 - np.exp(-mu * t)) / mu


def radius_ramp(mu: float, t):
    """t - s(t): the isochron radius per unit of u_max/mu."""
    return t - damped_time(mu, t)


def propagate(state: PlayerState, params: PlayerParams, ctrl: Control,
              t: float) -> PlayerState:
    """Exact state at time t under a constant control.

    Closed form; satisfies the semigroup property for constant controls.
    """
    if t < 0.0:
        raise DomainError(f"propagation time must be >= 0, got {t}")
    if ctrl.u > params.u_max * (1.0 + 1e-12) + 1e-15:
        raise DomainError(
            f"control magnitude {ctrl.u} exceeds bound {params.u_max}")
    mu = params.mu
    decay = math.exp(-mu * t)
    s = (1.0 - decay) / mu
    a = ctrl.u / mu
    d = ctrl.heading()
    vel = Vec2(state.vel.x * decay + a * (1.0 - decay) * d.x,
               state.vel.y * decay + a * (1.0 - decay) * d.y)
    pos = Vec2(state.pos.x + state.vel.x * s + a * (t - s) * d.x,
               state.pos.y + state.vel.y * s + a * (t - s) * d.y)
    return PlayerState(pos, vel)


def isochron(state: PlayerState, params: PlayerParams, t: float) -> Isochron:
    """Reachable circle at time t: drift-point center, saturated-thrust radius."""
    if t < 0.0:
        raise DomainError(f"isochron time must be >= 0, got {t}")
    mu = params.mu
    s = (1.0 - math.exp(-mu * t)) / mu
    center = Vec2(state.pos.x + state.vel.x * s, state.pos.y + state.vel.y * s)
    return Isochron(t=t, center=center, radius=(params.u_max / mu) * (t - s))


def steer_to(state: PlayerState, params: PlayerParams, target: Vec2,
             t_f: float) -> Control:
    """Constant control that lands exactly on `target` at time t_f.

    The heading points from the drift point at t_f to the target, and the
    magnitude scales the isochron radius down to the required distance.
    Targets within BOUNDARY_SLACK outside the disc are clamped onto it.
    """
    if t_f <= 0.0:
        if (target - state.pos).norm() <= BOUNDARY_SLACK:
            return Control(0.0, 0.0)
        raise InfeasibleTargetError(
            f"cannot reach {target} in non-positive time {t_f}")
    circ = isochron(state, params, t_f)
    offset = target - circ.center
    dist = offset.norm()
    if circ.radius <= 0.0:
        if dist <= BOUNDARY_SLACK:
            return Control(0.0, 0.0)
        raise InfeasibleTargetError(
            f"target {dist} away from drift point but max radius is 0 at t={t_f}")
    if dist > circ.radius + BOUNDARY_SLACK:
        raise InfeasibleTargetError(
            f"target outside reachable disc at t={t_f}: "
            f"distance {dist} > radius {circ.radius}")
    u = min(params.u_max * dist / circ.radius, params.u_max)
    theta = offset.angle() if dist > 0.0 else 0.0
    return Control(u, theta)


def speed_bound(params: PlayerParams, v0: float, t: float) -> float:
    """Upper envelope of the speed at time t from initial speed v0."""
    decay = math.exp(-params.mu * t)
    return v0 * decay + params.speed_cap * (1.0 - decay)
