"""Closed-loop game simulator.

Each step both policies map the full current state to a control (complete
information), the states advance by the exact closed-form propagation over one
step, and the terminal conditions are checked.  Because propagation within a
step is exact, the step size only sets the replanning cadence, not any
integration error.  Terminal events (capture ball, target ball) are refined by
bisection inside the step so reported event times are comparable across step
sizes; detection also subsamples each step so brief closest approaches are not
stepped over.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

from .dynamics import Control, InfeasibleTargetError, PlayerState, propagate
from .dominance import GameConfig
from .geometry import Vec2
from .strategies import (AttackerWinsError, PLAN_SWITCH_MARGIN, best_r3_point,
                         can_reach_target, choose_plan, first_unsafe_crossing,
                         pure_pursuit, steer_to)

EVENT_REFINE_TOL = 1e-6
DETECT_SUBSTEPS = 8


class AttackerPolicy(enum.Enum):
    STRATEGY_I = "strategy_i"
    PURE_PURSUIT = "pure_pursuit"
    MRR = "mrr"
    CONSTANT = "constant"


class DefenderPolicy(enum.Enum):
    STRATEGY_I = "strategy_i"
    PURE_PURSUIT = "pure_pursuit"
    INTERCEPT_R3 = "intercept_r3"
    MATCH_MRR = "match_mrr"


class OutcomeKind(enum.Enum):
    CAPTURED = "captured"
    TARGET_REACHED = "target_reached"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    t: float
    payoff: float
    point: Optional[Vec2] = None


@dataclass(frozen=True)
class Scenario:
    cfg: GameConfig
    attacker_policy: AttackerPolicy = AttackerPolicy.STRATEGY_I
    defender_policy: DefenderPolicy = DefenderPolicy.STRATEGY_I
    dt: float = 0.025
    t_max: Optional[float] = None
    eps_capture: float = 5e-3
    eps_target: float = 1e-2
    plan_switch_margin: float = PLAN_SWITCH_MARGIN
    constant_ctrl: Optional[Control] = None

    def __post_init__(self):
        if not (0.0 < self.dt <= 0.05):
            raise ValueError("step must be positive and at most 0.05")
        if self.eps_capture <= 0.0 or self.eps_target <= 0.0:
            raise ValueError("event radii must be positive")
        if self.attacker_policy is AttackerPolicy.CONSTANT and self.constant_ctrl is None:
            raise ValueError("constant attacker policy needs constant_ctrl")
        if self.defender_policy is DefenderPolicy.MATCH_MRR \
                and self.attacker_policy is not AttackerPolicy.MRR:
            raise ValueError("match_mrr shadows the region strategy; "
                             "pair it with the mrr attacker policy")

    @property
    def horizon(self) -> float:
        return self.t_max if self.t_max is not None else 10.0 / self.cfg.mu


@dataclass(frozen=True)
class TraceRow:
    t: float
    attacker: PlayerState
    defender: PlayerState
    attacker_ctrl: Control
    defender_ctrl: Control
    dist_ad: float
    dist_at: float


@dataclass(frozen=True)
class GameTrace:
    scenario: Scenario
    rows: tuple[TraceRow, ...]
    outcome: Outcome
    notes: tuple[str, ...] = ()
    plan_switches: tuple[tuple[float, Vec2], ...] = ()

    @property
    def payoff(self) -> float:
        return self.outcome.payoff


def _dists(cfg: GameConfig, a: PlayerState, d: PlayerState) -> tuple[float, float]:
    return (a.pos - d.pos).norm(), (a.pos - cfg.target).norm()


# a tracked plan point relocating farther than this is a discrete switch
PLAN_JUMP_DIST = 0.02


@dataclass
class _PlanTracker:
    """Shared per-run state for the equal-time plan and the region plan."""

    point: Optional[Vec2] = None
    plan: Optional[object] = None
    mrr_target: Optional[tuple[Vec2, float]] = None
    mrr_failed: bool = False
    prev_heading_a: float = 0.0
    prev_heading_d: float = 0.0
    target_mode: bool = False
    switches: list = field(default_factory=list)


def _strategy_plan(cfg: GameConfig, sc: Scenario, t: float, tracker: _PlanTracker):
    plan = choose_plan(cfg, tracker.point, switch_margin=sc.plan_switch_margin)
    if tracker.point is not None \
            and (plan.point - tracker.point).norm() > PLAN_JUMP_DIST:
        tracker.switches.append((t, plan.point))
    tracker.point = plan.point
    tracker.plan = plan
    return plan


def _attacker_control(cfg: GameConfig, sc: Scenario, t: float,
                      tracker: _PlanTracker, notes: list[str]) -> Control:
    pol = sc.attacker_policy
    if pol is AttackerPolicy.CONSTANT:
        return sc.constant_ctrl
    # state-feedback target check: grab the target outright once it is safe
    direct = can_reach_target(cfg)
    if direct is not None:
        if not tracker.target_mode:
            notes.append(f"t={t:.6f} attacker switches to target run")
            tracker.target_mode = True
        tracker.prev_heading_a = direct.theta
        return direct
    tracker.target_mode = False
    if pol is AttackerPolicy.PURE_PURSUIT:
        ctrl = pure_pursuit(cfg, "attacker", tracker.prev_heading_a)
        tracker.prev_heading_a = ctrl.theta
        return ctrl
    if pol is AttackerPolicy.MRR:
        if tracker.mrr_target is None and not tracker.mrr_failed:
            picked = best_r3_point(cfg)
            if picked is None:
                tracker.mrr_failed = True
                notes.append("no certified third-region component; "
                             "attacker falls back to the equal-time plan")
            else:
                point, t_d2, _ = picked
                tracker.mrr_target = (point, t + t_d2)
                notes.append(f"t={t:.6f} region strategy locks point "
                             f"({point.x:.6f}, {point.y:.6f}) "
                             f"for arrival at {t + t_d2:.6f}")
        if tracker.mrr_target is not None:
            point, t_arr = tracker.mrr_target
            t_go = t_arr - t
            if t_go > 1e-9:
                try:
                    ctrl = steer_to(cfg.attacker, cfg.attacker_params, point, t_go)
                    tracker.prev_heading_a = ctrl.theta
                    return ctrl
                except InfeasibleTargetError:
                    notes.append(f"t={t:.6f} region point infeasible; "
                                 "pure pursuit for this step")
            ctrl = pure_pursuit(cfg, "attacker", tracker.prev_heading_a)
            tracker.prev_heading_a = ctrl.theta
            return ctrl
    # strategy one (also the MRR fallback)
    try:
        plan = tracker.plan if tracker.plan is not None else _strategy_plan(cfg, sc, t, tracker)
        tracker.prev_heading_a = plan.attacker_ctrl.theta
        return plan.attacker_ctrl
    except (AttackerWinsError, InfeasibleTargetError) as exc:
        notes.append(f"t={t:.6f} attacker plan failed ({exc}); pure pursuit")
        ctrl = pure_pursuit(cfg, "attacker", tracker.prev_heading_a)
        tracker.prev_heading_a = ctrl.theta
        return ctrl


def _defender_control(cfg: GameConfig, sc: Scenario, t: float,
                      attacker_ctrl: Control, tracker: _PlanTracker,
                      notes: list[str]) -> Control:
    pol = sc.defender_policy
    if pol is DefenderPolicy.PURE_PURSUIT:
        ctrl = pure_pursuit(cfg, "defender", tracker.prev_heading_d)
        tracker.prev_heading_d = ctrl.theta
        return ctrl
    if pol is DefenderPolicy.MATCH_MRR:
        if tracker.mrr_target is not None:
            point, t_arr = tracker.mrr_target
            t_go = t_arr - t
            if t_go > 1e-9:
                try:
                    ctrl = steer_to(cfg.defender, cfg.defender_params, point, t_go)
                    tracker.prev_heading_d = ctrl.theta
                    return ctrl
                except InfeasibleTargetError:
                    pass
        ctrl = pure_pursuit(cfg, "defender", tracker.prev_heading_d)
        tracker.prev_heading_d = ctrl.theta
        return ctrl
    if pol is DefenderPolicy.INTERCEPT_R3:
        horizon = None
        if tracker.plan is not None:
            horizon = tracker.plan.t_f
        else:
            try:
                plan = _strategy_plan(cfg, sc, t, tracker)
                horizon = plan.t_f
            except (AttackerWinsError, InfeasibleTargetError):
                horizon = sc.horizon - t
        crossing = first_unsafe_crossing(cfg, attacker_ctrl, horizon)
        if crossing is not None:
            point, tau = crossing
            try:
                ctrl = steer_to(cfg.defender, cfg.defender_params, point, tau)
                tracker.prev_heading_d = ctrl.theta
                return ctrl
            except InfeasibleTargetError:
                notes.append(f"t={t:.6f} intercept point infeasible; "
                             "pure pursuit for this step")
                ctrl = pure_pursuit(cfg, "defender", tracker.prev_heading_d)
                tracker.prev_heading_d = ctrl.theta
                return ctrl
        # no interceptable stretch: behave like the equal-time plan
        if tracker.plan is not None:
            tracker.prev_heading_d = tracker.plan.defender_ctrl.theta
            return tracker.plan.defender_ctrl
        ctrl = pure_pursuit(cfg, "defender", tracker.prev_heading_d)
        tracker.prev_heading_d = ctrl.theta
        return ctrl
    # strategy one
    try:
        plan = tracker.plan if tracker.plan is not None else _strategy_plan(cfg, sc, t, tracker)
        tracker.prev_heading_d = plan.defender_ctrl.theta
        return plan.defender_ctrl
    except (AttackerWinsError, InfeasibleTargetError) as exc:
        notes.append(f"t={t:.6f} defender plan failed ({exc}); pure pursuit")
        ctrl = pure_pursuit(cfg, "defender", tracker.prev_heading_d)
        tracker.prev_heading_d = ctrl.theta
        return ctrl


def _event_time(cfg: GameConfig, a: PlayerState, d: PlayerState,
                ca: Control, cd: Control, dt: float,
                eps_capture: float, eps_target: float) -> Optional[tuple[float, OutcomeKind]]:
    """Earliest in-step crossing of either terminal ball, or None."""

    def margins(h: float) -> tuple[float, float]:
        pa = propagate(a, cfg.attacker_params, ca, h)
        pd = propagate(d, cfg.defender_params, cd, h)
        return ((pa.pos - pd.pos).norm() - eps_capture,
                (pa.pos - cfg.target).norm() - eps_target)

    hs = [dt * k / DETECT_SUBSTEPS for k in range(DETECT_SUBSTEPS + 1)]
    prev = margins(0.0)
    for h0, h1 in zip(hs[:-1], hs[1:]):
        cur = margins(h1)
        for idx, kind in ((0, OutcomeKind.CAPTURED), (1, OutcomeKind.TARGET_REACHED)):
            if prev[idx] > 0.0 >= cur[idx]:
                lo, hi = h0, h1
                while hi - lo > EVENT_REFINE_TOL:
                    mid = 0.5 * (lo + hi)
                    if margins(mid)[idx] > 0.0:
                        lo = mid
                    else:
                        hi = mid
                return hi, kind
        prev = cur
    return None


def run(sc: Scenario) -> GameTrace:
    """Simulate one scenario to its terminal event or the horizon."""
    cfg = sc.cfg
    a, d = cfg.attacker, cfg.defender
    t = 0.0
    tracker = _PlanTracker()
    notes: list[str] = []
    rows: list[TraceRow] = []

    dist_ad, dist_at = _dists(cfg, a, d)
    if dist_ad <= sc.eps_capture:
        outcome = Outcome(OutcomeKind.CAPTURED, 0.0, dist_at, a.pos)
        return GameTrace(sc, (), outcome, tuple(notes))
    if dist_at <= sc.eps_target:
        outcome = Outcome(OutcomeKind.TARGET_REACHED, 0.0, dist_at, a.pos)
        return GameTrace(sc, (), outcome, tuple(notes))

    while t < sc.horizon - 1e-12:
        step_cfg = replace(cfg, attacker=a, defender=d)
        tracker.plan = None
        ctrl_a = _attacker_control(step_cfg, sc, t, tracker, notes)
        ctrl_d = _defender_control(step_cfg, sc, t, ctrl_a, tracker, notes)
        if not rows:
            dist_ad, dist_at = _dists(cfg, a, d)
            rows.append(TraceRow(t, a, d, ctrl_a, ctrl_d, dist_ad, dist_at))
        dt = min(sc.dt, sc.horizon - t)
        event = _event_time(step_cfg, a, d, ctrl_a, ctrl_d, dt,
                            sc.eps_capture, sc.eps_target)
        if event is not None:
            h, kind = event
            a = propagate(a, cfg.attacker_params, ctrl_a, h)
            d = propagate(d, cfg.defender_params, ctrl_d, h)
            t += h
            dist_ad, dist_at = _dists(cfg, a, d)
            rows.append(TraceRow(t, a, d, ctrl_a, ctrl_d, dist_ad, dist_at))
            outcome = Outcome(kind, t, dist_at, a.pos)
            return GameTrace(sc, tuple(rows), outcome, tuple(notes),
                             tuple(tracker.switches))
        a = propagate(a, cfg.attacker_params, ctrl_a, dt)
        d = propagate(d, cfg.defender_params, ctrl_d, dt)
        t += dt
        dist_ad, dist_at = _dists(cfg, a, d)
        rows.append(TraceRow(t, a, d, ctrl_a, ctrl_d, dist_ad, dist_at))
    dist_ad, dist_at = _dists(cfg, a, d)
    outcome = Outcome(OutcomeKind.TIMEOUT, t, dist_at, a.pos)
    return GameTrace(sc, tuple(rows), outcome, tuple(notes),
                     tuple(tracker.switches))


@dataclass(frozen=True)
class TraceSummary:
    outcome: Optional[Outcome]
    steps: int
    error: Optional[str] = None


def sweep(scenarios: list[Scenario]) -> list[TraceSummary]:
    """Run scenarios independently; per-scenario failures stay isolated."""
    out = []
    for sc in scenarios:
        try:
            trace = run(sc)
            out.append(TraceSummary(outcome=trace.outcome, steps=len(trace.rows)))
        except Exception as exc:  # noqa: BLE001 - isolation is the contract
            out.append(TraceSummary(outcome=None, steps=0, error=str(exc)))
    return out
