"""Reach-avoid games between damped double-integrator players.

A faster defender guards a static target against a slower attacker; the
library computes the exact single-player motion primitives (closed-form
propagation, isochrones, point steering), the tangency-time solver for the two
isochron families, each player's multiple reachable region, the attacker's
dominance regions, equal-time capture plans and deviation strategies, and a
closed-loop simulator that reproduces the reference scenarios.
"""
from .dynamics import (Control, DomainError, InfeasibleTargetError, Isochron,
                       PlayerParams, PlayerState, isochron, propagate,
                       steer_to)
from .dominance import (BoundaryMinimum, CaptureBoundary, GameConfig,
                        R3Component, R3Condition, RegionLabel,
                        boundary_minima, capture_boundary, classify_point,
                        isochron_intersections, r3_certificates, region_map,
                        tangency_windows)
from .engine import (AttackerPolicy, DefenderPolicy, GameTrace, Outcome,
                     OutcomeKind, Scenario, TraceRow, run, sweep)
from .geometry import Vec2
from .mrr import (Branch, MrrBoundary, ReachClassification, ReachKind,
                  barrier_time, boundary_point, classify, cusp_time,
                  mrr_boundary)
from .scribe import (RootSet, ScribeMode, ScribeProblem, find_zero, gap,
                     reach_times, scribe_times)
from .strategies import (AttackerWinsError, CostateRecord, TerminalPlan,
                         apollonius_circle, apollonius_plan, best_r3_point,
                         can_reach_target, choose_plan, costate_record,
                         hamiltonian_check, mrr_strategy, plan_for_point,
                         pure_pursuit, strategy_one)

__version__ = "0.1.0"

__all__ = [
    "AttackerPolicy", "AttackerWinsError", "BoundaryMinimum", "Branch",
    "CaptureBoundary", "Control", "CostateRecord", "DefenderPolicy", "DomainError",
    "GameConfig", "GameTrace", "InfeasibleTargetError", "Isochron",
    "MrrBoundary", "Outcome", "OutcomeKind", "PlayerParams", "PlayerState",
    "R3Component", "R3Condition", "ReachClassification", "ReachKind",
    "RegionLabel", "RootSet", "Scenario", "ScribeMode", "ScribeProblem",
    "TerminalPlan", "TraceRow", "Vec2", "apollonius_circle", "apollonius_plan",
    "barrier_time", "best_r3_point", "boundary_minima", "boundary_point",
    "can_reach_target", "capture_boundary", "choose_plan", "classify",
    "costate_record",
    "classify_point", "cusp_time", "find_zero", "gap", "hamiltonian_check",
    "isochron", "isochron_intersections", "mrr_boundary", "mrr_strategy",
    "plan_for_point", "propagate", "pure_pursuit", "r3_certificates",
    "reach_times", "region_map", "run", "scribe_times", "steer_to",
    "strategy_one", "sweep", "tangency_windows",
]
