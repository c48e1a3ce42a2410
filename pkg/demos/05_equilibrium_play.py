"""Closed-loop equilibrium play and the price of deviating.

Reproduces the three benchmark games: both players drive to the contested
boundary point closest to the target; then each side unilaterally swaps to
pure pursuit.  The resulting payoff ordering demonstrates the saddle point:
deviating attacker ends farther from the target, deviating defender lets the
attacker through.
"""
from pathlib import Path

from reachavoid import (AttackerPolicy, DefenderPolicy, GameConfig,
                        PlayerParams, PlayerState, Scenario, Vec2, run,
                        strategy_one)
from reachavoid.scenario_io import trace_to_csv
from reachavoid.svgplot import distance_figure, trajectory_figure

CASES = {
    "case1": ((-2.0, 3.0), (-1.0, 0.0), (-3.0, -2.0), (0.0, 2.0)),
    "case2": ((1.0, -0.1), (0.0, 0.0), (1.2, 0.1), (-0.5, -1.0)),
    "case3": ((-0.6, 0.1), (0.0, 0.0), (-0.8, -0.2), (0.0, 0.0)),
}

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

for name, (xa, va, xd, vd) in CASES.items():
    cfg = GameConfig(attacker=PlayerState(Vec2(*xa), Vec2(*va)),
                     attacker_params=PlayerParams(1.0, 1.0),
                     defender=PlayerState(Vec2(*xd), Vec2(*vd)),
                     defender_params=PlayerParams(2.0, 1.0))
    plan = strategy_one(cfg)
    print(f"{name}: planned terminal point ({plan.point.x:+.4f}, "
          f"{plan.point.y:+.4f}), payoff {plan.payoff:.4f}, "
          f"terminal-condition check {plan.h_zero}")
    rows = {}
    for tag, ap, dp in (
            ("equilibrium", AttackerPolicy.STRATEGY_I, DefenderPolicy.STRATEGY_I),
            ("attacker deviates", AttackerPolicy.PURE_PURSUIT, DefenderPolicy.STRATEGY_I),
            ("defender deviates", AttackerPolicy.STRATEGY_I, DefenderPolicy.PURE_PURSUIT)):
        trace = run(Scenario(cfg=cfg, attacker_policy=ap, defender_policy=dp))
        o = trace.outcome
        rows[tag] = o
        print(f"  {tag:<18} {o.kind.value:<15} t={o.t:6.3f}  payoff={o.payoff:.4f}")
        if tag == "equilibrium":
            (out / f"{name}_trace.csv").write_text(trace_to_csv(trace))
            (out / f"{name}_trajectories.svg").write_text(trajectory_figure(trace))
            (out / f"{name}_distances.svg").write_text(distance_figure(trace))
    assert rows["attacker deviates"].payoff >= rows["equilibrium"].payoff \
        >= rows["defender deviates"].payoff
    print(f"  saddle ordering holds: {rows['attacker deviates'].payoff:.3f} "
          f">= {rows['equilibrium'].payoff:.3f} "
          f">= {rows['defender deviates'].payoff:.3f}\n")
print(f"traces and figures in {out}/")
