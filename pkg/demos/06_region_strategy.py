"""Two games where plain boundary-chasing is not enough.

First game: the genuinely best terminal point hides in the pocket behind the
fast defender.  Ignoring it, both players keep re-aiming as near-tied boundary
dips overtake each other; honoring it, the attacker throttles down so both
players arrive together at the pocket point, closer to the target.

Second game: the attacker's planned straight run crosses the pocket, and a
defender that aims for the crossing point catches it long before the planned
terminal point.
"""
from reachavoid import (AttackerPolicy, DefenderPolicy, GameConfig,
                        PlayerParams, PlayerState, Scenario, Vec2,
                        best_r3_point, run, strategy_one)

game1 = GameConfig(
    attacker=PlayerState(Vec2(-0.3457, 0.0517), Vec2(0.0862, 0.0338)),
    attacker_params=PlayerParams(1.0, 1.0),
    defender=PlayerState(Vec2(-0.6728, -0.0455), Vec2(1.6534, 0.0907)),
    defender_params=PlayerParams(2.0, 1.0))

plan = strategy_one(game1)
point, t_arr, ctrl = best_r3_point(game1)
print("game 1: the pocket holds the real optimum")
print(f"  best boundary point : payoff {plan.payoff:.4f} "
      f"(terminal condition holds: {plan.h_zero})")
print(f"  best pocket point   : payoff {(point - game1.target).norm():.4f} "
      f"at ({point.x:+.4f}, {point.y:+.4f}), reduced thrust {ctrl.u:.4f}")

si = run(Scenario(cfg=game1))
print(f"  boundary-chasing game: capture t={si.outcome.t:.4f}, "
      f"payoff {si.outcome.payoff:.4f}")
print("  re-aim events while chasing: "
      + ", ".join(f"t={t:.4f}" for t, _ in si.plan_switches[:4]) + ", ...")

matched = run(Scenario(cfg=game1, attacker_policy=AttackerPolicy.MRR,
                       defender_policy=DefenderPolicy.MATCH_MRR,
                       eps_capture=1e-4))
print(f"  throttled pocket run: both arrive at t={matched.outcome.t:.4f} "
      f"within {matched.rows[-1].dist_ad:.1e} of each other, "
      f"payoff {matched.outcome.payoff:.4f}")

game2 = GameConfig(
    attacker=PlayerState(Vec2(0.0, -5.0), Vec2(0.0, 0.0)),
    attacker_params=PlayerParams(1.0, 1.0),
    defender=PlayerState(Vec2(-0.5, -4.9), Vec2(2.0, 0.0)),
    defender_params=PlayerParams(2.0, 1.0))

plan2 = strategy_one(game2)
cut = run(Scenario(cfg=game2, defender_policy=DefenderPolicy.INTERCEPT_R3))
print("\ngame 2: crossing the pocket gets punished")
print(f"  attacker's plan: reach ({plan2.point.x:+.4f}, {plan2.point.y:+.4f}) "
      f"at t={plan2.t_f:.4f} (payoff {plan2.payoff:.4f})")
print(f"  intercepting defender captures at t={cut.outcome.t:.4f}, "
      f"payoff {cut.outcome.payoff:.4f}, "
      f"{(cut.outcome.point - plan2.point).norm():.3f} short of the plan")
