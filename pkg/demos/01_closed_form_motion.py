"""Closed-form motion of one damped double-integrator player.

Walks through the three motion primitives: exact propagation under a constant
control, the isochron (the circle of positions reachable at exactly time t),
and steering -- recovering the constant control that lands on a chosen point
at a chosen time.
"""
import math

from reachavoid import (Control, PlayerParams, PlayerState, Vec2, isochron,
                        propagate, steer_to)

params = PlayerParams(u_max=1.0, mu=1.0)
start = PlayerState(pos=Vec2(0.0, 0.0), vel=Vec2(1.0, 0.0))

print("Full thrust straight ahead from a moving start:")
for t in (0.5, 1.0, 2.0, 5.0):
    st = propagate(start, params, Control(1.0, 0.0), t)
    print(f"  t={t:4.1f}  pos=({st.pos.x:+.4f}, {st.pos.y:+.4f})  "
          f"speed={st.vel.norm():.4f}  (cap {params.speed_cap:.1f})")

print("\nThe reachable set at each time is a circle:")
for t in (0.5, 1.0, 2.0):
    iso = isochron(start, params, t)
    print(f"  t={t:4.1f}  center=({iso.center.x:+.4f}, {iso.center.y:+.4f})  "
          f"radius={iso.radius:.4f}")

print("\nEvery admissible constant heading lands exactly on that circle:")
t = 1.5
iso = isochron(start, params, t)
for theta_deg in (0, 90, 200):
    st = propagate(start, params, Control(1.0, math.radians(theta_deg)), t)
    err = abs((st.pos - iso.center).norm() - iso.radius)
    print(f"  heading {theta_deg:3d} deg: |distance-to-center - radius| = {err:.2e}")

print("\nSteering inverts the map: pick a point inside the circle, get the control.")
target = iso.center + Vec2(0.3 * iso.radius, 0.2 * iso.radius)
ctrl = steer_to(start, params, target, t)
landed = propagate(start, params, ctrl, t).pos
print(f"  target ({target.x:+.4f}, {target.y:+.4f}) -> "
      f"u={ctrl.u:.4f}, theta={ctrl.theta:.4f}")
print(f"  landing error {(landed - target).norm():.2e}")
