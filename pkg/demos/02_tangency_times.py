"""When do the two players' reachable circles touch?

The external tangency (circumscribing) time is the earliest moment the
defender could possibly capture; the internal tangency (inscribing) time is
when the attacker's whole reachable set is swallowed.  Depending on the
initial drift the gap function crosses zero once or three times; this script
shows both regimes and checks the solver against a dense sign scan.
"""
import numpy as np

from reachavoid import ScribeMode, ScribeProblem, Vec2, gap, scribe_times

print("Resting players, one unit apart, accelerations 1 vs 2:")
for mode in ScribeMode:
    p = ScribeProblem(Vec2(1, 0), Vec2(0, 0), mu=1.0, u_a=1.0, u_d=2.0, mode=mode)
    roots = scribe_times(p)
    print(f"  {mode.value:<12} -> t = {roots.first:.6f}")

print("\nA defender streaking past a close attacker touches three times:")
dx = Vec2(0.12, 0.002)
dv = Vec2(-2.75, 0.0)
p = ScribeProblem(dx, dv, mu=1.0, u_a=1.0, u_d=2.0, mode=ScribeMode.CIRCUMSCRIBE)
roots = scribe_times(p)
print("  solver:", ", ".join(f"{t:.6f}" for t in roots.times))

ts = np.arange(1e-5, 6.0, 1e-5)
vals = gap(p, ts)
sign_flips = ts[np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)]
print("  scan:  ", ", ".join(f"{t:.6f}" for t in sign_flips))
print("  (touch, separate again, then be overtaken for good)")
