import math

import numpy as np
import pytest

from reachavoid import (Control, PlayerState, RootSet, ScribeMode,
                        ScribeProblem, Vec2, find_zero, gap, propagate,
                        reach_times, scribe_times)

from conftest import random_player


def colinear_problem(mode):
    return ScribeProblem(delta_x=Vec2(1.0, 0.0), delta_v=Vec2(0.0, 0.0),
                         mu=1.0, u_a=1.0, u_d=2.0, mode=mode)


def brute_roots(problem: ScribeProblem, dt: float = 1e-4) -> list[float]:
    """Independent oracle: dense sign scan of the gap on an independent cap.

    The scan interval ends where the tangency radius has provably outgrown any
    value the squared center distance can ever take, so no root is missed.
    """
    o_max = (problem.delta_x.norm() + problem.delta_v.norm() / problem.mu) ** 2
    coeff = problem.radius_coeff
    t_hi = math.sqrt((o_max + 1.0) / coeff) + 2.0 / problem.mu
    ts = np.arange(dt, t_hi, dt)
    vals = gap(problem, ts)
    sign = np.sign(vals)
    idx = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    roots = []
    for i in idx:
        lo, hi = float(ts[i]), float(ts[i + 1])
        f = lambda t: gap(problem, t)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0:
                hi = mid
            else:
                lo = mid
        roots.append(0.5 * (lo + hi))
    return roots


class TestGap:
    def test_zero_time_equals_squared_separation(self):
        for mode in ScribeMode:
            p = ScribeProblem(Vec2(0.7, -2.1), Vec2(0.3, 0.4), 1.4, 0.9, 1.7, mode)
            assert gap(p, 0.0) == pytest.approx(0.7 ** 2 + 2.1 ** 2, abs=1e-14)

    def test_colinear_rest_value(self):
        # 1 - 9 exp(-2) at t = 1 for the external-tangency gap
        p = colinear_problem(ScribeMode.CIRCUMSCRIBE)
        assert gap(p, 1.0) == pytest.approx(1.0 - 9.0 * math.exp(-2.0), abs=1e-14)

    def test_mode_difference_is_nonnegative(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            kwargs = dict(delta_x=Vec2(*rng.uniform(-2, 2, 2)),
                          delta_v=Vec2(*rng.uniform(-1, 1, 2)),
                          mu=rng.uniform(0.3, 2.5),
                          u_a=rng.uniform(0.1, 1.5))
            kwargs["u_d"] = kwargs["u_a"] + rng.uniform(0.1, 1.5)
            t = rng.uniform(0, 4)
            g_in = gap(ScribeProblem(mode=ScribeMode.INSCRIBE, **kwargs), t)
            g_out = gap(ScribeProblem(mode=ScribeMode.CIRCUMSCRIBE, **kwargs), t)
            assert g_in - g_out >= -1e-12


class TestFindZero:
    def test_linear(self):
        assert find_zero(lambda t: t - 1.0, 0.0, 2.0, tol=1e-12) == pytest.approx(1.0, abs=1e-11)

    def test_open_ended_transcendental(self):
        f = lambda t: t - 1.0 + math.exp(-t) - 1.0 / 3.0
        root = find_zero(f, 0.0, None, tol=1e-12, expand_start=1.0, expand_cap=50.0)
        assert root == pytest.approx(0.9444335213779, abs=1e-10)

    def test_no_sign_change_returns_none(self):
        assert find_zero(lambda t: 1.0 + t * t, 0.0, None,
                         expand_cap=100.0) is None


class TestScribeTimes:
    def test_colinear_rest_circumscribe(self):
        # solves t - 1 + exp(-t) = 1/3; frozen from scan-plus-bisection oracle
        roots = scribe_times(colinear_problem(ScribeMode.CIRCUMSCRIBE))
        assert len(roots) == 1
        assert roots.first == pytest.approx(0.9444335213779, abs=1e-8)

    def test_colinear_rest_inscribe(self):
        # solves t - 1 + exp(-t) = 1
        roots = scribe_times(colinear_problem(ScribeMode.INSCRIBE))
        assert len(roots) == 1
        assert roots.first == pytest.approx(1.8414056604370, abs=1e-8)

    def test_special_case_one_counts_match_scan(self, special1):
        for mode in ScribeMode:
            p = special1.scribe_problem(mode)
            mine = scribe_times(p)
            ref = brute_roots(p)
            assert len(mine.expanded()) == len(ref)
            for a, b in zip(mine.times, ref):
                assert a == pytest.approx(b, abs=1e-3)

    def test_overtake_has_three_external_tangencies(self, overtake):
        p = overtake.scribe_problem(ScribeMode.CIRCUMSCRIBE)
        mine = scribe_times(p)
        ref = brute_roots(p, dt=1e-5)
        assert len(mine) == 3
        assert len(ref) == 3
        for a, b in zip(mine.times, ref):
            assert a == pytest.approx(b, abs=1e-3)

    def test_oracle_equivalence_randomized(self):
        rng = np.random.default_rng(23)
        checked = 0
        while checked < 120:
            mu = rng.uniform(0.2, 3.0)
            u_a = rng.uniform(0.2, 1.5)
            u_d = u_a * rng.uniform(1.2, 2.5)
            dx = Vec2(*rng.uniform(-2, 2, 2))
            if dx.norm() < 1e-3:
                continue
            sa = rng.uniform(0, 0.95) * u_a / mu
            sd = rng.uniform(0, 0.95) * u_d / mu
            aa, ad = rng.uniform(0, 2 * math.pi, 2)
            dv = Vec2(sa * math.cos(aa) - sd * math.cos(ad),
                      sa * math.sin(aa) - sd * math.sin(ad))
            mode = ScribeMode.CIRCUMSCRIBE if checked % 2 else ScribeMode.INSCRIBE
            p = ScribeProblem(dx, dv, mu, u_a, u_d, mode)
            mine = scribe_times(p)
            ref = brute_roots(p)
            assert 1 <= len(mine) <= 3
            assert len(mine.expanded()) >= len(ref)
            simple = [t for t, m in zip(mine.times, mine.multiplicities) if m == 1]
            assert len(simple) == len(ref)
            for a, b in zip(simple, ref):
                assert a == pytest.approx(b, abs=1e-3)
            checked += 1

    def test_first_circumscribe_precedes_first_inscribe(self):
        rng = np.random.default_rng(24)
        for _ in range(100):
            mu = rng.uniform(0.2, 3.0)
            u_a = rng.uniform(0.2, 1.5)
            u_d = u_a * rng.uniform(1.2, 2.5)
            dx = Vec2(*rng.uniform(-2, 2, 2))
            if dx.norm() < 1e-3:
                continue
            dv = Vec2(*rng.uniform(-1, 1, 2))
            t_out = scribe_times(ScribeProblem(dx, dv, mu, u_a, u_d,
                                               ScribeMode.CIRCUMSCRIBE)).first
            t_in = scribe_times(ScribeProblem(dx, dv, mu, u_a, u_d,
                                              ScribeMode.INSCRIBE)).first
            assert t_out < t_in

    def test_sign_change_across_simple_roots(self, special1):
        p = special1.scribe_problem(ScribeMode.CIRCUMSCRIBE)
        roots = scribe_times(p)
        for t, m in zip(roots.times, roots.multiplicities):
            if m == 1:
                assert gap(p, t - 1e-6) * gap(p, t + 1e-6) < 0


class TestReachTimes:
    def test_own_position_at_rest(self, params):
        st = PlayerState(Vec2(0.4, 0.2), Vec2(0.0, 0.0))
        roots = reach_times(Vec2(0.4, 0.2), st, params)
        assert roots.times == (0.0,)

    def test_own_position_moving_player_swings_back(self, params):
        st = PlayerState(Vec2(0.0, 0.0), Vec2(1.0, 0.0))
        roots = reach_times(Vec2(0.0, 0.0), st, params)
        assert roots.times[0] == 0.0
        # revisiting time solves |v| s(t) = (u/mu)(t - s(t))
        f = lambda t: (1 - math.exp(-t)) - (t - 1 + math.exp(-t))
        lo, hi = 0.5, 4.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert roots.times[1] == pytest.approx(0.5 * (lo + hi), abs=1e-8)

    def test_rest_single_time_inverse_radius(self, params):
        roots = reach_times(Vec2(math.exp(-1.0), 0.0),
                            PlayerState(Vec2(0, 0), Vec2(0, 0)), params)
        assert len(roots) == 1
        assert roots.first == pytest.approx(1.0, abs=1e-9)

    def test_barrier_point_has_coincident_pair(self, params):
        # x_s sits where the last self-overlap dies: largest two times equal
        st = PlayerState(Vec2(0, 0), Vec2(1, 0))
        roots = reach_times(Vec2(0.3068528194400547, 0.0), st, params)
        exp = roots.expanded()
        assert len(exp) == 3
        assert exp[1] == pytest.approx(math.log(2.0), abs=1e-6)
        assert exp[2] == pytest.approx(math.log(2.0), abs=1e-6)

    def test_round_trip_consistency(self, params):
        rng = np.random.default_rng(25)
        for _ in range(100):
            st = random_player(rng, 1.0, 1.0)
            theta = rng.uniform(0, 2 * math.pi)
            t = rng.uniform(0.05, 4.0)
            landed = propagate(st, params, Control(1.0, theta), t).pos
            roots = reach_times(landed, st, params)
            assert min(abs(r - t) for r in roots.expanded()) < 1e-8


class TestRootSetValidation:
    def test_mismatched_lengths_rejected(self):
        with pytest.raises(ValueError):
            RootSet((1.0, 2.0), (1,))

    def test_problem_requires_separation(self):
        with pytest.raises(ValueError):
            ScribeProblem(Vec2(0, 0), Vec2(1, 0), 1.0, 1.0, 2.0)
