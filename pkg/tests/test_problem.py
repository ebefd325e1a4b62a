import json
import math

import numpy as np
import pytest

from freezeflow import (
    Domain,
    MuSigmaPair,
    PiecewiseLinear,
    ProblemSpec,
    SolutionField,
    from_vw,
    initial_from_terminal,
    spec_from_json,
    spec_to_json,
    to_vw,
    validate,
)

PL = PiecewiseLinear


class TestPiecewiseLinear:
    def test_eval_interior_and_tails(self):
        f = PL([0.0, 1.0], [0.0, 2.0], left_slope=-1.0, right_slope=3.0)
        assert f(0.5) == 1.0
        assert f(-2.0) == 2.0  # 0 + (-1) * (-2)
        assert f(2.0) == 5.0
        xs = np.array([-1.0, 0.25, 3.0])
        assert np.allclose(f(xs), [1.0, 0.5, 8.0])

    def test_validation(self):
        with pytest.raises(ValueError):
            PL([1.0, 1.0], [0.0, 0.0])
        with pytest.raises(ValueError):
            PL([0.0], [math.nan])

    def test_slopes_and_extrema(self):
        f = PL([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0], -1.0, 1.0)  # |x|
        assert f.max_abs_slope() == 1.0
        assert f.local_extrema() == [0.0]
        assert f.flat_segments() == []
        g = PL([0.0, 1.0, 2.0], [0.0, 0.0, 1.0])
        assert g.flat_segments() == [(0.0, 1.0)]

    def test_level_sets_match_bruteforce(self, rng):
        # brute-force oracle: dense sampling of the indicator
        for _ in range(25):
            k = rng.integers(2, 9)
            xs = np.sort(rng.uniform(-5, 5, size=k))
            if np.min(np.diff(xs)) < 1e-2:
                continue
            ys = rng.uniform(-3, 3, size=k)
            f = PL(xs, ys, rng.uniform(-2, 2), rng.uniform(-2, 2))
            b = rng.uniform(-3, 3)
            grid = np.linspace(-9, 9, 4001)
            vals = f(grid)
            sub = f.sublevel_intervals(b)
            ind = np.zeros_like(grid, dtype=bool)
            for lo, hi in sub:
                ind |= (grid >= lo) & (grid <= hi)
            assert np.all(vals[ind] <= b + 1e-9), "sublevel contains points above b"
            outside_below = (vals <= b - 1e-9) & (~ind)
            assert not outside_below.any(), "missed sublevel points"

    def test_min_max_total_variation(self):
        f = PL([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0], -1.0, 1.0)
        assert f.min_max_on(-0.5, 2.0) == (0.0, 2.0)
        assert f.total_variation_on(-1.0, 1.0) == 2.0

    def test_algebra_and_inverse(self):
        f = PL([0.0, 2.0], [0.0, 4.0], 1.0, 2.0)
        g = PL([1.0], [1.0], 0.0, 0.0)
        s = f + g
        assert s(1.5) == f(1.5) + 1.0
        inv = f.inverse()
        for x in (-1.0, 0.3, 1.9, 5.0):
            assert abs(inv(f(x)) - x) < 1e-12

    def test_compose(self):
        outer = PL([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0], -1.0, 1.0)  # |y|
        inner = PL([0.0], [-2.0], 1.0, 1.0)  # x - 2
        comp = outer.compose(inner)
        for x in np.linspace(-3, 6, 41):
            assert abs(comp(x) - abs(x - 2.0)) < 1e-12

    def test_sampler(self):
        f = PL.from_callable(lambda x: x * x, -2, 2, 401)
        assert abs(f(1.3) - 1.69) < 1e-4


class TestValidate:
    def test_wedge_is_valid(self, wedge_spec):
        assert validate(wedge_spec).admissible

    def test_fully_frozen_segment_valid(self):
        f = PL([0.0, 1.0], [0.0, 1.0])
        spec = ProblemSpec(Domain.segment(0, 1), f, f)
        assert validate(spec).admissible

    def test_constant_violation(self):
        spec = ProblemSpec(Domain.whole_line(), PL.constant(0.0), PL.constant(1.0))
        rep = validate(spec)
        assert not rep.admissible
        assert any(i.code == "constraint" for i in rep.issues)

    def test_boundary_equality_required(self):
        v0 = PL([0.0, 1.0], [0.5, 1.0])
        w0 = PL([0.0, 1.0], [0.0, 1.0])
        spec = ProblemSpec(Domain.segment(0, 1), v0, w0)
        assert any(i.code == "boundary" for i in validate(spec).issues)

    def test_flat_segments_flagged_not_fatal(self):
        v0 = PL([0.0, 1.0, 2.0], [1.0, 1.0, 2.0])
        w0 = PL([0.0, 2.0], [0.0, 0.0])
        spec = ProblemSpec(Domain.whole_line(), v0, w0)
        rep = validate(spec)
        assert not rep.admissible
        assert all(i.code == "flat_segment" for i in rep.issues)
        assert not rep.errors()
        SolutionField(spec)  # flats are processable

    def test_lipschitz_constant_exact(self, wedge_spec):
        assert wedge_spec.lipschitz == 1.0
        v0 = PL([0.0, 1.0], [0.0, 2.5], -0.25, 4.0)
        spec = ProblemSpec(Domain.whole_line(), v0, v0)
        assert spec.lipschitz == 4.0


class TestMuSigma:
    def test_zero_case(self):
        ms = MuSigmaPair(PL.constant(0.0), PL.constant(0.0))
        v, w = to_vw(ms)
        assert v(3.0) == 0.0 and w(-1.0) == 0.0

    def test_direct_substitution(self):
        ms = MuSigmaPair(PL.linear(1.0), PL.constant(2.0))
        v, w = to_vw(ms)
        for x in (-2.0, 0.0, 1.7):
            assert abs(v(x) - (x / 2 + 1)) < 1e-12
            assert abs(w(x) - (x / 2 - 1)) < 1e-12

    def test_round_trip_exact_at_breakpoints(self, rng):
        mu = PL([-1.0, 0.5, 2.0], [1.0, -0.5, 3.0], 1.0, -1.0)
        sigma = PL([-1.0, 0.0, 2.0], [0.5, 1.5, 0.0], -0.5, 0.5)
        ms = MuSigmaPair(mu, sigma)
        v, w = to_vw(ms)
        back = from_vw(v, w)
        for x in list(mu.xs) + list(rng.uniform(-4, 4, size=100)):
            assert abs(back.mu(x) - mu(x)) < 1e-12
            assert abs(back.sigma(x) - sigma(x)) < 1e-12

    def test_from_vw_examples(self):
        # frozen data
        f = PL.linear(1.0)
        ms = from_vw(f, f)
        assert abs(ms.mu(2.0) - 4.0) < 1e-12 and ms.sigma(2.0) == 0.0
        # pointwise arithmetic, checked by independent evaluation
        v = PL([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0], -1.0, 1.0)
        w = PL.linear(0.5)
        ms = from_vw(v, w)
        for x in (-2.0, -1.0, 0.0, 0.5, 3.0):
            assert abs(ms.mu(x) - (abs(x) + x / 2)) < 1e-12
            assert abs(ms.sigma(x) - (abs(x) - x / 2)) < 1e-12
        # constants
        ms = from_vw(PL.constant(1.0), PL.constant(0.0))
        assert ms.mu(0.0) == 1.0 and ms.sigma(0.0) == 1.0

    def test_from_vw_rejects_violation(self):
        with pytest.raises(ValueError):
            from_vw(PL.constant(0.0), PL.constant(1.0))


class TestInitialFromTerminal:
    def test_zero_line_instantly_frozen(self):
        T = PL.constant(0.0)
        f = PL.linear(1.0)
        spec = initial_from_terminal(T, f)
        for x in (-2.0, 0.0, 1.5):
            assert abs(spec.v0(x) - x) < 1e-12
            assert abs(spec.w0(x) - x) < 1e-12

    def test_constant_line(self):
        # T = c: v0 = x + c, w0 = x - c; freezes at t = c with common value x
        c = 0.75
        spec = initial_from_terminal(PL.constant(c), PL.linear(1.0))
        for x in (-1.0, 0.0, 2.0):
            assert abs(spec.v0(x) - (x + c)) < 1e-12
            assert abs(spec.w0(x) - (x - c)) < 1e-12
        field = SolutionField(spec, tolerance=1e-12)
        for x in (-0.5, 0.0, 1.0):
            v, w = field.eval_pair(x, c)
            assert abs(v - w) < 1e-9  # sigma vanishes on the freezing line
            assert abs(v - x) < 1e-9

    def test_vee_line_by_solver_round_trip(self):
        T = PL([0.0], [0.0], -0.5, 0.5)  # |x| / 2
        spec = initial_from_terminal(T, PL.linear(1.0))
        assert validate(spec).admissible
        field = SolutionField(spec, tolerance=1e-12)
        for x in (-2.0, -0.5, 0.0, 0.7, 1.5):
            tx = abs(x) / 2
            v, w = field.eval_pair(x, tx + 0.25)
            assert abs(v - w) < 1e-9
            assert abs(v - x) < 1e-9

    def test_preconditions(self):
        with pytest.raises(ValueError):
            initial_from_terminal(PL.linear(1.0), PL.linear(1.0))  # slope 1 not < 1
        with pytest.raises(ValueError):
            initial_from_terminal(PL.constant(-1.0), PL.linear(1.0))
        with pytest.raises(ValueError):
            initial_from_terminal(PL.constant(1.0), PL.constant(0.0))  # f not increasing

    def test_random_freezing_lines(self, rng):
        # arbitrary admissible freezing lines: output validates and the
        # solver's dispersion vanishes on the line
        for _ in range(6):
            k = rng.integers(2, 6)
            xs = np.sort(rng.uniform(-3, 3, size=k))
            while k > 1 and np.min(np.diff(xs)) < 0.1:
                xs = np.sort(rng.uniform(-3, 3, size=k))
            slopes = rng.uniform(-0.9, 0.9, size=k + 1)
            ys = [float(rng.uniform(0.1, 1.5))]
            for s, (a, b) in zip(slopes[1:-1], zip(xs, xs[1:])):
                ys.append(ys[-1] + s * (b - a))
            ys = np.maximum(np.array(ys), 0.0)
            T = PL(xs, ys, float(abs(slopes[0])) * -1.0, float(abs(slopes[-1])))
            f = PL.linear(float(rng.uniform(0.3, 2.0)), float(rng.uniform(-1, 1)))
            spec = initial_from_terminal(T, f)
            assert validate(spec).admissible
            field = SolutionField(spec, tolerance=1e-11)
            for x in rng.uniform(-2.5, 2.5, size=4):
                tx = T(float(x))
                v, w = field.eval_pair(float(x), tx + 0.1)
                assert abs(v - w) < 1e-8
                assert abs(v - f(float(x))) < 1e-8


class TestJson:
    def test_round_trip(self, wedge_spec, tmp_path):
        obj = spec_to_json(wedge_spec)
        back = spec_from_json(json.loads(json.dumps(obj)))
        assert back.v0.xs == wedge_spec.v0.xs
        assert back.w0.left_slope == wedge_spec.w0.left_slope

    def test_mu_sigma_form(self):
        obj = {
            "domain": {"kind": "whole_line"},
            "mu_sigma": True,
            "mu": {"breakpoints": [0.0], "values": [0.0], "left_slope": 1.0, "right_slope": 1.0},
            "sigma": {"breakpoints": [0.0], "values": [2.0], "left_slope": 0.0, "right_slope": 0.0},
        }
        spec = spec_from_json(obj)
        assert abs(spec.v0(2.0) - 2.0) < 1e-12
        assert abs(spec.w0(2.0) - 0.0) < 1e-12
