import random

import numpy as np
import pytest

from fibresense import (BudgetError, DesignSpace, LinearityError, ReflectorDesign,
                        ResponseCurve, SpanError, UsableRangeLength, VoltageSpan,
                        default_design_space, evaluate_design, grid_sweep,
                        pattern_search, refine_local)


@pytest.fixture(scope="module")
def space():
    return default_design_space()


class TestDesignSpace:
    def test_invariants(self):
        with pytest.raises(ValueError):
            DesignSpace(t_min=(2.0, 1.0, 2))
        with pytest.raises(ValueError):
            DesignSpace(t_min=(1.0, 3.0, 2), t_max=(2.0, 5.0, 2))
        with pytest.raises(ValueError):
            DesignSpace(alpha=(120.0, 180.0, 0))

    def test_grid_size_and_order(self, space):
        assert space.size() == 2 * 4 * 3 * 3
        designs = list(space.designs())
        assert len(designs) == space.size()
        assert designs[0] == ReflectorDesign(1.0, 2.0, 120.0, 0.6)
        # lexicographic: last axis varies fastest
        assert designs[1].reflectance > designs[0].reflectance

    def test_full_scale_gain_default(self, space):
        # the best design's closest approach reads the full 5 V scale
        from fibresense import theoretical_voltage
        best = ReflectorDesign(1.0, 5.0, 120.0, 0.95).to_profile()
        v = theoretical_voltage(space.fiber, space.clearance, best.surface)
        assert v == pytest.approx(5.0, abs=1e-9)


class TestObjectives:
    def test_constant_profile_scores_zero_span(self, space):
        profile = ReflectorDesign(2.0, 2.0, 120.0, 0.9).to_profile()
        assert evaluate_design(space, profile, VoltageSpan((0.0, 120.0))) == 0.0

    def test_larger_ramp_scores_higher_span(self, space):
        big = ReflectorDesign(1.0, 5.0, 120.0, 0.95).to_profile()
        small = ReflectorDesign(1.0, 2.0, 120.0, 0.95).to_profile()
        objective = VoltageSpan((0.0, 120.0))
        assert evaluate_design(space, big, objective) > evaluate_design(space, small, objective)

    def test_perfect_line_has_zero_linearity_error(self):
        q = np.arange(0.0, 101.0)
        curve = ResponseCurve.from_arrays(q, 1.0 + 0.02 * q)
        assert LinearityError((0.0, 100.0)).score(curve) == pytest.approx(0.0, abs=1e-12)

    def test_curved_response_scores_below_line(self, space):
        profile = ReflectorDesign(1.0, 5.0, 120.0, 0.95).to_profile()
        score = evaluate_design(space, profile, LinearityError((0.0, 120.0)))
        assert score < -1e-3

    def test_usable_range_length_of_flat_curve_is_zero(self):
        q = np.arange(0.0, 50.0)
        curve = ResponseCurve.from_arrays(q, np.full(50, 2.0))
        assert UsableRangeLength(0.01).score(curve) == 0.0

    def test_window_outside_span_is_an_error(self, space):
        profile = ReflectorDesign(1.0, 5.0, 120.0, 0.95).to_profile()
        with pytest.raises(SpanError):
            evaluate_design(space, profile, VoltageSpan((0.0, 150.0)))


class TestGridSweep:
    def test_degenerate_grid_equals_single_evaluation(self):
        space = default_design_space(
            t_min=(1.0, 1.0, 1), t_max=(5.0, 5.0, 1),
            alpha=(120.0, 120.0, 1), reflectance=(0.95, 0.95, 1),
        )
        objective = VoltageSpan((0.0, 120.0))
        [(design, score)] = grid_sweep(space, objective)
        assert design == ReflectorDesign(1.0, 5.0, 120.0, 0.95)
        assert score == evaluate_design(space, design.to_profile(), objective)

    def test_thickness_axis_ranks_by_t_max_descending(self):
        space = default_design_space(
            t_min=(1.0, 1.0, 1), t_max=(2.0, 5.0, 4),
            alpha=(120.0, 120.0, 1), reflectance=(0.95, 0.95, 1),
        )
        results = grid_sweep(space, VoltageSpan((0.0, 120.0)))
        ranked_t_max = [d.t_max for d, _ in results]
        assert ranked_t_max == [5.0, 4.0, 3.0, 2.0]
        scores = [s for _, s in results]
        assert all(a > b for a, b in zip(scores, scores[1:]))

    def test_matches_shuffled_brute_force(self, space):
        objective = VoltageSpan((0.0, 120.0))
        results = grid_sweep(space, objective)
        cells = list(space.designs())
        random.Random(0).shuffle(cells)
        brute = [(evaluate_design(space, d.to_profile(), objective), d) for d in cells]
        brute.sort(key=lambda r: (-r[0],) + r[1].as_tuple())
        assert results[0][0] == brute[0][1]
        assert results[0][1] == brute[0][0]

    def test_budget_checked_before_evaluation(self):
        space = default_design_space(
            t_min=(1.0, 2.0, 200), t_max=(2.0, 5.0, 200),
            alpha=(120.0, 180.0, 30), reflectance=(0.6, 0.95, 2),
        )
        with pytest.raises(BudgetError):
            grid_sweep(space, VoltageSpan((0.0, 120.0)))

    def test_sorted_descending_and_deterministic(self, space):
        objective = UsableRangeLength(0.01)
        a = grid_sweep(space, objective)
        b = grid_sweep(space, objective)
        assert a == b
        scores = [s for _, s in a]
        assert all(x >= y for x, y in zip(scores, scores[1:]))


class TestPatternSearch:
    def test_quadratic_converges_within_budget(self):
        target = np.array([1.3, 3.7, 150.0, 0.8])
        widths = np.array([1.0, 3.0, 60.0, 0.35])
        bounds = [(1.0, 2.0), (2.0, 5.0), (120.0, 180.0), (0.6, 0.95)]

        def score(z):
            return -float(np.sum(((z - target) / widths) ** 2))

        start = np.array([1.0, 2.0, 120.0, 0.6])
        best, _, evals = pattern_search(score, start, bounds, budget=200)
        assert evals <= 200
        assert np.all(np.abs(best - target) <= 0.01 * (np.array([b[1] for b in bounds])
                                                       - np.array([b[0] for b in bounds])))

    def test_budget_one_returns_start(self):
        calls = []

        def score(z):
            calls.append(tuple(z))
            return 1.0

        best, _, evals = pattern_search(score, [0.5], [(0.0, 1.0)], budget=1)
        assert evals == 1
        assert len(calls) == 1
        assert best[0] == 0.5


class TestRefineLocal:
    def test_never_worse_than_start(self, space):
        objective = VoltageSpan((0.0, 120.0))
        rng = np.random.default_rng(17)
        bounds = space.bounds()
        for _ in range(10):
            start = ReflectorDesign(*(rng.uniform(lo, hi) for lo, hi in bounds))
            s0 = evaluate_design(space, start.to_profile(), objective)
            refined = refine_local(space, start, objective, budget=25)
            s1 = evaluate_design(space, refined.to_profile(), objective)
            assert s1 >= s0 - 1e-12

    def test_budget_one_returns_start(self, space):
        start = ReflectorDesign(1.5, 3.0, 150.0, 0.8)
        refined = refine_local(space, start, VoltageSpan((0.0, 120.0)), budget=1)
        assert refined == start

    def test_start_outside_bounds_rejected(self, space):
        with pytest.raises(ValueError):
            refine_local(space, ReflectorDesign(0.5, 3.0, 150.0, 0.8),
                         VoltageSpan((0.0, 120.0)), budget=5)
