import math

import numpy as np
import pytest

from coolsign import (
    ConvergenceError,
    RefrigeratorConfig,
    alpha_infinity,
    build_round_matrix,
    build_ucj,
    build_uqr,
    marginal_target,
    optimal_bound_simulate,
    product_state,
    recycle_cycle,
    reduction_factor_bound,
    reduction_factor_qr,
    round_channel,
    steady_state,
    tensor,
    trace_out_first,
    trace_out_last,
)


def expected_m4(p):
    """Hand-derived 4x4 round matrix for n=4, m=2 (tridiagonal in the band)."""
    q = 1 - p
    return np.array(
        [
            [p * (2 - p), p**2, 0, 0],
            [q**2, 2 * p * q, p**2, 0],
            [0, q**2, 2 * p * q, p**2],
            [0, 0, q**2, 1 - p**2],
        ]
    )


def full_simulation_marginal(cfg, alpha, start_vec):
    """Oracle: run the rounds on the complete 2^n diagonal, no matrix shortcut."""
    from coolsign import DiagonalState

    state = tensor(DiagonalState(cfg.n - cfg.m, start_vec), product_state(alpha, cfg.m))
    for _ in range(cfg.rounds):
        state = round_channel(state, cfg, alpha)
    return marginal_target(state), trace_out_last(state, cfg.m).probs


class TestCompressionPermutations:
    def test_ucj_examples(self):
        assert build_ucj(3).swaps == ((3, 4),)
        assert build_ucj(4).swaps == ((7, 8),)
        assert build_ucj(2).swaps == ((1, 2),)

    def test_ucj_requires_two_qubits(self):
        with pytest.raises(ValueError):
            build_ucj(1)

    def test_uqr3_is_single_swap(self):
        perm = build_uqr(3)
        moved = {i for i in range(8) if perm.perm[i] != i}
        assert moved == {3, 4}

    def test_uqr4_net_swaps(self):
        perm = build_uqr(4)
        expect = np.arange(16)
        for a, b in ((3, 4), (7, 8), (11, 12)):
            expect[[a, b]] = expect[[b, a]]
        assert np.array_equal(perm.perm, expect)

    def test_uqr5_identity_blocks_at_both_ends(self):
        perm = build_uqr(5)
        assert np.array_equal(perm.perm[:3], [0, 1, 2])
        assert np.array_equal(perm.perm[-3:], [29, 30, 31])

    def test_uqr_moves_only_staircase_patterns(self):
        for n in (3, 4, 5, 6, 7):
            perm = build_uqr(n).perm
            moved = {int(i) for i in np.nonzero(perm != np.arange(1 << n))[0]}
            expected = set()
            for j in range(3, n + 1):
                half = 1 << (j - 1)
                for x in range(1 << (n - j)):
                    expected |= {x * (1 << j) + half - 1, x * (1 << j) + half}
            assert moved == expected

    def test_uqr3_involution(self):
        perm = build_uqr(3).perm
        assert np.array_equal(perm[perm], np.arange(8))

    def test_uqr_bijection_for_all_n(self):
        for n in range(3, 9):
            perm = build_uqr(n).perm
            assert np.array_equal(np.sort(perm), np.arange(1 << n))

    def test_uqr_requires_three_qubits(self):
        with pytest.raises(ValueError):
            build_uqr(2)


class TestRoundChannel:
    def test_three_qubit_round_matches_single_shot(self):
        cfg = RefrigeratorConfig(3, 2, 1)
        out = round_channel(product_state(0.5, 3), cfg, 0.5)
        assert marginal_target(out) == pytest.approx(0.6875, abs=1e-14)

    def test_uniform_fixed_point(self):
        for cfg in (RefrigeratorConfig(4, 2, 1), RefrigeratorConfig(5, 1, 1)):
            out = round_channel(product_state(0.0, cfg.n), cfg, 0.0)
            assert marginal_target(out) == 0.0

    def test_mass_conserved(self):
        cfg = RefrigeratorConfig(5, 2, 1)
        out = round_channel(product_state(0.73, 5), cfg, 0.73)
        assert abs(out.probs.sum() - 1.0) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            round_channel(product_state(0.5, 4), RefrigeratorConfig(5, 2, 1), 0.5)


class TestRoundMatrix:
    def test_reproduces_symbolic_entries(self):
        rng = np.random.default_rng(20240607)
        for p in rng.uniform(0.02, 0.98, size=5):
            alpha = 2 * p - 1
            got = build_round_matrix(4, 2, alpha)
            assert np.abs(got - expected_m4((1 + alpha) / 2)).max() < 1e-12

    def test_spot_entry(self):
        assert build_round_matrix(4, 2, 0.5)[0, 0] == pytest.approx(0.9375, abs=1e-15)

    def test_column_stochastic(self):
        rng = np.random.default_rng(99)
        for alpha in rng.uniform(-0.99, 0.99, size=5):
            for n, m in ((4, 2), (5, 2), (6, 3), (5, 1)):
                matrix = build_round_matrix(n, m, float(alpha))
                assert np.abs(matrix.sum(axis=0) - 1.0).max() < 1e-12
                assert np.all(matrix >= 0)

    def test_matches_definition_on_random_vectors(self):
        cfg = RefrigeratorConfig(5, 2, 1)
        matrix = build_round_matrix(5, 2, 0.4)
        rng = np.random.default_rng(1)
        for _ in range(3):
            vec = rng.dirichlet(np.ones(8))
            expect = full_simulation_marginal(cfg, 0.4, vec)[1]
            assert np.abs(matrix @ vec - expect).max() < 1e-13


class TestMatrixVsFullSimulation:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_alpha_enhanced_identical(self, n):
        for m in (1, 2, 3):
            if m > n - 1:
                continue
            for alpha in (0.1, -0.1, 0.5, -0.5, 0.9, -0.9):
                matrix = build_round_matrix(n, m, alpha)
                vec = product_state(alpha, n - m).probs.copy()
                cfg1 = RefrigeratorConfig(n, m, 1)
                state = tensor(product_state(alpha, n - m), product_state(alpha, m))
                for _ in range(10):
                    vec = matrix @ vec
                    state = round_channel(state, cfg1, alpha)
                    traced = trace_out_last(state, m).probs
                    assert np.abs(vec - traced).max() < 1e-12
                    assert abs(marginal_target(vec) - marginal_target(traced)) < 1e-12


class TestRecycleCycle:
    def test_n3_recycling_is_memoryless(self):
        cfg = RefrigeratorConfig(3, 2, 1)
        fresh = product_state(0.3, 1).probs
        for start in ([0.9, 0.1], [0.2, 0.8], [1.0, 0.0]):
            recycled, _ = recycle_cycle(np.array(start), cfg, 0.3)
            assert np.allclose(recycled, fresh, atol=1e-14)

    def test_zero_polarization_fixed_point(self):
        cfg = RefrigeratorConfig(4, 2, 2)
        recycled, enhanced = recycle_cycle(np.full(4, 0.25), cfg, 0.0)
        assert enhanced == 0.0
        assert np.allclose(recycled, 0.25, atol=1e-15)

    def test_single_round_matches_full_oracle(self):
        cfg = RefrigeratorConfig(4, 2, 1)
        start = product_state(0.5, 2).probs
        _, enhanced = recycle_cycle(start, cfg, 0.5)
        oracle, _ = full_simulation_marginal(cfg, 0.5, start)
        assert enhanced == pytest.approx(oracle, abs=1e-13)

    def test_wrong_dimension(self):
        with pytest.raises(ValueError):
            recycle_cycle(np.full(8, 0.125), RefrigeratorConfig(4, 2, 1), 0.5)


class TestSteadyState:
    def test_n3_converges_immediately(self):
        result = steady_state(RefrigeratorConfig(3, 2, 1), 0.5)
        assert result.alpha_enhanced == pytest.approx(0.6875, abs=1e-14)
        assert result.cycles_used <= 2
        assert result.residual <= 1e-12

    def test_zero_polarization(self):
        result = steady_state(RefrigeratorConfig(5, 2, 4), 0.0)
        assert result.alpha_enhanced == 0.0
        assert result.residual == 0.0

    def test_matches_full_recycle_history(self):
        cfg = RefrigeratorConfig(5, 2, 9)
        for alpha in (0.5, -0.5, 0.2):
            state = product_state(alpha, 5)
            enhanced = math.inf
            for _ in range(200):
                for _ in range(cfg.rounds):
                    state = round_channel(state, cfg, alpha)
                previous, enhanced = enhanced, marginal_target(state)
                if abs(enhanced - previous) <= 1e-14:
                    break
                state = tensor(trace_out_first(state, 1), product_state(alpha, 1))
            result = steady_state(cfg, alpha)
            assert abs(result.alpha_enhanced - enhanced) < 1e-10

    def test_residual_contract(self):
        cfg = RefrigeratorConfig(5, 2, 3)
        result = steady_state(cfg, 0.4, tol=1e-12)
        recycled, _ = recycle_cycle(result.a_fixed, cfg, 0.4)
        assert np.abs(recycled - result.a_fixed).sum() <= 1e-12

    def test_sign_preserved_and_exactly_odd(self):
        for n, m, rounds in ((4, 1, 3), (5, 2, 5), (6, 3, 2), (7, 2, 9)):
            cfg = RefrigeratorConfig(n, m, rounds)
            for alpha in (0.05, 0.1, 0.37, 0.5, 0.9):
                up = steady_state(cfg, alpha)
                down = steady_state(cfg, -alpha)
                assert up.alpha_enhanced > 0
                assert down.alpha_enhanced == -up.alpha_enhanced
                assert down.cycles_used == up.cycles_used

    def test_monotone_in_rounds(self):
        values = [
            steady_state(RefrigeratorConfig(5, 2, r), 0.3).alpha_enhanced
            for r in (1, 2, 4, 8, 16, 50)
        ]
        assert all(b >= a - 1e-14 for a, b in zip(values, values[1:]))

    def test_convergence_failure_carries_residual(self):
        with pytest.raises(ConvergenceError) as excinfo:
            steady_state(RefrigeratorConfig(5, 2, 1), 0.5, tol=1e-300, max_cycles=5)
        assert excinfo.value.residual >= 0.0

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            steady_state(RefrigeratorConfig(4, 2, 1), 0.5, tol=0.0)


class TestAlphaInfinity:
    def test_double_angle_identity(self):
        assert alpha_infinity(3, 2, 0.5) == 0.8

    def test_tanh_form(self):
        expect = math.tanh(8 * math.atanh(0.2))
        assert alpha_infinity(5, 2, 0.2) == pytest.approx(expect, abs=1e-15)
        assert alpha_infinity(5, 2, 0.2) == pytest.approx(0.92489, abs=5e-6)

    @pytest.mark.parametrize("n,m", [(3, 2), (5, 2), (6, 1), (8, 4)])
    def test_zero(self, n, m):
        assert alpha_infinity(n, m, 0.0) == 0.0

    def test_unit_polarization(self):
        assert alpha_infinity(4, 2, 1.0) == 1.0
        assert alpha_infinity(4, 2, -1.0) == -1.0

    def test_exactly_odd(self):
        for alpha in (0.1, 0.33, 0.77):
            assert alpha_infinity(5, 2, -alpha) == -alpha_infinity(5, 2, alpha)

    def test_huge_exponent_saturates(self):
        assert alpha_infinity(40, 2, 0.5) == 1.0

    def test_rounds_converge_to_limit(self):
        for n in (3, 4, 5):
            for alpha in (0.2, 0.5, 0.8):
                result = steady_state(RefrigeratorConfig(n, 2, 200), alpha)
                assert abs(result.alpha_enhanced - alpha_infinity(n, 2, alpha)) < 1e-6


class TestReductionFactorQr:
    def test_three_qubit_arithmetic(self):
        # same gain algebra as the single-shot case, with cost m*rounds+1 = 3
        value = reduction_factor_qr(RefrigeratorConfig(3, 2, 1), 0.5)
        assert value == pytest.approx(121 / 135, abs=1e-12)

    def test_even_in_alpha(self):
        cfg = RefrigeratorConfig(5, 2, 3)
        assert reduction_factor_qr(cfg, -0.4) == reduction_factor_qr(cfg, 0.4)

    def test_undefined_at_zero(self):
        with pytest.raises(ZeroDivisionError):
            reduction_factor_qr(RefrigeratorConfig(4, 2, 1), 0.0)

    def test_grows_toward_unit_polarization(self):
        cfg = RefrigeratorConfig(5, 2, 9)
        assert (
            reduction_factor_qr(cfg, 0.99)
            > reduction_factor_qr(cfg, 0.9)
            > reduction_factor_qr(cfg, 0.5)
        )

    def test_finite_on_default_grid_edge(self):
        value = reduction_factor_qr(RefrigeratorConfig(5, 2, 9), 0.99)
        assert math.isfinite(value) and value > 0

    def test_finite_near_saturated_polarization(self):
        cfg = RefrigeratorConfig(5, 2, 200)
        assert steady_state(cfg, 0.99).alpha_enhanced > 1 - 1e-14
        value = reduction_factor_qr(cfg, 0.99)
        assert math.isfinite(value) and value > 0


class TestOptimalBound:
    def test_matches_staircase_for_n3(self):
        cfg = RefrigeratorConfig(3, 2, 1)
        bound = optimal_bound_simulate(cfg, 0.5)
        protocol = steady_state(cfg, 0.5)
        assert bound.alpha_enhanced == pytest.approx(protocol.alpha_enhanced, abs=1e-14)

    def test_zero_polarization(self):
        assert optimal_bound_simulate(RefrigeratorConfig(5, 2, 3), 0.0).alpha_enhanced == 0.0

    def test_dominates_protocol(self):
        cfg = RefrigeratorConfig(5, 2, 9)
        for alpha in np.arange(0.3, 0.901, 0.1):
            r_bound = reduction_factor_bound(cfg, float(alpha))
            r_qr = reduction_factor_qr(cfg, float(alpha))
            assert r_bound >= r_qr * (1 - 1e-9)

    def test_negative_bias_sorts_ascending(self):
        cfg = RefrigeratorConfig(4, 2, 2)
        up = optimal_bound_simulate(cfg, 0.6)
        down = optimal_bound_simulate(cfg, -0.6)
        assert down.alpha_enhanced == pytest.approx(-up.alpha_enhanced, abs=1e-13)
