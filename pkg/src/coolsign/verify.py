"""Pinned verification suites behind the command line's ``--suite`` flag.

Each suite re-derives a module's key guarantees on a fixed grid and reports
worst-case residuals, so a release can be smoke-checked without the test
harness.  Grids are deliberately the same ones the acceptance tests pin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import klocal, refrigerator, sampling, single_shot, states


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: max residual {self.residual:.3e} (tol {self.tolerance:.0e})"


def _check(name: str, residual: float, tolerance: float) -> CheckResult:
    return CheckResult(name, residual <= tolerance, float(residual), tolerance)


def verify_theorem1() -> list[CheckResult]:
    alphas = np.round(np.arange(0.01, 0.9901, 0.01), 10)
    alphas = np.concatenate([-alphas[::-1], alphas])
    worst_closed = 0.0
    worst_gain = 0.0
    sign_ok = True
    for n in range(3, 10):
        for a in alphas:
            a = float(a)
            closed = single_shot.alpha_ac(n, a)
            sorted_state = single_shot.optimal_compression(states.product_state(a, n))
            worst_closed = max(worst_closed, abs(closed - sorted_state.alpha_target))
            worst_gain = max(worst_gain, max(0.0, abs(a) - abs(closed)))
            sign_ok &= np.sign(closed) == np.sign(a)
    spot = abs(single_shot.alpha_ac(3, 0.5) - float(Fraction(11, 16)))
    return [
        _check("theorem1 closed form vs sort oracle", worst_closed, 1e-12),
        _check("theorem1 |alpha_ac| >= |alpha|", worst_gain, 0.0),
        _check("theorem1 sign preserved", 0.0 if sign_ok else 1.0, 0.0),
        _check("theorem1 alpha_ac(3, 0.5) = 11/16", spot, 0.0),
    ]


def verify_bqr_oracle() -> list[CheckResult]:
    worst = 0.0
    for n in range(3, 8):
        perm = refrigerator.build_uqr(n)
        for m in (1, 2, 3):
            if m > n - 1:
                continue
            cfg = refrigerator.RefrigeratorConfig(n, m, 1)
            for alpha in (0.1, -0.1, 0.5, -0.5, 0.9, -0.9):
                matrix = refrigerator.build_round_matrix(n, m, alpha, perm)
                a = states.product_state(alpha, n - m).probs.copy()
                full = states.product_state(alpha, n)
                for _ in range(10):
                    a = matrix @ a
                    full = refrigerator.round_channel(full, cfg, alpha)
                    traced = states.trace_out_last(full, m)
                    worst = max(
                        worst,
                        float(np.abs(a - traced.probs).max()),
                        abs(states.marginal_target(a) - states.marginal_target(traced)),
                    )
    col_worst = 0.0
    rng = np.random.default_rng(20240611)
    for _ in range(5):
        alpha = float(rng.uniform(-0.95, 0.95))
        matrix = refrigerator.build_round_matrix(5, 2, alpha)
        col_worst = max(col_worst, float(np.abs(matrix.sum(axis=0) - 1.0).max()))
    return [
        _check("bqr matrix path vs full simulation (n<=7)", worst, 1e-12),
        _check("bqr round matrices column-stochastic", col_worst, 1e-12),
    ]


def stationary_distribution(matrix: np.ndarray) -> np.ndarray:
    """Probability vector fixed by a column-stochastic matrix."""
    dim = matrix.shape[0]
    system = np.vstack([matrix - np.eye(dim), np.ones(dim)])
    rhs = np.zeros(dim + 1)
    rhs[-1] = 1.0
    solution, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    return solution


def verify_klocal_fixedpoint() -> list[CheckResult]:
    worst_factor = 0.0
    worst_tanh = 0.0
    for n in (4, 5, 6):
        perm = klocal.build_uqr_3local(n)
        for alpha in (0.2, 0.5, 0.8):
            matrix = refrigerator.build_round_matrix(n, 2, alpha, perm)
            fixed = stationary_distribution(matrix)
            asym = klocal.asymptotic_population_vector(n, alpha)
            product = np.array([1.0])
            for pop in asym.populations[:1:-1]:  # target down to last auxiliary
                product = np.kron(product, np.array([pop, 1.0 - pop]))
            worst_factor = max(worst_factor, float(np.abs(fixed - product).max()))
            worst_tanh = max(
                worst_tanh,
                abs(states.marginal_target(fixed) - asym.alpha_target_infinity),
            )
    return [
        _check("3-local steady state factorizes (fibonacci populations)", worst_factor, 1e-9),
        _check("3-local asymptotic polarization tanh(F_n artanh)", worst_tanh, 1e-9),
    ]


def verify_sampling(seed: int = 20240613) -> list[CheckResult]:
    oracle = sum(
        comb(25, s) * Fraction(6, 10) ** s * Fraction(4, 10) ** (25 - s) for s in range(13)
    )
    cdf_residual = abs(sampling.exact_sign_error(0.2, 25) - float(oracle))

    worst_band = 0.0
    worst_dominance = 0.0
    for alpha in (0.1, 0.2, 0.4, -0.3, 0.6):
        for k in (5, 24, 101):
            exact = sampling.exact_sign_error(alpha, k)
            mc = sampling.monte_carlo_sign_error(sampling.ShotExperiment(alpha, k, 100_000, seed))
            stderr = max(np.sqrt(exact * (1 - exact) / 100_000), 1e-12)
            worst_band = max(worst_band, abs(mc - exact) / stderr / 4.0)
            worst_dominance = max(
                worst_dominance, exact - sampling.predict_error_bound(alpha, k)
            )
    return [
        _check("exact_sign_error(0.2, 25) vs independent binomial CDF", cdf_residual, 1e-12),
        _check("monte carlo within 4 standard errors of exact", worst_band, 1.0),
        _check("chebyshev bound dominates exact error", worst_dominance, 0.0),
    ]


SUITES = {
    "theorem1": verify_theorem1,
    "bqr-oracle": verify_bqr_oracle,
    "klocal-fixedpoint": verify_klocal_fixedpoint,
    "sampling": verify_sampling,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for suite in SUITES.values():
            results.extend(suite())
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()
