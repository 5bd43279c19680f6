"""Finite-sampling error analysis for sign-based classification.

A classifier's decision is the sign of a single-qubit polarization ``alpha``
estimated from ``k`` projective shots.  This module provides the analytic
error bounds (Chebyshev and its prediction/training specializations), the
exact wrong-sign probability from the binomial law, a reproducible Monte
Carlo counterpart, and a resource-matched comparison of raw versus cooled
estimation at a fixed qubit budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import binom

from .refrigerator import RefrigeratorConfig, reduction_factor_qr, steady_state

#: trials per RNG substream; chunk boundaries depend only on the trial count,
#: so results are identical however the chunks are scheduled
MC_CHUNK = 4096


class BudgetError(ValueError):
    """Total shot budget too small to afford a single cooled shot."""


@dataclass(frozen=True)
class ShotExperiment:
    """A seeded wrong-sign estimation experiment: ``trials`` runs of ``k`` shots."""

    alpha_true: float
    shots: int
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if abs(self.alpha_true) > 1:
            raise ValueError(f"polarization must lie in [-1, 1], got {self.alpha_true}")
        if self.shots < 1:
            raise ValueError(f"need shots >= 1, got {self.shots}")
        if self.trials < 1:
            raise ValueError(f"need trials >= 1, got {self.trials}")


@dataclass(frozen=True)
class MarginConfig:
    """Hinge-loss decision context: margin ``b``, label ``y``, score ``q``."""

    b: float
    y: int
    q: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.b < 1.0:
            raise ValueError(f"margin must lie in [0, 1), got {self.b}")
        if self.y not in (-1, 1):
            raise ValueError(f"label must be +1 or -1, got {self.y}")
        if abs(self.q) > 1:
            raise ValueError(f"score must lie in [-1, 1], got {self.q}")


@dataclass(frozen=True)
class EnsemblePair:
    """Class-averaged polarizations of two equally sized ensembles."""

    alpha_plus: float
    alpha_minus: float

    def __post_init__(self) -> None:
        if abs(self.alpha_plus) > 1 or abs(self.alpha_minus) > 1:
            raise ValueError("polarizations must lie in [-1, 1]")


class HingeActivity(NamedTuple):
    active: bool
    prefactor: int


def chebyshev_bound(variance: float, k: int, epsilon: float) -> float:
    """``min(1, variance / (k epsilon^2))``: tail bound for a k-shot mean."""
    if epsilon <= 0:
        raise ValueError(f"need epsilon > 0, got {epsilon}")
    if variance < 0:
        raise ValueError(f"need variance >= 0, got {variance}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return min(1.0, variance / (k * epsilon * epsilon))


def predict_error_bound(alpha: float, k: int) -> float:
    """Wrong-sign probability bound ``min(1, (1 - alpha^2) / (k alpha^2))``."""
    if alpha == 0.0:
        raise ZeroDivisionError("prediction bound is undefined at alpha = 0")
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    return chebyshev_bound(1.0 - alpha * alpha, k, abs(alpha))


def train_error_bound(alpha: float, b: float, k: int) -> float:
    """Margin-decision error bound ``min(1, (1 - alpha^2) / (k (alpha-b)^2))``."""
    if not 0.0 <= b < 1.0:
        raise ValueError(f"margin must lie in [0, 1), got {b}")
    if alpha == b:
        raise ZeroDivisionError("training bound is undefined on the decision boundary")
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    return chebyshev_bound(1.0 - alpha * alpha, k, abs(alpha - b))


def hinge_gradient_activity(mc: MarginConfig) -> HingeActivity:
    """Whether the hinge loss is active (``y q < b``) and its gradient sign.

    When active, the loss gradient carries the prefactor ``-y``; estimating
    the remaining score-gradient factor is again a sign-estimation problem.
    """
    if mc.y * mc.q < mc.b:
        return HingeActivity(True, -mc.y)
    return HingeActivity(False, 0)


def discrimination_error(e: EnsemblePair) -> float:
    """Best error probability for telling two equal-size ensembles apart:
    ``1/2 - |alpha_plus - alpha_minus| / 4``."""
    return 0.5 - abs(e.alpha_plus - e.alpha_minus) / 4.0


def exact_sign_error(alpha: float, k: int) -> float:
    """Exact probability that a k-shot mean has the wrong sign.

    Shots are Bernoulli Z-outcomes with ground probability ``(1+alpha)/2``;
    an exact zero mean (k even) counts as half an error.  Computed from the
    binomial CDF at ``|alpha|``, so it is exactly even in ``alpha``.
    """
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if alpha == 0.0:
        return 0.5
    p = (1.0 + abs(alpha)) / 2.0
    err = float(binom.cdf((k - 1) // 2, k, p))
    if k % 2 == 0:
        err += 0.5 * float(binom.pmf(k // 2, k, p))
    return err


def _substream(seed: int, key: tuple[int, ...]) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def monte_carlo_sign_error(exp: ShotExperiment) -> float:
    """Empirical wrong-sign fraction over ``exp.trials`` seeded repetitions.

    Trials are drawn in fixed-size chunks, each from its own counter-based
    substream keyed by the chunk index, so the result is reproducible for a
    fixed seed no matter how the chunks are scheduled or parallelized.
    """
    p = (1.0 + exp.alpha_true) / 2.0
    wrong = 0.0
    n_chunks = (exp.trials + MC_CHUNK - 1) // MC_CHUNK
    for chunk in range(n_chunks):
        size = min(MC_CHUNK, exp.trials - chunk * MC_CHUNK)
        rng = _substream(exp.seed, (chunk,))
        successes = rng.binomial(exp.shots, p, size=size)
        lean = 2 * successes - exp.shots
        ties = np.count_nonzero(lean == 0)
        if exp.alpha_true >= 0:
            wrong += np.count_nonzero(lean < 0) + 0.5 * ties
        else:
            wrong += np.count_nonzero(lean > 0) + 0.5 * ties
    return wrong / exp.trials


@dataclass(frozen=True)
class ResourceComparison:
    """Raw versus cooled sign estimation at the same total qubit budget."""

    alpha_raw: float
    alpha_cooled: float
    k_raw: int
    k_cooled: int
    exact_error_raw: float
    exact_error_cooled: float
    mc_error_raw: float
    mc_error_cooled: float
    bound_raw: float
    bound_cooled: float
    empirical_ratio: float
    reduction_factor: float


def resource_matched_comparison(
    alpha: float,
    cfg: RefrigeratorConfig,
    total_budget: int,
    seed: int,
    trials: int = 10_000,
) -> ResourceComparison:
    """Spend ``total_budget`` fresh qubits either on raw shots at ``alpha`` or
    on ``total_budget // (m rounds + 1)`` cooled shots at the refrigerator's
    steady-state polarization, and compare wrong-sign error rates."""
    k_raw = int(total_budget)
    k_cooled = int(total_budget) // cfg.cost
    if k_cooled < 1:
        raise BudgetError(
            f"budget {total_budget} cannot afford one cooled shot (cost {cfg.cost})"
        )
    alpha_cooled = steady_state(cfg, alpha).alpha_enhanced

    exact_raw = exact_sign_error(alpha, k_raw)
    exact_cooled = exact_sign_error(alpha_cooled, k_cooled)
    mc_raw = monte_carlo_sign_error(
        ShotExperiment(alpha, k_raw, trials, _derived_seed(seed, 0))
    )
    mc_cooled = monte_carlo_sign_error(
        ShotExperiment(alpha_cooled, k_cooled, trials, _derived_seed(seed, 1))
    )
    if alpha == 0.0:
        bound_raw = bound_cooled = 1.0
        reduction = math.nan
    else:
        bound_raw = predict_error_bound(alpha, k_raw)
        bound_cooled = predict_error_bound(alpha_cooled, k_cooled)
        reduction = reduction_factor_qr(cfg, alpha)
    ratio = mc_cooled / mc_raw if mc_raw > 0 else math.inf if mc_cooled > 0 else math.nan
    return ResourceComparison(
        alpha_raw=alpha,
        alpha_cooled=alpha_cooled,
        k_raw=k_raw,
        k_cooled=k_cooled,
        exact_error_raw=exact_raw,
        exact_error_cooled=exact_cooled,
        mc_error_raw=mc_raw,
        mc_error_cooled=mc_cooled,
        bound_raw=bound_raw,
        bound_cooled=bound_cooled,
        empirical_ratio=ratio,
        reduction_factor=reduction,
    )


def _derived_seed(seed: int, branch: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(branch,)).generate_state(1, np.uint64)[0])
