"""Hardware-friendly variant: sliding 3-qubit compression windows.

Instead of the full staircase (whose widest swap spans all ``n`` qubits), one
round applies the 3-qubit compression swap to every window of neighboring
qubits, starting at the end of the string and sliding up to the target.  The
price of locality is a slower cooling limit: with two reset qubits the
asymptotic per-qubit ground populations follow Fibonacci-number exponents
rather than powers of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .refrigerator import (
    RefrigeratorConfig,
    reduction_factor_qr,
)
from .states import PermutationSpec, ground_excited_pair, permutation_from_swaps


@lru_cache(maxsize=None)
def build_uqr_3local(n: int) -> PermutationSpec:
    """Sliding staircase of 3-qubit swaps, last window first.

    The window on qubits ``(w, w+1, w+2)`` swaps basis states whose window
    bits read ``011``/``100``, for every setting of the remaining bits.
    Windows overlap, so unlike the full staircase the order matters and the
    composition is generally not an involution.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    swaps = []
    for low in range(n - 2):  # qubits below the window
        width = 1 << (low + 3)
        for hi in range(1 << (n - 3 - low)):
            for lo in range(1 << low):
                base = hi * width + lo
                swaps.append((base + 3 * (1 << low), base + 4 * (1 << low)))
    return permutation_from_swaps(n, swaps)


def fibonacci(j: int) -> int:
    """F(1) = F(2) = 1, F(j) = F(j-1) + F(j-2)."""
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    a, b = 1, 1
    for _ in range(j - 1):
        a, b = b, a + b
    return a


def _population_ratio(alpha: float, exponent: int) -> float:
    """``p^F / (p^F + q^F)``, with a tanh fallback when both powers underflow."""
    p, q = ground_excited_pair(alpha)
    hi, lo = p**exponent, q**exponent
    total = hi + lo
    if total > 0.0:
        return hi / total
    return 0.5 * (1.0 + math.tanh(exponent * math.atanh(alpha)))


def alpha_infinity_3local(n: int, alpha: float) -> float:
    """Cooling limit of the 3-local refrigerator: ``tanh(F_n artanh(alpha))``.

    Evaluated as the power ratio ``(p^F - q^F) / (p^F + q^F)`` (exactly odd in
    ``alpha``), falling back to the tanh form if both powers underflow.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    if abs(alpha) == 1.0:
        return math.copysign(1.0, alpha)
    exponent = fibonacci(n)
    p, q = ground_excited_pair(alpha)
    hi, lo = p**exponent, q**exponent
    if hi + lo > 0.0:
        return (hi - lo) / (hi + lo)
    return math.tanh(exponent * math.atanh(alpha))


@dataclass(frozen=True)
class KLocalAsymptotics:
    """Per-qubit ground populations of the 3-local cooling limit (m = 2).

    ``populations[j]`` belongs to the ``(j+1)``-th qubit counting from the end
    of the string; the last entry is the target.
    """

    n: int
    populations: np.ndarray
    alpha_target_infinity: float


def asymptotic_population_vector(n: int, alpha: float) -> KLocalAsymptotics:
    """Fibonacci-exponent populations ``p^F_j / (p^F_j + q^F_j)``, j = 1..n.

    The first two entries (the reset qubits) stay at ``p`` since ``F_1 = F_2
    = 1``; the steady state of the 3-local round map factorizes into exactly
    this product state.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    populations = np.array([_population_ratio(alpha, fibonacci(j)) for j in range(1, n + 1)])
    return KLocalAsymptotics(n, populations, alpha_infinity_3local(n, alpha))


def reduction_factor_qr_3local(cfg: RefrigeratorConfig, alpha: float) -> float:
    """Error-bound reduction with the 3-local round map substituted."""
    local_cfg = RefrigeratorConfig(cfg.n, cfg.m, cfg.rounds, locality="3local")
    return reduction_factor_qr(local_cfg, alpha)
