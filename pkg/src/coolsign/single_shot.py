"""Single-shot entropy compression on identical qubits.

For ``n`` identical qubits the optimal compression permutation is fixed: it
groups basis states by Hamming weight (ascending weight first, the all-ground
state at index 0).  On a product state this sorts the populations descending
when ``alpha > 0`` and ascending when ``alpha < 0``, so the same permutation
amplifies the target's polarization toward whichever bias the input carries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import (
    DiagonalState,
    PermutationSpec,
    apply_permutation,
    ground_excited_pair,
    marginal_target,
    permutation_from_map,
    product_state,
    trace_out_last,
)

#: inputs to optimal_compression must match a product state this closely
PRODUCT_ATOL = 1e-10


@dataclass(frozen=True)
class CompressionResult:
    state_after: DiagonalState
    alpha_target: float
    n: int


@lru_cache(maxsize=None)
def compression_permutation(n: int) -> PermutationSpec:
    """Fixed reordering permutation: group basis indices by Hamming weight.

    The ordering is structural (weight, then index), so it is well defined
    even when all populations are equal (``alpha = 0``).
    """
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    idx = np.arange(1 << n, dtype=np.uint64)
    weights = np.zeros(1 << n, dtype=np.intp)
    for b in range(n):
        weights += ((idx >> np.uint64(b)) & np.uint64(1)).astype(np.intp)
    order = np.lexsort((np.arange(1 << n), weights))
    perm = np.empty(1 << n, dtype=np.intp)
    perm[order] = np.arange(1 << n)
    return permutation_from_map(n, perm)


def optimal_compression(d: DiagonalState) -> CompressionResult:
    """Apply the fixed weight-ordering compression to ``n`` identical qubits.

    Raises ValueError if the input is not a product of identical qubits; the
    optimality guarantee only covers that case.
    """
    alpha = marginal_target(trace_to_first_qubit(d))
    expected = product_state(alpha, d.n)
    if not np.allclose(d.probs, expected.probs, atol=PRODUCT_ATOL, rtol=0.0):
        raise ValueError("optimal_compression requires a product state of identical qubits")
    out = apply_permutation(d, compression_permutation(d.n))
    return CompressionResult(out, marginal_target(out), d.n)


def trace_to_first_qubit(d: DiagonalState) -> DiagonalState:
    """Marginal state of the target (most significant) qubit."""
    if d.n == 1:
        return d
    return trace_out_last(d, d.n - 1)


def alpha_ac(n: int, alpha: float) -> float:
    """Target polarization after optimal compression of ``n`` identical qubits.

    Evaluated as ``sum_i C(n,i) * (p^{n-i} q^i - q^{n-i} p^i)`` over
    ``i <= floor((n-1)/2)`` with ``p = (1+alpha)/2``, ``q = (1-alpha)/2``.
    Each term is antisymmetric under ``p <-> q``, so the result is exactly odd
    in ``alpha``.  For even ``n`` this form already accounts for the split of
    the ``C(n, n/2)`` middle-weight populations across the two halves of the
    register (the plain truncated binomial sum does not, and would even
    violate ``|alpha_ac| >= |alpha|`` at e.g. ``n=4``).
    """
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    p, q = ground_excited_pair(alpha)
    terms = [
        math.comb(n, i) * (p ** (n - i) * q**i - q ** (n - i) * p**i)
        for i in range((n - 1) // 2 + 1)
    ]
    return math.fsum(terms)


def compression_xi(n: int, alpha: float) -> float:
    """Argument of the Gaussian-limit approximation of alpha_ac."""
    return n * alpha / math.sqrt(2.0 * n * (1.0 - alpha * alpha))


def alpha_ac_erf(n: int, alpha: float) -> float:
    """Gaussian (erf) approximation of :func:`alpha_ac`, good for large n."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if abs(alpha) >= 1:
        if abs(alpha) > 1:
            raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
        return math.copysign(1.0, alpha)
    return math.erf(compression_xi(n, alpha))


def error_reduction_factor(alpha: float, alpha_enhanced: float, cost: float) -> float:
    """Sampling-error-bound ratio for an enhancement bought at ``cost`` qubits.

    ``(alpha^-2 - 1) / (alpha_enhanced^-2 - 1) / cost``: how much the
    wrong-sign probability bound shrinks when one enhanced qubit replaces
    ``cost`` raw ones at a fixed total qubit budget.
    """
    if alpha == 0.0:
        raise ZeroDivisionError("reduction factor is undefined at alpha = 0")
    if abs(alpha) > 1 or abs(alpha_enhanced) > 1:
        raise ValueError("polarizations must lie in [-1, 1]")
    num = (1.0 - alpha * alpha) / (alpha * alpha)
    if abs(alpha_enhanced) == 1.0:
        return math.inf
    den = (1.0 - alpha_enhanced * alpha_enhanced) / (alpha_enhanced * alpha_enhanced)
    return num / den / cost


def reduction_from_excited_mass(alpha: float, excited_mass: float, cost: float) -> float:
    """Reduction factor from the enhanced qubit's excited-state mass ``u``.

    With ``alpha' = 1 - 2u``, ``alpha'^-2 - 1 = 4u(1-u)/(1-2u)^2``; computing
    it from ``u`` directly avoids the catastrophic cancellation of
    ``1 - alpha'^2`` when the enhanced polarization saturates near +-1.
    """
    if alpha == 0.0:
        raise ZeroDivisionError("reduction factor is undefined at alpha = 0")
    num = (1.0 - alpha * alpha) / (alpha * alpha)
    den = 4.0 * excited_mass * (1.0 - excited_mass) / (1.0 - 2.0 * excited_mass) ** 2
    if den == 0.0:
        return math.inf
    return num / den / cost


def reduction_factor_ac(n: int, alpha: float) -> float:
    """Error-bound reduction from single-shot compression at matched budget.

    Uses the Gaussian form ``(1/n) (alpha^-2 - 1) / (erf(xi)^-2 - 1)``, whose
    polarization-regime behavior (2/pi plateau at low alpha, exp(xi^2) growth,
    divergence as alpha -> 1) is the basis of the regime approximations.  The
    erf complement is evaluated with ``erfc`` so the result stays finite for
    grid polarizations up to 0.99 at any ``n``.
    """
    if alpha == 0.0:
        raise ZeroDivisionError("reduction factor is undefined at alpha = 0")
    if abs(alpha) >= 1:
        if abs(alpha) > 1:
            raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
        return math.inf
    a = abs(alpha)
    c = math.erfc(compression_xi(n, a))  # 1 - alpha_ac_erf
    return reduction_from_excited_mass(a, c / 2.0, n)


def reduction_factor_ac_low_approx(n: int, alpha: float) -> float:
    """Low-polarization approximation ``2 (1 - alpha^2) / (pi - 2 n alpha^2)``."""
    den = math.pi - 2.0 * n * alpha * alpha
    if den <= 0.0:
        raise ValueError(f"out of the low-polarization regime: pi - 2 n alpha^2 = {den}")
    return 2.0 * (1.0 - alpha * alpha) / den
