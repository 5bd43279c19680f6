"""Diagonal-state algebra on qubit registers.

Every state handled by this package is diagonal in the computational basis, so
an ``n``-qubit state is stored as a probability vector of length ``2**n``.
Conventions used throughout:

* qubit 1 (the *target*) is the most significant bit of the basis index,
* index 0 is ``|0...0>``,
* reset qubits, when present, occupy the last ``m`` positions of the string.

All reductions over basis indices (sums, marginals, L1 norms) go through
:func:`pairwise_sum`, a balanced binary-tree fold.  Because every pair-add is
commutative, folding a bit-reversed vector yields the bit-reversed fold.  This
makes the simulators exactly symmetric under a global polarization flip
``alpha -> -alpha`` without ever branching on the sign, which downstream
modules rely on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

#: accepted drift of a probability vector's total mass
NORM_ATOL = 1e-12


def pairwise_sum(x: np.ndarray, axis: int = -1) -> np.ndarray:
    """Sum over ``axis`` (power-of-two length) via pairwise halving.

    Unlike ``np.sum``, the result is invariant under reversal of the summed
    axis, which is what makes polarization-flip symmetry bit-exact.
    """
    x = np.moveaxis(np.asarray(x, dtype=float), axis, -1)
    if x.shape[-1] & (x.shape[-1] - 1):
        raise ValueError(f"pairwise_sum needs a power-of-two length, got {x.shape[-1]}")
    while x.shape[-1] > 1:
        x = x[..., ::2] + x[..., 1::2]
    return x[..., 0]


def ground_excited_pair(alpha: float) -> np.ndarray:
    """Single-qubit diagonal ``[(1+alpha)/2, (1-alpha)/2]``.

    Both entries are computed from their own expression (never as ``1 - p``)
    so that negating ``alpha`` swaps them bit-exactly.
    """
    if abs(alpha) > 1:
        raise ValueError(f"polarization must lie in [-1, 1], got {alpha}")
    return np.array([(1.0 + alpha) / 2.0, (1.0 - alpha) / 2.0])


def _check_mass(probs: np.ndarray, where: str) -> np.ndarray:
    total = float(np.sum(probs))
    drift = abs(total - 1.0)
    if drift > NORM_ATOL:
        warnings.warn(
            f"{where}: probability mass drifted by {drift:.3e}; renormalizing",
            RuntimeWarning,
            stacklevel=3,
        )
        probs = probs / total
    return probs


@dataclass(frozen=True)
class DiagonalState:
    """Probability vector over the computational basis of ``n`` qubits."""

    n: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        probs = np.asarray(self.probs, dtype=float)
        if probs.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} entries for n={self.n}, got {probs.shape}")
        if np.any(probs < 0.0):
            raise ValueError("probabilities must be non-negative")
        probs = _check_mass(probs, "DiagonalState")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class PermutationSpec:
    """Bijection on basis indices, as an index map plus generating swaps.

    ``perm[i]`` is the image of index ``i``; ``swaps`` lists generating
    transpositions in application order (first applied first).
    """

    n: int
    perm: np.ndarray
    swaps: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        perm = np.asarray(self.perm, dtype=np.intp)
        if perm.shape != (1 << self.n,):
            raise ValueError(f"permutation length {perm.shape} does not match n={self.n}")
        if not np.array_equal(np.sort(perm), np.arange(1 << self.n)):
            raise ValueError("index map is not a bijection")
        perm = perm.copy()
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    def inverse(self) -> "PermutationSpec":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return PermutationSpec(self.n, inv, tuple(reversed(self.swaps)))


def identity_permutation(n: int) -> PermutationSpec:
    return PermutationSpec(n, np.arange(1 << n))


def permutation_from_swaps(n: int, swaps) -> PermutationSpec:
    """Compose transpositions (applied left to right) into a PermutationSpec."""
    perm = np.arange(1 << n)
    for a, b in swaps:
        # applying the swap (a<->b) after the map built so far relabels images
        mask_a = perm == a
        mask_b = perm == b
        perm[mask_a] = b
        perm[mask_b] = a
    return PermutationSpec(n, perm, tuple((int(a), int(b)) for a, b in swaps))


def permutation_from_map(n: int, perm: np.ndarray) -> PermutationSpec:
    """Wrap an explicit index map, deriving generating swaps from its cycles."""
    perm = np.asarray(perm, dtype=np.intp)
    if not np.array_equal(np.sort(perm), np.arange(perm.size)):
        raise ValueError("index map is not a bijection")
    swaps: list[tuple[int, int]] = []
    seen = np.zeros(perm.size, dtype=bool)
    for start in range(perm.size):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        j = int(perm[start])
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = int(perm[j])
        # (c0 c1 ... ck) = (c0 ck)...(c0 c2)(c0 c1), applied left to right
        swaps.extend((cycle[0], c) for c in cycle[1:])
    return PermutationSpec(n, perm, tuple(swaps))


def product_state(alpha: float, n: int) -> DiagonalState:
    """State of ``n`` identical qubits, each with polarization ``alpha``."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    cell = ground_excited_pair(alpha)
    probs = np.array([1.0])
    for _ in range(n):
        probs = np.kron(probs, cell)
    return DiagonalState(n, probs)


def tensor(a: DiagonalState, b: DiagonalState) -> DiagonalState:
    return DiagonalState(a.n + b.n, np.kron(a.probs, b.probs))


def trace_out_last(d: DiagonalState, m: int) -> DiagonalState:
    """Partial trace over the last ``m`` qubits."""
    if not 1 <= m < d.n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={d.n}")
    reduced = pairwise_sum(d.probs.reshape(1 << (d.n - m), 1 << m), axis=1)
    return DiagonalState(d.n - m, reduced)


def trace_out_first(d: DiagonalState, m: int = 1) -> DiagonalState:
    """Partial trace over the first ``m`` qubits (target side)."""
    if not 1 <= m < d.n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={d.n}")
    reduced = pairwise_sum(d.probs.reshape(1 << m, 1 << (d.n - m)), axis=0)
    return DiagonalState(d.n - m, reduced)


def marginal_target(d: DiagonalState | np.ndarray) -> float:
    """Polarization ``Tr(Z rho_target)`` of the most significant qubit."""
    probs = d.probs if isinstance(d, DiagonalState) else np.asarray(d, dtype=float)
    half = probs.size >> 1
    return float(pairwise_sum(probs[:half]) - pairwise_sum(probs[half:]))


def apply_permutation(d: DiagonalState, pi: PermutationSpec) -> DiagonalState:
    """Relabel basis indices: ``probs'[pi(i)] = probs[i]``."""
    if pi.n != d.n:
        raise ValueError(f"permutation acts on {pi.n} qubits, state has {d.n}")
    out = np.empty_like(d.probs)
    out[pi.perm] = d.probs
    return DiagonalState(d.n, out)
