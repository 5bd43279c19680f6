"""Watch the refrigerator converge, round by round and cycle by cycle.

A 5-qubit register with 2 reset qubits is driven toward its steady state.
The first few rounds buy most of the polarization; the recycle fixed point
is reached after a handful of cycles.  The asymptotic line is
tanh(m 2^(n-m-1) artanh(alpha)).

Run:  python demos/refrigerator_rounds.py
"""

from coolsign import (
    RefrigeratorConfig,
    alpha_infinity,
    build_round_matrix,
    marginal_target,
    product_state,
    steady_state,
)

N, M, ALPHA = 5, 2, 0.5

print(f"n={N}, m={M} reset qubits, reservoir polarization {ALPHA}")
print(f"asymptotic limit: {alpha_infinity(N, M, ALPHA):.10f}\n")

matrix = build_round_matrix(N, M, ALPHA)
vec = product_state(ALPHA, N - M).probs.copy()
print("round-by-round target polarization (first cycle, fresh register):")
for rnd in range(1, 13):
    vec = matrix @ vec
    print(f"  after round {rnd:2d}: {marginal_target(vec):.8f}")

print("\nsteady state per configured round count (recycled operation):")
print(f"{'rounds':>7} {'alpha_qr':>12} {'cycles':>7} {'qubit cost':>11}")
for rounds in (1, 2, 3, 5, 9, 20, 200):
    cfg = RefrigeratorConfig(N, M, rounds)
    result = steady_state(cfg, ALPHA)
    print(f"{rounds:7d} {result.alpha_enhanced:12.8f} {result.cycles_used:7d} {cfg.cost:11d}")

print("\nBidirectionality: the same circuit run on a negative bias")
for alpha in (0.3, -0.3):
    result = steady_state(RefrigeratorConfig(N, M, 5), alpha)
    print(f"  alpha = {alpha:+.1f}  ->  alpha_qr = {result.alpha_enhanced:+.8f}")
