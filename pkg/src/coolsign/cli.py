"""Command-line front end: figure-data sweeps, verification suites, and
resource-matched sampling experiments.

Figures are emitted as data files (CSV or JSON), one row per grid
polarization and one column per curve; CSV uses a header row, LF line
endings, and 17-significant-digit numbers so files round-trip and are
byte-identical for identical flags and seed, regardless of ``--jobs``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 output I/O
error, 4 budget too small.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import klocal, refrigerator, sampling, single_shot, verify

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4

FIGURES = (
    "single-shot-polarization",
    "single-shot-reduction",
    "bqr-polarization",
    "bqr-reduction",
    "klocal-reduction",
)

DEFAULT_SINGLE_SHOT_N = (3, 5, 11, 21)
DEFAULT_BQR_ROUNDS = (3, 4, 5, 6, 7, 8, 9)


@dataclass(frozen=True)
class SweepSpec:
    """Parsed sweep parameters shared by the figure and sample commands."""

    alpha_grid: tuple[float, ...]
    n_list: tuple[int, ...]
    m: int
    rounds_list: tuple[int, ...]
    locality: str
    budget: int
    trials: int
    seed: int
    out: str
    fmt: str
    jobs: int = 1


def parse_alpha_grid(text: str) -> tuple[float, ...]:
    """Parse ``start:stop:step`` into an inclusive, strictly increasing grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"need step > 0 and stop >= start, got {text!r}")
    count = int(round((stop - start) / step))
    grid = tuple(round(start + k * step, 12) for k in range(count + 1))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"grid from {text!r} is not strictly increasing")
    return grid


def _format_number(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_rows(path: str, fmt: str, header: list[str], rows: list[list]) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_format_number(v) for v in row) for row in rows)
        payload = "\n".join(lines) + "\n"
    else:
        payload = json.dumps(
            {"columns": header, "rows": [[_json_value(v) for v in row] for row in rows]},
            indent=2,
        )
        payload += "\n"
    with open(path, "w", newline="\n") as handle:
        handle.write(payload)


def _json_value(v):
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if v != v or v in (float("inf"), float("-inf")):
        return repr(v)
    return v


# ---------------------------------------------------------------------------
# figure sweeps

def _figure_single_shot(spec: SweepSpec, reduction: bool) -> tuple[list[str], list[list]]:
    header = ["alpha"] + [f"n{n}" for n in spec.n_list] + ["baseline"]
    rows = []
    for a in spec.alpha_grid:
        if reduction:
            row = [a] + [single_shot.reduction_factor_ac(n, a) for n in spec.n_list] + [1.0]
        else:
            row = [a] + [single_shot.alpha_ac(n, a) for n in spec.n_list] + [a]
        rows.append(row)
    return header, rows


def _figure_bqr(spec: SweepSpec, reduction: bool, locality: str) -> tuple[list[str], list[list]]:
    n = spec.n_list[0]
    bound_rounds = max(spec.rounds_list)
    header = ["alpha"] + [f"rounds{r}" for r in spec.rounds_list]
    if reduction:
        header += [f"single_shot_n{n}", f"optimal_bound_rounds{bound_rounds}", "baseline"]
    else:
        header += ["baseline", "asymptotic"]

    def one_point(a: float) -> list:
        cfgs = [
            refrigerator.RefrigeratorConfig(n, spec.m, r, locality=locality)
            for r in spec.rounds_list
        ]
        if reduction:
            curve = [refrigerator.reduction_factor_qr(cfg, a) for cfg in cfgs]
            bound_cfg = refrigerator.RefrigeratorConfig(n, spec.m, bound_rounds)
            return (
                [a]
                + curve
                + [
                    single_shot.reduction_factor_ac(n, a),
                    refrigerator.reduction_factor_bound(bound_cfg, a),
                    1.0,
                ]
            )
        curve = [refrigerator.steady_state(cfg, a).alpha_enhanced for cfg in cfgs]
        return [a] + curve + [a, refrigerator.alpha_infinity(n, spec.m, a)]

    rows = _map_grid(one_point, spec)
    return header, rows


def _map_grid(fn, spec: SweepSpec) -> list[list]:
    if spec.jobs > 1:
        with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(fn, spec.alpha_grid))
    return [fn(a) for a in spec.alpha_grid]


def cmd_figure(name: str, spec: SweepSpec) -> int:
    if name not in FIGURES:
        print(f"unknown figure {name!r}; choose from {FIGURES}", file=sys.stderr)
        return EXIT_USAGE
    if "reduction" in name and any(a <= 0.0 for a in spec.alpha_grid):
        print("reduction-factor sweeps need a grid within (0, 1)", file=sys.stderr)
        return EXIT_USAGE
    if name == "single-shot-polarization":
        header, rows = _figure_single_shot(spec, reduction=False)
    elif name == "single-shot-reduction":
        header, rows = _figure_single_shot(spec, reduction=True)
    elif name == "bqr-polarization":
        header, rows = _figure_bqr(spec, reduction=False, locality="full")
    elif name == "bqr-reduction":
        header, rows = _figure_bqr(spec, reduction=True, locality="full")
    else:
        header, rows = _figure_bqr(spec, reduction=True, locality="3local")
    try:
        write_rows(spec.out, spec.fmt, header, rows)
    except OSError as exc:
        print(f"cannot write {spec.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {spec.out} ({len(rows)} rows, {len(header)} columns)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites

def cmd_verify(suite: str) -> int:
    try:
        results = verify.run_suite(suite)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_USAGE
    for result in results:
        print(result.line())
    if all(r.passed for r in results):
        print(f"suite {suite}: all {len(results)} checks passed")
        return EXIT_OK
    failed = sum(not r.passed for r in results)
    print(f"suite {suite}: {failed} of {len(results)} checks FAILED", file=sys.stderr)
    return EXIT_VERIFY


# ---------------------------------------------------------------------------
# resource-matched sampling

SAMPLE_HEADER = [
    "alpha",
    "k_raw",
    "k_cooled",
    "alpha_cooled",
    "exact_error_raw",
    "exact_error_cooled",
    "mc_error_raw",
    "mc_error_cooled",
    "bound_raw",
    "bound_cooled",
    "empirical_ratio",
    "reduction_factor",
]


def cmd_sample(spec: SweepSpec) -> int:
    cfg = refrigerator.RefrigeratorConfig(
        spec.n_list[0], spec.m, spec.rounds_list[0], locality=spec.locality
    )

    def one_point(item: tuple[int, float]) -> list:
        index, alpha = item
        point_seed = int(
            np.random.SeedSequence(spec.seed, spawn_key=(index,)).generate_state(1, np.uint64)[0]
        )
        rec = sampling.resource_matched_comparison(
            alpha, cfg, spec.budget, point_seed, trials=spec.trials
        )
        return [
            rec.alpha_raw,
            rec.k_raw,
            rec.k_cooled,
            rec.alpha_cooled,
            rec.exact_error_raw,
            rec.exact_error_cooled,
            rec.mc_error_raw,
            rec.mc_error_cooled,
            rec.bound_raw,
            rec.bound_cooled,
            rec.empirical_ratio,
            rec.reduction_factor,
        ]

    items = list(enumerate(spec.alpha_grid))
    try:
        if spec.jobs > 1:
            with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
                rows = list(pool.map(one_point, items))
        else:
            rows = [one_point(item) for item in items]
    except sampling.BudgetError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    try:
        write_rows(spec.out, spec.fmt, SAMPLE_HEADER, rows)
    except OSError as exc:
        print(f"cannot write {spec.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {spec.out} ({len(rows)} rows)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument handling

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coolsign",
        description="Bidirectional-cooling sweeps, verification suites, and "
        "resource-matched sampling experiments.",
    )
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--figure", metavar="NAME", help=f"emit curve data; one of {FIGURES}")
    mode.add_argument("--suite", metavar="NAME", help="run a verification suite "
                      "(theorem1, bqr-oracle, klocal-fixedpoint, sampling, all)")
    mode.add_argument("--sample", action="store_true",
                      help="sweep resource-matched raw-vs-cooled comparisons")
    parser.add_argument("--n", default=None, help="qubit count(s), comma separated")
    parser.add_argument("--m", type=int, default=2, help="reset qubits (default 2)")
    parser.add_argument("--rounds", default=None, help="round count(s), comma separated")
    parser.add_argument("--locality", choices=refrigerator.LOCALITIES, default="full")
    parser.add_argument("--alpha-grid", default=None, metavar="START:STOP:STEP")
    parser.add_argument("--budget", type=int, default=10_000,
                        help="total fresh-qubit budget for --sample")
    parser.add_argument("--trials", type=int, default=100_000,
                        help="monte carlo trials per grid point")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", metavar="PATH", help="output data file")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker threads for sweep points (output is "
                        "byte-identical for any value)")
    return parser


def _parse_int_list(text: str | None, default: tuple[int, ...]) -> tuple[int, ...]:
    if text is None:
        return default
    values = tuple(int(p) for p in text.split(",") if p)
    if not values:
        raise ValueError(f"empty integer list {text!r}")
    return values


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.figure in ("single-shot-polarization", "single-shot-reduction"):
            n_list = _parse_int_list(args.n, DEFAULT_SINGLE_SHOT_N)
        else:
            n_list = _parse_int_list(args.n, (5,))
        rounds_list = _parse_int_list(args.rounds, DEFAULT_BQR_ROUNDS)
        if args.sample:
            rounds_list = rounds_list[:1] if args.rounds else (5,)
            default_grid = "0.1:0.9:0.1"
        else:
            default_grid = "0.01:0.99:0.01"
        alpha_grid = parse_alpha_grid(args.alpha_grid or default_grid)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE

    if (args.figure or args.sample) and not args.out:
        parser.print_usage(sys.stderr)
        print("--out PATH is required for --figure/--sample", file=sys.stderr)
        return EXIT_USAGE

    spec = SweepSpec(
        alpha_grid=alpha_grid,
        n_list=n_list,
        m=args.m,
        rounds_list=rounds_list,
        locality=args.locality,
        budget=args.budget,
        trials=args.trials,
        seed=args.seed,
        out=args.out or "",
        fmt=args.format,
        jobs=max(1, args.jobs),
    )

    if args.suite:
        return cmd_verify(args.suite)
    if args.figure:
        return cmd_figure(args.figure, spec)
    return cmd_sample(spec)


if __name__ == "__main__":
    sys.exit(main())
