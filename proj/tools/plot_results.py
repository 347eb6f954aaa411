#!/usr/bin/env python3
"""Render the benchmark CSV artifacts as PNG figures.

Reads runs.csv / convergence.csv (and report_curves.csv when present) from an
output directory produced by `lfcbench benchmark` / `lfcbench report`, and
writes one convergence figure per case plus an objective-distribution figure.

Usage:
    python3 tools/plot_results.py out/ [--dpi 130]
"""

import argparse
import collections
import csv
import pathlib
import statistics
import sys


def read_rows(path):
    with open(path, newline="") as fh:
        yield from csv.DictReader(fh)


def load_runs(out_dir):
    # (algorithm, case) -> list of best_itae
    cells = collections.defaultdict(list)
    for row in read_rows(out_dir / "runs.csv"):
        cells[(row["algorithm"], int(row["case"]))].append(float(row["best_itae"]))
    return cells


def load_convergence(out_dir):
    # (case, algorithm, iteration) -> list of best_fitness across seeds
    curves = collections.defaultdict(list)
    for row in read_rows(out_dir / "convergence.csv"):
        key = (int(row["case"]), row["algorithm"], int(row["iteration"]))
        curves[key].append(float(row["best_fitness"]))
    return curves


def median_curves(curves, case_id):
    # algorithm -> (iterations, medians)
    per_alg = collections.defaultdict(dict)
    for (case, alg, it), values in curves.items():
        if case == case_id:
            per_alg[alg][it] = statistics.median(values)
    out = {}
    for alg, by_it in per_alg.items():
        its = sorted(by_it)
        out[alg] = (its, [by_it[i] for i in its])
    return out


def plot_convergence(plt, out_dir, curves, case_id, dpi):
    data = median_curves(curves, case_id)
    if not data:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for alg in sorted(data):
        its, meds = data[alg]
        ax.plot([i + 1 for i in its], meds, label=alg, linewidth=1.4)
    ax.set_yscale("log")
    ax.set_xlabel("iteration")
    ax.set_ylabel("median best ITAE")
    ax.set_title(f"case {case_id} convergence (median across seeds)")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    path = out_dir / f"fig_convergence_case-{case_id}.png"
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_distributions(plt, out_dir, cells, dpi):
    cases = sorted({case for _, case in cells})
    algs = sorted({alg for alg, _ in cells})
    if not cases:
        return None
    fig, axes = plt.subplots(
        1, len(cases), figsize=(3.2 * len(cases), 4.2), squeeze=False, sharey=False
    )
    for ax, case in zip(axes[0], cases):
        series = [cells.get((alg, case), []) for alg in algs]
        ax.boxplot(series, tick_labels=algs, showmeans=True)
        ax.set_title(f"case {case}")
        ax.set_ylabel("best ITAE")
        ax.tick_params(axis="x", rotation=45, labelsize=8)
        ax.grid(True, axis="y", alpha=0.3)
    fig.suptitle("objective distribution per algorithm")
    path = out_dir / "fig_distributions.png"
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=pathlib.Path, help="benchmark output directory")
    parser.add_argument("--dpi", type=int, default=130)
    args = parser.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required: pip install matplotlib")

    if not (args.out_dir / "runs.csv").exists():
        sys.exit(f"no runs.csv in {args.out_dir}")

    written = []
    cells = load_runs(args.out_dir)
    fig = plot_distributions(plt, args.out_dir, cells, args.dpi)
    if fig:
        written.append(fig)

    conv_path = args.out_dir / "convergence.csv"
    if conv_path.exists():
        curves = load_convergence(args.out_dir)
        for case in sorted({case for case, _, _ in curves}):
            fig = plot_convergence(plt, args.out_dir, curves, case, args.dpi)
            if fig:
                written.append(fig)

    for path in written:
        print(path)
    if not written:
        print("nothing to plot", file=sys.stderr)


if __name__ == "__main__":
    main()
