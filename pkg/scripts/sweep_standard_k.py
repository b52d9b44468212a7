"""Integer-k false-positive sweep of a standard filter at fixed m = 8192.

Writes measured and exact FPR per (n, k) and prints the best k for each n.

    python3 scripts/sweep_standard_k.py --out results/standard_k.csv
"""
import argparse
import csv
from pathlib import Path

from flexbloom import analysis, harness
from flexbloom.analysis import FilterParams


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=8192)
    ap.add_argument("--ns", default="500,1000,2000")
    ap.add_argument("--ks", default="1:13:1")
    ap.add_argument("--negatives", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/standard_k.csv"))
    args = ap.parse_args()

    grid = harness.SweepSpec(
        "standard", args.m, tuple(harness.parse_int_values(args.ns)),
        tuple(harness.parse_k_values(args.ks)), args.negatives, args.seed,
    )
    rows = harness.sweep(grid, jobs=args.jobs)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(["n", "k", "fpr_estimate", "fpr_std_error", "fpr_exact", "foz_measured"])
        for r in rows:
            exact = analysis.fpr_exact(FilterParams(r.m, r.n, r.k_effective))
            w.writerow([r.n, int(r.k_effective), r.fpr_estimate, r.fpr_std_error, f"{exact:.6g}", r.foz_measured])

    for n in grid.ns:
        curve = {r.k_effective: r.fpr_estimate for r in rows if r.n == n}
        best = min(curve, key=curve.get)
        print(f"n={n}: best k={best:.0f} (optimal {analysis.optimal_k(args.m, n):.2f}), fpr {curve[best]:.4g}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
