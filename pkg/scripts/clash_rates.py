"""Monte-Carlo clash rates for monolithic and block layouts of the same length.

    python3 scripts/clash_rates.py --trials 1000000
"""
import argparse

from flexbloom import analysis, oracle
from flexbloom.standard import StandardBloomFilter
from flexbloom.vsbbf import BlockLayout, VsbBloomFilter

CASES = [
    # (total bits, monolithic k, block table)
    (24, 4, [(16, 2.0), (8, 2.0)]),
    (48, 4, [(32, 2.0), (16, 2.0)]),
    (96, 6, [(64, 4.0), (32, 2.0)]),
    (1000, 7, [(512, 3.5), (256, 1.75), (128, 0.875), (64, 0.4375), (32, 0.21875), (8, 0.2)]),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("   m  layout                         measured   model")
    for i, (m, k, table) in enumerate(CASES):
        mono = oracle.estimate_clash_rate(StandardBloomFilter(m, k), args.trials, oracle.sub_seed(args.seed, 2 * i))
        lay = BlockLayout.from_table(table)
        blk = oracle.estimate_clash_rate(VsbBloomFilter(m, 1, layout=lay), args.trials, oracle.sub_seed(args.seed, 2 * i + 1))
        try:
            mono_model = f"{analysis.clash_prob_standard(m, k):.4f}"
        except analysis.OutOfModelError:
            mono_model = "n/a"
        print(f"{m:4d}  single k={k:<23} {mono.estimate:.4f}    {mono_model}")
        sizes = "+".join(str(s) for s, _ in table)
        print(f"{'':4}  blocks {sizes:<23} {blk.estimate:.4f}    {analysis.clash_prob_block(table):.4f}")


if __name__ == "__main__":
    main()
