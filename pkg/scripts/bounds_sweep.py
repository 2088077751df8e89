#!/usr/bin/env python

import argparse
import json
from pathlib import Path

from lorentzkit import config
from lorentzkit.sampling import make_rng, random_g_vector
from lorentzkit.split import coefficient_bound_check, inverse_bound_check

SWEEP_FILE = Path("bounds_sweep.json")


def sweep_degree(n: int, samples: int, seed: int) -> dict:
    checked = inverse_bound_check(n)
    rng = make_rng(seed, n)
    ratios = []
    for _ in range(samples):
        report = coefficient_bound_check(random_g_vector(rng, n), n)
        ratios.append(float(report.ratio))
    return {
        "max_abs_entry": str(checked.max_abs_entry),
        "max_over_2^(n/2)": float(checked.max_abs_entry) / 2 ** (n / 2),
        "worst_ratio": max(ratios, default=0.0),
        "worst_ratio_over_6^(n/2)": max(ratios, default=0.0) / 6 ** (n / 2),
        "pass": checked.passed,
    }


def main():
    parser = argparse.ArgumentParser(
        description="Sweep the inverse-entry and solver coefficient bounds over degrees."
    )
    parser.add_argument("--n-max", type=int, default=30, help="Largest degree (default: 30)")
    parser.add_argument("--samples", type=int, default=20, help="Random right-hand sides per degree (default: 20)")
    parser.add_argument("--seed", type=int, default=config.SEED, help=f"Random seed (default: {config.SEED})")
    parser.add_argument("--out", type=Path, default=SWEEP_FILE, help="Output JSON file")
    args = parser.parse_args()

    print(f"\n🚀 Sweeping bounds for n = 1..{args.n_max} with {args.samples} samples each...\n")
    results = {str(n): sweep_degree(n, args.samples, args.seed) for n in range(1, args.n_max + 1)}

    tightest = max(results.items(), key=lambda kv: kv[1]["max_over_2^(n/2)"])
    print("\n" + "=" * 50)
    print("✅ SWEEP RESULTS")
    print("=" * 50)
    print(f"⭐ Tightest inverse bound: n={tightest[0]} ({tightest[1]['max_over_2^(n/2)']:.4f} of 2^(n/2))")
    failed = [n for n, r in results.items() if not r["pass"]]
    print(f"🔎 Degrees with failed checks: {failed or 'none'}")
    print("=" * 50 + "\n")

    with open(args.out, "w") as f:
        json.dump(results, f, indent=2, sort_keys=True)

    print(f"✅ Sweep saved to: {args.out.resolve()}")


if __name__ == "__main__":
    main()
