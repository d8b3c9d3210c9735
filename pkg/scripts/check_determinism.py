#!/usr/bin/env python3
"""
Quick determinism check for risim.

This script runs the same Monte Carlo sweeps with several worker counts and
verifies that:
- Bit and error counts are identical for every worker count
- A point simulated alone matches the same point inside a longer grid

Usage:
    python scripts/check_determinism.py
"""

from __future__ import annotations

import sys
import time

from risim import SimPlan, StopRule, build_constellation, run_point, run_sweep

WORKER_COUNTS = (1, 2, 4, 8)

PLANS = {
    "SSK greedy": SimPlan(
        scheme="SSK",
        detector="greedy",
        N=64,
        n_R=4,
        snr_grid_db=(-30.0, -27.0, -24.0),
        seed=11,
        stop=StopRule(min_bit_errors=300, max_bits=2_000_000),
    ),
    "SM ML, kappa=2": SimPlan(
        scheme="SM",
        detector="ML",
        N=32,
        n_R=2,
        constellation=build_constellation("QAM", 4),
        snr_grid_db=(-28.0, -24.0),
        kappa=2.0,
        seed=5,
        stop=StopRule(min_bit_errors=300, max_bits=2_000_000),
    ),
}


def counts(plan: SimPlan, workers: int) -> tuple[list[tuple[int, int]], float]:
    start = time.time()
    curve = run_sweep(plan, workers=workers)
    elapsed = time.time() - start
    return [(r.bits_sent, r.bit_errors) for r in curve], elapsed


def check_workers(name: str, plan: SimPlan) -> bool:
    print(f"\n{'=' * 70}")
    print(f"{name}: {plan.label}")
    print(f"{'=' * 70}")

    reference, _ = counts(plan, 1)
    ok = True
    for workers in WORKER_COUNTS:
        result, elapsed = counts(plan, workers)
        same = result == reference
        ok = ok and same
        mark = "✓" if same else "✗ MISMATCH"
        print(f"  workers={workers}: {elapsed:6.2f}s {mark}")
    for snr, (bits, errors) in zip(plan.snr_grid_db, reference, strict=True):
        print(f"    {snr:6.1f} dB: {errors}/{bits} = {errors / bits:.3e}")
    return ok


def check_grid_split(name: str, plan: SimPlan) -> bool:
    snr_db = plan.snr_grid_db[-1]
    alone = run_point(plan, snr_db, workers=2)
    inside = list(run_sweep(plan, workers=2))[-1]
    same = (alone.bits_sent, alone.bit_errors) == (inside.bits_sent, inside.bit_errors)
    mark = "✓" if same else "✗ MISMATCH"
    print(f"  {name}: point {snr_db} dB alone vs in grid {mark}")
    return same


def main() -> int:
    print("\n" + "=" * 70)
    print("risim Determinism Check")
    print("=" * 70)

    ok = all([check_workers(name, plan) for name, plan in PLANS.items()])

    print(f"\n{'=' * 70}")
    print("GRID SPLIT")
    print(f"{'=' * 70}")
    ok = all([check_grid_split(name, plan) for name, plan in PLANS.items()]) and ok

    print("\n" + "=" * 70)
    if ok:
        print("✓ Results do not depend on workers or grid layout")
    else:
        print("✗ Results differ between runs")
    print("=" * 70)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
