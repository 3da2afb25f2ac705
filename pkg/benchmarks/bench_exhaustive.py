#!/usr/bin/env python3
"""Benchmark the exhaustive-enumeration kernel: compiled vs pure Python.

Builds the triangle-PIN tree protocol at growing blocklengths and times the
full (K, F) histogram over all 2^n edge-bit assignments with each backend.

Usage: python benchmarks/bench_exhaustive.py [--max-bits 24]
"""

import argparse
import random
import time

from skrates import _exhaustive_py

try:
    from skrates import _exhaustive as compiled
except ImportError:
    compiled = None


def protocol_forms(n_bits: int, n_keys: int, n_msgs: int, seed: int = 1):
    rng = random.Random(seed)
    keys = [rng.randrange(1, 1 << n_bits) for _ in range(n_keys)]
    msgs = [rng.randrange(1, 1 << n_bits) for _ in range(n_msgs)]
    return keys, msgs


def bench(fn, keys, msgs, n_bits):
    start = time.perf_counter()
    out = fn(list(keys), list(msgs), n_bits)
    return time.perf_counter() - start, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-bits", type=int, default=24)
    args = parser.parse_args()

    print(f"{'bits':>5} {'assignments':>12} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for n_bits in range(12, args.max_bits + 1, 2):
        keys, msgs = protocol_forms(n_bits, 3, 6)
        t_py, h_py = bench(_exhaustive_py.joint_value_counts, keys, msgs, n_bits)
        if compiled is None:
            print(f"{n_bits:>5} {1 << n_bits:>12} {t_py:>9.3f}s {'n/a':>10} {'':>8}")
            continue
        t_c, h_c = bench(compiled.joint_value_counts, keys, msgs, n_bits)
        assert h_py == h_c, "backends disagree"
        print(
            f"{n_bits:>5} {1 << n_bits:>12} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x"
        )
    if compiled is None:
        print("compiled kernel not built; install with Cython available to compare")


if __name__ == "__main__":
    main()
