#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Covers the two hot paths: the orthogonality seen-table scan (the
verifier's inner loop) and the construction cell fills.  Inputs are
deterministic; orthogonal pairs come from direct products of field sets
so the scan never exits early.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from molskit import _kernels_py, direct_product, gen_mols_prime_power, macneish_product

try:
    from molskit import _kernels as compiled
except ImportError:
    compiled = None


def orthogonal_pair(order):
    """Two orthogonal Latin squares of the given order via products of
    field pairs (order must factor into prime powers >= 3)."""
    factors = []
    rest = order
    for q in (9, 8, 7, 5, 4, 3):
        while rest % q == 0:
            factors.append(q)
            rest //= q
    if rest != 1:
        raise ValueError(f"cannot factor {order} into supported prime powers")
    pair = gen_mols_prime_power(factors[0], verify=False)
    a, b = pair[0], pair[1]
    for q in factors[1:]:
        nxt = gen_mols_prime_power(q, verify=False)
        a, b = direct_product(a, nxt[0]), direct_product(b, nxt[1])
    return a, b


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def row(label, py_s, c_s):
    speedup = f"{py_s / c_s:7.1f}x" if c_s else "      --"
    c_txt = f"{c_s * 1e3:10.2f}" if c_s else "        --"
    print(f"{label:<34} {py_s * 1e3:10.2f} {c_txt} {speedup}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = parser.parse_args()

    if compiled is None:
        print("compiled backend unavailable; timing the fallback only\n")

    print(f"{'kernel':<34} {'python ms':>10} {'compiled ms':>10} {'speedup':>8}")

    for order in (64, 243, 576):
        a, b = orthogonal_pair(order)
        ga, gb = a.grid, b.grid
        py = best_of(lambda: _kernels_py.orth_violation(ga, gb), args.repeat)
        cc = best_of(lambda: compiled.orth_violation(ga, gb), args.repeat) if compiled else None
        row(f"orth_violation n={order}", py, cc)

    for order in (64, 243, 576):
        g = orthogonal_pair(order)[0].grid
        py = best_of(lambda: _kernels_py.latin_violation(g), args.repeat)
        cc = best_of(lambda: compiled.latin_violation(g), args.repeat) if compiled else None
        row(f"latin_violation n={order}", py, cc)

    for q in (9, 16):
        mols = gen_mols_prime_power(q, verify=False)
        stack = np.ascontiguousarray(np.stack([sq.grid for sq in mols]))
        base = mols[0].grid
        py = best_of(lambda: _kernels_py.fill_square_embed(base, stack), args.repeat)
        cc = (
            best_of(lambda: compiled.fill_square_embed(base, stack), args.repeat)
            if compiled
            else None
        )
        row(f"fill_square_embed n={q} t={q - 1}", py, cc)

    mols24 = macneish_product(gen_mols_prime_power(8), gen_mols_prime_power(3))
    stack = np.ascontiguousarray(np.stack([sq.grid for sq in mols24]))
    fmap = np.arange(len(mols24), dtype=np.int64)
    g0, g1 = mols24[0].grid, mols24[1].grid
    py = best_of(lambda: _kernels_py.fill_pair_embed(g0, g1, g0, g1, stack, fmap), args.repeat)
    cc = (
        best_of(lambda: compiled.fill_pair_embed(g0, g1, g0, g1, stack, fmap), args.repeat)
        if compiled
        else None
    )
    row("fill_pair_embed n=24 t=2", py, cc)


if __name__ == "__main__":
    main()
