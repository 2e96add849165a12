#!/usr/bin/env python3
"""Print the prime-window scaling table for braid code color counts.

For block size m the family indexed by s uses the window of 2m
consecutive primes starting at the s-th prime as q-parameters with
g = 2, giving a grid of L = 2m * prod(window) points colored with
K = 2 * sum(window) colors (K = L for m = 1).  The ratio column
compares K against L^(1/l) where l is the number of free prime
parameters (1 for m = 1, 2m otherwise).
"""

import argparse

from braidcode.oracle import bench_tsv, order_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2, help="block size (default 2)")
    ap.add_argument("--s-max", type=int, default=5, help="largest window index (default 5)")
    args = ap.parse_args()
    rows = order_bench(args.m, 1, range(1, args.s_max + 1))
    print(bench_tsv(rows))


if __name__ == "__main__":
    main()
