"""Brute-force H^1(Z/p, t^a k[[t]]) against the closed form over a parameter grid."""
import argparse
import time

from eqdef.cohomology import basis_h1_cyclic, dim_h1_cyclic
from eqdef.oracle import h1_cyclic_bruteforce


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--a-range", type=int, default=12)
    args = ap.parse_args()
    start, bad, count = time.time(), 0, 0
    for p in args.p:
        for n in range(1, args.n_max + 1):
            if n % p == 0:
                continue
            for a in range(-args.a_range, args.a_range + 1):
                res = h1_cyclic_bruteforce(p, n, a)
                count += 1
                want = (dim_h1_cyclic(p, n, a), basis_h1_cyclic(p, n, a))
                if (res.dimension, list(res.exponents)) != want:
                    bad += 1
                    print(f"MISMATCH p={p} n={n} a={a}: oracle {res.dimension} {list(res.exponents)}, closed {want}")
    print(f"{count} instances, {bad} mismatches, {time.time() - start:.1f} s")


if __name__ == "__main__":
    main()
