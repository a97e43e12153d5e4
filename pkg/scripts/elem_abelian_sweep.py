"""Brute-force H^1((Z/p)^s, t^a k[[t]]) against the closed form and the level sum."""
import argparse
import time

from eqdef.cohomology import a_sequence, dim_h1_cyclic, dim_h1_elem_abelian
from eqdef.oracle import h1_elem_abelian_bruteforce


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 4, 6])
    ap.add_argument("--a-range", type=int, default=8)
    ap.add_argument("--precision", type=int, default=None,
                    help="starting window; needed for s >= 3, where the default is too small")
    args = ap.parse_args()
    p, s = args.p, args.s
    start = time.time()
    for n in args.n:
        for a in range(-args.a_range, args.a_range + 1):
            res = h1_elem_abelian_bruteforce(p, n, s, a, base_precision=args.precision)
            closed = dim_h1_elem_abelian(p, n, s, a)
            levels = sum(dim_h1_cyclic(p, n, ai) for ai in a_sequence(p, a, s))
            flag = "" if res.dimension == closed == levels else "  MISMATCH"
            print(f"n={n} a={a}: oracle {res.dimension} closed {closed} level sum {levels} "
                  f"(N={res.precision}, {time.time() - start:.0f} s){flag}", flush=True)


if __name__ == "__main__":
    main()
