"""The elementary-abelian layer of the Lehr-Matignon family: level sum vs brute force.

The window has to reach the p^s scale of the action; with the default
starting precision the oracle can settle on a wrong value once s >= 3.
"""
import argparse

from eqdef.cohomology import _step, a_sequence, dim_h1_cyclic, dim_h1_elem_abelian
from eqdef.oracle import h1_elem_abelian_bruteforce
from eqdef.worked import lehr_matignon_filtration


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--precision", type=int, default=None)
    ap.add_argument("--oracle", action="store_true", help="also run the brute force (slow for large p^s)")
    args = ap.parse_args()
    p = args.p
    t, s, a = _step(lehr_matignon_filtration(p, args.m), 2)
    terms = [dim_h1_cyclic(p, t, ai) for ai in a_sequence(p, a, s)]
    print(f"layer: conductor {t}, rank {s}, a = {a}")
    print(f"level terms {terms}, sum {sum(terms)}, closed form {dim_h1_elem_abelian(p, t, s, a)}, m + 1 = {args.m + 1}")
    if args.oracle:
        res = h1_elem_abelian_bruteforce(p, t, s, a, base_precision=args.precision)
        print(f"oracle {res.dimension} at window {res.precision}")


if __name__ == "__main__":
    main()
