"""Invariants of Z/m on H^1(Z/p, T_O) for the comparison-table rows, by brute force (slow)."""
import argparse
import time

from eqdef.cohomology import pries_dimension, pries_r
from eqdef.oracle import tame_invariants
from eqdef.worked import REFERENCE_ROWS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", nargs="*", default=None, help="p,j,m triples, e.g. 13,19,6")
    args = ap.parse_args()
    rows = [tuple(map(int, r.split(","))) for r in args.rows] if args.rows else list(REFERENCE_ROWS)
    start = time.time()
    for p, j, m in rows:
        full, inv = tame_invariants(p, j, m)
        print(f"({p},{j},{m}): H1 {full.dimension}, invariants {inv.dimension} {list(inv.exponents)}; "
              f"closed form {pries_dimension(p, j, m)}, r {pries_r(p, j, m)}, "
              f"tabulated {REFERENCE_ROWS.get((p, j, m))}  [{time.time() - start:.0f} s]", flush=True)


if __name__ == "__main__":
    main()
