"""Full H^1 of (Z/p)^2 with two lower jumps, against the local bounds."""
import warnings

from eqdef.cohomology import local_bounds
from eqdef.filtration import RamificationFiltration
from eqdef.oracle import UnrealizableFiltration, two_jump_h1

PAIRS = [(1, 3), (1, 6), (2, 4), (3, 8)]


def main(p=5):
    for t2, t1 in PAIRS:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            filt = RamificationFiltration.from_pairs(p, [(t2, p * p), (t1, p)])
        try:
            res = two_jump_h1(p, t2, t1)
        except UnrealizableFiltration as e:
            print(f"({t2},{t1}): no such group: {e}")
            continue
        b = local_bounds(filt, {1: res.deep_invariants.dimension})
        inside = b.lower <= res.full.dimension <= b.upper_invariant
        print(f"({t2},{t1}): H1(G) = {res.full.dimension} {list(res.full.exponents)}; "
              f"H1(G_t1) = {res.deep.dimension}, invariants {list(res.deep_invariants.exponents)}; "
              f"bounds {b.interval}, tower value {b.exact}; inside: {inside}")


if __name__ == "__main__":
    main()
