"""Which tame weight rule matches the true invariants of t -> zeta t on H^1(G, T_O)?"""
from eqdef.cohomology import cyclic_basis, tame_reduce
from eqdef.oracle import tame_invariants

CASES = [(5, 1, 2), (5, 1, 4), (7, 1, 3), (7, 1, 6), (5, 2, 4), (7, 2, 3),
         (7, 3, 2), (7, 4, 3), (7, 4, 6), (11, 3, 5), (13, 5, 6)]


def main():
    for p, n, m in CASES:
        full, inv = tame_invariants(p, n, m)
        basis = cyclic_basis(p, n, -(n + 1))
        picks = {c: sorted(tame_reduce(basis, m, n, c).survivors.levels[0].exponents)
                 for c in ("lemma", "derived")}
        truth = sorted(inv.exponents)
        marks = " ".join(f"{c}={'ok' if v == truth else 'no'}" for c, v in picks.items())
        print(f"p={p} n={n} m={m}: H1 {sorted(full.exponents)} invariants {truth} "
              f"lemma {picks['lemma']} derived {picks['derived']}  {marks}")


if __name__ == "__main__":
    main()
