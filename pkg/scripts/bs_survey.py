"""Survey KL decompositions of Bott-Samelson characters over all short chains.

Prints, per chain length, the number of chains, the number of distinct characters,
how many decompose with non-negative coefficients, and the largest coefficient seen.
"""

import argparse
from collections import defaultdict

from schur.algebroid import bott_samelson_char, chains, decompose_kl
from schur.coxeter import CoxeterSpec, CoxeterSystem


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A3")
    ap.add_argument("--max-steps", type=int, default=5)
    args = ap.parse_args()
    W = CoxeterSystem(CoxeterSpec.parse(args.type))
    seen: dict = {}
    per_len: dict[int, list] = defaultdict(lambda: [0, set(), 0, 0])
    bad = []
    for chain in chains(W, args.max_steps):
        f = bott_samelson_char(W, chain)
        if f not in seen:
            seen[f] = decompose_kl(f)
        dec = seen[f]
        row = per_len[len(chain) - 1]
        row[0] += 1
        row[1].add(f)
        if all(c.is_nonneg() for c in dec.values()):
            row[2] += 1
        else:
            bad.append([W.format_subset(c) for c in chain])
        row[3] = max([row[3]] + [a for c in dec.values() for _, a in c.terms()])
    print(f"{'steps':>5} {'chains':>8} {'distinct':>8} {'positive':>8} {'max coeff':>9}")
    for n in sorted(per_len):
        count, distinct, pos, top = per_len[n]
        print(f"{n:>5} {count:>8} {len(distinct):>8} {pos:>8} {top:>9}")
    for chain in bad[:10]:
        print("non-positive:", ",".join(chain))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
