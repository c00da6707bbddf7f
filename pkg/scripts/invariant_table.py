"""Degreewise invariant dimensions of R(p) next to the induced tensor-product prediction."""

import argparse

from schur.cosets import double_cosets
from schur.coxeter import CoxeterSpec, CoxeterSystem
from schur.demazure import build_rep, invariant_dims, induced_prediction


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A2")
    ap.add_argument("--deg-cap", type=int, default=8)
    args = ap.parse_args()
    W = CoxeterSystem(CoxeterSpec.parse(args.type))
    rep = build_rep(W)
    fmt = W.format_subset
    mismatches = 0
    for I in W.all_subsets():
        for J in W.all_subsets():
            for p in double_cosets(W, I, J):
                for K in [K for K in W.all_subsets() if K <= I]:
                    for L in [L for L in W.all_subsets() if L <= J]:
                        a = invariant_dims(rep, p, K, L, args.deg_cap)
                        b = induced_prediction(rep, p, K, L, args.deg_cap)
                        mismatches += a != b
                        print(f"I={fmt(I):10s} J={fmt(J):10s} p_-={W.format(p.p_minus):10s} "
                              f"K={fmt(K):8s} L={fmt(L):8s} {a} {'=' if a == b else '!='} {b}")
    print(f"mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
