"""Run verification suites over several Coxeter types and write a JSON summary."""

import argparse
import json
import time

from schur.coxeter import CoxeterSpec, CoxeterSystem
from schur.verify import SUITES, run_suite, summarize


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", default="A2,B2,I2(5),A3")
    ap.add_argument("--suites", default="all")
    ap.add_argument("--out", default="suite_results.json")
    args = ap.parse_args()
    names = list(SUITES) if args.suites == "all" else args.suites.split(",")
    results = []
    ok = True
    for text in args.types.split(","):
        W = CoxeterSystem(CoxeterSpec.parse(text))
        for name in names:
            start = time.perf_counter()
            reports = run_suite(W, name)
            elapsed = time.perf_counter() - start
            good = summarize(reports)
            ok &= good
            print(f"{text:8s} {name:16s} {'ok' if good else 'MISMATCH':8s} {elapsed:7.2f}s", flush=True)
            results.append({"type": text, "suite": name, "ok": good,
                            "seconds": round(elapsed, 3), "reports": reports})
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(results, fh, indent=1, ensure_ascii=False, default=str)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
