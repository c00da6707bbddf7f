"""Command-line front end: ``schur {kl,cosets,schur-mult,char,phi,invariants,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .algebroid import (bott_samelson_char, decompose_kl, decomposition_report,
                        kl_elt, standard_elt, star)
from .cache import CacheMismatch, KLCache
from .cosets import coset_of, double_cosets
from .coxeter import CoxeterSpec, CoxeterSystem, SpecError
from .demazure import (DEFAULT_DEG_CAP, RepError, build_rep, invariant_dims,
                       max_degree, phi_basis, verify_induced_invariants)
from .hecke import kl_element, kl_table
from .verify import SUITES, run_suite, summarize

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CACHE = 0, 1, 2, 3
DEFAULT_CACHE = "klcache.json"


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    spec: CoxeterSpec
    command: str
    params: dict = field(default_factory=dict)
    output: str = "table"
    cache_path: str | None = DEFAULT_CACHE
    deg_cap: int | None = None
    search_cap: int = 12
    jobs: int = 1
    stats: bool = False

    def validate(self) -> None:
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.search_cap < 0:
            raise UsageError("--search-cap must be nonnegative")
        if self.deg_cap is not None and not 0 <= self.deg_cap <= max_degree():
            raise UsageError(f"--deg-cap must lie in [0, {max_degree()}]")


# ---------------------------------------------------------------------------
# parsing helpers


def parse_chain(W: CoxeterSystem, text: str) -> list[frozenset[int]]:
    """``"∅,{s1},∅,{s2},∅"``: top-level commas separate subsets."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced braces in chain {text!r}")
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise UsageError(f"unbalanced braces in chain {text!r}")
    parts.append(cur)
    try:
        return [W.subset(p) for p in parts]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _subset(W: CoxeterSystem, text: str | None) -> frozenset[int]:
    try:
        return W.subset(text or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element(W: CoxeterSystem, text: str):
    try:
        return W.parse(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def _emit(cfg: JobConfig, payload, table_lines: Sequence[str]) -> None:
    if cfg.output == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in table_lines))


# ---------------------------------------------------------------------------
# commands


def cmd_kl(cfg: JobConfig, W: CoxeterSystem) -> int:
    if cfg.params.get("all"):
        ws = W.all_elements()
    elif cfg.params.get("w") is not None:
        ws = [_element(W, cfg.params["w"])]
    else:
        raise UsageError("kl needs --w WORD or --all")
    rows = [(W.format(w), kl_element(W, w)) for w in ws]
    _emit(cfg, {name: h.to_json() for name, h in rows},
          [f"{name}\t{h}" for name, h in rows])
    return EXIT_OK


def cmd_cosets(cfg: JobConfig, W: CoxeterSystem) -> int:
    I, J = _subset(W, cfg.params.get("I")), _subset(W, cfg.params.get("J"))
    cos = double_cosets(W, I, J)
    payload = []
    lines = ["p_min\tp_max\tsize\tkilmoyer\tpoincare"]
    for p in cos:
        d = p.to_json()
        d["kilmoyer"] = W.subset_labels(p.kilmoyer)
        d["poincare"] = str(p.poincare)
        payload.append(d)
        lines.append(f"{d['p_min']}\t{d['p_max']}\t{d['size']}\t"
                     f"{W.format_subset(p.kilmoyer)}\t{p.poincare}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_schur_mult(cfg: JobConfig, W: CoxeterSystem) -> int:
    P = cfg.params
    I, J, K = (_subset(W, P.get(k)) for k in ("I", "J", "K"))
    p = coset_of(W, _element(W, P["p"]), I, J)
    q = coset_of(W, _element(W, P["q"]), J, K)
    basis = kl_elt if P.get("basis") == "kl" else standard_elt
    prod = star(basis(p), basis(q))
    lines = [f"M[{W.format(r.p_minus)}]\t{prod.coeff(r)}" for r in prod.support()]
    if P.get("basis") == "kl":
        dec = decompose_kl(prod)
        lines = [f"H[{W.format(r.p_minus)}]\t{c}" for r, c in dec.items()]
        _emit(cfg, {"product": prod.to_json(), "kl": decomposition_report(dec)}, lines)
    else:
        _emit(cfg, prod.to_json(), lines)
    return EXIT_OK


def cmd_char(cfg: JobConfig, W: CoxeterSystem) -> int:
    chain = parse_chain(W, cfg.params["chain"])
    try:
        f = bott_samelson_char(W, chain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not cfg.params.get("decompose"):
        _emit(cfg, f.to_json(), [f"M[{W.format(r.p_minus)}]\t{f.coeff(r)}" for r in f.support()])
        return EXIT_OK
    dec = decompose_kl(f)
    rep = decomposition_report(dec)
    lines = [f"{r['p']}\t{c}" + ("" if r["positive"] else "\tNOT POSITIVE")
             for r, c in zip(rep, dec.values())]
    _emit(cfg, rep, lines)
    for r in rep:
        if not r["positive"]:
            print(f"positivity counterexample at {r['p']}", file=sys.stderr)
    return EXIT_OK


def _rep(W: CoxeterSystem):
    try:
        return build_rep(W)
    except RepError as exc:
        raise UsageError(str(exc)) from None


def cmd_phi(cfg: JobConfig, W: CoxeterSystem) -> int:
    P = cfg.params
    I, J = _subset(W, P.get("I")), _subset(W, P.get("J"))
    rep = _rep(W)
    p = coset_of(W, _element(W, P.get("p") or "e"), I, J)
    phi = phi_basis(rep, p, P.get("prefer") or "left")
    payload = {W.format(x): {"degree": f.degree(), "components": f.to_json()}
               for x, f in phi.items()}
    lines = ["x\tdegree\t" + "\t".join(W.format(y) for y in p.elements)]
    for x, f in phi.items():
        lines.append(f"{W.format(x)}\t{f.degree()}\t" + "\t".join(str(f[y]) for y in p.elements))
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_invariants(cfg: JobConfig, W: CoxeterSystem) -> int:
    P = cfg.params
    I, J = _subset(W, P.get("I")), _subset(W, P.get("J"))
    K, L = _subset(W, P.get("K")), _subset(W, P.get("L"))
    rep = _rep(W)
    p = coset_of(W, _element(W, P.get("p") or "e"), I, J)
    cap = cfg.deg_cap if cfg.deg_cap is not None else min(DEFAULT_DEG_CAP, max_degree())
    try:
        if P.get("check"):
            r = verify_induced_invariants(rep, p, K, L, cap)
            d = r["detail"]
            lines = [f"{deg}\t{a}\t{b}" for deg, a, b in zip(d["degrees"], d["invariants"], d["tensor"])]
            _emit(cfg, r, ["degree\tinvariants\ttensor"] + lines)
            return EXIT_OK if r["status"] == "ok" else EXIT_MISMATCH
        dims = invariant_dims(rep, p, K, L, cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    degs = list(range(0, cap + 1, 2))
    _emit(cfg, {"degrees": degs, "dims": dims},
          ["degree\tdim"] + [f"{d}\t{n}" for d, n in zip(degs, dims)])
    return EXIT_OK


def _suite_kwargs(name: str, deg_cap: int | None, search_cap: int) -> dict:
    if name == "translation_chains":
        return {"cap": search_cap}
    if deg_cap is not None and name in ("induced_invariants", "hilbert", "difference_kernel"):
        return {"cap": deg_cap}
    return {}


def _run_one(spec_json: dict, name: str, deg_cap: int | None, search_cap: int) -> list[dict]:
    W = CoxeterSystem(CoxeterSpec.from_json(spec_json))
    return run_suite(W, name, **_suite_kwargs(name, deg_cap, search_cap))


def cmd_verify(cfg: JobConfig, W: CoxeterSystem) -> int:
    raw = cfg.params.get("suite") or "all"
    names = list(SUITES) if raw == "all" else [s.strip() for s in raw.split(",") if s.strip()]
    unknown = [n for n in names if n not in SUITES]
    if unknown or not names:
        raise UsageError(f"unknown suite {', '.join(unknown) or raw!r}; "
                         f"choose from all, {', '.join(SUITES)}")
    deg_cap = cfg.deg_cap
    if deg_cap is None and "SCHUR_MAX_DEGREE" in os.environ:
        deg_cap = max_degree()
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futs = [pool.submit(_run_one, cfg.spec.to_json(), n, deg_cap, cfg.search_cap)
                    for n in names]
            reports = [r for f in futs for r in f.result()]
    else:
        reports = [r for n in names
                   for r in run_suite(W, n, **_suite_kwargs(n, deg_cap, cfg.search_cap))]
    ok = summarize(reports)
    lines = [f"{r['status']}\t{r['suite']}\t{r['claim']}\t"
             f"{r['detail'].get('checked', '')}" for r in reports]
    _emit(cfg, {"spec": cfg.spec.to_json(), "ok": ok, "reports": reports}, lines)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "kl": cmd_kl, "cosets": cmd_cosets, "schur-mult": cmd_schur_mult, "char": cmd_char,
    "phi": cmd_phi, "invariants": cmd_invariants, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="spec", required=True,
                        help='Coxeter type: A3, B2, I2(5), A1xB2 or JSON such as {"type":"A","rank":3}')
    common.add_argument("--format", choices=["table", "json"], default="table")
    common.add_argument("--cache", default=DEFAULT_CACHE, help="KL cache file (default ./klcache.json)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the KL cache")
    common.add_argument("--deg-cap", type=int, default=None, help="degree cap for polynomial computations")
    common.add_argument("--search-cap", type=int, default=12, help="translation search depth")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    common.add_argument("--stats", action="store_true", help="print computation counters to stderr")

    ap = argparse.ArgumentParser(prog="schur", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig basis elements")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--w", help="element as a word, e.g. s1.s2")
    g.add_argument("--all", action="store_true")

    p = sub.add_parser("cosets", parents=[common], help="double cosets W_I \\ W / W_J")
    p.add_argument("--I", default="")
    p.add_argument("--J", default="")

    p = sub.add_parser("schur-mult", parents=[common], help="product M_p *_J M_q")
    for k in ("I", "J", "K"):
        p.add_argument(f"--{k}", default="")
    p.add_argument("--p", required=True, help="any element of the left coset")
    p.add_argument("--q", required=True, help="any element of the right coset")
    p.add_argument("--basis", choices=["standard", "kl"], default="standard")

    p = sub.add_parser("char", parents=[common], help="Bott-Samelson character of a chain")
    p.add_argument("--chain", required=True, help='e.g. "∅,{s1},∅,{s2},∅"')
    p.add_argument("--decompose", action="store_true", help="expand in the KL basis")

    p = sub.add_parser("phi", parents=[common], help="φ-basis of R(p)")
    p.add_argument("--I", default="")
    p.add_argument("--J", default="")
    p.add_argument("--p", default="e")
    p.add_argument("--prefer", choices=["left", "right"], default="left")

    p = sub.add_parser("invariants", parents=[common], help="invariant dimensions of R(p)")
    for k in ("I", "J", "K", "L"):
        p.add_argument(f"--{k}", default="")
    p.add_argument("--p", default="e")
    p.add_argument("--check", action="store_true", help="compare with the induced tensor product")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all", help="all, or comma-separated suite names")
    return ap


_PARAM_KEYS = ("w", "all", "I", "J", "K", "L", "p", "q", "basis", "chain", "decompose",
               "prefer", "check", "suite")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = CoxeterSpec.parse(args.spec)
        spec.validate()
        cfg = JobConfig(spec=spec, command=args.command,
                        params={k: getattr(args, k) for k in _PARAM_KEYS if hasattr(args, k)},
                        output=args.format, cache_path=None if args.no_cache else args.cache,
                        deg_cap=args.deg_cap, search_cap=args.search_cap, jobs=args.jobs,
                        stats=args.stats)
        cfg.validate()
        W = CoxeterSystem(spec)
    except (SpecError, UsageError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"schur: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cache = None
    try:
        if cfg.cache_path:
            cache = KLCache.open(cfg.cache_path, spec)
            cache.load_into(W)
    except CacheMismatch as exc:
        print(f"schur: {exc}", file=sys.stderr)
        return EXIT_CACHE
    try:
        code = COMMANDS[cfg.command](cfg, W)
    except UsageError as exc:
        print(f"schur: {exc}", file=sys.stderr)
        return EXIT_USAGE
    table = kl_table(W)
    if cache is not None and table.computed and cache.absorb(W):
        cache.save()
    if cfg.stats:
        print(f"kl_computed={table.computed}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
