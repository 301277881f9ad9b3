"""Batch command surface: verify / classify / ahlfors / rank / compose /
metric / suite, with JSON reports (schema report_v1) and the exit codes
0 = all checks passed, 1 = a check failed, 2 = usage error, 3 = internal
contract violation."""

import argparse
import json
import sys
import time

from . import __version__
from .algebra import GaussRat, Q
from .errors import ContractError, CrmapsError
from .holomap import CATALOG_NAMES, catalog, compose
from .invariants import ahlfors_tensor, classify, geometric_rank, normalize
from .metrics import defect_is_zero, isometry_defect, metric, ricci_check
from .verifier import verify_cr_map

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _load_map(args):
    if getattr(args, "catalog", None):
        kw = {}
        if getattr(args, "alpha", None) is not None:
            kw["alpha"] = Q(args.alpha)
        if getattr(args, "beta", None) is not None:
            kw["beta"] = Q(args.beta)
        if getattr(args, "lam", None) is not None:
            kw["lam"] = Q(args.lam)
        if args.catalog == "Psi_embed":
            kw["m"] = args.n
            kw["lp"] = args.l
            return catalog(args.catalog, **kw)
        return catalog(args.catalog, args.n, args.l, **kw)
    if getattr(args, "map", None):
        from .dsl import parse_map
        with open(args.map, "r", encoding="utf-8") as fh:
            return parse_map(fh.read()).to_holomap()
    raise SystemExit(EXIT_USAGE)


def _report(payload, args):
    payload = {"schema": "report_v1", "version": __version__, **payload}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args):
    H = _load_map(args)
    rep = verify_cr_map(H, mode=args.mode, degree=args.degree,
                        samples=args.samples, seed=args.seed)
    _report({"command": "verify", "result": rep.to_json()}, args)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(args):
    H = _load_map(args)
    _, nf = normalize(H)
    label = classify(nf)
    _report({"command": "classify", "map": H.name, "label": label,
             "normal_form": nf.to_json()}, args)
    return EXIT_OK


def cmd_ahlfors(args):
    H = _load_map(args)
    point = _parse_point(args.point, H) if args.point else None
    rep = ahlfors_tensor(H, point=point,
                         mode=None if args.mode == "exact" else args.mode)
    _report({"command": "ahlfors", "map": H.name, "result": rep.to_json()}, args)
    return EXIT_OK


def cmd_rank(args):
    H = _load_map(args)
    point = _parse_point(args.point, H) if args.point else None
    r = geometric_rank(H, point=point)
    _report({"command": "rank", "map": H.name, "rank": r}, args)
    return EXIT_OK


def cmd_compose(args):
    maps = [catalog(nm, args.n, args.l) for nm in args.names]
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    rep = verify_cr_map(out, mode=args.mode, degree=args.degree,
                        samples=args.samples, seed=args.seed)
    _report({"command": "compose", "chain": args.names,
             "result": rep.to_json()}, args)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_metric(args):
    results = {}
    ok = True
    if args.check in ("einstein", "both"):
        M = metric("tube_domain", args.n, args.l)
        rep = ricci_check(M, factor=args.n + 1)
        results["einstein"] = rep
        ok = ok and rep["passed"]
    if args.check in ("isometry", "both"):
        H = _load_map(args)
        defect = isometry_defect(H, degree=args.degree)
        zero = defect_is_zero(defect)
        results["isometry"] = {"map": H.name, "defect_zero": zero}
    _report({"command": "metric", "results": results}, args)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_point(text, H):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != H.source.ambient_dim:
        raise SystemExit(EXIT_USAGE)
    out = []
    for p in parts:
        if "+" in p[1:] or "i" in p:
            raise SystemExit(EXIT_USAGE)  # exact points: real rationals only
        out.append(GaussRat(Q(p)))
    return tuple(out)


def suite_checks(seed=42, degree=10, samples=100):
    """The acceptance battery as (name, callable) pairs."""
    checks = []

    def add(name, fn):
        checks.append((name, fn))

    for nm in ("H1", "H2", "H3", "H4", "H5"):
        add("verify:%s" % nm,
            lambda nm=nm: verify_cr_map(catalog(nm)).passed
            and verify_cr_map(catalog(nm), mode="numeric", samples=samples,
                              seed=seed).passed)
    add("verify:I", lambda: verify_cr_map(catalog("I"), mode="series",
                                          degree=degree).passed
        and verify_cr_map(catalog("I"), mode="numeric", samples=samples,
                          seed=seed).passed)
    for n in (4, 5):
        for l in (1, 2):
            add("verify:ell_n(%d,%d)" % (n, l),
                lambda n=n, l=l: verify_cr_map(catalog("ell_n", n, l)).passed)
            add("verify:I_n(%d,%d)" % (n, l),
                lambda n=n, l=l: verify_cr_map(catalog("I_n", n, l),
                                               mode="series", degree=degree).passed)
    ranks = {"H1": 0, "H2": 1, "H3": 1, "H4": 2, "H5": 2, "I": 0}
    for nm, want in ranks.items():
        add("rank:%s=%d" % (nm, want),
            lambda nm=nm, want=want: geometric_rank(catalog(nm)) == want)
    add("rank:ell_n=0", lambda: geometric_rank(catalog("ell_n", 4, 1)) == 0)
    add("rank:I_n=0", lambda: geometric_rank(catalog("I_n", 4, 1)) == 0)
    for nm, want in [("H1", "LINEAR"), ("H2", "RANK1_POS"), ("H3", "RANK1_NEG"),
                     ("H4", "RANK2_HYP"), ("H5", "RANK2_ELL"), ("I", "IRRATIONAL")]:
        add("classify:%s" % nm,
            lambda nm=nm, want=want: classify(normalize(catalog(nm))[1]) == want)
    add("metric:einstein(3,1)",
        lambda: ricci_check(metric("tube_domain", 3, 1), factor=4)["passed"])
    add("metric:isometry:ell",
        lambda: defect_is_zero(isometry_defect(catalog("ell_n", 4, 1))))
    add("metric:isometry:R0",
        lambda: defect_is_zero(isometry_defect(catalog("R0"))))
    add("bridges:cayley", lambda: verify_cr_map(catalog("cayley")).passed)
    add("bridges:Omega", lambda: verify_cr_map(catalog("Omega")).passed)
    add("bridges:t2m", lambda: verify_cr_map(catalog("t2m"), mode="numeric",
                                             samples=samples, seed=seed).passed)
    return checks


def cmd_suite(args):
    t0 = time.time()
    results = []
    ok = True
    for name, fn in suite_checks(seed=args.seed, degree=args.degree,
                                 samples=args.samples):
        try:
            passed = bool(fn())
        except CrmapsError as exc:
            passed = False
            results.append({"check": name, "passed": False, "error": str(exc)})
            ok = False
            print("FAIL %s (%s)" % (name, exc))
            continue
        results.append({"check": name, "passed": passed})
        ok = ok and passed
        print("%s %s" % ("PASS" if passed else "FAIL", name))
    _report({"command": "suite", "seed": args.seed, "passed": ok,
             "elapsed_s": round(time.time() - t0, 3), "results": results}, args)
    return EXIT_OK if ok else EXIT_FAIL


def make_parser():
    ap = argparse.ArgumentParser(
        prog="crmaps",
        description="Exact verification and classification of CR maps from "
                    "hyperquadrics into tubes over null cones.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, point=False):
        p.add_argument("--catalog", choices=CATALOG_NAMES)
        p.add_argument("--map", help="path to a .crmap definition file")
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--l", type=int, default=1)
        p.add_argument("--alpha", help="rational parameter for H_A")
        p.add_argument("--beta", help="rational parameter for H_A")
        p.add_argument("--lam", help="rational parameter for the irrational family")
        p.add_argument("--mode", choices=("exact", "series", "numeric"),
                       default="exact")
        p.add_argument("--degree", type=int, default=10)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", help="write the JSON report to a file")
        if point:
            p.add_argument("--point", help="comma-separated rational coordinates")

    common(sub.add_parser("verify", help="check the mapping equation"))
    common(sub.add_parser("classify", help="normalize and classify a germ"))
    common(sub.add_parser("ahlfors", help="CR Ahlfors tensor report"), point=True)
    common(sub.add_parser("rank", help="geometric rank"), point=True)
    pc = sub.add_parser("compose", help="compose catalog maps and verify")
    pc.add_argument("names", nargs="+")
    common(pc)
    pm = sub.add_parser("metric", help="Einstein / isometry checks")
    pm.add_argument("--check", choices=("einstein", "isometry", "both"),
                    default="einstein")
    common(pm)
    common(sub.add_parser("suite", help="run the acceptance battery"))
    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    handler = {
        "verify": cmd_verify, "classify": cmd_classify, "ahlfors": cmd_ahlfors,
        "rank": cmd_rank, "compose": cmd_compose, "metric": cmd_metric,
        "suite": cmd_suite,
    }[args.command]
    try:
        return handler(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ContractError as exc:
        print("internal contract violation: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    except CrmapsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
