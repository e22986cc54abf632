"""Command-line front end.

    pedcong compute --target ped2 --order 100000 --ring mod8 --cache FILE
    pedcong classify 5
    pedcong classify --range 0 1000 --format csv
    pedcong verify thm1.2 --p 7 --alpha-max 1 --n-max 100
    pedcong verify all
    pedcong identities 1000
    pedcong export --target ped2 --order 1000 --format csv --path out.csv

Data goes to stdout, progress and timings to stderr.  Exit status is 0 on
success, 1 when a verification finds a counterexample or an identity fails,
2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import cache as cachemod
from .cache import CacheError, CacheVersionError
from .classifier import classify
from .congruences import (UsageError, audit_printed_mod8_map, check_parity_theorem_1_4,
                          ped_mod4_family, ped2_mod4_family, ped2_mod24_family, ped2_mod3_a, ped2_mod3_b,
                          ped2_mod12, reports_to_csv, ped_mod8_family, verify_family,
                          VerificationReport, Counterexample)
from .quadforms import MAX_INPUT, factorize
from .series import (PED2_SPEC, PED_SPEC, EtaQuotientSpec, ProductCoefficients, Ring, eta_quotient,
                     ring_from_tag)
from .theta import verify_identity_2_1, verify_identity_2_2

RINGS = ("exact", "mod8", "mod4", "mod2", "mod3", "mod12", "mod24")
TARGETS = {"ped": PED_SPEC, "ped2": PED2_SPEC}
FAMILIES = ("thm1.2", "thm1.2-printed", "cor1.1", "cor1.6i", "cor1.6ii", "mod3a", "mod3b",
            "mod12", "ex1.8-mod24", "thm1.4", "thm1.5", "all")
# verify families with these primes when --p is not given
DEFAULT_PRIMES = {"thm1.2": (7, 23), "thm1.2-printed": (7, 23), "cor1.1": (3, 5, 11, 13, 19, 29),
                  "cor1.6i": (3, 7, 11), "cor1.6ii": (5,)}
MAX_ORDER = 50_000_000


def _log(msg: str):
    print(msg, file=sys.stderr)


def _cache_dir(args) -> Path | None:
    return Path(args.cache_dir) if getattr(args, "cache_dir", None) else cachemod.default_cache_dir()


# tables computed during this process, keyed by (spec, ring)
_computed: dict = {}


def _reducible(src: Ring, dst: Ring) -> bool:
    if src == dst or src.exact:
        return True
    return not dst.exact and src.modulus % dst.modulus == 0


def _load_series(spec: EtaQuotientSpec, order: int, ring: Ring, args):
    """Coefficients from a cache file when one reaches ``order``, else computed."""
    path = getattr(args, "cache", None)
    if path and Path(path).exists():
        cspec, s = cachemod.read_cache(path)
        if cspec == spec and s.order >= order and _reducible(s.ring, ring):
            return s.truncate(order).reduce(ring)
    found = cachemod.find_cache(_cache_dir(args), spec, ring.tag, order)
    if found:
        return cachemod.read_cache(found)[1].truncate(order)
    for (hspec, hring), held in _computed.items():
        if hspec == spec and held.order >= order and _reducible(hring, ring):
            return held.truncate(order).reduce(ring)
    t = time.perf_counter()
    s = eta_quotient(spec, order, ring)
    _log(f"computed {spec.canonical()} to order {order} over {ring} in {time.perf_counter() - t:.2f}s")
    _computed[(spec, ring)] = s
    return s


def _check_order(n: int, name="--order"):
    if not 0 <= n <= MAX_ORDER:
        raise UsageError(f"{name} must lie in [0, {MAX_ORDER}]")


# -- commands ----------------------------------------------------------------------

def cmd_compute(args) -> int:
    _check_order(args.order)
    ring = ring_from_tag(args.ring)
    spec = TARGETS[args.target]
    path = args.cache
    if path is None:
        d = _cache_dir(args)
        if d is None:
            raise UsageError(f"give --cache or set {cachemod.ENV_CACHE_DIR}")
        path = d / cachemod.cache_filename(spec, ring.tag, args.order)
    t = time.perf_counter()
    s = eta_quotient(spec, args.order, ring)
    _log(f"computed in {time.perf_counter() - t:.2f}s")
    cachemod.write_cache(path, s, spec)
    print(json.dumps({"path": str(path), "target": args.target, "order": args.order,
                      "ring": ring.tag, "spec": spec.canonical()}, sort_keys=True))
    return 0


def _classify_rows(lo: int, hi: int, args):
    values = None
    if args.cache or _cache_dir(args):
        try:
            values = _cached_only(PED2_SPEC, hi, args)
        except CacheError:
            values = None
    for n in range(lo, hi + 1):
        cls = classify(n)
        val = None if values is None else int(values.coeffs[n])
        yield n, cls, val


def _cached_only(spec, order, args):
    path = args.cache
    if path and Path(path).exists():
        cspec, s = cachemod.read_cache(path)
        if cspec == spec and s.order >= order:
            return s
    for tag in RINGS:
        found = cachemod.find_cache(_cache_dir(args), spec, tag, order)
        if found:
            return cachemod.read_cache(found)[1]
    return None


def cmd_classify(args) -> int:
    if args.range:
        lo, hi = args.range
    else:
        n = args.n if args.n is not None else args.n_pos
        if n is None:
            raise UsageError("classify needs n, --n or --range")
        lo = hi = n
    if lo < 0 or hi < lo or 4 * hi + 1 > MAX_INPUT:
        raise UsageError("need 0 <= lo <= hi and 4*hi+1 <= 2**63")
    rows = list(_classify_rows(lo, hi, args))
    if args.format == "csv":
        print("n,value_or_residue,class")
        for n, cls, val in rows:
            print(f"{n},{'' if val is None else val},{cls}")
    elif args.format == "json" or lo != hi:
        print(json.dumps([{"n": n, "class": str(c), "value_or_residue": v} for n, c, v in rows]))
    else:
        n, cls, val = rows[0]
        print(f"n = {n}")
        print(f"4n+1 = {4 * n + 1} = {factorize(4 * n + 1)}")
        print(f"class = {cls}")
        if val is not None:
            print(f"ped_-2(n) = {val}" + ("" if cls.contains(val) else "  (MISMATCH)"))
    return 0


def cmd_identities(args) -> int:
    _check_order(args.order_pos if args.order_pos is not None else args.order, "N")
    n = args.order_pos if args.order_pos is not None else args.order
    reps = [verify_identity_2_1(n), verify_identity_2_2(n)]
    print(json.dumps([r.to_dict() for r in reps], sort_keys=True))
    return 0 if all(r.ok for r in reps) else 1


def _families_for(name: str, args):
    primes = (args.p,) if args.p is not None else DEFAULT_PRIMES.get(name, ())
    rs = tuple(args.r) if args.r else None
    if name == "thm1.2":
        return [ped_mod8_family(p, rs) for p in primes]
    if name == "cor1.1":
        return [ped_mod4_family(p, rs) for p in primes]
    if name == "cor1.6i":
        return [ped2_mod4_family(p, "i", rs) for p in primes]
    if name == "cor1.6ii":
        return [ped2_mod4_family(p, "ii", rs) for p in primes]
    return [{"mod3a": ped2_mod3_a, "mod3b": ped2_mod3_b, "mod12": ped2_mod12,
             "ex1.8-mod24": ped2_mod24_family}[name]()]


def _classifier_sweep(n_max: int, args) -> VerificationReport:
    t = time.perf_counter()
    values = _load_series(PED2_SPEC, n_max, Ring(8), args)
    rep = VerificationReport("thm1.5", None, [], [], n_max, None, 8, n_max + 1, "all-hold")
    for n in range(n_max + 1):
        v = int(values.coeffs[n])
        if not classify(n).contains(v):
            rep.status = "counterexample"
            rep.counterexample = Counterexample(0, 0, n, n, v)
            break
    rep.wall_time = time.perf_counter() - t
    return rep


def run_verify(name: str, args, capped: bool = False) -> list[VerificationReport]:
    """Reports for one family id (or ``"all"``).

    ``capped`` keeps every argument within ``--order`` even when ``--n-max`` is
    given; ``verify all`` uses it so that fast-growing progressions stay cheap.
    """
    limit = args.order
    n_max = args.n_max
    if name == "all":
        if n_max is None:
            # one table per target covers every family
            _load_series(PED_SPEC, limit, Ring(8), args)
            _load_series(PED2_SPEC, min(limit, 4_000_000), Ring(24), args)
        out = []
        for fam in FAMILIES[:-1]:
            out.extend(run_verify(fam, args, capped=True))
        return out
    if name == "thm1.2-printed":
        primes = (args.p,) if args.p is not None else DEFAULT_PRIMES[name]
        return [audit_printed_mod8_map(p, max(args.alpha_max, 1)) for p in primes]
    if name == "thm1.4":
        bound = min(n_max if n_max is not None else 50_000, limit)
        return [check_parity_theorem_1_4(bound, _load_series(PED2_SPEC, bound, Ring(8), args))]
    if name == "thm1.5":
        bound = min(n_max if n_max is not None else 50_000, limit)
        return [_classifier_sweep(bound, args)]
    reports = []
    for fam in _families_for(name, args):
        need = 0
        for a in range(fam.alpha_min, args.alpha_max + 1):
            for r in fam.rs:
                step, base = fam.progression(r, a)
                top = n_max if n_max is not None else max((limit - base) // step, -1)
                if capped:
                    top = min(top, max((limit - base) // step, -1))
                if top >= 0:
                    need = max(need, base + step * top)
        if n_max is not None and need > MAX_ORDER:
            raise UsageError(f"{fam.id} p={fam.p}: largest argument {need} exceeds {MAX_ORDER}")
        ring = Ring(fam.modulus if fam.modulus in (8, 4, 3, 12, 24) else 24)
        if fam.target == "ped":
            table = _load_series(PED_SPEC, need, Ring(8) if fam.modulus in (4, 8) else ring, args)
        elif need <= 4_000_000:
            table = _load_series(PED2_SPEC, need, Ring(24), args)
        else:
            ped = _load_series(PED_SPEC, need, Ring(24), args)
            table = ProductCoefficients(ped, ped)
        rep = verify_family(fam, args.alpha_max, n_max, table,
                            arg_limit=limit if capped or n_max is None else None)
        _log(f"{fam.id} p={fam.p}: {rep.status} ({rep.checked} checks, {rep.wall_time:.2f}s)")
        reports.append(rep)
    return reports


def cmd_verify(args) -> int:
    if args.alpha_max < 0 or (args.n_max is not None and args.n_max < 0):
        raise UsageError("--alpha-max and --n-max must be non-negative")
    _check_order(args.order)
    reports = run_verify(args.family, args)
    bad = [r for r in reports if r.status == "counterexample"]
    if args.format == "csv":
        print(reports_to_csv(reports, timing=args.timing), end="")
    else:
        print(json.dumps({"reports": [r.to_dict(timing=args.timing) for r in reports],
                          "all_hold": not bad}, sort_keys=True))
    return 1 if bad else 0


def cmd_export(args) -> int:
    _check_order(args.order)
    ring = ring_from_tag(args.ring)
    s = _load_series(TARGETS[args.target], args.order, ring, args)
    rows = []
    for n in range(args.order + 1):
        v = int(s.coeffs[n])
        cls = str(classify(n)) if args.target == "ped2" else ""
        rows.append((n, v, cls))
    out = Path(args.path) if args.path else None
    if args.format == "csv":
        text = "n,value_or_residue,class\n" + "".join(f"{n},{v},{c}\n" for n, v, c in rows)
    else:
        text = json.dumps({"target": args.target, "ring": ring.tag, "order": args.order,
                           "rows": [{"n": n, "value_or_residue": v, "class": c or None}
                                    for n, v, c in rows]}, sort_keys=True) + "\n"
    if out:
        out.write_text(text)
        _log(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pedcong", description=__doc__.splitlines()[0])
    ap.add_argument("--cache-dir", help=f"cache directory (default: ${cachemod.ENV_CACHE_DIR})")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="expand ped or ped2 and write a cache file")
    c.add_argument("--target", choices=sorted(TARGETS), default="ped2")
    c.add_argument("--order", "--n", type=int, required=True)
    c.add_argument("--ring", choices=RINGS, default="exact")
    c.add_argument("--cache")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("classify", help="ped_-2(n) mod 8 class from the factorization of 4n+1")
    c.add_argument("n_pos", nargs="?", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    c.add_argument("--format", choices=("text", "csv", "json"), default="text")
    c.add_argument("--cache")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("verify", help="check congruence families over finite ranges")
    c.add_argument("family", choices=FAMILIES)
    c.add_argument("--p", type=int)
    c.add_argument("--r", type=int, action="append")
    c.add_argument("--alpha-max", type=int, default=1)
    c.add_argument("--n-max", type=int)
    c.add_argument("--order", type=int, default=1_000_000,
                   help="largest argument when --n-max is not given")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--timing", action="store_true", help="include wall times in the report")
    c.add_argument("--cache")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("identities", help="check the two theta identities to order N")
    c.add_argument("order_pos", nargs="?", type=int)
    c.add_argument("--order", "--n", type=int, default=1000)
    c.set_defaults(func=cmd_identities)

    c = sub.add_parser("export", help="write a coefficient table as CSV or JSON")
    c.add_argument("--target", choices=sorted(TARGETS), default="ped2")
    c.add_argument("--order", "--n", type=int, required=True)
    c.add_argument("--ring", choices=RINGS, default="exact")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--path")
    c.add_argument("--cache")
    c.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CacheVersionError as exc:
        _log(f"error: {exc}")
        return 2
    except (UsageError, CacheError, ValueError) as exc:
        _log(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
