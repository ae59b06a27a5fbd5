"""Command-line entry point: ``fixed3torsion <command> ...``.

Every command prints one JSON envelope on stdout when ``--json`` is given, and a
short human summary otherwise. Exact results are never rounded; fractions are
written as ``{"num": "...", "den": "..."}`` in JSON and as ``n/d`` in text.

Exit codes: 0 success, 1 no solution where one was asked for, 2 usage error,
3 matrix cache missing.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import Any, Sequence

from .exact import QQ, qjson, qstr

EXIT_OK, EXIT_NO_SOLUTION, EXIT_USAGE, EXIT_CACHE = 0, 1, 2, 3

log = logging.getLogger("fixed3torsion")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rationals(text: str, count: int | None = None) -> tuple:
    try:
        vals = tuple(QQ(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rationals from {text!r}: {exc}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} comma-separated rationals, got {len(vals)}")
    return vals


def _jsonable(x: Any, approx: bool = False) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v, approx) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, approx) for v in x]
    if isinstance(x, (bool, float, str)) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if type(x).__name__ == "mpq":
        out = qjson(x)
        if approx:
            out["approx"] = float(x)
        return out
    if type(x).__name__ == "mpf":
        return str(x) if approx else None
    return str(x)


def _text(x: Any) -> str:
    if isinstance(x, dict):
        return "\n".join(f"{k}: {_text(v)}" for k, v in x.items())
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_text(v) for v in x) + ")"
    if type(x).__name__ == "mpq":
        return qstr(x)
    return str(x)


# -- commands ------------------------------------------------------------------

def cmd_g1_coeffs(args):
    from .genus1 import CurveG1, new_coeffs_g1, new_coeffs_g1_star
    a, b = _rationals(args.curve, 2)
    CurveG1(a, b)
    s, t = _rationals(args.st, 2)
    fn = new_coeffs_g1_star if args.star else new_coeffs_g1
    A, B = fn(a, b, s, t)
    return {"case": "star" if args.star else "main", "A": A, "B": B}, EXIT_OK


def cmd_g1_find(args):
    from .genus1 import CurveG1, find_st
    X = CurveG1(*_rationals(args.src, 2))
    Y = CurveG1(*_rationals(args.dst, 2))
    sols = find_st(X, Y)
    if args.star:
        sols = {"star": sols["star"]}
    found = any(sols.values())
    return {"solutions": sols}, EXIT_OK if found else EXIT_NO_SOLUTION


def cmd_g2_build(args):
    from .invariants2 import build_all, definitions_hash, verify_cache
    kinds = ("contravariant",) if args.star else ("covariant", "contravariant")
    paths = build_all(kinds, args.cache_dir, progress=lambda m: print(f"building {m}", file=sys.stderr))
    return {"hash": definitions_hash(), "files": [p.name for p in paths],
            "status": verify_cache(args.cache_dir)}, EXIT_OK


def cmd_g2_coeffs(args):
    from .genus2 import CurveG2W, new_coeffs_g2
    X = CurveG2W(*_rationals(args.curve, 4))
    stuv = _rationals(args.stuv, 4)
    kind = "star" if args.star else "main"
    res = new_coeffs_g2(X, stuv, kind, args.cache_dir)
    return {"case": kind, "coeffs": tuple(res), "on_discriminant_locus": res.on_discriminant_locus}, EXIT_OK


def cmd_g2_find(args):
    from .genus2 import CurveG2W, findisos
    X = CurveG2W(*_rationals(args.src, 4))
    Y = CurveG2W(*_rationals(args.dst, 4))
    cases = ("star",) if args.star else ("main", "star")
    sols = findisos(X, Y, args.precision, cases, directory=args.cache_dir)
    out = [{"case": s.case, "stuv": s.stuv, "verified": s.verified, "target": s.target} for s in sols]
    return {"solutions": out}, EXIT_OK if out else EXIT_NO_SOLUTION


def cmd_g2_check_identity(args):
    import random
    from .genus2 import CurveG2W, new_coeffs_g2
    rng = random.Random(args.seed)
    results = []
    for _ in range(args.count):
        X = CurveG2W(*(QQ(rng.randint(-9, 9)) / rng.randint(1, 5) for _ in range(4)))
        got = tuple(new_coeffs_g2(X, (1, 0, 0, 0), "main", args.cache_dir))
        results.append({"curve": X.coeffs, "ok": got == X.coeffs})
    ok = all(r["ok"] for r in results)
    return {"ok": ok, "curves": results}, EXIT_OK if ok else EXIT_NO_SOLUTION


def cmd_g2_check_deg240(args):
    import random
    from .genus2 import CurveG2W, check_deg240
    rng = random.Random(args.seed)
    X = CurveG2W(*(QQ(rng.randint(-9, 9)) / rng.randint(1, 5) for _ in range(4)))
    ok = check_deg240(X, args.cache_dir)
    return {"curve": X.coeffs, "ok": ok}, EXIT_OK if ok else EXIT_NO_SOLUTION


def cmd_richelot(args):
    from .exact import cube_class
    from .genus2 import RichelotParams, findisos, new_coeffs_g2, richelot_family
    e, f, g = _rationals(args.efg, 3)
    X, Y, candidate = richelot_family(RichelotParams(e, f, g))
    out = {"X": X.coeffs, "Y": Y.coeffs, "disc_product_is_cube": cube_class(X.disc * Y.disc)[0],
           "candidate_stuv": candidate.stuv}
    try:
        out["candidate_stuv_verified"] = tuple(new_coeffs_g2(X, candidate.stuv, "star", args.cache_dir)) == Y.coeffs
    except ArithmeticError:
        out["candidate_stuv_verified"] = False
    code = EXIT_OK
    if args.find:
        sols = findisos(X, Y, args.precision, ("star",), directory=args.cache_dir)
        out["solutions"] = [{"case": s.case, "stuv": s.stuv, "target": s.target} for s in sols]
        code = EXIT_OK if sols else EXIT_NO_SOLUTION
    return out, code


def cmd_p2_coeffs(args):
    from .analogs import p2_new_coeffs
    coeffs = _rationals(args.curve)
    params = _rationals(args.stuv)
    try:
        return {"coeffs": p2_new_coeffs(coeffs, params)}, EXIT_OK
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_count_terms(args):
    from .analogs import count_spec, term_count
    return {"spec": args.spec, "index": args.index, "count": term_count(count_spec(args.spec, args.index))}, EXIT_OK


def cmd_cache(args):
    from .invariants2 import cache_dir, definitions_hash, purge_cache, verify_cache
    if args.action == "verify":
        status = verify_cache(args.cache_dir)
        ok = all(v == "ok" for v in status.values())
        code = EXIT_OK if ok else (EXIT_CACHE if all(v in ("ok", "missing") for v in status.values())
                                   else EXIT_NO_SOLUTION)
        return {"dir": str(cache_dir(args.cache_dir)), "hash": definitions_hash(), "status": status}, code
    removed = purge_cache(args.cache_dir, stale_only=args.stale)
    return {"removed": [p.name for p in removed]}, EXIT_OK


def cmd_selftest(args):
    from .analogs import count_spec, p2_new_coeffs, term_count
    from .genus1 import CurveG1, find_st, symbolic_new_coeffs_g1
    checks = {}
    checks["g1_closed_forms"] = tuple(len(f) for f in symbolic_new_coeffs_g1()) == (6, 9)
    sols = find_st(CurveG1(-1, 0), CurveG1(-27, -162))
    checks["g1_find"] = (QQ(-1) / 2, QQ(3) / 2) in sols["star"] and not sols["main"]
    checks["count_terms"] = term_count(count_spec("e7", 18)) == 11617543745
    checks["p2_identity"] = p2_new_coeffs((1, 2, 3, 4), (1, 0, 0, 0)) == tuple(QQ(x) for x in (1, 2, 3, 4))
    if args.full:
        from .genus2 import new_coeffs_g2
        X = (QQ(12) / 5, QQ(12) / 25, QQ(292) / 125, QQ(-3672) / 3125)
        checks["g2_identity"] = tuple(new_coeffs_g2(X, (1, 0, 0, 0), "main", args.cache_dir)) == X
        want = (QQ(2 ** 7) / 5, QQ(2 ** 11 * 57) / 25, QQ(-2 ** 12 * 503) / 125, QQ(2 ** 17 * 17943) / 5 ** 5)
        got = new_coeffs_g2(X, (QQ(129) / 125, QQ(11) / 25, QQ(3) / 100, QQ(1) / 20), "main", args.cache_dir)
        checks["g2_modular_example"] = tuple(got) == want
    ok = all(checks.values())
    return {"checks": checks, "ok": ok}, EXIT_OK if ok else EXIT_NO_SOLUTION


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON envelope")
    common.add_argument("--approx", action="store_true", help="also print float approximations")
    common.add_argument("--timing", action="store_true", help="include wall time in the envelope")
    common.add_argument("--precision", type=int, default=250, help="working digits (>= 50)")
    common.add_argument("--threads", type=int, default=1, help="BLAS threads (>= 1)")
    common.add_argument("--cache-dir", default=None,
                        help="matrix cache directory (default: $FIXED3TORSION_CACHE or ~/.cache/fixed3torsion)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--star", action="store_true", help="use the starred (antisymplectic) case")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="fixed3torsion", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g1 = sub.add_parser("g1", help="elliptic curves y^2 = x^3 + a x + b").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    c = g1.add_parser("coeffs", parents=[common])
    c.add_argument("--curve", required=True, help="a,b")
    c.add_argument("--st", required=True, help="s,t")
    c.set_defaults(func=cmd_g1_coeffs)
    c = g1.add_parser("find", parents=[common])
    c.add_argument("--from", dest="src", required=True, help="a,b")
    c.add_argument("--to", dest="dst", required=True, help="A,B")
    c.set_defaults(func=cmd_g1_find)

    g2 = sub.add_parser("g2", help="genus-2 curves y^2 = x^5 + a x^3 + b x^2 + c x + d").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    c = g2.add_parser("build-matrices", parents=[common])
    c.set_defaults(func=cmd_g2_build)
    c = g2.add_parser("coeffs", parents=[common])
    c.add_argument("--curve", required=True, help="a,b,c,d")
    c.add_argument("--stuv", required=True, help="s,t,u,v")
    c.set_defaults(func=cmd_g2_coeffs)
    c = g2.add_parser("find", parents=[common])
    c.add_argument("--from", dest="src", required=True, help="a,b,c,d")
    c.add_argument("--to", dest="dst", required=True, help="A,B,C,D")
    c.set_defaults(func=cmd_g2_find)
    c = g2.add_parser("check-identity", parents=[common])
    c.add_argument("--count", type=int, default=1)
    c.set_defaults(func=cmd_g2_check_identity)
    c = g2.add_parser("check-deg240", parents=[common])
    c.set_defaults(func=cmd_g2_check_deg240)

    c = sub.add_parser("richelot", parents=[common], help="the Richelot family X_{e,f,g}")
    c.add_argument("--efg", required=True, help="e,f,g")
    c.add_argument("--find", action="store_true", help="also search for starred tuples")
    c.set_defaults(func=cmd_richelot)

    p2 = sub.add_parser("p2", help="p = 2 analog").add_subparsers(dest="action", required=True,
                                                                 parser_class=_Parser)
    c = p2.add_parser("coeffs", parents=[common])
    c.add_argument("--curve", required=True, help="a,b,c,d (x^5 + a x^3 + b x^2 + c x + d)")
    c.add_argument("--stuv", required=True, help="s,t,u,v")
    c.set_defaults(func=cmd_p2_coeffs)

    c = sub.add_parser("count-terms", parents=[common], help="allowed monomials by bigrading")
    c.add_argument("--spec", required=True, choices=("e7", "e8", "g2-bigraded"))
    c.add_argument("--index", type=int, required=True)
    c.set_defaults(func=cmd_count_terms)

    cache = sub.add_parser("cache", help="matrix cache").add_subparsers(dest="action", required=True,
                                                                      parser_class=_Parser)
    c = cache.add_parser("verify", parents=[common])
    c.set_defaults(func=cmd_cache, action="verify")
    c = cache.add_parser("purge", parents=[common])
    c.add_argument("--stale", action="store_true", help="keep files of the current definitions")
    c.set_defaults(func=cmd_cache, action="purge")

    c = sub.add_parser("selftest", parents=[common])
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", default=True)
    mode.add_argument("--full", action="store_true")
    c.set_defaults(func=cmd_selftest)
    return p


_VALUE_FLAGS = ("--from", "--to", "--curve", "--stuv", "--st", "--efg")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--from -1,0`` into ``--from=-1,0`` so argparse does not read an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    envelope: dict[str, Any] = {"command": argv}
    json_mode = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.precision < 50:
            raise UsageError("--precision must be at least 50")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(args.threads))
        from .invariants2 import CacheMissingError
        start = time.perf_counter()
        try:
            result, code = args.func(args)
        except CacheMissingError as exc:
            result, code = None, EXIT_CACHE
            envelope["error"] = str(exc)
        except (ValueError, ArithmeticError) as exc:
            result, code = None, EXIT_USAGE if isinstance(exc, ValueError) else EXIT_NO_SOLUTION
            envelope["error"] = str(exc)
        if args.timing:
            envelope["seconds"] = round(time.perf_counter() - start, 3)
        if args.command == "g2" or args.command in ("richelot", "cache", "selftest"):
            from .invariants2 import definitions_hash
            envelope["definitions_hash"] = definitions_hash()
        envelope["result"] = result
        approx = args.approx
    except UsageError as exc:
        code, approx = EXIT_USAGE, False
        envelope["error"] = str(exc)
    if json_mode:
        doc = _jsonable(envelope, approx)
        doc["exit_code"] = code
        print(json.dumps(doc, sort_keys=True), file=stdout)
    elif envelope.get("result") is not None:
        print(_text(envelope["result"]), file=stdout)
    if "error" in envelope:
        print(f"error: {envelope['error']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
