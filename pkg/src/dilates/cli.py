"""Command-line front end.

Every subcommand produces one record ``{"command", "inputs", "results",
"checks"}``.  Exit status: 0 when every check passes, 1 when a check
fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from . import bounds, freewords, ordgroup, sumsets
from .alphafield import AlphaContext
from .exactnum import RatInterval

FORMAT_ENV = "DILATES_FORMAT"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

def parse_zset(text: str) -> tuple[int, ...]:
    try:
        xs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer set {text!r}") from exc
    if not xs:
        raise UsageError("empty set")
    return sumsets.zset(xs)


def parse_znset(text: str) -> tuple[tuple[int, ...], ...]:
    vs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if not (part.startswith("(") and part.endswith(")")):
            raise UsageError(f"bad vector {part!r}")
        try:
            vs.append(tuple(int(c) for c in part[1:-1].split(",")))
        except ValueError as exc:
            raise UsageError(f"bad vector {part!r}") from exc
    if not vs:
        raise UsageError("empty set")
    try:
        return sumsets.znset(vs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def render_zset(X) -> str:
    return ",".join(str(x) for x in X)


def render_znset(X) -> str:
    return ";".join("(" + ",".join(str(c) for c in v) + ")" for v in X)


def _dec(x: Fraction, digits: int = 15) -> str:
    with localcontext() as c:
        c.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _interval(iv: RatInterval, digits: int = 15) -> dict:
    return {"lo": str(iv.lo), "hi": str(iv.hi), "lo_decimal": _dec(iv.lo, digits),
            "hi_decimal": _dec(iv.hi, digits), "width": str(iv.width)}


def _check(name: str, ok: bool, lhs, rhs) -> dict:
    return {"name": name, "pass": bool(ok), "lhs": lhs, "rhs": rhs}


def _record(command: str, inputs: dict, results: dict, checks: list[dict]) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "checks": checks}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_beta(args) -> dict:
    ctx = AlphaContext(args.k, args.l)
    width = Fraction(args.width)
    iv = ctx.rho(width)
    beta = RatInterval(iv.lo ** ctx.k, iv.hi ** ctx.k)
    digits = max(15, len(str(width.denominator)) + 3)
    lv = ctx.level(1)
    exact = iv.lo == iv.hi
    checks = [_check("enclosure width <= requested", iv.width <= width, str(iv.width), str(width))]
    if exact:
        checks.append(_check("rho is an exact root", lv.poly(iv.lo) == 0, str(lv.poly(iv.lo)), "0"))
    else:
        checks.append(_check("sign change across enclosure",
                             lv.poly.sign_at(iv.lo) * lv.poly.sign_at(iv.hi) < 0,
                             lv.poly.sign_at(iv.lo), lv.poly.sign_at(iv.hi)))
    return _record("beta", {"k": args.k, "l": args.l, "width": args.width}, {
        "P": str(ctx.P), "swapped": ctx.swapped, "rho": _interval(iv, digits),
        "rho_exact": str(iv.lo) if exact else None, "beta": _interval(beta, digits),
    }, checks)


def cmd_verify_pair(args) -> dict:
    ctx = AlphaContext(args.k, args.l)
    rep = ordgroup.verify_pair_identity(ctx)
    X = sumsets.construction_set(args.k, args.l, 2, copies=1)
    prod = sumsets.productset_g(X, args.k, args.l)
    checks = rep["checks"] + [_check("|X^k X^l| = 3 = 3|X| - 3", len(prod) == 3, len(prod), 3)]
    return _record("verify-pair", {"k": args.k, "l": args.l}, {
        "group_k": ctx.k, "group_l": ctx.l, "X": [str(x) for x in X],
        "product_set": [str(x) for x in prod], "size": len(prod),
    }, checks)


def cmd_verify_grid(args) -> dict:
    if args.r < 1:
        raise UsageError("r must be positive")
    ctx = AlphaContext(args.k, args.l)
    rep = ordgroup.verify_grid_identities(ctx, args.r)
    X = sumsets.construction_set(args.k, args.l, args.r)
    prod = sumsets.productset_g(X, args.k, args.l)
    want = comb(args.r + 1, 2)
    checks = rep["checks"] + [_check("|X^k X^l| = r(r+1)/2", len(prod) == want, len(prod), want)]
    return _record("verify-grid", {"k": args.k, "l": args.l, "r": args.r}, {
        "group_k": ctx.k, "group_l": ctx.l, "X": [str(x) for x in X],
        "product_set": [str(x) for x in prod], "size": len(prod),
    }, checks)


def cmd_sumset(args) -> dict:
    k, l = args.k, args.l
    if k == 0 or l == 0:
        raise UsageError("k and l must be non-zero")
    domain = args.domain or ("zn" if "(" in args.set else "z")
    inputs = {"k": k, "l": l, "set": args.set, "domain": domain}
    if domain == "z":
        X = parse_zset(args.set)
        S = sumsets.sumset_z(k, X, l)
        lbs, notes = bounds.lower_bounds(k, l, len(X))
        checks = [_check(f"{b.name}: |k.X + l.X| >= {b.value}", len(S) >= b.value, len(S), b.value)
                  for b in lbs]
        results = {"X": render_zset(X), "sumset": render_zset(S), "size": len(S), "notes": notes}
        return _record("sumset", inputs, results, checks)
    X = parse_znset(args.set)
    S = sumsets.dilate_sumset_zn(k, X, l)
    r = len(X)
    checks = [_check("kemperman: |k.X + l.X| >= 2|X| - 1", len(S) >= 2 * r - 1, len(S), 2 * r - 1)]
    results = {"X": render_znset(X), "sumset": render_znset(S), "size": len(S)}
    if abs(k) != abs(l):
        rep = sumsets.verify_coset_bound(X, k, l)
        checks += rep.checks
        dec = rep.decomposition
        results["normalized"] = {"X": render_znset(rep.normalized_X), "k": rep.normalized_k,
                                 "l": rep.normalized_l, "size": rep.normalized_size}
        if dec is not None:
            results["cosets"] = {
                "q": dec.q, "hnf": [list(b) for b in dec.hnf], "bound": dec.bound,
                "parts": [{"label": list(lab), "K": render_znset(K), "size_with_lX": n}
                          for (lab, K), n in zip(dec.parts, dec.part_sizes)],
            }
    return _record("sumset", inputs, results, checks)


def cmd_chi(args) -> dict:
    if args.r < 1 or args.max_diameter < args.r - 1:
        raise UsageError("need r >= 1 and max-diameter >= r - 1")
    res = bounds.chi_search_z(args.k, args.l, args.r, args.max_diameter, workers=args.workers)
    checks = [_check("minimum >= best lower bound", res.minimum >= res.lower_bound,
                     res.minimum, res.lower_bound)]
    for W in res.witnesses:
        size = sumsets.sumset_size_z(args.k, W, args.l)
        checks.append(_check(f"witness {render_zset(W)}", size == res.minimum, size, res.minimum))
    results = res.as_dict()
    results["witnesses"] = [render_zset(W) for W in res.witnesses]
    return _record("chi", {"k": args.k, "l": args.l, "r": args.r,
                           "max_diameter": args.max_diameter}, results, checks)


def cmd_bounds(args) -> dict:
    if args.k < 1 or args.l < 1 or args.r < 1:
        raise UsageError("k, l, r must be positive")
    rep = bounds.chi_table(args.k, args.l, args.r)
    checks = [_check(f"{q}: lower <= upper", rep.best_lower[q] <= up, rep.best_lower[q], up)
              for q, up in rep.best_upper.items()]
    return _record("bounds", {"k": args.k, "l": args.l, "r": args.r}, rep.as_dict(), checks)


def cmd_word(args) -> dict:
    if args.relator:
        if args.k is None or args.l is None:
            raise UsageError("--relator needs --k and --l")
        w = freewords.relator(args.k, args.l, 1, 2)
    elif args.word is not None:
        w = freewords.parse_word(args.word)
    else:
        raise UsageError("give a word or --relator")
    c, core = freewords.cyclic_reduce(w)
    pp = freewords.is_proper_power(w)
    results = {
        "word": str(w), "syllables": [list(s) for s in w.syllables],
        "conjugator": str(c), "core": str(core),
        "proper_power": None if pp is None else {"root": str(pp[0]), "exponent": pp[1]},
    }
    checks = [_check("w = c core c^-1", freewords.word_mul(freewords.word_mul(c, core),
                                                            freewords.word_inv(c)) == w,
                     str(w), f"{c} . {core} . ({c})^-1")]
    if pp is not None:
        checks.append(_check("root^t = w", freewords.word_pow(pp[0], pp[1]) == w,
                             str(freewords.word_pow(pp[0], pp[1])), str(w)))
    return _record("word", {"word": args.word, "relator": args.relator, "k": args.k,
                            "l": args.l}, results, checks)


def cmd_presentation(args) -> dict:
    if args.assignment == "theta":
        if args.r != 2:
            raise UsageError("the theta assignment is defined for r = 2")
        assignment = freewords.theta_assignment(args.k, args.l)
    else:
        assignment = freewords.e_assignment(args.k, args.l, args.r)
    p = freewords.full_grid(args.r)
    rep = freewords.check_presentation_homomorphism(p, assignment, args.k, args.l)
    return _record("presentation", {"k": args.k, "l": args.l, "r": args.r,
                                    "assignment": args.assignment}, {
        "images": {f"x{i}": str(g) for i, g in assignment.items()},
        "relations": [list(rel) for rel in p.relations],
    }, rep["checks"])


def cmd_cone_check(args) -> dict:
    if args.samples < 1:
        raise UsageError("need at least one sample")
    ctx = AlphaContext(args.k, args.l)
    rng = random.Random(args.seed)
    samples = [ordgroup.random_element(rng, ctx, args.r) for _ in range(args.samples)]
    viol = ordgroup.cone_property_check(samples, args.seed)
    checks = []
    for cond in ("i", "ii", "iii", "iv"):
        bad = [v for v in viol if v["condition"] == cond]
        checks.append(_check(f"cone condition ({cond})", not bad, len(bad), 0))
    return _record("cone-check", {"k": args.k, "l": args.l, "r": args.r,
                                  "samples": args.samples, "seed": args.seed},
                   {"violations": viol}, checks)


def cmd_chi5(args) -> dict:
    ctx = AlphaContext(args.k, args.l)
    if args.element:
        if len(args.element) != 3:
            raise UsageError("give exactly three --element values")
        els = [ordgroup.parse_element(e, ctx) for e in args.element]
        if len({e.r for e in els}) != 1:
            raise UsageError("elements have different numbers of coordinates")
    else:
        els = [ordgroup.generator_e(i, args.r, ctx) for i in range(3)]
    rep = bounds.chi5_witness_check(*els, args.k, args.l)
    prod = sumsets.productset_g(els, args.k, args.l)
    return _record("chi5", {"k": args.k, "l": args.l, "elements": [str(e) for e in els]},
                   {"product_set_size": len(prod)}, rep["checks"])


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _jsonable(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def render_json(rec: dict) -> str:
    return json.dumps(rec, indent=2, default=_jsonable) + "\n"


def render_csv(rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rec["command"] == "bounds":
        w.writerow(["name", "side", "quantity", "value", "conditions", "source"])
        for b in rec["results"]["bounds"]:
            w.writerow([b["name"], b["side"], b["quantity"], b["value"], b["conditions"], b["source"]])
    elif rec["command"] == "chi":
        res = rec["results"]
        w.writerow(["k", "l", "r", "max_diameter", "minimum", "lower_bound", "certified", "witness"])
        for W in res["witnesses"]:
            w.writerow([res["k"], res["l"], res["r"], res["max_diameter"], res["minimum"],
                        res["lower_bound"], res["certified"], W])
    else:
        raise UsageError(f"csv output is only available for bounds and chi")
    return buf.getvalue()


def render_text(rec: dict) -> str:
    out = [f"# {rec['command']} " + " ".join(f"{k}={v}" for k, v in rec["inputs"].items()
                                              if v is not None)]

    def walk(prefix, v):
        if isinstance(v, dict):
            for k2, v2 in v.items():
                walk(f"{prefix}{k2}.", v2)
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            for i, v2 in enumerate(v):
                walk(f"{prefix}{i}.", v2)
        else:
            out.append(f"{prefix[:-1]}: {v}")

    walk("", rec["results"])
    for c in rec["checks"]:
        out.append(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['name']}: {c['lhs']} vs {c['rhs']}")
    return "\n".join(out) + "\n"


COMMANDS = {
    "beta": cmd_beta, "verify-pair": cmd_verify_pair, "verify-grid": cmd_verify_grid,
    "sumset": cmd_sumset, "chi": cmd_chi, "bounds": cmd_bounds, "word": cmd_word,
    "presentation": cmd_presentation, "cone-check": cmd_cone_check, "chi5": cmd_chi5,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"],
                        default=os.environ.get(FORMAT_ENV, "text"))
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="dilates", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *, k=True, l=True, r=False, k_required=True):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if k:
            sp.add_argument("--k", type=int, required=k_required)
        if l:
            sp.add_argument("--l", type=int, required=k_required)
        if r:
            sp.add_argument("--r", type=int, required=True)
        return sp

    sp = add("beta", "enclose rho and beta_{k,l} = rho^k")
    sp.add_argument("--width", default="1e-9", help="target enclosure width")
    add("verify-pair", "check e0^k e1^l = e1^k e0^l and |X^k X^l| = 3")
    add("verify-grid", "check the r-copy identities and |X^k X^l| = r(r+1)/2", r=True)
    sp = add("sumset", "size of k.X + l.X over Z or Z^n")
    sp.add_argument("--set", required=True, help='"0,1,3,4" or "(0,0);(1,0);(0,1)"')
    sp.add_argument("--domain", choices=["z", "zn"])
    sp = add("chi", "exhaustive search for chi over Z", r=True)
    sp.add_argument("--max-diameter", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    add("bounds", "bound table for chi_TF, chi_LO, chi_Z", r=True)
    sp = add("word", "free-group word utilities", k_required=False)
    sp.add_argument("word", nargs="?", help='e.g. "a^2 b^-3 a"')
    sp.add_argument("--proper-power", dest="pp_word", metavar="WORD",
                    help="word to test for being a proper power")
    sp.add_argument("--relator", action="store_true", help="use a^k b^l a^-l b^-k")
    sp = add("presentation", "von Dyck check of the full relation grid", r=True)
    sp.add_argument("--assignment", choices=["e", "theta"], default="e")
    sp = add("cone-check", "sample the positive-cone conditions", r=True)
    sp.add_argument("--samples", type=int, default=100)
    sp = add("chi5", "check a candidate 5-element configuration")
    sp.add_argument("--r", type=int, default=2, help="copies for the default e_0, e_1, e_2")
    sp.add_argument("--element", action="append", help='e.g. "(a^(1/2), 0; 1/2)"')
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "word" and args.pp_word is not None:
        args.word = args.pp_word
    try:
        if args.command in ("beta", "verify-pair", "verify-grid", "presentation",
                            "cone-check", "chi5") and (args.k < 1 or args.l < 1):
            raise UsageError("k and l must be positive")
        rec = COMMANDS[args.command](args)
        text = {"json": render_json, "csv": render_csv, "text": render_text}[args.format](rec)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"dilates: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c["pass"] for c in rec["checks"]) else 1


if __name__ == "__main__":
    sys.exit(main())
