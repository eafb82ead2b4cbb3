"""Command-line front end: ``moyalbkp <command> [flags]``.

A failed check exits with status 1.  Rejected input exits with status 2.
"""

import argparse
import json
import os
import sys

from . import corpus
from .diffpoly import render
from .dressing import DressingOperator, dressing_consistency
from .errors import InconsistentReduction, MoyalError, ParseError
from .hierarchy import (conservation_check, flow_equations, impose_bkp, lax_operator,
                        scalar_pipeline)
from .parser import parse_symbol
from .psymbol import render_symbol, star_mul, star_pow
from .serialize import (flow_equation_to_json, flow_result_to_json, poly_to_json,
                        symbol_to_json)

PIPELINES = {"35": (3, 5, 0), "25": (2, 5, 0), "35mod": (3, 5, 1)}


class UsageError(Exception):
    pass


def depth_limit():
    raw = os.environ.get("MOYAL_DEPTH_LIMIT", "12")
    try:
        limit = int(raw)
    except ValueError:
        raise UsageError(f"MOYAL_DEPTH_LIMIT must be an integer, got {raw!r}") from None
    if limit < 1:
        raise UsageError("MOYAL_DEPTH_LIMIT must be positive")
    return limit


def _cap(what, value):
    limit = depth_limit()
    if value > limit:
        raise UsageError(f"{what} {value} exceeds MOYAL_DEPTH_LIMIT={limit}")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="moyalbkp",
                                 description="Moyal-deformed Lax symbols and BKP-type flows.")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = cmd("star", "star product of two symbols")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--floor", type=int, help="lowest p-exponent to compute")

    p = cmd("power", "star power of the generic Lax symbol")
    p.add_argument("--exp", type=_positive, required=True)
    p.add_argument("--depth", type=_positive, required=True, help="number of a_m in L")
    p.add_argument("--floor", type=int, required=True)

    p = cmd("flow", "evolution equations of a_1..a_depth")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--threshold", type=int, choices=(0, 1), default=0)
    p.add_argument("--depth", type=_positive, default=1)
    p.add_argument("--time", default="y")
    p.add_argument("--bkp", action="store_true", help="set even a_m to zero")

    p = cmd("bkp", "eliminate to a scalar equation for a1")
    p.add_argument("--pipeline", choices=sorted(PIPELINES), required=True)
    p.add_argument("--show-eliminations", action="store_true")

    p = cmd("dress", "compare s*p^k*s^-1 with L^k")
    p.add_argument("--k", type=int, choices=(3, 5), required=True)
    p.add_argument("--depth", type=_positive, required=True)

    p = cmd("conserve", "Euler test on Res L^n along the m-flow")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--threshold", type=int, choices=(0, 1), default=0)

    p = cmd("verify", "run the regression corpus")
    p.add_argument("--ledger", action="store_true", help="print every ledger entry")
    return ap


def _star(args):
    lhs, rhs = parse_symbol(args.lhs), parse_symbol(args.rhs)
    if args.floor is not None:
        top = (lhs.degree or 0) + (rhs.degree or 0)
        _cap("expansion depth", top - args.floor)
    out = star_mul(lhs, rhs, args.floor)
    return 0, render_symbol(out), symbol_to_json(out)


def _power(args):
    _cap("depth", args.depth)
    _cap("expansion depth", args.exp - args.floor)
    out = star_pow(lax_operator(args.depth), args.exp, args.floor)
    return 0, render_symbol(out), symbol_to_json(out)


def _flow(args):
    _cap("depth", args.m + args.depth - 1)
    res = flow_equations(None, args.m, args.threshold, args.depth, args.time)
    if args.bkp:
        res = impose_bkp(res)
    return 0, str(res), flow_result_to_json(res)


def _bkp(args):
    m_y, m_t, threshold = PIPELINES[args.pipeline]
    res = scalar_pipeline(m_y, m_t, threshold)
    lines = []
    if args.show_eliminations:
        lines += [f"{name} = {render(v)}" for name, v in res.solutions]
    lines.append(str(res.equation))
    if not res.consistent:
        lines.append("back-substitution left nonzero residuals")
    data = {"equation": flow_equation_to_json(res.equation),
            "solutions": [{"gen": n, "value": poly_to_json(v)} for n, v in res.solutions],
            "consistent": res.consistent}
    return (0 if res.consistent else 1), "\n".join(lines), data


def _dress(args):
    _cap("depth", args.depth)
    rep = dressing_consistency(DressingOperator(args.depth), args.k)
    lines = [f"(s*p^{args.k}*s^-1)_+ vs (L^{args.k})_+ at depth {args.depth}"]
    for r in rep.rows:
        if r.residual:
            lines.append(f"p^{r.exponent}: MISMATCH {render(r.lhs)} != {render(r.rhs)}")
        else:
            lines.append(f"p^{r.exponent}: {render(r.lhs)}")
    lines.append(f"p^0 of s*p*s^-1: {render(rep.p0_coefficient)}")
    lines.append("consistent" if rep.ok else "INCONSISTENT")
    data = {"k": rep.k, "depth": rep.depth, "ok": rep.ok,
            "p0": poly_to_json(rep.p0_coefficient),
            "rows": [{"p": r.exponent, "lhs": poly_to_json(r.lhs), "rhs": poly_to_json(r.rhs)}
                     for r in rep.rows]}
    return (0 if rep.ok else 1), "\n".join(lines), data


def _conserve(args):
    _cap("depth", args.n + args.m - 1)
    rep = conservation_check(None, args.n, args.m, args.threshold)
    lines = [f"density Res L^{args.n} = {render(rep.density)}"]
    for name, img in rep.euler.items():
        lines.append(f"E_{name}(rate) = {render(img)}")
    lines.append("conserved" if rep.conserved else "NOT CONSERVED")
    data = {"n": rep.n, "m": rep.m, "threshold": rep.threshold,
            "density": poly_to_json(rep.density), "rate": poly_to_json(rep.rate),
            "euler": {k: poly_to_json(v) for k, v in rep.euler.items()},
            "conserved": rep.conserved}
    return (0 if rep.conserved else 1), "\n".join(lines), data


def _verify(args):
    outcomes = corpus.run_all()
    entries = corpus.ledger(outcomes)
    lines = []
    for o in outcomes:
        lines.append(f"{'PASS' if o.ok else 'FAIL'} {o.case.label}")
        if not o.pinned_ok:
            lines.append(f"  pinned:  {o.case.pinned}")
            lines.append(f"  derived: {o.derived}")
    counts = {s: sum(e.status == s for e in entries)
              for s in (corpus.MATCH, corpus.TYPO, corpus.UNRESOLVED)}
    if args.ledger:
        for e in entries:
            lines.append(f"[{e.status}] {e.location}")
            lines.append(f"  printed: {e.printed}")
            lines.append(f"  derived: {e.derived}")
            if e.note:
                lines.append(f"  note:    {e.note}")
    passed = sum(o.ok for o in outcomes)
    lines.append(f"{passed}/{len(outcomes)} cases passed; ledger: "
                 + ", ".join(f"{n} {s}" for s, n in counts.items()))
    ok = passed == len(outcomes)
    data = {"cases": [{"label": o.case.label, "pass": o.ok, "derived": o.derived}
                      for o in outcomes],
            "ledger": [e.__dict__ for e in entries], "summary": counts, "ok": ok}
    return (0 if ok else 1), "\n".join(lines), data


HANDLERS = {"star": _star, "power": _power, "flow": _flow, "bkp": _bkp, "dress": _dress,
            "conserve": _conserve, "verify": _verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        status, text, data = HANDLERS[args.command](args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentReduction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MoyalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
