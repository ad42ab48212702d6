"""Command line interface: ``surreal <command> ...``.

Exit status is 0 on success, 1 for a mathematical error (for example asking
for the value of an infinite expansion) and 2 for usage or syntax errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import limits
from .notation import NotationError, parse_ordinal, parse_surreal, surreal_to_json
from .surreal import (
    add,
    compare,
    from_rational,
    left_options,
    rational_prefix,
    right_options,
    simplest_between,
    rational_dom,
    to_rational,
)

_OPTION = re.compile(r"^--?[A-Za-z]")


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return str(x)


def _sign_string(x) -> str:
    return "".join("+" if s > 0 else "-" for s in x.signs())


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip().replace(" ", ""))
    except (ValueError, ZeroDivisionError) as exc:
        raise NotationError("not a rational literal", text, 0) from exc


def _family(name: str) -> limits.Sequence:
    try:
        return limits.get_family(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


# -- commands ---------------------------------------------------------------


def cmd_eval(args):
    x = parse_surreal(args.expr)
    _emit(args, f"{x}    dom = {x.dom}", surreal_to_json(x))


def cmd_cmp(args):
    a, b = parse_surreal(args.a), parse_surreal(args.b)
    word = {-1: "less", 0: "equal", 1: "greater"}[compare(a, b)]
    _emit(args, word, {"kind": "comparison", "result": word,
                       "a": surreal_to_json(a), "b": surreal_to_json(b)})


def cmd_add(args):
    x = add(parse_surreal(args.a), parse_surreal(args.b))
    _emit(args, _fmt(x), surreal_to_json(x))


def cmd_value(args):
    x = parse_surreal(args.expr)
    v = to_rational(x)
    _emit(args, str(v), {"kind": "value", "value": str(v), "surreal": surreal_to_json(x)})


def cmd_rat(args):
    q = _parse_rational(args.q)
    x = from_rational(q)
    payload = surreal_to_json(x)
    payload["value"] = str(q)
    lines = [f"{x}    dom = {x.dom}"]
    if args.prefix is not None:
        p = rational_prefix(q, args.prefix)
        payload["prefix"] = _sign_string(p)
        lines.append(f"first {args.prefix} signs: {payload['prefix']}")
    _emit(args, "\n".join(lines), payload)


def cmd_options(args):
    x = parse_surreal(args.expr)
    lo, hi = left_options(x), right_options(x)
    text = "L = {%s}\nR = {%s}" % (", ".join(map(str, lo)), ", ".join(map(str, hi)))
    _emit(args, text, {"kind": "options", "left": [surreal_to_json(v) for v in lo],
                       "right": [surreal_to_json(v) for v in hi]})


def cmd_simplest(args):
    lows = [parse_surreal(t) for t in args.lo]
    highs = [parse_surreal(t) for t in args.hi]
    x = simplest_between(lows, highs)
    _emit(args, _fmt(x), surreal_to_json(x))


def _verdict_text(v) -> str:
    if isinstance(v, limits.Converged):
        tag = "certified" if v.certified else "uncertified"
        lines = [f"Converged {v.limit}    ({v.policy}, {tag}, b = {v.birthday}, horizon {v.horizon})"]
        for r in v.n0_table:
            cert = "" if r.certified_n0 is None else f"  certified n0 = {r.certified_n0}"
            seen = "beyond horizon" if r.n0 is None else str(r.n0)
            lines.append(f"  depth {r.depth}: n0 = {seen}{cert}")
    elif isinstance(v, limits.NoLimit):
        lines = [f"NoLimit at position {v.position}    witnesses n = {list(v.witnesses)}: {v.reason}"]
    elif isinstance(v, limits.NotUnique):
        lines = [f"NotUnique ({len(v.candidates)} candidates, {v.policy})"]
        lines += [f"  {c}" for c in v.candidates]
    else:
        lines = [f"Inconclusive: {v.reason}"]
    for note in v.notes:
        lines.append(f"note [{note['kind']}]: {note['subject']}: "
                     f"{note.get('published_claim') or note.get('published_value')} vs "
                     f"{note.get('computed_verdict') or note.get('computed_value')}")
    return "\n".join(lines)


def cmd_limit(args):
    seq = _family(args.family)
    depths = None
    if args.depth_samples:
        depths = tuple(parse_ordinal(t) for t in args.depth_samples.split(",") if t.strip())
    cands = tuple(parse_surreal(c) for c in args.candidate) if args.candidate else None
    cfg = limits.LimitConfig(policy=args.policy, horizon=args.horizon,
                             depth_samples=depths, candidates=cands)
    v = limits.check_limit(seq, cfg)
    _emit(args, _verdict_text(v), v.to_json())


def cmd_series(args):
    seq = _family({"ones": "ones_series", "harmonic": "harmonic_series"}[args.which])
    rows, lines = [], []
    for n in range(1, args.n + 1):
        q = seq.value(n)
        x = from_rational(q) if q.denominator < 4096 else None
        d = rational_dom(q)
        shown = str(x) if x is not None else _sign_string(rational_prefix(q, 24)) + " ..."
        rows.append({"n": n, "value": str(q), "expansion": shown, "dom": str(d)})
        lines.append(f"{n:>4}  {str(q):>14}  dom = {str(d):<3}  {shown}")
    _emit(args, "\n".join(lines), {"kind": "series", "name": seq.name, "terms": rows,
                                   "notes": list(seq.notes)})


def cmd_birthday(args):
    seq = _family(args.family)
    doms = limits.birthday_probe(seq, args.horizon)
    b, how = limits.limit_birthday(seq, args.horizon)
    shown = ", ".join(map(str, doms[:12])) + (", ..." if len(doms) > 12 else "")
    lines = [f"birthdays: {shown}", f"b = {b}    ({how})"]
    for note in seq.notes:
        lines.append(f"note [{note['kind']}]: {note['subject']}")
    _emit(args, "\n".join(lines), {"kind": "birthday", "family": seq.name,
                                   "doms": [str(d) for d in doms], "b": str(b),
                                   "exactness": how, "notes": list(seq.notes)})


def cmd_families(args):
    fams = limits.builtin_families()
    _emit(args, "\n".join(f"{k:<18} {s.description}" for k, s in fams.items()),
          {"kind": "families", "families": {k: s.description for k, s in fams.items()}})


# -- wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = argparse.ArgumentParser(prog="surreal", parents=[common],
                                     description="Sign-expansion surreal arithmetic and limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    cmd("eval", cmd_eval, "canonical form and birthday").add_argument("expr")
    p = cmd("cmp", cmd_cmp, "compare two numbers")
    p.add_argument("a")
    p.add_argument("b")
    p = cmd("add", cmd_add, "add two finite expansions")
    p.add_argument("a")
    p.add_argument("b")
    cmd("value", cmd_value, "rational value of an expansion").add_argument("expr")
    p = cmd("rat", cmd_rat, "expansion of a rational P/Q")
    p.add_argument("q")
    p.add_argument("--prefix", type=int, metavar="N", help="also print the first N signs")
    cmd("options", cmd_options, "left and right option sets").add_argument("expr")
    p = cmd("simplest", cmd_simplest, "simplest number between bounds")
    p.add_argument("--lo", nargs="*", default=[], metavar="A")
    p.add_argument("--hi", nargs="*", default=[], metavar="B")
    p = cmd("limit", cmd_limit, "check convergence of a built-in family")
    p.add_argument("family")
    p.add_argument("--policy", choices=limits.POLICIES, default=limits.STRICT)
    p.add_argument("--horizon", type=int, default=64)
    p.add_argument("--depth-samples", metavar="LIST", help="comma-separated ordinals, e.g. 1,2,w+1")
    p.add_argument("--candidate", action="append", metavar="X", help="candidate limit (repeatable)")
    p = cmd("series", cmd_series, "partial sums of a built-in series")
    p.add_argument("which", choices=["ones", "harmonic"])
    p.add_argument("--n", type=int, default=8)
    p = cmd("birthday", cmd_birthday, "birthday probe and limit birthday")
    p.add_argument("family")
    p.add_argument("--horizon", type=int, default=64)
    cmd("families", cmd_families, "list built-in families")
    return parser


def _protect(argv):
    # leading "-" expressions such as "-+" or "-5/8" would otherwise be taken
    # for options; a leading space keeps argparse from doing that
    return [(" " + a) if a.startswith("-") and len(a) > 1 and not _OPTION.match(a) else a
            for a in argv]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "json"):
        args.json = False
    try:
        args.func(args)
    except (NotationError, UsageError) as exc:
        print(f"surreal: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"surreal: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
