"""Command-line driver: set and term construction plus the verification suite."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional

from hfkit.errors import HfKitError, HfParseError, UnknownTheorem
from hfkit.hf import HfSet, big_union, kpair, ordinal, parse_hf, powerset, print_hf, rank, succ_vn
from hfkit.iterative import find_homs, good_prime_rejections, good_primes, exp_valid_set, mk_zn
from hfkit.ordinals import is_ordinal
from hfkit.suite import THEOREM_IDS, Params, VerifyReport, run
from hfkit.terms import Signature, hgt, parse_term, render_tree, token_count
from hfkit.vnn import classify, term_to_V

__all__ = ["main", "eval_hf_expr", "VerifyReport"]

_UNARY = {"succ": succ_vn, "pow": powerset, "union": big_union}


class _ExprParser:
    """Brace literals and the builders ord(n), kpair(e,e), succ(e), pow(e), union(e)."""

    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def skip(self) -> None:
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def expect(self, ch: str) -> None:
        self.skip()
        if self.i >= len(self.s) or self.s[self.i] != ch:
            raise HfParseError(f"expected {ch!r}", self.i)
        self.i += 1

    def literal(self) -> HfSet:
        start, depth = self.i, 0
        while self.i < len(self.s):
            c = self.s[self.i]
            depth += c == "{"
            depth -= c == "}"
            self.i += 1
            if depth == 0:
                break
        try:
            return parse_hf(self.s[start:self.i])
        except HfParseError as exc:
            raise HfParseError(exc.message, start + exc.offset) from None

    def expr(self) -> HfSet:
        self.skip()
        if self.i < len(self.s) and self.s[self.i] == "{":
            return self.literal()
        m = re.compile(r"[a-z]+").match(self.s, self.i)
        if not m:
            raise HfParseError("expected a set or a builder", self.i)
        name, at = m.group(), self.i
        self.i = m.end()
        self.expect("(")
        if name == "ord":
            self.skip()
            n = re.compile(r"\d+").match(self.s, self.i)
            if not n:
                raise HfParseError("ord needs a natural number", self.i)
            self.i = n.end()
            value = ordinal(int(n.group()))
        elif name == "kpair":
            left = self.expr()
            self.expect(",")
            value = kpair(left, self.expr())
        elif name in _UNARY:
            value = _UNARY[name](self.expr())
        else:
            raise HfParseError(f"unknown builder {name!r}", at)
        self.expect(")")
        return value

    def parse(self) -> HfSet:
        value = self.expr()
        self.skip()
        if self.i != len(self.s):
            raise HfParseError("trailing input", self.i)
        return value


def eval_hf_expr(text: str) -> HfSet:
    return _ExprParser(text).parse()


def _cmd_hf(args) -> int:
    x = eval_hf_expr(args.expr)
    print(f"{print_hf(x)}  rank={rank(x)}  ordinal={'yes' if is_ordinal(x) else 'no'}")
    return 0


def _cmd_term(args) -> int:
    sig = Signature.from_file(args.sigfile)
    t = parse_term(sig, args.term, contiguous=args.contiguous)
    print(f"tree: {render_tree(t)}")
    print(f"height: {hgt(t)}")
    print(f"tokens: {token_count(t)}")
    print(f"V: {print_hf(term_to_V(sig, t))}")
    return 0


def _print_report(rep: VerifyReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep.as_dict()))
        return
    print(f"{rep.theorem_id} {rep.status} {rep.elapsed_ms}")
    for w in rep.witnesses:
        print(f"  {w}")


def _params(args) -> Params:
    return Params(
        bound=getattr(args, "bound", None),
        sig=Signature.from_file(args.sig) if getattr(args, "sig", None) else None,
        height=getattr(args, "height", None),
        window=getattr(args, "window", None),
        instance=Path(args.instance).read_text() if getattr(args, "instance", None) else None,
        seed=getattr(args, "seed", 0),
    )


def _cmd_verify(args) -> int:
    if args.theorem_id not in THEOREM_IDS:
        raise UnknownTheorem(args.theorem_id)
    rep = run(args.theorem_id, _params(args))
    _print_report(rep, args.json)
    return 0 if rep.passed else 1


def _cmd_verify_all(args) -> int:
    params = _params(args)
    reports = []
    for tid in THEOREM_IDS:
        rep = run(tid, params)
        _print_report(rep, args.json)
        reports.append(rep)
    passed = sum(r.passed for r in reports)
    total_ms = sum(r.elapsed_ms for r in reports)
    if args.json:
        print(json.dumps({"summary": {"passed": passed, "total": len(reports), "elapsed_ms": total_ms}}))
    else:
        print(f"{passed}/{len(reports)} pass  {total_ms} ms")
    return 0 if passed == len(reports) else 1


def _cmd_goodprimes(args) -> int:
    seq, fixed = good_primes()
    for i, a in enumerate(seq, 1):
        print(f"A_{i} = {{{', '.join(map(str, sorted(a)))}}}")
    print(f"fixed point: {{{', '.join(map(str, sorted(fixed)))}}}")
    for combo, v, factors in good_prime_rejections(fixed):
        parts = "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(factors.items()))
        print(f"1 + {'*'.join(map(str, combo))} = {v} = {parts}")
    return 0


def _cmd_expset(args) -> int:
    print("{" + ", ".join(map(str, sorted(exp_valid_set(args.bound)))) + "}")
    return 0


def _cmd_homcount(args) -> int:
    print(len(find_homs(mk_zn(args.n), mk_zn(args.m))))
    return 0


def _cmd_vnn(args) -> int:
    sig = Signature.from_file(args.sigfile)
    if args.vnn_cmd == "build":
        print(print_hf(term_to_V(sig, parse_term(sig, args.term))))
        return 0
    c = classify(sig, eval_hf_expr(args.hfset))
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    print(f"D_S={yn(c.in_DS)}  ON_S={yn(c.in_ONS)}  VNN_S={yn(c.in_VNNS)}  first_failure={c.first_failure or '-'}")
    return 0


def _add_verify_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int)
    p.add_argument("--sig", help="signature file overriding the built-in signatures")
    p.add_argument("--height", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--instance", help="Schroeder-Bernstein instance file (for sb)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="one JSON object per report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfkit", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("hf", help="evaluate a set expression")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_hf)

    p = sub.add_parser("term", help="parse a Polish-notation term")
    p.add_argument("sigfile")
    p.add_argument("term")
    p.add_argument("--contiguous", action="store_true")
    p.set_defaults(fn=_cmd_term)

    p = sub.add_parser("verify", help="run one theorem checker")
    p.add_argument("theorem_id", metavar="ID", help=", ".join(THEOREM_IDS))
    _add_verify_flags(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("verify-all", help="run every theorem checker")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify_all)

    p = sub.add_parser("goodprimes")
    p.set_defaults(fn=_cmd_goodprimes)

    p = sub.add_parser("expset")
    p.add_argument("--bound", type=int, default=5000)
    p.set_defaults(fn=_cmd_expset)

    p = sub.add_parser("homcount", help="number of homomorphisms Z_n -> Z_m")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(fn=_cmd_homcount)

    p = sub.add_parser("vnn")
    vsub = p.add_subparsers(dest="vnn_cmd", required=True)
    b = vsub.add_parser("build")
    b.add_argument("sigfile")
    b.add_argument("term")
    c = vsub.add_parser("classify")
    c.add_argument("sigfile")
    c.add_argument("hfset")
    p.set_defaults(fn=_cmd_vnn)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UnknownTheorem as exc:
        print(f"error: unknown theorem id {exc.args[0]!r}; known: {', '.join(THEOREM_IDS)}", file=sys.stderr)
        return 2
    except HfParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HfKitError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
