"""Finite signatures and their free algebras of closed terms in Polish notation."""

from __future__ import annotations

import itertools
import re
import warnings
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

from hfkit.errors import (
    ArityMismatch,
    ArityUnderflow,
    SignatureError,
    SizeExceeded,
    TrailingTokens,
    UnknownToken,
)
from hfkit.hf import HfSet, ordinal
from hfkit.report import CheckReport

__all__ = [
    "Signature",
    "Term",
    "parse_term",
    "print_term",
    "build",
    "hgt",
    "token_count",
    "pred",
    "pred_k",
    "lt",
    "lt_k",
    "count_terms",
    "enumerate_terms",
    "string_algebra",
    "check_free_fragment",
    "check_order_lemma",
    "random_term",
    "render_tree",
]

_BAD_NAME = re.compile(r"[\s{}]")


@dataclass(frozen=True)
class Signature:
    """Ordered function symbols with arities; declaration order fixes indices."""

    symbols: tuple

    def __post_init__(self):
        seen = set()
        for name, arity in self.symbols:
            if not name or _BAD_NAME.search(name):
                raise SignatureError(f"invalid symbol name {name!r}")
            if name in seen:
                raise SignatureError(f"duplicate symbol {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"invalid arity {arity!r} for {name!r}")
            seen.add(name)
        if self.symbols and not self.has_constants:
            warnings.warn("signature has no constants; its term algebra is empty", stacklevel=3)

    @classmethod
    def of(cls, *pairs) -> "Signature":
        return cls(tuple((str(n), int(a)) for n, a in pairs))

    @classmethod
    def from_text(cls, text: str) -> "Signature":
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise SignatureError(f"line {lineno}: expected 'name arity', got {raw!r}")
            pairs.append((parts[0], int(parts[1])))
        return cls(tuple(pairs))

    @classmethod
    def from_file(cls, path) -> "Signature":
        return cls.from_text(Path(path).read_text())

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def has_constants(self) -> bool:
        return any(a == 0 for _, a in self.symbols)

    @property
    def single_char(self) -> bool:
        return all(len(n) == 1 for n, _ in self.symbols)

    def name(self, i: int) -> str:
        return self.symbols[i][0]

    def arity(self, i: int) -> int:
        return self.symbols[i][1]

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.symbols):
            if n == name:
                return i
        raise KeyError(name)

    def code(self, i: int) -> HfSet:
        """The set standing for symbol ``i``: the ordinal ``i``."""
        if not 0 <= i < len(self.symbols):
            raise IndexError(i)
        return ordinal(i)

    def symbol_of_code(self, c: HfSet) -> Optional[int]:
        n = len(c)
        if n < len(self.symbols) and ordinal(n) is c:
            return n
        return None

    @property
    def max_arity(self) -> int:
        return max((a for _, a in self.symbols), default=0)


@dataclass(frozen=True)
class Term:
    head: int
    args: tuple = ()
    sig: Optional[Signature] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return print_term(self)


def build(sig: Signature, f, args: Sequence[Term] = ()) -> Term:
    i = sig.index(f) if isinstance(f, str) else f
    args = tuple(args)
    if len(args) != sig.arity(i):
        raise ArityMismatch(f"{sig.name(i)} takes {sig.arity(i)} arguments, got {len(args)}")
    return Term(i, args, sig)


def _tokens(s: str, contiguous: bool) -> list:
    if contiguous:
        return [(m.group(), m.start()) for m in re.finditer(r"\S", s)]
    return [(m.group(), m.start()) for m in re.finditer(r"\S+", s)]


def parse_term(sig: Signature, s: str, contiguous: bool = False) -> Term:
    """Parse a Polish-notation string; the whole input must be exactly one term.

    With ``contiguous`` every non-space character is a token, so ``"+0s0"``
    reads as ``+ 0 s 0`` (only for single-character signatures).
    """
    if contiguous and not sig.single_char:
        raise SignatureError("contiguous mode needs single-character symbol names")
    names = {name: i for i, (name, _) in enumerate(sig.symbols)}
    stack: list = []  # frames: [head, remaining, args]
    result: Optional[Term] = None
    for tok, pos in _tokens(s, contiguous):
        if result is not None:
            raise TrailingTokens(f"term complete before token {tok!r}", pos)
        i = names.get(tok)
        if i is None:
            raise UnknownToken(f"unknown token {tok!r}", pos)
        stack.append([i, sig.arity(i), []])
        while stack and stack[-1][1] == len(stack[-1][2]):
            head, _, args = stack.pop()
            done = Term(head, tuple(args), sig)
            if stack:
                stack[-1][2].append(done)
            else:
                result = done
    if result is None:
        raise ArityUnderflow("input ends in the middle of a term", len(s))
    return result


def print_term(t: Term, contiguous: bool = False, sig: Optional[Signature] = None) -> str:
    sig = sig or t.sig
    if sig is None:
        raise ValueError("term carries no signature; pass sig=")
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        out.append(sig.name(u.head))
        stack.extend(reversed(u.args))
    return ("" if contiguous else " ").join(out)


def _fold(t: Term, leaf_up: Callable[[Term, list], int]) -> int:
    # post-order without recursion, so arbitrarily deep terms are fine
    # keyed by identity: hashing a deep term would recurse
    memo: dict = {}
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if id(u) in memo:
            continue
        if ready:
            memo[id(u)] = leaf_up(u, [memo[id(a)] for a in u.args])
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return memo[id(t)]


def hgt(t: Term) -> int:
    return _fold(t, lambda u, hs: max((h + 1 for h in hs), default=0))


def token_count(t: Term) -> int:
    return _fold(t, lambda u, ns: 1 + sum(ns))


@lru_cache(maxsize=1 << 16)
def pred(t: Term) -> frozenset:
    out: set = set()
    for a in t.args:
        out |= pred(a)
        out.add(a)
    return frozenset(out)


def pred_k(t: Term, k: int) -> frozenset:
    if k < len(t.args):
        a = t.args[k]
        return pred(a) | {a}
    return frozenset()


def lt(x: Term, y: Term) -> bool:
    return x in pred(y)


def lt_k(x: Term, y: Term, k: int) -> bool:
    return x in pred_k(y, k)


def count_terms(sig: Signature, max_height: int) -> int:
    count = 0
    for _ in range(max_height + 1):
        count = sum(count ** a if a else 1 for _, a in sig.symbols)
    return count


def enumerate_terms(sig: Signature, max_height: int, limit: int = 10**6) -> list:
    """All terms of height <= max_height, ordered by height then token sequence."""
    estimate = count_terms(sig, max_height)
    if estimate > limit:
        raise SizeExceeded(f"{estimate} terms of height <= {max_height} exceeds {limit}")
    level: list = []
    for _ in range(max_height + 1):
        level = [
            Term(i, args, sig)
            for i, (_, a) in enumerate(sig.symbols)
            for args in itertools.product(level, repeat=a)
        ]
    return sorted(level, key=lambda t: (hgt(t), _preorder(t)))


def _preorder(t: Term) -> tuple:
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        out.append(u.head)
        stack.extend(reversed(u.args))
    return tuple(out)


# An interpretation maps (symbol index, argument values) to a value.
Interpretation = Callable[[int, tuple], object]


def string_algebra(f: int, args: tuple) -> tuple:
    """Concatenation on symbol strings: F(t0, ..., tn-1) = F t0 ... tn-1."""
    out = (f,)
    for a in args:
        out += a
    return out


def _evaluate(t: Term, interpret: Interpretation, memo: dict):
    v = memo.get(t)
    if v is None:
        v = interpret(t.head, tuple(_evaluate(a, interpret, memo) for a in t.args))
        memo[t] = v
    return v


def check_order_lemma(sig: Signature, terms: Sequence[Term]) -> CheckReport:
    """The five clauses relating the predecessor orders on a fragment of terms."""
    report = CheckReport("order-lemma")
    terms = list(terms)
    kmax = sig.max_arity + 1  # one sentinel index past every arity
    for x in terms:
        if lt(x, x):
            report.fail(f"(iii) {x} < itself")
    for x in terms:
        for y in terms:
            some_k = any(lt_k(x, y, k) for k in range(kmax))
            if lt(x, y) != some_k:
                report.fail(f"(i) {x} vs {y}: lt={lt(x, y)} but some lt_k={some_k}")
            if lt(x, y) and not hgt(x) < hgt(y):
                report.fail(f"(iii) {x} < {y} without height decrease")
    for z in terms:
        for k in range(kmax):
            below = pred_k(z, k)
            for y in below:
                for x in pred(y):
                    if not lt_k(x, z, k):
                        report.fail(f"(ii) {x} < {y} <_{k} {z} but not {x} <_{k} {z}")
            for a, b in itertools.combinations(below, 2):
                if not any(
                    (a == c or lt(a, c)) and (b == c or lt(b, c)) for c in below
                ):
                    report.fail(f"(iv) {a}, {b} have no upper bound in pred_{k}({z})")
            if k < len(z.args):
                top = z.args[k]
                for w in below:
                    if lt(top, w):
                        report.fail(f"(v) argument {k} of {z} is below {w}")
    # the predecessor set is the union of the graded predecessor sets
    for t in terms:
        union = frozenset().union(*(pred_k(t, k) for k in range(kmax)))
        if union != pred(t):
            report.fail(f"pred({t}) is not the union of its pred_k")
    return report


def check_free_fragment(
    sig: Signature,
    max_height: int,
    interpret: Optional[Interpretation] = None,
) -> CheckReport:
    """Check freeness of an algebra on the fragment of terms of bounded height.

    The algebra is given by ``interpret`` (default: concatenation of symbol
    strings).  Operations must be injective with disjoint ranges, the
    fragment must be generated from the constants, strings must read
    uniquely, and the order lemma must hold.
    """
    interpret = interpret or string_algebra
    report = CheckReport(f"free-fragment[{max_height}]")
    terms = enumerate_terms(sig, max_height)
    memo: dict = {}
    values = {t: _evaluate(t, interpret, memo) for t in terms}

    # one value, one term: covers both injectivity and disjoint ranges
    owner: dict = {}
    for t in terms:
        v = values[t]
        other = owner.get(v)
        if other is None:
            owner[v] = t
            continue
        if other.head != t.head:
            report.fail(
                f"ranges of {sig.name(other.head)} and {sig.name(t.head)} meet: "
                f"{other} and {t} both give {v!r}"
            )
        else:
            report.fail(f"{sig.name(t.head)} not injective: {other} and {t} both give {v!r}")

    # generated from the constants within the height bound
    generated = {interpret(i, ()) for i, (_, a) in enumerate(sig.symbols) if a == 0}
    for _ in range(max_height):
        generated |= {
            interpret(i, args)
            for i, (_, a) in enumerate(sig.symbols)
            if a
            for args in itertools.product(list(generated), repeat=a)
        }
    for t in terms:
        if values[t] not in generated:
            report.fail(f"{t} lies outside the subalgebra generated by the constants")

    # unique readability of the Polish strings
    strings = {print_term(t): t for t in terms}
    for text, t in strings.items():
        if parse_term(sig, text) != t:
            report.fail(f"round trip changed {text!r}")
        toks = text.split()
        for cut in range(1, len(toks)):
            prefix = " ".join(toks[:cut])
            try:
                parse_term(sig, prefix)
            except ArityUnderflow:
                continue
            report.fail(f"proper prefix {prefix!r} of {text!r} parses")

    report.merge(check_order_lemma(sig, terms))
    report.note(f"{len(terms)} terms of height <= {max_height}")
    return report


def random_term(sig: Signature, rng, max_depth: int = 6) -> Term:
    """A random term of height <= max_depth; leaves are forced at the depth limit."""
    constants = [i for i, (_, a) in enumerate(sig.symbols) if a == 0]
    if not constants:
        raise SignatureError("cannot build terms without constants")

    def grow(depth: int) -> Term:
        i = rng.choice(constants) if depth == 0 else rng.randrange(len(sig.symbols))
        return Term(i, tuple(grow(depth - 1) for _ in range(sig.arity(i))), sig)

    return grow(max_depth)


def render_tree(t: Term) -> str:
    """Functional notation, e.g. ``+(0,s(0))``."""
    sig = t.sig
    if not t.args:
        return sig.name(t.head)
    return sig.name(t.head) + "(" + ",".join(render_tree(a) for a in t.args) + ")"
