"""Von Neumann ordinals, Zermelo numerals, finiteness, and Schroeder-Bernstein.

Everything here lives inside the hereditarily finite universe, except the
Schroeder-Bernstein constructions, which need infinite sets and so work on
computable subsets of the integers observed through a finite window.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from hfkit.errors import NotAnOrdinal, SizeExceeded, WindowUnstable
from hfkit.hf import (
    EMPTY,
    HfSet,
    hf_universe,
    mk_set,
    ord_to_nat,
    ordinal,
    powerset,
    zermelo_succ,
)

__all__ = [
    "Ord",
    "CoSet",
    "CoInjection",
    "SbInstance",
    "as_ord",
    "choose",
    "choice_set",
    "is_transitive",
    "is_ordinal",
    "is_ordinal_vn",
    "is_ordinal_robinson",
    "is_limit_ord",
    "zermelo_numeral",
    "is_zm",
    "is_zm_prime",
    "zm_prime_members",
    "zm_prime_union",
    "is_sis_wo_member",
    "sis_wo_order",
    "is_wr_finite",
    "affine",
    "coset",
    "parse_sb_instance",
    "sb_D_lfp",
    "sb_D_union",
    "sb_bijection",
    "check_sb_bijection",
    "ord_pred",
    "ord_add",
    "ord_mul",
    "ord_exp",
]


class Ord(NamedTuple):
    value: HfSet
    n: int


def as_ord(x: HfSet) -> Ord:
    return Ord(x, ord_to_nat(x))


def choose(x: HfSet) -> HfSet:
    """Canonical choice: the least element of a nonempty set."""
    if not x:
        raise ValueError("cannot choose from the empty set")
    return x.elements[0]


def choice_set(family: HfSet) -> HfSet:
    """A set meeting each member of a family of nonempty disjoint sets exactly once."""
    return mk_set(choose(member) for member in family)


# -- ordinals ---------------------------------------------------------------


def is_transitive(x: HfSet) -> bool:
    return all(e.issubset(x) for e in x)


def is_ordinal_vn(x: HfSet) -> bool:
    """Transitive set of transitive sets."""
    return is_transitive(x) and all(is_transitive(e) for e in x)


def is_ordinal_robinson(x: HfSet) -> bool:
    """Transitive and totally ordered by membership."""
    if not is_transitive(x):
        return False
    els = x.elements
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if a not in b and b not in a:
                return False
    return True


def is_ordinal(x: HfSet) -> bool:
    result = is_ordinal_vn(x)
    assert result == is_ordinal_robinson(x), f"ordinal definitions disagree on {x!r}"
    return result


def is_limit_ord(x: HfSet) -> bool:
    if not is_ordinal(x):
        raise NotAnOrdinal(f"{x!r} is not an ordinal")
    limit = bool(x) and not any(mk_set(y.elements + (y,)) is x for y in x)
    assert not limit, "hereditarily finite ordinals are never limits"
    return limit


# -- Zermelo numerals ---------------------------------------------------------


def zermelo_numeral(n: int) -> HfSet:
    z = EMPTY
    for _ in range(n):
        z = zermelo_succ(z)
    return z


def _empty_or_singleton_of_member(x: HfSet) -> bool:
    return all(not e or (len(e) == 1 and e.elements[0] in x) for e in x)


def is_zm(x: HfSet) -> bool:
    return _empty_or_singleton_of_member(x)


def _membership_masks(els: tuple) -> list:
    index = {e: i for i, e in enumerate(els)}
    masks = []
    for e in els:
        m = 0
        for d in e:
            j = index.get(d)
            if j is not None:
                m |= 1 << j
        masks.append(m)
    return masks


def is_zm_prime(x: HfSet, bound: int = 20) -> bool:
    """In Zm, and every nonempty subset of ``x`` is disjoint from one of its elements."""
    if len(x) > bound:
        raise SizeExceeded(f"subset enumeration of a {len(x)}-element set exceeds bound {bound}")
    if not is_zm(x):
        return False
    masks = _membership_masks(x.elements)
    n = len(masks)
    for sub in range(1, 1 << n):
        if not any(sub >> i & 1 and masks[i] & sub == 0 for i in range(n)):
            return False
    return True


def _hereditarily_singular(x: HfSet) -> bool:
    while x:
        if len(x) != 1:
            return False
        x = x.elements[0]
    return True


def zm_prime_members(rank_bound: int) -> list:
    """All members of Zm' of rank at most ``rank_bound``.

    Up to rank 4 every set is enumerated and tested.  At rank 5 the 2**65536
    candidates cannot be listed, so candidates are drawn from subsets of the
    rank <= 4 sets that are hereditarily empty-or-singleton: every element of a
    Zm set is either empty or the singleton of another element, hence of that
    form all the way down.
    """
    if rank_bound > 5:
        raise SizeExceeded(f"rank bound {rank_bound} exceeds 5")
    if rank_bound < 0:
        return []
    if rank_bound <= 4:
        return [x for x in hf_universe(rank_bound + 1) if is_zm_prime(x)]
    pool = [e for e in hf_universe(5) if _hereditarily_singular(e)]
    out = []
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            x = mk_set(combo)
            if is_zm_prime(x):
                out.append(x)
    return out


def zm_prime_union(rank_bound: int) -> HfSet:
    return mk_set(e for x in zm_prime_members(rank_bound) for e in x)


def sis_wo_order(x: HfSet, bound: int = 8) -> Optional[list]:
    """A total order of ``x`` with y before {y}, or None if ``x`` is not in class C."""
    if not _empty_or_singleton_of_member(x):
        return None
    if len(x) > bound:
        raise SizeExceeded(f"order search over {len(x)} elements exceeds bound {bound}")
    els = x.elements
    # constraint: {y} may only be placed once y is placed
    needs = {e: (e.elements[0] if e else None) for e in els}
    order: list = []
    placed: set = set()

    def extend() -> bool:
        if len(order) == len(els):
            return True
        for e in els:
            if e in placed:
                continue
            need = needs[e]
            if need is not None and need not in placed:
                continue
            order.append(e)
            placed.add(e)
            if extend():
                return True
            order.pop()
            placed.discard(e)
        return False

    if not extend():
        return None
    pos = {e: i for i, e in enumerate(order)}
    assert all(pos[y] < pos[e] for e, y in needs.items() if y is not None)
    return order


def is_sis_wo_member(x: HfSet, bound: int = 8) -> bool:
    # a finite total order is automatically a well-order
    return sis_wo_order(x, bound) is not None


def is_wr_finite(x: HfSet, bound: int = 3) -> bool:
    """Whitehead-Russell finiteness, evaluated literally over all subsets of P(x)."""
    if len(x) > bound:
        raise SizeExceeded(f"double-exponential check on {len(x)} elements exceeds bound {bound}")
    subsets = list(powerset(x))
    index = {s: i for i, s in enumerate(subsets)}
    empty_i, full_i = index[EMPTY], index[x]
    steps = [[index[mk_set(s.elements + (c,))] for c in x] for s in subsets]
    m = len(subsets)
    for family in range(1 << m):
        if not family >> empty_i & 1:
            continue
        closed = all(
            all(family >> j & 1 for j in steps[i])
            for i in range(m)
            if family >> i & 1
        )
        if closed and not family >> full_i & 1:
            return False
    return True


# -- Schroeder-Bernstein ---------------------------------------------------------


@dataclass(frozen=True)
class CoSet:
    contains: Callable[[int], bool]
    window_hint: int = 10**6
    label: str = ""

    def __contains__(self, x: int) -> bool:
        return self.contains(x)

    def within(self, window: int) -> set:
        return {x for x in range(window + 1) if self.contains(x)}


@dataclass(frozen=True)
class CoInjection:
    apply: Callable[[int], int]
    inverse_on_range: Callable[[int], Optional[int]]
    label: str = ""

    def __call__(self, x: int) -> int:
        return self.apply(x)


def affine(a: int, b: int) -> CoInjection:
    if a < 1:
        raise ValueError("affine injections need a positive slope")

    def inverse(y: int) -> Optional[int]:
        q, r = divmod(y - b, a)
        return q if r == 0 and q >= 0 else None

    return CoInjection(lambda x: a * x + b, inverse, f"affine {a} {b}")


def _atom(words: list) -> Callable[[int], bool]:
    kind, args = words[0], [int(w) for w in words[1:]]
    if kind == "all":
        return lambda x: x >= 0
    if kind == "none":
        return lambda x: False
    if kind == "even":
        return lambda x: x >= 0 and x % 2 == 0
    if kind == "odd":
        return lambda x: x >= 0 and x % 2 == 1
    if kind == "mod":
        m, residues = args[0], frozenset(r % args[0] for r in args[1:])
        return lambda x: x >= 0 and x % m in residues
    if kind == "image":
        inv = affine(args[0], args[1]).inverse_on_range
        return lambda x: inv(x) is not None
    if kind == "finite":
        members = frozenset(args)
        return lambda x: x in members
    if kind == "range":
        lo, hi = args
        return lambda x: lo <= x <= hi
    raise ValueError(f"unknown predicate id {kind!r}")


def coset(description: str, window_hint: int = 10**6) -> CoSet:
    """Build a CoSet from text like ``"even | finite 1"`` (``|`` is union)."""
    parts = [_atom(p.split()) for p in description.split("|")]
    return CoSet(lambda x: any(p(x) for p in parts), window_hint, description.strip())


@dataclass(frozen=True)
class SbInstance:
    A: CoSet
    B: CoSet
    f: CoInjection
    window: int
    extras: dict = field(default_factory=dict)


def parse_sb_instance(text: str) -> SbInstance:
    """Parse the ``A:`` / ``B:`` / ``f: affine a b`` / ``window: N`` format."""
    fields: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(\w+)\s*:\s*(.*)", line)
        if not m:
            raise ValueError(f"malformed instance line: {raw!r}")
        fields[m.group(1)] = m.group(2).strip()
    missing = {"A", "B", "f", "window"} - fields.keys()
    if missing:
        raise ValueError(f"instance is missing {sorted(missing)}")
    words = fields["f"].split()
    if words[0] != "affine" or len(words) != 3:
        raise ValueError(f"unsupported map {fields['f']!r}; expected 'affine a b'")
    return SbInstance(
        A=coset(fields["A"]),
        B=coset(fields["B"]),
        f=affine(int(words[1]), int(words[2])),
        window=int(fields["window"]),
    )


def _check_pre(A: CoSet, B: CoSet, f: CoInjection, window: int) -> None:
    for x in range(window + 1):
        if x in A and x not in B:
            raise ValueError(f"A is not a subset of B: {x}")
        if x in B and f(x) not in A:
            raise ValueError(f"f does not map B into A: f({x}) = {f(x)}")


def sb_D_lfp(A: CoSet, B: CoSet, f: CoInjection, window: int) -> set:
    """Least X with (B - A) | f[X] <= X, intersected with [0, window].

    Kleene iteration inside the window is exact only when every element of
    the window that lies in f[B] has its preimage inside the window too; that
    is checked, and a preimage outside the window raises WindowUnstable.
    """
    _check_pre(A, B, f, window)
    for y in range(window + 1):
        x = f.inverse_on_range(y)
        if x is not None and x > window and x in B:
            raise WindowUnstable(f"{y} = f({x}) has its preimage outside the window {window}")
    base = {x for x in range(window + 1) if x in B and x not in A}
    current = set(base)
    for _ in range(window + 2):
        nxt = base | {y for y in map(f, current) if 0 <= y <= window}
        if nxt == current:
            return current
        current = nxt
    raise WindowUnstable("iteration did not stabilize inside the window")


def sb_D_union(A: CoSet, B: CoSet, f: CoInjection, depth: int, window: int) -> set:
    """Union of f^n[B] - f^n[A] for n <= depth, intersected with [0, window].

    Membership of y in f^n[B] is decided by pulling y back n times through
    the inverse, so no forward closure is involved.
    """
    _check_pre(A, B, f, window)
    limit = min(A.window_hint, B.window_hint)
    out = set()
    for y in range(window + 1):
        x: Optional[int] = y
        for _ in range(depth + 1):
            if x is None:
                break
            if not 0 <= x <= limit:
                raise WindowUnstable(f"pullback of {y} left the predicates' domain at {x}")
            if x in B and x not in A:
                out.add(y)
                break
            x = f.inverse_on_range(x)
    return out


def sb_bijection(A: CoSet, B: CoSet, f: CoInjection, window: int) -> dict:
    D = sb_D_lfp(A, B, f, window)
    return {x: (f(x) if x in D else x) for x in range(window + 1) if x in B}


def check_sb_bijection(A: CoSet, B: CoSet, f: CoInjection, window: int) -> list:
    """Violations of injectivity or of the image being A, inside the window."""
    g = sb_bijection(A, B, f, window)
    problems = []
    seen: dict = {}
    for x, y in g.items():
        if y in seen:
            problems.append(f"g({seen[y]}) = g({x}) = {y}")
        seen[y] = x
        if y not in A:
            problems.append(f"g({x}) = {y} is not in A")
    image = set(g.values())
    for a in range(window + 1):
        if a in A and a not in image:
            problems.append(f"{a} in A is not hit by g")
    return problems


# -- arithmetic on finite von Neumann ordinals ----------------------------------------
# Recursion on the right argument with 0 as the initial element:
#   a + 0 = a,  a + b' = (a + b)';   a * 0 = 0,  a * b' = a * b + a;
#   a ** 0 = 1, a ** b' = a ** b * a.


def ord_pred(x: HfSet) -> HfSet:
    """The predecessor of a nonzero finite ordinal (its largest element)."""
    if not x:
        raise ValueError("0 has no predecessor")
    return x.elements[-1]


def ord_add(a: HfSet, b: HfSet) -> HfSet:
    steps = []
    while b:
        steps.append(b)
        b = ord_pred(b)
    out = a
    for _ in steps:
        out = mk_set(out.elements + (out,))
    return out


def ord_mul(a: HfSet, b: HfSet) -> HfSet:
    out = EMPTY
    while b:
        out = ord_add(out, a)
        b = ord_pred(b)
    return out


def ord_exp(a: HfSet, b: HfSet) -> HfSet:
    out = ordinal(1)
    while b:
        out = ord_mul(out, a)
        b = ord_pred(b)
    return out
