"""Graded tuples and the generalized von Neumann construction over a signature.

An (n+1)-tuple ``(x_0, ..., x_n)`` is read as a node of type ``x_n`` whose
grade-k elements are the members of ``x_k``.  Graded membership ``in_prime``
replaces membership, and the classes D_S, ON_S and VNN_S play the roles of
candidate ordinals, ordinals, and natural numbers for the signature.
"""

from __future__ import annotations

import graphlib
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from hfkit.errors import ArityMismatch, NotATuple, SizeExceeded
from hfkit.hf import EMPTY, HfSet, big_union, mk_set, tuple_decode, tuple_encode
from hfkit.report import CheckReport
from hfkit.terms import Signature, Term, enumerate_terms

__all__ = [
    "ONE_S",
    "GradedView",
    "graded_view",
    "gel",
    "in_k",
    "in_prime",
    "pred_k_tuple",
    "fV_apply",
    "is_k_transitive",
    "ds_failure",
    "ons_failure",
    "in_DS",
    "in_ONS",
    "is_limit_gen",
    "in_VNNS",
    "Classification",
    "classify",
    "term_to_V",
    "H_map",
    "check_trees_claim",
    "check_in_prime_global",
    "vnn_converse",
]

ONE_S = Signature.of(("1", 0), ("s", 1))

CLOSURE_BOUND = 10**4


@dataclass(frozen=True)
class GradedView:
    grades: tuple
    type_code: HfSet

    @property
    def n(self) -> int:
        return len(self.grades)

    def encode(self) -> HfSet:
        return tuple_encode(list(self.grades) + [self.type_code])


@lru_cache(maxsize=1 << 16)
def graded_view(x: HfSet) -> Optional[GradedView]:
    entries = tuple_decode(x)
    if entries is None:
        return None
    return GradedView(tuple(entries[:-1]), entries[-1])


@lru_cache(maxsize=1 << 16)
def gel(x: HfSet) -> HfSet:
    """Union of the grades of a tuple (type excluded); empty for non-tuples."""
    view = graded_view(x)
    if view is None:
        return EMPTY
    return mk_set(e for g in view.grades for e in g)


def in_k(y: HfSet, x: HfSet, k: int) -> bool:
    view = graded_view(x)
    return view is not None and k < view.n and y in view.grades[k]


def in_prime(y: HfSet, x: HfSet) -> bool:
    return y in gel(x)


def pred_k_tuple(x: HfSet, k: int) -> HfSet:
    view = graded_view(x)
    if view is None or k >= view.n:
        return EMPTY
    return view.grades[k]


def fV_apply(sig: Signature, f, args: Sequence[HfSet] = ()) -> HfSet:
    i = sig.index(f) if isinstance(f, str) else f
    if len(args) != sig.arity(i):
        raise ArityMismatch(f"{sig.name(i)} takes {sig.arity(i)} arguments, got {len(args)}")
    grades = [mk_set(gel(a).elements + (a,)) for a in args]
    return tuple_encode(grades + [sig.code(i)])


def is_k_transitive(x: HfSet, k: int) -> bool:
    below = pred_k_tuple(x, k)
    return all(gel(y).issubset(below) for y in below)


def _k_range(view: GradedView) -> range:
    # every pred_k with k >= n is empty, so k = n stands in for all of them
    return range(view.n + 1)


def _shape_ok(sig: Signature, y: HfSet) -> bool:
    view = graded_view(y)
    if view is None:
        return False
    f = sig.symbol_of_code(view.type_code)
    if f is None or sig.arity(f) != view.n:
        return False
    return all(g for g in view.grades)


def _all_k_transitive(y: HfSet) -> bool:
    view = graded_view(y)
    ks = _k_range(view) if view is not None else range(1)
    return all(is_k_transitive(y, k) for k in ks)


def ds_failure(sig: Signature, x: HfSet) -> Optional[str]:
    """First failing membership condition of D_S (``"d1"``..``"d4"``), or None."""
    if not _shape_ok(sig, x):
        return "d1"
    members = gel(x).elements
    if not all(_shape_ok(sig, y) for y in members):
        return "d2"
    if not _all_k_transitive(x):
        return "d3"
    if not all(_all_k_transitive(y) for y in members):
        return "d4"
    return None


def in_DS(sig: Signature, x: HfSet) -> bool:
    return ds_failure(sig, x) is None


def _directed(s: HfSet) -> bool:
    # for a finite set, the whole set is one of its finite subsets, so being
    # directed means some element lies on or above every element
    return any(all(y is u or in_prime(y, u) for y in s) for u in s)


def _well_founded_on(s: HfSet) -> bool:
    graph = {u: [y for y in gel(u) if y in s] for u in s}
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


def _closure_size(x: HfSet, bound: int) -> int:
    seen: set = set()
    stack = [x]
    while stack:
        e = stack.pop()
        for d in e:
            if d not in seen:
                seen.add(d)
                if len(seen) > bound:
                    return len(seen)
                stack.append(d)
    return len(seen)


def ons_failure(sig: Signature, x: HfSet, bound: int = CLOSURE_BOUND) -> Optional[str]:
    """First failing condition of ON_S (``"d1"``..``"d7"``), or None."""
    if _closure_size(x, bound) > bound:
        raise SizeExceeded(f"transitive closure exceeds {bound} sets")
    failed = ds_failure(sig, x)
    if failed:
        return failed
    view = graded_view(x)
    if not all(_directed(g) for g in view.grades):
        return "d5"
    for y in gel(x):
        if not all(_directed(g) for g in graded_view(y).grades):
            return "d6"
    if not _well_founded_on(gel(x)):
        return "d7"
    return None


def in_ONS(sig: Signature, x: HfSet) -> bool:
    return ons_failure(sig, x) is None


def _has_maximal(s: HfSet) -> bool:
    return any(not any(in_prime(m, w) for w in s) for m in s)


def is_limit_gen(sig: Signature, x: HfSet) -> bool:
    """Some grade of ``x`` has no maximal element under graded membership."""
    view = graded_view(x)
    if view is None:
        raise NotATuple(f"{x!r} is not a tuple")
    return any(not _has_maximal(g) for g in view.grades)


def in_VNNS(sig: Signature, x: HfSet) -> bool:
    if not in_ONS(sig, x):
        return False
    return not is_limit_gen(sig, x) and not any(is_limit_gen(sig, y) for y in gel(x))


@dataclass(frozen=True)
class Classification:
    in_DS: bool
    in_ONS: bool
    in_VNNS: bool
    first_failure: Optional[str]


def classify(sig: Signature, x: HfSet) -> Classification:
    failed = ons_failure(sig, x)
    ds = failed is None or failed in ("d5", "d6", "d7")
    if failed is None:
        if is_limit_gen(sig, x):
            failed = "limit"
        elif any(is_limit_gen(sig, y) for y in gel(x)):
            failed = "limit-below"
    ons = failed is None or failed.startswith("limit")
    return Classification(ds, ons, failed is None, failed)


def term_to_V(sig: Signature, t: Term, memo: Optional[dict] = None) -> HfSet:
    """Image of a term under the homomorphism into the set universe."""
    memo = {} if memo is None else memo
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if u in memo:
            continue
        if ready:
            memo[u] = fV_apply(sig, u.head, [memo[a] for a in u.args])
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args if a not in memo)
    return memo[t]


_H: list = []


def H_map(n: int) -> HfSet:
    """H(0) = (1), H(n) = ({H(0), ..., H(n-1)}, s) over the signature {1, s}."""
    if n > 30:
        raise SizeExceeded("H is tabulated up to 30")
    if not _H:
        _H.append(tuple_encode([ONE_S.code(0)]))
    while len(_H) <= n:
        _H.append(tuple_encode([mk_set(_H), ONE_S.code(1)]))
    return _H[n]


def check_trees_claim(sig: Signature, pool: Iterable[HfSet]) -> CheckReport:
    """For unary signatures: graded membership totally orders gel(x) on ON_S."""
    report = CheckReport("trees")
    if sig.max_arity > 1:
        raise ValueError("the tree claim is about signatures with arities 0 and 1")
    checked = 0
    for x in pool:
        if not in_ONS(sig, x):
            report.note(f"skipped non-ON_S pool member {x!r}")
            continue
        checked += 1
        els = gel(x).elements
        for a in els:
            if in_prime(a, a):
                report.fail(f"{a!r} is graded-member of itself")
        for a, b in itertools.combinations(els, 2):
            if not (in_prime(a, b) or in_prime(b, a)):
                report.fail(f"incomparable {a!r} and {b!r} in gel of {x!r}")
            if in_prime(a, b) and in_prime(b, a):
                report.fail(f"{a!r} and {b!r} are mutually graded-members")
        for a, b, c in itertools.permutations(els, 3):
            if in_prime(a, b) and in_prime(b, c) and not in_prime(a, c):
                report.fail(f"graded membership not transitive at {a!r}, {b!r}, {c!r}")
        if not _well_founded_on(gel(x)):
            report.fail(f"graded membership has a cycle in gel of {x!r}")
    report.note(f"{checked} ON_S members checked")
    return report


def check_in_prime_global(pool: Iterable[HfSet]) -> CheckReport:
    """Graded membership is acyclic on the pool's closure, bounded by triple unions."""
    report = CheckReport("in-prime-wf")
    pool = list(pool)
    nodes: dict = {}
    stack = list(pool)
    while stack:
        u = stack.pop()
        if u in nodes:
            continue
        nodes[u] = gel(u).elements
        stack.extend(nodes[u])
    try:
        tuple(graphlib.TopologicalSorter(nodes).static_order())
    except graphlib.CycleError as exc:
        report.fail(f"cycle through {len(exc.args[1])} sets")
    double_ok = 0
    for x in pool:
        uu = big_union(big_union(x))
        uuu = big_union(uu)
        if not gel(x).issubset(uuu):
            report.fail(f"gel({x!r}) escapes the triple union")
        if gel(x).issubset(uu):
            double_ok += 1
    report.note(f"{len(nodes)} sets in the graded-membership closure")
    report.note(
        f"triple union contains gel for every pool member; "
        f"double union does for {double_ok} of {len(pool)}"
    )
    return report


def _nonempty_subsets(pool: Sequence[HfSet]):
    for r in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            yield mk_set(combo)


def vnn_converse(sig: Signature, pool_height: int = 2) -> CheckReport:
    """Every ON_S tuple without limits, with grades drawn from term images of
    height <= pool_height, is itself a term image."""
    report = CheckReport(f"vnn-converse[{pool_height}]")
    memo: dict = {}
    pool = [term_to_V(sig, t, memo) for t in enumerate_terms(sig, pool_height)]
    images = {term_to_V(sig, t, memo) for t in enumerate_terms(sig, pool_height + 1)}
    grade_sets = list(_nonempty_subsets(pool))
    candidates = accepted = 0
    for i, (_, arity) in enumerate(sig.symbols):
        for grades in itertools.product(grade_sets, repeat=arity):
            candidates += 1
            x = tuple_encode(list(grades) + [sig.code(i)])
            if in_VNNS(sig, x):
                accepted += 1
                if x not in images:
                    report.fail(f"ON_S non-limit {x!r} is not a term image")
    report.note(
        f"{candidates} candidates from {len(grade_sets)} grade sets over "
        f"{len(pool)} images of height <= {pool_height}; {accepted} accepted"
    )
    return report
