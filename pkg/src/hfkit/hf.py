"""Canonical hereditarily finite sets.

Every :class:`HfSet` is interned: two values with the same elements are the
same Python object, so ``==`` is identity and hashing is O(1).  Elements are
kept sorted under :func:`canonical_cmp` (rank first, then lexicographic on the
sorted element sequences), which makes the representation canonical.
"""

from __future__ import annotations

import threading
import weakref
from collections.abc import Callable, Iterable, Sequence
from typing import Optional

from hfkit.errors import HfParseError, NotAnOrdinal, SizeExceeded

__all__ = [
    "EMPTY",
    "HfSet",
    "HfParseError",
    "SizeExceeded",
    "POWERSET_BOUND",
    "big_union",
    "canonical_cmp",
    "hf_universe",
    "kpair",
    "kpair_decode",
    "mem",
    "mk_set",
    "ord_to_nat",
    "ordinal",
    "parse_hf",
    "powerset",
    "print_hf",
    "rank",
    "separation",
    "succ_vn",
    "transitive_closure",
    "tuple_decode",
    "tuple_encode",
    "union2",
    "wiener_pair",
    "zermelo_succ",
]

POWERSET_BOUND = 16

_intern: "weakref.WeakValueDictionary[tuple, HfSet]" = weakref.WeakValueDictionary()
_intern_lock = threading.Lock()


class HfSet:
    """An immutable hereditarily finite set.

    Construct with ``HfSet(iterable)`` or :func:`mk_set`; duplicates collapse
    and order is irrelevant.
    """

    __slots__ = ("_elements", "_members", "_rank", "_key", "_hash", "__weakref__")

    _elements: tuple
    _members: frozenset
    _rank: int
    _key: tuple
    _hash: int

    def __new__(cls, elements: Iterable["HfSet"] = ()):
        return mk_set(elements)

    @classmethod
    def _from_sorted(cls, elements: tuple) -> "HfSet":
        # caller guarantees: strictly increasing under canonical order
        found = _intern.get(elements)
        if found is not None:
            return found
        with _intern_lock:
            found = _intern.get(elements)
            if found is not None:
                return found
            obj = object.__new__(cls)
            obj._elements = elements
            obj._members = frozenset(elements)
            obj._rank = 1 + max(e._rank for e in elements) if elements else 0
            obj._key = (obj._rank, tuple(e._key for e in elements))
            obj._hash = hash((obj._rank, tuple(e._hash for e in elements)))
            _intern[elements] = obj
            return obj

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def sort_key(self) -> tuple:
        """Key realizing the canonical order under plain tuple comparison."""
        return self._key

    def __iter__(self):
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __bool__(self) -> bool:
        return bool(self._elements)

    def __contains__(self, item) -> bool:
        return item in self._members

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, HfSet):
            return self is other
        return NotImplemented

    def __ne__(self, other) -> bool:
        if isinstance(other, HfSet):
            return self is not other
        return NotImplemented

    def __lt__(self, other: "HfSet") -> bool:
        return self._key < other._key

    def __le__(self, other: "HfSet") -> bool:
        return self._key <= other._key

    def __gt__(self, other: "HfSet") -> bool:
        return self._key > other._key

    def __ge__(self, other: "HfSet") -> bool:
        return self._key >= other._key

    def __reduce__(self):
        return (mk_set, (list(self._elements),))

    def issubset(self, other: "HfSet") -> bool:
        return self._members <= other._members

    def __repr__(self) -> str:
        text = print_hf(self)
        if len(text) > 80:
            text = text[:77] + "..."
        return f"HfSet({text})"

    def __str__(self) -> str:
        return print_hf(self)


def mk_set(xs: Iterable[HfSet]) -> HfSet:
    items = {x for x in xs}
    for x in items:
        if not isinstance(x, HfSet):
            raise TypeError(f"HfSet elements must be HfSet, got {type(x).__name__}")
    return HfSet._from_sorted(tuple(sorted(items, key=_key_of)))


def _key_of(x: HfSet) -> tuple:
    return x._key


EMPTY = HfSet._from_sorted(())


def mem(x: HfSet, y: HfSet) -> bool:
    return x in y._members


def union2(x: HfSet, y: HfSet) -> HfSet:
    return mk_set(x._members | y._members)


def big_union(x: HfSet) -> HfSet:
    out: set = set()
    for e in x._elements:
        out.update(e._elements)
    return mk_set(out)


def powerset(x: HfSet, bound: int = POWERSET_BOUND) -> HfSet:
    n = len(x)
    if n > bound:
        raise SizeExceeded(f"powerset of a {n}-element set exceeds bound {bound}")
    elems = x._elements
    return mk_set(
        HfSet._from_sorted(tuple(elems[i] for i in range(n) if mask >> i & 1))
        for mask in range(1 << n)
    )


def separation(x: HfSet, pred: Callable[[HfSet], bool]) -> HfSet:
    # filtering a sorted tuple keeps it sorted
    return HfSet._from_sorted(tuple(e for e in x._elements if pred(e)))


def succ_vn(x: HfSet) -> HfSet:
    return mk_set(x._elements + (x,))


def zermelo_succ(x: HfSet) -> HfSet:
    return HfSet._from_sorted((x,))


def rank(x: HfSet) -> int:
    return x._rank


def canonical_cmp(x: HfSet, y: HfSet) -> int:
    """Return -1, 0 or 1 as ``x`` is below, equal to, or above ``y``."""
    if x is y:
        return 0
    return -1 if x._key < y._key else 1


_ordinals: list = [EMPTY]
_ordinals_lock = threading.Lock()


def ordinal(n: int) -> HfSet:
    """The von Neumann ordinal ``n`` = {0, ..., n-1}."""
    if n < 0:
        raise ValueError("ordinals are indexed by naturals")
    if n >= len(_ordinals):
        with _ordinals_lock:
            while len(_ordinals) <= n:
                _ordinals.append(succ_vn(_ordinals[-1]))
    return _ordinals[n]


def ord_to_nat(x: HfSet) -> int:
    n = len(x)
    if ordinal(n) is not x:
        raise NotAnOrdinal(f"{x!r} is not a von Neumann ordinal")
    return n


def _nat_or_none(x: HfSet) -> Optional[int]:
    n = len(x)
    return n if ordinal(n) is x else None


def kpair(x: HfSet, y: HfSet) -> HfSet:
    return mk_set([mk_set([x]), mk_set([x, y])])


def kpair_decode(p: HfSet) -> Optional[tuple]:
    els = p._elements
    if len(els) == 1:
        (only,) = els
        if len(only) == 1:
            x = only._elements[0]
            return (x, x)
        return None
    if len(els) != 2:
        return None
    for single, double in (els, els[::-1]):
        if len(single) == 1 and len(double) == 2:
            x = single._elements[0]
            if x in double._members:
                a, b = double._elements
                return (x, b if a is x else a)
    return None


def wiener_pair(x: HfSet, y: HfSet) -> HfSet:
    return mk_set([mk_set([mk_set([x]), EMPTY]), mk_set([mk_set([y])])])


def tuple_encode(xs: Sequence[HfSet]) -> HfSet:
    if not xs:
        raise ValueError("tuples have at least one entry")
    return mk_set(kpair(ordinal(k), x) for k, x in enumerate(xs))


def tuple_decode(t: HfSet) -> Optional[list]:
    n = len(t)
    if n == 0:
        return None
    out: list = [None] * n
    for el in t._elements:
        pair = kpair_decode(el)
        if pair is None:
            return None
        k = _nat_or_none(pair[0])
        if k is None or k >= n or out[k] is not None:
            return None
        out[k] = pair[1]
    return out


def transitive_closure(x: HfSet) -> set:
    """All sets reachable from ``x`` by membership, ``x`` excluded."""
    seen: set = set()
    stack = list(x._elements)
    while stack:
        e = stack.pop()
        if e not in seen:
            seen.add(e)
            stack.extend(e._elements)
    return seen


_universes: list = [[]]


def hf_universe(n: int) -> list:
    """All sets of rank < n, in canonical order (sizes 0, 1, 2, 4, 16, 65536)."""
    if n > 5:
        raise SizeExceeded(f"the universe of rank < {n} is too large to enumerate")
    while len(_universes) <= n:
        prev = _universes[-1]
        m = len(prev)
        level = [
            HfSet._from_sorted(tuple(prev[i] for i in range(m) if mask >> i & 1))
            for mask in range(1 << m)
        ]
        level.sort(key=_key_of)
        _universes.append(level)
    return list(_universes[n])


def print_hf(x: HfSet) -> str:
    cache: dict = {}

    def go(s: HfSet) -> str:
        text = cache.get(s)
        if text is None:
            text = "{" + ",".join(go(e) for e in s._elements) + "}"
            cache[s] = text
        return text

    return go(x)


def parse_hf(s: str) -> HfSet:
    """Parse brace notation such as ``"{ {}, {{}} }"`` into a canonical set."""
    stack: list = []
    result: Optional[HfSet] = None
    # expecting: "open" (a set must start), "item" (set or '}'), "sep" (',' or '}')
    expecting = "open"
    i, n = 0, len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if result is not None:
            raise HfParseError(f"unexpected {c!r} after complete set", i)
        if c == "{":
            if expecting == "sep":
                raise HfParseError("expected ',' or '}'", i)
            stack.append([])
            expecting = "item"
        elif c == "}":
            if not stack or expecting == "open":
                raise HfParseError("unexpected '}'", i)
            done = mk_set(stack.pop())
            if stack:
                stack[-1].append(done)
                expecting = "sep"
            else:
                result = done
        elif c == ",":
            if expecting != "sep":
                raise HfParseError("unexpected ','", i)
            expecting = "open"
        else:
            raise HfParseError(f"unexpected character {c!r}", i)
        i += 1
    if result is None:
        raise HfParseError("unexpected end of input", n)
    return result
