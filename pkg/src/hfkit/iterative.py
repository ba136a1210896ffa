"""Finite iterative structures, recursive arithmetic, and related number theory.

An iterative structure has a carrier ``{0, ..., size-1}``, an initial element
and a successor map.  Two conventions for the natural numbers appear: the
initial element may play the role of 1 (``"one"``) or of 0 (``"zero"``).
Every function that cares takes the convention as an argument.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Optional

from hfkit.errors import ArityMismatch, InvalidShape, Overflow, SizeExceeded
from hfkit.report import CheckReport

__all__ = [
    "IterStruct",
    "mk_zn",
    "mk_lasso",
    "all_structures",
    "reachable",
    "admits_induction",
    "admits_induction_naive",
    "is_isomorphic",
    "find_homs",
    "admits_recursion_vs",
    "hom_from_init",
    "rec_add",
    "rec_mul",
    "rec_exp",
    "exp_valid_set",
    "exp_valid_by_recursion",
    "factorize",
    "is_prime",
    "good_primes",
    "good_prime_rejections",
    "chi_lt",
    "skolem_lt_check",
    "Const",
    "Succ",
    "Proj",
    "Compose",
    "PrimRecNode",
    "arity_of",
    "godel_eval",
    "ADD",
    "MUL",
    "thm_order_conditions",
]


@dataclass(frozen=True)
class IterStruct:
    size: int
    init: int
    succ: tuple

    def __post_init__(self):
        if self.size < 1 or len(self.succ) != self.size:
            raise InvalidShape("carrier must be nonempty and succ total")
        if not 0 <= self.init < self.size:
            raise InvalidShape(f"initial element {self.init} outside carrier")
        if any(not 0 <= s < self.size for s in self.succ):
            raise InvalidShape("successor leaves the carrier")

    def s(self, x: int) -> int:
        return self.succ[x]


def mk_zn(n: int, initial: int = 0) -> IterStruct:
    """Z/nZ with successor x+1; ``initial`` is the residue of the initial element."""
    if n < 1:
        raise InvalidShape("Z/nZ needs n >= 1")
    return IterStruct(n, initial % n, tuple((x + 1) % n for x in range(n)))


def mk_lasso(tail: int, cycle: int) -> IterStruct:
    """Elements 1..tail on a line, the last one entering a cycle of length ``cycle``.

    Element k is stored at index k-1.  ``mk_lasso(1, c)`` is a pure cycle and
    ``mk_lasso(t, 1)`` ends in a fixed point.
    """
    if tail < 1 or cycle < 1:
        raise InvalidShape("lasso needs tail >= 1 and cycle >= 1")
    size = tail + cycle - 1
    succ = tuple(i + 1 for i in range(size - 1)) + (tail - 1,)
    return IterStruct(size, 0, succ)


def all_structures(size: int):
    for succ in itertools.product(range(size), repeat=size):
        for init in range(size):
            yield IterStruct(size, init, succ)


def reachable(a: IterStruct) -> list:
    """Orbit of the initial element, in visiting order."""
    seen, order = set(), []
    x = a.init
    while x not in seen:
        seen.add(x)
        order.append(x)
        x = a.succ[x]
    return order


def admits_induction(a: IterStruct) -> bool:
    return len(reachable(a)) == a.size


def admits_induction_naive(a: IterStruct) -> bool:
    """No proper subset containing init is closed under succ (exhaustive)."""
    if a.size > 12:
        raise SizeExceeded("naive subalgebra search is capped at 12 elements")
    full = (1 << a.size) - 1
    for mask in range(full):
        if not mask >> a.init & 1:
            continue
        if all(mask >> a.succ[x] & 1 for x in range(a.size) if mask >> x & 1):
            return False
    return True


def _is_hom(h: Sequence[int], a: IterStruct, b: IterStruct) -> bool:
    return h[a.init] == b.init and all(h[a.succ[x]] == b.succ[h[x]] for x in range(a.size))


def find_homs(a: IterStruct, b: IterStruct, limit: int = 10**6) -> list:
    """All homomorphisms from ``a`` to ``b``, as tuples indexed by elements of ``a``."""
    if a.size * b.size > limit:
        raise SizeExceeded(f"{a.size}x{b.size} exceeds {limit}")
    if admits_induction(a):
        # the image of init forces everything along the orbit
        h: dict = {a.init: b.init}
        x = a.init
        while True:
            nx, ny = a.succ[x], b.succ[h[x]]
            if nx in h:
                if h[nx] != ny:
                    return []
                break
            h[nx] = ny
            x = nx
        return [tuple(h[i] for i in range(a.size))]
    if b.size ** a.size > limit:
        raise SizeExceeded(f"{b.size}**{a.size} candidate maps exceeds {limit}")
    return [h for h in itertools.product(range(b.size), repeat=a.size) if _is_hom(h, a, b)]


def admits_recursion_vs(a: IterStruct, targets: Sequence[IterStruct]) -> bool:
    """Exactly one homomorphism into each listed target (a finite surrogate)."""
    return all(len(find_homs(a, b)) == 1 for b in targets)


def is_isomorphic(a: IterStruct, b: IterStruct) -> bool:
    if a.size != b.size:
        return False
    for perm in itertools.permutations(range(b.size)):
        if _is_hom(perm, a, b):
            return True
    return False


# -- recursive arithmetic -----------------------------------------------------


def hom_from_init(a: IterStruct, base: int, step: Callable[[int], Optional[int]]) -> Optional[dict]:
    """The map h with h(init)=base and h(s x)=step(h x), if it is well defined.

    Walks the orbit of init; on returning to a visited element the value
    forced by the recursion must match the one already assigned.
    """
    h = {a.init: base}
    x = a.init
    while True:
        nx = a.succ[x]
        v = step(h[x])
        if v is None:
            return None
        if nx in h:
            return h if h[nx] == v else None
        h[nx] = v
        x = nx


class _Arith:
    def __init__(self, a: IterStruct, convention: str):
        if convention not in ("one", "zero"):
            raise ValueError(f"convention must be 'one' or 'zero', got {convention!r}")
        if not admits_induction(a):
            raise ValueError("recursive arithmetic needs a structure that admits induction")
        self.a, self.conv = a, convention
        self._add: dict = {}
        self._mul: dict = {}

    def add(self, m: int) -> Optional[dict]:
        # one: m+1 = s(m), m+s(x) = s(m+x);  zero: m+0 = m
        if m not in self._add:
            base = self.a.succ[m] if self.conv == "one" else m
            self._add[m] = hom_from_init(self.a, base, self.a.s)
        return self._add[m]

    def mul(self, m: int) -> Optional[dict]:
        # one: m*1 = m;  zero: m*0 = 0;  both: m*s(x) = m*x + m
        if m not in self._mul:
            base = m if self.conv == "one" else self.a.init

            def step(y: int) -> Optional[int]:
                plus = self.add(y)
                return None if plus is None else plus[m]

            self._mul[m] = hom_from_init(self.a, base, step)
        return self._mul[m]

    def exp(self, m: int) -> Optional[dict]:
        # one: m^1 = m;  zero: m^0 = s(0);  both: m^s(x) = m^x * m
        base = m if self.conv == "one" else self.a.succ[self.a.init]

        def step(y: int) -> Optional[int]:
            times = self.mul(y)
            return None if times is None else times[m]

        return hom_from_init(self.a, base, step)


def rec_add(a: IterStruct, m: int, convention: str = "one") -> Optional[dict]:
    return _Arith(a, convention).add(m)


def rec_mul(a: IterStruct, m: int, convention: str = "one") -> Optional[dict]:
    return _Arith(a, convention).mul(m)


def rec_exp(a: IterStruct, m: int, convention: str = "one") -> Optional[dict]:
    return _Arith(a, convention).exp(m)


def exp_valid_by_recursion(n: int, convention: str = "one") -> bool:
    """Whether recursive exponentiation is well defined on Z/nZ for every base."""
    initial = 1 if convention == "one" else 0
    arith = _Arith(mk_zn(n, initial), convention)
    return all(arith.exp(m) is not None for m in range(n))


def exp_valid_set(bound: int) -> set:
    """{n <= bound : x**(n+1) == x (mod n) for all x < n}."""
    if bound > 10**5:
        raise SizeExceeded(f"bound {bound} exceeds 10**5")
    out = set()
    for n in range(1, bound + 1):
        if all(pow(x, n + 1, n) == x % n for x in range(n)):
            out.add(n)
    return out


# -- good primes ----------------------------------------------------------------


def factorize(n: int) -> dict:
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def _products_plus_one(primes: set):
    ps = sorted(primes)
    for r in range(len(ps) + 1):
        for combo in itertools.combinations(ps, r):
            p = 1
            for q in combo:
                p *= q
            yield combo, p + 1


def good_primes(max_rounds: int = 64) -> tuple:
    """Iterate A_1 = {} and A_{x+1} = A_x' to a fixed point.

    A' adds to A every prime of the form 1 + prod(B) for B a subset of A.
    Returns the list [A_1, ..., A_k] (A_k the first repeat) and the fixed point.
    """
    seq = [frozenset()]
    for _ in range(max_rounds):
        cur = seq[-1]
        nxt = cur | {v for _, v in _products_plus_one(cur) if is_prime(v)}
        if nxt == cur:
            return seq, set(cur)
        seq.append(frozenset(nxt))
    raise RuntimeError("good prime iteration did not stabilize")


def good_prime_rejections(primes: set) -> list:
    """Odd composite candidates 1 + prod(B) that use the largest prime.

    These are the candidates that stop the iteration; the even ones (B
    without 2) are composite for a trivial reason and are left out.
    """
    top = max(primes)
    out = []
    for combo, v in _products_plus_one(primes):
        if top in combo and v % 2 == 1 and not is_prime(v):
            out.append((combo, v, factorize(v)))
    return out


# -- Skolem's order ---------------------------------------------------------------


def chi_lt(m: int, x: int) -> int:
    return 1 if m < x else 0


def skolem_lt_check(m: int, x_max: int, step: Optional[Callable] = None) -> CheckReport:
    """x -> (x, chi_lt(m, x)) is the homomorphism from (N, 1, s) to (N x B, (1, 0), t).

    ``t(x, y) = (x + 1, max(y, chi_eq(m, x)))`` unless another ``step`` is given.
    """
    if m < 2 or x_max < m + 2:
        raise ValueError("need m >= 2 and x_max >= m + 2")
    t = step or (lambda x, y: (x + 1, max(y, 1 if x == m else 0)))
    report = CheckReport(f"skolem[m={m}]")
    h = (1, 0)
    if h != (1, chi_lt(m, 1)):
        report.fail(f"base (1, 0) disagrees with chi_lt({m}, 1)")
    for x in range(1, x_max + 1):
        if h != (x, chi_lt(m, x)):
            report.fail(f"iterate at x={x} is {h}, table says {(x, chi_lt(m, x))}")
            break
        h = t(*h)
    row = [chi_lt(m, x) for x in range(1, x_max + 1)]
    if row != [0] * m + [1] * (x_max - m):
        report.fail(f"table row has the wrong shape: {row}")
    # no operation on {0, 1} alone carries the row to itself shifted
    for t0, t1 in itertools.product((0, 1), repeat=2):
        table = (t0, t1)
        if all(table[row[i]] == row[i + 1] for i in range(len(row) - 1)):
            report.fail(f"boolean step {table} realizes the row, so the pairing is unnecessary")
    return report


# -- Goedel's recursive operations --------------------------------------------------

MACHINE_MAX = 2**63 - 1


@dataclass(frozen=True)
class Const:
    value: int
    arity: int = 0


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class Proj:
    index: int
    arity: int = 1


@dataclass(frozen=True)
class Compose:
    outer: object
    inners: tuple


@dataclass(frozen=True)
class PrimRecNode:
    """phi(0, a) = base(a);  phi(y+1, a) = step(y, phi(y, a), a)."""

    base: object
    step: object


def arity_of(d) -> int:
    if isinstance(d, Const):
        return d.arity
    if isinstance(d, Succ):
        return 1
    if isinstance(d, Proj):
        if not 0 <= d.index < d.arity:
            raise ArityMismatch(f"projection {d.index} out of range for arity {d.arity}")
        return d.arity
    if isinstance(d, Compose):
        if not d.inners or arity_of(d.outer) != len(d.inners):
            raise ArityMismatch("outer arity must equal the (positive) number of inner operations")
        arities = {arity_of(i) for i in d.inners}
        if len(arities) != 1:
            raise ArityMismatch(f"inner operations disagree on arity: {sorted(arities)}")
        return arities.pop()
    if isinstance(d, PrimRecNode):
        n = arity_of(d.base) + 1
        if arity_of(d.step) != n + 1:
            raise ArityMismatch(f"step must take {n + 1} arguments for a {n}-ary result")
        return n
    raise TypeError(f"not a recursive-operation description: {d!r}")


def _check(v: int) -> int:
    if v > MACHINE_MAX:
        raise Overflow(f"value {v} exceeds machine range")
    return v


def _eval(d, args: tuple) -> int:
    if isinstance(d, Const):
        return d.value
    if isinstance(d, Succ):
        return _check(args[0] + 1)
    if isinstance(d, Proj):
        return args[d.index]
    if isinstance(d, Compose):
        return _eval(d.outer, tuple(_eval(i, args) for i in d.inners))
    if isinstance(d, PrimRecNode):
        x, rest = args[0], args[1:]
        z = _eval(d.base, rest)
        for y in range(x):
            z = _eval(d.step, (y, z) + rest)
        return z
    raise TypeError(f"not a recursive-operation description: {d!r}")


def godel_eval(d, args: Sequence[int]) -> int:
    args = tuple(args)
    if arity_of(d) != len(args):
        raise ArityMismatch(f"description takes {arity_of(d)} arguments, got {len(args)}")
    if any(a < 0 for a in args):
        raise ValueError("arguments are natural numbers")
    return _eval(d, args)


# add(x, a) = x + a, recursing on x
ADD = PrimRecNode(Proj(0, 1), Compose(Succ(), (Proj(1, 3),)))
# mul(x, a) = x * a: mul(0, a) = 0, mul(y+1, a) = mul(y, a) + a
MUL = PrimRecNode(Const(0, 1), Compose(ADD, (Proj(1, 3), Proj(2, 3))))


# -- ordering an iterative structure ---------------------------------------------------


def thm_order_conditions(a: IterStruct, order: Sequence[int]) -> dict:
    """Evaluate x < s(x) and the two side clauses for a total order.

    ``order`` lists the carrier from least to greatest.  Returns
    ``holds_a``/``holds_b`` (each including the x < s(x) premise), the raw
    clause values, and the elements where x < s(x) fails.
    """
    if a.size > 8:
        raise SizeExceeded("order conditions are evaluated on carriers of size <= 8")
    if sorted(order) != list(range(a.size)):
        raise ValueError("order must list every element exactly once")
    pos = {x: i for i, x in enumerate(order)}
    failures = [x for x in range(a.size) if not pos[x] < pos[a.succ[x]]]
    increasing = not failures
    # a finite total order is a well-order
    successors = set(a.succ)
    clause_a = all(x == a.init or x in successors for x in range(a.size))
    clause_b = admits_induction(a)
    result = {
        "increasing": increasing,
        "failures": failures,
        "clause_a": clause_a,
        "clause_b": clause_b,
        "holds_a": increasing and clause_a,
        "holds_b": increasing and clause_b,
    }
    assert not result["holds_a"] and not result["holds_b"], "finite chains cannot climb forever"
    return result
