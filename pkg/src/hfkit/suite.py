"""Theorem checkers addressed by stable IDs, run at desk-scale bounds."""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Optional

from hfkit.errors import UnknownTheorem
from hfkit.hf import EMPTY, hf_universe, mk_set, ordinal, print_hf, rank, tuple_encode
from hfkit.iterative import (
    all_structures,
    exp_valid_by_recursion,
    exp_valid_set,
    find_homs,
    good_prime_rejections,
    good_primes,
    mk_zn,
    skolem_lt_check,
    thm_order_conditions,
)
from hfkit.ordinals import (
    CoSet,
    affine,
    check_sb_bijection,
    coset,
    is_sis_wo_member,
    is_zm_prime,
    parse_sb_instance,
    sb_bijection,
    sb_D_lfp,
    sb_D_union,
    zermelo_numeral,
    zm_prime_members,
    zm_prime_union,
)
from hfkit.report import CheckReport
from hfkit.terms import (
    Signature,
    check_free_fragment,
    check_order_lemma,
    enumerate_terms,
    parse_term,
    print_term,
    random_term,
)
from hfkit.vnn import (
    H_map,
    ONE_S,
    check_in_prime_global,
    check_trees_claim,
    classify,
    fV_apply,
    gel,
    graded_view,
    in_DS,
    in_ONS,
    in_prime,
    in_VNNS,
    is_limit_gen,
    term_to_V,
    vnn_converse,
)

__all__ = ["THEOREM_IDS", "Params", "VerifyReport", "SIG_0ST", "SIG_0PLUS", "SIG_ABS", "run", "run_all"]

SIG_0ST = Signature.of(("0", 0), ("s", 1), ("t", 1))
SIG_0PLUS = Signature.of(("0", 0), ("+", 2))
SIG_ABS = Signature.of(("a", 0), ("b", 0), ("s", 1))


@dataclass
class Params:
    bound: Optional[int] = None
    sig: Optional[Signature] = None
    height: Optional[int] = None
    window: Optional[int] = None
    instance: Optional[str] = None  # text of an S-B instance
    seed: int = 0

    def get(self, name: str, default):
        value = getattr(self, name)
        return default if value is None else value


@dataclass
class VerifyReport:
    theorem_id: str
    status: str
    witnesses: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
            "witnesses": list(self.witnesses),
        }


def _sigs(p: Params, defaults: list) -> list:
    """(signature, height) pairs: the --sig override or the built-in ones."""
    if p.sig is not None:
        return [(p.sig, p.get("height", defaults[0][1]))]
    if p.height is not None:
        return [(s, p.height) for s, _ in defaults]
    return defaults


def _label(sig: Signature) -> str:
    return "{" + ",".join(n for n, _ in sig.symbols) + "}"


def _images(sig: Signature, height: int) -> list:
    memo: dict = {}
    return [term_to_V(sig, t, memo) for t in enumerate_terms(sig, height)]


# -- iterative structures ------------------------------------------------------------


def _thm1_expset(p: Params) -> CheckReport:
    bound = p.get("bound", 5000)
    r = CheckReport("thm1-expset")
    got = exp_valid_set(bound)
    expected = {n for n in (1, 2, 6, 42, 1806) if n <= bound}
    if got != expected:
        r.fail(f"expected {sorted(expected)}, got {sorted(got)}")
    # the recursion-defined exponentiation agrees on the small moduli
    small = min(bound, 60)
    by_rec = {n for n in range(1, small + 1) if exp_valid_by_recursion(n)}
    if by_rec != {n for n in got if n <= small}:
        r.fail(f"recursive exponentiation valid for {sorted(by_rec)} up to {small}")
    r.note("set {" + ", ".join(map(str, sorted(got))) + "}")
    return r


def _fmt_factors(factors: dict) -> str:
    return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(factors.items()))


def _goodprimes(p: Params) -> CheckReport:
    r = CheckReport("goodprimes")
    seq, fixed = good_primes()
    want = [set(), {2}, {2, 3}, {2, 3, 7}, {2, 3, 7, 43}]
    if [set(a) for a in seq] != want:
        r.fail(f"sequence {[sorted(a) for a in seq]} differs from {[sorted(a) for a in want]}")
    if fixed != {2, 3, 7, 43}:
        r.fail(f"fixed point {sorted(fixed)}")
    rejections = {v: f for _, v, f in good_prime_rejections(fixed)}
    want_rej = {87: {3: 1, 29: 1}, 259: {7: 1, 37: 1}, 603: {3: 2, 67: 1}, 1807: {13: 1, 139: 1}}
    if rejections != want_rej:
        r.fail(f"rejections {rejections}")
    for i, a in enumerate(seq, 1):
        r.note(f"A_{i} = {{{', '.join(map(str, sorted(a)))}}}")
    r.note(f"fixed point {{{', '.join(map(str, sorted(fixed)))}}}")
    for v, f in sorted(rejections.items()):
        r.note(f"{v} = {_fmt_factors(f)}")
    return r


def _zn_homs(p: Params) -> CheckReport:
    bound = p.get("bound", 12)
    r = CheckReport("zn-homs")
    for n in range(1, bound + 1):
        for m in range(1, bound + 1):
            count = len(find_homs(mk_zn(n), mk_zn(m)))
            want = 1 if n % m == 0 else 0
            if count != want:
                r.fail(f"Z_{n} -> Z_{m}: {count} homomorphisms, expected {want}")
    r.note(f"all pairs 1 <= n, m <= {bound}")
    return r


def _skolem(p: Params) -> CheckReport:
    x_max = p.get("bound", 20)
    r = CheckReport("skolem")
    ms = range(2, min(10, x_max - 2) + 1)
    for m in ms:
        r.merge(skolem_lt_check(m, x_max))
    r.note(f"m in {ms.start}..{ms.stop - 1}, x <= {x_max}")
    return r


def _thm_order(p: Params) -> CheckReport:
    size_max = p.get("bound", 4)
    r = CheckReport("thm-order")
    checked = 0
    for size in range(1, size_max + 1):
        for a in all_structures(size):
            for order in itertools.permutations(range(size)):
                checked += 1
                res = thm_order_conditions(a, order)
                if res["increasing"]:
                    r.fail(f"{a} is increasing under {order}")
    for n in range(1, 9):
        res = thm_order_conditions(mk_zn(n), list(range(n)))
        if res["failures"] != [n - 1]:
            r.fail(f"Z_{n} under the natural order fails at {res['failures']}, expected [{n - 1}]")
    r.note(f"{checked} (structure, order) pairs up to size {size_max}; Z_n for n <= 8 fail only at n-1")
    return r


# -- terms ---------------------------------------------------------------------------


def _roundtrips(sig: Signature, rng: random.Random, count: int, r: CheckReport) -> None:
    for _ in range(count):
        t = random_term(sig, rng, rng.randrange(7))
        text = print_term(t)
        if parse_term(sig, text) != t:
            r.fail(f"round trip changed {text!r}")
        if sig.single_char:
            tight = print_term(t, contiguous=True)
            if parse_term(sig, tight, contiguous=True) != t:
                r.fail(f"contiguous round trip changed {tight!r}")


def _rec_alg_fragment(p: Params) -> CheckReport:
    r = CheckReport("thm-rec-alg-fragment")
    pairs = _sigs(p, [(SIG_0ST, 4), (SIG_0PLUS, 3)])
    rng = random.Random(p.seed)
    total = 10_000
    for i, (sig, h) in enumerate(pairs):
        sub = check_free_fragment(sig, h)
        sub.name = f"{_label(sig)} h<={h}"
        r.merge(sub)
        share = total // len(pairs) + (1 if i < total % len(pairs) else 0)
        _roundtrips(sig, rng, share, r)
    r.note(f"{total} random parse/print round trips (seed {p.seed})")
    return r


def _lemma_ordergen(p: Params) -> CheckReport:
    r = CheckReport("lemma-ordergen")
    for sig, h in _sigs(p, [(SIG_0ST, 4), (SIG_0PLUS, 3), (SIG_ABS, 3)]):
        terms = enumerate_terms(sig, h)
        sub = check_order_lemma(sig, terms)
        sub.name = f"{_label(sig)} h<={h}"
        r.merge(sub)
        r.note(f"{_label(sig)}: {len(terms)} terms of height <= {h}")
    return r


# -- generalized von Neumann construction -------------------------------------------


def _thm_valg(p: Params) -> CheckReport:
    r = CheckReport("thm-valg")
    for sig, h in _sigs(p, [(SIG_0ST, 2), (SIG_0PLUS, 2)]):
        memo: dict = {}
        terms = enumerate_terms(sig, h)
        pool = [term_to_V(sig, t, memo) for t in terms]
        owner: dict = {}
        applications = 0
        for i, (_, arity) in enumerate(sig.symbols):
            for args in itertools.product(pool, repeat=arity):
                applications += 1
                v = fV_apply(sig, i, args)
                key = (i, args)
                view = graded_view(v)
                if view is None or view.type_code is not sig.code(i) or view.n != arity:
                    r.fail(f"{_label(sig)}: {sig.name(i)}^V image does not decode as its tuple")
                if v in owner and owner[v] != key:
                    j, other = owner[v]
                    kind = "injectivity" if j == i else "disjoint ranges"
                    r.fail(f"{_label(sig)}: {kind} fails, {sig.name(j)}{len(other)} and {sig.name(i)}{len(args)}")
                owner[v] = key
        # the images of the terms themselves come from the same operations
        for t in terms:
            if term_to_V(sig, t, memo) is not fV_apply(sig, t.head, [memo[a] for a in t.args]):
                r.fail(f"{_label(sig)}: image of {t} is not built by the operations")
        r.note(f"{_label(sig)}: {applications} applications over {len(pool)} images of height <= {h}")
    return r


def _random_tuples(rng: random.Random, count: int) -> list:
    base = hf_universe(4)
    out = []
    for _ in range(count):
        length = rng.randrange(1, 5)
        entries = [mk_set(rng.sample(base, rng.randrange(0, 5))) for _ in range(length)]
        out.append(tuple_encode(entries))
    return out


def _thm_uuu(p: Params) -> CheckReport:
    r = CheckReport("thm-uuu")
    pool: list = []
    for sig, h in _sigs(p, [(SIG_0ST, 3), (SIG_0PLUS, 3)]):
        images = _images(sig, h)
        pool.extend(images)
        r.note(f"{_label(sig)}: {len(images)} images of height <= {h}")
    r.merge(check_in_prime_global(pool))
    sub = check_in_prime_global(_random_tuples(random.Random(p.seed), 100))
    sub.name = "random-tuples"
    r.merge(sub)
    return r


def _d1s_iso(p: Params) -> CheckReport:
    bound = p.get("bound", 20)
    r = CheckReport("d1s-iso")
    H = [H_map(n) for n in range(bound + 2)]
    if H[0] is not fV_apply(ONE_S, "1"):
        r.fail("H(0) is not 1^V")
    for n in range(bound + 1):
        if H[n + 1] is not fV_apply(ONE_S, "s", [H[n]]):
            r.fail(f"H({n + 1}) != s^V(H({n}))")
        if gel(H[n]) is not mk_set(H[:n]):
            r.fail(f"gel(H({n})) is not {{H(m) : m < {n}}}")
        if not in_DS(ONE_S, H[n]):
            r.fail(f"H({n}) not in D_S")
        for m in range(bound + 1):
            if in_prime(H[m], H[n]) != (m < n):
                r.fail(f"in_prime(H({m}), H({n})) disagrees with {m} < {n}")
    rng = random.Random(p.seed)
    outsiders = [EMPTY, ordinal(2), tuple_encode([ONE_S.code(1)])]
    perturbed = 0
    code_s = ONE_S.code(1)
    while perturbed < 50:
        n = rng.randrange(2, bound + 1)
        grade = list(H[:n])
        kind = rng.randrange(3)
        if kind == 0:
            # removing H(n-1) gives H(n-1) itself, so only lower elements are dropped
            grade.remove(H[rng.randrange(0, n - 1)])
            what = "deleted"
        elif kind == 1:
            # adding H(n) gives H(n+1), so only higher elements are added
            grade.append(H[rng.randrange(n + 1, bound + 2)])
            what = "added H(j), j > n"
        else:
            grade.append(rng.choice(outsiders))
            what = "added a non-member"
        x = tuple_encode([mk_set(grade), code_s])
        perturbed += 1
        if in_DS(ONE_S, x):
            r.fail(f"perturbation of H({n}) ({what}) is still in D_S")
    r.note(f"n <= {bound}; {perturbed} perturbations rejected")
    return r


def _ons_subalg(p: Params) -> CheckReport:
    r = CheckReport("ons-subalg")
    for sig, h in _sigs(p, [(SIG_0ST, 3), (SIG_0PLUS, 3)]):
        images = _images(sig, h)
        for x in images:
            c = classify(sig, x)
            if not (c.in_ONS and c.in_VNNS):
                r.fail(f"{_label(sig)}: image {print_hf(x)} classified {c.first_failure}")
            if not all(in_ONS(sig, y) for y in gel(x)):
                r.fail(f"{_label(sig)}: gel of {print_hf(x)} leaves ON_S")
            if is_limit_gen(sig, x):
                r.fail(f"{_label(sig)}: {print_hf(x)} is a limit")
        r.note(f"{_label(sig)}: {len(images)} images of height <= {h} in ON_S and VNN_S")
    return r


def _vnn_char(p: Params) -> CheckReport:
    r = CheckReport("vnn-char")
    pairs = _sigs(p, [(SIG_0ST, 3), (SIG_0PLUS, 3), (SIG_ABS, 3)])
    for sig, h in pairs:
        for x in _images(sig, h):
            if not in_VNNS(sig, x):
                r.fail(f"{_label(sig)}: term image {print_hf(x)} not in VNN_S")
        r.merge(vnn_converse(sig, min(h, 2)))
    a, b, s = (SIG_ABS.index(n) for n in ("a", "b", "s"))
    ab = tuple_encode([mk_set([fV_apply(SIG_ABS, a), fV_apply(SIG_ABS, b)]), SIG_ABS.code(s)])
    c = classify(SIG_ABS, ab)
    if not c.in_DS or c.in_ONS:
        r.fail(f"({{(a),(b)}},s) classified {c}")
    r.note(
        f"negative witness ({{(a),(b)}},s) over {_label(SIG_ABS)}: "
        f"in D_S={'yes' if c.in_DS else 'no'}, in ON_S={'yes' if c.in_ONS else 'no'}, "
        f"first failure {c.first_failure}"
    )
    return r


def _trees(p: Params) -> CheckReport:
    r = CheckReport("trees")
    sig, h = _sigs(p, [(SIG_0ST, 4)])[0]
    images = _images(sig, h)
    for x in images:
        if not in_ONS(sig, x):
            r.fail(f"{_label(sig)}: term image {print_hf(x)} is not in ON_S")
    sub = check_trees_claim(sig, images)
    sub.name = f"{_label(sig)} h<={h}"
    r.merge(sub)
    sub = check_trees_claim(ONE_S, [H_map(n) for n in range(11)])
    sub.name = "H(n), n <= 10"
    r.merge(sub)
    return r


# -- ordinals and the Schroeder-Bernstein construction ------------------------------------


def _zm_prime(p: Params) -> CheckReport:
    bound = p.get("bound", 5)
    r = CheckReport("zm-prime")
    universe = hf_universe(bound)
    members = [x for x in universe if is_zm_prime(x)]
    literal = zm_prime_members(bound - 1)
    if set(members) != set(literal):
        r.fail("direct sweep and zm_prime_members disagree")
    numerals = [zermelo_numeral(n) for n in range(bound + 1)]
    union = mk_set(e for x in members for e in x)
    want = mk_set(z for z in numerals if rank(z) <= bound - 2)
    if union is not want:
        r.fail(f"union over the sweep is {print_hf(union)}")
    r.note(f"{len(universe)} sets of rank <= {bound - 1}; {len(members)} in Zm'")
    if bound == 5:
        # one rank further, through the hereditarily empty-or-singleton pool
        wide = zm_prime_union(5)
        want = mk_set(z for z in numerals if rank(z) <= 4)
        if wide is not want:
            r.fail(f"union over rank <= 5 is {print_hf(wide)}")
        r.note("union over Zm' members of rank <= 5 is the Zermelo numerals of rank <= 4")
    return r


def _sis_wo(p: Params) -> CheckReport:
    bound = p.get("bound", 5)
    r = CheckReport("sis-wo")
    universe = hf_universe(bound)
    agree = 0
    for x in universe:
        zm, c = is_zm_prime(x), is_sis_wo_member(x)
        if zm != c:
            r.fail(f"{print_hf(x)}: Zm'={zm}, class C={c}")
        else:
            agree += zm
    r.note(f"{len(universe)} sets of rank <= {bound - 1}; {agree} in both Zm' and class C")
    return r


def _two_n(window: int) -> tuple:
    A = coset("even")
    B = coset("even | finite 1")
    return A, B, affine(2, 0), window


def _sb_agree(r: CheckReport, label: str, A, B, f, window: int) -> Optional[set]:
    lfp = sb_D_lfp(A, B, f, window)
    union = sb_D_union(A, B, f, window, window)
    if lfp != union:
        r.fail(f"{label}: lfp {sorted(lfp)} != union {sorted(union)}")
    for problem in check_sb_bijection(A, B, f, window):
        r.fail(f"{label}: {problem}")
    return lfp


def _random_affine(rng: random.Random) -> tuple:
    m = rng.randrange(1, 4)
    residues = frozenset(rng.sample(range(m), rng.randrange(1, m + 1)))
    a = 1 + m * rng.randrange(0, 3)
    b = m * rng.randrange(0 if a > 1 else 1, 4)
    f = affine(a, b)

    def in_B(x: int) -> bool:
        return x >= 0 and x % m in residues

    extra = frozenset(x for x in range(21) if in_B(x) and rng.random() < 0.3)

    def in_A(x: int) -> bool:
        if not in_B(x):
            return False
        pre = f.inverse_on_range(x)
        return x in extra or (pre is not None and in_B(pre))

    label = f"B = mod {m} {sorted(residues)}, f = {a}x+{b}, extra {sorted(extra)}"
    return CoSet(in_A, label="f[B] | extra"), CoSet(in_B, label=label), f


def _sb(p: Params) -> CheckReport:
    r = CheckReport("sb")
    window = p.get("window", 64)
    A, B, f, _ = _two_n(window)
    D = _sb_agree(r, "2N", A, B, f, window)
    want = {1 << k for k in range(window.bit_length()) if 1 << k <= window}
    if D != want:
        r.fail(f"2N: D = {sorted(D)}, expected {sorted(want)}")
    g = sb_bijection(A, B, f, window)
    for x, y in ((1, 2), (2, 4), (6, 6)):
        if x <= window and g.get(x) != y:
            r.fail(f"2N: g({x}) = {g.get(x)}, expected {y}")
    r.note(f"2N: D = {sorted(D)}; g(1)={g.get(1)}, g(2)={g.get(2)}, g(6)={g.get(6)}")
    rng = random.Random(p.seed)
    for i in range(50):
        A, B, f = _random_affine(rng)
        _sb_agree(r, f"random #{i} ({B.label})", A, B, f, 64)
    r.note("50 random affine instances: constructions agree, g is a bijection onto A")
    if p.instance:
        inst = parse_sb_instance(p.instance)
        w = p.get("window", inst.window)
        D = _sb_agree(r, "instance", inst.A, inst.B, inst.f, w)
        r.note(f"instance: D = {sorted(D)}")
    return r


# -- registry ------------------------------------------------------------------------

_CHECKERS: dict = {
    "thm1-expset": _thm1_expset,
    "goodprimes": _goodprimes,
    "zn-homs": _zn_homs,
    "thm-rec-alg-fragment": _rec_alg_fragment,
    "lemma-ordergen": _lemma_ordergen,
    "thm-uuu": _thm_uuu,
    "thm-valg": _thm_valg,
    "d1s-iso": _d1s_iso,
    "ons-subalg": _ons_subalg,
    "vnn-char": _vnn_char,
    "zm-prime": _zm_prime,
    "sis-wo": _sis_wo,
    "sb": _sb,
    "skolem": _skolem,
    "trees": _trees,
    "thm-order": _thm_order,
}

THEOREM_IDS = tuple(_CHECKERS)


def checker(theorem_id: str) -> Callable[[Params], CheckReport]:
    try:
        return _CHECKERS[theorem_id]
    except KeyError:
        raise UnknownTheorem(theorem_id) from None


def run(theorem_id: str, params: Optional[Params] = None) -> VerifyReport:
    """Run one checker; exceptions become a failing report, never escape."""
    fn = checker(theorem_id)
    params = params or Params()
    start = time.perf_counter()
    try:
        report = fn(params)
        witnesses = report.witnesses + report.notes
        status = "pass" if report.ok else "fail"
    except Exception as exc:  # a crashing checker is a failed check
        witnesses = [f"error: {type(exc).__name__}: {exc}"]
        status = "fail"
    elapsed = int((time.perf_counter() - start) * 1000)
    return VerifyReport(theorem_id, status, witnesses, elapsed)


def run_all(params: Optional[Params] = None) -> list:
    return [run(tid, params) for tid in THEOREM_IDS]
