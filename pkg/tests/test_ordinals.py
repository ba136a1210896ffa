import itertools

import pytest

from hfkit.errors import NotAnOrdinal, SizeExceeded, WindowUnstable
from hfkit.hf import EMPTY, hf_universe, mk_set, ordinal, parse_hf, rank, succ_vn
from hfkit.ordinals import (
    affine,
    as_ord,
    check_sb_bijection,
    choice_set,
    coset,
    is_limit_ord,
    is_ordinal,
    is_ordinal_robinson,
    is_ordinal_vn,
    is_sis_wo_member,
    is_transitive,
    is_wr_finite,
    is_zm,
    is_zm_prime,
    ord_add,
    ord_exp,
    ord_mul,
    parse_sb_instance,
    sb_bijection,
    sb_D_lfp,
    sb_D_union,
    sis_wo_order,
    zermelo_numeral,
    zm_prime_members,
    zm_prime_union,
)

E = EMPTY


def naive_ordinals(universe):
    # oracle: the ordinals are exactly the iterated successors of the empty set
    out, x = set(), E
    while x.rank < max(y.rank for y in universe) + 1:
        out.add(x)
        x = succ_vn(x)
    return out


def test_transitive_examples():
    assert is_transitive(ordinal(4))
    assert not is_transitive(parse_hf("{{{}}}"))
    assert is_transitive(E)


def test_is_ordinal_examples():
    assert is_ordinal(ordinal(5))
    assert not is_ordinal(parse_hf("{{{}}}"))
    assert as_ord(ordinal(4)).n == 4


def test_definitions_agree_over_rank_4(v5):
    oracle = naive_ordinals(v5)
    vn = {x for x in v5 if is_ordinal_vn(x)}
    rob = {x for x in v5 if is_ordinal_robinson(x)}
    assert vn == rob == oracle
    assert len(vn) == 5


def test_no_limits_below_rank_5(v5):
    assert not is_limit_ord(ordinal(0))
    assert not is_limit_ord(ordinal(9))
    assert not any(is_limit_ord(x) for x in v5 if is_ordinal(x))
    with pytest.raises(NotAnOrdinal):
        is_limit_ord(parse_hf("{{{}}}"))


def test_choice_set():
    fam = mk_set([mk_set([ordinal(1), ordinal(2)]), mk_set([ordinal(3)])])
    assert choice_set(fam) is mk_set([ordinal(1), ordinal(3)])


def test_zm_examples():
    assert is_zm_prime(parse_hf("{{}, {{}}, {{{}}}}"))
    assert is_zm(parse_hf("{{},{{}}}"))
    assert not is_zm(mk_set([ordinal(2)]))


def test_zm_prime_union_small():
    assert zm_prime_union(2) is parse_hf("{{}, {{}}}")
    assert zm_prime_union(3) is parse_hf("{{}, {{}}, {{{}}}}")


def test_zm_prime_union_is_numerals():
    numerals = [zermelo_numeral(n) for n in range(6)]
    for bound in range(6):
        want = mk_set(z for z in numerals if rank(z) < bound)
        assert zm_prime_union(bound) is want


def test_zm_prime_pruned_pool_matches_sweep(v5):
    swept = {x for x in v5 if is_zm_prime(x)}
    assert set(zm_prime_members(4)) == swept
    assert swept <= set(zm_prime_members(5))


def test_zm_prime_bounds():
    with pytest.raises(SizeExceeded):
        zm_prime_members(6)
    with pytest.raises(SizeExceeded):
        is_zm_prime(ordinal(21))


def test_sis_wo_examples():
    assert is_sis_wo_member(parse_hf("{{},{{}}}"))
    assert is_sis_wo_member(E)
    order = sis_wo_order(parse_hf("{{{}}, {}}"))
    assert order == [E, mk_set([E])]


def test_sis_wo_matches_zm_prime(v5):
    for x in v5:
        assert is_sis_wo_member(x) == is_zm_prime(x), x


def test_sis_wo_bound_only_after_element_condition():
    assert not is_sis_wo_member(ordinal(10))
    big = mk_set(zermelo_numeral(n) for n in range(10))
    with pytest.raises(SizeExceeded):
        is_sis_wo_member(big)


def test_wr_finite():
    assert is_wr_finite(E)
    assert is_wr_finite(ordinal(2))
    assert is_wr_finite(ordinal(3))
    with pytest.raises(SizeExceeded):
        is_wr_finite(ordinal(4))


def test_ordinal_arithmetic_matches_machine():
    for a, b in itertools.product(range(7), repeat=2):
        assert ord_add(ordinal(a), ordinal(b)) is ordinal(a + b)
        assert ord_mul(ordinal(a), ordinal(b)) is ordinal(a * b)
    for a, b in itertools.product(range(4), repeat=2):
        assert ord_exp(ordinal(a), ordinal(b)) is ordinal(a**b)


# -- Schroeder-Bernstein -------------------------------------------------------------

A2 = coset("even")
B2 = coset("even | finite 1")
F2 = affine(2, 0)
POWERS = {1, 2, 4, 8, 16, 32, 64}


def test_sb_2n_instance():
    assert sb_D_lfp(A2, B2, F2, 64) == POWERS
    assert sb_D_union(A2, B2, F2, 7, 64) == POWERS
    assert sb_D_union(A2, B2, F2, 0, 64) == {1}
    g = sb_bijection(A2, B2, F2, 64)
    assert (g[1], g[2], g[6]) == (2, 4, 6)
    assert len(set(g.values())) == len(g)
    assert check_sb_bijection(A2, B2, F2, 64) == []


def test_sb_trivial_instances():
    evens = coset("even")
    assert sb_D_lfp(evens, evens, F2, 64) == set()
    g = sb_bijection(evens, evens, F2, 64)
    assert all(g[x] == x for x in g)
    single = coset("finite 0")
    assert sb_D_lfp(single, single, affine(1, 0), 10) == set()


def test_sb_window_unstable():
    # f(x) = x + 3 on the naturals: D = {0, 1, 2} + 3N, fine inside any window
    A = coset("range 3 1000000")
    B = coset("all")
    assert sb_D_lfp(A, B, affine(1, 3), 20) == set(range(21))
    # a map that shrinks: the preimage of a window element can sit outside
    shrink = type(F2)(lambda x: x // 2, lambda y: 2 * y + 1, "half")
    with pytest.raises(WindowUnstable):
        sb_D_lfp(coset("all"), coset("all"), shrink, 10)


def test_sb_rejects_broken_preconditions():
    with pytest.raises(ValueError):
        sb_D_lfp(coset("all"), coset("even"), F2, 10)
    with pytest.raises(ValueError):
        sb_D_lfp(coset("even"), coset("all"), affine(1, 1), 10)


def test_sb_constructions_agree_on_random_instances(rng):
    from hfkit.suite import _random_affine

    for _ in range(50):
        A, B, f = _random_affine(rng)
        assert sb_D_lfp(A, B, f, 64) == sb_D_union(A, B, f, 64, 64)
        assert check_sb_bijection(A, B, f, 64) == []


def test_parse_sb_instance():
    inst = parse_sb_instance("A: even\nB: even | finite 1\nf: affine 2 0\nwindow: 64\n")
    assert inst.window == 64
    assert sb_D_lfp(inst.A, inst.B, inst.f, inst.window) == POWERS
    with pytest.raises(ValueError):
        parse_sb_instance("A: even\nB: all\n")
    with pytest.raises(ValueError):
        parse_sb_instance("A: even\nB: all\nf: square\nwindow: 3\n")
    with pytest.raises(ValueError):
        coset("prime")
