import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfkit.errors import ArityMismatch, InvalidShape, Overflow, SizeExceeded
from hfkit.iterative import (
    ADD,
    MUL,
    Compose,
    Const,
    IterStruct,
    PrimRecNode,
    Proj,
    Succ,
    admits_induction,
    admits_induction_naive,
    admits_recursion_vs,
    all_structures,
    chi_lt,
    exp_valid_by_recursion,
    exp_valid_set,
    factorize,
    find_homs,
    godel_eval,
    good_prime_rejections,
    good_primes,
    is_isomorphic,
    is_prime,
    mk_lasso,
    mk_zn,
    rec_add,
    rec_exp,
    rec_mul,
    skolem_lt_check,
    thm_order_conditions,
)


def brute_homs(a, b):
    # oracle: every map, checked clause by clause
    out = []
    for h in itertools.product(range(b.size), repeat=a.size):
        if h[a.init] == b.init and all(h[a.succ[x]] == b.succ[h[x]] for x in range(a.size)):
            out.append(h)
    return out


def test_constructors():
    z1 = mk_zn(1)
    assert z1.succ == (0,)
    assert mk_zn(6).s(5) == 0
    assert is_isomorphic(mk_lasso(1, 3), mk_zn(3))
    assert mk_lasso(3, 1).succ == (1, 2, 2)
    with pytest.raises(InvalidShape):
        IterStruct(2, 0, (0, 2))
    with pytest.raises(InvalidShape):
        mk_zn(0)


def test_induction_examples():
    assert all(admits_induction(mk_zn(n)) for n in range(1, 13))
    assert admits_induction(mk_lasso(2, 3))
    assert not admits_induction(IterStruct(3, 0, (0, 2, 1)))


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_induction_matches_naive(size):
    for a in all_structures(size):
        assert admits_induction(a) == admits_induction_naive(a)


def test_hom_examples():
    assert len(find_homs(mk_zn(6), mk_zn(3))) == 1
    assert find_homs(mk_zn(6), mk_zn(4)) == []
    a = mk_lasso(2, 3)
    assert tuple(range(a.size)) in find_homs(a, a)


@pytest.mark.parametrize("size_a,size_b", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_find_homs_matches_brute_force(size_a, size_b):
    targets = list(all_structures(size_b))
    for a in all_structures(size_a):
        for b in targets:
            assert sorted(find_homs(a, b)) == brute_homs(a, b)


def test_zn_hom_counts_against_brute_force():
    for n, m in itertools.product(range(1, 7), repeat=2):
        assert len(find_homs(mk_zn(n), mk_zn(m))) == len(brute_homs(mk_zn(n), mk_zn(m)))
        assert len(find_homs(mk_zn(n), mk_zn(m))) == (n % m == 0)


def test_recursion_vs():
    assert not admits_recursion_vs(mk_zn(4), [mk_zn(2), mk_zn(3)])
    assert admits_recursion_vs(mk_zn(1), [mk_zn(1)])
    assert admits_recursion_vs(mk_lasso(3, 2), [])


def test_rec_arith_examples():
    for n in range(1, 13):
        z = mk_zn(n, initial=1)
        assert all(rec_add(z, m) is not None for m in range(n))
        assert all(rec_mul(z, m) is not None for m in range(n))
    z6 = mk_zn(6, initial=1)
    assert all(rec_exp(z6, m) is not None for m in range(6))
    # with the initial element read as 1, element 2 is the residue 2, and 2**5 = 32 is not 2 mod 4
    assert rec_exp(mk_zn(4, initial=1), 2) is None


def test_rec_arith_rejects_non_inductive():
    with pytest.raises(ValueError):
        rec_add(IterStruct(2, 0, (0, 0)), 0)
    with pytest.raises(ValueError):
        rec_add(mk_zn(3), 0, convention="two")


def test_omega_fragment_one_convention():
    # a long lasso ending in a fixed point stands in for an initial segment of 1, 2, 3, ...
    a = mk_lasso(64, 1)
    for m, x in itertools.product(range(1, 7), repeat=2):
        assert rec_add(a, m - 1)[x - 1] + 1 == m + x
        assert rec_mul(a, m - 1)[x - 1] + 1 == m * x
    for m, x in itertools.product(range(1, 4), repeat=2):
        assert rec_exp(a, m - 1)[x - 1] + 1 == m**x


def test_omega_fragment_zero_convention():
    a = mk_lasso(64, 1)
    for m, x in itertools.product(range(7), repeat=2):
        assert rec_add(a, m, "zero")[x] == m + x
        assert rec_mul(a, m, "zero")[x] == m * x
    for m, x in itertools.product(range(4), repeat=2):
        assert rec_exp(a, m, "zero")[x] == m**x


def test_expset():
    assert exp_valid_set(5000) == {1, 2, 6, 42, 1806}
    assert exp_valid_set(1) == {1}
    assert pow(2, 7, 6) == 2
    with pytest.raises(SizeExceeded):
        exp_valid_set(10**6)


def test_expset_matches_recursion():
    by_rec = {n for n in range(1, 61) if exp_valid_by_recursion(n)}
    assert by_rec == {n for n in exp_valid_set(60)}
    assert {n for n in range(1, 61) if exp_valid_by_recursion(n, "zero")} == {1}


def test_expset_naive_oracle():
    # x**(n+1) by repeated multiplication
    def naive(n):
        for x in range(n):
            p = 1
            for _ in range(n + 1):
                p = p * x % n
            if p != x % n:
                return False
        return True

    assert {n for n in range(1, 300) if naive(n)} == exp_valid_set(299)


@given(st.integers(min_value=1, max_value=10**6))
def test_factorize(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n


def test_good_primes():
    seq, fixed = good_primes()
    assert seq[3] == {2, 3, 7}
    assert seq[4] == {2, 3, 7, 43}
    assert fixed == {2, 3, 7, 43}
    for p, q in itertools.permutations(sorted(fixed), 2):
        assert (p < q) == ((q - 1) % p == 0)
    rejections = {v: f for _, v, f in good_prime_rejections(fixed)}
    assert rejections == {87: {3: 1, 29: 1}, 259: {7: 1, 37: 1}, 603: {3: 2, 67: 1}, 1807: {13: 1, 139: 1}}


def test_skolem():
    assert skolem_lt_check(3, 10).ok
    assert chi_lt(3, 3) == 0 and chi_lt(3, 4) == 1
    assert skolem_lt_check(2, 5).ok
    tampered = skolem_lt_check(3, 10, step=lambda x, y: (x + 1, y))
    assert not tampered.ok and tampered.witnesses
    for m in range(2, 11):
        assert skolem_lt_check(m, 20).ok


def test_godel_examples():
    assert godel_eval(ADD, (3, 4)) == 7
    assert godel_eval(Const(5), ()) == 5
    assert godel_eval(MUL, (3, 4)) == 12


def test_godel_matches_machine():
    for x, y in itertools.product(range(21), repeat=2):
        assert godel_eval(ADD, (x, y)) == x + y
        assert godel_eval(MUL, (x, y)) == x * y


def test_godel_errors():
    with pytest.raises(ArityMismatch):
        godel_eval(ADD, (1,))
    with pytest.raises(ArityMismatch):
        godel_eval(Compose(Succ(), (Proj(0, 1), Proj(0, 1))), (1,))
    with pytest.raises(Overflow):
        godel_eval(ADD, (3, 2**63 - 2))
    with pytest.raises(ValueError):
        godel_eval(ADD, (-1, 2))


def test_thm_order_examples():
    assert thm_order_conditions(mk_zn(3), [0, 1, 2])["failures"] == [2]
    assert thm_order_conditions(mk_lasso(3, 1), [0, 1, 2])["failures"] == [2]


def test_thm_order_exhaustive():
    for size in range(1, 5):
        for a in all_structures(size):
            for order in itertools.permutations(range(size)):
                res = thm_order_conditions(a, order)
                assert not res["increasing"]
                assert not res["holds_a"] and not res["holds_b"]
