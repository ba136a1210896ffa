import itertools
import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfkit import (
    EMPTY,
    HfParseError,
    HfSet,
    SizeExceeded,
    big_union,
    canonical_cmp,
    kpair,
    kpair_decode,
    mem,
    mk_set,
    ordinal,
    parse_hf,
    powerset,
    print_hf,
    rank,
    separation,
    succ_vn,
    tuple_decode,
    tuple_encode,
    union2,
    wiener_pair,
    zermelo_succ,
)
from hfkit.errors import NotAnOrdinal
from hfkit.hf import hf_universe, ord_to_nat, transitive_closure
from hfkit.ordinals import is_transitive

from strategies import hf_sets

E = EMPTY
ONE = mk_set([E])
TWO = mk_set([E, ONE])


def test_mk_set_basics():
    assert mk_set([]) is E
    assert mk_set([E, E]) is ONE
    assert mk_set([ONE, E]) is mk_set([E, ONE])
    assert HfSet([E]) is ONE


def test_mk_set_rejects_non_sets():
    with pytest.raises(TypeError):
        mk_set([1])


def test_mem():
    assert mem(E, ONE)
    assert not mem(E, E)
    assert mem(ONE, TWO)


def test_unions():
    assert big_union(TWO) is ONE
    assert big_union(E) is E
    x = mk_set([ONE, TWO])
    assert union2(E, x) is x


def test_powerset():
    assert powerset(E) is ONE
    assert powerset(ONE) is TWO
    assert len(powerset(ordinal(3))) == 8
    with pytest.raises(SizeExceeded):
        powerset(ordinal(17))


def test_separation():
    o3 = ordinal(3)
    assert separation(o3, is_transitive) is o3
    assert separation(o3, lambda _: False) is E
    assert separation(o3, lambda _: True) is o3


def test_kpair_examples():
    assert kpair(E, E) is parse_hf("{{{}}}")
    assert kpair_decode(kpair(ordinal(1), ordinal(2))) == (ordinal(1), ordinal(2))
    assert kpair_decode(TWO) is None


def test_wiener_pair():
    assert wiener_pair(E, E) is parse_hf("{{{{}},{}},{{{}}}}")
    assert wiener_pair(E, E) is not kpair(E, E)


def test_pairs_injective_over_rank_3(v4):
    assert len(v4) == 16
    for name, pair in (("kuratowski", kpair), ("wiener", wiener_pair)):
        seen = {}
        for a, b in itertools.product(v4, repeat=2):
            p = pair(a, b)
            assert seen.setdefault(p, (a, b)) == (a, b), name
        assert len(seen) == 256


def test_kpair_decode_round_trip_over_rank_3(v4):
    for a, b in itertools.product(v4, repeat=2):
        assert kpair_decode(kpair(a, b)) == (a, b)


def test_kpair_decode_rejects_non_pairs(v4):
    pairs = {kpair(a, b) for a, b in itertools.product(v4, repeat=2)}
    for x in hf_universe(5)[::97]:
        if x not in pairs:
            decoded = kpair_decode(x)
            assert decoded is None or kpair(*decoded) is x


def test_tuples():
    a, b, c = E, ONE, TWO
    assert tuple_decode(tuple_encode([a, b, c])) == [a, b, c]
    assert tuple_encode([E]) is mk_set([kpair(E, E)])
    assert tuple_encode([E]) is parse_hf("{{{{}}}}")
    assert tuple_decode(E) is None
    with pytest.raises(ValueError):
        tuple_encode([])


@given(st.lists(hf_sets, min_size=1, max_size=5))
def test_tuple_round_trip(xs):
    assert tuple_decode(tuple_encode(xs)) == xs


def test_successors():
    assert succ_vn(E) is ONE
    assert succ_vn(ordinal(2)) is ordinal(3)
    assert zermelo_succ(zermelo_succ(E)) is parse_hf("{{{}}}")


def test_rank():
    assert rank(E) == 0
    assert rank(kpair(ordinal(0), ordinal(1))) == 3
    for n in range(21):
        assert rank(ordinal(n)) == n


def test_ordinals():
    assert ordinal(3) is parse_hf("{{},{{}},{{},{{}}}}")
    assert ord_to_nat(ordinal(7)) == 7
    with pytest.raises(NotAnOrdinal):
        ord_to_nat(parse_hf("{{{}}}"))


def test_canonical_order(v4):
    assert canonical_cmp(E, ONE) == -1
    assert canonical_cmp(TWO, TWO) == 0
    for x, y in itertools.product(v4, repeat=2):
        assert canonical_cmp(x, y) == -canonical_cmp(y, x)
        assert (canonical_cmp(x, y) == 0) == (x is y)
    for x, y, z in itertools.product(v4, repeat=3):
        if canonical_cmp(x, y) < 0 and canonical_cmp(y, z) < 0:
            assert canonical_cmp(x, z) < 0


def test_universe_sizes():
    assert [len(hf_universe(n)) for n in range(5)] == [0, 1, 2, 4, 16]
    with pytest.raises(SizeExceeded):
        hf_universe(6)


def test_universe_is_rank_bounded_and_distinct(v5):
    assert len(v5) == 65536
    assert len(set(v5)) == 65536
    assert max(rank(x) for x in v5) == 4


def test_print_and_parse():
    assert print_hf(ordinal(2)) == "{{},{{}}}"
    assert parse_hf("{ {} , {} }") is ONE
    with pytest.raises(HfParseError) as info:
        parse_hf("{{}")
    assert info.value.offset == 3


@pytest.mark.parametrize("bad", ["", "}", "{,}", "{{},}", "{} {}", "{a}", "{{}{}}"])
def test_parse_errors(bad):
    with pytest.raises(HfParseError):
        parse_hf(bad)


@given(hf_sets)
def test_print_parse_round_trip(x):
    assert parse_hf(print_hf(x)) is x


@given(hf_sets, hf_sets)
def test_extensionality(x, y):
    assert (x is y) == (set(x) == set(y))
    assert (x == y) == (print_hf(x) == print_hf(y))


@given(hf_sets)
def test_elements_sorted_and_ranked(x):
    els = x.elements
    assert all(canonical_cmp(a, b) < 0 for a, b in zip(els, els[1:]))
    assert all(rank(y) < rank(x) for y in x)
    assert x not in transitive_closure(x)


@given(hf_sets)
def test_pickle_preserves_identity(x):
    assert pickle.loads(pickle.dumps(x)) is x
