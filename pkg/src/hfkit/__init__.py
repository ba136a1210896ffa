"""Hereditarily finite sets, ordinals, and free term algebras over finite signatures."""

from hfkit.hf import (
    EMPTY,
    HfSet,
    HfParseError,
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

__all__ = [
    "EMPTY",
    "HfSet",
    "HfParseError",
    "SizeExceeded",
    "big_union",
    "canonical_cmp",
    "kpair",
    "kpair_decode",
    "mem",
    "mk_set",
    "ordinal",
    "parse_hf",
    "powerset",
    "print_hf",
    "rank",
    "separation",
    "succ_vn",
    "tuple_decode",
    "tuple_encode",
    "union2",
    "wiener_pair",
    "zermelo_succ",
]
