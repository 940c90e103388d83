from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefcycles.errors import DomainError, UnsupportedSizeError
from prefcycles.preferences import (
    CycleBearingRelation,
    PreferenceCycle,
    TernaryCode,
    WeakOrder,
    decode,
    encode,
    enumerate_codes,
    enumerate_strict_orders,
    enumerate_weak_orders,
    pairs,
    parse_code,
    parse_element,
    restrict,
    strict_order,
    valid_cycles,
)


def _transitive_complete(code: TernaryCode) -> bool:
    """Oracle: weak-preference relation read off the code is transitive."""
    alts = code.alternatives

    def weak(a, b):
        return a == b or code.value(a, b) in ("0", "e") if a < b else a == b or code.value(b, a) in ("1", "e")

    return all(not (weak(a, b) and weak(b, c)) or weak(a, c)
               for a in alts for b in alts for c in alts)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_weak_order_counts_are_fubini_numbers(n, expected):
    assert len(enumerate_weak_orders(n)) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weak_orders_match_transitive_codes(n):
    oracle = {c for c in enumerate_codes(n) if _transitive_complete(c)}
    assert {encode(o) for o in enumerate_weak_orders(n)} == oracle


def test_strict_orders_and_codes():
    assert len(enumerate_strict_orders(3)) == 6
    assert len(enumerate_strict_orders(4)) == 24
    assert len(enumerate_codes(3)) == 27
    assert all(o.is_strict for o in enumerate_strict_orders(3))


def test_pair_order_is_lexicographic():
    assert pairs(3) == [(1, 2), (1, 3), (2, 3)]


def test_encode_weak_order():
    o = parse_element("1~2<3")
    assert str(encode(o)) == "(e,0,0)"
    assert encode(o).cyclic_tuple() == ("e", "0", "1")


def test_encode_cycles():
    up, down = valid_cycles(3)
    assert str(up) == "1<2<3<1" and str(down) == "1<3<2<1"
    assert str(encode(up)) == "(0,1,0)"
    assert encode(up).cyclic_tuple() == ("0", "0", "0")
    assert encode(down).cyclic_tuple() == ("1", "1", "1")


def test_cyclic_tuple_round_trip():
    for code in enumerate_codes(3):
        assert TernaryCode.from_cyclic_tuple(code.cyclic_tuple()) == code


def test_decode_weak_cycle():
    code = TernaryCode.from_cyclic_tuple(("e", "1", "e"))
    assert str(decode(code)) == "1~3<2~1"


def test_decode_every_code_on_three():
    kinds = {"order": 0, "cycle": 0}
    for code in enumerate_codes(3):
        x = decode(code)
        kinds["order" if isinstance(x, WeakOrder) else "cycle"] += 1
        assert encode(x, code.alternatives) == code
    assert kinds == {"order": 13, "cycle": 14}


def test_round_trip_on_four():
    for o in enumerate_weak_orders(4):
        assert decode(encode(o)) == o
    for rest in permutations((2, 3, 4)):
        cyc = PreferenceCycle.strict(1, *rest)
        assert decode(encode(cyc)) == cyc


def test_four_cycle_has_only_closing_pair_reversed():
    code = encode(parse_element("1<2<3<4<1"))
    assert code.prefers(4, 1) and code.prefers(1, 3) and code.prefers(2, 4)


def test_non_total_four_code_is_cycle_bearing():
    # 1<2<3 with 1<3 is transitive on {1,2,3}; 4 sits in a 3-cycle with 1,2
    code = TernaryCode.from_relation((1, 2, 3, 4), lambda a, b: {
        (1, 2): "<", (1, 3): "<", (2, 3): "<", (1, 4): ">", (2, 4): "<", (3, 4): "~"}[(a, b)])
    assert isinstance(decode(code), CycleBearingRelation)


def test_restrict_cycle_drops_elements():
    assert str(restrict(parse_element("1<2<3<4<1"), {1, 2, 4})) == "1<2<4<1"
    assert str(restrict(parse_element("1<2~3<4<1"), {1, 3, 4})) == "1<3<4<1"
    assert str(restrict(parse_element("1~2~3~4<1"), {1, 2, 3})) == "1~2~3<1"


def test_restrict_profile_componentwise():
    p = (strict_order(1, 2, 3, 4), parse_element("4~3<2<1"))
    assert [str(o) for o in restrict(p, {2, 3})] == ["2<3", "3<2"]


def test_restrict_rejects_bad_subsets():
    with pytest.raises(DomainError):
        restrict(strict_order(1, 2, 3), {1, 5})
    with pytest.raises(DomainError):
        restrict(parse_element("1<2<3<1"), {1, 2})


def test_valid_cycles_need_three_alternatives():
    with pytest.raises(UnsupportedSizeError):
        valid_cycles(4)


def test_cycle_normalisation_and_reverse():
    c = PreferenceCycle.strict(2, 3, 1)
    assert str(c) == "1<2<3<1"
    assert str(c.reversed()) == "1<3<2<1"
    assert c.reversed().reversed() == c


def test_cycle_needs_a_strict_step():
    with pytest.raises(DomainError):
        PreferenceCycle((1, 2, 3), ("~", "~", "~"))


@pytest.mark.parametrize("text", ["", "1<", "1<a", "1<2<1<2", "1<1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(DomainError):
        parse_element(text)


def test_parse_accepts_unicode_relations():
    assert parse_element("1∼2≺3") == parse_element("1~2<3")


def test_parse_code():
    assert parse_code("(e,0,0)", 3) == encode(parse_element("1~2<3"))
    with pytest.raises(DomainError):
        parse_code("(x,0,0)", 3)
    with pytest.raises(DomainError):
        parse_code("(0,0)", 3)


weak_orders_4 = st.sampled_from(enumerate_weak_orders(4))
subsets_4 = st.sampled_from([set(s) for k in (2, 3, 4) for s in combinations((1, 2, 3, 4), k)])


@given(weak_orders_4, subsets_4)
def test_encode_commutes_with_restriction(order, subset):
    assert encode(order).restrict(subset) == encode(restrict(order, subset))


@given(weak_orders_4)
def test_reverse_is_an_involution_that_flips_codes(order):
    flipped = {"0": "1", "1": "0", "e": "e"}
    assert order.reversed().reversed() == order
    assert encode(order.reversed()).entries == tuple(flipped[v] for v in encode(order).entries)


@given(weak_orders_4)
def test_text_round_trip(order):
    assert parse_element(str(order)) == order
