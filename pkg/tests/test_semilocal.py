from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qdef.arith import val
from qdef.errors import PreconditionViolated, ZeroInput
from qdef.harness import SEMILOCAL_BATTERY, boundary_values
from qdef.localglobal import delta
from qdef.semilocal import (
    PhiSpec,
    build_encoding,
    encode_pair,
    encode_tuple,
    in_phi,
    in_semilocal,
    in_units,
    member_via_definition,
    phi_reduction_value,
    synthesize_semilocal,
)

rationals = st.fractions(max_denominator=1000).filter(lambda x: abs(x.numerator) <= 1000)


def test_oracle_examples():
    assert in_semilocal({2, 3}, F(1, 5))
    assert not in_semilocal({2, 3}, F(1, 6))
    assert in_semilocal({2}, 0)


def test_units_examples():
    assert in_units({2}, 3)
    assert not in_units({2}, 2)
    assert not in_units({2}, 0)


def test_definition_for_two():
    defn = synthesize_semilocal({2})
    assert member_via_definition(defn, 0)
    assert member_via_definition(defn, F(1, 3)) and in_semilocal({2}, F(1, 3))
    assert not member_via_definition(defn, F(1, 2))


@pytest.mark.parametrize("S", SEMILOCAL_BATTERY[:8] + SEMILOCAL_BATTERY[15:])
def test_synthesized_invariants(S):
    defn = synthesize_semilocal(S)
    d = delta(defn.Q)
    assert not d.real_ramified
    assert S <= d.finite_places
    for x in boundary_values():
        assert member_via_definition(defn, x) == in_semilocal(S, x), x


@settings(max_examples=150, deadline=None)
@given(rationals, st.sampled_from(SEMILOCAL_BATTERY[:10]))
def test_definition_matches_oracle(x, S):
    assert member_via_definition(synthesize_semilocal(S), x) == in_semilocal(S, x)


def test_rejects_non_primes():
    with pytest.raises(PreconditionViolated):
        synthesize_semilocal({4})
    with pytest.raises(PreconditionViolated):
        synthesize_semilocal(set())


def test_encoding_examples():
    e2 = build_encoding({2})
    assert e2.d == 2 and encode_pair(e2, 0, 0) == 0
    assert encode_pair(e2, 2, 4) == 28
    e3 = build_encoding({3})
    assert encode_pair(e3, F(1, 3), 1) == F(-17, 9)
    assert val(encode_pair(e3, F(1, 3), 1), 3) == -2
    e23 = build_encoding({2, 3})
    assert e23.d == 4
    assert val(encode_tuple(e2, [F(1, 2), 1]), 2) < 0
    t = encode_tuple(e23, [1, 2, 3])
    assert val(t, 2) >= 0 and val(t, 3) >= 0
    assert encode_tuple(e23, [F(5, 7)]) == F(5, 7)


@settings(max_examples=200)
@given(rationals, rationals, st.sampled_from([{2}, {3}, {2, 3}, {5, 7, 11}, {2, 3, 5, 7}]))
def test_encoding_valuation_identity(x, y, S):
    enc = build_encoding(S)
    F_ = encode_pair(enc, x, y)
    for p in S:
        assert val(F_, p) == enc.d * min(val(x, p), val(y, p))


@settings(max_examples=100)
@given(st.lists(rationals, min_size=1, max_size=4), st.sampled_from([{2}, {3, 5}, {2, 3, 7}]))
def test_tuple_membership(xs, S):
    enc = build_encoding(S)
    assert in_semilocal(S, encode_tuple(enc, xs)) == all(in_semilocal(S, x) for x in xs)


def test_phi_examples():
    spec = PhiSpec(frozenset({2}), F(1), F(2))
    assert in_phi(spec, 3, 1)
    assert not in_phi(spec, 2, 1)
    assert not in_phi(spec, 3, 2)
    enc = build_encoding({2})
    assert in_semilocal({2}, phi_reduction_value(spec, enc, 1, 1))
    assert val(phi_reduction_value(spec, enc, 3, 2), 2) < 0
    with pytest.raises(ZeroInput):
        phi_reduction_value(spec, enc, 3, 0)


@settings(max_examples=150)
@given(rationals, rationals.filter(bool))
def test_phi_reduction_equivalence(a, b):
    S = frozenset({2, 3, 5})
    spec = PhiSpec(S, F(7), F(30))
    enc = build_encoding(S)
    assert in_phi(spec, a, b) == in_semilocal(S, phi_reduction_value(spec, enc, a, b))
