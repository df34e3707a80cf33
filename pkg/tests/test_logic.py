import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qdef.errors import PreconditionViolated
from qdef.logic.ast import (
    Const,
    Eq,
    Exists,
    Inv,
    Mul,
    Not,
    One,
    Or,
    PrenexExistential,
    Var,
    Zero,
    contains_inv,
    eval_qf,
    quantifier_count,
)
from qdef.logic.emit import decide_exists3, emit_semilocal_exists3, find_semilocal_witness, quantifier_ledger
from qdef.logic.generate import random_formula, zero_hitting_assignments
from qdef.logic.rewrite import collapse_to_single_polynomial, eliminate_inverses
from qdef.logic.sexpr import parse, show, to_sexpr
from qdef.semilocal import in_semilocal, synthesize_semilocal

NAMES = ("x", "y", "z")


def test_inverse_of_zero_is_zero():
    phi = Eq(Inv(Var("x")), Zero())
    assert eval_qf(phi, {"x": F(0)})
    out = eliminate_inverses(phi)
    assert not contains_inv(out)
    assert eval_qf(out, {"x": F(0)}) and not eval_qf(out, {"x": F(2)})


def test_nested_inverses():
    phi = Eq(Inv(Mul(Var("x"), Inv(Var("y")))), Var("y"))
    out = eliminate_inverses(phi)
    assert not contains_inv(out)
    for x in (F(0), F(1), F(2), F(-1, 2)):
        for y in (F(0), F(1), F(3)):
            env = {"x": x, "y": y}
            assert eval_qf(out, env) == eval_qf(phi, env), env


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_elimination_preserves_truth(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, NAMES, term_depth=3, atoms=rng.randint(1, 3))
    out = eliminate_inverses(phi)
    assert not contains_inv(out)
    for env in zero_hitting_assignments(rng, phi, NAMES, 20):
        assert eval_qf(out, env) == eval_qf(phi, env)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_collapse_preserves_truth(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, NAMES, term_depth=2, atoms=rng.randint(1, 3), field=False, negation=False)
    single = collapse_to_single_polynomial(phi)
    for env in zero_hitting_assignments(rng, phi, NAMES, 30):
        assert eval_qf(single, env) == eval_qf(phi, env)


@settings(max_examples=100)
@given(st.integers(0, 10**9))
def test_sexpr_round_trip(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, NAMES, term_depth=3, atoms=3)
    assert parse(to_sexpr(phi)) == phi


def test_sexpr_quantifiers_and_constants():
    phi = Exists("y", Or(Eq(Mul(Const(F(-3, 4)), Var("y")), One()), Not(Eq(Var("x"), Zero()))))
    assert parse(to_sexpr(phi)) == phi
    assert "∃y" in show(phi)


def test_prenex_requires_quantifier_free_matrix():
    with pytest.raises(PreconditionViolated):
        PrenexExistential(("y",), Exists("z", Eq(Var("z"), Var("y"))))


@pytest.mark.parametrize("S", [{2}, {3}, {2, 3}, {5, 11}, {2, 3, 41, 43}])
def test_exists3_shape(S):
    defn = synthesize_semilocal(S)
    emitted = emit_semilocal_exists3(defn)
    assert emitted.quantifier_count == 3
    assert quantifier_count(emitted.formula()) == 3
    assert not contains_inv(emitted.matrix)


@pytest.mark.parametrize("S,x", [({2}, F(1, 3)), ({2}, F(5)), ({3, 7}, F(2, 5)), ({2}, F(0))])
def test_exists3_witness_checks_matrix(S, x):
    defn = synthesize_semilocal(S)
    emitted = emit_semilocal_exists3(defn)
    dec = decide_exists3(emitted, defn, x, 10**6)
    assert dec.value == in_semilocal(S, x) is True
    assert dec.status in ("found", "trivial")
    if dec.witness is not None:
        env = {"x": x} | dict(zip(emitted.bound_vars, dec.witness))
        assert eval_qf(emitted.matrix, env)


def test_exists3_negative():
    defn = synthesize_semilocal({2})
    emitted = emit_semilocal_exists3(defn)
    dec = decide_exists3(emitted, defn, F(1, 2))
    assert dec.value is False and dec.witness is None
    assert find_semilocal_witness(defn, F(1, 2)) is None


def test_ledger_counts():
    for S in ({2}, {5}, {2, 3}):
        led = quantifier_ledger(S)
        assert (led.paper, led.naive, led.merge_constructed) == (10, 12, False)
