import random
from fractions import Fraction as F

import pytest

from qdef import certificates
from qdef.arith import val
from qdef.errors import DegenerateInput, InvariantViolated, PreconditionViolated, QdefError
from qdef.logic.ast import quantifier_count
from qdef.semilocal import synthesize_semilocal
from qdef.universal import (
    construct_witness,
    enlarge,
    g_eval,
    g_property_check,
    in_complement,
    lemma_equivalence_check,
    rhs_predicate,
)


def test_enlarge_examples():
    p = enlarge({2})
    assert p.S == {2} and p.pi == 2 and p.u == 1
    p = enlarge({5})
    assert p.S == {2, 3, 5} and p.pi == 30
    p = enlarge({2, 3})
    assert p.S == {2, 3, 5} and p.pi == 30
    for S in ({2}, {5}, {2, 3}, {7}, {2, 3, 5}):
        assert len(enlarge(S).S) % 2 == 1


def test_g_examples():
    assert g_eval(0, 1) == 0
    assert g_eval(1, 2) == F(59, 20)
    assert g_eval(1, 3) == F(64, 45) and val(g_eval(1, 3), 3) == -2
    with pytest.raises(DegenerateInput):
        g_eval(1, 0)


def test_g_clauses():
    rep = g_property_check(1, 3, 3)
    assert "2" in rep.clauses and rep.valuation == -2
    assert "1" in g_property_check(1, 2, 3).clauses
    g_property_check(1, 1, 5)


def test_complement_examples():
    p = enlarge({2})
    assert in_complement(p, 3)
    assert not in_complement(p, F(1, 3))
    assert in_complement(p, 0)


@pytest.mark.parametrize("S_user", [{2}, {5}, {2, 3}])
def test_forward_witnesses(S_user):
    params = enlarge(S_user)
    rng = random.Random(1)
    done = 0
    while done < 15:
        x = F(rng.randint(-300, 300), rng.randint(1, 300))
        if not x or not in_complement(params, x):
            continue
        done += 1
        rep = lemma_equivalence_check(params, x)
        assert rep.status == "verified", (x, rep)


def test_witness_for_three():
    params = enlarge({2})
    wp = construct_witness(params, 3, 3)
    assert rhs_predicate(params, wp.a, wp.b, 3)


@pytest.fixture(scope="module")
def cert23():
    return certificates.assemble_certificate({2, 3})


def test_certificate_decisions(cert23):
    for x in (0, 1, F(1, 6), F(5, 12), F(7, 2), F(1, 5), F(-3, 35), 10**6 + 3, F(1, 2**9 * 3**4)):
        assert cert23.decide(x) == certificates.in_s_integers({2, 3}, x), x


def test_certificate_formulas(cert23):
    assert cert23.complement_formula.quantifier_count == cert23.ledger.naive == 12
    assert quantifier_count(cert23.universal_formula) == 12


def test_certificate_round_trip(cert23):
    text = cert23.dumps()
    assert certificates.load_universal(text).dumps() == text
    assert certificates.load_any(text).S_user == {2, 3}


def test_semilocal_certificate_tamper():
    text = certificates.dump_semilocal(synthesize_semilocal({3}))
    assert certificates.dump_semilocal(certificates.load_semilocal(text)) == text
    with pytest.raises(InvariantViolated):
        certificates.load_semilocal(text.replace('"pi": "', '"pi": "1', 1))
    with pytest.raises(PreconditionViolated):
        certificates.load_any(certificates.dumps({"kind": "nonsense"}))


def test_invalid_semilocal_body_rejected():
    body = certificates.semilocal_body(synthesize_semilocal({3}))
    body["a"] = "1/3"
    with pytest.raises(QdefError):
        certificates.load_semilocal(certificates.dumps(body))
