from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qdef import _kernels
from qdef.arith import REAL, primes_up_to, support
from qdef.errors import PreconditionViolated
from qdef.localglobal import (
    QuatAlg,
    construct_with_delta,
    delta,
    hilbert_symbol,
    in_poonen_set,
    is_nonreal,
    is_split,
    nonsplit_local_invariant,
    poonen_decompose,
    splits_over_quadratic,
)
from qdef.oracles import hilbert_symbol_bruteforce, square_class_representatives

nonzero = st.fractions(max_denominator=500).filter(lambda x: x != 0 and abs(x.numerator) <= 10**4)
P = QuatAlg(F(-1, 2), F(3))


def test_symbol_examples():
    assert hilbert_symbol(1, 7, 5) == 1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, 3, 3) == -1
    assert hilbert_symbol(-1, -1, REAL) == -1


@given(nonzero, nonzero)
def test_reciprocity(s, t):
    prod = hilbert_symbol(s, t, REAL)
    for p in support(s) | support(t) | {2}:
        prod *= hilbert_symbol(s, t, p)
    assert prod == 1


@given(nonzero, nonzero, nonzero, st.sampled_from([REAL, 2, 3, 5, 7]))
def test_symbol_bimultiplicative(s, s2, t, place):
    assert hilbert_symbol(s * s2, t, place) == hilbert_symbol(s, t, place) * hilbert_symbol(s2, t, place)
    assert hilbert_symbol(s, t, place) == hilbert_symbol(t, s, place)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_symbol_matches_bruteforce(p, backend):
    reps = square_class_representatives(p)
    for s in reps:
        for t in reps:
            assert hilbert_symbol(s, t, p) == hilbert_symbol_bruteforce(s, t, p), (s, t)


def test_kernel_backends_agree():
    if not _kernels.HAVE_NUMBA:
        pytest.skip("numba not importable")
    for N in (8, 27, 125, 2**9, 3**6):
        for s in range(1, N, max(1, N // 13)):
            for t in range(1, N, max(1, N // 11)):
                assert _kernels.conic_solvable_numba(s, t, N) == _kernels.conic_solvable_numpy(s, t, N)
            assert _kernels.count_quadratic_roots_numba(1, s, N) == _kernels.count_quadratic_roots_numpy(1, s, N)


def test_delta_examples():
    d = delta(QuatAlg(0, 1))
    assert d.finite_places == frozenset() and not d.real_ramified
    d = delta(P)
    assert d.finite_places == {2, 3} and not d.real_ramified
    d = delta(QuatAlg(F(-1, 2), -1))
    assert d.finite_places == {2} and d.real_ramified


def test_split_and_nonreal():
    assert is_split(QuatAlg(0, 1))
    assert not is_split(P)
    assert not is_split(QuatAlg(F(-1, 2), -1))
    assert is_nonreal(P) and not is_nonreal(QuatAlg(F(-1, 2), -1))


@settings(max_examples=200)
@given(st.fractions(max_denominator=300), nonzero)
def test_delta_parity(a, b):
    if 1 + 4 * a == 0:
        return
    d = delta(QuatAlg(a, b))
    assert (len(d.finite_places) + d.real_ramified) % 2 == 0


def test_splits_over_quadratic_examples():
    assert splits_over_quadratic(QuatAlg(0, 1), 3, 7)
    assert splits_over_quadratic(P, 0, 1)
    assert not splits_over_quadratic(P, 0, -1)


def test_poonen_set_examples():
    assert in_poonen_set(QuatAlg(0, 1), 5)
    assert in_poonen_set(P, 0)
    assert not in_poonen_set(P, 2)


def test_poonen_decompose_examples():
    s, t = poonen_decompose(P, 0)
    assert s + t == 0 and in_poonen_set(P, s) and in_poonen_set(P, t)
    s, t = poonen_decompose(P, F(1, 5))
    assert s + t == F(1, 5) and in_poonen_set(P, s) and in_poonen_set(P, t)
    with pytest.raises(PreconditionViolated):
        poonen_decompose(P, F(1, 2))


@pytest.mark.parametrize("S", [(), (2, 3), (3, 5), (2, 7), (5, 13), (2, 3, 5, 7)])
def test_construct_with_delta(S):
    A = construct_with_delta(S)
    d = delta(A)
    assert d.finite_places == frozenset(S) and not d.real_ramified


def test_construct_rejects_odd():
    with pytest.raises(PreconditionViolated):
        construct_with_delta((3,))


def test_nonsplit_invariant_examples():
    assert "a" in nonsplit_local_invariant(P, 3).clauses
    assert "c" in nonsplit_local_invariant(P, 2).clauses
    with pytest.raises(PreconditionViolated):
        nonsplit_local_invariant(QuatAlg(0, 1), 2)


@pytest.mark.parametrize("p", primes_up_to(13))
def test_square_classes_count(p):
    assert len(square_class_representatives(p)) == (8 if p == 2 else 4)
