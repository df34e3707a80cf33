"""Rational points on diagonal quadrics.

Solvability is decided with Hilbert symbols; points come from PARI's
``qfsolve``, which returns an LLL-reduced isotropic vector of an integral
quadratic form. Representations a1 x1^2 + a2 x2^2 + a3 x3^2 = D are read off
isotropic vectors of the quaternary form <a1, a2, a3, -D>.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import REAL, Q
from .localglobal import hilbert_symbol, relevant_primes


@lru_cache(maxsize=1)
def _pari():
    import cypari2

    return cypari2.Pari()


def represents_local(a: Fraction, b: Fraction, c: Fraction, place) -> bool:
    """Whether <a, b> represents c over the completion at ``place``."""
    return hilbert_symbol(a, b, place) == hilbert_symbol(c, -a * b, place)


def conic_solvable(a, b, c) -> bool:
    """Whether a X^2 + b Y^2 = c has a rational solution."""
    a, b, c = Q(a), Q(b), Q(c)
    if c == 0:
        r = -a * b
        return r > 0 and math.isqrt(r.numerator) ** 2 == r.numerator and math.isqrt(r.denominator) ** 2 == r.denominator
    s, t = a / c, b / c
    if hilbert_symbol(s, t, REAL) == -1:
        return False
    return all(hilbert_symbol(s, t, p) == 1 for p in relevant_primes(s, t))


def isotropic_vector(coeffs: Sequence) -> list[int] | None:
    """A nonzero integer vector on sum c_i X_i^2 = 0, or None if there is none."""
    coeffs = [Q(c) for c in coeffs]
    if any(c == 0 for c in coeffs):
        raise ValueError("diagonal entries must be nonzero")
    L = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * L) for c in coeffs]
    g = math.gcd(*ints)
    n = len(ints)
    pari = _pari()
    M = pari.matrix(n, n, [ints[i] // g if i == j else 0 for i in range(n) for j in range(n)])
    sol = pari.qfsolve(M)
    if sol.type() != "t_COL":
        return None
    return [int(v) for v in sol]


def conic_point(a, b, c) -> tuple[Fraction, Fraction] | None:
    """A rational (X, Y) with a X^2 + b Y^2 = c for c != 0, or None."""
    x = represent((a, b), c)
    return None if x is None else (x[0], x[1])


def represent(coeffs: Sequence, D) -> tuple[Fraction, ...] | None:
    """Rationals x_i with sum coeffs_i x_i^2 = D (D != 0), or None when D is not represented."""
    coeffs = [Q(c) for c in coeffs]
    D = Q(D)
    if D == 0:
        raise ValueError("D must be nonzero")
    vec = isotropic_vector(coeffs + [-D])
    if vec is None:
        return None
    *xs, w = vec
    if w != 0:
        return tuple(Fraction(x, w) for x in xs)
    # xs is isotropic for the form itself, which then represents every value:
    # with e a basis vector not orthogonal to xs, q(lam xs + e) = 2 lam b(xs, e) + q(e)
    i = next(i for i, x in enumerate(xs) if x != 0)
    pairing = coeffs[i] * xs[i]
    lam = (D - coeffs[i]) / (2 * pairing)
    out = [lam * x for x in xs]
    out[i] += 1
    return tuple(out)
