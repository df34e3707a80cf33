"""Independent brute-force oracles over Z/p^k.

These never touch the closed-form symbol formulas; they only count
solutions of congruences, so they can referee :mod:`qdef.localglobal`.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernels
from .arith import Q, RationalLike, is_prime, residue, smallest_nonresidue, val
from .errors import ZeroInput


def _integral_square_class(x: Fraction, p: int) -> int:
    # multiply by a square to clear the denominator, then strip p^2 factors
    n = x.numerator * x.denominator
    while n % (p * p) == 0:
        n //= p * p
    return n


def hilbert_symbol_bruteforce(s: RationalLike, t: RationalLike, p: int, k: int | None = None) -> int:
    """+1 iff z^2 = s x^2 + t y^2 has a primitive solution modulo p^k.

    Default precision ``k = 2 v_p(4 s t) + 3`` after reducing s, t to
    integers with p-valuation at most 1.
    """
    s, t = Q(s), Q(t)
    if s == 0 or t == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    si, ti = _integral_square_class(s, p), _integral_square_class(t, p)
    if k is None:
        k = 2 * val(4 * si * ti, p) + 3
    N = p**k
    return 1 if _kernels.conic_solvable(si % N, ti % N, N) else -1


def quadratic_root_bruteforce(a: RationalLike, p: int, k: int | None = None) -> bool:
    """Whether X^2 - X - a has a root over Q_p, by root counting mod p^k.

    For ``v_p(a) = -v < 0`` substitute ``X = Y / p^m`` with ``m = ceil(v/2)``,
    giving the integral polynomial ``Y^2 - p^m Y - a p^(2m)``.
    """
    a = Q(a)
    if k is None:
        k = 2 * val(4, p) + 3
    N = p**k
    v = val(a, p)
    m = 0 if v >= 0 else (-v + 1) // 2
    b = -(p**m)
    c = residue(-a * Fraction(p) ** (2 * m), N)
    return _kernels.count_quadratic_roots(b % N, c, N) > 0


def square_class_representatives(p: int) -> list[int]:
    """Integers covering Q_p^x / (Q_p^x)^2: units times p^0 or p^1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    units = [1, 3, 5, 7] if p == 2 else [1, smallest_nonresidue(p)]
    return [u * p**e for e in (0, 1) for u in units]


def root_test_values(p: int) -> list[Fraction]:
    """Fixed exhaustive test set for the X^2 - X - a oracle at p.

    Units cover every residue class mod p (mod 32 at 2, so that v_2(1+4a)
    stays within the default brute-force precision), scaled by p^j.
    """
    units = range(1, 32, 2) if p == 2 else range(1, p)
    lo = -4 if p == 2 else -3
    return [Fraction(r) * Fraction(p) ** j for j in range(lo, 3) for r in units] + [Fraction(0)]
