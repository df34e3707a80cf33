"""Exact arithmetic over the rationals: valuations, factorization, CRT, Hensel.

Rationals are :class:`fractions.Fraction` throughout. The valuation of zero
is ``math.inf`` (a first-class value, never an error), so ``min`` and ``>``
comparisons against integers behave as valuation theory expects.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import FactorizationBudgetExceeded, HypothesisViolated, PreconditionViolated, ZeroInput

INF = math.inf

RationalLike = Union[int, Fraction, str]

TRIAL_DIVISION_BOUND = 10**6
DEFAULT_RHO_BUDGET = 200_000


def Q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact rational (accepts ints, Fractions, ``"a/b"``)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Fraction(x)


def height(x: RationalLike) -> int:
    x = Q(x)
    return max(abs(x.numerator), x.denominator)


# -- places -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime ``p`` or the real place (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Place":
        if text.lower() in ("inf", "real", "oo", "infinity", "r"):
            return REAL
        return cls.finite(int(text))

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


REAL = Place(None)

PlaceLike = Union[Place, int]


def _prime_of(place: PlaceLike) -> int:
    if isinstance(place, Place):
        if place.p is None:
            raise ValueError("expected a finite place")
        return place.p
    return int(place)


def as_place(place: PlaceLike) -> Place:
    return place if isinstance(place, Place) else Place.finite(place)


# -- primes and factorization -------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 (first 13 prime bases)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES if n < 3_317_044_064_679_887_385_961_981 else _MR_BASES + (43, 47, 53, 59, 61, 67, 71)
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    q = max(n + 1, 2)
    while not is_prime(q):
        q += 1
    return q


def _rho(n: int, budget: int) -> int:
    # Brent's variant; deterministic seed sequence so results are reproducible.
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent >= budget:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationBudgetExceeded(f"could not split {n} within {budget} rho iterations")


@lru_cache(maxsize=1 << 16)
def _factor_positive(n: int, rho_budget: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    bound = TRIAL_DIVISION_BOUND
    for p in primes_up_to(bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < bound * bound or is_prime(m):
            # every factor below the trial bound is gone, so m is prime here
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho(m, rho_budget)
        stack.extend((d, m // d))
    return tuple(sorted(out.items()))


def factorize(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``; ``{}`` for ``|n| = 1``."""
    n = abs(int(n))
    if n == 0:
        raise ZeroInput("cannot factor 0")
    return dict(_factor_positive(n, rho_budget))


def support(x: RationalLike, rho_budget: int = DEFAULT_RHO_BUDGET) -> frozenset[int]:
    """Primes at which ``x`` has nonzero valuation."""
    x = Q(x)
    if x == 0:
        raise ZeroInput("support of 0 is undefined")
    return frozenset(factorize(x.numerator, rho_budget)) | frozenset(factorize(x.denominator, rho_budget))


# -- valuations -----------------------------------------------------------------


def _vint(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def val(x: RationalLike, p: PlaceLike) -> int | float:
    """p-adic valuation; ``INF`` for zero."""
    x = Q(x)
    p = _prime_of(p)
    if x == 0:
        return INF
    return _vint(x.numerator, p) - _vint(x.denominator, p)


def unit_part(x: Fraction, p: int) -> Fraction:
    """``x / p**val(x, p)`` for nonzero ``x``."""
    v = val(x, p)
    return x / Fraction(p) ** v


def residue(x: RationalLike, m: int) -> int:
    """Image in Z/m of a rational whose denominator is prime to ``m``."""
    x = Q(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    return next(r for r in range(2, p) if legendre(r, p) == -1)


def is_rational_square(x: RationalLike) -> bool:
    x = Q(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(x: RationalLike) -> Fraction:
    x = Q(x)
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


def is_square_local(c: RationalLike, place: PlaceLike) -> bool:
    """Whether ``c`` is a square in the completion of Q at ``place``."""
    c = Q(c)
    if c == 0:
        return True
    if isinstance(place, Place) and place.is_real:
        return c > 0
    p = _prime_of(place)
    v = val(c, p)
    if v % 2:
        return False
    u = unit_part(c, p)
    if p == 2:
        return residue(u, 8) == 1
    return legendre(residue(u, p), p) == 1


def quadratic_has_root_local(a: RationalLike, place: PlaceLike) -> bool:
    """Whether X^2 - X - a has a root over the completion at ``place``.

    In characteristic 0 the discriminant is 1 + 4a, so this reduces to a
    square-class test.
    """
    return is_square_local(1 + 4 * Q(a), place)


# -- CRT and weak approximation ---------------------------------------------------


def crt(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``(r, m)`` pairs with pairwise coprime moduli into ``(r, M)``."""
    r, M = 0, 1
    for ri, mi in residues:
        ri %= mi
        # x = r + M*t, need r + M t = ri mod mi
        t = (ri - r) * pow(M, -1, mi) % mi
        r, M = r + M * t, M * mi
    return r % M, M


def weak_approx(targets: Sequence[tuple[int, RationalLike]], gamma: int) -> Fraction:
    """Return x with ``val(x - a_p, p) > gamma`` for every ``(p, a_p)``.

    Writes ``x = y / D`` where ``D`` clears the polar parts of the targets and
    picks the smallest nonnegative ``y`` by CRT.
    """
    primes = [int(p) for p, _ in targets]
    if len(set(primes)) != len(primes):
        raise PreconditionViolated("primes must be pairwise distinct")
    for p in primes:
        if not is_prime(p):
            raise PreconditionViolated(f"{p} is not prime")
    pole = {int(p): max(0, -val(a, int(p))) for p, a in targets}
    D = math.prod(p**k for p, k in pole.items())
    congruences = []
    for p, a in targets:
        p = int(p)
        e = gamma + 1 + pole[p]
        if e <= 0:
            continue
        m = p**e
        congruences.append((residue(D * Q(a), m), m))
    y, _ = crt(congruences)
    return Fraction(y, D)


# -- Hensel lifting ---------------------------------------------------------------


@dataclass(frozen=True)
class LocalPolynomial:
    """A polynomial with p-integral coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Q(c) for c in self.coefficients))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for c in self.coefficients:
            if val(c, self.p) < 0:
                raise PreconditionViolated(f"coefficient {c} is not {self.p}-integral")

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "LocalPolynomial":
        return LocalPolynomial(tuple(i * c for i, c in enumerate(self.coefficients))[1:] or (Fraction(0),), self.p)


def hensel_lift(f: LocalPolynomial, a0: RationalLike, N: int) -> Fraction:
    """Newton-lift an approximate root to ``val(f(a), p) >= N``.

    Requires ``val(f(a0)) > 2 val(f'(a0))``. The result also satisfies
    ``val(a - a0) > val(f'(a0))``. Iterates are truncated to an integer
    representative modulo ``p**(N + e + 1)`` where ``e = val(f'(a0))``.
    """
    a0 = Q(a0)
    p = f.p
    if N < 1:
        raise ValueError("N must be positive")
    if val(a0, p) < 0:
        raise HypothesisViolated(f"a0 = {a0} is not {p}-integral")
    df = f.derivative()
    e = val(df(a0), p)
    if not val(f(a0), p) > 2 * e:
        raise HypothesisViolated(f"v(f(a0)) = {val(f(a0), p)} is not > 2 v(f'(a0)) = {2 * e}")
    a = a0
    if val(f(a), p) >= N:
        return a
    modulus = p ** (N + e + 1)
    while val(f(a), p) < N:
        a = Fraction(residue(a - f(a) / df(a), modulus))
    return a
