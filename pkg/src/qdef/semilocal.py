"""Semilocal rings over Q: oracles, defining parameters, units, product encodings, Phi sets.

A semilocal ring here is R_S = {x in Q : v_p(x) >= 0 for all p in S} for a
nonempty finite set S of primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (
    Q,
    RationalLike,
    is_prime,
    legendre,
    quadratic_has_root_local,
    smallest_nonresidue,
    val,
)
from .errors import InvariantViolated, PreconditionViolated, SearchBudgetExceeded, ZeroInput
from .localglobal import QuatAlg, construct_with_delta, delta, splits_over_quadratic

DEFAULT_A_BUDGET = 1_000_000


def _prime_set(S: Iterable[int]) -> frozenset[int]:
    S = frozenset(int(p) for p in S)
    if not S:
        raise PreconditionViolated("S must be nonempty")
    for p in S:
        if not is_prime(p):
            raise PreconditionViolated(f"{p} is not prime")
    return S


@dataclass(frozen=True)
class SemilocalSpec:
    S: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "S", _prime_set(self.S))

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.S))) + "}"


def as_spec(S) -> SemilocalSpec:
    return S if isinstance(S, SemilocalSpec) else SemilocalSpec(frozenset(S))


def in_semilocal(S, x: RationalLike) -> bool:
    x = Q(x)
    return all(val(x, p) >= 0 for p in as_spec(S).S)


def in_units(S, x: RationalLike) -> bool:
    """x is a unit of R_S, tested as x != 0 and x + 1/x in R_S."""
    x = Q(x)
    return x != 0 and in_semilocal(S, x + 1 / x)


# -- defining parameters ------------------------------------------------------------


@dataclass(frozen=True)
class SemilocalDefinition:
    """Parameters (Q, pi, a) for which

    R_S = {0} u {x : Q splits over the splitting field of X^2 - X - (a - 1/(pi x^2))}.
    """

    Q: QuatAlg
    pi: Fraction
    a: Fraction
    S: frozenset[int]

    def check(self) -> "SemilocalDefinition":
        d = delta(self.Q)
        if d.real_ramified:
            raise InvariantViolated(f"{self.Q} is ramified at the real place")
        if not self.S <= d.finite_places:
            raise InvariantViolated(f"S = {sorted(self.S)} is not inside Delta = {d}")
        for p in d.finite_places:
            if val(self.pi, p) != 1:
                raise InvariantViolated(f"v_{p}(pi) = {val(self.pi, p)}, expected 1")
            if val(self.a, p) < 0 or val(1 + 4 * self.a, p) != 0:
                raise InvariantViolated(f"a = {self.a} fails v(a) >= v(1+4a) = 0 at {p}")
            if quadratic_has_root_local(self.a, p) != (p in self.S):
                raise InvariantViolated(f"root condition for X^2 - X - {self.a} fails at {p}")
        return self

    @property
    def delta_places(self) -> frozenset[int]:
        return delta(self.Q).finite_places


def auxiliary_prime(S: frozenset[int]) -> int:
    """Smallest odd prime outside S."""
    q = 3
    while q in S:
        q += 2
        while not is_prime(q):
            q += 2
    return q


def _a_precision(p: int) -> int:
    return val(4, p) + 3 if p == 2 else 1


def synthesize_semilocal(S, budget: int = DEFAULT_A_BUDGET) -> SemilocalDefinition:
    spec = as_spec(S)
    plus = set(spec.S)
    if len(plus) % 2:
        plus.add(auxiliary_prime(spec.S))
    Q_ = construct_with_delta(plus)
    D = sorted(delta(Q_).finite_places)
    pi = Fraction(math.prod(D))
    modulus = math.prod(p ** _a_precision(p) for p in D)

    def good(r: int) -> bool:
        for p in D:
            c = 1 + 4 * r
            if p == 2:
                # 1 + 4r is an odd unit; it is a square in Q_2 iff it is 1 mod 8
                if (c % 8 == 1) != (p in spec.S):
                    return False
            else:
                ls = legendre(c, p)
                if ls == 0 or (ls == 1) != (p in spec.S):
                    return False
        return True

    for r in range(1, min(modulus, budget) + 1):
        if good(r):
            return SemilocalDefinition(Q_, pi, Fraction(r), spec.S).check()
    raise SearchBudgetExceeded(f"no parameter a for S = {spec} within {budget} residues")


def member_via_definition(defn: SemilocalDefinition, x: RationalLike) -> bool:
    x = Q(x)
    if x == 0:
        return True
    shifted = defn.a - 1 / (defn.pi * x * x)
    return splits_over_quadratic(defn.Q, 1, -shifted)


# -- product encodings ----------------------------------------------------------------


@dataclass(frozen=True)
class ProductEncoding:
    """F(X, Y) = sum_p alpha_p f_p*(X, Y)^(d_p) with v_p(F(x, y)) = d min(v_p(x), v_p(y)).

    ``polys[p]`` holds the monic coefficients of f_p, lowest degree first.
    """

    S: frozenset[int]
    polys: dict
    alphas: dict
    d: int

    def __hash__(self):
        return hash((self.S, self.d))

    def f_star(self, p: int, x: Fraction, y: Fraction) -> Fraction:
        coeffs = self.polys[p]
        n = len(coeffs) - 1
        return sum(Fraction(c) * x**i * y ** (n - i) for i, c in enumerate(coeffs))

    def d_p(self, p: int) -> int:
        return self.d // (len(self.polys[p]) - 1)

    def __call__(self, x: RationalLike, y: RationalLike) -> Fraction:
        x, y = Q(x), Q(y)
        return sum((self.alphas[p] * self.f_star(p, x, y) ** self.d_p(p) for p in sorted(self.S)), Fraction(0))

    def describe(self) -> dict:
        return {str(p): {"f": [str(c) for c in self.polys[p]], "alpha": str(self.alphas[p])} for p in sorted(self.S)}


def _residue_irreducible_quadratic(coeffs: Sequence[int], p: int) -> bool:
    c0, c1, _ = coeffs
    return all((x * x + c1 * x + c0) % p for x in range(p))


def build_encoding(S) -> ProductEncoding:
    spec = as_spec(S)
    polys, alphas = {}, {}
    for p in sorted(spec.S):
        polys[p] = (1, 1, 1) if p == 2 else (-smallest_nonresidue(p), 0, 1)
        alphas[p] = Fraction(math.prod(q for q in spec.S if q != p))
    enc = ProductEncoding(spec.S, polys, alphas, 2 ** len(spec.S))
    for p in spec.S:
        if not _residue_irreducible_quadratic(polys[p], p):
            raise InvariantViolated(f"f_{p} is reducible mod {p}")
        if val(alphas[p], p) != 0 or any(val(alphas[p], q) <= 0 for q in spec.S if q != p):
            raise InvariantViolated(f"alpha_{p} = {alphas[p]} has the wrong valuations")
    return enc


def encode_pair(enc: ProductEncoding, x: RationalLike, y: RationalLike) -> Fraction:
    return enc(x, y)


def encode_tuple(enc: ProductEncoding, xs: Sequence[RationalLike]) -> Fraction:
    if not xs:
        raise PreconditionViolated("need at least one element")
    acc = Q(xs[0])
    for x in xs[1:]:
        acc = enc(acc, x)
    return acc


# -- Phi_u^S ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiSpec:
    """Pairs (a, b) with b a unit at S and a = u mod every p in S."""

    S: frozenset[int]
    u: Fraction
    pi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "S", _prime_set(self.S))
        object.__setattr__(self, "u", Q(self.u))
        object.__setattr__(self, "pi", Q(self.pi))
        for p in self.S:
            if val(self.u, p) != 0:
                raise PreconditionViolated(f"u = {self.u} is not a unit at {p}")
            if val(self.pi, p) != 1:
                raise PreconditionViolated(f"pi = {self.pi} is not a uniformizer at {p}")


def in_phi(spec: PhiSpec, a: RationalLike, b: RationalLike) -> bool:
    a, b = Q(a), Q(b)
    return all(val(b, p) == 0 and val(a - spec.u, p) >= 1 for p in spec.S)


def phi_reduction_value(spec: PhiSpec, enc: ProductEncoding, a: RationalLike, b: RationalLike) -> Fraction:
    """F((b^2 + 1)/b, (a - u)/pi); lies in R_S iff (a, b) is in Phi."""
    a, b = Q(a), Q(b)
    if b == 0:
        raise ZeroInput("b = 0 is never in Phi")
    if enc.S != spec.S:
        raise PreconditionViolated("encoding and Phi spec use different prime sets")
    return enc((b * b + 1) / b, (a - spec.u) / spec.pi)

