"""Complements of rings of S-integers and the witness pairs that certify them.

For S of odd size containing 2, pi = prod(S) and u a unit at S with
X^2 - X - u^2 irreducible mod every p in S, a rational x lies in some m_w
with w outside S exactly when there is (a, b) in Phi_u^S with

    a^2 x^2 g(a, b) / (1 - x - a^2 x^2)

integral at every prime where [a^2, b pi) ramifies. Here
g(a, b) = 16 a^4 / (1 + 4 a^2) - ((b - 1)^2 / b)^2.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arith import (
    Q,
    RationalLike,
    crt,
    factorize,
    is_prime,
    legendre,
    next_prime,
    quadratic_has_root_local,
    val,
)
from .errors import (
    CounterexampleFound,
    DegenerateDenominator,
    DegenerateInput,
    InvariantViolated,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .localglobal import QuatAlg, RamSet, delta
from .semilocal import PhiSpec, in_phi

DEFAULT_U_BUDGET = 100_000
DEFAULT_WITNESS_BUDGET = 20_000
DEFAULT_PHI_SAMPLES = 200


@dataclass(frozen=True)
class EnlargedParams:
    S_user: frozenset[int]
    S: frozenset[int]
    pi: Fraction
    u: Fraction
    phi_spec: PhiSpec = field(repr=False)

    def check(self) -> "EnlargedParams":
        if not (self.S_user | {2}) <= self.S:
            raise InvariantViolated("S must contain S_user and 2")
        if len(self.S) % 2 == 0:
            raise InvariantViolated(f"|S| = {len(self.S)} is even")
        if self.pi != math.prod(self.S):
            raise InvariantViolated("pi must be the product of S")
        for p in self.S:
            if val(self.u, p) != 0:
                raise InvariantViolated(f"u = {self.u} is not a unit at {p}")
            if not _residually_irreducible(self.u, p):
                raise InvariantViolated(f"X^2 - X - u^2 is reducible mod {p}")
        return self


def _residually_irreducible(u: Fraction, p: int) -> bool:
    # X^2 - X - u^2 over F_p; at 2 it is X^2 + X + 1 for odd u
    if p == 2:
        return val(u, 2) == 0
    n = u.numerator * pow(u.denominator, -1, p) % p
    return legendre(1 + 4 * n * n, p) == -1


def enlarge(S_user: Iterable[int], budget: int = DEFAULT_U_BUDGET) -> EnlargedParams:
    S_user = frozenset(int(p) for p in S_user)
    if not S_user:
        raise PreconditionViolated("S_user must be nonempty")
    for p in S_user:
        if not is_prime(p):
            raise PreconditionViolated(f"{p} is not prime")
    S = set(S_user) | {2}
    if len(S) % 2 == 0:
        q = 2
        while q in S:
            q = next_prime(q)
        S.add(q)
    S = frozenset(S)
    pi = Fraction(math.prod(S))
    for u in range(1, budget + 1, 2):
        U = Fraction(u)
        if all(u % p and _residually_irreducible(U, p) for p in S if p != 2):
            return EnlargedParams(S_user, S, pi, U, PhiSpec(S, U, pi)).check()
    raise SearchBudgetExceeded(f"no u for S = {sorted(S)} below {budget}")


# -- g ---------------------------------------------------------------------------------


def g_eval(a: RationalLike, b: RationalLike) -> Fraction:
    a, b = Q(a), Q(b)
    if (1 + 4 * a * a) * b == 0:
        raise DegenerateInput("g needs (1 + 4a^2) b != 0")
    return 16 * a**4 / (1 + 4 * a * a) - ((b - 1) ** 2 / b) ** 2


@dataclass(frozen=True)
class GReport:
    p: int
    clauses: tuple[str, ...]
    valuation: int | float


def g_property_check(a: RationalLike, b: RationalLike, p: int) -> GReport:
    """Check the valuation clauses of g at an odd prime; returns the applicable ones."""
    if p == 2 or not is_prime(p):
        raise PreconditionViolated(f"{p} is not an odd prime")
    a, b = Q(a), Q(b)
    g = g_eval(a, b)
    vg = val(g, p)
    c = 1 + 4 * a * a
    held = []
    if val(c, p) == 0 and val(b, p) == 0:
        if vg < 0:
            raise InvariantViolated(f"clause (1): v_{p}(g({a}, {b})) = {vg} < 0")
        held.append("1")
    if val(c, p) == 0 and val(b, p) != 0:
        if vg != -2 * abs(val(b, p)):
            raise InvariantViolated(f"clause (2): v_{p}(g) = {vg}, expected {-2 * abs(val(b, p))}")
        held.append("2")
    if not quadratic_has_root_local(a * a, p) and vg >= 0:
        if val(c, p) != 0 or val(b, p) != 0:
            raise InvariantViolated(f"clause (3): g integral at {p} but 1+4a^2 or b is not a unit")
        held.append("3")
    return GReport(p, tuple(held), vg)


# -- complement and witnesses ----------------------------------------------------------------


def in_complement(params: EnlargedParams, x: RationalLike) -> bool:
    """x lies in m_w for some prime w outside S (always true for 0)."""
    x = Q(x)
    if x == 0:
        return True
    n = abs(x.numerator)
    for p in params.S:
        while n % p == 0:
            n //= p
    return n != 1


@dataclass(frozen=True)
class WitnessPair:
    a: Fraction
    b: Fraction
    w: int
    delta_check: RamSet

    def summary(self) -> str:
        return f"w={self.w} a={self.a} b={self.b}"


def witness_algebra(params: EnlargedParams, a: Fraction, b: Fraction) -> QuatAlg:
    return QuatAlg(a * a, b * params.pi)


def _verify_witness(params: EnlargedParams, wp: WitnessPair) -> WitnessPair:
    if not in_phi(params.phi_spec, wp.a, wp.b):
        raise InvariantViolated(f"({wp.a}, {wp.b}) is not in Phi")
    d = delta(witness_algebra(params, wp.a, wp.b))
    if d.real_ramified or d.finite_places != params.S | {wp.w}:
        raise InvariantViolated(f"Delta = {d}, expected S + {{{wp.w}}}")
    if val(1 + 4 * wp.a**2, wp.w) != 0 or val(wp.b, wp.w) != 1:
        raise InvariantViolated(f"witness valuations wrong at {wp.w}")
    return wp


def _multiplier_candidates(avoid: frozenset[int], count: int):
    yield 1
    yield -1
    ell, made = 2, 0
    while made < count:
        ell = next_prime(ell)
        if ell in avoid:
            continue
        made += 1
        yield ell
        yield -ell


@lru_cache(maxsize=4096)
def _witness_for(params: EnlargedParams, w: int, budget: int) -> WitnessPair:
    M = int(params.pi)
    u = int(params.u)
    residues = [r for r in range(1, w) if legendre(1 + 4 * r * r, w) == -1]
    avoid = params.S | {w}
    tried = 0
    for k in range(budget):
        for r in residues:
            a0, mod = crt([(u, M), (r, w)])
            a = Fraction(a0 + k * mod)
            for m in _multiplier_candidates(avoid, 24):
                tried += 1
                if tried > budget:
                    raise SearchBudgetExceeded(f"no witness pair for w = {w} in {budget} candidates")
                b = Fraction(w * m)
                d = delta(witness_algebra(params, a, b))
                if not d.real_ramified and d.finite_places == avoid:
                    return _verify_witness(params, WitnessPair(a, b, w, d))
    raise SearchBudgetExceeded(f"no witness pair for w = {w}")


def construct_witness(params: EnlargedParams, x: RationalLike, w: int, budget: int = DEFAULT_WITNESS_BUDGET) -> WitnessPair:
    x = Q(x)
    w = int(w)
    if not is_prime(w) or w in params.S:
        raise PreconditionViolated(f"w = {w} must be a prime outside S")
    if val(x, w) < 1:
        raise PreconditionViolated(f"v_{w}({x}) = {val(x, w)} < 1")
    return _witness_for(params, w, budget)


def rhs_value(a: Fraction, b: Fraction, x: Fraction) -> Fraction:
    den = 1 - x - a * a * x * x
    if den == 0:
        raise DegenerateDenominator(f"1 - x - a^2 x^2 vanishes at x = {x}, a = {a}")
    return a * a * x * x * g_eval(a, b) / den


def rhs_predicate(params: EnlargedParams, a: RationalLike, b: RationalLike, x: RationalLike) -> bool:
    a, b, x = Q(a), Q(b), Q(x)
    value = rhs_value(a, b, x)
    if not in_phi(params.phi_spec, a, b):
        return False
    d = delta(witness_algebra(params, a, b))
    return all(val(value, p) >= 0 for p in d.finite_places)


def smallest_complement_prime(params: EnlargedParams, x: Fraction) -> int | None:
    """Smallest prime outside S dividing x (any prime outside S when x = 0)."""
    if x == 0:
        q = 2
        while q in params.S:
            q = next_prime(q)
        return q
    n = abs(x.numerator)
    for p in params.S:
        while n % p == 0:
            n //= p
    if n == 1:
        return None
    return min(factorize(n))


def sample_phi_pair(params: EnlargedParams, rng: random.Random, height: int = 100) -> tuple[Fraction, Fraction]:
    """A random (a, b) in Phi_u^S."""
    M = int(params.pi)

    def coprime(lo: int) -> int:
        while True:
            n = rng.randint(lo, height)
            if math.gcd(n, M) == 1:
                return n

    t = Fraction(rng.randint(-height, height), coprime(1))
    b = Fraction(coprime(1) * rng.choice((-1, 1)), coprime(1))
    return params.u + params.pi * t, b


@dataclass(frozen=True)
class LemmaReport:
    x: Fraction
    direction: str
    status: str
    witness: WitnessPair | None = None
    sampled: int = 0
    skipped: int = 0


def lemma_equivalence_check(
    params: EnlargedParams, x: RationalLike, samples: int = DEFAULT_PHI_SAMPLES, seed: int = 0
) -> LemmaReport:
    x = Q(x)
    if in_complement(params, x):
        w = smallest_complement_prime(params, x)
        wp = construct_witness(params, x, w)
        if not rhs_predicate(params, wp.a, wp.b, x):
            raise CounterexampleFound(f"witness {wp.summary()} fails the predicate at x = {x}")
        return LemmaReport(x, "forward", "verified", witness=wp)
    rng = random.Random(f"{seed}:{x}")
    done = skipped = 0
    while done < samples:
        a, b = sample_phi_pair(params, rng)
        try:
            hit = rhs_predicate(params, a, b, x)
        except DegenerateDenominator:
            skipped += 1
            continue
        if hit:
            raise CounterexampleFound(f"(a, b) = ({a}, {b}) satisfies the predicate at x = {x} outside the complement")
        done += 1
    return LemmaReport(x, "reverse", "consistent", sampled=done, skipped=skipped)
