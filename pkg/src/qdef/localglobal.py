"""Hilbert symbols, quaternion algebras [a, b) over Q and their ramification.

[a, b) has generators u, v with u^2 - u = a, v^2 = b, uv + vu = v. Putting
u' = 2u - 1 gives u'^2 = 1 + 4a and u'v = -vu', so [a, b) is the standard
symbol algebra (1 + 4a, b) and every local question reduces to a Hilbert
symbol. The algebra is never materialized.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import (
    REAL,
    Place,
    PlaceLike,
    Q,
    RationalLike,
    as_place,
    height,
    is_prime,
    is_rational_square,
    is_square_local,
    legendre,
    residue,
    support,
    unit_part,
    val,
)
from .errors import (
    BudgetExceeded,
    InvariantViolated,
    OddCardinality,
    PreconditionViolated,
    RealRamified,
    SearchBudgetExceeded,
    ZeroInput,
)

DEFAULT_CONSTRUCT_BUDGET = 100_000


def hilbert_symbol(s: RationalLike, t: RationalLike, place: PlaceLike) -> int:
    """(s, t)_v: +1 iff z^2 = s x^2 + t y^2 has a nontrivial solution over Q_v."""
    s, t = Q(s), Q(t)
    if s == 0 or t == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    place = as_place(place)
    if place.is_real:
        return -1 if (s < 0 and t < 0) else 1
    p = place.p
    alpha, beta = val(s, p), val(t, p)
    if p == 2:
        u = residue(unit_part(s, 2), 8)
        w = residue(unit_part(t, 2), 8)
        eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
        om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    u = residue(unit_part(s, p), p)
    w = residue(unit_part(t, p), p)
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** (beta % 2) * legendre(w, p) ** (alpha % 2)


def relevant_primes(*xs: Fraction) -> frozenset[int]:
    """Primes where a symbol of the given nonzero arguments can be -1."""
    out = {2}
    for x in xs:
        out |= support(x)
    return frozenset(out)


@dataclass(frozen=True)
class RamSet:
    finite_places: frozenset[int]
    real_ramified: bool

    def __post_init__(self):
        if (len(self.finite_places) + self.real_ramified) % 2:
            raise InvariantViolated(f"odd ramification set {self}: Hilbert reciprocity fails")

    @property
    def places(self) -> list[Place]:
        out = [Place.finite(p) for p in sorted(self.finite_places)]
        return out + [REAL] if self.real_ramified else out

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.places) + "}"


@dataclass(frozen=True)
class QuatAlg:
    """The quaternion algebra [a, b)_Q, with cached standard pair (1 + 4a, b)."""

    a: Fraction
    b: Fraction
    s: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "s", 1 + 4 * self.a)
        if self.s * self.b == 0:
            raise PreconditionViolated("[a, b) needs (1 + 4a) b != 0")

    @classmethod
    def from_standard(cls, s: RationalLike, b: RationalLike) -> "QuatAlg":
        return cls((Q(s) - 1) / 4, Q(b))

    def __str__(self) -> str:
        return f"[{self.a}, {self.b})"


@lru_cache(maxsize=1 << 14)
def _delta(s: Fraction, b: Fraction) -> RamSet:
    ram = frozenset(p for p in relevant_primes(s, b) if hilbert_symbol(s, b, p) == -1)
    return RamSet(ram, hilbert_symbol(s, b, REAL) == -1)


def delta(Q_: QuatAlg) -> RamSet:
    """Places where the algebra does not split."""
    return _delta(Q_.s, Q_.b)


def is_split(Q_: QuatAlg) -> bool:
    d = delta(Q_)
    return not d.finite_places and not d.real_ramified


def is_nonreal(Q_: QuatAlg) -> bool:
    return hilbert_symbol(Q_.s, Q_.b, REAL) == 1


def _require_nonreal(Q_: QuatAlg) -> RamSet:
    d = delta(Q_)
    if d.real_ramified:
        raise RealRamified(f"{Q_} is ramified at the real place")
    return d


def splits_over_quadratic(Q_: QuatAlg, c: RationalLike, d: RationalLike) -> bool:
    """Whether Q splits over the splitting field of X^2 - cX + d.

    A nonreal algebra splits over a quadratic field L iff every finite
    ramified prime of Q stays inert or ramifies in L, i.e. the discriminant
    is a non-square in Q_p. A rational root (including a double root) means
    L = Q, and then the answer is whether Q itself splits.
    """
    ram = _require_nonreal(Q_)
    disc = Q(c) ** 2 - 4 * Q(d)
    if is_rational_square(disc):
        return not ram.finite_places
    return all(not is_square_local(disc, p) for p in ram.finite_places)


def in_poonen_set(Q_: QuatAlg, x: RationalLike) -> bool:
    """x in S(Q): x is the reduced trace of a non-central element of norm 1."""
    return splits_over_quadratic(Q_, x, 1)


def rationals_by_height(limit: int | None = None):
    """0, then every rational ordered by height, numerator, sign."""
    yield Fraction(0)
    for h in itertools.count(1):
        if limit is not None and h > limit:
            return
        row = set()
        for other in range(0, h + 1):
            for n, d in ((h, other), (other, h)):
                if d >= 1 and math.gcd(n, d) == 1 and max(n, d) == h and n > 0:
                    row.add(Fraction(n, d))
        for x in sorted(row):
            yield x
            yield -x


def poonen_decompose(Q_: QuatAlg, x: RationalLike, height_budget: int = 10**4) -> tuple[Fraction, Fraction]:
    """Split x as s + t with s, t in S(Q), searching s by increasing height."""
    x = Q(x)
    ram = _require_nonreal(Q_)
    for p in ram.finite_places:
        if val(x, p) < 0:
            raise PreconditionViolated(f"{x} is not {p}-integral")
    for s in rationals_by_height(height_budget):
        if in_poonen_set(Q_, s) and in_poonen_set(Q_, x - s):
            return s, x - s
    raise BudgetExceeded(f"no decomposition of {x} with summand height <= {height_budget}")


def construct_with_delta(S, budget: int = DEFAULT_CONSTRUCT_BUDGET) -> QuatAlg:
    """A nonreal algebra ramified exactly at the finite primes in S.

    Searches standard pairs (s, b) with b a positive divisor of prod(S) and
    s a nonzero integer, ordered by (|s|, b, sign). Each candidate is checked with :func:`delta`, so the
    search can only fail by exhausting its budget, never by a wrong answer.
    """
    S = frozenset(int(p) for p in S)
    for p in S:
        if not is_prime(p):
            raise PreconditionViolated(f"{p} is not prime")
    if len(S) % 2:
        raise OddCardinality(f"|S| = {len(S)} is odd")
    if not S:
        return QuatAlg(Fraction(0), Fraction(1))
    divisors = sorted(math.prod(c) for r in range(1, len(S) + 1) for c in itertools.combinations(sorted(S), r))
    tried = 0
    for n in itertools.count(1):
        for b in divisors:
            for s in (-n, n):
                tried += 1
                if tried > budget:
                    raise SearchBudgetExceeded(f"no algebra with Delta = {sorted(S)} in {budget} candidates")
                cand = QuatAlg.from_standard(s, b)
                d = delta(cand)
                if d.finite_places == S and not d.real_ramified:
                    return cand


@dataclass(frozen=True)
class NonsplitReport:
    p: int
    clauses: tuple[str, ...]


def nonsplit_local_invariant(Q_: QuatAlg, p: int) -> NonsplitReport:
    """Check the necessary local conditions at a ramified prime p.

    v_p(a) <= 0, and one of: (a) v_p(b) odd; (b) p odd and v_p(1+4a) odd;
    (c) p = 2 and v_2(a) < 0.
    """
    if p not in delta(Q_).finite_places:
        raise PreconditionViolated(f"{p} is not in Delta({Q_})")
    if not val(Q_.a, p) <= 0:
        raise InvariantViolated(f"v_{p}(a) = {val(Q_.a, p)} > 0 at a ramified prime")
    held = []
    if val(Q_.b, p) % 2 == 1:
        held.append("a")
    if p != 2 and val(Q_.s, p) % 2 == 1:
        held.append("b")
    if p == 2 and val(Q_.a, 2) < 0:
        held.append("c")
    if not held:
        raise InvariantViolated(f"no clause holds for {Q_} at {p}")
    return NonsplitReport(p, tuple(held))


def algebra_height(Q_: QuatAlg) -> int:
    return max(height(Q_.a), height(Q_.b))
