"""Emission of defining formulas and their evaluation.

The semilocal definition x ∈ R_S is the field formula

    x ≐ 0 ∨ ∃y1 y2 y3 . E(y1, y2, y3) ≐ −a + (π·x·x)⁻¹

with E(y1, y2, y3) = y1² + y1(1 − 2y1) − A(1 − 2y1)² − B(y2² + y2·y3 − A·y3²)
for Q = [A, B). After inverse elimination, absorption and collapse this is a
single equation P(x, y1, y2, y3) ≐ 0 under three existential quantifiers.

The trace-norm equation also has the solution 2y1 = 1, y2 = y3 = 0 whenever
1 + 4(a − 1/(πx²)) = 0. That never happens for valid parameters: at any prime
of Delta(Q) the valuation of πx² is odd while that of 4/(1 + 4a) is even.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..arith import Q, RationalLike, height
from ..conics import represent
from ..semilocal import ProductEncoding, SemilocalDefinition, member_via_definition
from .ast import (
    And,
    Const,
    Eq,
    Formula,
    Inv,
    Not,
    One,
    Or,
    PrenexExistential,
    Term,
    Var,
    Zero,
    as_term,
    eval_qf,
    forall,
    substitute,
)
from .poly import Poly
from .rewrite import absorb_guarded, collapse_poly, eliminate_inverses

X = Var("x")
SEMILOCAL_BOUND = ("y1", "y2", "y3")
DEFAULT_WITNESS_HEIGHT = 1000


def trace_norm_lhs(A: Term, B: Term, c: Term, q1: Term, q2: Term, q3: Term) -> Term:
    """q1² + q1(c − 2q1) − A(c − 2q1)² − B(q2² + q2·q3 − A·q3²)."""
    two_q1 = Const(2) * q1
    t = c - two_q1
    return q1 * q1 + q1 * t - A * (t * t) - B * (q2 * q2 + q2 * q3 - A * (q3 * q3))


def semilocal_field_formula(defn: SemilocalDefinition) -> Formula:
    y1, y2, y3 = map(Var, SEMILOCAL_BOUND)
    E = trace_norm_lhs(as_term(defn.Q.a), as_term(defn.Q.b), One(), y1, y2, y3)
    rhs = as_term(-defn.a) + Inv(as_term(defn.pi) * (X * X))
    return Or(Eq(X, Zero()), Eq(E, rhs))


@lru_cache(maxsize=512)
def _semilocal_poly(defn: SemilocalDefinition) -> Poly:
    ring = eliminate_inverses(semilocal_field_formula(defn), absorb=True)
    return collapse_poly(absorb_guarded(ring)).normalized()


def emit_semilocal_exists3(defn: SemilocalDefinition) -> PrenexExistential:
    """∃y1 y2 y3 (P(x, y1, y2, y3) ≐ 0) defining R_S."""
    P = _semilocal_poly(defn)
    return PrenexExistential(SEMILOCAL_BOUND, Eq(P.to_term(), Zero()), free=("x",))


def instantiate(prenex: PrenexExistential, x_term: Term, bound: tuple[str, ...]) -> Formula:
    """The matrix with x replaced by ``x_term`` and bound variables renamed."""
    mapping = {"x": x_term} | {old: Var(new) for old, new in zip(prenex.bound_vars, bound)}
    return substitute(prenex.matrix, mapping)


# -- deciding the emitted formula -------------------------------------------------------------


@dataclass(frozen=True)
class Exists3Decision:
    x: Fraction
    value: bool
    witness: tuple[Fraction, Fraction, Fraction] | None = None
    witness_height: int | None = None
    status: str = "negative"


# Denominator layouts tried by the witness search: (slot of pi, slot of the
# numerator of x), slots 0, 1, 2 scaling t, v, y3 and 3 meaning unscaled.
WITNESS_LAYOUTS = ((2, 0), (0, 0), (3, 3), (0, 1), (1, 0))


def find_semilocal_witness(
    defn: SemilocalDefinition, x: RationalLike, height_budget: int = DEFAULT_WITNESS_HEIGHT
) -> tuple[tuple[Fraction, Fraction, Fraction], int] | None:
    """Search (y1, y2, y3) solving the matrix at x, preferring small height.

    With t = 1 − 2y1, v = 2y2 + y3 and s = 1 + 4A the equation reads
    s t² + B v² − sB y3² = 1 + 4a − 4/(πx²). The denominators of D have to
    show up in the coordinates, so each layout pre-divides t, v, y3 by π or
    by the numerator of x before asking for a small isotropic vector.
    Returns the lowest-height witness seen with its height, stopping early
    once one fits the budget.
    """
    x = Q(x)
    if x == 0:
        return (Fraction(0), Fraction(0), Fraction(0)), 0
    s, B = defn.Q.s, defn.Q.b
    D = 1 + 4 * defn.a - 4 / (defn.pi * x * x)
    base = (s, B, -s * B)
    best = None
    for slot_pi, slot_n in WITNESS_LAYOUTS:
        den = [1, 1, 1, 1]
        den[slot_pi] *= defn.pi
        den[slot_n] *= abs(x.numerator)
        pt = represent([c / den[i] ** 2 for i, c in enumerate(base)], D)
        if pt is None:
            continue
        t, v, z = (c / den[i] for i, c in enumerate(pt))
        w = ((1 - t) / 2, (v - z) / 2, z)
        h = max(height(c) for c in w)
        if best is None or h < best[1]:
            best = (w, h)
        if h <= height_budget:
            break
    return best


def decide_exists3(
    emitted: PrenexExistential,
    defn: SemilocalDefinition,
    x: RationalLike,
    height_budget: int = DEFAULT_WITNESS_HEIGHT,
    search: bool = True,
) -> Exists3Decision:
    """Truth of the emitted formula at x, decided locally, with a checked witness when one is found."""
    x = Q(x)
    value = member_via_definition(defn, x)
    if not value:
        return Exists3Decision(x, False)
    if not search:
        return Exists3Decision(x, True, status="unsearched")
    found = find_semilocal_witness(defn, x, height_budget)
    if found is None:
        return Exists3Decision(x, True, status="not-found")
    w, h = found
    env = {"x": x} | dict(zip(emitted.bound_vars, w))
    if not eval_qf(emitted.matrix, env):
        raise AssertionError(f"witness {w} does not satisfy the emitted matrix at x = {x}")
    status = "trivial" if x == 0 else ("found" if h <= height_budget else "over-budget")
    return Exists3Decision(x, True, w, h, status)


# -- quantifier bookkeeping ----------------------------------------------------------------


@dataclass(frozen=True)
class QuantifierLedger:
    S_user: tuple[int, ...]
    blocks: tuple[tuple[str, int, int], ...]
    merge_constructed: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def paper(self) -> int:
        return sum(b[1] for b in self.blocks)

    @property
    def naive(self) -> int:
        return sum(b[2] for b in self.blocks)

    @property
    def universal(self) -> int:
        # a universal definition of the ring uses as many quantifiers as the
        # existential definition of its complement
        return self.naive

    def as_dict(self) -> dict:
        return {
            "S_user": list(self.S_user),
            "paper": self.paper,
            "naive": self.naive,
            "merge_constructed": self.merge_constructed,
            "blocks": [{"block": n, "paper": p, "naive": m} for n, p, m in self.blocks],
            "universal": self.universal,
        }


def quantifier_ledger(S_user) -> QuantifierLedger:
    return QuantifierLedger(
        tuple(sorted(int(p) for p in S_user)),
        (
            ("witness pair a, b", 2, 2),
            ("Phi membership", 3, 3),
            ("semilocal ring at Delta[a^2, b pi) as a sum of two trace sets", 6, 7),
            ("shared quantifier from merging", -1, 0),
        ),
        merge_constructed=False,
        notes=(
            "naive Delta block: one summand variable plus three per trace-set membership",
            "the merged count relies on a construction that is not built here",
        ),
    )


# -- complement and universal formulas ---------------------------------------------------------

COMPLEMENT_BOUND = ("a", "b", "p1", "p2", "p3", "y", "s1", "s2", "s3", "t1", "t2", "t3")


def encoding_term(enc: ProductEncoding, X_: Term, Y_: Term) -> Term:
    acc = None
    for p in sorted(enc.S):
        coeffs = enc.polys[p]
        n = len(coeffs) - 1
        f = None
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            mono = as_term(c)
            for _ in range(i):
                mono = mono * X_
            for _ in range(n - i):
                mono = mono * Y_
            f = mono if f is None else f + mono
        term = as_term(enc.alphas[p]) * (f ** enc.d_p(p))
        acc = term if acc is None else acc + term
    return acc


def g_term(a: Term, b: Term) -> Term:
    frac = (b - One()) * (b - One()) * Inv(b)
    return Const(16) * (a * a * a * a) * Inv(One() + Const(4) * (a * a)) - frac * frac


def emit_complement_exists(
    S_user,
    pi: Fraction,
    u: Fraction,
    phi_defn: SemilocalDefinition,
    enc: ProductEncoding,
    extra: dict[int, SemilocalDefinition],
) -> PrenexExistential:
    """Field-signature ∃12 definition of the union of m_v over primes v outside S_user.

    ``phi_defn`` defines R_S for the enlarged S and is applied to the product
    encoding of ((b²+1)/b, (a−u)/π); ``extra`` maps each prime of S outside
    S_user to a definition of its valuation ring, used on x/p.
    """
    a, b = Var("a"), Var("b")
    p_vars = ("p1", "p2", "p3")
    s3 = emit_semilocal_exists3(phi_defn)
    phi_value = encoding_term(enc, (b * b + One()) * Inv(b), (a - as_term(u)) * as_term(1 / Q(pi)))
    phi_part = And(instantiate(s3, phi_value, p_vars), Not(Eq(b, Zero())))
    A, Bq = a * a, b * as_term(pi)
    z = a * a * (X * X) * g_term(a, b) * Inv(One() - X - a * a * (X * X))
    y = Var("y")
    in_first = Eq(trace_norm_lhs(A, Bq, y, Var("s1"), Var("s2"), Var("s3")), One())
    in_second = Eq(trace_norm_lhs(A, Bq, z - y, Var("t1"), Var("t2"), Var("t3")), One())
    matrix: Formula = And(phi_part, And(in_first, in_second))
    for p in sorted(extra):
        local = emit_semilocal_exists3(extra[p])
        matrix = Or(matrix, instantiate(local, X * as_term(Fraction(1, p)), p_vars))
    return PrenexExistential(COMPLEMENT_BOUND, matrix, free=("x",))


def emit_universal(complement: PrenexExistential) -> Formula:
    """∀-definition of the ring: x ≐ 0 ∨ ¬matrix(x⁻¹, ...) under the same variables."""
    body = Or(Eq(X, Zero()), Not(substitute(complement.matrix, {"x": Inv(X)})))
    return forall(complement.bound_vars, body)
