"""Inverse elimination and single-polynomial collapse.

An atom L ≐ R containing a subterm u⁻¹ is rewritten by treating u⁻¹ as a
fresh symbol W. With L = sum W^i L_i, R = sum W^i R_i and d the larger
W-degree,

    L ≐ R   becomes   (sum u^(d-i) L_i ≐ sum u^(d-i) R_i  ∧  ¬(u ≐ 0))
                      ∨ (u ≐ 0  ∧  L_0 ≐ R_0)

which is correct for every value of u once 0⁻¹ = 0. Repeating this on the
outermost inverse of each atom terminates, since every step replaces one
inverse of nesting depth k by copies of terms whose inverses are shallower.
"""

from __future__ import annotations

from typing import Callable

from ..errors import NegationPresent, PreconditionViolated
from .ast import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Inv,
    Not,
    Or,
    Term,
    Zero,
    children,
    contains_inv,
)
from .poly import Poly


def _outermost_inverse(t: Term) -> Inv | None:
    if isinstance(t, Inv):
        return t
    for c in children(t):
        hit = _outermost_inverse(c)
        if hit is not None:
            return hit
    return None


def _homogenize(coeffs: dict[int, Poly], u: Poly, d: int) -> Poly:
    acc = Poly()
    for i, c in coeffs.items():
        acc = acc + (u ** (d - i)) * c
    return acc


def _eliminate_atom(atom: Eq, absorb: bool) -> Formula:
    target = _outermost_inverse(atom.left) or _outermost_inverse(atom.right)
    if target is None:
        return atom
    u_term = target.arg
    L, R = Poly.from_term(atom.left), Poly.from_term(atom.right)
    Lc, Rc = L.coefficients_in(target), R.coefficients_in(target)
    d = max(L.degree_in(target), R.degree_in(target))
    u = Poly.from_term(u_term)
    hL, hR = _homogenize(Lc, u, d), _homogenize(Rc, u, d)
    L0, R0 = Lc.get(0, Poly()), Rc.get(0, Poly())
    nonzero = Eq(hL.to_term(), hR.to_term())
    zero = Eq(u_term, Zero())
    if absorb:
        # at u = 0 the first equation reduces to L_d ≐ R_d; a nonzero constant
        # difference there already forces u != 0
        top = Lc.get(d, Poly()) - Rc.get(d, Poly())
        first = nonzero if (top.is_constant() and top) else And(nonzero, Not(zero))
        base = L0 - R0
        if base.is_constant() and base:
            return first
        return Or(first, And(zero, Eq(L0.to_term(), R0.to_term())))
    return Or(And(nonzero, Not(zero)), And(zero, Eq(L0.to_term(), R0.to_term())))


def _map_atoms(phi: Formula, fn: Callable[[Eq], Formula]) -> Formula:
    if isinstance(phi, Eq):
        return fn(phi)
    if isinstance(phi, Not):
        return Not(_map_atoms(phi.arg, fn))
    if isinstance(phi, (And, Or)):
        return type(phi)(_map_atoms(phi.left, fn), _map_atoms(phi.right, fn))
    if isinstance(phi, (Exists, Forall)):
        return type(phi)(phi.var, _map_atoms(phi.body, fn))
    raise TypeError(f"not a formula: {phi!r}")


def eliminate_inverses(phi: Formula, absorb: bool = False) -> Formula:
    """An inverse-free formula equivalent to ``phi`` over Q.

    With ``absorb`` set, disequalities and branches that are decided by a
    nonzero constant are dropped; the result stays equivalent.
    """

    def step(atom: Eq) -> Formula:
        out = _eliminate_atom(atom, absorb)
        if out is atom:
            return atom
        return _map_atoms(out, step)

    out = _map_atoms(phi, step)
    if contains_inv(out):
        raise AssertionError("inverse survived elimination")
    return out


# -- disjunct absorption ---------------------------------------------------------------


def _disjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, Or):
        return _disjuncts(phi.left) + _disjuncts(phi.right)
    return [phi]


def _conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    return [phi]


def _monomial_zero_support(atom: Formula) -> frozenset | None:
    """Generators of u when ``atom`` is u ≐ 0 (or 0 ≐ u) with u a monomial."""
    if not isinstance(atom, Eq):
        return None
    p = Poly.from_term(atom.left) - Poly.from_term(atom.right)
    if not p.is_monomial():
        return None
    return frozenset(p.generators())


def absorb_guarded(phi: Formula) -> Formula:
    """Drop disjuncts implied by a monomial guard g ≐ 0 in the same disjunction.

    A disjunct with a conjunct u ≐ 0, u a monomial whose variables all occur
    in g, implies g ≐ 0 and is therefore redundant.
    """
    parts = _disjuncts(phi)
    guards = [s for s in map(_monomial_zero_support, parts) if s is not None]
    kept = []
    for part in parts:
        if isinstance(part, And):
            supports = [_monomial_zero_support(c) for c in _conjuncts(part)]
            if any(s is not None and any(s <= g for g in guards) for s in supports):
                continue
        kept.append(part)
    acc = kept[0]
    for k in kept[1:]:
        acc = Or(acc, k)
    return acc


# -- collapse ----------------------------------------------------------------------------


def collapse_poly(phi: Formula) -> Poly:
    """A polynomial whose zero set over Q is the truth set of ``phi``."""
    if isinstance(phi, Eq):
        if contains_inv(phi):
            raise PreconditionViolated("collapse needs a ring-signature formula")
        return Poly.from_term(phi.left) - Poly.from_term(phi.right)
    if isinstance(phi, And):
        f, g = collapse_poly(phi.left), collapse_poly(phi.right)
        return f * f + g * g
    if isinstance(phi, Or):
        return collapse_poly(phi.left) * collapse_poly(phi.right)
    if isinstance(phi, Not):
        raise NegationPresent("negated atom; collapse needs a positive formula")
    raise PreconditionViolated(f"collapse needs a quantifier-free formula, got {type(phi).__name__}")


def collapse_to_single_polynomial(phi: Formula) -> Eq:
    """``P ≐ 0`` with P in normal form (expanded, integral, primitive, lex-ordered)."""
    return Eq(collapse_poly(phi).normalized().to_term(), Zero())

