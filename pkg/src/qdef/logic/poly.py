"""Sparse multivariate polynomials over Q with arbitrary hashable generators.

Generators are variable names or opaque ``Inv`` terms. Monomials are sorted
tuples of (generator, exponent) pairs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from ..arith import Q
from .ast import Add, Const, Inv, Mul, One, Sub, Term, Var, Zero, as_term


def gen_key(g: Hashable):
    if isinstance(g, str):
        return (0, g)
    from .sexpr import to_sexpr

    return (1, to_sexpr(g))


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    exps = dict(m1)
    for g, e in m2:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items(), key=lambda ge: gen_key(ge[0])))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms = {m: Q(c) for m, c in (terms or {}).items() if c != 0}

    # construction
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Q(c)})

    @classmethod
    def gen(cls, g: Hashable) -> "Poly":
        return cls({((g, 1),): Fraction(1)})

    @classmethod
    def from_term(cls, t: Term) -> "Poly":
        """Expand a term; ``Inv`` subterms become opaque generators."""
        if isinstance(t, Zero):
            return cls()
        if isinstance(t, One):
            return cls.const(1)
        if isinstance(t, Const):
            return cls.const(t.value)
        if isinstance(t, Var):
            return cls.gen(t.name)
        if isinstance(t, Inv):
            return cls.gen(t)
        if isinstance(t, Add):
            return cls.from_term(t.left) + cls.from_term(t.right)
        if isinstance(t, Sub):
            return cls.from_term(t.left) - cls.from_term(t.right)
        if isinstance(t, Mul):
            return cls.from_term(t.left) * cls.from_term(t.right)
        raise TypeError(f"not a term: {t!r}")

    # arithmetic
    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    def __pow__(self, n: int) -> "Poly":
        acc, base = Poly.const(1), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, c) -> "Poly":
        return Poly({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection
    def generators(self) -> set:
        return {g for m in self.terms for g, _ in m}

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree_in(self, g: Hashable) -> int:
        return max((dict(m).get(g, 0) for m in self.terms), default=0)

    def coefficients_in(self, g: Hashable) -> dict[int, "Poly"]:
        """Write self = sum_i g^i * c_i and return {i: c_i}."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            exps = dict(m)
            i = exps.pop(g, 0)
            rest = tuple(sorted(exps.items(), key=lambda ge: gen_key(ge[0])))
            out.setdefault(i, {})[rest] = c
        return {i: Poly(t) for i, t in out.items()}

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def evaluate(self, env: Mapping[Hashable, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for g, e in m:
                v *= Q(env[g]) ** e
            total += v
        return total

    # normal form
    def _order_gens(self) -> list:
        return sorted(self.generators(), key=gen_key)

    def sorted_monomials(self) -> list[tuple]:
        """Monomials in descending lexicographic order of exponent vectors."""
        gens = self._order_gens()

        def key(m):
            e = dict(m)
            return tuple(e.get(g, 0) for g in gens)

        return sorted(self.terms, key=key, reverse=True)

    def normalized(self) -> "Poly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if not self.terms:
            return self
        lcm = math.lcm(*(c.denominator for c in self.terms.values()))
        ints = {m: int(c * lcm) for m, c in self.terms.items()}
        g = math.gcd(*ints.values())
        lead = ints[self.sorted_monomials()[0]]
        sign = 1 if lead > 0 else -1
        return Poly({m: Fraction(sign * c // g) for m, c in ints.items()})

    def to_term(self) -> Term:
        if not self.terms:
            return Zero()
        acc = None
        for m in self.sorted_monomials():
            c = self.terms[m]
            if acc is None:
                acc = _monomial_term(c, m)
            elif c > 0:
                acc = Add(acc, _monomial_term(c, m))
            else:
                acc = Sub(acc, _monomial_term(-c, m))
        return acc

    def __repr__(self) -> str:
        from .sexpr import show_term

        return f"Poly({show_term(self.to_term())})"


def _gen_term(g) -> Term:
    return Var(g) if isinstance(g, str) else g


def _monomial_term(c: Fraction, m: tuple) -> Term:
    factors: list[Term] = []
    for g, e in m:
        factors.extend([_gen_term(g)] * e)
    if not factors:
        return as_term(c)
    acc = factors[0]
    for f in factors[1:]:
        acc = Mul(acc, f)
    if c != 1:
        acc = Mul(Const(c), acc)
    return acc


def poly_of(t: Term) -> Poly:
    return Poly.from_term(t)


def sum_polys(ps: Iterable[Poly]) -> Poly:
    acc = Poly()
    for p in ps:
        acc = acc + p
    return acc
