"""Terms and formulas in the ring and field signatures over Q.

Terms are built from 0, 1, variables, rational constants, +, -, * and (field
signature only) the unary inverse, with 0^-1 = 0. Formulas are equations
between terms closed under negation, binary conjunction and disjunction and
the two quantifiers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from ..arith import Q
from ..errors import PreconditionViolated, UnboundVariable


class Term:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, as_term(other))

    def __radd__(self, other):
        return Add(as_term(other), self)

    def __sub__(self, other):
        return Sub(self, as_term(other))

    def __rsub__(self, other):
        return Sub(as_term(other), self)

    def __mul__(self, other):
        return Mul(self, as_term(other))

    def __rmul__(self, other):
        return Mul(as_term(other), self)

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("only positive powers are terms")
        acc = self
        for _ in range(n - 1):
            acc = Mul(acc, self)
        return acc


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Q(self.value))


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inv(Term):
    arg: Term


def as_term(x) -> Term:
    if isinstance(x, Term):
        return x
    if isinstance(x, str):
        return Var(x)
    c = Q(x)
    if c == 0:
        return Zero()
    if c == 1:
        return One()
    return Const(c)


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


Node = Union[Term, Formula]


def eq(left, right) -> Eq:
    return Eq(as_term(left), as_term(right))


def exists(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def forall(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


def conj(*fs: Formula) -> Formula:
    acc = fs[0]
    for f in fs[1:]:
        acc = And(acc, f)
    return acc


def disj(*fs: Formula) -> Formula:
    acc = fs[0]
    for f in fs[1:]:
        acc = Or(acc, f)
    return acc


# -- evaluation ---------------------------------------------------------------------


def eval_term(t: Term, env: Mapping[str, Fraction]) -> Fraction:
    if isinstance(t, Zero):
        return Fraction(0)
    if isinstance(t, One):
        return Fraction(1)
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        try:
            return Q(env[t.name])
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Sub):
        return eval_term(t.left, env) - eval_term(t.right, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    if isinstance(t, Inv):
        v = eval_term(t.arg, env)
        return 1 / v if v else Fraction(0)
    raise TypeError(f"not a term: {t!r}")


def eval_qf(phi: Formula, env: Mapping[str, Fraction]) -> bool:
    """Truth of a quantifier-free formula over Q, with 0^-1 = 0."""
    if isinstance(phi, Eq):
        return eval_term(phi.left, env) == eval_term(phi.right, env)
    if isinstance(phi, Not):
        return not eval_qf(phi.arg, env)
    if isinstance(phi, And):
        return eval_qf(phi.left, env) and eval_qf(phi.right, env)
    if isinstance(phi, Or):
        return eval_qf(phi.left, env) or eval_qf(phi.right, env)
    if isinstance(phi, (Exists, Forall)):
        raise PreconditionViolated("eval_qf needs a quantifier-free formula")
    raise TypeError(f"not a formula: {phi!r}")


# -- structure ------------------------------------------------------------------------


def children(node: Node) -> tuple:
    if isinstance(node, (Add, Sub, Mul, Eq, And, Or)):
        return (node.left, node.right)
    if isinstance(node, (Inv, Not)):
        return (node.arg,)
    if isinstance(node, (Exists, Forall)):
        return (node.body,)
    return ()


def walk(node: Node):
    yield node
    for c in children(node):
        yield from walk(c)


def contains_inv(node: Node) -> bool:
    return any(isinstance(n, Inv) for n in walk(node))


def is_ring_term(t: Term) -> bool:
    return not contains_inv(t)


def is_quantifier_free(phi: Formula) -> bool:
    return not any(isinstance(n, (Exists, Forall)) for n in walk(phi))


def is_negation_free(phi: Formula) -> bool:
    return not any(isinstance(n, Not) for n in walk(phi))


def term_vars(t: Term) -> frozenset[str]:
    return frozenset(n.name for n in walk(t) if isinstance(n, Var))


def free_vars(node: Node) -> frozenset[str]:
    if isinstance(node, Var):
        return frozenset({node.name})
    if isinstance(node, (Exists, Forall)):
        return free_vars(node.body) - {node.var}
    out = frozenset()
    for c in children(node):
        out |= free_vars(c)
    return out


def bound_vars(phi: Formula) -> frozenset[str]:
    return frozenset(n.var for n in walk(phi) if isinstance(n, (Exists, Forall)))


def quantifier_count(phi: Formula) -> int:
    return sum(isinstance(n, (Exists, Forall)) for n in walk(phi))


def _fresh(base: str, avoid: frozenset[str]) -> str:
    for i in itertools.count(1):
        cand = f"{base}_{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def substitute(node: Node, mapping: Mapping[str, Term]) -> Node:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    if not mapping:
        return node
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, (Zero, One, Const)):
        return node
    if isinstance(node, (Exists, Forall)):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        incoming = frozenset().union(*(term_vars(t) for t in inner.values())) if inner else frozenset()
        var, body = node.var, node.body
        if var in incoming:
            new = _fresh(var, incoming | free_vars(body) | frozenset(inner))
            body = substitute(body, {var: Var(new)})
            var = new
        return type(node)(var, substitute(body, inner))
    kids = tuple(substitute(c, mapping) for c in children(node))
    return type(node)(*kids)


def size(node: Node) -> int:
    return sum(1 for _ in walk(node))


@dataclass(frozen=True)
class PrenexExistential:
    """exists bound_vars . matrix, with a quantifier-free matrix."""

    bound_vars: tuple[str, ...]
    matrix: Formula
    free: tuple[str, ...] = ()

    def __post_init__(self):
        if not is_quantifier_free(self.matrix):
            raise PreconditionViolated("matrix must be quantifier-free")
        if len(set(self.bound_vars)) != len(self.bound_vars):
            raise PreconditionViolated("bound variables must be distinct")

    @property
    def quantifier_count(self) -> int:
        return len(self.bound_vars)

    def formula(self) -> Formula:
        return exists(self.bound_vars, self.matrix)
