"""Random terms, formulas and assignments for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .ast import Add, And, Const, Eq, Formula, Inv, Mul, Not, One, Or, Sub, Term, Var, Zero, eval_term, walk

VALUE_POOL = tuple(Fraction(v) for v in (0, 0, 1, -1, 2, -2, 3)) + (Fraction(1, 2), Fraction(-1, 3), Fraction(2, 3))


def random_term(rng: random.Random, names: tuple[str, ...], depth: int, field: bool = True) -> Term:
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.6:
            return Var(rng.choice(names))
        if r < 0.75:
            return One()
        if r < 0.85:
            return Zero()
        return Const(Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))))
    ops = [Add, Sub, Mul] + ([Inv, Inv] if field else [])
    op = rng.choice(ops)
    if op is Inv:
        return Inv(random_term(rng, names, depth - 1, field))
    return op(random_term(rng, names, depth - 1, field), random_term(rng, names, depth - 1, field))


def random_formula(
    rng: random.Random, names: tuple[str, ...], term_depth: int = 3, atoms: int = 3, field: bool = True, negation: bool = True
) -> Formula:
    """A quantifier-free boolean combination of ``atoms`` random equations."""
    parts: list[Formula] = []
    for _ in range(atoms):
        atom: Formula = Eq(random_term(rng, names, term_depth, field), random_term(rng, names, term_depth, field))
        if negation and rng.random() < 0.25:
            atom = Not(atom)
        parts.append(atom)
    while len(parts) > 1:
        i = rng.randrange(len(parts) - 1)
        op = And if rng.random() < 0.5 else Or
        parts[i : i + 2] = [op(parts[i], parts[i + 1])]
    return parts[0]


def inverse_arguments(phi) -> list[Term]:
    return [n.arg for n in walk(phi) if isinstance(n, Inv)]


def zero_hitting_assignments(rng: random.Random, phi, names: tuple[str, ...], count: int) -> list[dict]:
    """Assignments over a small value pool, biased towards zeroing inverse arguments.

    Half are drawn freely; the rest try a few draws and keep one that sends
    the argument of some inverse to 0 when such a draw turns up.
    """
    args = inverse_arguments(phi)
    out = []
    for i in range(count):
        env = {n: rng.choice(VALUE_POOL) for n in names}
        if args and i % 2:
            for _ in range(12):
                if any(eval_term(a, env) == 0 for a in args):
                    break
                env = {n: rng.choice(VALUE_POOL) for n in names}
        out.append(env)
    return out
