"""S-expression serialization of terms and formulas, plus an infix pretty printer.

Atoms: ``0``, ``1``, variable names, and constants written ``#n`` or ``#n/d``.
Operators: ``+ − · ⁻¹ ≐ ¬ ∧ ∨ ∃ ∀``. ``to_sexpr`` and ``parse`` are exact
inverses on everything ``to_sexpr`` produces.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ast import Add, And, Const, Eq, Exists, Forall, Formula, Inv, Mul, Node, Not, One, Or, Sub, Term, Var, Zero

PLUS, MINUS, TIMES, INV = "+", "−", "·", "⁻¹"
EQ, NOT, AND, OR, EX, ALL = "≐", "¬", "∧", "∨", "∃", "∀"

_BINARY = {Add: PLUS, Sub: MINUS, Mul: TIMES, Eq: EQ, And: AND, Or: OR}
_BINARY_BY_SYM = {v: k for k, v in _BINARY.items()}
_VAR = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _const_text(c: Fraction) -> str:
    return f"#{c.numerator}" if c.denominator == 1 else f"#{c.numerator}/{c.denominator}"


def to_sexpr(node: Node) -> str:
    if isinstance(node, Zero):
        return "0"
    if isinstance(node, One):
        return "1"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return _const_text(node.value)
    if type(node) in _BINARY:
        return f"({_BINARY[type(node)]} {to_sexpr(node.left)} {to_sexpr(node.right)})"
    if isinstance(node, Inv):
        return f"({INV} {to_sexpr(node.arg)})"
    if isinstance(node, Not):
        return f"({NOT} {to_sexpr(node.arg)})"
    if isinstance(node, Exists):
        return f"({EX} {node.var} {to_sexpr(node.body)})"
    if isinstance(node, Forall):
        return f"({ALL} {node.var} {to_sexpr(node.body)})"
    raise TypeError(f"cannot serialize {node!r}")


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenize at {pos}: {text[pos:pos + 20]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse(text: str) -> Node:
    toks = _tokens(text)
    node, i = _parse(toks, 0)
    if i != len(toks):
        raise ValueError("trailing tokens after expression")
    return node


def _parse(toks: list[str], i: int):
    if i >= len(toks):
        raise ValueError("unexpected end of input")
    tok = toks[i]
    if tok == ")":
        raise ValueError("unexpected ')'")
    if tok != "(":
        return _atom(tok), i + 1
    op = toks[i + 1]
    if op in _BINARY_BY_SYM:
        left, j = _parse(toks, i + 2)
        right, j = _parse(toks, j)
        node = _BINARY_BY_SYM[op](left, right)
    elif op in (INV, NOT):
        arg, j = _parse(toks, i + 2)
        node = Inv(arg) if op == INV else Not(arg)
    elif op in (EX, ALL):
        var = toks[i + 2]
        if not _VAR.match(var):
            raise ValueError(f"bad bound variable {var!r}")
        body, j = _parse(toks, i + 3)
        node = Exists(var, body) if op == EX else Forall(var, body)
    else:
        raise ValueError(f"unknown operator {op!r}")
    if j >= len(toks) or toks[j] != ")":
        raise ValueError("missing ')'")
    return node, j + 1


def _atom(tok: str) -> Term:
    if tok == "0":
        return Zero()
    if tok == "1":
        return One()
    if tok.startswith("#"):
        return Const(Fraction(tok[1:]))
    if _VAR.match(tok):
        return Var(tok)
    raise ValueError(f"bad atom {tok!r}")


# -- infix display -------------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2}


def show_term(t: Term, parent: int = 0, right: bool = False) -> str:
    if isinstance(t, (Zero, One, Var)):
        return to_sexpr(t)
    if isinstance(t, Const):
        c = t.value
        text = str(c)
        return f"({text})" if (c < 0 or c.denominator != 1) and parent else text
    if isinstance(t, Inv):
        return f"{show_term(t.arg, 3)}{INV}"
    prec = _PREC[type(t)]
    sym = {Add: " + ", Sub: " " + MINUS + " ", Mul: TIMES}[type(t)]
    text = show_term(t.left, prec) + sym + show_term(t.right, prec, right=True)
    if prec < parent or (prec == parent and right and not isinstance(t, Mul)):
        return f"({text})"
    return text


def show(phi: Node, parent: int = 0) -> str:
    if isinstance(phi, Term):
        return show_term(phi)
    if isinstance(phi, Eq):
        return f"{show_term(phi.left)} {EQ} {show_term(phi.right)}"
    if isinstance(phi, Not):
        return f"{NOT}({show(phi.arg)})"
    if isinstance(phi, (And, Or)):
        prec = 2 if isinstance(phi, And) else 1
        sym = f" {AND} " if isinstance(phi, And) else f" {OR} "
        text = show(phi.left, prec) + sym + show(phi.right, prec)
        return f"({text})" if parent and prec != parent else text
    if isinstance(phi, (Exists, Forall)):
        q = EX if isinstance(phi, Exists) else ALL
        return f"{q}{phi.var} {show(phi.body, 3)}"
    raise TypeError(f"cannot show {phi!r}")


def is_formula(node: Node) -> bool:
    return isinstance(node, Formula)
