"""Tiny expression language for user-defined potentials V(x, t).

Grammar (standard precedence, ^ binds tightest and associates right):
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | 'pi' | 'x' | 't' | name '(' expr (',' expr)* ')' | '(' expr ')'

Functions: sin, cos, exp, tanh, abs and bump, where bump(y) is the standard
compactly-supported mollifier exp(-1/(1-y^2)) for |y| < 1 and 0 outside.
Evaluation is numpy-vectorised; any non-finite intermediate raises.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ExprError(ValueError):
    """Parse or evaluation failure, carrying the source byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


# --- AST ---

@dataclass(frozen=True)
class Num:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str            # 'x' or 't'
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Bin:
    op: str              # + - * / ^
    left: object
    right: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: object
    offset: int = field(default=0, compare=False)


FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "tanh": np.tanh,
    "abs": np.abs,
}


def bump(y):
    """exp(-1/(1-y^2)) inside |y| < 1, exactly 0 on and outside the boundary."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    inside = np.abs(y) < 1.0
    yi = y[inside]
    out[inside] = np.exp(-1.0 / (1.0 - yi * yi))
    return out


# --- tokenizer ---

_OPS = set("+-*/^(),")


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            seen_e = False
            while j < n and (src[j].isdigit() or src[j] == "."
                             or src[j] in "eE"
                             or (seen_e and src[j] in "+-" and src[j - 1] in "eE")):
                if src[j] in "eE":
                    seen_e = True
                j += 1
            text = src[i:j]
            try:
                value = float(text)
            except ValueError:
                raise ExprError(f"bad numeric literal {text!r}", i) from None
            tokens.append(("num", value, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        raise ExprError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


# --- recursive descent parser ---

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"trailing input starting at {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, off = self.next()
            node = Bin(op, node, self.term(), off)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, off = self.next()
            node = Bin(op, node, self.factor(), off)
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] == "-":
            self.next()
            return Neg(self.factor(), tok[2])
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            _, _, off = self.next()
            node = Bin("^", node, self.factor(), off)
        return node

    def atom(self):
        kind, value, off = self.next()
        if kind == "num":
            return Num(value, off)
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            if value in ("x", "t"):
                return Var(value, off)
            if value == "pi":
                return Num(float(np.pi), off)
            if value in FUNCTIONS or value == "bump":
                self.expect("(")
                arg = self.expr()
                if self.peek()[0] == ",":
                    raise ExprError(f"{value} takes exactly one argument",
                                    self.peek()[2])
                self.expect(")")
                return Call(value, arg, off)
            raise ExprError(f"unknown identifier {value!r}", off)
        raise ExprError(f"expected a value, found {value!r}" if value else
                        "unexpected end of input", off)


def parse_expr(src: str):
    """Parse the source into an AST; errors carry byte offsets."""
    return _Parser(src).parse()


# --- evaluation ---

def _check_finite(value, node):
    if not np.all(np.isfinite(value)):
        raise ExprError("non-finite value produced", getattr(node, "offset", 0))
    return value


def eval_ast(node, x, t):
    """Evaluate on scalars or numpy arrays; division by zero and 0^negative raise."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x if node.name == "x" else t
    if isinstance(node, Neg):
        return -eval_ast(node.arg, x, t)
    if isinstance(node, Bin):
        a = eval_ast(node.left, x, t)
        b = eval_ast(node.right, x, t)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if np.any(np.asarray(b) == 0):
                raise ExprError("division by zero", node.offset)
            return _check_finite(a / b, node)
        with np.errstate(all="ignore"):
            out = np.power(np.asarray(a, dtype=float), b)
        return _check_finite(out, node)
    if isinstance(node, Call):
        arg = eval_ast(node.arg, x, t)
        if node.func == "bump":
            return bump(arg)
        with np.errstate(all="ignore"):
            out = FUNCTIONS[node.func](arg)
        return _check_finite(out, node)
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(ast, x: float, t: float) -> float:
    """Scalar convenience wrapper around :func:`eval_ast`."""
    return float(eval_ast(ast, np.float64(x), np.float64(t)))


# --- printing (round-trips through parse_expr) ---

def _prec(node) -> int:
    if isinstance(node, Bin):
        return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}[node.op]
    if isinstance(node, Neg):
        return 3
    return 9


def print_expr(node) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = print_expr(node.arg)
        if _prec(node.arg) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Call):
        return f"{node.func}({print_expr(node.arg)})"
    if isinstance(node, Bin):
        p = _prec(node)
        left = print_expr(node.left)
        right = print_expr(node.right)
        # left-assoc except ^; parenthesise children of lower precedence
        if _prec(node.left) < p or (node.op == "^" and _prec(node.left) <= p):
            left = f"({left})"
        if _prec(node.right) < p or (node.op in ("-", "/") and _prec(node.right) == p):
            right = f"({right})"
        return f"{left} {node.op} {right}" if node.op in "+-" else f"{left}{node.op}{right}"
    raise TypeError(f"not an expression node: {node!r}")
