"""Expression language for the command line.

    expr   := term {"+" term}
    term   := factor {"*" factor}
    factor := atom ["^" ["-"] nat]
    atom   := generator | number | op "[" ["-"] int "]" "(" expr ")" | "(" expr ")"

Generators are T0, T1, ... (tau_i), X1, X2, ... (xi_i), tau, rho, u, v.
Operators are Q, Sq, psi and chi; psi and chi also accept the form without an
index, e.g. psi(T1).  Negative powers are only meaningful for v.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import _packing as pk
from .algebra import AElement, BaseScalar, TensorElement, chi, psi
from .bsigma import BSigmaElement, BSigmaTensor, psi_r_bsigma, q_on_bsigma
from .power_ops import q_element, sq


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Gen:
    name: str
    index: int | None
    pos: int


@dataclass(frozen=True)
class Sum:
    terms: tuple
    pos: int


@dataclass(frozen=True)
class Prod:
    factors: tuple
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: int


@dataclass(frozen=True)
class Apply:
    op: str
    index: int | None
    arg: object
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[-+*^()\[\]]))")
_GEN = re.compile(r"^(?:(?P<kind>[TX])(?P<idx>\d+)|tau|rho|u|v)$")
OPERATORS = ("Q", "Sq", "psi", "chi")
_INDEXED = ("Q", "Sq")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, sym):
        tok = self.peek()
        if tok[0] != "sym" or tok[1] != sym:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            self.error(f"expected {sym!r}, found {found}")
        return self.take()

    def is_sym(self, sym):
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == sym

    def int_literal(self, allow_negative=True) -> int:
        sign = 1
        if allow_negative and self.is_sym("-"):
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] != "num":
            self.error("expected an integer")
        self.take()
        return sign * int(tok[1])

    def expr(self):
        pos = self.peek()[2]
        terms = [self.term()]
        while self.is_sym("+"):
            self.take()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms), pos)

    def term(self):
        pos = self.peek()[2]
        factors = [self.factor()]
        while self.is_sym("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors), pos)

    def factor(self):
        pos = self.peek()[2]
        base = self.atom()
        if self.is_sym("^"):
            self.take()
            return Pow(base, self.int_literal(), pos)
        return base

    def atom(self):
        tok = self.peek()
        kind, val, pos = tok
        if kind == "num":
            self.take()
            return Num(int(val), pos)
        if kind == "sym" and val == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            self.take()
            if val in OPERATORS:
                index = None
                if self.is_sym("["):
                    self.take()
                    index = self.int_literal()
                    self.expect("]")
                elif val in _INDEXED:
                    self.error(f"{val} needs an index, as in {val}[2](...)")
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if val not in _INDEXED and index is not None:
                    raise ParseError(f"{val} takes no index", self.text, pos)
                return Apply(val, index, arg, pos)
            m = _GEN.match(val)
            if not m:
                raise ParseError(f"unknown generator {val!r}", self.text, pos)
            if m.group("kind"):
                idx = int(m.group("idx"))
                if m.group("kind") == "T" and idx > pk.MAX_TAU:
                    raise ParseError(f"tau_{idx} outside the supported range 0..{pk.MAX_TAU}", self.text, pos)
                if m.group("kind") == "X" and not 1 <= idx <= pk.MAX_XI:
                    raise ParseError(f"xi_{idx} outside the supported range 1..{pk.MAX_XI}", self.text, pos)
                return Gen(m.group("kind"), idx, pos)
            return Gen(val, None, pos)
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")


def parse_expr(text: str):
    p = _Parser(text)
    if p.peek()[0] == "end":
        p.error("empty expression")
    tree = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return tree


# evaluation

def _as_bsigma(x):
    if isinstance(x, BSigmaElement):
        return x
    if isinstance(x, AElement):
        if any(pk.gen_part(k) for k in x.terms):
            raise EvalError(f"cannot combine {x} with classes of B Sigma_2")
        return BSigmaElement({(0, 0): BaseScalar(pk.scalar_part(k) for k in x.terms)}) if x else BSigmaElement.zero()
    raise EvalError(f"cannot use {type(x).__name__} here")


def _combine(x, y, op):
    kinds = {type(x), type(y)}
    if kinds == {AElement}:
        return op(x, y)
    if kinds <= {AElement, BSigmaElement}:
        return op(_as_bsigma(x), _as_bsigma(y))
    if kinds == {TensorElement} or kinds == {BSigmaTensor}:
        return op(x, y)
    raise EvalError(f"cannot combine {type(x).__name__} and {type(y).__name__}")


def evaluate(node, v_window=(-40, 32)):
    """Reduce an expression to a canonical value."""
    ev = lambda n: evaluate(n, v_window)  # noqa: E731
    if isinstance(node, Num):
        return AElement.one() if node.value & 1 else AElement.zero()
    if isinstance(node, Gen):
        if node.name == "T":
            return AElement.tau_gen(node.index)
        if node.name == "X":
            return AElement.xi_gen(node.index)
        if node.name == "tau":
            return AElement.tau()
        if node.name == "rho":
            return AElement.rho()
        return BSigmaElement.u() if node.name == "u" else BSigmaElement.v()
    if isinstance(node, Sum):
        out = ev(node.terms[0])
        for t in node.terms[1:]:
            out = _combine(out, ev(t), lambda a, b: a + b)
        return out
    if isinstance(node, Prod):
        out = ev(node.factors[0])
        for f in node.factors[1:]:
            out = _combine(out, ev(f), lambda a, b: a * b)
        return out
    if isinstance(node, Pow):
        base = ev(node.base)
        if node.exp < 0:
            if isinstance(base, BSigmaElement) and len(base.parts) == 1:
                (f, m), c = next(iter(base.parts.items()))
                if f == 0 and c == BaseScalar.one():
                    return BSigmaElement.v(m * node.exp)
            raise EvalError("negative powers are only defined for powers of v")
        if isinstance(base, (AElement, BSigmaElement, TensorElement, BSigmaTensor)):
            return base ** node.exp
        raise EvalError(f"cannot raise {type(base).__name__} to a power")
    if isinstance(node, Apply):
        arg = ev(node.arg)
        if node.op in ("Q", "Sq"):
            i = node.index if node.op == "Q" else -node.index
            if isinstance(arg, BSigmaElement):
                return q_on_bsigma(i, arg)
            if isinstance(arg, AElement):
                return q_element(i, arg) if node.op == "Q" else sq(node.index, arg)
            raise EvalError(f"{node.op} is not defined on {type(arg).__name__}")
        if node.op == "psi":
            if isinstance(arg, AElement):
                return psi(arg)
            if isinstance(arg, BSigmaElement):
                return psi_r_bsigma(arg, v_window)
            raise EvalError("psi applies to classes of A or B Sigma_2")
        if node.op == "chi":
            if isinstance(arg, AElement):
                return chi(arg)
            raise EvalError("chi applies to classes of A")
    raise EvalError(f"cannot evaluate {node!r}")


def eval_text(text: str, v_window=(-40, 32)):
    return evaluate(parse_expr(text), v_window)
