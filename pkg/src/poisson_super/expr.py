"""Expression parser for polynomial, enveloping-algebra and tensor input.

Grammar (lowest precedence first)::

    sum     := tensor (('+' | '-') tensor)*
    tensor  := product ('@' product)?
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | NAME '(' sum ')' | '(' sum ')'

Division is allowed by nonzero rationals only.  The tree is evaluated in one
of three targets: a supercommutative algebra, an enveloping algebra (where
``m(...)`` and ``h(...)`` wrap base expressions) or the tensor square
(``a @ b``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpecError
from .supercore import SuperAlgebra, SuperPolynomial, TensorElement

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    column: int  # 1-based


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(Token("int", num, m.start(1) + 1))
        elif name is not None:
            out.append(Token("name", name, m.start(2) + 1))
        elif op is not None:
            if op not in "+-*/^()@":
                raise SpecError(f"unexpected character {op!r}", column=m.start(3) + 1)
            out.append(Token("op", op, m.start(3) + 1))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


# nodes: ("num", Fraction) ("name", str) ("call", fname, node) ("neg", node)
# ("add", a, b) ("sub", a, b) ("mul", a, b) ("div", a, b) ("pow", a, k) ("tensor", a, b)
# every node carries its column as the last element


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, text=None) -> Token:
        t = self.tok
        if text is not None and t.text != text:
            want = repr(text)
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise SpecError(f"expected {want}, found {got}", column=t.column)
        self.i += 1
        return t

    def parse(self):
        if self.tok.kind == "end":
            raise SpecError("empty expression", column=1)
        node = self.sum()
        if self.tok.kind != "end":
            raise SpecError(f"unexpected {self.tok.text!r}", column=self.tok.column)
        return node

    def sum(self):
        node = self.tensor()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            t = self.take()
            rhs = self.tensor()
            node = ("add" if t.text == "+" else "sub", node, rhs, t.column)
        return node

    def tensor(self):
        node = self.product()
        if self.tok.text == "@" and self.tok.kind == "op":
            t = self.take()
            node = ("tensor", node, self.product(), t.column)
            if self.tok.text == "@":
                raise SpecError("tensor products of more than two factors are not supported", column=self.tok.column)
        return node

    def product(self):
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            t = self.take()
            node = ("mul" if t.text == "*" else "div", node, self.unary(), t.column)
        return node

    def unary(self):
        if self.tok.text == "-" and self.tok.kind == "op":
            t = self.take()
            return ("neg", self.unary(), t.column)
        if self.tok.text == "+" and self.tok.kind == "op":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.text == "^" and self.tok.kind == "op":
            t = self.take()
            k = self.tok
            if k.kind != "int":
                raise SpecError("exponent must be a non-negative integer", column=k.column)
            self.take()
            node = ("pow", node, int(k.text), t.column)
        return node

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            return ("num", Fraction(int(t.text)), t.column)
        if t.kind == "name":
            self.take()
            if self.tok.text == "(":
                self.take()
                inner = self.sum()
                self.take(")")
                return ("call", t.text, inner, t.column)
            return ("name", t.text, t.column)
        if t.text == "(":
            self.take()
            inner = self.sum()
            self.take(")")
            return inner
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise SpecError(f"expected a number, name or '(', found {got}", column=t.column)


def parse(text: str):
    """Parse ``text`` into a syntax tree; raises :class:`SpecError` with a column."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation


def _scalar(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, SuperPolynomial) and all(not any(m) for m, _ in value):
        return value.constant_term()
    return None


class _Evaluator:
    """Shared arithmetic; subclasses decide names, calls and constants."""

    def const(self, c: Fraction):
        raise NotImplementedError

    def name(self, text: str, col: int):
        raise SpecError(f"unexpected name {text!r}", column=col)

    def call(self, fname: str, node, col: int):
        raise SpecError(f"unknown function {fname!r}", column=col)

    def tensor(self, a, b, col: int):
        raise SpecError("'@' is only allowed in coproduct values", column=col)

    def lift(self, v):
        return self.const(v) if isinstance(v, Fraction) else v

    def mul(self, a, b, col):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b.scale(a)
        if isinstance(b, Fraction):
            return a.scale(b)
        try:
            return a * b
        except TypeError:
            raise SpecError("these factors cannot be multiplied", column=col) from None

    def add(self, a, b, col, sign=1):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a + sign * b
        a, b = self.lift(a), self.lift(b)
        try:
            return a + b.scale(sign)
        except Exception:
            raise SpecError("cannot add these terms", column=col) from None

    def ev(self, node):
        kind, col = node[0], node[-1]
        if kind == "num":
            return node[1]
        if kind == "name":
            return self.name(node[1], col)
        if kind == "call":
            return self.call(node[1], node[2], col)
        if kind == "neg":
            v = self.ev(node[1])
            return -v if isinstance(v, Fraction) else v.scale(-1)
        if kind in ("add", "sub"):
            return self.add(self.ev(node[1]), self.ev(node[2]), col, 1 if kind == "add" else -1)
        if kind == "mul":
            return self.mul(self.ev(node[1]), self.ev(node[2]), col)
        if kind == "div":
            num, den = self.ev(node[1]), _scalar(self.ev(node[2]))
            if den is None:
                raise SpecError("division only by nonzero rationals", column=col)
            if not den:
                raise SpecError("division by zero", column=col)
            return num / den if isinstance(num, Fraction) else num.scale(1 / den)
        if kind == "pow":
            base, k = self.ev(node[1]), node[2]
            if isinstance(base, Fraction):
                return base ** k
            out = self.const(Fraction(1))
            for _ in range(k):
                out = self.mul(out, base, col)
            return out
        if kind == "tensor":
            return self.tensor(self.ev(node[1]), self.ev(node[2]), col)
        raise AssertionError(kind)

    def run(self, node):
        return self.lift(self.ev(node))


class _PolyEvaluator(_Evaluator):
    def __init__(self, algebra: SuperAlgebra):
        self.algebra = algebra

    def const(self, c):
        return self.algebra.const(c)

    def name(self, text, col):
        if text not in self.algebra:
            raise SpecError(f"unknown generator {text!r}", column=col)
        return self.algebra.var(text)


class _TensorEvaluator(_PolyEvaluator):
    def const(self, c):
        return TensorElement.unit(self.algebra).scale(c)

    def name(self, text, col):
        raise SpecError(f"generator {text!r} must appear inside a tensor a @ b", column=col)

    def tensor(self, a, b, col):
        inner = _PolyEvaluator(self.algebra)
        a = inner.lift(a) if isinstance(a, Fraction) else a
        b = inner.lift(b) if isinstance(b, Fraction) else b
        if not isinstance(a, SuperPolynomial) or not isinstance(b, SuperPolynomial):
            raise SpecError("tensor factors must be polynomials", column=col)
        return TensorElement.pure(a, b)

    def ev(self, node):
        if node[0] == "tensor":
            sub = _PolyEvaluator(self.algebra)
            return self.tensor(sub.ev(node[1]), sub.ev(node[2]), node[-1])
        return super().ev(node)


class _UEAEvaluator(_Evaluator):
    def __init__(self, U):
        self.U = U

    def const(self, c):
        return self.U.one().scale(c)

    def name(self, text, col):
        raise SpecError(f"wrap generator {text!r} in m(...) or h(...)", column=col)

    def call(self, fname, node, col):
        if fname not in ("m", "h"):
            raise SpecError(f"unknown function {fname!r}; use m(...) or h(...)", column=col)
        p = _PolyEvaluator(self.U.algebra).run(node)
        if p and p.parity is None:
            raise SpecError(f"argument of {fname}(...) must be homogeneous", column=col)
        return self.U.m(p) if fname == "m" else self.U.h(p)


def parse_poly(text: str, algebra: SuperAlgebra) -> SuperPolynomial:
    return _PolyEvaluator(algebra).run(parse(text))


def parse_tensor(text: str, algebra: SuperAlgebra) -> TensorElement:
    """Element of A (x) A written with '@', e.g. ``x @ 1 + 1 @ x``."""
    return _TensorEvaluator(algebra).run(parse(text))


def parse_uea(text: str, U):
    """Element of U(R) written with m(...) and h(...), e.g. ``h(x1)*m(y1)``."""
    return _UEAEvaluator(U).run(parse(text))
