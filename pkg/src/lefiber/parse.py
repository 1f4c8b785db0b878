"""Polynomial text format.

Grammar (whitespace insignificant, ``#`` not supported):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ('-' | '+')* power
    power   := primary ('^' INT)?
    primary := INT ('/' INT)? | IDENT | '(' expr ')'

``^`` requires a nonnegative integer literal exponent and binds tighter than
unary minus. ``/`` only forms rational literals between integers. Implicit
multiplication (``3x``, ``x y``, ``2(x+y)``) is rejected with a dedicated
message because silently inserting ``*`` hides typos in long inputs.

The printer emits the canonical form produced by ``str(Polynomial)``; parsing
that text returns an equal polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, RingError
from .poly import Polynomial, PolyRing

_T_NUM = "NUM"
_T_IDENT = "IDENT"
_T_OP = "OP"
_T_END = "END"

_OPS = set("+-*^/()")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    toks = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token(_T_NUM, text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token(_T_IDENT, text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _OPS:
            toks.append(_Token(_T_OP, c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(_Token(_T_END, "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Token], ring: PolyRing):
        self.toks = toks
        self.pos = 0
        self.ring = ring

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op: str) -> _Token:
        t = self.peek()
        if t.kind != _T_OP or t.text != op:
            raise ParseError(f"expected {op!r}", t.line, t.col)
        return self.next()

    def parse(self) -> Polynomial:
        p = self.expr()
        t = self.peek()
        if t.kind != _T_END:
            raise ParseError(f"unexpected {t.text!r} after expression", t.line, t.col)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            t = self.peek()
            if t.kind == _T_OP and t.text in "+-":
                self.next()
                q = self.term()
                p = p + q if t.text == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            t = self.peek()
            if t.kind == _T_OP and t.text == "*":
                self.next()
                p = p * self.factor()
            elif t.kind in (_T_NUM, _T_IDENT) or (t.kind == _T_OP and t.text == "("):
                raise ParseError(
                    "implicit multiplication is not supported; insert '*'", t.line, t.col
                )
            else:
                return p

    def factor(self) -> Polynomial:
        sign = 1
        while True:
            t = self.peek()
            if t.kind == _T_OP and t.text in "+-":
                self.next()
                if t.text == "-":
                    sign = -sign
            else:
                break
        p = self.power()
        return p if sign == 1 else -p

    def power(self) -> Polynomial:
        p = self.primary()
        t = self.peek()
        if t.kind == _T_OP and t.text == "^":
            self.next()
            e = self.peek()
            if e.kind != _T_NUM:
                raise ParseError("exponent must be a nonnegative integer literal", e.line, e.col)
            self.next()
            p = p ** int(e.text)
            t = self.peek()
            if t.kind == _T_OP and t.text == "^":
                raise ParseError("chained '^' is ambiguous; use parentheses", t.line, t.col)
        return p

    def primary(self) -> Polynomial:
        t = self.peek()
        if t.kind == _T_NUM:
            self.next()
            num = int(t.text)
            nxt = self.peek()
            if nxt.kind == _T_OP and nxt.text == "/":
                self.next()
                d = self.peek()
                if d.kind != _T_NUM:
                    raise ParseError(
                        "'/' is only supported between integer literals", d.line, d.col
                    )
                self.next()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.line, d.col)
                after = self.peek()
                if after.kind == _T_OP and after.text == "/":
                    raise ParseError("chained '/' is not supported", after.line, after.col)
                return self.ring.constant(Fraction(num, int(d.text)))
            return self.ring.constant(num)
        if t.kind == _T_IDENT:
            self.next()
            try:
                i = self.ring.index(t.text)
            except RingError as exc:
                raise ParseError(str(exc), t.line, t.col) from None
            return self.ring.variable(i)
        if t.kind == _T_OP and t.text == "(":
            self.next()
            p = self.expr()
            self.expect_op(")")
            return p
        if t.kind == _T_OP and t.text == "/":
            raise ParseError("'/' is only supported between integer literals", t.line, t.col)
        if t.kind == _T_END:
            raise ParseError("unexpected end of input", t.line, t.col)
        raise ParseError(f"unexpected {t.text!r}", t.line, t.col)


def infer_variables(text: str) -> tuple[str, ...]:
    """Variable names in order of first appearance; ('x',) if none occur."""
    names = []
    for t in _tokenize(text):
        if t.kind == _T_IDENT and t.text not in names:
            names.append(t.text)
    return tuple(names) if names else ("x",)


def parse_polynomial(text: str, ring: PolyRing | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``.

    With ``ring=None`` the ring is inferred from the identifiers in order of
    first appearance.
    """
    if ring is None:
        ring = PolyRing(infer_variables(text))
    toks = _tokenize(text)
    if toks[0].kind == _T_END:
        raise ParseError("empty input", 1, 1)
    return _Parser(toks, ring).parse()


def polynomial_to_text(p: Polynomial) -> str:
    return str(p)
