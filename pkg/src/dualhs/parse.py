"""Recursive-descent parser for polynomial expressions.

Grammar (LL(1); explicit '*' required, no juxtaposition):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | ident | '(' expr ')'
    rational := nat ('/' nat)?

Parsing a canonical printout returns the same polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, RingSignature, coerce_coeff


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_SYMBOLS = ("+", "-", "*", "^", "(", ")", "/")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: RingSignature):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Poly:
        if self.peek()[0] == "-":
            self.advance()
            acc = self.term().neg()
        else:
            acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            acc = acc.add(rhs) if op == "+" else acc.sub(rhs)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            acc = acc.mul(self.factor())
        return acc

    def factor(self) -> Poly:
        b = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            return b.pow(int(tok[1]))
        return b

    def base(self) -> Poly:
        tok = self.advance()
        if tok[0] == "int":
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.advance()
                den_tok = self.expect("int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return Poly.const(self.sig, coerce_coeff(self.sig.field,
                                                         Fraction(num, den)))
            return Poly.const(self.sig, coerce_coeff(self.sig.field, num))
        if tok[0] == "ident":
            try:
                idx = self.sig.vars.index(tok[1])
            except ValueError:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2]) from None
            return Poly.variable(self.sig, idx)
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_poly(text: str, sig: RingSignature) -> Poly:
    """Parse an expression into canonical form; raises ParseError with position."""
    return _Parser(text, sig).parse()
