"""Token stream shared by the host parsers and embedded behavior parsers."""

from __future__ import annotations

from arcc import expr as ex
from arcc.diagnostics import SYNTAX, DiagnosticError, Location, error
from arcc.frontend.lexer import Token, tokenize


class TokenStream:
    def __init__(self, text: str, file: str = "<input>"):
        self.file = file
        self.tokens = tokenize(text, file)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind in ("OP", "ID") and tok.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.pos += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected '{value}' but found {self.peek()}")
        return self.next()

    def expect_id(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ID":
            self.fail(f"expected {what} but found {tok}")
        return self.next()

    def expect_string(self) -> Token:
        tok = self.peek()
        if tok.kind != "STRING":
            self.fail(f"expected string literal but found {tok}")
        return self.next()

    def expect_eof(self) -> None:
        if self.peek().kind != "EOF":
            self.fail(f"unexpected {self.peek()} after end of declaration")

    def fail(self, message: str, loc: Location | None = None):
        raise DiagnosticError([error(SYNTAX, message, loc or self.peek().loc)])

    # ------------------------------------------------------------ shared syntax

    def parse_type(self):
        from arcc.model import TypeRef

        name = self.expect_id("type name")
        args = []
        if self.accept("<"):
            args.append(self.parse_type())
            while self.accept(","):
                args.append(self.parse_type())
            self.expect(">")
        return TypeRef(name.value, tuple(args), name.loc)

    def parse_literal(self) -> ex.Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return ex.Lit(int(tok.value), tok.loc)
        if tok.kind == "STRING":
            self.next()
            return ex.Lit(tok.value, tok.loc)
        if self.at("-") and self.peek(1).kind == "INT":
            self.next()
            num = self.next()
            return ex.Unary("-", ex.Lit(int(num.value), num.loc), tok.loc)
        if tok.kind == "ID":
            self.next()
            if tok.value in ("true", "false"):
                return ex.Lit(tok.value == "true", tok.loc)
            if self.accept("."):
                lit = self.expect_id("enum literal")
                return ex.EnumLit(tok.value, lit.value, tok.loc)
            return ex.EnumLit(None, tok.value, tok.loc)
        self.fail(f"expected literal but found {tok}")

    def parse_expr(self, min_prec: int = 1) -> ex.Expr:
        left = self._parse_unary()
        while True:
            tok = self.peek()
            prec = ex.PRECEDENCE.get(tok.value) if tok.kind == "OP" else None
            if prec is None or prec < min_prec:
                return left
            self.next()
            if tok.value in ex.COMPARISONS:
                right = self.parse_expr(prec + 1)
                left = ex.Binary(tok.value, left, right, tok.loc)
                nxt = self.peek()
                if nxt.kind == "OP" and nxt.value in ex.COMPARISONS:
                    self.fail("comparison operators do not chain; use parentheses")
            else:
                right = self.parse_expr(prec + 1)
                left = ex.Binary(tok.value, left, right, tok.loc)

    def _parse_unary(self) -> ex.Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.value in ("!", "-"):
            self.next()
            return ex.Unary(tok.value, self._parse_unary(), tok.loc)
        return self._parse_primary()

    def _parse_primary(self) -> ex.Expr:
        tok = self.peek()
        if self.accept("("):
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok.kind == "INT":
            self.next()
            return ex.Lit(int(tok.value), tok.loc)
        if tok.kind == "STRING":
            self.next()
            return ex.Lit(tok.value, tok.loc)
        if tok.kind == "ID":
            self.next()
            if tok.value in ("true", "false"):
                return ex.Lit(tok.value == "true", tok.loc)
            if tok.value == "present" and self.accept("("):
                name = self.expect_id("port name")
                self.expect(")")
                return ex.Present(name.value, tok.loc)
            if self.accept("."):
                lit = self.expect_id("enum literal")
                return ex.EnumLit(tok.value, lit.value, tok.loc)
            return ex.Name(tok.value, tok.loc)
        self.fail(f"expected expression but found {tok}")
