"""Tokenizer and recursive-descent parser for DAOLang source text."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ast import (
    RESERVED,
    Assignment,
    Constant,
    Expr,
    ExpressionStmt,
    Identifier,
    NetworkLit,
    ObjectLit,
    Program,
    ProtocolLit,
    Statement,
    Transaction,
    Value,
    make_value,
)
from .errors import LexError, ParseError, ValueErrorBase

KEYWORDS = ("network", "protocol")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    position: tuple[int, int]
    expected: tuple[str, ...] = field(default=())

    def __str__(self):
        line, col = self.position
        text = f"{line}:{col}: {self.message}"
        if self.expected:
            text += f" (expected {' or '.join(self.expected)})"
        return text


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<hex>-?0[xX][0-9a-fA-F]*)
  | (?P<integer>-?[0-9]+)
  | (?P<identifier>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<arrow><-)
  | (?P<punct>[(){}:,;])
    """,
    re.VERBOSE,
)

_PUNCT = {
    "(": "lparen",
    ")": "rparen",
    "{": "lbrace",
    "}": "rbrace",
    ":": "colon",
    ",": "comma",
    ";": "semicolon",
}


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens. Comments and blanks vanish; newlines stay."""
    tokens: list[Token] = []
    pos = 0
    line, line_start = 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            ch = source[pos]
            if ch == '"':
                raise LexError(Diagnostic("unterminated string literal", (line, col)))
            raise LexError(Diagnostic(f"illegal character {ch!r}", (line, col)))
        group = m.lastgroup
        text = m.group()
        if group == "newline":
            tokens.append(Token("newline", text, line, col))
            line += 1
            line_start = m.end()
        elif group == "hex":
            digits = len(text) - (3 if text.startswith("-") else 2)
            if digits == 0:
                raise LexError(Diagnostic("hex literal without digits", (line, col)))
            kind = "address-literal" if digits == 40 and not text.startswith("-") else "integer"
            tokens.append(Token(kind, text, line, col))
        elif group == "identifier":
            kind = "keyword" if text in KEYWORDS else "identifier"
            tokens.append(Token(kind, text, line, col))
        elif group == "punct":
            tokens.append(Token(_PUNCT[text], text, line, col))
        elif group in ("integer", "string", "arrow"):
            kind = {"arrow": "arrow", "string": "string-literal"}.get(group, group)
            tokens.append(Token(kind, text, line, col))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0
        self.depth = 0

    # ---- token access
    def _end_position(self) -> tuple[int, int]:
        lines = self.source.split("\n")
        return (len(lines), len(lines[-1]) + 1)

    def peek(self) -> Token | None:
        while self.depth and self.i < len(self.tokens) and self.tokens[self.i].kind == "newline":
            self.i += 1
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def peek_kind(self, offset: int = 0) -> str | None:
        self.peek()
        j, seen = self.i, 0
        while j < len(self.tokens):
            if self.depth and self.tokens[j].kind == "newline":
                j += 1
                continue
            if seen == offset:
                return self.tokens[j].kind
            seen += 1
            j += 1
        return None

    def fail(self, message: str, expected=(), tok: Token | None = None):
        tok = tok if tok is not None else self.peek()
        position = tok.position if tok is not None else self._end_position()
        raise ParseError(Diagnostic(message, position, tuple(expected)))

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = "end of input" if tok is None else repr(tok.lexeme)
            self.fail(f"unexpected {found}", (what or kind,))
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.i += 1
            return tok
        return None

    # ---- grammar
    def program(self) -> Program:
        statements: list[Statement] = []
        while True:
            while self.accept("newline") or self.accept("semicolon"):
                pass
            if self.peek() is None:
                break
            statements.extend(self.statement())
            tok = self.peek()
            if tok is None:
                break
            if tok.kind not in ("newline", "semicolon"):
                self.fail(f"unexpected {tok.lexeme!r} after statement", ("';'", "newline"))
        return Program(tuple(statements))

    def statement(self) -> list[Statement]:
        tok = self.peek()
        if tok.kind == "identifier" and self.peek_kind(1) in ("arrow", "lparen") and tok.lexeme in RESERVED:
            self.fail(f"reserved word {tok.lexeme!r} cannot be bound", tok=tok)
        if tok.kind == "identifier" and self.peek_kind(1) == "arrow":
            self.i += 1
            self.expect("arrow")
            return [Assignment(tok.lexeme, self.expr(), pos=tok.position)]
        if tok.kind == "identifier" and self.peek_kind(1) == "lparen":
            return self.transaction()
        return [ExpressionStmt(self.expr(), pos=tok.position)]

    def transaction(self) -> list[Statement]:
        net = self.expect("identifier")
        self.expect("lparen")
        self.depth += 1
        actions = [self.action(net)]
        while self.accept("comma"):
            actions.append(self.action(net))
        self.depth -= 1
        self.expect("rparen", "')'")
        return actions

    def action(self, net: Token) -> Transaction:
        proto = self.expect("identifier", "protocol name")
        if proto.lexeme in RESERVED:
            self.fail(f"reserved word {proto.lexeme!r} used as protocol", tok=proto)
        self.expect("colon", "':'")
        name_tok = self.peek()
        name = self.expect("identifier", "action name").lexeme
        self.expect("lparen", "'('")
        self.depth += 1
        args: list[Expr] = []
        if self.peek_kind() != "rparen":
            args.append(self.expr())
            while self.accept("comma"):
                args.append(self.expr())
        self.depth -= 1
        self.expect("rparen", "')'")
        if name in ("true", "false"):
            self.fail(f"reserved word {name!r} used as action name", tok=name_tok)
        return Transaction(net.lexeme, proto.lexeme, name, tuple(args), pos=net.position)

    def expr(self) -> Expr:
        tok = self.peek()
        if tok is None or tok.kind in ("newline", "semicolon", "rparen", "rbrace", "comma"):
            found = "end of input" if tok is None else repr(tok.lexeme)
            self.fail(f"unexpected {found}", ("expression",), tok)
        try:
            if tok.kind == "identifier":
                self.i += 1
                if tok.lexeme in ("true", "false"):
                    return Constant(make_value("bool", tok.lexeme))
                return Identifier(tok.lexeme)
            if tok.kind == "address-literal":
                self.i += 1
                return Constant(make_value("address", tok.lexeme))
            if tok.kind == "integer":
                self.i += 1
                kind = "int256" if tok.lexeme.startswith("-") else "uint256"
                return Constant(make_value(kind, tok.lexeme))
            if tok.kind == "string-literal":
                self.i += 1
                return Constant(make_value("string", tok.lexeme))
        except ValueErrorBase as exc:
            self.fail(str(exc), tok=tok)
        if tok.kind == "keyword" and tok.lexeme == "network":
            return self.network()
        if tok.kind == "keyword" and tok.lexeme == "protocol":
            return self.protocol()
        if tok.kind == "lbrace":
            return self.obj()
        self.fail(f"unexpected {tok.lexeme!r}", ("expression",), tok)

    def network(self) -> NetworkLit:
        self.i += 1
        self.expect("lbrace", "'{'")
        self.depth += 1
        tok = self.expect("integer", "chain id")
        self.depth -= 1
        self.expect("rbrace", "'}'")
        chain = int(tok.lexeme, 0) if not tok.lexeme.startswith("-") else -1
        if chain <= 0:
            self.fail("chain id must be a positive integer", tok=tok)
        return NetworkLit(chain)

    def protocol(self) -> ProtocolLit:
        self.i += 1
        self.expect("lbrace", "'{'")
        self.depth += 1
        addrs: list[Value] = []
        while self.peek_kind() == "address-literal":
            addrs.append(make_value("address", self.peek().lexeme))
            self.i += 1
            self.accept("comma")
        self.depth -= 1
        if not addrs:
            self.fail("protocol needs at least one address", ("address",))
        self.expect("rbrace", "'}'")
        return ProtocolLit(tuple(addrs))

    def obj(self) -> ObjectLit:
        self.i += 1
        self.depth += 1
        pairs: list[tuple[str, Expr]] = []
        seen: set[str] = set()
        if self.peek_kind() != "rbrace":
            while True:
                key = self.expect("identifier", "object key")
                if key.lexeme in seen:
                    self.fail(f"duplicate object key {key.lexeme!r}", tok=key)
                seen.add(key.lexeme)
                self.expect("colon", "':'")
                pairs.append((key.lexeme, self.expr()))
                if not self.accept("comma"):
                    break
        self.depth -= 1
        self.expect("rbrace", "'}'")
        return ObjectLit(tuple(pairs))


def parse(source: str) -> Program:
    """Parse DAOLang text into a :class:`Program`.

    Statements end at ``;`` or a newline. Raises :class:`ParseError` (or its
    subclass :class:`LexError`) at the first failure.
    """
    return _Parser(source).program()
