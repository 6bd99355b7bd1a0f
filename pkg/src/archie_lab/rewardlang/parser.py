"""Recursive-descent parser for reward programs (`.rsp` files).

Grammar:

    spec        := component* success failure?
    component   := "component" IDENT ":" expr
    success     := "success" ":" expr
    failure     := "failure" ":" expr
    expr        := or_expr
    or_expr     := and_expr ("or" and_expr)*
    and_expr    := not_expr ("and" not_expr)*
    not_expr    := "not" not_expr | comparison
    comparison  := additive (("<" | "<=" | ">" | ">=") additive)?
    additive    := multiplicative (("+" | "-") multiplicative)*
    multiplicative := unary ("*" unary)*
    unary       := "-" unary | primary
    primary     := NUMBER | IDENT | call | "(" expr ")"
    call        := ("min" | "max") "(" expr "," expr ")"
                 | "abs" "(" expr ")"
                 | "clamp" "(" expr "," snum "," snum ")"
                 | "dist" "(" IDENT "," IDENT ")"

IDENT is a dotted identifier (`object.x`); snum is an optionally signed
numeric literal. `#` starts a comment running to end of line. Comparisons
evaluate to 0/1; `and`/`or`/`not` treat any nonzero operand as true.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    CMP_OPS,
    Abs,
    Add,
    And,
    Clamp,
    Cmp,
    Const,
    Dist,
    Expr,
    MaxE,
    MinE,
    Mul,
    Neg,
    Not,
    Or,
    Sub,
    Var,
)
from .spec import Classifier, RewardComponent, RewardSpec

BLOCK_KEYWORDS = {"component", "success", "failure"}
LOGIC_KEYWORDS = {"and", "or", "not"}
FUNC_NAMES = {"min", "max", "abs", "clamp", "dist"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*)
  | (?P<op><=|>=|<|>|\+|\-|\*|\(|\)|,|:)
    """,
    re.VERBOSE,
)


class RewardSyntaxError(ValueError):
    """Parse failure; `code` distinguishes the template-level errors."""

    def __init__(self, message: str, line: int, col: int, code: str = "SyntaxError"):
        super().__init__(f"{message} (line {line}, column {col})")
        self.code = code
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "ident" | "op" | "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise RewardSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind=kind, text=chunk, line=line, col=col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token(kind="eof", text="", line=line, col=col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise RewardSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.advance()

    def error(self, message: str, code: str = "SyntaxError") -> RewardSyntaxError:
        tok = self.peek()
        return RewardSyntaxError(message, tok.line, tok.col, code=code)

    # --- blocks ---------------------------------------------------------
    def parse_spec(self, horizon: int) -> RewardSpec:
        components: list[RewardComponent] = []
        seen: set[str] = set()
        while self._at_keyword("component"):
            self.advance()
            name_tok = self.peek()
            if name_tok.kind != "ident":
                raise self.error("expected a component name")
            if "." in name_tok.text:
                raise self.error("component name must be a plain identifier")
            if name_tok.text in BLOCK_KEYWORDS | LOGIC_KEYWORDS:
                raise self.error(f"{name_tok.text!r} is a keyword and cannot name a component")
            if name_tok.text in seen:
                raise RewardSyntaxError(
                    f"duplicate component name {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                    code="DuplicateComponent",
                )
            seen.add(name_tok.text)
            self.advance()
            self.expect_op(":")
            components.append(RewardComponent(name=name_tok.text, expr=self.parse_expr()))

        if not self._at_keyword("success"):
            raise self.error("reward program must declare a success block", code="MissingSuccess")
        self.advance()
        self.expect_op(":")
        success = Classifier(expr=self.parse_expr())

        failure = None
        if self._at_keyword("failure"):
            self.advance()
            self.expect_op(":")
            failure = Classifier(expr=self.parse_expr())

        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(f"unexpected {tok.text!r} after the final block")
        return RewardSpec(
            components=tuple(components), success=success, failure=failure, horizon=horizon
        )

    def _at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    # --- expressions ------------------------------------------------------
    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        node = self.parse_and()
        while self._at_keyword("or"):
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Expr:
        node = self.parse_not()
        while self._at_keyword("and"):
            self.advance()
            node = And(node, self.parse_not())
        return node

    def parse_not(self) -> Expr:
        if self._at_keyword("not"):
            self.advance()
            return Not(self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        node = self.parse_additive()
        tok = self.peek()
        if tok.kind == "op" and tok.text in CMP_OPS:
            self.advance()
            return Cmp(left=node, right=self.parse_additive(), op=tok.text)
        return node

    def parse_additive(self) -> Expr:
        node = self.parse_multiplicative()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ("+", "-"):
                self.advance()
                rhs = self.parse_multiplicative()
                node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)
            else:
                return node

    def parse_multiplicative(self) -> Expr:
        node = self.parse_unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                node = Mul(node, self.parse_unary())
            else:
                return node

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            if self.peek().kind == "number":
                return Const(-float(self.advance().text))
            return Neg(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if tok.kind == "ident":
            if tok.text in FUNC_NAMES:
                return self.parse_call()
            if tok.text in BLOCK_KEYWORDS | LOGIC_KEYWORDS:
                raise self.error(f"unexpected keyword {tok.text!r} in expression")
            self.advance()
            return Var(tok.text)
        raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    def parse_call(self) -> Expr:
        name_tok = self.advance()
        name = name_tok.text
        self.expect_op("(")
        if name in ("min", "max"):
            a = self.parse_expr()
            self.expect_op(",")
            b = self.parse_expr()
            self.expect_op(")")
            return MinE(a, b) if name == "min" else MaxE(a, b)
        if name == "abs":
            a = self.parse_expr()
            self.expect_op(")")
            return Abs(a)
        if name == "clamp":
            a = self.parse_expr()
            self.expect_op(",")
            lo = self._signed_number()
            self.expect_op(",")
            hi = self._signed_number()
            self.expect_op(")")
            if lo > hi:
                raise RewardSyntaxError(
                    f"clamp bounds are inverted ({lo} > {hi})", name_tok.line, name_tok.col
                )
            return Clamp(a, lo=lo, hi=hi)
        # dist
        ga = self._group_name()
        self.expect_op(",")
        gb = self._group_name()
        self.expect_op(")")
        return Dist(group_a=ga, group_b=gb)

    def _signed_number(self) -> float:
        sign = 1.0
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1.0
        tok = self.peek()
        if tok.kind != "number":
            raise self.error("clamp bounds must be numeric literals")
        self.advance()
        return sign * float(tok.text)

    def _group_name(self) -> str:
        tok = self.peek()
        if tok.kind != "ident" or tok.text in BLOCK_KEYWORDS | LOGIC_KEYWORDS | FUNC_NAMES:
            raise self.error("dist() expects a point-group name")
        self.advance()
        return tok.text


def parse_reward_spec(text: str, horizon: int = 1000) -> RewardSpec:
    """Parse a reward program; horizon is bound here because the grammar has
    no horizon clause (it belongs to the episode, not the reward)."""
    return _Parser(tokenize(text)).parse_spec(horizon)


def parse_expr(text: str) -> Expr:
    """Parse a bare expression (used by tests and tooling)."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise RewardSyntaxError(f"unexpected {tok.text!r} after expression", tok.line, tok.col)
    return node
