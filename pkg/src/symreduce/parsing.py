"""Expression and input-file parsing.

Grammar (no implicit multiplication, whitespace insignificant):

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := ('-')? factor
    factor   := base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    variable := ('x' | 'p') natural
    rational := natural ('/' natural)?

``x<i>`` is the i-th variable, ``p<i>`` the i-th power sum; both indices must
lie in 1..nvars.  Negative numbers come from unary minus.

Input files: a ``nvars: <n>`` header, an optional ``objective: <expr>`` line,
then one constraint per line as ``<expr> <relation>`` with relation one of
=0, >=0, >0, !=0.  Blank lines and ``#`` comments are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .polynomial import Poly, power_sum
from .reduction import Relation


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, VAR, OP, END
    text: str
    column: int
    value: int = 0
    prefix: str = ""


_OPS = set("+-*^/()")


def _tokenize(text: str, line: int) -> list[_Token]:
    tokens = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _OPS:
            tokens.append(_Token("OP", ch, col))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < length and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUMBER", text[i:j], col, value=int(text[i:j])))
            i = j
            continue
        if ch in ("x", "p"):
            j = i + 1
            while j < length and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"expected an index after '{ch}'", line, col)
            tokens.append(
                _Token("VAR", text[i:j], col, value=int(text[i + 1 : j]), prefix=ch)
            )
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("END", "", length + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], nvars: int, line: int):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.line = line

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, token: Optional[_Token] = None):
        tok = token or self.peek()
        raise ParseError(message, self.line, tok.column)

    def parse(self) -> Poly:
        result = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            self.error(f"unexpected {tok.text!r} after expression", tok)
        return result

    def expr(self) -> Poly:
        value = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self) -> Poly:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "*":
                self.advance()
                value = value * self.unary()
            else:
                return value

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return -self.factor()
        return self.factor()

    def factor(self) -> Poly:
        value = self.base()
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "NUMBER":
                self.error("exponent must be a natural number", exp_tok)
            self.advance()
            return value ** exp_tok.value
        return value

    def base(self) -> Poly:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            numerator = tok.value
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "NUMBER" or den_tok.value == 0:
                    self.error("denominator must be a positive integer", den_tok)
                self.advance()
                return Poly.constant(self.nvars, Fraction(numerator, den_tok.value))
            return Poly.constant(self.nvars, numerator)
        if tok.kind == "VAR":
            self.advance()
            index = tok.value
            if tok.prefix == "x":
                if not 1 <= index <= self.nvars:
                    self.error(
                        f"{tok.text} is out of range: variables run x1..x{self.nvars}",
                        tok,
                    )
                return Poly.variable(self.nvars, index)
            # p<i> is x1^i + ... + xn^i, well defined for any i >= 1
            if index < 1:
                self.error("power-sum indices start at 1", tok)
            return power_sum(self.nvars, index)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            inner = self.expr()
            closing = self.peek()
            if not (closing.kind == "OP" and closing.text == ")"):
                self.error("expected ')'", closing)
            self.advance()
            return inner
        if tok.kind == "END":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {tok.text!r}", tok)


def parse_expression(text: str, nvars: int, *, line: int = 1) -> Poly:
    """Parse one expression into a Poly with ``nvars`` ambient variables."""
    if nvars < 1:
        raise ValueError("nvars must be positive")
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty expression", line, 1)
    tokens = _tokenize(text, line)
    return _Parser(tokens, nvars, line).parse()


RELATION_TOKENS = tuple(r.value for r in Relation)


@dataclass(frozen=True)
class InputSystem:
    """A parsed problem: constraints, optional objective, and raw text."""

    nvars: int
    constraints: tuple[tuple[Poly, Relation], ...]
    constraint_texts: tuple[tuple[str, str], ...]
    objective: Optional[Poly] = None
    objective_text: Optional[str] = None
    mode: str = ""

    def canonical_text(self) -> str:
        lines = [f"nvars: {self.nvars}"]
        if self.objective_text is not None:
            lines.append(f"objective: {self.objective_text}")
        for expr, rel in self.constraint_texts:
            lines.append(f"{expr} {rel}")
        return "\n".join(lines) + "\n"


_RELATION_SUFFIX = re.compile(r"(.*?)\s*(>=|!=|>|=)\s*0\s*$", re.DOTALL)


def _split_constraint(body: str, line: int) -> tuple[str, str]:
    # expressions cannot contain '=', '>' or '!', so the comparator is unambiguous
    match = _RELATION_SUFFIX.fullmatch(body.strip())
    if match is None:
        raise ParseError(
            "constraint must end with one of " + ", ".join(RELATION_TOKENS), line, 1
        )
    expr = match.group(1).strip()
    if not expr:
        raise ParseError("constraint has no expression", line, 1)
    return expr, match.group(2) + "0"


def parse_system_text(text: str, *, mode: str = "") -> InputSystem:
    """Parse the input-file format (see module docstring)."""
    nvars: Optional[int] = None
    objective_text: Optional[str] = None
    objective_line = 0
    raw_constraints: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        lowered = body.lower()
        if lowered.startswith("nvars:"):
            if nvars is not None:
                raise ParseError("duplicate nvars header", lineno, 1)
            tail = body.split(":", 1)[1].strip()
            if not tail.isdigit() or int(tail) < 1:
                raise ParseError("nvars must be a positive integer", lineno, 1)
            nvars = int(tail)
            continue
        if lowered.startswith("objective:"):
            if objective_text is not None:
                raise ParseError("duplicate objective line", lineno, 1)
            objective_text = body.split(":", 1)[1].strip()
            objective_line = lineno
            continue
        expr, rel = _split_constraint(body, lineno)
        raw_constraints.append((expr, rel, lineno))
    if nvars is None:
        raise ParseError("missing 'nvars: <n>' header", 1, 1)
    constraints = []
    texts = []
    for expr, rel, lineno in raw_constraints:
        poly = parse_expression(expr, nvars, line=lineno)
        constraints.append((poly, Relation.from_text(rel)))
        texts.append((expr, rel))
    objective = None
    if objective_text is not None:
        objective = parse_expression(objective_text, nvars, line=objective_line)
    return InputSystem(
        nvars=nvars,
        constraints=tuple(constraints),
        constraint_texts=tuple(texts),
        objective=objective,
        objective_text=objective_text,
        mode=mode,
    )


def parse_inline_constraints(text: str, nvars: int) -> InputSystem:
    """Parse ';'-separated inline constraints like "p1 =0; p2 - 1 >=0"."""
    constraints = []
    texts = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        expr, rel = _split_constraint(chunk, 1)
        constraints.append((parse_expression(expr, nvars), Relation.from_text(rel)))
        texts.append((expr, rel))
    if not constraints:
        raise ParseError("no constraints given", 1, 1)
    return InputSystem(
        nvars=nvars,
        constraints=tuple(constraints),
        constraint_texts=tuple(texts),
    )
