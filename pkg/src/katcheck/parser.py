"""Concrete syntax for expressions and the line-oriented problem file format.

Grammar (precedence low to high: ``+``, ``.``/juxtaposition, ``!``, ``*``)::

    expr   := term {"+" term}
    term   := factor {("." factor) | factor}
    factor := base {"*"}
    base   := "0" | "1" | ident | "!" base | "(" expr ")"

Negation is only defined on the Boolean sub-grammar, so ``!`` demands a
Boolean operand; applying it to anything containing an action is a type
error.  Sub-expressions are typed bottom-up: a node built purely from tests
and constants carries a Boolean reading alongside its KAT reading, and ``!``
uses the Boolean one.

Problem files look like::

    tests: t0 t1
    actions: p1 p2
    lhs: t0 . p1 . !t1
    rhs: 0
    assume: t0 -> [p1] t1
    assume: t0 -> t1

``assume: b -> [p] b'`` declares the action hypothesis b.p.!b' = 0 and
``assume: c -> c'`` the Boolean hypothesis c <= c'.  Blank lines and lines
starting with ``#`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .assumptions import AssumptionSet
from .syntax import (
    BoolExpr,
    KatExpr,
    KONE,
    KZERO,
    ONE,
    SymbolTable,
    Test,
    ZERO,
    act,
    band,
    bnot,
    bor,
    dot,
    lift,
    plus,
    star,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.pos = pos
        self.line = line
        self.column = col


# ---------------------------------------------------------------------------
# tokeniser
# ---------------------------------------------------------------------------

_SYMBOLS = {
    "+": "PLUS",
    ".": "DOT",
    "*": "STAR",
    "!": "BANG",
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    ";": "SEMI",
}

_KEYWORDS = {"skip", "do", "if", "else", "while", "inv", "seq"}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str, keywords: bool = False) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if c in _SYMBOLS:
            toks.append(Token(_SYMBOLS[c], c, i))
            i += 1
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", text, i)
            toks.append(Token("STRING", text[i + 1 : j], i))
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            word = text[i:j]
            if word == "0":
                toks.append(Token("ZERO", word, i))
            elif word == "1":
                toks.append(Token("ONE", word, i))
            else:
                raise ParseError(f"unexpected numeral '{word}'", text, i)
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if keywords and word in _KEYWORDS else "IDENT"
            toks.append(Token(kind, word, i))
            i = j
            continue
        raise ParseError(f"unexpected character '{c}'", text, i)
    toks.append(Token("EOF", "", n))
    return toks


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_FACTOR_START = {"ZERO", "ONE", "IDENT", "BANG", "LPAREN"}


@dataclass
class _Val:
    kat: KatExpr
    boolean: BoolExpr | None  # present iff the subexpression is purely Boolean


class _ExprParser:
    def __init__(self, text: str, toks: list[Token], table: SymbolTable):
        self.text = text
        self.toks = toks
        self.table = table

    def fail(self, message: str, tok: Token):
        raise ParseError(message, self.text, tok.pos)

    def expr(self, i: int) -> tuple[_Val, int]:
        vals = []
        v, i = self.term(i)
        vals.append(v)
        while self.toks[i].kind == "PLUS":
            v, i = self.term(i + 1)
            vals.append(v)
        if len(vals) == 1:
            return vals[0], i
        boolean = None
        if all(v.boolean is not None for v in vals):
            boolean = bor(*[v.boolean for v in vals])
        return _Val(plus(*[v.kat for v in vals]), boolean), i

    def term(self, i: int) -> tuple[_Val, int]:
        vals = []
        v, i = self.factor(i)
        vals.append(v)
        while True:
            if self.toks[i].kind == "DOT":
                v, i = self.factor(i + 1)
            elif self.toks[i].kind in _FACTOR_START:
                v, i = self.factor(i)
            else:
                break
            vals.append(v)
        if len(vals) == 1:
            return vals[0], i
        boolean = None
        if all(v.boolean is not None for v in vals):
            boolean = band(*[v.boolean for v in vals])
        return _Val(dot(*[v.kat for v in vals]), boolean), i

    def factor(self, i: int) -> tuple[_Val, int]:
        v, i = self.base(i)
        while self.toks[i].kind == "STAR":
            v = _Val(star(v.kat), None)
            i += 1
        return v, i

    def base(self, i: int) -> tuple[_Val, int]:
        tok = self.toks[i]
        if tok.kind == "ZERO":
            return _Val(KZERO, ZERO), i + 1
        if tok.kind == "ONE":
            return _Val(KONE, ONE), i + 1
        if tok.kind == "IDENT":
            a = self.table.action_index(tok.value)
            if a is not None:
                return _Val(act(a), None), i + 1
            t = self.table.test_index(tok.value)
            if t is not None:
                return _Val(lift(Test(t)), Test(t)), i + 1
            self.fail(f"undeclared identifier '{tok.value}'", tok)
        if tok.kind == "BANG":
            v, i = self.base(i + 1)
            if v.boolean is None:
                self.fail("negation applies only to Boolean expressions", tok)
            nb = bnot(v.boolean)
            return _Val(lift(nb), nb), i
        if tok.kind == "LPAREN":
            v, i = self.expr(i + 1)
            if self.toks[i].kind != "RPAREN":
                self.fail("expected ')'", self.toks[i])
            return v, i + 1
        self.fail(f"expected an expression, found '{tok.value or tok.kind}'", tok)


def _parse_value(text: str, table: SymbolTable) -> _Val:
    toks = tokenize(text)
    p = _ExprParser(text, toks, table)
    v, i = p.expr(0)
    if toks[i].kind != "EOF":
        p.fail(f"unexpected trailing input '{toks[i].value}'", toks[i])
    return v


def parse_kat(text: str, table: SymbolTable) -> KatExpr:
    """Parse a KAT expression in concrete syntax into its normal-form AST."""
    return _parse_value(text, table).kat


def parse_bool(text: str, table: SymbolTable) -> BoolExpr:
    """Parse a Boolean expression; fails if any action symbol occurs."""
    v = _parse_value(text, table)
    if v.boolean is None:
        raise ParseError("expected a Boolean expression", text, 0)
    return v.boolean


# ---------------------------------------------------------------------------
# problem files
# ---------------------------------------------------------------------------


@dataclass
class EquivalenceProblem:
    table: SymbolTable
    lhs: KatExpr
    rhs: KatExpr
    assumptions: AssumptionSet = field(default_factory=AssumptionSet)


def _split_names(payload: str, what: str, lineno: int) -> tuple[str, ...]:
    names = tuple(payload.split())
    if not names:
        raise ValueError(f"line {lineno}: empty {what} declaration")
    return names


def parse_expr_file(text: str) -> EquivalenceProblem:
    """Read a problem file: symbol declarations, lhs/rhs, optional assumptions."""
    tests: tuple[str, ...] | None = None
    actions: tuple[str, ...] | None = None
    table: SymbolTable | None = None
    lhs = rhs = None
    action_hyps = []
    bool_hyps = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, payload = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        payload = payload.strip()
        if key == "tests":
            tests = _split_names(payload, "tests", lineno)
        elif key == "actions":
            actions = _split_names(payload, "actions", lineno)
        elif key in ("lhs", "rhs", "assume"):
            if tests is None or actions is None:
                raise ValueError(
                    f"line {lineno}: 'tests:' and 'actions:' must come first"
                )
            if table is None:
                table = SymbolTable(actions, tests)
            if key == "lhs":
                lhs = parse_kat(payload, table)
            elif key == "rhs":
                rhs = parse_kat(payload, table)
            else:
                hyp = _parse_assume(payload, table, lineno)
                if len(hyp) == 3:
                    action_hyps.append(hyp)
                else:
                    bool_hyps.append(hyp)
        else:
            raise ValueError(f"line {lineno}: unknown key '{key}'")

    if table is None or lhs is None or rhs is None:
        raise ValueError("file must declare tests, actions, lhs and rhs")
    return EquivalenceProblem(
        table, lhs, rhs, AssumptionSet(tuple(action_hyps), tuple(bool_hyps))
    )


def _parse_assume(payload: str, table: SymbolTable, lineno: int):
    left, sep, right = payload.partition("->")
    if not sep:
        raise ValueError(f"line {lineno}: assumption needs '->'")
    left = left.strip()
    right = right.strip()
    try:
        if right.startswith("["):
            close = right.index("]")
            name = right[1:close].strip()
            a = table.action_index(name)
            if a is None:
                raise ValueError(f"line {lineno}: undeclared action '{name}'")
            return (parse_bool(left, table), a, parse_bool(right[close + 1 :], table))
        return (parse_bool(left, table), parse_bool(right, table))
    except ParseError as exc:
        raise ValueError(f"line {lineno}: {exc}") from exc
