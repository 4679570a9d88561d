"""Annotated while-programs, their KAT encoding, and assertion checking.

A partial correctness assertion ``{b} P {c}`` holds iff the encoding
``b . encode(P) . !c`` denotes the empty guarded-string language under the
hypotheses extracted from the program's annotations.  Every sequencing point
carries an intermediate assertion and every loop an invariant, so the
hypothesis set can be generated mechanically, one hypothesis per primitive
statement plus two Boolean obligations per loop.

Program file format::

    tests: t0 t1 t2 t3 t4 t5
    actions: p1 p2 p3 p4
    pre: t0
    post: t5
    do p1 "y := 1" ;{t1};
    do p2 "z := 0" ;{t2};
    while t3 inv {t2} {
      do p3 "z := z+1" ;{t4};
      do p4 "y := y*z"
    }

Statements: ``skip``, ``do <action> ["label"]``, ``if b { P } else { P }``,
``while b inv {i} { P }``, ``seq { P } {c} { P }``, ``{ P }`` for grouping,
and the infix sequencing ``P ;{c}; Q``.  The ``skip`` statement uses a
distinguished action symbol named ``skip``, declared automatically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .assumptions import AssumptionSet, check_implication
from .checker import Verdict
from .parser import ParseError, Token, _ExprParser, parse_bool, tokenize
from .syntax import (
    BoolExpr,
    KZERO,
    KatExpr,
    SymbolTable,
    act,
    band,
    bnot,
    dot,
    lift,
    plus,
    star,
)

SKIP_ACTION = "skip"


class Skip:
    """The do-nothing statement."""

    def __repr__(self):
        return "Skip()"

    def __eq__(self, other):
        return isinstance(other, Skip)

    def __hash__(self):
        return hash(Skip)


@dataclass(frozen=True)
class Prim:
    """A primitive statement abstracted to an action symbol.

    The label keeps the original statement text for reporting only.
    """

    action: int
    label: str = ""


@dataclass(frozen=True)
class Seq:
    first: "Program"
    mid: BoolExpr
    second: "Program"


@dataclass(frozen=True)
class If:
    cond: BoolExpr
    then_branch: "Program"
    else_branch: "Program"


@dataclass(frozen=True)
class While:
    cond: BoolExpr
    invariant: BoolExpr
    body: "Program"


Program = Skip | Prim | Seq | If | While


@dataclass(frozen=True)
class Pca:
    """A partial correctness assertion {pre} program {post}."""

    pre: BoolExpr
    program: Program
    post: BoolExpr


class EncodingError(ValueError):
    pass


def _skip_index(table: SymbolTable) -> int:
    idx = table.action_index(SKIP_ACTION)
    if idx is None:
        raise EncodingError(
            f"the program uses skip but no '{SKIP_ACTION}' action is declared"
        )
    return idx


def encode(prog: Program, table: SymbolTable) -> KatExpr:
    """Translate a program into a KAT expression over the table's symbols."""
    if isinstance(prog, Skip):
        return act(_skip_index(table))
    if isinstance(prog, Prim):
        return act(prog.action)
    if isinstance(prog, Seq):
        return dot(
            encode(prog.first, table), lift(prog.mid), encode(prog.second, table)
        )
    if isinstance(prog, If):
        return plus(
            dot(lift(prog.cond), encode(prog.then_branch, table)),
            dot(lift(bnot(prog.cond)), encode(prog.else_branch, table)),
        )
    if isinstance(prog, While):
        return dot(
            star(
                dot(
                    lift(prog.cond),
                    lift(prog.invariant),
                    encode(prog.body, table),
                )
            ),
            lift(bnot(prog.cond)),
        )
    raise EncodingError(f"not a program construct: {prog!r}")


def encode_pca(pca: Pca, table: SymbolTable) -> KatExpr:
    """pre . encode(program) . !post; the assertion holds iff this equals 0."""
    return dot(lift(pca.pre), encode(pca.program, table), lift(bnot(pca.post)))


def generate_assumptions(
    pre: BoolExpr, prog: Program, post_complement: BoolExpr
) -> AssumptionSet:
    """Extract the hypothesis set that makes the encoded assertion provable.

    Recurses over the construct tree: a skip yields a Boolean hypothesis, a
    primitive an action hypothesis, sequencing splits at its assertion,
    branching strengthens the precondition, and a loop contributes its body's
    hypotheses plus entry and exit obligations.
    """
    post = bnot(post_complement)
    if isinstance(prog, Skip):
        return AssumptionSet(bool_hyps=((pre, post),))
    if isinstance(prog, Prim):
        return AssumptionSet(action_hyps=((pre, prog.action, post),))
    if isinstance(prog, Seq):
        return generate_assumptions(pre, prog.first, bnot(prog.mid)).union(
            generate_assumptions(prog.mid, prog.second, post_complement)
        )
    if isinstance(prog, If):
        return generate_assumptions(
            band(pre, prog.cond), prog.then_branch, post_complement
        ).union(
            generate_assumptions(
                band(pre, bnot(prog.cond)), prog.else_branch, post_complement
            )
        )
    if isinstance(prog, While):
        inv, cond = prog.invariant, prog.cond
        body = generate_assumptions(band(inv, cond), prog.body, bnot(inv))
        return body.union(
            AssumptionSet(bool_hyps=((pre, inv), (band(inv, bnot(cond)), post)))
        )
    raise EncodingError(f"not a program construct: {prog!r}")


def pca_assumptions(pca: Pca) -> AssumptionSet:
    return generate_assumptions(pca.pre, pca.program, bnot(pca.post))


def _uses_skip(prog: Program) -> bool:
    if isinstance(prog, Skip):
        return True
    if isinstance(prog, Seq):
        return _uses_skip(prog.first) or _uses_skip(prog.second)
    if isinstance(prog, If):
        return _uses_skip(prog.then_branch) or _uses_skip(prog.else_branch)
    if isinstance(prog, While):
        return _uses_skip(prog.body)
    return False


def check_pca(pca: Pca, table: SymbolTable, method: str = "gamma") -> Verdict:
    """Decide a partial correctness assertion.

    Encodes the assertion, generates its hypothesis set, and checks that the
    encoding equals 0 under the hypotheses by the chosen method.
    """
    if _uses_skip(pca.program):
        table = table.with_action(SKIP_ACTION)
    expr = encode_pca(pca, table)
    assumptions = pca_assumptions(pca)
    return check_implication(assumptions, expr, KZERO, table, method)


# ---------------------------------------------------------------------------
# program files
# ---------------------------------------------------------------------------


@dataclass
class ProgramFile:
    table: SymbolTable
    pca: Pca
    annotation_sites: Counter = field(default_factory=Counter)

    def reused_tests(self) -> dict[str, int]:
        """Test symbols annotating more than one program point."""
        return {name: n for name, n in sorted(self.annotation_sites.items()) if n > 1}


class _ProgramParser:
    def __init__(self, text: str, table: SymbolTable):
        self.text = text
        self.toks = tokenize(text, keywords=True)
        self.table = table
        self.exprs = _ExprParser(text, self.toks, table)
        self.annotations: list[BoolExpr] = []

    def fail(self, message: str, tok: Token):
        raise ParseError(message, self.text, tok.pos)

    def expect(self, kind: str, i: int, what: str) -> int:
        if self.toks[i].kind != kind:
            self.fail(f"expected {what}", self.toks[i])
        return i + 1

    def guard(self, i: int) -> tuple[BoolExpr, int]:
        v, i = self.exprs.expr(i)
        if v.boolean is None:
            self.fail("a guard must be a Boolean expression", self.toks[i])
        return v.boolean, i

    def braced_bool(self, i: int) -> tuple[BoolExpr, int]:
        i = self.expect("LBRACE", i, "'{'")
        b, i = self.guard(i)
        i = self.expect("RBRACE", i, "'}'")
        return b, i

    def annotation(self, i: int) -> tuple[BoolExpr, int]:
        b, i = self.braced_bool(i)
        self.annotations.append(b)
        return b, i

    def block(self, i: int) -> tuple[Program, int]:
        i = self.expect("LBRACE", i, "'{'")
        prog, i = self.program(i)
        i = self.expect("RBRACE", i, "'}'")
        return prog, i

    def statement(self, i: int) -> tuple[Program, int]:
        tok = self.toks[i]
        if tok.kind == "KEYWORD":
            if tok.value == "skip":
                return Skip(), i + 1
            if tok.value == "do":
                name_tok = self.toks[i + 1]
                if name_tok.kind != "IDENT":
                    self.fail("expected an action name after 'do'", name_tok)
                a = self.table.action_index(name_tok.value)
                if a is None:
                    self.fail(f"undeclared action '{name_tok.value}'", name_tok)
                i += 2
                label = ""
                if self.toks[i].kind == "STRING":
                    label = self.toks[i].value
                    i += 1
                return Prim(a, label), i
            if tok.value == "if":
                cond, i = self.guard(i + 1)
                then_branch, i = self.block(i)
                if (
                    self.toks[i].kind != "KEYWORD"
                    or self.toks[i].value != "else"
                ):
                    self.fail("expected 'else'", self.toks[i])
                else_branch, i = self.block(i + 1)
                return If(cond, then_branch, else_branch), i
            if tok.value == "while":
                cond, i = self.guard(i + 1)
                if self.toks[i].kind != "KEYWORD" or self.toks[i].value != "inv":
                    self.fail("expected 'inv' after the loop guard", self.toks[i])
                inv, i = self.annotation(i + 1)
                body, i = self.block(i)
                return While(cond, inv, body), i
            if tok.value == "seq":
                first, i = self.block(i + 1)
                mid, i = self.annotation(i)
                second, i = self.block(i)
                return Seq(first, mid, second), i
            self.fail(f"unexpected keyword '{tok.value}'", tok)
        if tok.kind == "LBRACE":
            return self.block(i)
        self.fail("expected a statement", tok)

    def program(self, i: int) -> tuple[Program, int]:
        first, i = self.statement(i)
        if self.toks[i].kind != "SEMI":
            return first, i
        mid, i = self.annotation(i + 1)
        if self.toks[i].kind == "SEMI":
            i += 1
        rest, i = self.program(i)
        return Seq(first, mid, rest), i


def parse_program_file(text: str) -> ProgramFile:
    """Read a program file into its symbol table and assertion."""
    lines = text.splitlines()
    headers: dict[str, str] = {}
    body_start = 0
    for idx, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, payload = line.partition(":")
        if sep and key.strip() in ("tests", "actions", "pre", "post"):
            k = key.strip()
            if k in headers:
                raise ValueError(f"duplicate '{k}:' header")
            headers[k] = payload.strip()
            body_start = idx + 1
            continue
        break
    missing = {"tests", "actions", "pre", "post"} - set(headers)
    if missing:
        raise ValueError(f"missing headers: {', '.join(sorted(missing))}")

    tests = tuple(headers["tests"].split())
    actions = tuple(headers["actions"].split())
    body = "\n".join(lines[body_start:])
    if SKIP_ACTION not in actions and _body_mentions_skip(body):
        actions = actions + (SKIP_ACTION,)
    table = SymbolTable(actions, tests)

    pre = parse_bool(headers["pre"], table)
    post = parse_bool(headers["post"], table)

    parser = _ProgramParser(body, table)
    prog, i = parser.program(0)
    if parser.toks[i].kind != "EOF":
        parser.fail("unexpected trailing input", parser.toks[i])

    sites = Counter()
    for b in [pre, post] + parser.annotations:
        for name in _test_names(b, table):
            sites[name] += 1
    return ProgramFile(table, Pca(pre, prog, post), sites)


def _body_mentions_skip(body: str) -> bool:
    return any(
        t.kind == "KEYWORD" and t.value == "skip" for t in tokenize(body, True)
    )


def _test_names(b: BoolExpr, table: SymbolTable) -> set[str]:
    from .syntax import And, Not, Or, Test

    if isinstance(b, Test):
        return {table.tests[b.index]}
    if isinstance(b, Not):
        return _test_names(b.operand, table)
    if isinstance(b, (And, Or)):
        out: set[str] = set()
        for p in b.parts:
            out |= _test_names(p, table)
        return out
    return set()
