"""Partial derivatives of KAT expressions.

The language of an expression is a set of guarded strings; quotienting it by
a one-step prefix (an atom followed by an action) is represented syntactically
by a finite set of residual expressions.  ``linear_form`` computes every
one-step transition of an expression at once as a set of
``(atom, action, residual)`` triples; ``closure`` over-approximates all
expressions reachable by iterated derivatives, which is finite and gives the
equivalence checker its termination argument.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from typing import Iterable

from .syntax import (
    Action,
    Atom,
    Bool,
    Dot,
    KONE,
    KatExpr,
    Plus,
    Star,
    SymbolTable,
    all_atoms,
    dot,
    satisfying_atoms_mask,
)

LinearForm = frozenset
"""frozenset of (Atom, action index, KatExpr) transition triples."""


# ---------------------------------------------------------------------------
# atom acceptance
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def acceptance_mask(e: KatExpr, width: int) -> int:
    """Bitset over atoms: bit a is set iff the lone atom a is in the language."""
    full = (1 << (1 << width)) - 1
    if isinstance(e, Action):
        return 0
    if isinstance(e, Bool):
        return satisfying_atoms_mask(e.value, width)
    if isinstance(e, Star):
        return full
    if isinstance(e, Plus):
        return reduce(lambda m, p: m | acceptance_mask(p, width), e.parts, 0)
    if isinstance(e, Dot):
        return reduce(lambda m, p: m & acceptance_mask(p, width), e.parts, full)
    raise TypeError(f"not a KAT expression: {e!r}")


def accepts_atom(e: KatExpr, alpha: Atom) -> bool:
    """Whether the single-atom guarded string alpha belongs to the language of e."""
    return bool((acceptance_mask(e, alpha.width) >> alpha.bits) & 1)


def set_accepts_atom(exprs: Iterable[KatExpr], alpha: Atom) -> bool:
    """Existential lift of accepts_atom to a set of expressions."""
    return any(accepts_atom(e, alpha) for e in exprs)


# ---------------------------------------------------------------------------
# partial derivatives
# ---------------------------------------------------------------------------


def _split(e: Dot) -> tuple[KatExpr, KatExpr]:
    head = e.parts[0]
    rest = e.parts[1] if len(e.parts) == 2 else Dot(e.parts[1:])
    return head, rest


@lru_cache(maxsize=None)
def partial_derivs(e: KatExpr, alpha: Atom, p: int) -> frozenset[KatExpr]:
    """The set of residual expressions after consuming the prefix (alpha, p)."""
    if isinstance(e, Action):
        return frozenset([KONE]) if e.index == p else frozenset()
    if isinstance(e, Bool):
        return frozenset()
    if isinstance(e, Plus):
        out: set[KatExpr] = set()
        for part in e.parts:
            out |= partial_derivs(part, alpha, p)
        return frozenset(out)
    if isinstance(e, Dot):
        head, rest = _split(e)
        out = {dot(d, rest) for d in partial_derivs(head, alpha, p)}
        if accepts_atom(head, alpha):
            out |= partial_derivs(rest, alpha, p)
        return frozenset(out)
    if isinstance(e, Star):
        return frozenset(dot(d, e) for d in partial_derivs(e.child, alpha, p))
    raise TypeError(f"not a KAT expression: {e!r}")


def partial_derivs_set(
    exprs: Iterable[KatExpr], alpha: Atom, p: int
) -> frozenset[KatExpr]:
    out: set[KatExpr] = set()
    for e in exprs:
        out |= partial_derivs(e, alpha, p)
    return frozenset(out)


def word_derivs(
    e: KatExpr, word: Iterable[tuple[Atom, int]]
) -> frozenset[KatExpr]:
    """Iterated partial derivatives along a word of (atom, action) letters."""
    cur: frozenset[KatExpr] = frozenset([e])
    for alpha, p in word:
        cur = partial_derivs_set(cur, alpha, p)
    return cur


# ---------------------------------------------------------------------------
# linear form
# ---------------------------------------------------------------------------


def _form_times(form: frozenset, tail: KatExpr) -> frozenset:
    return frozenset((a, p, dot(t, tail)) for (a, p, t) in form)


@lru_cache(maxsize=None)
def linear_form(e: KatExpr, table: SymbolTable) -> LinearForm:
    """All one-step transitions of e as (atom, action, residual) triples."""
    if isinstance(e, Action):
        return frozenset((a, e.index, KONE) for a in all_atoms(table))
    if isinstance(e, Bool):
        return frozenset()
    if isinstance(e, Plus):
        out: set = set()
        for part in e.parts:
            out |= linear_form(part, table)
        return frozenset(out)
    if isinstance(e, Dot):
        head, rest = _split(e)
        out = set(_form_times(linear_form(head, table), rest))
        head_mask = acceptance_mask(head, table.l)
        out.update(
            (a, p, t)
            for (a, p, t) in linear_form(rest, table)
            if (head_mask >> a.bits) & 1
        )
        return frozenset(out)
    if isinstance(e, Star):
        return _form_times(linear_form(e.child, table), e)
    raise TypeError(f"not a KAT expression: {e!r}")


def heads(form: LinearForm) -> frozenset[tuple[Atom, int]]:
    """The (atom, action) prefixes on which a form has transitions."""
    return frozenset((a, p) for (a, p, _) in form)


def form_tails(form: LinearForm, alpha: Atom, p: int) -> frozenset[KatExpr]:
    """The residuals a form assigns to one (atom, action) prefix."""
    return frozenset(t for (a, q, t) in form if a == alpha and q == p)


@lru_cache(maxsize=None)
def grouped_form(e: KatExpr, table: SymbolTable) -> dict:
    """linear_form of e indexed by head; treat the result as read-only."""
    grouped: dict[tuple[Atom, int], set[KatExpr]] = {}
    for a, p, t in linear_form(e, table):
        grouped.setdefault((a, p), set()).add(t)
    return {h: frozenset(ts) for h, ts in grouped.items()}


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def closure(e: KatExpr) -> frozenset[KatExpr]:
    """A finite superset of every iterated partial derivative of e, containing e."""
    if isinstance(e, Bool):
        return frozenset([e])
    if isinstance(e, Action):
        return frozenset([e, KONE])
    if isinstance(e, Plus):
        out = {e}
        for part in e.parts:
            out |= closure(part)
        return frozenset(out)
    if isinstance(e, Dot):
        head, rest = _split(e)
        out = {e}
        out |= {dot(x, rest) for x in closure(head)}
        out |= closure(rest)
        return frozenset(out)
    if isinstance(e, Star):
        return frozenset([e]) | {dot(x, e) for x in closure(e.child)}
    raise TypeError(f"not a KAT expression: {e!r}")
