"""Worklist decision procedure for guarded-string equivalence.

Two sets of expressions are equivalent iff they accept the same lone atoms
and their derivative sets are pairwise equivalent for every one-step prefix.
The loop explores pairs of derivative sets breadth first, keeping a history
of pairs already handled; finiteness of the derivative closure makes the
history, and hence the loop, finite.  FIFO order makes counterexamples
shortest and the reported iteration count reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .derivatives import acceptance_mask, grouped_form
from .semantics import GuardedString
from .syntax import Atom, ExprSet, KatExpr, SymbolTable

Trace = tuple[tuple[Atom, int], ...]


@dataclass(frozen=True)
class SetPair:
    """A pending pair of derivative sets plus the word that led to it."""

    left: ExprSet
    right: ExprSet
    trace: Trace = ()


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    counterexample: GuardedString | None
    h_size: int

    def __bool__(self) -> bool:
        return self.equivalent


def _merge_forms(exprs: Iterable[KatExpr], form_of: Callable[[KatExpr], dict]) -> dict:
    merged: dict = {}
    for e in exprs:
        for head, tails in form_of(e).items():
            cur = merged.get(head)
            merged[head] = tails if cur is None else cur | tails
    return merged


def _children(
    pair: SetPair, form_of: Callable[[KatExpr], dict]
) -> list[SetPair]:
    g1 = _merge_forms(pair.left, form_of)
    g2 = _merge_forms(pair.right, form_of)
    empty: ExprSet = frozenset()
    out = []
    for head in sorted(set(g1) | set(g2), key=lambda h: (h[0].bits, h[1])):
        out.append(
            SetPair(
                g1.get(head, empty), g2.get(head, empty), pair.trace + (head,)
            )
        )
    return out


def derived_pairs(pair: SetPair, table: SymbolTable) -> list[SetPair]:
    """One pair of derivative sets per head of either side, in canonical order."""
    return _children(pair, lambda e: grouped_form(e, table))


def _set_mask(exprs: ExprSet, width: int) -> int:
    mask = 0
    for e in exprs:
        mask |= acceptance_mask(e, width)
    return mask


def bisimilarity(
    left: ExprSet,
    right: ExprSet,
    width: int,
    atoms_mask: int,
    form_of: Callable[[KatExpr], dict],
) -> Verdict:
    """Core loop, parameterised by the atom universe and the transition form.

    ``atoms_mask`` selects which atoms count for the acceptance comparison
    (all of them for plain equivalence, the hypothesis-respecting ones for
    equivalence modulo assumptions); ``form_of`` supplies each expression's
    grouped one-step transitions.
    """
    start = SetPair(left, right)
    seen: set[tuple[ExprSet, ExprSet]] = {(left, right)}
    pending: deque[SetPair] = deque([start])
    processed = 0
    while pending:
        pair = pending.popleft()
        diff = (_set_mask(pair.left, width) ^ _set_mask(pair.right, width)) & atoms_mask
        if diff:
            # first differing atom in canonical order = lowest set bit
            alpha = Atom((diff & -diff).bit_length() - 1, width)
            witness = GuardedString(
                tuple(a for a, _ in pair.trace) + (alpha,),
                tuple(p for _, p in pair.trace),
            )
            return Verdict(False, witness, processed)
        processed += 1
        for child in _children(pair, form_of):
            key = (child.left, child.right)
            if key not in seen:
                seen.add(key)
                pending.append(child)
    return Verdict(True, None, processed)


def equiv_sets(left: ExprSet, right: ExprSet, table: SymbolTable) -> Verdict:
    """Decide guarded-string equality of two sets of KAT expressions."""
    full = (1 << (1 << table.l)) - 1
    return bisimilarity(
        frozenset(left),
        frozenset(right),
        table.l,
        full,
        lambda e: grouped_form(e, table),
    )


def equiv(e1: KatExpr, e2: KatExpr, table: SymbolTable) -> Verdict:
    """Decide guarded-string equality of two KAT expressions."""
    return equiv_sets(frozenset([e1]), frozenset([e2]), table)
