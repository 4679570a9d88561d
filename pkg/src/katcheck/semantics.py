"""Executable reference semantics: bounded enumeration of guarded strings.

A guarded string alternates atoms and actions, starting and ending with an
atom.  ``gs_bounded`` enumerates exactly the guarded strings of an expression
whose action count stays within a bound; it is deliberately brute force and
serves as the independent oracle for the derivative machinery.  Everything
here recomputes what it needs from first principles (truth tables, explicit
fusion) rather than calling into the derivative engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterable

from .syntax import (
    Action,
    Atom,
    Bool,
    Dot,
    KatExpr,
    Plus,
    Star,
    SymbolTable,
    all_atoms,
    atom_satisfies,
    format_atom,
)

if TYPE_CHECKING:  # pragma: no cover
    from .assumptions import AssumptionSet


@dataclass(frozen=True)
class GuardedString:
    """Alternating sequence a1 p1 a2 ... p(n-1) an of atoms and actions."""

    atoms: tuple[Atom, ...]
    actions: tuple[int, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.actions) + 1:
            raise ValueError("a guarded string has one more atom than actions")

    @property
    def first(self) -> Atom:
        return self.atoms[0]

    @property
    def last(self) -> Atom:
        return self.atoms[-1]

    @property
    def action_length(self) -> int:
        return len(self.actions)


@dataclass(frozen=True)
class GsSet:
    """A finite window onto a guarded-string language: all members within bound."""

    strings: frozenset[GuardedString]
    bound: int


def format_guarded_string(x: GuardedString, table: SymbolTable) -> str:
    out = [format_atom(x.atoms[0], table)]
    for p, alpha in zip(x.actions, x.atoms[1:]):
        out.append(table.actions[p])
        out.append(format_atom(alpha, table))
    return " ".join(out)


def fuse(x: GuardedString, y: GuardedString) -> GuardedString | None:
    """Fusion product of two strings; None when the boundary atoms differ."""
    if x.last != y.first:
        return None
    return GuardedString(x.atoms + y.atoms[1:], x.actions + y.actions)


def _fuse_sets(
    xs: Iterable[GuardedString], ys: Iterable[GuardedString], bound: int
) -> set[GuardedString]:
    by_first: dict[Atom, list[GuardedString]] = {}
    for y in ys:
        by_first.setdefault(y.first, []).append(y)
    out: set[GuardedString] = set()
    for x in xs:
        room = bound - x.action_length
        if room < 0:
            continue
        for y in by_first.get(x.last, ()):
            if y.action_length <= room:
                out.add(GuardedString(x.atoms + y.atoms[1:], x.actions + y.actions))
    return out


def _min_actions(e: KatExpr) -> int:
    """Least action count of any string the expression can denote (0 if none)."""
    if isinstance(e, Bool):
        return 0
    if isinstance(e, Action):
        return 1
    if isinstance(e, Star):
        return 0
    if isinstance(e, Plus):
        return min(_min_actions(p) for p in e.parts)
    if isinstance(e, Dot):
        return sum(_min_actions(p) for p in e.parts)
    raise TypeError(f"not a KAT expression: {e!r}")


def fusion_product(xs: GsSet, ys: GsSet, bound: int) -> GsSet:
    """All fusions xy with last(x) = first(y), truncated to the bound."""
    return GsSet(frozenset(_fuse_sets(xs.strings, ys.strings, bound)), bound)


def left_quotient(xs: GsSet, alpha: Atom, p: int) -> GsSet:
    """All suffixes y such that the string (alpha p y) belongs to the set."""
    out = set()
    for x in xs.strings:
        if x.action_length >= 1 and x.atoms[0] == alpha and x.actions[0] == p:
            out.add(GuardedString(x.atoms[1:], x.actions[1:]))
    return GsSet(frozenset(out), max(xs.bound - 1, 0))


# ---------------------------------------------------------------------------
# bounded enumeration
# ---------------------------------------------------------------------------


def _enumerate(
    e: KatExpr,
    bound: int,
    atoms: tuple[Atom, ...],
    step_ok: Callable[[Atom, int, Atom], bool],
    memo: dict,
) -> frozenset[GuardedString]:
    key = (e, bound)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Bool):
        out = frozenset(
            GuardedString((a,), ()) for a in atoms if atom_satisfies(a, e.value)
        )
    elif isinstance(e, Action):
        if bound < 1:
            out = frozenset()
        else:
            out = frozenset(
                GuardedString((a, b), (e.index,))
                for a in atoms
                for b in atoms
                if step_ok(a, e.index, b)
            )
    elif isinstance(e, Plus):
        acc: set[GuardedString] = set()
        for part in e.parts:
            acc |= _enumerate(part, bound, atoms, step_ok, memo)
        out = frozenset(acc)
    elif isinstance(e, Dot):
        # each factor only gets the action budget the others cannot consume
        mins = [_min_actions(p) for p in e.parts]
        total = sum(mins)
        sets = [
            _enumerate(p, max(bound - (total - m), 0), atoms, step_ok, memo)
            for p, m in zip(e.parts, mins)
        ]
        # fuse the cheapest adjacent pair first; selective Boolean factors
        # then prune the big sets instead of multiplying them
        while len(sets) > 1:
            i = min(
                range(len(sets) - 1),
                key=lambda j: len(sets[j]) * len(sets[j + 1]),
            )
            fused = frozenset(_fuse_sets(sets[i], sets[i + 1], bound))
            sets[i : i + 2] = [fused]
        out = sets[0]
    elif isinstance(e, Star):
        base = _enumerate(e.child, bound, atoms, step_ok, memo)
        result: set[GuardedString] = {GuardedString((a,), ()) for a in atoms}
        frontier = result
        while frontier:
            fresh = _fuse_sets(base, frontier, bound) - result
            result |= fresh
            frontier = fresh
        out = frozenset(result)
    else:
        raise TypeError(f"not a KAT expression: {e!r}")
    memo[key] = out
    return out


def gs_bounded(e: KatExpr, bound: int, table: SymbolTable) -> GsSet:
    """Exactly the guarded strings of e with at most ``bound`` actions."""
    atoms = all_atoms(table)
    strings = _enumerate(e, bound, atoms, lambda a, p, b: True, {})
    return GsSet(strings, bound)


def gs_bounded_set(
    exprs: Iterable[KatExpr], bound: int, table: SymbolTable
) -> GsSet:
    """Union of the bounded languages of a set of expressions."""
    atoms = all_atoms(table)
    memo: dict = {}
    acc: set[GuardedString] = set()
    for e in exprs:
        acc |= _enumerate(e, bound, atoms, lambda a, p, b: True, memo)
    return GsSet(frozenset(acc), bound)


def _restricted_atoms(
    assumptions: "AssumptionSet", table: SymbolTable
) -> tuple[Atom, ...]:
    # direct truth-table filter; deliberately independent of the engine's masks
    out = []
    for a in all_atoms(table):
        if all(
            not atom_satisfies(a, c) or atom_satisfies(a, c_post)
            for c, c_post in assumptions.bool_hyps
        ):
            out.append(a)
    return tuple(out)


def gs_assuming_bounded(
    e: KatExpr, assumptions: "AssumptionSet", bound: int, table: SymbolTable
) -> GsSet:
    """Bounded guarded strings of e, restricted by an assumption set.

    Atoms violating a Boolean hypothesis disappear entirely; an action step
    ``alpha p beta`` survives only if every action hypothesis on p whose
    precondition alpha satisfies has its postcondition satisfied by beta.
    """
    atoms = _restricted_atoms(assumptions, table)
    by_action: dict[int, list] = {}
    for b, p, b_post in assumptions.action_hyps:
        by_action.setdefault(p, []).append((b, b_post))

    def step_ok(a: Atom, p: int, b: Atom) -> bool:
        return all(
            not atom_satisfies(a, pre) or atom_satisfies(b, post)
            for pre, post in by_action.get(p, ())
        )

    strings = _enumerate(e, bound, atoms, step_ok, {})
    return GsSet(strings, bound)


def gs_assuming_bounded_set(
    exprs: Iterable[KatExpr],
    assumptions: "AssumptionSet",
    bound: int,
    table: SymbolTable,
) -> GsSet:
    acc: set[GuardedString] = set()
    for e in exprs:
        acc |= gs_assuming_bounded(e, assumptions, bound, table).strings
    return GsSet(frozenset(acc), bound)
