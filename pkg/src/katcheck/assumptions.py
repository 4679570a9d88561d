"""Equivalence modulo a set of hypotheses.

An assumption set contains action hypotheses ``b.p.!b' = 0`` ("whenever b
holds before p, b' holds after") and Boolean hypotheses ``c <= c'``.  Two
routes decide equivalence under such hypotheses:

* directly, by filtering the atom universe and rebuilding the derivative of
  an action so that it returns the conjunction of the applicable
  postconditions (``equiv_assuming``);
* by reduction to plain equivalence, adding to both sides an expression that
  absorbs every string witnessing a hypothesis violation (``violations_expr``).

Both must agree; the test suite checks them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import checker
from .derivatives import _split, acceptance_mask, accepts_atom
from .syntax import (
    Action,
    Atom,
    Bool,
    BoolExpr,
    Dot,
    KatExpr,
    Plus,
    Star,
    SymbolTable,
    all_atoms,
    act,
    band,
    bnot,
    bool_key,
    dot,
    lift,
    plus,
    satisfying_atoms_mask,
    star,
)

ActionHyp = tuple[BoolExpr, int, BoolExpr]
BoolHyp = tuple[BoolExpr, BoolExpr]


@dataclass(frozen=True)
class AssumptionSet:
    """Hypotheses b.p.!b' = 0 (as triples (b, p, b')) and c <= c' (as pairs)."""

    action_hyps: tuple[ActionHyp, ...] = ()
    bool_hyps: tuple[BoolHyp, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "action_hyps",
            tuple(
                sorted(
                    set(self.action_hyps),
                    key=lambda h: (bool_key(h[0]), h[1], bool_key(h[2])),
                )
            ),
        )
        object.__setattr__(
            self,
            "bool_hyps",
            tuple(
                sorted(
                    set(self.bool_hyps),
                    key=lambda h: (bool_key(h[0]), bool_key(h[1])),
                )
            ),
        )

    def __bool__(self) -> bool:
        return bool(self.action_hyps or self.bool_hyps)

    def union(self, other: "AssumptionSet") -> "AssumptionSet":
        return AssumptionSet(
            self.action_hyps + other.action_hyps,
            self.bool_hyps + other.bool_hyps,
        )


@lru_cache(maxsize=None)
def allowed_atoms_mask(assumptions: AssumptionSet, table: SymbolTable) -> int:
    """Bitset of the atoms satisfying every Boolean hypothesis (c implies c')."""
    full = (1 << (1 << table.l)) - 1
    mask = full
    for c, c_post in assumptions.bool_hyps:
        mask &= (full ^ satisfying_atoms_mask(c, table.l)) | satisfying_atoms_mask(
            c_post, table.l
        )
    return mask


def allowed_atoms(assumptions: AssumptionSet, table: SymbolTable) -> tuple[Atom, ...]:
    """The atoms that survive the Boolean hypotheses, in canonical order."""
    mask = allowed_atoms_mask(assumptions, table)
    return tuple(a for a in all_atoms(table) if (mask >> a.bits) & 1)


def _postcondition(
    assumptions: AssumptionSet, alpha: Atom, p: int
) -> KatExpr:
    """Conjunction of the postconditions of hypotheses on p triggered by alpha."""
    matching = [
        b_post
        for (b, q, b_post) in assumptions.action_hyps
        if q == p and (satisfying_atoms_mask(b, alpha.width) >> alpha.bits) & 1
    ]
    return lift(band(*matching))


def partial_derivs_assuming(
    e: KatExpr, alpha: Atom, p: int, assumptions: AssumptionSet, table: SymbolTable
) -> frozenset[KatExpr]:
    """Partial derivative modulo the assumption set.

    Empty for a disallowed atom; on a matching action it returns the single
    conjunction of the triggered postconditions (1 when none apply).
    """
    if not (allowed_atoms_mask(assumptions, table) >> alpha.bits) & 1:
        return frozenset()
    return _pd_assuming(e, alpha, p, assumptions, table)


@lru_cache(maxsize=None)
def _pd_assuming(e, alpha, p, assumptions, table):
    if isinstance(e, Action):
        if e.index != p:
            return frozenset()
        return frozenset([_postcondition(assumptions, alpha, p)])
    if isinstance(e, Bool):
        return frozenset()
    if isinstance(e, Plus):
        out: set[KatExpr] = set()
        for part in e.parts:
            out |= _pd_assuming(part, alpha, p, assumptions, table)
        return frozenset(out)
    if isinstance(e, Dot):
        head, rest = _split(e)
        out = {dot(d, rest) for d in _pd_assuming(head, alpha, p, assumptions, table)}
        if accepts_atom(head, alpha):
            out |= _pd_assuming(rest, alpha, p, assumptions, table)
        return frozenset(out)
    if isinstance(e, Star):
        return frozenset(
            dot(d, e) for d in _pd_assuming(e.child, alpha, p, assumptions, table)
        )
    raise TypeError(f"not a KAT expression: {e!r}")


@lru_cache(maxsize=None)
def linear_form_assuming(
    e: KatExpr, assumptions: AssumptionSet, table: SymbolTable
) -> frozenset:
    """One-step transitions with atoms restricted and action tails rebuilt."""
    if isinstance(e, Action):
        return frozenset(
            (a, e.index, _postcondition(assumptions, a, e.index))
            for a in allowed_atoms(assumptions, table)
        )
    if isinstance(e, Bool):
        return frozenset()
    if isinstance(e, Plus):
        out: set = set()
        for part in e.parts:
            out |= linear_form_assuming(part, assumptions, table)
        return frozenset(out)
    if isinstance(e, Dot):
        head, rest = _split(e)
        out = {
            (a, p, dot(t, rest))
            for (a, p, t) in linear_form_assuming(head, assumptions, table)
        }
        head_mask = acceptance_mask(head, table.l)
        out.update(
            (a, p, t)
            for (a, p, t) in linear_form_assuming(rest, assumptions, table)
            if (head_mask >> a.bits) & 1
        )
        return frozenset(out)
    if isinstance(e, Star):
        return frozenset(
            (a, p, dot(t, e))
            for (a, p, t) in linear_form_assuming(e.child, assumptions, table)
        )
    raise TypeError(f"not a KAT expression: {e!r}")


@lru_cache(maxsize=None)
def _grouped_assuming(e, assumptions, table) -> dict:
    grouped: dict[tuple[Atom, int], set[KatExpr]] = {}
    for a, p, t in linear_form_assuming(e, assumptions, table):
        grouped.setdefault((a, p), set()).add(t)
    return {h: frozenset(ts) for h, ts in grouped.items()}


def equiv_assuming(
    e1: KatExpr, e2: KatExpr, assumptions: AssumptionSet, table: SymbolTable
) -> checker.Verdict:
    """Decide equivalence modulo an assumption set via filtered derivatives."""
    return checker.bisimilarity(
        frozenset([e1]),
        frozenset([e2]),
        table.l,
        allowed_atoms_mask(assumptions, table),
        lambda e: _grouped_assuming(e, assumptions, table),
    )


def violations_expr(assumptions: AssumptionSet, table: SymbolTable) -> KatExpr:
    """u.r.u where r sums one violation pattern per hypothesis and u = (p1+...+pk)*.

    Its language is every guarded string containing a violation, so adding it
    to both sides of an equivalence discharges the hypotheses.
    """
    u = star(plus(*[act(i) for i in range(table.k)]))
    pieces = [
        dot(lift(b), act(p), lift(bnot(b_post)))
        for (b, p, b_post) in assumptions.action_hyps
    ]
    pieces += [
        lift(band(c, bnot(c_post))) for (c, c_post) in assumptions.bool_hyps
    ]
    return dot(u, plus(*pieces), u)


def check_implication(
    assumptions: AssumptionSet,
    e1: KatExpr,
    e2: KatExpr,
    table: SymbolTable,
    method: str = "gamma",
) -> checker.Verdict:
    """Decide whether the hypotheses entail e1 = e2.

    ``method="gamma"`` runs the filtered-derivative loop directly;
    ``method="uru"`` adds the violation absorber to both sides and runs the
    plain loop.
    """
    if method == "gamma":
        return equiv_assuming(e1, e2, assumptions, table)
    if method == "uru":
        absorber = violations_expr(assumptions, table)
        return checker.equiv(plus(e1, absorber), plus(e2, absorber), table)
    raise ValueError(f"unknown method {method!r}; expected 'gamma' or 'uru'")
