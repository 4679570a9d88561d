"""Shared fixtures: tables, generators, and independent oracles.

The oracles here deliberately avoid the code paths they are used to check:
``naive_satisfies`` evaluates truth tables by recursion instead of bitmasks,
and ``reachability_equivalent`` decides equivalence from single-step partial
derivatives and atom acceptance alone, never touching the linear form or the
worklist loop.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from katcheck.assumptions import AssumptionSet
from katcheck.derivatives import partial_derivs_set, set_accepts_atom
from katcheck.generate import random_bool_expr, random_kat_expr
from katcheck.syntax import (
    And,
    Atom,
    BoolExpr,
    KONE,
    KZERO,
    KatExpr,
    Not,
    ONE,
    Or,
    One,
    SymbolTable,
    Test,
    ZERO,
    Zero,
    act,
    all_atoms,
    band,
    bnot,
    bor,
    dot,
    lift,
    plus,
    star,
)

T22 = SymbolTable(("p", "q"), ("t1", "t2"))
T_FACT = SymbolTable(("p1", "p2", "p3", "p4"), ("t0", "t1", "t2", "t3", "t4", "t5"))


def tv(i: int) -> Test:
    return Test(i)


def lt(i: int) -> KatExpr:
    return lift(Test(i))


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def naive_satisfies(alpha: Atom, b: BoolExpr) -> bool:
    """Truth-table evaluation by direct recursion (no bitmasks)."""
    if isinstance(b, Zero):
        return False
    if isinstance(b, One):
        return True
    if isinstance(b, Test):
        return alpha.value(b.index)
    if isinstance(b, Not):
        return not naive_satisfies(alpha, b.operand)
    if isinstance(b, And):
        return all(naive_satisfies(alpha, p) for p in b.parts)
    if isinstance(b, Or):
        return any(naive_satisfies(alpha, p) for p in b.parts)
    raise TypeError(b)


def reachability_equivalent(e1: KatExpr, e2: KatExpr, table: SymbolTable) -> bool:
    """Product reachability over the determinised derivative transition systems."""
    atoms = all_atoms(table)
    start = (frozenset([e1]), frozenset([e2]))
    seen = {start}
    stack = [start]
    while stack:
        lhs, rhs = stack.pop()
        for alpha in atoms:
            if set_accepts_atom(lhs, alpha) != set_accepts_atom(rhs, alpha):
                return False
        for alpha in atoms:
            for p in range(table.k):
                d1 = partial_derivs_set(lhs, alpha, p)
                d2 = partial_derivs_set(rhs, alpha, p)
                if not d1 and not d2:
                    continue
                key = (d1, d2)
                if key not in seen:
                    seen.add(key)
                    stack.append(key)
    return True


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------


def random_assumptions(
    rng: random.Random,
    table: SymbolTable,
    max_action_hyps: int = 2,
    max_bool_hyps: int = 2,
) -> AssumptionSet:
    action_hyps = tuple(
        (
            random_bool_expr(rng, table, 3),
            rng.randrange(table.k),
            random_bool_expr(rng, table, 3),
        )
        for _ in range(rng.randint(0, max_action_hyps))
    )
    bool_hyps = tuple(
        (random_bool_expr(rng, table, 3), random_bool_expr(rng, table, 3))
        for _ in range(rng.randint(0, max_bool_hyps))
    )
    return AssumptionSet(action_hyps, bool_hyps)


def seeded_exprs(seed: int, table: SymbolTable, size: int, count: int):
    rng = random.Random(seed)
    return [random_kat_expr(rng, table, size) for _ in range(count)]


# ---------------------------------------------------------------------------
# hypothesis strategies
# ---------------------------------------------------------------------------


def bool_exprs(table: SymbolTable, max_leaves: int = 6):
    leaves = st.sampled_from(
        [ZERO, ONE] + [Test(i) for i in range(table.l)]
    )
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            children.map(bnot),
            st.tuples(children, children).map(lambda ab: band(*ab)),
            st.tuples(children, children).map(lambda ab: bor(*ab)),
        ),
        max_leaves=max_leaves,
    )


def kat_exprs(table: SymbolTable, max_leaves: int = 6):
    leaves = st.sampled_from(
        [KZERO, KONE]
        + [act(i) for i in range(table.k)]
        + [lift(Test(i)) for i in range(table.l)]
    )
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            children.map(star),
            st.tuples(children, children).map(lambda ab: plus(*ab)),
            st.tuples(children, children).map(lambda ab: dot(*ab)),
        ),
        max_leaves=max_leaves,
    )


def atoms_of(table: SymbolTable):
    return st.sampled_from(all_atoms(table))
