"""Seeded random generation of expressions, for benchmarking and testing.

The expression generator does grammar-directed recursive descent with a node
budget: at each step it picks uniformly among sum, product, star and symbol
(where the budget still permits the choice), splits the remaining budget
uniformly for binary operators, and draws symbols uniformly from the union of
the action and test alphabets.  Smart-constructor normalisation may shrink
the result, so the budget is a target, not an exact size.
"""

from __future__ import annotations

import random

from .syntax import (
    BoolExpr,
    KatExpr,
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


def random_kat_expr(rng: random.Random, table: SymbolTable, budget: int) -> KatExpr:
    """A random KAT expression with ``budget`` grammar nodes (before normalisation).

    Operators are drawn uniformly among the ones the remaining budget still
    permits, so the whole budget is spent; smart-constructor collapse may
    shrink the final count below the target.
    """
    if budget >= 3:
        op = rng.choice(("plus", "dot", "star"))
    elif budget == 2:
        op = "star"
    else:
        op = "symbol"
    if op == "symbol":
        i = rng.randrange(table.k + table.l)
        return act(i) if i < table.k else lift(Test(i - table.k))
    if op == "star":
        return star(random_kat_expr(rng, table, budget - 1))
    left = rng.randint(1, budget - 2)
    a = random_kat_expr(rng, table, left)
    b = random_kat_expr(rng, table, budget - 1 - left)
    return plus(a, b) if op == "plus" else dot(a, b)


def random_bool_expr(rng: random.Random, table: SymbolTable, budget: int) -> BoolExpr:
    """A random Boolean expression (tests, constants, and, or, not)."""
    if budget >= 3:
        op = rng.choice(("symbol", "or", "and", "not"))
    elif budget == 2:
        op = rng.choice(("symbol", "not"))
    else:
        op = "symbol"
    if op == "symbol":
        i = rng.randrange(table.l + 2)
        if i == table.l:
            return ZERO
        if i == table.l + 1:
            return ONE
        return Test(i)
    if op == "not":
        return bnot(random_bool_expr(rng, table, budget - 1))
    left = rng.randint(1, budget - 2)
    a = random_bool_expr(rng, table, left)
    b = random_bool_expr(rng, table, budget - 1 - left)
    return bor(a, b) if op == "or" else band(a, b)
