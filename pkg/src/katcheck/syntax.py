"""Abstract syntax for KAT expressions.

Expressions are built over a symbol table of primitive actions and primitive
tests.  Boolean expressions form a sub-grammar; negation exists only there.
All nodes are immutable and are normalised at construction time through the
smart constructors at the bottom of this module:

* alternations (``Plus``/``Or``) are stored as duplicate-free, canonically
  sorted sets, so associativity, commutativity and idempotence hold up to
  structural equality;
* concatenations (``Dot``/``And``) are flattened sequences;
* the constants 0 and 1 are absorbed where the semiring axioms demand it
  (``e+0 = e``, ``1e = e1 = e``, ``0e = e0 = 0``).

Nothing beyond those laws is rewritten; discovering deeper equalities is the
job of the equivalence checker.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache, reduce
from typing import Iterable, Union

MAX_TESTS = 20


class CapacityError(ValueError):
    """Raised when an operation would need to enumerate more than 2**MAX_TESTS atoms."""


def _cached_hash(cls):
    """Cache the (structural) dataclass hash on first use; trees hash in O(1) after."""
    base_hash = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = base_hash(self)
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------------------
# symbol tables and atoms
# ---------------------------------------------------------------------------


@_cached_hash
@dataclass(frozen=True)
class SymbolTable:
    """Declares the primitive action symbols and primitive test symbols.

    Both name lists are ordered; expressions refer to symbols by index.
    """

    actions: tuple[str, ...]
    tests: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "tests", tuple(self.tests))
        if not self.actions or not self.tests:
            raise ValueError("a symbol table needs at least one action and one test")
        if len(set(self.actions)) != len(self.actions):
            raise ValueError("duplicate action name")
        if len(set(self.tests)) != len(self.tests):
            raise ValueError("duplicate test name")
        if set(self.actions) & set(self.tests):
            raise ValueError("action and test names must be disjoint")

    @property
    def k(self) -> int:
        return len(self.actions)

    @property
    def l(self) -> int:
        return len(self.tests)

    def action_index(self, name: str) -> int | None:
        return self._index().get(("a", name))

    def test_index(self, name: str) -> int | None:
        return self._index().get(("t", name))

    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {("a", n): i for i, n in enumerate(self.actions)}
            idx.update({("t", n): i for i, n in enumerate(self.tests)})
            object.__setattr__(self, "_idx", idx)
        return idx

    def with_action(self, name: str) -> "SymbolTable":
        """Return a table extended with one more action (no-op if declared)."""
        if name in self.actions:
            return self
        return SymbolTable(self.actions + (name,), self.tests)


@_cached_hash
@dataclass(frozen=True)
class Atom:
    """One truth assignment to all tests, packed into an int.

    Test ``i`` occupies bit ``width - 1 - i``, so the numeric order of
    ``bits`` is the lexicographic order of the assignment with the first test
    most significant.  That numeric order is the canonical enumeration order.
    """

    bits: int
    width: int

    def value(self, test: int) -> bool:
        return bool((self.bits >> (self.width - 1 - test)) & 1)


def _check_capacity(l: int) -> None:
    if l > MAX_TESTS:
        raise CapacityError(
            f"{l} tests would require {2 ** l} atoms; the limit is 2**{MAX_TESTS}"
        )


@lru_cache(maxsize=None)
def all_atoms(table: SymbolTable) -> tuple[Atom, ...]:
    """All 2**l truth assignments, in canonical order."""
    _check_capacity(table.l)
    return tuple(Atom(b, table.l) for b in range(1 << table.l))


# ---------------------------------------------------------------------------
# Boolean expressions
# ---------------------------------------------------------------------------


class BoolExpr:
    """Base class of the Boolean sub-grammar."""

    __hash__ = None  # concrete classes supply one


@_cached_hash
@dataclass(frozen=True)
class Zero(BoolExpr):
    pass


@_cached_hash
@dataclass(frozen=True)
class One(BoolExpr):
    pass


@_cached_hash
@dataclass(frozen=True)
class Test(BoolExpr):
    index: int


@_cached_hash
@dataclass(frozen=True)
class Not(BoolExpr):
    operand: BoolExpr


@_cached_hash
@dataclass(frozen=True)
class And(BoolExpr):
    parts: tuple[BoolExpr, ...]


@_cached_hash
@dataclass(frozen=True)
class Or(BoolExpr):
    parts: tuple[BoolExpr, ...]


ZERO = Zero()
ONE = One()


# ---------------------------------------------------------------------------
# KAT expressions
# ---------------------------------------------------------------------------


class KatExpr:
    """Base class of KAT expressions."""

    __hash__ = None


@_cached_hash
@dataclass(frozen=True)
class Action(KatExpr):
    index: int


@_cached_hash
@dataclass(frozen=True)
class Bool(KatExpr):
    value: BoolExpr


@_cached_hash
@dataclass(frozen=True)
class Plus(KatExpr):
    parts: tuple[KatExpr, ...]


@_cached_hash
@dataclass(frozen=True)
class Dot(KatExpr):
    parts: tuple[KatExpr, ...]


@_cached_hash
@dataclass(frozen=True)
class Star(KatExpr):
    child: KatExpr


KZERO = Bool(ZERO)
KONE = Bool(ONE)


# ---------------------------------------------------------------------------
# canonical ordering
# ---------------------------------------------------------------------------

_B_TAGS = {Zero: 0, One: 1, Test: 2, Not: 3, And: 4, Or: 5}
_K_TAGS = {Action: 0, Bool: 1, Plus: 2, Dot: 3, Star: 4}


def bool_key(b: BoolExpr) -> tuple[int, ...]:
    """Flat integer tuple giving a total, run-independent order on BoolExpr."""
    k = b.__dict__.get("_key")
    if k is not None:
        return k
    if isinstance(b, (Zero, One)):
        k = (_B_TAGS[type(b)],)
    elif isinstance(b, Test):
        k = (2, b.index)
    elif isinstance(b, Not):
        k = (3,) + bool_key(b.operand)
    else:
        parts = b.parts
        k = (_B_TAGS[type(b)], len(parts)) + tuple(
            x for p in parts for x in bool_key(p)
        )
    object.__setattr__(b, "_key", k)
    return k


def kat_key(e: KatExpr) -> tuple[int, ...]:
    """Flat integer tuple giving a total, run-independent order on KatExpr."""
    k = e.__dict__.get("_key")
    if k is not None:
        return k
    if isinstance(e, Action):
        k = (0, e.index)
    elif isinstance(e, Bool):
        k = (1,) + bool_key(e.value)
    elif isinstance(e, Star):
        k = (4,) + kat_key(e.child)
    else:
        parts = e.parts
        k = (_K_TAGS[type(e)], len(parts)) + tuple(
            x for p in parts for x in kat_key(p)
        )
    object.__setattr__(e, "_key", k)
    return k


# ---------------------------------------------------------------------------
# smart constructors
# ---------------------------------------------------------------------------


def bnot(b: BoolExpr) -> BoolExpr:
    if isinstance(b, Zero):
        return ONE
    if isinstance(b, One):
        return ZERO
    if isinstance(b, Not):
        return b.operand
    return Not(b)


def band(*parts: BoolExpr) -> BoolExpr:
    """Conjunction: flattens, drops 1, absorbs 0, removes duplicates."""
    flat: list[BoolExpr] = []
    for p in parts:
        if isinstance(p, And):
            flat.extend(p.parts)
        else:
            flat.append(p)
    out: list[BoolExpr] = []
    for p in flat:
        if isinstance(p, Zero):
            return ZERO
        if isinstance(p, One) or p in out:
            continue
        out.append(p)
    if not out:
        return ONE
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def bor(*parts: BoolExpr) -> BoolExpr:
    """Disjunction: flattens, drops 0, stores children as a sorted set."""
    flat: list[BoolExpr] = []
    for p in parts:
        if isinstance(p, Or):
            flat.extend(p.parts)
        elif not isinstance(p, Zero):
            flat.append(p)
    uniq = sorted(set(flat), key=bool_key)
    if not uniq:
        return ZERO
    if len(uniq) == 1:
        return uniq[0]
    return Or(tuple(uniq))


def act(index: int) -> KatExpr:
    return Action(index)


def lift(b: BoolExpr) -> KatExpr:
    """Embed a Boolean expression into the KAT grammar."""
    return Bool(b)


def plus(*parts: KatExpr) -> KatExpr:
    """Sum: flattens, drops 0, stores children as a sorted set."""
    flat: list[KatExpr] = []
    for p in parts:
        if isinstance(p, Plus):
            flat.extend(p.parts)
        elif p != KZERO:
            flat.append(p)
    uniq = sorted(set(flat), key=kat_key)
    if not uniq:
        return KZERO
    if len(uniq) == 1:
        return uniq[0]
    return Plus(tuple(uniq))


def dot(*parts: KatExpr) -> KatExpr:
    """Product: flattens, drops 1, absorbs 0, keeps the sequence order."""
    flat: list[KatExpr] = []
    for p in parts:
        if isinstance(p, Dot):
            flat.extend(p.parts)
        elif p == KZERO:
            return KZERO
        elif p != KONE:
            flat.append(p)
    if not flat:
        return KONE
    if len(flat) == 1:
        return flat[0]
    return Dot(tuple(flat))


def star(e: KatExpr) -> KatExpr:
    return Star(e)


# ---------------------------------------------------------------------------
# atom satisfaction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def satisfying_atoms_mask(b: BoolExpr, width: int) -> int:
    """Bitset over the 2**width atoms: bit a is set iff atom a satisfies b."""
    _check_capacity(width)
    full = (1 << (1 << width)) - 1
    if isinstance(b, Zero):
        return 0
    if isinstance(b, One):
        return full
    if isinstance(b, Test):
        if not 0 <= b.index < width:
            raise ValueError(f"test index {b.index} out of range for {width} tests")
        s = width - 1 - b.index
        chunk = ((1 << (1 << s)) - 1) << (1 << s)
        repunit = full // ((1 << (1 << (s + 1))) - 1)
        return chunk * repunit
    if isinstance(b, Not):
        return full ^ satisfying_atoms_mask(b.operand, width)
    if isinstance(b, And):
        return reduce(
            lambda m, p: m & satisfying_atoms_mask(p, width), b.parts, full
        )
    if isinstance(b, Or):
        return reduce(lambda m, p: m | satisfying_atoms_mask(p, width), b.parts, 0)
    raise TypeError(f"not a Boolean expression: {b!r}")


def atom_satisfies(alpha: Atom, b: BoolExpr) -> bool:
    """Whether the truth assignment makes the Boolean expression true."""
    return bool((satisfying_atoms_mask(b, alpha.width) >> alpha.bits) & 1)


# ---------------------------------------------------------------------------
# size measures
# ---------------------------------------------------------------------------


def node_count(e: KatExpr) -> int:
    """Number of grammar nodes; a Boolean leaf counts once regardless of shape."""
    if isinstance(e, (Action, Bool)):
        return 1
    if isinstance(e, Star):
        return 1 + node_count(e.child)
    return 1 + sum(node_count(p) for p in e.parts)


def _bool_test_count(b: BoolExpr) -> int:
    if isinstance(b, Test):
        return 1
    if isinstance(b, Not):
        return _bool_test_count(b.operand)
    if isinstance(b, (And, Or)):
        return sum(_bool_test_count(p) for p in b.parts)
    return 0


def count_test_leaves(e: KatExpr) -> int:
    """Number of primitive-test occurrences in the expression."""
    if isinstance(e, Action):
        return 0
    if isinstance(e, Bool):
        return _bool_test_count(e.value)
    if isinstance(e, Star):
        return count_test_leaves(e.child)
    return sum(count_test_leaves(p) for p in e.parts)


# ---------------------------------------------------------------------------
# rendering (the inverse of the parser's grammar)
# ---------------------------------------------------------------------------

# precedence levels: 0 sum, 1 product, 2 starred factor, 3 base


def _wrap(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s


def _fb(b: BoolExpr, table: SymbolTable, ctx: int) -> str:
    if isinstance(b, Zero):
        return "0"
    if isinstance(b, One):
        return "1"
    if isinstance(b, Test):
        return table.tests[b.index]
    if isinstance(b, Not):
        return "!" + _fb(b.operand, table, 3)
    if isinstance(b, And):
        return _wrap(".".join(_fb(p, table, 2) for p in b.parts), 1, ctx)
    return _wrap(" + ".join(_fb(p, table, 1) for p in b.parts), 0, ctx)


def _fk(e: KatExpr, table: SymbolTable, ctx: int) -> str:
    if isinstance(e, Action):
        return table.actions[e.index]
    if isinstance(e, Bool):
        return _fb(e.value, table, ctx)
    if isinstance(e, Star):
        return _fk(e.child, table, 3) + "*"
    if isinstance(e, Dot):
        return _wrap(".".join(_fk(p, table, 2) for p in e.parts), 1, ctx)
    return _wrap(" + ".join(_fk(p, table, 1) for p in e.parts), 0, ctx)


def format_bool(b: BoolExpr, table: SymbolTable) -> str:
    return _fb(b, table, 0)


def format_kat(e: KatExpr, table: SymbolTable) -> str:
    return _fk(e, table, 0)


def format_atom(alpha: Atom, table: SymbolTable) -> str:
    """Signed test list, e.g. ``t1!t2`` for t1 true and t2 false."""
    out = []
    for i, name in enumerate(table.tests):
        out.append(name if alpha.value(i) else "!" + name)
    return "".join(out)


ExprSet = frozenset
"""A duplicate-free set of KAT expressions."""
