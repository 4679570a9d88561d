import pytest
from hypothesis import given

from helpers import T22, atoms_of, bool_exprs, kat_exprs, lt, naive_satisfies, tv
from katcheck.syntax import (
    And,
    Bool,
    CapacityError,
    Dot,
    KONE,
    KZERO,
    Not,
    ONE,
    Or,
    Plus,
    Star,
    SymbolTable,
    ZERO,
    act,
    all_atoms,
    atom_satisfies,
    band,
    bnot,
    bor,
    dot,
    lift,
    node_count,
    plus,
    star,
    count_test_leaves,
)
from katcheck.semantics import gs_bounded


class TestSymbolTable:
    def test_requires_nonempty_alphabets(self):
        with pytest.raises(ValueError):
            SymbolTable((), ("t1",))
        with pytest.raises(ValueError):
            SymbolTable(("p",), ())

    def test_rejects_duplicates_and_overlap(self):
        with pytest.raises(ValueError):
            SymbolTable(("p", "p"), ("t",))
        with pytest.raises(ValueError):
            SymbolTable(("p",), ("t", "t"))
        with pytest.raises(ValueError):
            SymbolTable(("x",), ("x",))

    def test_lookup(self):
        assert T22.action_index("q") == 1
        assert T22.test_index("t1") == 0
        assert T22.action_index("t1") is None


class TestAtoms:
    def test_single_test_order(self):
        table = SymbolTable(("p",), ("t1",))
        atoms = all_atoms(table)
        assert [a.value(0) for a in atoms] == [False, True]

    def test_two_tests_distinct(self):
        atoms = all_atoms(T22)
        assert len(atoms) == 4
        assert len(set(atoms)) == 4

    def test_five_tests(self):
        table = SymbolTable(("p",), tuple(f"t{i}" for i in range(5)))
        assert len(all_atoms(table)) == 32

    def test_capacity_error(self):
        table = SymbolTable(("p",), tuple(f"t{i}" for i in range(21)))
        with pytest.raises(CapacityError):
            all_atoms(table)

    def test_canonical_order_is_lexicographic(self):
        # first test most significant: the atom with only t1 true sorts
        # after every atom with t1 false
        atoms = all_atoms(T22)
        assert [(a.value(0), a.value(1)) for a in atoms] == [
            (False, False),
            (False, True),
            (True, False),
            (True, True),
        ]


class TestSatisfaction:
    def test_literal(self):
        atoms = all_atoms(T22)
        assert atom_satisfies(atoms[2], tv(0))  # t1 !t2
        assert not atom_satisfies(atoms[1], tv(0))

    def test_bounds(self):
        for a in all_atoms(T22):
            assert not atom_satisfies(a, ZERO)
            assert atom_satisfies(a, ONE)

    def test_disjunction_count(self):
        # truth table of t1 + t2 over the four atoms: exactly 3 satisfy
        b = bor(tv(0), tv(1))
        sat = [a for a in all_atoms(T22) if atom_satisfies(a, b)]
        assert len(sat) == 3
        assert atom_satisfies(all_atoms(T22)[2], b)  # t1 !t2

    @given(bool_exprs(T22), atoms_of(T22))
    def test_matches_naive_evaluation(self, b, alpha):
        assert atom_satisfies(alpha, b) == naive_satisfies(alpha, b)

    @given(bool_exprs(T22), atoms_of(T22))
    def test_negation_flips(self, b, alpha):
        assert atom_satisfies(alpha, bnot(b)) != atom_satisfies(alpha, b)

    @given(bool_exprs(T22), bool_exprs(T22), atoms_of(T22))
    def test_or_and_decompose(self, b1, b2, alpha):
        assert atom_satisfies(alpha, bor(b1, b2)) == (
            atom_satisfies(alpha, b1) or atom_satisfies(alpha, b2)
        )
        assert atom_satisfies(alpha, band(b1, b2)) == (
            atom_satisfies(alpha, b1) and atom_satisfies(alpha, b2)
        )


class TestSmartConstructors:
    def test_plus_is_aci(self):
        p, q = act(0), act(1)
        assert plus(p, q) == plus(q, p)
        assert plus(p, plus(q, p)) == plus(p, q)
        assert plus(p, p) == p

    def test_plus_drops_zero(self):
        assert plus(act(0), KZERO) == act(0)
        assert plus() == KZERO

    def test_dot_flattens_and_absorbs(self):
        p, q = act(0), act(1)
        assert dot(dot(p, q), p) == dot(p, dot(q, p))
        assert dot(p, KONE, q) == dot(p, q)
        assert dot(p, KZERO, q) == KZERO
        assert dot() == KONE
        assert dot(p) == p

    def test_dot_keeps_order_and_duplicates(self):
        p, q = act(0), act(1)
        assert dot(p, q) != dot(q, p)
        assert isinstance(dot(p, p), Dot)

    def test_construction_is_idempotent(self):
        e = plus(act(0), act(1), lt(0))
        assert plus(*e.parts) == e
        d = dot(act(0), lt(1), act(1))
        assert dot(*d.parts) == d

    def test_bool_constructors(self):
        assert bnot(bnot(tv(0))) == tv(0)
        assert bnot(ZERO) == ONE
        assert band(tv(0), ONE, tv(0)) == tv(0)
        assert band(tv(0), ZERO) == ZERO
        assert band() == ONE
        assert bor(tv(0), tv(0), ZERO) == tv(0)
        assert bor() == ZERO
        assert bor(tv(0), tv(1)) == bor(tv(1), tv(0))

    def test_no_unary_composites(self):
        for e in (plus(act(0), act(1)), dot(act(0), act(1))):
            assert len(e.parts) >= 2

    @given(kat_exprs(T22), kat_exprs(T22), kat_exprs(T22))
    def test_plus_associativity_structural(self, a, b, c):
        assert plus(plus(a, b), c) == plus(a, plus(b, c))

    @given(kat_exprs(T22), kat_exprs(T22), kat_exprs(T22))
    def test_dot_associativity_structural(self, a, b, c):
        assert dot(dot(a, b), c) == dot(a, dot(b, c))


class TestBooleanEmbedding:
    def test_or_of_tests_denotes_same_strings_as_sum(self):
        joined = lift(bor(tv(0), tv(1)))
        summed = plus(lt(0), lt(1))
        for bound in range(3):
            assert (
                gs_bounded(joined, bound, T22).strings
                == gs_bounded(summed, bound, T22).strings
            )

    def test_and_of_tests_denotes_same_strings_as_product(self):
        joined = lift(band(tv(0), tv(1)))
        chained = dot(lt(0), lt(1))
        for bound in range(3):
            assert (
                gs_bounded(joined, bound, T22).strings
                == gs_bounded(chained, bound, T22).strings
            )


class TestSizes:
    def test_node_count(self):
        assert node_count(act(0)) == 1
        assert node_count(lift(band(tv(0), tv(1)))) == 1
        assert node_count(dot(act(0), lt(0), act(1))) == 4
        assert node_count(star(plus(act(0), act(1)))) == 4

    def test_count_test_leaves(self):
        e = dot(lt(0), act(0), lift(band(tv(0), bnot(tv(1)))))
        assert count_test_leaves(e) == 3
        assert count_test_leaves(star(act(0))) == 0
