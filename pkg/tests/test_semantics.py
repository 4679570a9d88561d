import random

import pytest
from hypothesis import given, settings

from helpers import T22, T_FACT, kat_exprs, lt, random_assumptions, tv
from katcheck.assumptions import AssumptionSet
from katcheck.derivatives import accepts_atom
from katcheck.generate import random_kat_expr
from katcheck.hoare import Pca, Prim, Seq, While, pca_assumptions
from katcheck.parser import parse_kat
from katcheck.semantics import (
    GsSet,
    GuardedString,
    format_guarded_string,
    fuse,
    fusion_product,
    gs_assuming_bounded,
    gs_bounded,
    gs_bounded_set,
    left_quotient,
)
from katcheck.syntax import (
    ONE,
    ZERO,
    act,
    all_atoms,
    atom_satisfies,
    bnot,
    bor,
    dot,
    lift,
    plus,
    star,
)

ATOMS = all_atoms(T22)


def gstr(*parts) -> GuardedString:
    """Build a guarded string from alternating atoms and action indices."""
    return GuardedString(tuple(parts[::2]), tuple(parts[1::2]))


class TestFusion:
    def test_atom_is_left_identity(self):
        x = GsSet(frozenset({gstr(ATOMS[0])}), 0)
        y = GsSet(frozenset({gstr(ATOMS[0], 0, ATOMS[1])}), 1)
        assert fusion_product(x, y, 1).strings == y.strings

    def test_mismatched_boundary_is_dropped(self):
        x = GsSet(frozenset({gstr(ATOMS[0], 0, ATOMS[1])}), 1)
        y = GsSet(frozenset({gstr(ATOMS[2])}), 0)
        assert fusion_product(x, y, 2).strings == frozenset()

    def test_shared_atom_occurs_once(self):
        x = GsSet(frozenset({gstr(ATOMS[0], 0, ATOMS[1])}), 1)
        y = GsSet(frozenset({gstr(ATOMS[1], 1, ATOMS[2])}), 1)
        fused = fusion_product(x, y, 2).strings
        assert fused == frozenset({gstr(ATOMS[0], 0, ATOMS[1], 1, ATOMS[2])})

    def test_bound_truncates(self):
        x = GsSet(frozenset({gstr(ATOMS[0], 0, ATOMS[1])}), 1)
        y = GsSet(frozenset({gstr(ATOMS[1], 1, ATOMS[2])}), 1)
        assert fusion_product(x, y, 1).strings == frozenset()

    def test_fuse_pairwise(self):
        assert fuse(gstr(ATOMS[0]), gstr(ATOMS[1])) is None
        assert fuse(gstr(ATOMS[0]), gstr(ATOMS[0])) == gstr(ATOMS[0])


class TestBoundedEnumeration:
    def test_boolean_is_satisfying_atoms(self):
        b = bor(tv(0), tv(1))
        for bound in (0, 2):
            got = gs_bounded(lift(b), bound, T22).strings
            assert got == frozenset(
                gstr(a) for a in ATOMS if atom_satisfies(a, b)
            )

    def test_action_is_all_atom_pairs(self):
        got = gs_bounded(act(0), 1, T22).strings
        assert len(got) == len(ATOMS) ** 2
        assert gs_bounded(act(0), 0, T22).strings == frozenset()

    def test_star_at_bound_zero_contains_all_atoms(self):
        got = gs_bounded(star(act(0)), 0, T22).strings
        assert got == frozenset(gstr(a) for a in ATOMS)

    @given(kat_exprs(T22, max_leaves=5))
    @settings(max_examples=40, deadline=None)
    def test_bounds_are_monotone_and_consistent(self, e):
        sets = [gs_bounded(e, b, T22).strings for b in range(4)]
        for small, big in zip(sets, sets[1:]):
            assert small <= big
        # strings within a smaller bound agree across all larger bounds
        for b, small in enumerate(sets):
            for big in sets[b:]:
                assert small == {x for x in big if x.action_length <= b}

    @given(kat_exprs(T22, max_leaves=4), kat_exprs(T22, max_leaves=4))
    @settings(max_examples=30, deadline=None)
    def test_sum_and_product_laws(self, e1, e2):
        bound = 3
        got_sum = gs_bounded(plus(e1, e2), bound, T22).strings
        assert got_sum == gs_bounded(e1, bound, T22).strings | gs_bounded(
            e2, bound, T22
        ).strings
        got_prod = gs_bounded(dot(e1, e2), bound, T22).strings
        want = fusion_product(
            gs_bounded(e1, bound, T22), gs_bounded(e2, bound, T22), bound
        ).strings
        assert got_prod == want


class TestLeftQuotient:
    def test_single_step(self):
        x = GsSet(frozenset({gstr(ATOMS[0], 0, ATOMS[1])}), 1)
        assert left_quotient(x, ATOMS[0], 0).strings == frozenset({gstr(ATOMS[1])})
        assert left_quotient(x, ATOMS[1], 0).strings == frozenset()

    def test_atoms_have_no_prefix(self):
        x = GsSet(frozenset({gstr(ATOMS[0])}), 0)
        assert left_quotient(x, ATOMS[0], 0).strings == frozenset()

    def test_star_quotient_extensionally(self):
        e = star(act(0))
        quotiented = left_quotient(gs_bounded(e, 2, T22), ATOMS[0], 0).strings
        assert quotiented == gs_bounded(e, 1, T22).strings


class TestAtomAgreement:
    @given(kat_exprs(T22, max_leaves=6))
    @settings(max_examples=60, deadline=None)
    def test_acceptance_agrees_with_bound_zero(self, e):
        members = gs_bounded(e, 0, T22).strings
        for alpha in ATOMS:
            assert accepts_atom(e, alpha) == (gstr(alpha) in members)


class TestRestrictedEnumeration:
    def test_empty_assumptions_change_nothing(self):
        rng = random.Random(5)
        empty = AssumptionSet()
        for _ in range(15):
            e = random_kat_expr(rng, T22, 6)
            for bound in range(3):
                assert (
                    gs_assuming_bounded(e, empty, bound, T22).strings
                    == gs_bounded(e, bound, T22).strings
                )

    def test_excluded_atom_never_appears(self):
        # t1 <= 0 bans every atom satisfying t1
        assumptions = AssumptionSet(bool_hyps=((tv(0), ZERO),))
        e = star(plus(act(0), act(1)))
        for bound in range(3):
            for x in gs_assuming_bounded(e, assumptions, bound, T22).strings:
                assert not any(a.value(0) for a in x.atoms)

    def test_unsatisfiable_hypothesis_kills_everything(self):
        assumptions = AssumptionSet(bool_hyps=((ONE, ZERO),))
        e = plus(lift(ONE), act(0))
        for bound in range(3):
            assert gs_assuming_bounded(e, assumptions, bound, T22).strings == frozenset()

    def test_action_hypothesis_constrains_steps(self):
        # after p under precondition t1, t2 must hold
        assumptions = AssumptionSet(action_hyps=((tv(0), 0, tv(1)),))
        got = gs_assuming_bounded(act(0), assumptions, 1, T22).strings
        for x in got:
            if x.atoms[0].value(0):
                assert x.atoms[1].value(1)
        # and unconstrained starts stay unconstrained
        assert any(not x.atoms[0].value(0) and not x.atoms[1].value(1) for x in got)

    def test_factorial_assertion_denotes_nothing(self):
        e = parse_kat("t0.p1.t1.p2.t2.(t3.t2.p3.t4.p4)*.!t3.!t5", T_FACT)
        prog = Seq(
            Prim(0),
            tv(1),
            Seq(Prim(1), tv(2), While(tv(3), tv(2), Seq(Prim(2), tv(4), Prim(3)))),
        )
        assumptions = pca_assumptions(Pca(tv(0), prog, tv(5)))
        for bound in range(6):
            assert (
                gs_assuming_bounded(e, assumptions, bound, T_FACT).strings
                == frozenset()
            )


class TestRendering:
    def test_debug_format(self):
        x = gstr(ATOMS[2], 0, ATOMS[1])
        assert format_guarded_string(x, T22) == "t1!t2 p !t1t2"
