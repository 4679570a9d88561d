"""katcheck: equivalence checking for Kleene algebra with tests.

Expressions over action and test symbols are compared by iterated partial
derivatives, with support for checking modulo a set of hypotheses and a
propositional Hoare logic frontend over annotated while-programs.
"""

from .assumptions import (
    AssumptionSet,
    allowed_atoms,
    check_implication,
    equiv_assuming,
    linear_form_assuming,
    partial_derivs_assuming,
    violations_expr,
)
from .checker import SetPair, Verdict, derived_pairs, equiv, equiv_sets
from .derivatives import (
    accepts_atom,
    closure,
    form_tails,
    heads,
    linear_form,
    partial_derivs,
    partial_derivs_set,
    set_accepts_atom,
    word_derivs,
)
from .hoare import (
    If,
    Pca,
    Prim,
    Seq,
    Skip,
    While,
    check_pca,
    encode,
    encode_pca,
    generate_assumptions,
    parse_program_file,
    pca_assumptions,
)
from .parser import EquivalenceProblem, ParseError, parse_bool, parse_expr_file, parse_kat
from .semantics import (
    GsSet,
    GuardedString,
    format_guarded_string,
    fusion_product,
    gs_assuming_bounded,
    gs_bounded,
    gs_bounded_set,
    left_quotient,
)
from .syntax import (
    Atom,
    BoolExpr,
    CapacityError,
    KatExpr,
    KONE,
    KZERO,
    ONE,
    SymbolTable,
    ZERO,
    act,
    all_atoms,
    atom_satisfies,
    band,
    bnot,
    bor,
    dot,
    format_atom,
    format_bool,
    format_kat,
    lift,
    node_count,
    plus,
    star,
    count_test_leaves,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionSet",
    "Atom",
    "BoolExpr",
    "CapacityError",
    "EquivalenceProblem",
    "GsSet",
    "GuardedString",
    "If",
    "KatExpr",
    "KONE",
    "KZERO",
    "ONE",
    "ParseError",
    "Pca",
    "Prim",
    "Seq",
    "SetPair",
    "Skip",
    "SymbolTable",
    "Verdict",
    "While",
    "ZERO",
    "accepts_atom",
    "act",
    "all_atoms",
    "allowed_atoms",
    "atom_satisfies",
    "band",
    "bnot",
    "bor",
    "check_implication",
    "check_pca",
    "closure",
    "derived_pairs",
    "dot",
    "encode",
    "encode_pca",
    "equiv",
    "equiv_assuming",
    "equiv_sets",
    "form_tails",
    "format_atom",
    "format_bool",
    "format_guarded_string",
    "format_kat",
    "fusion_product",
    "generate_assumptions",
    "gs_assuming_bounded",
    "gs_bounded",
    "gs_bounded_set",
    "heads",
    "left_quotient",
    "lift",
    "linear_form",
    "linear_form_assuming",
    "node_count",
    "parse_bool",
    "parse_expr_file",
    "parse_kat",
    "parse_program_file",
    "partial_derivs",
    "partial_derivs_assuming",
    "partial_derivs_set",
    "pca_assumptions",
    "plus",
    "set_accepts_atom",
    "star",
    "count_test_leaves",
    "violations_expr",
    "word_derivs",
]
