"""Groebner-Shirshov bases for free Omega-algebras and free L-algebras."""

from .gsb import BudgetExceeded, CompositionReport, GSBSummary, check_gsb, complete
from .lalg import bracket, enumerate_normal, fp_irr_characterization, is_normal, loday_form, nmul
from .lalg.builders import (
    EntanglementError, StructureConstants, dialgebra_theory, embed_two_gen_theory,
    encode_generator, free_product_theory, from_structure_constants, idempotent,
    l_identity_theory, max_algebra,
)
from .order import Cmp, OrderKind, WordOrder, compare_general, compare_L, remark_chain
from .poly import QQ, Field, Poly, apply_context, parse_poly
from .rewrite import (
    FuelExhausted, GroundRule, OrientationError, Schema, Theory, TheoryError, dims,
    instantiate_schemas, irr_enumerate, is_irreducible, normal_form, quotient_dims_oracle,
    reduce_once,
)
from .term import (
    HOLE, Context, Gen, Mode, Node, ParseError, Signature, Word, format_term, match_pattern,
    measures, occurrences, parse_term, parse_word, plug,
)
from .theoryfile import TheoryFileError, dumps_theory, load_theory, loads_theory

__all__ = [
    "BudgetExceeded", "Cmp", "CompositionReport", "Context", "EntanglementError", "Field",
    "FuelExhausted", "GSBSummary", "Gen", "GroundRule", "HOLE", "Mode", "Node", "OrderKind",
    "OrientationError", "ParseError", "Poly", "QQ", "Schema", "Signature", "StructureConstants",
    "Theory", "TheoryError", "TheoryFileError", "Word", "WordOrder", "apply_context", "bracket",
    "check_gsb", "compare_L", "compare_general", "complete", "dialgebra_theory", "dims",
    "dumps_theory", "embed_two_gen_theory", "encode_generator", "enumerate_normal",
    "format_term", "fp_irr_characterization", "free_product_theory", "from_structure_constants",
    "idempotent", "instantiate_schemas", "irr_enumerate", "is_irreducible", "is_normal",
    "l_identity_theory", "load_theory", "loads_theory", "loday_form", "match_pattern",
    "max_algebra", "measures", "nmul", "normal_form", "occurrences", "parse_poly", "parse_term",
    "parse_word", "plug", "quotient_dims_oracle", "reduce_once", "remark_chain",
]
